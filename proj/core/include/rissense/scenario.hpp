// SPDX-License-Identifier: Apache-2.0
//
// rissense: backward sensing toolkit for reconfigurable intelligent surfaces
// Copyright (C) 2026 The rissense authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rissense/forward.hpp"
#include "rissense/solvers.hpp"

namespace rissense {

enum class Experiment { bound_sweep, rank_sweep, topology, distance, prototype, spectrum, bounds, doa };

std::string experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string &name);

struct RoiSpec {
    double extent_x = 10.0;
    double extent_y = 10.0;
    int cells_x = 20;
    int cells_y = 20;
    Vec3 center = Vec3::Zero();
};

struct LandmarkSpec {
    double distance = 15.0;
    double start_bearing_deg = 191.25;
    double step_deg = 22.5;
    std::vector<std::string> labels{"A", "C", "E", "G"};
};

struct ReceiverConfig {
    double distance = 1.0;
    double theta_deg = 0.0; // signed, from the panel normal toward its axis
};

struct PanelConfig {
    int elements = 110;
    int measurements = 110;
    double spacing = 0.015;
    std::optional<cdouble> tau; // default 0.16 lambda
    ReceiverConfig receiver;
};

enum class SnrUnit { linear, db };

struct SnrConfig {
    double value = std::numeric_limits<double>::infinity();
    SnrUnit unit = SnrUnit::linear;
    NoiseReference reference = NoiseReference::measurement;

    double linear() const;
};

struct SweepConfig {
    std::string parameter;
    std::vector<double> values;
};

struct BoundConfig {
    int elements = 160;
    int measurements = 500;
    double spacing = 0.026;
    double theta_i_deg = 0.0;
    double delta_cr = 0.02;
    double r_i = 6.0;
    double r_s = 1.0;
};

struct Strategy {
    std::string name;
    std::vector<std::string> labels;
};

struct TopologyConfig {
    int total_elements = 540;
    int total_measurements = 540;
    std::vector<Strategy> strategies{
        {"I", {"A"}},
        {"II", {"A", "E"}},
        {"III", {"A", "C", "E", "G"}},
        {"IV", {"A", "B", "C", "D", "E", "F", "G", "H"}},
    };
};

struct AngleGridConfig {
    double min_deg = -60.0;
    double max_deg = 60.0;
    double step_deg = 0.25;

    std::vector<double> angles_rad() const;
};

struct PrototypeConfig {
    int elements = 16;
    int measurements = 500;
    double spacing = 0.025;
    double separation = 2.81;
    std::array<double, 2> source_xy{-0.5, 6.0};
    std::array<double, 2> doa_truth_deg{-8.5, -13.25};
    ReceiverConfig receiver{1.0, -25.0};
    AngleGridConfig doa_grid;
};

enum class GroundTruthPattern { blocks, point };

struct GroundTruthConfig {
    GroundTruthPattern pattern = GroundTruthPattern::blocks;
    int cell = 0; // for the point pattern
};

struct PhaselessConfig {
    int max_iterations = 2000;
    std::optional<double> step_size;
    double reweight_epsilon = 0.1;
    PhaselessInit init = PhaselessInit::spectral;
    double stop_tolerance = 1e-6;
    bool normalize_columns = true;

    PhaselessParams params(std::uint64_t seed) const;
};

/// Full experiment description. Defaults depend on the experiment (see defaults_for).
struct ScenarioConfig {
    Experiment experiment = Experiment::rank_sweep;
    double frequency_hz = 20e9;
    RoiSpec roi;
    LandmarkSpec landmarks;
    PanelConfig ris;
    OperatorMode mode = OperatorMode::stacked;
    SnrConfig snr;
    int trials = 1;
    std::uint64_t master_seed = 1;
    double rank_tolerance = 1e-12;
    std::optional<SweepConfig> sweep;
    BoundConfig bound;
    TopologyConfig topology;
    PrototypeConfig prototype;
    GroundTruthConfig ground_truth;
    PhaselessConfig phaseless;

    WaveContext wave() const { return WaveContext::from_frequency(frequency_hz); }
};

ScenarioConfig defaults_for(Experiment e);

struct ConfigError {
    std::string key;
    std::string message;
};

struct ConfigResult {
    std::optional<ScenarioConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parses JSON text on top of the experiment defaults. Overrides are
/// "dotted.key=value" strings applied before validation. Every problem is
/// reported, including unknown keys.
ConfigResult parse_config(const std::string &json_text, Experiment experiment,
                          const std::vector<std::string> &overrides = {});

/// Reads and parses a scenario file. Throws std::runtime_error if unreadable.
ConfigResult validate_config(const std::string &path, Experiment experiment,
                             const std::vector<std::string> &overrides = {});

/// Deterministic JSON rendering of a parsed config (sorted keys).
std::string canonical_json(const ScenarioConfig &config);

/// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const ScenarioConfig &config);

struct LandmarkPose {
    std::string label;
    double bearing = 0.0; // radians, counterclockwise from world +x
    RigidPose pose;       // local z toward the RoI centre, local x tangent
};

/// Eight panel poses on a circle of radius `distance` about `center`, labelled A..H
/// in order of increasing bearing.
std::array<LandmarkPose, 8> landmark_layout(double distance, const Vec3 &center,
                                            double start_bearing_deg = 191.25, double step_deg = 22.5);

enum class SeedStream : std::uint64_t { phase = 0, noise = 1 };

/// splitmix64(splitmix64(master) ^ (trial << 2 | stream)). Collision-free over
/// (trial, stream) for a fixed master seed, because splitmix64 is a bijection.
std::uint64_t monte_carlo_seed(std::uint64_t master_seed, std::uint64_t trial_index, SeedStream stream);

/// Splits `total` into `parts` near-equal counts; remainders go to the first parts.
std::vector<int> even_split(int total, int parts);

/// Synthetic ground-truth amplitudes over an nx x ny plane grid (cell m = ix * ny + iy).
CVector ground_truth_map(const GroundTruthConfig &config, int nx, int ny);

} // namespace rissense
