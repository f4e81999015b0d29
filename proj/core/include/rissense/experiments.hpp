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

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rissense/scenario.hpp"

namespace rissense {

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

/// One Monte-Carlo trial at one sweep point. NaN marks a column that does not apply.
struct TrialRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    int trial = 0;
    double rel_error = kNotApplicable;
    double ssim = kNotApplicable;
    double bound = kNotApplicable;
    double rank = kNotApplicable;
    double cond_number = kNotApplicable;
    double sigma_min = kNotApplicable;
};

/// Per-point mean of every column over its trials.
struct SummaryRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    int trials = 0;
    double rel_error = kNotApplicable;
    double ssim = kNotApplicable;
    double bound = kNotApplicable;
    double rank = kNotApplicable;
    double cond_number = kNotApplicable;
    double sigma_min = kNotApplicable;
};

struct SpectrumDump {
    std::string tag; // becomes spectrum_<tag>.csv
    RVector singular_values;
};

/// Free-form auxiliary table written next to the main CSV.
struct AuxTable {
    std::string filename;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Provenance {
    std::string experiment;
    std::string config_hash;
    std::uint64_t master_seed = 0;
    std::string tool_version;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<TrialRow> rows; // ordered by (sweep index, trial index)
    std::vector<SpectrumDump> spectra;
    std::vector<AuxTable> tables;
    Provenance provenance;

    std::vector<SummaryRow> summary() const;
};

struct RunOptions {
    int threads = 1; // 0 = hardware concurrency
};

const char *tool_version();

ExperimentResult run_bound_sweep(const ScenarioConfig &config, const RunOptions &options = {});
ExperimentResult run_rank_sweep(const ScenarioConfig &config, const RunOptions &options = {});
ExperimentResult run_topology_study(const ScenarioConfig &config, const RunOptions &options = {});
ExperimentResult run_distance_study(const ScenarioConfig &config, const RunOptions &options = {});
ExperimentResult run_prototype_study(const ScenarioConfig &config, const RunOptions &options = {});
ExperimentResult run_doa_study(const ScenarioConfig &config, const RunOptions &options = {});
ExperimentResult run_spectrum(const ScenarioConfig &config, const RunOptions &options = {});

/// Dispatches on config.experiment (all experiments except `bounds`).
ExperimentResult run_experiment(const ScenarioConfig &config, const RunOptions &options = {});

/// Bound inputs for the two-source scene described by config.bound and config.snr.
BoundInputs bound_inputs(const ScenarioConfig &config);

/// Landmark panels for the cartesian RoI scenarios. Phase configurations are
/// drawn from `phase_seed` (one child seed per panel).
std::vector<Panel> landmark_panels(const ScenarioConfig &config, const std::vector<std::string> &labels,
                                   const std::vector<int> &elements, const std::vector<int> &measurements,
                                   std::uint64_t phase_seed);

SceneGrid roi_scene(const ScenarioConfig &config);

/// Pose of prototype panel 0 (left) or 1 (right), yawed so the source appears
/// at the configured direction of arrival.
RigidPose prototype_panel_pose(const ScenarioConfig &config, int panel);

/// Writes <experiment>.csv, summary.csv, spectra, auxiliary tables and
/// provenance.json into `directory` (created if missing).
void write_outputs(const ExperimentResult &result, const std::string &directory);

/// Formats with 17 significant digits; NaN becomes an empty field.
std::string format_number(double value);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// stored by index; the first exception is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &fn);

} // namespace rissense
