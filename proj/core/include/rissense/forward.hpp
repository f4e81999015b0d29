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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rissense/em.hpp"

namespace rissense {

/// Receiver distance and direction, both in the panel frame.
struct ReceiverSpec {
    double distance = 1.0;
    DirectionAngles angles{};

    static ReceiverSpec make(double distance, DirectionAngles angles = {});
};

Vec3 receiver_world_position(const ElementArray &array, const ReceiverSpec &receiver);

struct CartesianCell {
    Vec3 center = Vec3::Zero();
    Vec3 extent = Vec3::Zero();
};

enum class SceneKind { angular, cartesian };

/// Discretised region of interest with one complex amplitude per cell.
class SceneGrid {
public:
    /// Cells on a line of signed broadside angles (radians, strictly increasing).
    /// Optional per-cell ranges enable incident attenuation.
    static SceneGrid angular_line(std::vector<double> signed_angles, CVector amplitudes,
                                  std::optional<std::vector<double>> ranges = std::nullopt);

    static SceneGrid cartesian(std::vector<CartesianCell> cells, CVector amplitudes);

    /// nx by ny cells of a plane at height `center.z()`, cell m = ix * ny + iy.
    static SceneGrid uniform_plane(const Vec3 &center, double extent_x, double extent_y, int nx, int ny,
                                   CVector amplitudes = {});

    SceneKind kind() const noexcept { return kind_; }
    int size() const noexcept { return static_cast<int>(amplitudes_.size()); }
    const CVector &amplitudes() const noexcept { return amplitudes_; }
    SceneGrid with_amplitudes(CVector amplitudes) const;

    const std::vector<double> &signed_angles() const noexcept { return angles_; }
    std::vector<DirectionAngles> directions() const;
    const std::optional<std::vector<double>> &ranges() const noexcept { return ranges_; }
    const std::vector<CartesianCell> &cells() const noexcept { return cells_; }
    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }

    /// Index of the cell whose centre is closest to `point` (cartesian scenes).
    int nearest_cell(const Vec3 &point) const;

private:
    SceneKind kind_ = SceneKind::angular;
    std::vector<double> angles_;
    std::optional<std::vector<double>> ranges_;
    std::vector<CartesianCell> cells_;
    CVector amplitudes_;
    int nx_ = 0;
    int ny_ = 0;
};

enum class OperatorMode { single, stacked, summed };

struct BlockInfo {
    int rows = 0;
    int elements = 0;
    std::string id;
};

struct SensingOperator {
    CMatrix matrix;
    OperatorMode mode = OperatorMode::single;
    std::vector<BlockInfo> blocks;
    std::string provenance;

    Eigen::Index rows() const { return matrix.rows(); }
    Eigen::Index cols() const { return matrix.cols(); }
};

/// One panel of a multi-surface deployment; the pose lives in the array.
struct Panel {
    ElementArray array;
    PhaseConfigMatrix config;
    ReceiverSpec receiver;
};

struct AssemblyOptions {
    /// Compute the numeric rank after assembly and throw if it exceeds the
    /// theoretical upper bound for the chosen receiver topology.
    bool validate_rank = false;
    double rank_tolerance = 1e-12;
};

SensingOperator single_ris_operator(const ElementArray &array, const PhaseConfigMatrix &config,
                                    const ReceiverSpec &receiver, std::span<const DirectionAngles> incident,
                                    const WaveContext &ctx, const AssemblyOptions &options = {});

CVector incident_attenuation(const SceneGrid &scene, const Vec3 &ris_origin, const WaveContext &ctx);

/// H(Omega_k) diag(l(r_k)) for one panel over a cartesian scene.
CMatrix panel_block(const Panel &panel, const SceneGrid &scene, const WaveContext &ctx);

SensingOperator multi_ris_stacked_operator(std::span<const Panel> panels, const SceneGrid &scene,
                                           const WaveContext &ctx, const AssemblyOptions &options = {});

SensingOperator multi_ris_summed_operator(std::span<const Panel> panels, const SceneGrid &scene,
                                          const WaveContext &ctx, const AssemblyOptions &options = {});

/// How the noise variance is tied to the signal.
/// field: sigma^2 = ||E||^2 / snr. measurement: sigma^2 = ||H E||^2 / (rows * snr).
enum class NoiseReference { field, measurement };

struct NoiseSpec {
    double snr = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::optional<double> sigma2_override;
    NoiseReference reference = NoiseReference::field;
};

struct MeasurementSet {
    CVector values;
    double snr = std::numeric_limits<double>::infinity();
    std::uint64_t noise_seed = 0;
    double sigma2 = 0.0;
};

MeasurementSet simulate_measurements(const SensingOperator &op, const CVector &amplitudes, const NoiseSpec &noise);
MeasurementSet simulate_measurements(const SensingOperator &op, const SceneGrid &scene, const NoiseSpec &noise);

struct PointSource {
    Vec3 position = Vec3::Zero();
    cdouble amplitude{1.0, 0.0};
};

/// Element-by-element spherical-wave evaluation of one measurement.
cdouble exact_field_oracle(std::span<const PointSource> sources, const ElementArray &array,
                           std::span<const double> config_row, const Vec3 &receiver_world, const WaveContext &ctx);

} // namespace rissense
