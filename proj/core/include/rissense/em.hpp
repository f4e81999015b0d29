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
#include <span>
#include <string>
#include <vector>

#include "rissense/types.hpp"

namespace rissense {

/// Carrier description. The wavelength is always derived from the frequency.
class WaveContext {
public:
    static WaveContext from_frequency(double frequency_hz);
    static WaveContext from_wavelength(double wavelength_m);

    double frequency() const noexcept { return frequency_; }
    double wavelength() const noexcept { return wavelength_; }
    double wavenumber() const noexcept { return 2.0 * kPi / wavelength_; }

private:
    WaveContext(double f, double lambda) : frequency_(f), wavelength_(lambda) {}
    double frequency_;
    double wavelength_;
};

/// Polar angle theta from the local z axis, azimuth phi in the local xy plane.
struct DirectionAngles {
    double theta = 0.0;
    double phi = 0.0;

    /// Validates theta in [0, pi] and phi in [-pi, pi].
    static DirectionAngles make(double theta, double phi = 0.0);

    /// Angle measured from broadside inside the local xz plane. Negative
    /// values map to phi = pi, so sin(theta) carries the sign along local x.
    static DirectionAngles from_broadside(double signed_angle);
};

Vec3 unit_direction(const DirectionAngles &angles);
DirectionAngles direction_angles(const Vec3 &direction);

/// Local-to-world transform. Columns of `rotation` are the local axes in world coordinates.
struct RigidPose {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 to_world(const Vec3 &local) const { return rotation * local + translation; }
    Vec3 to_local(const Vec3 &world) const { return rotation.transpose() * (world - translation); }
    Vec3 direction_to_local(const Vec3 &world_dir) const { return rotation.transpose() * world_dir; }
    Vec3 direction_to_world(const Vec3 &local_dir) const { return rotation * local_dir; }

    /// Pose whose local z axis is `normal` and local x axis is `axis` (both
    /// world vectors, orthonormalised here), placed at `origin`.
    static RigidPose facing(const Vec3 &origin, const Vec3 &normal, const Vec3 &axis);
};

std::vector<Vec3> uniform_linear_positions(int count, double spacing, const Vec3 &axis, const Vec3 &origin);

/// One RIS panel: element positions in the panel frame, scattering scalar and pose.
class ElementArray {
public:
    ElementArray(std::vector<Vec3> positions, cdouble tau, RigidPose pose = {}, std::string id = {},
                 double spacing = 0.0);

    /// Elements along local x with spacing `d`. When `centered`, the array is
    /// centred on the local origin; otherwise element 0 sits on it.
    static ElementArray uniform_linear(int count, double d, cdouble tau, RigidPose pose = {},
                                       std::string id = {}, bool centered = false);

    int element_count() const noexcept { return static_cast<int>(positions_.size()); }
    const std::vector<Vec3> &positions() const noexcept { return positions_; }
    std::vector<Vec3> world_positions() const;
    double spacing() const noexcept { return spacing_; }
    double aperture() const;
    cdouble tau() const noexcept { return tau_; }
    const RigidPose &pose() const noexcept { return pose_; }
    const std::string &id() const noexcept { return id_; }
    Vec3 reference_point() const { return pose_.translation; }

    ElementArray with_tau(cdouble tau) const;

private:
    std::vector<Vec3> positions_;
    cdouble tau_;
    RigidPose pose_;
    std::string id_;
    double spacing_;
};

/// Default scattering scalar, 0.16 times the wavelength in metres.
cdouble default_tau(const WaveContext &ctx);

CVector steering_vector(const ElementArray &array, const DirectionAngles &angles, const WaveContext &ctx);
CVector steering_vector(const ElementArray &array, const Vec3 &local_direction, const WaveContext &ctx);

CMatrix incident_phase_matrix(const ElementArray &array, std::span<const DirectionAngles> angles,
                              const WaveContext &ctx);

/// Spherical spreading with propagation phase, exp(-j 2 pi r / lambda) / r.
cdouble path_loss(double r, const WaveContext &ctx);

/// T x N binary phase schedule with entries 0 or pi.
class PhaseConfigMatrix {
public:
    PhaseConfigMatrix(int rows, int cols, std::vector<std::uint8_t> bits, std::uint64_t seed = 0);

    static PhaseConfigMatrix zeros(int rows, int cols);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::uint64_t seed() const noexcept { return seed_; }

    bool flipped(int t, int n) const { return bits_[static_cast<std::size_t>(t) * cols_ + n] != 0; }
    double phase(int t, int n) const { return flipped(t, n) ? kPi : 0.0; }
    std::vector<double> row_phases(int t) const;

    /// exp(j Omega) as a real +-1 matrix.
    RMatrix signs() const;

private:
    int rows_;
    int cols_;
    std::vector<std::uint8_t> bits_;
    std::uint64_t seed_;
};

/// Each entry uses the top bit of one mt19937_64 draw, filled row-major.
PhaseConfigMatrix random_phase_config(int rows, int cols, std::uint64_t seed);

} // namespace rissense
