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

#include "rissense/em.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rissense/random.hpp"

namespace rissense {

namespace {

bool finite3(const Vec3 &v) { return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z()); }

} // namespace

WaveContext WaveContext::from_frequency(double frequency_hz)
{
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw std::invalid_argument("frequency must be positive and finite");
    return {frequency_hz, kSpeedOfLight / frequency_hz};
}

WaveContext WaveContext::from_wavelength(double wavelength_m)
{
    if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
        throw std::invalid_argument("wavelength must be positive and finite");
    return {kSpeedOfLight / wavelength_m, wavelength_m};
}

DirectionAngles DirectionAngles::make(double theta, double phi)
{
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("direction angles must be finite");
    if (theta < 0.0 || theta > kPi)
        throw std::invalid_argument("theta outside [0, pi]");
    if (phi < -kPi || phi > kPi)
        throw std::invalid_argument("phi outside [-pi, pi]");
    return {theta, phi};
}

DirectionAngles DirectionAngles::from_broadside(double signed_angle)
{
    if (!std::isfinite(signed_angle) || std::abs(signed_angle) > kPi)
        throw std::invalid_argument("broadside angle must be finite and within [-pi, pi]");
    return {std::abs(signed_angle), signed_angle < 0.0 ? kPi : 0.0};
}

Vec3 unit_direction(const DirectionAngles &angles)
{
    if (!std::isfinite(angles.theta) || !std::isfinite(angles.phi))
        throw std::invalid_argument("direction angles must be finite");
    const double st = std::sin(angles.theta);
    return {st * std::cos(angles.phi), st * std::sin(angles.phi), std::cos(angles.theta)};
}

DirectionAngles direction_angles(const Vec3 &direction)
{
    const double norm = direction.norm();
    if (!(norm > 0.0) || !finite3(direction))
        throw std::invalid_argument("direction must be a finite nonzero vector");
    const double c = std::clamp(direction.z() / norm, -1.0, 1.0);
    return {std::acos(c), std::atan2(direction.y(), direction.x())};
}

RigidPose RigidPose::facing(const Vec3 &origin, const Vec3 &normal, const Vec3 &axis)
{
    const Vec3 z = normal.normalized();
    Vec3 x = axis - axis.dot(z) * z;
    if (!(x.norm() > 1e-12))
        throw std::invalid_argument("panel axis is parallel to its normal");
    x.normalize();
    RigidPose pose;
    pose.rotation.col(0) = x;
    pose.rotation.col(1) = z.cross(x);
    pose.rotation.col(2) = z;
    pose.translation = origin;
    return pose;
}

std::vector<Vec3> uniform_linear_positions(int count, double spacing, const Vec3 &axis, const Vec3 &origin)
{
    if (count < 1)
        throw std::invalid_argument("element count must be at least 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("element spacing must be positive");
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n)
        out.push_back(origin + static_cast<double>(n) * spacing * axis);
    return out;
}

ElementArray::ElementArray(std::vector<Vec3> positions, cdouble tau, RigidPose pose, std::string id, double spacing)
    : positions_(std::move(positions)), tau_(tau), pose_(std::move(pose)), id_(std::move(id)), spacing_(spacing)
{
    if (positions_.empty())
        throw std::invalid_argument("element array needs at least one element");
    for (const auto &p : positions_)
        if (!finite3(p))
            throw std::invalid_argument("element positions must be finite");
    if (!std::isfinite(tau_.real()) || !std::isfinite(tau_.imag()))
        throw std::invalid_argument("tau must be finite");
}

ElementArray ElementArray::uniform_linear(int count, double d, cdouble tau, RigidPose pose, std::string id,
                                          bool centered)
{
    const Vec3 axis = Vec3::UnitX();
    const Vec3 origin = centered ? Vec3(-0.5 * (count - 1) * d, 0.0, 0.0) : Vec3::Zero();
    return {uniform_linear_positions(count, d, axis, origin), tau, std::move(pose), std::move(id), d};
}

std::vector<Vec3> ElementArray::world_positions() const
{
    std::vector<Vec3> out;
    out.reserve(positions_.size());
    for (const auto &p : positions_)
        out.push_back(pose_.to_world(p));
    return out;
}

double ElementArray::aperture() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < positions_.size(); ++i)
        for (std::size_t j = i + 1; j < positions_.size(); ++j)
            best = std::max(best, (positions_[i] - positions_[j]).norm());
    return best;
}

ElementArray ElementArray::with_tau(cdouble tau) const { return {positions_, tau, pose_, id_, spacing_}; }

cdouble default_tau(const WaveContext &ctx) { return {0.16 * ctx.wavelength(), 0.0}; }

CVector steering_vector(const ElementArray &array, const Vec3 &local_direction, const WaveContext &ctx)
{
    const double k = ctx.wavenumber();
    const auto &pos = array.positions();
    CVector out(array.element_count());
    for (int n = 0; n < array.element_count(); ++n)
        out(n) = std::polar(1.0, k * pos[static_cast<std::size_t>(n)].dot(local_direction));
    return out;
}

CVector steering_vector(const ElementArray &array, const DirectionAngles &angles, const WaveContext &ctx)
{
    return steering_vector(array, unit_direction(angles), ctx);
}

CMatrix incident_phase_matrix(const ElementArray &array, std::span<const DirectionAngles> angles,
                              const WaveContext &ctx)
{
    if (angles.empty())
        throw std::invalid_argument("incident angle list is empty");
    CMatrix out(array.element_count(), static_cast<Eigen::Index>(angles.size()));
    for (std::size_t m = 0; m < angles.size(); ++m)
        out.col(static_cast<Eigen::Index>(m)) = steering_vector(array, angles[m], ctx);
    return out;
}

cdouble path_loss(double r, const WaveContext &ctx)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("path length must be positive (source or receiver coincides with reference)");
    return std::polar(1.0 / r, -ctx.wavenumber() * r);
}

PhaseConfigMatrix::PhaseConfigMatrix(int rows, int cols, std::vector<std::uint8_t> bits, std::uint64_t seed)
    : rows_(rows), cols_(cols), bits_(std::move(bits)), seed_(seed)
{
    if (rows_ < 1 || cols_ < 1)
        throw std::invalid_argument("phase configuration needs positive dimensions");
    if (bits_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_))
        throw std::invalid_argument("phase configuration bit count does not match rows x cols");
    for (auto &b : bits_)
        b = b ? 1 : 0;
}

PhaseConfigMatrix PhaseConfigMatrix::zeros(int rows, int cols)
{
    return {rows, cols, std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols, 0), 0};
}

std::vector<double> PhaseConfigMatrix::row_phases(int t) const
{
    std::vector<double> out(static_cast<std::size_t>(cols_));
    for (int n = 0; n < cols_; ++n)
        out[static_cast<std::size_t>(n)] = phase(t, n);
    return out;
}

RMatrix PhaseConfigMatrix::signs() const
{
    RMatrix out(rows_, cols_);
    for (int t = 0; t < rows_; ++t)
        for (int n = 0; n < cols_; ++n)
            out(t, n) = flipped(t, n) ? -1.0 : 1.0;
    return out;
}

PhaseConfigMatrix random_phase_config(int rows, int cols, std::uint64_t seed)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("phase configuration needs positive dimensions");
    Rng rng(seed);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(rows) * cols);
    for (auto &b : bits)
        b = rng.bit() ? 1 : 0;
    return {rows, cols, std::move(bits), seed};
}

} // namespace rissense
