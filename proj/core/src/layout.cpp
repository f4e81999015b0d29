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

#include <cmath>

#include "rissense/random.hpp"
#include "rissense/scenario.hpp"

namespace rissense {

std::array<LandmarkPose, 8> landmark_layout(double distance, const Vec3 &center, double start_bearing_deg,
                                            double step_deg)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("landmark distance must be positive");
    std::array<LandmarkPose, 8> out;
    for (int k = 0; k < 8; ++k) {
        const double bearing = deg2rad(start_bearing_deg + k * step_deg);
        const Vec3 position = center + distance * Vec3(std::cos(bearing), std::sin(bearing), 0.0);
        const Vec3 normal = (center - position).normalized();
        const Vec3 tangent(-normal.y(), normal.x(), 0.0);
        out[static_cast<std::size_t>(k)] = {std::string(1, static_cast<char>('A' + k)), bearing,
                                            RigidPose::facing(position, normal, tangent)};
    }
    return out;
}

std::uint64_t monte_carlo_seed(std::uint64_t master_seed, std::uint64_t trial_index, SeedStream stream)
{
    return derive_seed(master_seed, (trial_index << 2) | static_cast<std::uint64_t>(stream));
}

std::vector<int> even_split(int total, int parts)
{
    if (parts < 1 || total < parts)
        throw std::invalid_argument("cannot split " + std::to_string(total) + " into " + std::to_string(parts) +
                                    " positive parts");
    std::vector<int> out(static_cast<std::size_t>(parts), total / parts);
    for (int k = 0; k < total % parts; ++k)
        ++out[static_cast<std::size_t>(k)];
    return out;
}

CVector ground_truth_map(const GroundTruthConfig &config, int nx, int ny)
{
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("ground truth grid needs positive dimensions");
    CVector map = CVector::Zero(static_cast<Eigen::Index>(nx) * ny);
    if (config.pattern == GroundTruthPattern::point) {
        if (config.cell < 0 || config.cell >= map.size())
            throw std::invalid_argument("ground truth cell outside the grid");
        map(config.cell) = 1.0;
        return map;
    }
    // Shapes laid out on a 20 x 20 reference grid and rescaled.
    auto fill = [&](int x0, int x1, int y0, int y1, double value) {
        const int ax = x0 * nx / 20, bx = std::max(ax + 1, x1 * nx / 20);
        const int ay = y0 * ny / 20, by = std::max(ay + 1, y1 * ny / 20);
        for (int ix = ax; ix < std::min(bx, nx); ++ix)
            for (int iy = ay; iy < std::min(by, ny); ++iy)
                map(static_cast<Eigen::Index>(ix) * ny + iy) = value;
    };
    fill(3, 7, 3, 9, 1.0);
    fill(12, 17, 12, 15, 0.6);
    fill(10, 11, 2, 8, 0.8);
    fill(8, 13, 5, 6, 0.8);
    return map;
}

std::vector<double> AngleGridConfig::angles_rad() const
{
    if (!(step_deg > 0.0) || !(max_deg > min_deg))
        throw std::invalid_argument("angle grid needs a positive step and max > min");
    const int count = static_cast<int>(std::floor((max_deg - min_deg) / step_deg + 1e-9)) + 1;
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = deg2rad(min_deg + i * step_deg);
    return out;
}

PhaselessParams PhaselessConfig::params(std::uint64_t seed) const
{
    PhaselessParams p;
    p.max_iterations = max_iterations;
    p.step_size = step_size;
    p.reweight_epsilon = reweight_epsilon;
    p.init = init;
    p.stop_tolerance = stop_tolerance;
    p.seed = seed;
    p.normalize_columns = normalize_columns;
    return p;
}

} // namespace rissense
