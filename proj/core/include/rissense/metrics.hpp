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

#include <span>
#include <vector>

#include "rissense/types.hpp"

namespace rissense {

double relative_error(const CVector &estimate, const CVector &truth);

/// Relative error after the best global unit-modulus rotation of the estimate.
double relative_error_mod_phase(const CVector &estimate, const CVector &truth);

struct SsimParams {
    double c1 = 1e-4;
    double c2 = 9e-4;

    /// c1 = (0.01 L)^2, c2 = (0.03 L)^2 with L the peak of the truth map.
    static SsimParams for_truth(const RVector &truth);
    void validate() const;
};

/// Single-window structural similarity over whole maps, without clamping.
double ssim_raw(const RVector &estimate, const RVector &truth, const SsimParams &params);

/// ssim_raw clamped to [0, 1].
double ssim(const RVector &estimate, const RVector &truth, const SsimParams &params);
double ssim(const RVector &estimate, const RVector &truth);

struct Peak {
    double angle = 0.0;
    double value = 0.0;
    int index = 0;
};

struct PeakList {
    std::vector<Peak> peaks;
    bool short_count = false; // fewer local maxima than requested
};

/// Top-k strict local maxima (edges need one smaller neighbour), by value
/// then by smaller angle.
PeakList doa_peaks(std::span<const double> spectrum, std::span<const double> angles, int k);

} // namespace rissense
