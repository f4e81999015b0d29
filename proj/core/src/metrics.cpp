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

#include "rissense/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rissense {

namespace {

double truth_norm(const CVector &estimate, const CVector &truth)
{
    if (estimate.size() != truth.size())
        throw std::invalid_argument("estimate and truth lengths differ");
    const double n = truth.norm();
    if (!(n > 0.0))
        throw std::invalid_argument("truth vector is zero");
    return n;
}

} // namespace

double relative_error(const CVector &estimate, const CVector &truth)
{
    const double n = truth_norm(estimate, truth);
    return (estimate - truth).norm() / n;
}

double relative_error_mod_phase(const CVector &estimate, const CVector &truth)
{
    const double n = truth_norm(estimate, truth);
    const cdouble inner = estimate.dot(truth); // estimate^H truth
    if (std::abs(inner) == 0.0)
        return (estimate - truth).norm() / n;
    const cdouble c = inner / std::abs(inner);
    return (c * estimate - truth).norm() / n;
}

SsimParams SsimParams::for_truth(const RVector &truth)
{
    double peak = truth.size() ? truth.maxCoeff() : 0.0;
    if (!(peak > 0.0))
        peak = 1.0;
    return {(0.01 * peak) * (0.01 * peak), (0.03 * peak) * (0.03 * peak)};
}

void SsimParams::validate() const
{
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw std::invalid_argument("ssim stabilisers must be positive");
}

double ssim_raw(const RVector &estimate, const RVector &truth, const SsimParams &params)
{
    params.validate();
    if (estimate.size() != truth.size())
        throw std::invalid_argument("ssim: map lengths differ");
    if (truth.size() == 0)
        throw std::invalid_argument("ssim: empty maps");
    const double n = static_cast<double>(truth.size());
    const double mu_e = truth.mean();
    const double mu_h = estimate.mean();
    const RVector de = truth.array() - mu_e;
    const RVector dh = estimate.array() - mu_h;
    const double var_e = de.squaredNorm() / n;
    const double var_h = dh.squaredNorm() / n;
    const double cov = de.dot(dh) / n;
    return (2.0 * mu_e * mu_h + params.c1) * (2.0 * cov + params.c2) /
           ((mu_e * mu_e + mu_h * mu_h + params.c1) * (var_e + var_h + params.c2));
}

double ssim(const RVector &estimate, const RVector &truth, const SsimParams &params)
{
    return std::clamp(ssim_raw(estimate, truth, params), 0.0, 1.0);
}

double ssim(const RVector &estimate, const RVector &truth)
{
    return ssim(estimate, truth, SsimParams::for_truth(truth));
}

PeakList doa_peaks(std::span<const double> spectrum, std::span<const double> angles, int k)
{
    if (k < 1)
        throw std::invalid_argument("doa_peaks: k must be at least 1");
    if (spectrum.size() != angles.size() || spectrum.empty())
        throw std::invalid_argument("doa_peaks: spectrum and angle grid must be nonempty and equally long");
    for (std::size_t i = 1; i < angles.size(); ++i)
        if (!(angles[i] > angles[i - 1]))
            throw std::invalid_argument("doa_peaks: angle grid must be strictly increasing");

    std::vector<Peak> maxima;
    const std::size_t n = spectrum.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = i == 0 || spectrum[i] > spectrum[i - 1];
        const bool right = i + 1 == n || spectrum[i] > spectrum[i + 1];
        if (left && right && n > 1)
            maxima.push_back({angles[i], spectrum[i], static_cast<int>(i)});
    }
    if (n == 1)
        maxima.push_back({angles[0], spectrum[0], 0});
    std::stable_sort(maxima.begin(), maxima.end(), [](const Peak &a, const Peak &b) {
        if (a.value != b.value)
            return a.value > b.value;
        return a.angle < b.angle;
    });
    PeakList out;
    out.short_count = maxima.size() < static_cast<std::size_t>(k);
    if (!out.short_count)
        maxima.resize(static_cast<std::size_t>(k));
    out.peaks = std::move(maxima);
    return out;
}

} // namespace rissense
