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

#include "rissense/forward.hpp"

namespace rissense {

struct SpectrumReport {
    RVector singular_values; // descending
    int numeric_rank = 0;
    double condition_number = 0.0;      // over the rank-truncated spectrum
    double condition_number_full = 0.0; // sigma_max / sigma_last, may be inf
    double tolerance = 1e-12;

    double sigma_max() const { return singular_values.size() ? singular_values(0) : 0.0; }
    /// Smallest singular value of the full spectrum.
    double sigma_min() const { return singular_values.size() ? singular_values(singular_values.size() - 1) : 0.0; }
};

/// Builds a report from already computed singular values (descending).
SpectrumReport spectrum_from_values(RVector singular_values, double tolerance = 1e-12);

SpectrumReport spectrum(const CMatrix &matrix, double tolerance = 1e-12);
SpectrumReport spectrum(const SensingOperator &op, double tolerance = 1e-12);

enum class ReceiverTopology { dedicated, shared };

/// Dedicated: min(M, sum_k min(T_k, N_k)). Shared: min(M, T, sum_k N_k), T = measurements[0].
int rank_upper_bound(ReceiverTopology topology, int cells, std::span<const int> measurements,
                     std::span<const int> elements);

/// Upper bound implied by an assembled operator's block metadata.
int rank_upper_bound(const SensingOperator &op);

/// sin(N x) / sin(x), continuous at multiples of pi.
double dirichlet_ratio(int count, double x);

/// N - N (N^2 - 1) x^2 / 6.
double sin_ratio_quadratic(int count, double x);

struct SingularPair {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
};

/// Closed-form singular values of the N x 2 steering matrix for the directions
/// theta and theta + delta on a uniform linear array.
SingularPair vandermonde_pair_singular_values(int count, double spacing, double lambda, double theta,
                                              double delta);

/// First-order small-separation estimate of the smaller singular value.
double sigma_min_vandermonde_approx(int count, double spacing, double lambda, double theta, double delta);

/// Marchenko-Pastur edge estimate sqrt(T) - sqrt(N) for a T x N random sign matrix.
double mp_sigma_min_estimate(int measurements, int elements);

struct BoundInputs {
    int elements = 160;
    int measurements = 500;
    double spacing = 0.026;
    double lambda = kSpeedOfLight / 5.8e9;
    double r_s = 1.0;
    double r_i = 6.0;
    double tau_mag = 0.16 * (kSpeedOfLight / 5.8e9);
    double theta_i = 0.0;
    double delta = 0.02 / 6.0;
    double delta_cr = 0.02;
    double snr = 2000.0;
};

enum class BoundVariant { angular, crossrange };

/// Approximate upper bound on the least-squares relative error for two
/// closely spaced sources. Throws std::domain_error naming the violated factor.
double relative_error_bound(BoundVariant variant, const BoundInputs &inputs);

} // namespace rissense
