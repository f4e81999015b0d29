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

#include "rissense/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace rissense {

namespace {

void require(bool ok, const char *factor)
{
    if (!ok)
        throw std::domain_error(std::string("relative_error_bound: invalid factor ") + factor);
}

// Separation variable pi d (sin theta - sin(theta + delta)) / lambda, written
// as a product so that small delta does not cancel.
double separation_argument(double spacing, double lambda, double theta, double delta)
{
    const double ds = -2.0 * std::cos(theta + 0.5 * delta) * std::sin(0.5 * delta);
    return kPi * spacing * ds / lambda;
}

} // namespace

SpectrumReport spectrum_from_values(RVector singular_values, double tolerance)
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("rank tolerance must be positive");
    SpectrumReport r;
    r.tolerance = tolerance;
    r.singular_values = std::move(singular_values);
    const auto n = r.singular_values.size();
    if (n == 0)
        throw std::invalid_argument("spectrum of an empty matrix");
    const double smax = r.singular_values(0);
    const double cutoff = tolerance * smax;
    int rank = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (r.singular_values(i) > cutoff)
            ++rank;
    r.numeric_rank = rank;
    const double inf = std::numeric_limits<double>::infinity();
    r.condition_number = rank > 0 ? smax / r.singular_values(rank - 1) : inf;
    const double last = r.singular_values(n - 1);
    r.condition_number_full = last > 0.0 ? smax / last : inf;
    return r;
}

SpectrumReport spectrum(const CMatrix &matrix, double tolerance)
{
    if (matrix.size() == 0)
        throw std::invalid_argument("spectrum of an empty matrix");
    if (!matrix.allFinite())
        throw NumericalFailure("operator contains non-finite entries", matrix.rows(), matrix.cols(),
                               std::numeric_limits<double>::quiet_NaN());
    Eigen::BDCSVD<CMatrix> svd(matrix);
    return spectrum_from_values(svd.singularValues(), tolerance);
}

SpectrumReport spectrum(const SensingOperator &op, double tolerance) { return spectrum(op.matrix, tolerance); }

int rank_upper_bound(ReceiverTopology topology, int cells, std::span<const int> measurements,
                     std::span<const int> elements)
{
    if (measurements.empty() || elements.empty())
        throw std::invalid_argument("rank bound needs nonempty measurement and element lists");
    if (cells < 1)
        throw std::invalid_argument("rank bound needs a positive cell count");
    for (int v : measurements)
        if (v < 1)
            throw std::invalid_argument("measurement counts must be positive");
    for (int v : elements)
        if (v < 1)
            throw std::invalid_argument("element counts must be positive");

    if (topology == ReceiverTopology::dedicated) {
        if (measurements.size() != elements.size())
            throw std::invalid_argument("dedicated topology needs one measurement count per panel");
        long total = 0;
        for (std::size_t k = 0; k < elements.size(); ++k)
            total += std::min(measurements[k], elements[k]);
        return static_cast<int>(std::min<long>(cells, total));
    }
    long total_elements = 0;
    for (int v : elements)
        total_elements += v;
    return static_cast<int>(std::min<long>({static_cast<long>(cells), static_cast<long>(measurements[0]), total_elements}));
}

int rank_upper_bound(const SensingOperator &op)
{
    std::vector<int> t;
    std::vector<int> n;
    for (const auto &b : op.blocks) {
        t.push_back(b.rows);
        n.push_back(b.elements);
    }
    const auto topology = op.mode == OperatorMode::summed ? ReceiverTopology::shared : ReceiverTopology::dedicated;
    return rank_upper_bound(topology, static_cast<int>(op.cols()), t, n);
}

double dirichlet_ratio(int count, double x)
{
    if (count < 1)
        throw std::invalid_argument("element count must be at least 1");
    const double s = std::sin(x);
    if (std::abs(s) >= 1e-9)
        return std::sin(count * x) / s;
    double total = 0.0;
    for (int l = 0; l < count; ++l)
        total += std::cos((count - 1 - 2 * l) * x);
    return total;
}

double sin_ratio_quadratic(int count, double x)
{
    if (count < 1)
        throw std::invalid_argument("element count must be at least 1");
    const double n = count;
    return n - n * (n * n - 1.0) * x * x / 6.0;
}

SingularPair vandermonde_pair_singular_values(int count, double spacing, double lambda, double theta, double delta)
{
    if (count < 2)
        throw std::invalid_argument("two-column steering matrix needs at least 2 elements");
    if (!(spacing > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("spacing and wavelength must be positive");
    const double x = separation_argument(spacing, lambda, theta, delta);
    // N - ratio and N + ratio as sums of squares over the Dirichlet kernel terms.
    double minus = 0.0;
    double plus = 0.0;
    for (int l = 0; l < count; ++l) {
        const double half = 0.5 * (count - 1 - 2 * l) * x;
        const double s = std::sin(half);
        const double c = std::cos(half);
        minus += 2.0 * s * s;
        plus += 2.0 * c * c;
    }
    return {std::sqrt(std::max(minus, plus)), std::sqrt(std::min(minus, plus))};
}

double sigma_min_vandermonde_approx(int count, double spacing, double lambda, double theta, double delta)
{
    if (count < 2)
        throw std::invalid_argument("two-column steering matrix needs at least 2 elements");
    const double n = count;
    return kPi / std::sqrt(6.0) * (spacing / lambda) * std::sqrt(n * (n * n - 1.0)) * std::abs(delta) *
           std::abs(std::cos(theta));
}

double mp_sigma_min_estimate(int measurements, int elements)
{
    if (elements < 1 || measurements <= elements)
        throw std::invalid_argument("edge estimate requires T > N >= 1");
    return std::sqrt(static_cast<double>(measurements)) - std::sqrt(static_cast<double>(elements));
}

double relative_error_bound(BoundVariant variant, const BoundInputs &in)
{
    require(in.elements >= 1, "N (element count)");
    require(in.measurements > in.elements, "(1 - sqrt(N/T)) requires T > N");
    require(in.spacing > 0.0, "d (element spacing)");
    require(in.lambda > 0.0, "lambda (wavelength)");
    require(in.r_s > 0.0, "r_s (receiver distance)");
    require(in.tau_mag > 0.0, "|tau| (scattering scalar)");
    const double cos_theta = std::cos(in.theta_i);
    require(std::abs(cos_theta) > 1e-12 && std::isfinite(cos_theta), "cos(theta_i)");
    require(in.snr > 0.0, "SNR");

    double separation_term = 0.0;
    if (variant == BoundVariant::angular) {
        require(in.delta != 0.0 && std::isfinite(in.delta), "delta (angular separation)");
        separation_term = 1.0 / std::abs(in.delta);
    } else {
        require(in.delta_cr != 0.0 && std::isfinite(in.delta_cr), "delta_cr (cross-range separation)");
        require(in.r_i > 0.0, "r_i (source distance)");
        separation_term = in.r_i / std::abs(in.delta_cr);
    }
    if (std::isinf(in.snr))
        return 0.0;

    const double n = in.elements;
    const double mp = 1.0 - std::sqrt(n / in.measurements);
    return std::sqrt(6.0) / kPi * in.r_s / in.tau_mag * (in.lambda / in.spacing) / mp * std::pow(n, -1.5) *
           separation_term / std::abs(cos_theta) / std::sqrt(in.snr);
}

} // namespace rissense
