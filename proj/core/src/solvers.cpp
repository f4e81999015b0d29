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

#include "rissense/solvers.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rissense/random.hpp"

namespace rissense {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double amplitude_loss(const CMatrix &h, const CVector &z, const RVector &b)
{
    return ((h * z).cwiseAbs() - b).squaredNorm();
}

} // namespace

LsSolution ls_solve(const CMatrix &matrix, const CVector &measurements, double rank_tolerance)
{
    if (matrix.size() == 0)
        throw std::invalid_argument("ls_solve: empty operator");
    if (measurements.size() != matrix.rows())
        throw std::invalid_argument("ls_solve: measurement length does not match operator rows");
    if (!(rank_tolerance > 0.0))
        throw std::invalid_argument("ls_solve: rank tolerance must be positive");
    if (!matrix.allFinite() || !measurements.allFinite())
        throw NumericalFailure("ls_solve: non-finite input", matrix.rows(), matrix.cols(), kNaN);

    Eigen::BDCSVD<CMatrix> svd(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector &sv = svd.singularValues();
    if (!(sv(0) > 0.0))
        throw NumericalFailure("ls_solve: all-zero operator", matrix.rows(), matrix.cols(),
                               std::numeric_limits<double>::infinity());

    LsSolution out;
    out.spectrum = spectrum_from_values(sv, rank_tolerance);
    out.numeric_rank = out.spectrum.numeric_rank;
    out.condition_number = out.spectrum.condition_number;
    out.tolerance_used = rank_tolerance;

    const int r = out.numeric_rank;
    CVector coeffs = svd.matrixU().leftCols(r).adjoint() * measurements;
    coeffs.array() /= sv.head(r).array().cast<cdouble>();
    out.estimate = svd.matrixV().leftCols(r) * coeffs;
    out.residual_norm = (matrix * out.estimate - measurements).norm();
    if (!out.estimate.allFinite())
        throw NumericalFailure("ls_solve: non-finite solution", matrix.rows(), matrix.cols(), out.condition_number);
    return out;
}

LsSolution ls_solve(const SensingOperator &op, const CVector &measurements, double rank_tolerance)
{
    return ls_solve(op.matrix, measurements, rank_tolerance);
}

void PhaselessParams::validate() const
{
    if (max_iterations < 1)
        throw std::invalid_argument("phaseless: max_iterations must be at least 1");
    if (step_size && !(*step_size > 0.0))
        throw std::invalid_argument("phaseless: step_size must be positive");
    if (!(stop_tolerance > 0.0))
        throw std::invalid_argument("phaseless: stop_tolerance must be positive");
    if (!(reweight_epsilon >= 0.0))
        throw std::invalid_argument("phaseless: reweight_epsilon must be nonnegative");
}

PhaselessResult phaseless_solve(const CMatrix &matrix, const RVector &magnitudes, const PhaselessParams &params)
{
    params.validate();
    if (matrix.size() == 0)
        throw std::invalid_argument("phaseless: empty operator");
    if (magnitudes.size() != matrix.rows())
        throw std::invalid_argument("phaseless: magnitude length does not match operator rows");
    if (!magnitudes.allFinite() || !matrix.allFinite())
        throw std::invalid_argument("phaseless: non-finite input");
    if (magnitudes.minCoeff() < 0.0)
        throw std::invalid_argument("phaseless: magnitudes must be nonnegative");
    const double b_norm = magnitudes.norm();
    if (!(b_norm > 0.0))
        throw std::invalid_argument("phaseless: all magnitudes are zero");

    RVector column_norms = RVector::Ones(matrix.cols());
    CMatrix scaled;
    if (params.normalize_columns) {
        column_norms = matrix.colwise().norm().transpose();
        if (!(column_norms.minCoeff() > 0.0))
            throw NumericalFailure("phaseless: operator has a zero column", matrix.rows(), matrix.cols(), kNaN);
        scaled = matrix * column_norms.cwiseInverse().asDiagonal();
    }
    const CMatrix &h = params.normalize_columns ? scaled : matrix;
    const double rows = static_cast<double>(h.rows());

    double step = 0.0;
    if (params.step_size) {
        step = *params.step_size;
    } else {
        Eigen::BDCSVD<CMatrix> svd(h);
        const double smax = svd.singularValues()(0);
        if (!(smax > 0.0))
            throw NumericalFailure("phaseless: all-zero operator", matrix.rows(), matrix.cols(), kNaN);
        step = 0.5 / (smax * smax);
    }

    CVector z(h.cols());
    if (params.init == PhaselessInit::spectral) {
        const RVector weights = magnitudes.array().square() / rows;
        const CMatrix y = h.adjoint() * weights.asDiagonal() * h;
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(y);
        z = eig.eigenvectors().col(h.cols() - 1);
    } else {
        Rng rng(params.seed);
        for (Eigen::Index m = 0; m < z.size(); ++m)
            z(m) = rng.complex_normal(1.0);
    }
    const double hz_norm = (h * z).norm();
    if (!(hz_norm > 0.0))
        throw NumericalFailure("phaseless: initial iterate lies in the operator null space", matrix.rows(),
                               matrix.cols(), kNaN);
    z *= b_norm / hz_norm;

    PhaselessResult out;
    double f = amplitude_loss(h, z, magnitudes);
    out.objective_history.push_back(f);
    const double mean_b = magnitudes.mean();

    int it = 0;
    while (it < params.max_iterations && std::sqrt(f) / b_norm >= params.stop_tolerance) {
        const CVector hz = h * z;
        const RVector a = hz.cwiseAbs();
        CVector target(hz.size());
        for (Eigen::Index t = 0; t < hz.size(); ++t)
            target(t) = a(t) > 0.0 ? magnitudes(t) * hz(t) / a(t) : cdouble(magnitudes(t), 0.0);
        const CVector residual = hz - target;

        bool moved = false;
        CVector candidate;
        double f_candidate = f;
        for (int pass = 0; pass < 2 && !moved; ++pass) {
            CVector weighted = residual;
            if (pass == 0)
                for (Eigen::Index t = 0; t < hz.size(); ++t) {
                    const double denom = a(t) + params.reweight_epsilon * mean_b;
                    weighted(t) *= denom > 0.0 ? a(t) / denom : 1.0;
                }
            const CVector grad = h.adjoint() * weighted;
            double mu = step;
            for (int halving = 0; halving < 30; ++halving, mu *= 0.5) {
                candidate = z - mu * grad;
                f_candidate = amplitude_loss(h, candidate, magnitudes);
                if (f_candidate < f) {
                    moved = true;
                    break;
                }
            }
        }
        if (!moved)
            break;
        z = std::move(candidate);
        f = f_candidate;
        out.objective_history.push_back(f);
        ++it;
    }

    out.iterations = it;
    out.amplitude_residual = std::sqrt(f) / b_norm;
    out.converged = out.amplitude_residual < params.stop_tolerance;
    out.estimate = params.normalize_columns ? CVector(column_norms.cwiseInverse().asDiagonal() * z) : z;
    return out;
}

PhaselessResult phaseless_solve(const SensingOperator &op, const RVector &magnitudes, const PhaselessParams &params)
{
    return phaseless_solve(op.matrix, magnitudes, params);
}

} // namespace rissense
