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
#include <optional>
#include <vector>

#include "rissense/forward.hpp"
#include "rissense/spectral.hpp"

namespace rissense {

struct LsSolution {
    CVector estimate;
    int numeric_rank = 0;
    double condition_number = 0.0;
    double residual_norm = 0.0;
    double tolerance_used = 1e-12;
    SpectrumReport spectrum; // computed from the same decomposition
};

/// Truncated-SVD pseudo-inverse solution. Singular values at or below
/// rank_tolerance * sigma_max are discarded.
LsSolution ls_solve(const CMatrix &matrix, const CVector &measurements, double rank_tolerance = 1e-12);
LsSolution ls_solve(const SensingOperator &op, const CVector &measurements, double rank_tolerance = 1e-12);

enum class PhaselessInit { spectral, random };

struct PhaselessParams {
    int max_iterations = 2000;
    std::optional<double> step_size; // default 0.5 / sigma_max(H)^2
    double reweight_epsilon = 0.1;
    PhaselessInit init = PhaselessInit::spectral;
    double stop_tolerance = 1e-6;
    std::uint64_t seed = 0;
    /// Solve in coordinates where every operator column has unit norm.
    bool normalize_columns = false;

    void validate() const;
};

struct PhaselessResult {
    CVector estimate;
    int iterations = 0;
    double amplitude_residual = 0.0; // || |H x| - b || / ||b||
    bool converged = false;
    std::vector<double> objective_history; // sum (|H x| - b)^2, one entry per accepted iterate
};

/// Amplitude-flow recovery from magnitudes b = |H x| with reweighted gradient
/// steps, spectral or random start and step halving. The returned estimate is
/// defined up to a global phase.
PhaselessResult phaseless_solve(const CMatrix &matrix, const RVector &magnitudes, const PhaselessParams &params = {});
PhaselessResult phaseless_solve(const SensingOperator &op, const RVector &magnitudes,
                                const PhaselessParams &params = {});

} // namespace rissense
