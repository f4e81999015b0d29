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

#include <benchmark/benchmark.h>

#include "rissense/experiments.hpp"

using namespace rissense;

namespace {

std::vector<Panel> landmark_panels_of(int per_panel)
{
    const auto cfg = defaults_for(Experiment::rank_sweep);
    const std::vector<int> counts(4, per_panel);
    return landmark_panels(cfg, {"A", "C", "E", "G"}, counts, counts, 1);
}

void BM_StackedAssembly(benchmark::State &state)
{
    const auto cfg = defaults_for(Experiment::rank_sweep);
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels_of(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(multi_ris_stacked_operator(panels, scene, cfg.wave()).matrix.data());
}
BENCHMARK(BM_StackedAssembly)->Arg(50)->Arg(110)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State &state)
{
    const auto cfg = defaults_for(Experiment::rank_sweep);
    const auto op = multi_ris_stacked_operator(landmark_panels_of(static_cast<int>(state.range(0))), roi_scene(cfg),
                                               cfg.wave());
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum(op).numeric_rank);
}
BENCHMARK(BM_Spectrum)->Arg(50)->Arg(110)->Unit(benchmark::kMillisecond);

void BM_LeastSquares(benchmark::State &state)
{
    const auto cfg = defaults_for(Experiment::rank_sweep);
    const auto op = multi_ris_stacked_operator(landmark_panels_of(110), roi_scene(cfg), cfg.wave());
    const CVector s = op.matrix * ground_truth_map(cfg.ground_truth, 20, 20);
    for (auto _ : state)
        benchmark::DoNotOptimize(ls_solve(op, s).estimate.data());
}
BENCHMARK(BM_LeastSquares)->Unit(benchmark::kMillisecond);

void BM_Phaseless(benchmark::State &state)
{
    const auto ctx = WaveContext::from_frequency(5.8e9);
    const auto arr = ElementArray::uniform_linear(16, 0.025, default_tau(ctx), {}, {}, true);
    std::vector<DirectionAngles> dirs;
    for (int i = 0; i <= 480; ++i)
        dirs.push_back(DirectionAngles::from_broadside(deg2rad(-60.0 + 0.25 * i)));
    const auto op = single_ris_operator(arr, random_phase_config(500, 16, 3),
                                        ReceiverSpec::make(1.0, DirectionAngles::from_broadside(deg2rad(-25.0))), dirs, ctx);
    const RVector b = op.matrix.col(206).cwiseAbs();
    PhaselessParams p;
    p.normalize_columns = true;
    for (auto _ : state)
        benchmark::DoNotOptimize(phaseless_solve(op, b, p).iterations);
}
BENCHMARK(BM_Phaseless)->Unit(benchmark::kMillisecond);

void BM_BoundSweepPoint(benchmark::State &state)
{
    auto cfg = defaults_for(Experiment::bound_sweep);
    cfg.trials = static_cast<int>(state.range(0));
    cfg.sweep = SweepConfig{"snr", {2000}};
    for (auto _ : state)
        benchmark::DoNotOptimize(run_experiment(cfg, {1}).rows.size());
}
BENCHMARK(BM_BoundSweepPoint)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
