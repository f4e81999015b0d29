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

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rissense/experiments.hpp"
#include "rissense/forward.hpp"
#include "rissense/random.hpp"
#include "rissense/spectral.hpp"

using namespace rissense;

namespace {

const WaveContext k58 = WaveContext::from_frequency(5.8e9);

CVector random_complex(int n, std::uint64_t seed)
{
    Rng rng(seed);
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v(i) = rng.complex_normal(1.0);
    return v;
}

// Row-by-row evaluation of the far-field single panel measurement.
CMatrix single_operator_loops(const ElementArray &arr, const PhaseConfigMatrix &cfg, double r_s, double theta_s,
                              const std::vector<double> &angles, double lambda)
{
    const int n_el = arr.element_count();
    CMatrix h(cfg.rows(), static_cast<Eigen::Index>(angles.size()));
    const oracle::cd pre = arr.tau() * oracle::spherical_loss(r_s, lambda);
    for (int t = 0; t < cfg.rows(); ++t)
        for (std::size_t m = 0; m < angles.size(); ++m) {
            oracle::cd acc = 0.0;
            for (int n = 0; n < n_el; ++n) {
                const double x = arr.positions()[static_cast<std::size_t>(n)].x();
                const double phase = 2 * oracle::pi * x * (std::sin(theta_s) + std::sin(angles[m])) / lambda;
                acc += std::polar(1.0, cfg.phase(t, n) + phase);
            }
            h(t, static_cast<Eigen::Index>(m)) = pre * acc;
        }
    return h;
}

ScenarioConfig landmark_scenario(double distance = 15.0)
{
    ScenarioConfig cfg = defaults_for(Experiment::rank_sweep);
    cfg.landmarks.distance = distance;
    return cfg;
}

} // namespace

TEST(SingleRisOperator, OneByOneIsTauTimesLoss)
{
    const auto arr = ElementArray::uniform_linear(1, 0.02, default_tau(k58));
    const auto cfg = PhaseConfigMatrix::zeros(1, 1);
    const std::vector<DirectionAngles> inc{DirectionAngles::make(0.0)};
    const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(1.0), inc, k58);
    ASSERT_EQ(op.rows(), 1);
    ASSERT_EQ(op.cols(), 1);
    const oracle::cd expected = 0.16 * k58.wavelength() * oracle::spherical_loss(1.0, k58.wavelength());
    EXPECT_NEAR(std::abs(op.matrix(0, 0) - expected), 0.0, 1e-15);
}

TEST(SingleRisOperator, ZeroPhasesGiveIdenticalRows)
{
    const auto arr = ElementArray::uniform_linear(12, 0.02, default_tau(k58));
    const auto cfg = PhaseConfigMatrix::zeros(7, 12);
    const std::vector<DirectionAngles> inc{DirectionAngles::make(0.0)};
    const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(1.0), inc, k58);
    for (int t = 1; t < 7; ++t)
        EXPECT_EQ(op.matrix(t, 0), op.matrix(0, 0));
}

TEST(SingleRisOperator, MatchesRowByRowEvaluation)
{
    const auto arr = ElementArray::uniform_linear(24, 0.026, default_tau(k58));
    const auto cfg = random_phase_config(40, 24, 5);
    const std::vector<double> angles{-0.4, -0.1, 0.0, 0.2, 0.7};
    std::vector<DirectionAngles> inc;
    for (double a : angles)
        inc.push_back(DirectionAngles::from_broadside(a));
    const double theta_s = -0.3;
    const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(1.3, DirectionAngles::from_broadside(theta_s)),
                                        inc, k58);
    const CMatrix ref = single_operator_loops(arr, cfg, 1.3, theta_s, angles, k58.wavelength());
    EXPECT_LT((op.matrix - ref).cwiseAbs().maxCoeff(), 1e-12 * ref.cwiseAbs().maxCoeff());
}

TEST(SingleRisOperator, DefaultGeometryHasRankTwo)
{
    const auto arr = ElementArray::uniform_linear(160, 0.026, default_tau(k58));
    const auto cfg = random_phase_config(500, 160, 77);
    const std::vector<DirectionAngles> inc{DirectionAngles::from_broadside(0.0),
                                           DirectionAngles::from_broadside(0.02 / 6.0)};
    const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(1.0), inc, k58);
    const Eigen::VectorXd sv = oracle::singular_values(op.matrix);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        rank += sv(i) > 1e-12 * sv(0);
    EXPECT_EQ(rank, 2);
    EXPECT_EQ(spectrum(op).numeric_rank, 2);
}

TEST(SingleRisOperator, RejectsMismatchedConfig)
{
    const auto arr = ElementArray::uniform_linear(10, 0.02, default_tau(k58));
    const auto cfg = PhaseConfigMatrix::zeros(5, 9);
    const std::vector<DirectionAngles> inc{DirectionAngles::make(0.0)};
    EXPECT_THROW(single_ris_operator(arr, cfg, ReceiverSpec::make(1.0), inc, k58), std::invalid_argument);
    EXPECT_THROW(ReceiverSpec::make(0.0), std::invalid_argument);
}

TEST(IncidentAttenuation, SingleCellAndSymmetry)
{
    const double lam = k58.wavelength();
    const auto one = SceneGrid::cartesian({{Vec3(lam, 0, 0), Vec3(0.01, 0.01, 0)}}, CVector::Ones(1));
    EXPECT_NEAR(std::abs(incident_attenuation(one, Vec3::Zero(), k58)(0)), 1.0 / lam, 1e-12 / lam);

    const auto two = SceneGrid::cartesian({{Vec3(2, 1, 0), Vec3(0.1, 0.1, 0)}, {Vec3(-2, 1, 0), Vec3(0.1, 0.1, 0)}},
                                          CVector::Ones(2));
    const CVector att = incident_attenuation(two, Vec3::Zero(), k58);
    EXPECT_NEAR(std::abs(att(0)), std::abs(att(1)), 1e-15);
    EXPECT_THROW(incident_attenuation(one, Vec3(lam, 0, 0), k58), std::invalid_argument);
}

TEST(IncidentAttenuation, LandmarkModulusRange)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto layout = landmark_layout(15.0, cfg.roi.center);
    for (const auto &lm : layout) {
        const Vec3 at = lm.pose.translation;
        const CVector att = incident_attenuation(scene, at, cfg.wave());
        double near = std::numeric_limits<double>::infinity(), far = 0.0;
        for (Eigen::Index i = 0; i < att.size(); ++i) {
            const double dist = (scene.cells()[static_cast<std::size_t>(i)].center - at).norm();
            EXPECT_NEAR(std::abs(att(i)), 1.0 / dist, 1e-12 / dist);
            near = std::min(near, dist);
            far = std::max(far, dist);
        }
        EXPECT_NEAR(att.cwiseAbs().minCoeff(), 1.0 / far, 1e-12);
        EXPECT_NEAR(att.cwiseAbs().maxCoeff(), 1.0 / near, 1e-12);
        EXPECT_GE(near, 15.0 - std::hypot(5.0, 5.0));
        EXPECT_LE(far, 15.0 + std::hypot(5.0, 5.0));
    }
}

TEST(StackedOperator, SinglePanelMatchesComposedSingleOperator)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels(cfg, {"C"}, {40}, {30}, 9);
    const auto stacked = multi_ris_stacked_operator(panels, scene, cfg.wave());

    const Panel &p = panels[0];
    std::vector<DirectionAngles> inc;
    for (const auto &cell : scene.cells())
        inc.push_back(direction_angles(p.array.pose().direction_to_local(cell.center - p.array.reference_point())));
    const auto single = single_ris_operator(p.array, p.config, p.receiver, inc, cfg.wave());
    const CVector att = incident_attenuation(scene, p.array.reference_point(), cfg.wave());
    const CMatrix composed = single.matrix * att.asDiagonal();
    EXPECT_LT((stacked.matrix - composed).cwiseAbs().maxCoeff(), 1e-12 + 1e-10 * composed.cwiseAbs().maxCoeff());

    const auto summed = multi_ris_summed_operator(panels, scene, cfg.wave());
    EXPECT_LT((summed.matrix - stacked.matrix).cwiseAbs().maxCoeff(), 1e-15 * composed.cwiseAbs().maxCoeff());
}

TEST(StackedOperator, BlocksEqualPerPanelOperators)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels(cfg, {"A", "C", "E", "G"}, {30, 30, 30, 30}, {25, 35, 45, 20}, 4);
    const auto op = multi_ris_stacked_operator(panels, scene, cfg.wave());
    ASSERT_EQ(op.rows(), 125);
    ASSERT_EQ(op.blocks.size(), 4u);
    Eigen::Index row = 0;
    for (const auto &p : panels) {
        const std::vector<Panel> alone{p};
        const auto single = multi_ris_stacked_operator(alone, scene, cfg.wave());
        const CMatrix block = op.matrix.middleRows(row, p.config.rows());
        EXPECT_LT((block - single.matrix).cwiseAbs().maxCoeff(), 1e-12 + 1e-10 * single.matrix.cwiseAbs().maxCoeff());
        row += p.config.rows();
    }
}

TEST(StackedOperator, DuplicatedPanelKeepsRank)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    auto panels = landmark_panels(cfg, {"A"}, {30}, {20}, 2);
    panels.push_back(panels[0]);
    const auto op = multi_ris_stacked_operator(panels, scene, cfg.wave());
    const std::vector<Panel> one{panels[0]};
    EXPECT_EQ(spectrum(op).numeric_rank, spectrum(multi_ris_stacked_operator(one, scene, cfg.wave())).numeric_rank);
    EXPECT_THROW(multi_ris_stacked_operator(std::vector<Panel>{}, scene, cfg.wave()), std::invalid_argument);
}

TEST(StackedOperator, DefaultScenarioRankIsFourHundred)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels(cfg, {"A", "C", "E", "G"}, {110, 110, 110, 110}, {110, 110, 110, 110}, 1);
    AssemblyOptions opts;
    opts.validate_rank = true;
    const auto op = multi_ris_stacked_operator(panels, scene, cfg.wave(), opts);
    EXPECT_EQ(op.rows(), 440);
    EXPECT_EQ(op.cols(), 400);
    EXPECT_EQ(spectrum(op).numeric_rank, 400);
    EXPECT_EQ(rank_upper_bound(op), 400);
}

TEST(SummedOperator, NullPanelAndMismatch)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    auto panels = landmark_panels(cfg, {"A", "E"}, {20, 20}, {30, 30}, 6);
    const std::vector<Panel> first{panels[0]};
    panels[1].array = panels[1].array.with_tau(0.0);
    const auto summed = multi_ris_summed_operator(panels, scene, cfg.wave());
    const auto alone = multi_ris_summed_operator(first, scene, cfg.wave());
    EXPECT_LT((summed.matrix - alone.matrix).cwiseAbs().maxCoeff(), 1e-15);

    const auto uneven = landmark_panels(cfg, {"A", "E"}, {20, 20}, {30, 31}, 6);
    EXPECT_THROW(multi_ris_summed_operator(uneven, scene, cfg.wave()), std::invalid_argument);
}

TEST(SummedOperator, RankWithinSharedReceiverBound)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels(cfg, {"A", "C", "E", "G"}, {110, 110, 110, 110}, {440, 440, 440, 440}, 3);
    AssemblyOptions opts;
    opts.validate_rank = true;
    const auto op = multi_ris_summed_operator(panels, scene, cfg.wave(), opts);
    EXPECT_EQ(op.rows(), 440);
    const int bound = rank_upper_bound(op);
    EXPECT_EQ(bound, 400);
    EXPECT_LE(spectrum(op).numeric_rank, bound);
}

TEST(SimulateMeasurements, NoiselessIsExactAndLinear)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels(cfg, {"A", "E"}, {40, 40}, {50, 50}, 10);
    const auto op = multi_ris_stacked_operator(panels, scene, cfg.wave());
    const CVector e1 = random_complex(400, 1);
    const CVector e2 = random_complex(400, 2);
    const cdouble a(0.3, -1.2), b(2.0, 0.5);
    const auto s1 = simulate_measurements(op, e1, {});
    const auto s2 = simulate_measurements(op, e2, {});
    const auto s12 = simulate_measurements(op, (a * e1 + b * e2).eval(), {});
    EXPECT_EQ(s1.values, op.matrix * e1);
    EXPECT_EQ(s1.sigma2, 0.0);
    const CVector combo = a * s1.values + b * s2.values;
    EXPECT_LT((s12.values - combo).norm(), 1e-12 * combo.norm());
}

TEST(SimulateMeasurements, PureNoiseUsesOverride)
{
    const auto cfg = landmark_scenario();
    const auto scene = roi_scene(cfg);
    const auto panels = landmark_panels(cfg, {"A"}, {20}, {4000}, 10);
    const auto op = multi_ris_stacked_operator(panels, scene, cfg.wave());
    NoiseSpec noise;
    noise.snr = 10.0;
    noise.seed = 3;
    EXPECT_THROW(simulate_measurements(op, CVector::Zero(400), noise), std::invalid_argument);
    noise.sigma2_override = 0.25;
    const auto s = simulate_measurements(op, CVector::Zero(400), noise);
    EXPECT_NEAR(s.values.squaredNorm() / (4000 * 0.25), 1.0, 0.05);
    noise.snr = 0.0;
    EXPECT_THROW(simulate_measurements(op, CVector::Zero(400), noise), std::invalid_argument);
}

TEST(SimulateMeasurements, FieldReferencedNoiseEnergy)
{
    const auto arr = ElementArray::uniform_linear(160, 0.026, default_tau(k58));
    const auto cfg = random_phase_config(500, 160, 77);
    const std::vector<DirectionAngles> inc{DirectionAngles::from_broadside(0.0),
                                           DirectionAngles::from_broadside(0.02 / 6.0)};
    const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(1.0), inc, k58);
    const CVector e = CVector::Ones(2);
    const CVector clean = op.matrix * e;
    double acc = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        NoiseSpec noise;
        noise.snr = 2000.0;
        noise.seed = seed;
        acc += (simulate_measurements(op, e, noise).values - clean).squaredNorm();
    }
    const double ratio = acc / 500 / e.squaredNorm();
    EXPECT_NEAR(ratio / (500.0 / 2000.0), 1.0, 0.01);
}

TEST(ExactFieldOracle, SingleElementIsProductOfLosses)
{
    const double lam = k58.wavelength();
    const auto arr = ElementArray::uniform_linear(1, 0.02, cdouble(0.1, 0.2));
    const Vec3 src(0.5, 0.0, 3.0), rx(0.0, 0.0, 1.0);
    const std::vector<PointSource> one{{src, cdouble(2.0, -1.0)}};
    const std::vector<double> row{kPi};
    const cdouble s = exact_field_oracle(one, arr, row, rx, k58);
    const oracle::cd expected = cdouble(0.1, 0.2) * -1.0 * oracle::spherical_loss(src.norm(), lam) *
                                oracle::spherical_loss(1.0, lam) * cdouble(2.0, -1.0);
    EXPECT_NEAR(std::abs(s - expected), 0.0, 1e-14 * std::abs(expected));

    const std::vector<PointSource> doubled{{src, cdouble(4.0, -2.0)}};
    EXPECT_NEAR(std::abs(exact_field_oracle(doubled, arr, row, rx, k58)), 2.0 * std::abs(s), 1e-14);
    EXPECT_THROW(exact_field_oracle(one, arr, row, Vec3::Zero(), k58), std::invalid_argument);
}

TEST(ExactFieldOracle, AgreesWithFactoredModelInFarField)
{
    const auto arr = ElementArray::uniform_linear(8, k58.wavelength() / 2, default_tau(k58), {}, {}, true);
    const auto cfg = random_phase_config(20, 8, 12);
    const double theta_i = 0.3, theta_s = -0.2;
    const double rx_range = 1000.0 * arr.aperture();
    std::vector<double> deviation;
    for (double mult : {10.0, 30.0, 100.0, 300.0}) {
        const double r = mult * arr.aperture();
        const Vec3 src = r * unit_direction(DirectionAngles::from_broadside(theta_i));
        const Vec3 rx = rx_range * unit_direction(DirectionAngles::from_broadside(theta_s));
        const std::vector<DirectionAngles> inc{DirectionAngles::from_broadside(theta_i)};
        const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(rx_range, DirectionAngles::from_broadside(theta_s)),
                                            inc, k58);
        const CVector factored = op.matrix.col(0) * path_loss(r, k58);
        CVector exact(20);
        const std::vector<PointSource> sources{{src, 1.0}};
        for (int t = 0; t < 20; ++t) {
            const auto row = cfg.row_phases(t);
            exact(t) = exact_field_oracle(sources, arr, row, rx, k58);
        }
        deviation.push_back((factored - exact).norm() / exact.norm());
    }
    EXPECT_LT(deviation[2], 0.02);
    for (std::size_t i = 1; i < deviation.size(); ++i)
        EXPECT_LT(deviation[i], deviation[i - 1]);
}

TEST(SceneGrid, Validation)
{
    EXPECT_THROW(SceneGrid::angular_line({0.1, 0.1}, CVector::Ones(2)), std::invalid_argument);
    EXPECT_THROW(SceneGrid::angular_line({}, CVector()), std::invalid_argument);
    EXPECT_THROW(SceneGrid::cartesian({{Vec3(0, 0, 0), Vec3(1, 1, 0)}, {Vec3(0.5, 0, 0), Vec3(1, 1, 0)}},
                                      CVector::Ones(2)),
                 std::invalid_argument);
    const auto plane = SceneGrid::uniform_plane(Vec3(0, 6.5, 0), 12, 12, 12, 12);
    EXPECT_EQ(plane.size(), 144);
    EXPECT_EQ(plane.nearest_cell(Vec3(-0.5, 6.0, 0.0)), 5 * 12 + 5);
    EXPECT_NEAR((plane.cells()[5 * 12 + 5].center - Vec3(-0.5, 6.0, 0.0)).norm(), 0.0, 1e-12);
}
