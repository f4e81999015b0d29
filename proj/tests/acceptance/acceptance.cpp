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

// Acceptance gate. Each criterion prints one line:
//   [PASS] criterion N: <name>: <details>
//   [FAIL] criterion N: <name>: <details>
// Usage: rissense_acceptance [--only N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rissense/experiments.hpp"
#include "rissense/metrics.hpp"
#include "rissense/random.hpp"

using namespace rissense;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string details;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string join(const std::vector<double> &v, const char *f = "%g")
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + fmt(f, v[i]);
    return s + "}";
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const AuxTable &table(const ExperimentResult &r, const std::string &name)
{
    for (const auto &t : r.tables)
        if (t.filename == name)
            return t;
    throw std::runtime_error("missing table " + name);
}

std::size_t column(const AuxTable &t, const std::string &name)
{
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name)
            return i;
    throw std::runtime_error("missing column " + name);
}

std::vector<double> summary_column(const ExperimentResult &r, double SummaryRow::*field)
{
    std::vector<double> out;
    for (const auto &s : r.summary())
        out.push_back(s.*field);
    return out;
}

// Criterion 1
Verdict rank_law()
{
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = defaults_for(Experiment::rank_sweep);
    cfg.sweep = SweepConfig{"T_k", {50, 70, 90, 110}};
    const auto by_t = summary_column(run_experiment(cfg), &SummaryRow::rank);
    cfg.sweep = SweepConfig{"N_k", {50, 70, 90, 110}};
    const auto by_n = summary_column(run_experiment(cfg), &SummaryRow::rank);
    const double elapsed = seconds_since(t0);

    const bool t_ok = by_t == std::vector<double>{200, 280, 360, 400};
    const bool n_ok = by_n.size() == 4 && by_n[0] == 200 && by_n[1] == 280 && by_n[2] >= 340 && by_n[2] <= 360 &&
                      by_n[3] == 400;
    return {t_ok && n_ok && elapsed < 30.0,
            "T_k sweep ranks " + join(by_t) + " (want {200, 280, 360, 400}); N_k sweep ranks " + join(by_n) +
                " (want {200, 280, [340,360], 400}); runtime " + fmt("%.1f", elapsed) + " s (limit 30 s)"};
}

// Criterion 2
Verdict noiseless_ls()
{
    const auto cfg = defaults_for(Experiment::rank_sweep);
    const auto scene = roi_scene(cfg);
    const std::vector<std::string> labels{"A", "C", "E", "G"};
    const std::vector<int> counts(4, 110);
    double worst = 0.0;
    int full_rank = 0;
    const int draws = 5;
    for (int k = 0; k < draws; ++k) {
        const auto panels = landmark_panels(cfg, labels, counts, counts, derive_seed(31337, static_cast<std::uint64_t>(k)));
        const auto op = multi_ris_stacked_operator(panels, scene, cfg.wave());
        Rng rng(derive_seed(4242, static_cast<std::uint64_t>(k)));
        CVector e(op.cols());
        for (Eigen::Index m = 0; m < e.size(); ++m)
            e(m) = rng.complex_normal(1.0);
        const auto sol = ls_solve(op, simulate_measurements(op, e, {}).values);
        full_rank += sol.numeric_rank == op.cols();
        worst = std::max(worst, relative_error(sol.estimate, e));
    }
    return {full_rank == draws && worst < 1e-8, std::to_string(full_rank) + "/" + std::to_string(draws) +
                                                     " operators full column rank; worst relative error " +
                                                     fmt("%.3e", worst) + " (limit 1e-8)"};
}

// Criterion 3
Verdict closed_form_pair()
{
    Rng rng(303);
    double worst = 0.0;
    const double lambda = 0.05;
    for (int k = 0; k < 200; ++k) {
        const int n = 2 + static_cast<int>(rng.uniform() * 255);
        const double d = lambda * rng.uniform(0.1, 2.0);
        const double theta = rng.uniform(-1.5, 1.5);
        const double delta = k % 4 == 0 ? rng.uniform(-1e-3, 1e-3) : rng.uniform(-0.6, 0.6);
        const auto closed = vandermonde_pair_singular_values(n, d, lambda, theta, delta);
        const Eigen::VectorXd sv = oracle::singular_values(oracle::vandermonde_pair(n, d, lambda, theta, delta));
        worst = std::max({worst, std::abs(closed.sigma_max - sv(0)), std::abs(closed.sigma_min - sv(1))});
    }
    return {worst < 1e-9, "200 random draws, worst absolute deviation " + fmt("%.3e", worst) + " (limit 1e-9)"};
}

// Criterion 4
Verdict quadratic_approximation()
{
    bool ok = true;
    std::string details;
    for (int n : {2, 3, 8, 32}) {
        std::vector<double> res;
        for (double x : {0.05, 0.025, 0.0125})
            res.push_back(std::abs(std::sin(n * x) / std::sin(x) - sin_ratio_quadratic(n, x)));
        const double r1 = res[0] / res[1], r2 = res[1] / res[2];
        ok &= r1 >= 15.0 && r2 >= 15.0;
        details += "N=" + std::to_string(n) + " decay " + fmt("%.2f", r1) + "/" + fmt("%.2f", r2) + "; ";
    }
    const double approx = sin_ratio_quadratic(3, 0.1);
    const double direct = std::sin(0.3) / std::sin(0.1);
    ok &= std::abs(approx - 2.96) < 1e-12 && std::abs(approx - direct) < 2e-4;
    details += "N=3 x=0.1: approx " + fmt("%.6f", approx) + " direct " + fmt("%.6f", direct);
    return {ok, details};
}

// Criterion 5
Verdict marchenko_pastur()
{
    const auto t0 = std::chrono::steady_clock::now();
    const int rows = 2000, cols = 200, seeds = 20;
    double acc = 0.0;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(505, static_cast<std::uint64_t>(s)));
        CMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = rng.bit() ? 1.0 : -1.0;
        acc += spectrum(m).sigma_min();
    }
    const double mean = acc / seeds;
    const double est = mp_sigma_min_estimate(rows, cols);
    const double rel = std::abs(mean - est) / est;
    const double elapsed = seconds_since(t0);
    return {rel < 0.15 && elapsed < 60.0, "mean sigma_min " + fmt("%.3f", mean) + " vs edge " + fmt("%.3f", est) +
                                              " (" + fmt("%.1f", 100 * rel) + "% off, limit 15%); runtime " +
                                              fmt("%.1f", elapsed) + " s"};
}

// Criterion 6
Verdict bound_sweeps()
{
    const std::vector<std::pair<std::string, std::vector<double>>> sweeps{
        {"N", {40, 80, 120, 160, 200, 240}},
        {"T", {250, 300, 400, 500, 750, 1000}},
        {"d", {0.013, 0.0195, 0.026, 0.039, 0.052}},
        {"delta_cr", {0.005, 0.01, 0.02, 0.04, 0.08}},
        {"cos_theta_i", {0.2, 0.4, 0.6, 0.8, 1.0}},
        {"snr", {250, 500, 1000, 2000, 4000, 8000}},
    };
    bool ok = true;
    std::string details;
    for (const auto &[param, values] : sweeps) {
        auto cfg = defaults_for(Experiment::bound_sweep);
        cfg.trials = 500;
        cfg.sweep = SweepConfig{param, values};
        const auto res = run_experiment(cfg, {0});
        const auto err = summary_column(res, &SummaryRow::rel_error);
        const auto bnd = summary_column(res, &SummaryRow::bound);
        int dominated = 0;
        double worst_ratio = 0.0;
        for (std::size_t i = 0; i < err.size(); ++i) {
            dominated += err[i] <= bnd[i];
            worst_ratio = std::max(worst_ratio, err[i] / bnd[i]);
        }
        const double rho = oracle::spearman(err, bnd);
        const bool pass = dominated == static_cast<int>(err.size()) && rho > 0.95;
        ok &= pass;
        details += param + ": " + std::to_string(dominated) + "/" + std::to_string(err.size()) +
                   " dominated, max err/bound " + fmt("%.3f", worst_ratio) + ", spearman " + fmt("%.3f", rho) +
                   (pass ? "" : " <-") + "; ";
    }
    return {ok, details};
}

// Criterion 7
Verdict topology()
{
    const auto res = run_experiment(defaults_for(Experiment::topology), {0});
    const auto err = summary_column(res, &SummaryRow::rel_error);
    const auto ss = summary_column(res, &SummaryRow::ssim);
    const auto cond = summary_column(res, &SummaryRow::cond_number);
    const bool fail_i = err[0] > 0.5, fail_ii = err[1] > 0.5;
    const bool cond_ii = cond[1] > 1e5;
    const bool order = ss[3] >= ss[2] && ss[2] > ss[1] && ss[1] > ss[0];
    return {fail_i && fail_ii && cond_ii && order,
            "rel error I..IV " + join(err, "%.3g") + " (I, II > 0.5: " + (fail_i && fail_ii ? "yes" : "no") +
                "); cond II " + fmt("%.3g", cond[1]) + " (> 1e5: " + (cond_ii ? "yes" : "no") + "); SSIM I..IV " +
                join(ss, "%.4f") + " (IV >= III > II > I: " + (order ? "yes" : "no") + ")"};
}

// Criterion 8
Verdict distance()
{
    auto cfg = defaults_for(Experiment::distance);
    cfg.sweep = SweepConfig{"L", {10, 15, 20, 25}};
    const auto res = run_experiment(cfg, {0});
    const auto ss = summary_column(res, &SummaryRow::ssim);
    const auto smin = summary_column(res, &SummaryRow::sigma_min);
    bool ssim_ok = true, smin_ok = true;
    for (std::size_t i = 1; i < ss.size(); ++i) {
        ssim_ok &= ss[i] <= ss[i - 1];
        smin_ok &= smin[i] <= smin[i - 1];
    }
    return {ssim_ok && smin_ok, "SSIM at L=10,15,20,25: " + join(ss, "%.4f") + (ssim_ok ? "" : " (not monotone)") +
                                    "; sigma_min " + join(smin, "%.4g") + (smin_ok ? "" : " (not monotone)")};
}

// Criterion 9
Verdict phaseless_doa()
{
    auto cfg = defaults_for(Experiment::doa);
    cfg.trials = 20;
    const auto res = run_experiment(cfg, {0});
    const auto &t = table(res, "prototype_doa.csv");
    const auto c_ris = column(t, "ris"), c_est = column(t, "estimate_deg"), c_trial = column(t, "trial");
    const double want[2] = {-8.5, -13.25};
    std::string first[2];
    int hits[2] = {0, 0}, total[2] = {0, 0};
    for (const auto &row : t.rows) {
        const int p = row[c_ris] == "left" ? 0 : 1;
        const double est = row[c_est].empty() ? std::nan("") : std::stod(row[c_est]);
        hits[p] += std::abs(est - want[p]) <= 0.5 + 1e-9;
        ++total[p];
        if (row[c_trial] == "0")
            first[p] = row[c_est];
    }
    const bool ok = hits[0] == total[0] && hits[1] == total[1];
    return {ok, "left peak (seed 0) " + first[0] + " deg, " + std::to_string(hits[0]) + "/" +
                    std::to_string(total[0]) + " seeds within 0.5 of -8.5; right peak (seed 0) " + first[1] +
                    " deg, " + std::to_string(hits[1]) + "/" + std::to_string(total[1]) +
                    " seeds within 0.5 of -13.25"};
}

// Criterion 10
Verdict phaseless_localization()
{
    const auto res = run_experiment(defaults_for(Experiment::prototype), {0});
    const auto &t = table(res, "prototype_localization.csv");
    const auto c_hit = column(t, "hit");
    int hits = 0;
    for (const auto &row : t.rows)
        hits += row[c_hit] == "1";
    return {hits >= 18, std::to_string(hits) + "/" + std::to_string(t.rows.size()) +
                            " runs with argmax at the source cell (need >= 18 of 20)"};
}

// Criterion 11
Verdict metric_sanity()
{
    Rng rng(1111);
    RVector x(144);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = rng.uniform();
    const double s = ssim(x, x);
    CVector e(64);
    for (Eigen::Index i = 0; i < e.size(); ++i)
        e(i) = rng.complex_normal(1.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double alpha = rng.uniform(-kPi, kPi);
        worst = std::max(worst, relative_error_mod_phase(CVector(std::polar(1.0, alpha) * e), e));
    }
    return {std::abs(s - 1.0) <= 1e-12 && worst <= 1e-12,
            "|ssim(x,x) - 1| = " + fmt("%.2e", std::abs(s - 1.0)) + "; worst mod-phase error " + fmt("%.2e", worst)};
}

// Criterion 12
std::vector<double> factorisation_deviation(const ElementArray &arr, const WaveContext &ctx)
{
    const int rows = 64;
    const auto cfg = random_phase_config(rows, arr.element_count(), 1212);
    const double theta_i = deg2rad(20.0), theta_s = deg2rad(-10.0);
    const double rx_range = 1000.0 * arr.aperture();
    const Vec3 rx = rx_range * unit_direction(DirectionAngles::from_broadside(theta_s));
    const std::vector<DirectionAngles> inc{DirectionAngles::from_broadside(theta_i)};
    const auto op = single_ris_operator(arr, cfg, ReceiverSpec::make(rx_range, DirectionAngles::from_broadside(theta_s)),
                                        inc, ctx);
    std::vector<double> dev;
    for (double mult : {10.0, 30.0, 100.0, 300.0}) {
        const double r = mult * arr.aperture();
        const Vec3 src = r * unit_direction(DirectionAngles::from_broadside(theta_i));
        const CVector factored = op.matrix.col(0) * path_loss(r, ctx);
        const std::vector<PointSource> sources{{src, 1.0}};
        CVector exact(rows);
        for (int t = 0; t < rows; ++t) {
            const auto phases = cfg.row_phases(t);
            exact(t) = exact_field_oracle(sources, arr, phases, rx, ctx);
        }
        dev.push_back((factored - exact).norm() / exact.norm());
    }
    return dev;
}

bool decreasing(const std::vector<double> &v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1]))
            return false;
    return true;
}

Verdict far_field()
{
    const auto ctx = WaveContext::from_frequency(5.8e9);
    const auto wide = ElementArray::uniform_linear(160, 0.026, default_tau(ctx), {}, {}, true);
    const auto small = ElementArray::uniform_linear(8, ctx.wavelength() / 2, default_tau(ctx), {}, {}, true);
    const auto dev = factorisation_deviation(wide, ctx);
    const auto ref = factorisation_deviation(small, ctx);
    const bool mono = decreasing(dev);
    return {dev[2] < 0.02 && mono,
            "160-element 0.026 m array, receiver at 1000x aperture; deviation at 10/30/100/300 x aperture " +
                join(dev, "%.4g") + " (< 0.02 at 100x; monotone: " + (mono ? "yes" : "no") +
                "); 8-element half-wavelength array: " + join(ref, "%.4g") +
                " (monotone: " + (decreasing(ref) ? "yes" : "no") + ")"};
}

// Criterion 13
std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict reproducibility()
{
    const auto base = fs::temp_directory_path() / "rissense_acceptance_repro";
    fs::remove_all(base);
    std::vector<ScenarioConfig> configs;
    {
        auto c = defaults_for(Experiment::rank_sweep);
        c.snr.value = 30.0;
        c.trials = 2;
        configs.push_back(c);
    }
    {
        auto c = defaults_for(Experiment::topology);
        c.trials = 3;
        configs.push_back(c);
    }
    {
        auto c = defaults_for(Experiment::bound_sweep);
        c.trials = 50;
        configs.push_back(c);
    }
    {
        auto c = defaults_for(Experiment::prototype);
        c.trials = 3;
        configs.push_back(c);
    }
    int files = 0, mismatches = 0;
    std::string bad;
    for (const auto &cfg : configs) {
        const auto name = experiment_name(cfg.experiment);
        const auto a = base / (name + "_serial_1"), b = base / (name + "_serial_2"), c = base / (name + "_parallel");
        write_outputs(run_experiment(cfg, {1}), a.string());
        write_outputs(run_experiment(cfg, {1}), b.string());
        write_outputs(run_experiment(cfg, {4}), c.string());
        for (const auto &entry : fs::directory_iterator(a)) {
            const auto file = entry.path().filename();
            const auto ref = slurp(entry.path());
            ++files;
            if (ref != slurp(b / file) || ref != slurp(c / file)) {
                ++mismatches;
                bad += " " + name + "/" + file.string();
            }
        }
    }
    fs::remove_all(base);
    return {mismatches == 0 && files > 0, std::to_string(files) + " output files compared across two serial runs and "
                                                                   "one 4-thread run; " +
                                              std::to_string(mismatches) + " differ" + bad};
}

struct Criterion {
    int id;
    const char *name;
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char **argv)
{
    const std::vector<Criterion> all{
        {1, "rank law", rank_law},
        {2, "noiseless least squares exactness", noiseless_ls},
        {3, "two-column closed form", closed_form_pair},
        {4, "quadratic sine-ratio approximation", quadratic_approximation},
        {5, "Marchenko-Pastur edge", marchenko_pastur},
        {6, "bound validation sweeps", bound_sweeps},
        {7, "topology study", topology},
        {8, "distance study", distance},
        {9, "phaseless direction of arrival", phaseless_doa},
        {10, "phaseless 2D localisation", phaseless_localization},
        {11, "metric sanity", metric_sanity},
        {12, "far-field factorisation", far_field},
        {13, "reproducibility", reproducibility},
    };
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: rissense_acceptance [--only N]...\n";
            return 2;
        }
    }
    int failures = 0;
    for (const auto &c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << (v.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << ": " << v.details
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
