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

#include "rissense/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rissense/metrics.hpp"
#include "rissense/random.hpp"

namespace rissense {

namespace {

struct SweepPoint {
    std::string param;
    double value = 0.0;
};

std::vector<SweepPoint> sweep_points(const ScenarioConfig &cfg, const std::string &fallback_param,
                                     double fallback_value)
{
    std::vector<SweepPoint> out;
    if (cfg.sweep)
        for (double v : cfg.sweep->values)
            out.push_back({cfg.sweep->parameter, v});
    else
        out.push_back({fallback_param, fallback_value});
    return out;
}

Provenance make_provenance(const ScenarioConfig &cfg)
{
    return {experiment_name(cfg.experiment), config_hash(cfg), cfg.master_seed, tool_version()};
}

RVector amplitude(const CVector &v) { return v.cwiseAbs(); }

cdouble panel_tau(const ScenarioConfig &cfg, const WaveContext &ctx) { return cfg.ris.tau.value_or(default_tau(ctx)); }

std::vector<std::string> strategy_labels(const std::vector<std::string> &labels)
{
    std::vector<std::string> out = labels;
    std::sort(out.begin(), out.end());
    return out;
}

std::string join_labels(const std::vector<std::string> &labels)
{
    std::string out;
    for (const auto &l : labels)
        out += l;
    return out;
}

std::string tag_for(const std::string &param, double value)
{
    std::string v = format_number(value);
    std::replace(v.begin(), v.end(), '.', 'p');
    std::replace(v.begin(), v.end(), '-', 'm');
    return param + "_" + v;
}

void fill_spectrum(TrialRow &row, const SpectrumReport &s)
{
    row.rank = s.numeric_rank;
    row.cond_number = s.condition_number;
    row.sigma_min = s.sigma_min();
}

// LS reconstruction of one cartesian landmark scenario.
struct CartesianTrial {
    TrialRow row;
    std::optional<RVector> spectrum;
};

CartesianTrial cartesian_trial(const ScenarioConfig &cfg, const std::vector<std::string> &labels,
                               const std::vector<int> &elements, const std::vector<int> &measurements,
                               const SceneGrid &scene, int trial, bool keep_spectrum)
{
    const auto ctx = cfg.wave();
    const auto phase_seed = monte_carlo_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), SeedStream::phase);
    const auto panels = landmark_panels(cfg, labels, elements, measurements, phase_seed);
    const auto op = cfg.mode == OperatorMode::summed ? multi_ris_summed_operator(panels, scene, ctx)
                                                     : multi_ris_stacked_operator(panels, scene, ctx);
    NoiseSpec noise;
    noise.snr = cfg.snr.linear();
    noise.seed = monte_carlo_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), SeedStream::noise);
    noise.reference = cfg.snr.reference;
    const auto meas = simulate_measurements(op, scene, noise);
    const auto sol = ls_solve(op, meas.values, cfg.rank_tolerance);

    CartesianTrial out;
    out.row.trial = trial;
    out.row.rel_error = relative_error(sol.estimate, scene.amplitudes());
    out.row.ssim = ssim(amplitude(sol.estimate), amplitude(scene.amplitudes()));
    fill_spectrum(out.row, sol.spectrum);
    if (keep_spectrum)
        out.spectrum = sol.spectrum.singular_values;
    return out;
}

// Runs the cartesian LS study over a list of (point, labels, element split, measurement split, scene).
struct CartesianPoint {
    SweepPoint point;
    ScenarioConfig config;
    std::vector<std::string> labels;
    std::vector<int> elements;
    std::vector<int> measurements;
    std::string spectrum_tag;
};

void run_cartesian_points(const std::vector<CartesianPoint> &points, const RunOptions &options, ExperimentResult &out)
{
    std::vector<SceneGrid> scenes;
    for (const auto &p : points) {
        auto scene = roi_scene(p.config);
        scenes.push_back(scene.with_amplitudes(ground_truth_map(p.config.ground_truth, p.config.roi.cells_x,
                                                                p.config.roi.cells_y)));
    }
    std::vector<std::size_t> offsets{0};
    for (const auto &p : points)
        offsets.push_back(offsets.back() + static_cast<std::size_t>(p.config.trials));
    std::vector<CartesianTrial> results(offsets.back());
    parallel_for(results.size(), options.threads, [&](std::size_t task) {
        const auto it = std::upper_bound(offsets.begin(), offsets.end(), task) - 1;
        const auto idx = static_cast<std::size_t>(it - offsets.begin());
        const int trial = static_cast<int>(task - *it);
        const auto &p = points[idx];
        results[task] = cartesian_trial(p.config, p.labels, p.elements, p.measurements, scenes[idx], trial, trial == 0);
        results[task].row.sweep_param = p.point.param;
        results[task].row.sweep_value = p.point.value;
    });
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t task = offsets[i]; task < offsets[i + 1]; ++task) {
            out.rows.push_back(results[task].row);
            if (results[task].spectrum)
                out.spectra.push_back({points[i].spectrum_tag, *results[task].spectrum});
        }
}

double signed_angle_to(const RigidPose &pose, const Vec3 &world_point)
{
    const Vec3 local = pose.to_local(world_point);
    return std::atan2(local.x(), local.z());
}

int nearest_index(const std::vector<double> &grid, double value)
{
    int best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - value) < std::abs(grid[static_cast<std::size_t>(best)] - value))
            best = static_cast<int>(i);
    return best;
}

ElementArray prototype_array(const ScenarioConfig &cfg, int panel, const WaveContext &ctx)
{
    return ElementArray::uniform_linear(cfg.prototype.elements, cfg.prototype.spacing, panel_tau(cfg, ctx),
                                        prototype_panel_pose(cfg, panel), panel == 0 ? "left" : "right", true);
}

ReceiverSpec prototype_receiver(const ScenarioConfig &cfg)
{
    return ReceiverSpec::make(cfg.prototype.receiver.distance,
                              DirectionAngles::from_broadside(deg2rad(cfg.prototype.receiver.theta_deg)));
}

struct DoaTrial {
    TrialRow row;
    double estimate_deg = 0.0;
    int iterations = 0;
    double residual = 0.0;
    RVector spectrum;
};

void doa_part(const ScenarioConfig &cfg, const RunOptions &options, ExperimentResult &out)
{
    const auto ctx = cfg.wave();
    const auto grid = cfg.prototype.doa_grid.angles_rad();
    std::vector<double> grid_deg;
    for (double a : grid)
        grid_deg.push_back(rad2deg(a));
    const auto receiver = prototype_receiver(cfg);
    const Vec3 source(cfg.prototype.source_xy[0], cfg.prototype.source_xy[1], 0.0);
    const char *names[2] = {"left", "right"};

    std::vector<ElementArray> arrays;
    std::vector<int> truth_index;
    std::vector<SceneGrid> scenes;
    for (int p = 0; p < 2; ++p) {
        arrays.push_back(prototype_array(cfg, p, ctx));
        const int idx = nearest_index(grid, signed_angle_to(arrays.back().pose(), source));
        truth_index.push_back(idx);
        CVector e = CVector::Zero(static_cast<Eigen::Index>(grid.size()));
        e(idx) = 1.0;
        scenes.push_back(SceneGrid::angular_line(grid, e));
    }

    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<DoaTrial> results(2 * trials);
    parallel_for(results.size(), options.threads, [&](std::size_t task) {
        const int p = static_cast<int>(task / trials);
        const int trial = static_cast<int>(task % trials);
        const auto seed = derive_seed(monte_carlo_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), SeedStream::phase),
                                      static_cast<std::uint64_t>(p));
        const auto config = random_phase_config(cfg.prototype.measurements, cfg.prototype.elements, seed);
        const auto dirs = scenes[static_cast<std::size_t>(p)].directions();
        const auto op = single_ris_operator(arrays[static_cast<std::size_t>(p)], config, receiver, dirs, ctx);
        const CVector &truth = scenes[static_cast<std::size_t>(p)].amplitudes();
        const RVector b = (op.matrix * truth).cwiseAbs();
        const auto sol = phaseless_solve(op, b, cfg.phaseless.params(seed));
        const RVector spec = amplitude(sol.estimate);
        const auto peaks = doa_peaks(std::span<const double>(spec.data(), static_cast<std::size_t>(spec.size())),
                                     grid_deg, 1);

        DoaTrial &r = results[task];
        r.row.sweep_param = std::string("doa_") + names[p];
        r.row.sweep_value = grid_deg[static_cast<std::size_t>(truth_index[static_cast<std::size_t>(p)])];
        r.row.trial = trial;
        r.row.rel_error = relative_error_mod_phase(sol.estimate, truth);
        r.row.ssim = ssim(spec, amplitude(truth));
        fill_spectrum(r.row, spectrum(op, cfg.rank_tolerance));
        r.estimate_deg = peaks.peaks.empty() ? kNotApplicable : peaks.peaks.front().angle;
        r.iterations = sol.iterations;
        r.residual = sol.amplitude_residual;
        if (trial == 0)
            r.spectrum = spec;
    });

    AuxTable doa{"prototype_doa.csv", {"ris", "trial", "truth_deg", "estimate_deg", "abs_error_deg", "iterations",
                                       "amplitude_residual"}, {}};
    for (std::size_t task = 0; task < results.size(); ++task) {
        const auto &r = results[task];
        const int p = static_cast<int>(task / trials);
        out.rows.push_back(r.row);
        doa.rows.push_back({names[p], std::to_string(r.row.trial), format_number(r.row.sweep_value),
                            format_number(r.estimate_deg), format_number(std::abs(r.estimate_deg - r.row.sweep_value)),
                            std::to_string(r.iterations), format_number(r.residual)});
        if (r.row.trial == 0) {
            AuxTable spec{std::string("doa_spectrum_") + names[p] + ".csv", {"angle_deg", "amplitude"}, {}};
            for (std::size_t i = 0; i < grid_deg.size(); ++i)
                spec.rows.push_back({format_number(grid_deg[i]), format_number(r.spectrum(static_cast<Eigen::Index>(i)))});
            out.tables.push_back(std::move(spec));
        }
    }
    out.tables.insert(out.tables.begin(), std::move(doa));
}

struct LocalizationTrial {
    TrialRow row;
    int estimate = 0;
    RVector map;
};

void localization_part(const ScenarioConfig &cfg, const RunOptions &options, ExperimentResult &out)
{
    const auto ctx = cfg.wave();
    const auto receiver = prototype_receiver(cfg);
    const Vec3 source(cfg.prototype.source_xy[0], cfg.prototype.source_xy[1], 0.0);
    const auto base = roi_scene(cfg);
    const int truth_cell = base.nearest_cell(source);
    CVector e = CVector::Zero(base.size());
    e(truth_cell) = 1.0;
    const auto scene = base.with_amplitudes(e);
    const std::array<ElementArray, 2> arrays{prototype_array(cfg, 0, ctx), prototype_array(cfg, 1, ctx)};

    std::vector<LocalizationTrial> results(static_cast<std::size_t>(cfg.trials));
    parallel_for(results.size(), options.threads, [&](std::size_t task) {
        const int trial = static_cast<int>(task);
        const auto phase_seed = monte_carlo_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), SeedStream::phase);
        std::vector<Panel> panels;
        for (int p = 0; p < 2; ++p)
            panels.push_back({arrays[static_cast<std::size_t>(p)],
                              random_phase_config(cfg.prototype.measurements, cfg.prototype.elements,
                                                  derive_seed(phase_seed, static_cast<std::uint64_t>(p))),
                              receiver});
        const auto op = multi_ris_stacked_operator(panels, scene, ctx);
        const RVector b = (op.matrix * e).cwiseAbs();
        const auto sol = phaseless_solve(op, b, cfg.phaseless.params(phase_seed));
        const RVector energy = op.matrix.colwise().norm().transpose();
        const RVector map = amplitude(sol.estimate).cwiseProduct(energy);
        Eigen::Index best = 0;
        map.maxCoeff(&best);

        auto &r = results[task];
        r.row.sweep_param = "localization";
        r.row.sweep_value = truth_cell;
        r.row.trial = trial;
        r.row.rel_error = relative_error_mod_phase(sol.estimate, e);
        r.row.ssim = ssim(map / map.maxCoeff(), amplitude(e));
        fill_spectrum(r.row, spectrum(op, cfg.rank_tolerance));
        r.estimate = static_cast<int>(best);
        if (trial == 0)
            r.map = map;
    });

    AuxTable loc{"prototype_localization.csv",
                 {"trial", "truth_cell", "estimate_cell", "truth_x", "truth_y", "estimate_x", "estimate_y", "hit"},
                 {}};
    const auto &cells = scene.cells();
    for (const auto &r : results) {
        out.rows.push_back(r.row);
        const auto &tc = cells[static_cast<std::size_t>(truth_cell)].center;
        const auto &ec = cells[static_cast<std::size_t>(r.estimate)].center;
        loc.rows.push_back({std::to_string(r.row.trial), std::to_string(truth_cell), std::to_string(r.estimate),
                            format_number(tc.x()), format_number(tc.y()), format_number(ec.x()), format_number(ec.y()),
                            r.estimate == truth_cell ? "1" : "0"});
    }
    out.tables.push_back(std::move(loc));
    if (!results.empty()) {
        AuxTable map{"localization_map.csv", {"cell", "x", "y", "value"}, {}};
        for (int m = 0; m < scene.size(); ++m)
            map.rows.push_back({std::to_string(m), format_number(cells[static_cast<std::size_t>(m)].center.x()),
                                format_number(cells[static_cast<std::size_t>(m)].center.y()),
                                format_number(results.front().map(m))});
        out.tables.push_back(std::move(map));
    }
}

} // namespace

const char *tool_version()
{
#ifdef RISSENSE_VERSION
    return RISSENSE_VERSION;
#else
    return "0.0.0";
#endif
}

BoundInputs bound_inputs(const ScenarioConfig &cfg)
{
    const auto ctx = cfg.wave();
    BoundInputs in;
    in.elements = cfg.bound.elements;
    in.measurements = cfg.bound.measurements;
    in.spacing = cfg.bound.spacing;
    in.lambda = ctx.wavelength();
    in.r_s = cfg.bound.r_s;
    in.r_i = cfg.bound.r_i;
    in.tau_mag = std::abs(panel_tau(cfg, ctx));
    in.theta_i = deg2rad(cfg.bound.theta_i_deg);
    in.delta_cr = cfg.bound.delta_cr;
    in.delta = cfg.bound.delta_cr / cfg.bound.r_i;
    in.snr = cfg.snr.linear();
    return in;
}

SceneGrid roi_scene(const ScenarioConfig &cfg)
{
    return SceneGrid::uniform_plane(cfg.roi.center, cfg.roi.extent_x, cfg.roi.extent_y, cfg.roi.cells_x,
                                    cfg.roi.cells_y);
}

std::vector<Panel> landmark_panels(const ScenarioConfig &cfg, const std::vector<std::string> &labels,
                                   const std::vector<int> &elements, const std::vector<int> &measurements,
                                   std::uint64_t phase_seed)
{
    if (labels.size() != elements.size() || labels.size() != measurements.size())
        throw std::invalid_argument("one element and measurement count per landmark is required");
    const auto ctx = cfg.wave();
    const auto layout = landmark_layout(cfg.landmarks.distance, cfg.roi.center, cfg.landmarks.start_bearing_deg,
                                        cfg.landmarks.step_deg);
    const auto receiver = ReceiverSpec::make(cfg.ris.receiver.distance,
                                             DirectionAngles::from_broadside(deg2rad(cfg.ris.receiver.theta_deg)));
    std::vector<Panel> panels;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto it = std::find_if(layout.begin(), layout.end(), [&](const auto &l) { return l.label == labels[k]; });
        if (it == layout.end())
            throw std::invalid_argument("unknown landmark label " + labels[k]);
        auto array = ElementArray::uniform_linear(elements[k], cfg.ris.spacing, panel_tau(cfg, ctx), it->pose,
                                                  labels[k], true);
        auto config = random_phase_config(measurements[k], elements[k], derive_seed(phase_seed, k));
        panels.push_back({std::move(array), std::move(config), receiver});
    }
    return panels;
}

RigidPose prototype_panel_pose(const ScenarioConfig &cfg, int panel)
{
    if (panel != 0 && panel != 1)
        throw std::invalid_argument("prototype has two panels");
    const double half = 0.5 * cfg.prototype.separation;
    const Vec3 center(panel == 0 ? -half : half, 0.0, 0.0);
    const Vec3 source(cfg.prototype.source_xy[0], cfg.prototype.source_xy[1], 0.0);
    const double bearing = std::atan2(source.y() - center.y(), source.x() - center.x());
    const double facing = bearing + deg2rad(cfg.prototype.doa_truth_deg[static_cast<std::size_t>(panel)]);
    const Vec3 normal(std::cos(facing), std::sin(facing), 0.0);
    const Vec3 axis(normal.y(), -normal.x(), 0.0);
    return RigidPose::facing(center, normal, axis);
}

ExperimentResult run_bound_sweep(const ScenarioConfig &cfg, const RunOptions &options)
{
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::bound_sweep);
    out.provenance = make_provenance(cfg);
    const auto ctx = cfg.wave();
    const auto points = sweep_points(cfg, "snr", cfg.snr.linear());

    std::vector<ScenarioConfig> point_cfg;
    std::vector<double> bounds;
    for (const auto &p : points) {
        ScenarioConfig c = cfg;
        if (p.param == "N")
            c.bound.elements = static_cast<int>(p.value);
        else if (p.param == "T")
            c.bound.measurements = static_cast<int>(p.value);
        else if (p.param == "d")
            c.bound.spacing = p.value;
        else if (p.param == "delta_cr")
            c.bound.delta_cr = p.value;
        else if (p.param == "theta_i")
            c.bound.theta_i_deg = p.value;
        else if (p.param == "cos_theta_i")
            c.bound.theta_i_deg = rad2deg(std::acos(p.value));
        else if (p.param == "snr")
            c.snr = {p.value, SnrUnit::linear, cfg.snr.reference};
        else
            throw std::invalid_argument("unrecognised bound sweep parameter " + p.param);
        bounds.push_back(relative_error_bound(BoundVariant::crossrange, bound_inputs(c)));
        point_cfg.push_back(std::move(c));
    }

    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRow> rows(points.size() * trials);
    parallel_for(rows.size(), options.threads, [&](std::size_t task) {
        const std::size_t i = task / trials;
        const int trial = static_cast<int>(task % trials);
        const auto &c = point_cfg[i];
        const auto in = bound_inputs(c);
        const auto array = ElementArray::uniform_linear(in.elements, in.spacing, panel_tau(c, ctx));
        const std::array<DirectionAngles, 2> incident{DirectionAngles::from_broadside(in.theta_i),
                                                      DirectionAngles::from_broadside(in.theta_i + in.delta)};
        const auto config = random_phase_config(
            in.measurements, in.elements,
            monte_carlo_seed(c.master_seed, static_cast<std::uint64_t>(trial), SeedStream::phase));
        const auto op = single_ris_operator(array, config, ReceiverSpec::make(in.r_s), incident, ctx);
        const CVector truth = CVector::Ones(2);
        NoiseSpec noise;
        noise.snr = in.snr;
        noise.seed = monte_carlo_seed(c.master_seed, static_cast<std::uint64_t>(trial), SeedStream::noise);
        noise.reference = c.snr.reference;
        const auto meas = simulate_measurements(op, truth, noise);
        const auto sol = ls_solve(op, meas.values, c.rank_tolerance);

        TrialRow &r = rows[task];
        r.sweep_param = points[i].param;
        r.sweep_value = points[i].value;
        r.trial = trial;
        r.rel_error = relative_error(sol.estimate, truth);
        r.bound = bounds[i];
        fill_spectrum(r, sol.spectrum);
    });
    out.rows = std::move(rows);
    return out;
}

ExperimentResult run_rank_sweep(const ScenarioConfig &cfg, const RunOptions &options)
{
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::rank_sweep);
    out.provenance = make_provenance(cfg);
    const auto labels = strategy_labels(cfg.landmarks.labels);
    std::vector<CartesianPoint> points;
    for (const auto &p : sweep_points(cfg, "T_k", cfg.ris.measurements)) {
        CartesianPoint cp;
        cp.point = p;
        cp.config = cfg;
        if (p.param == "T_k")
            cp.config.ris.measurements = static_cast<int>(p.value);
        else if (p.param == "N_k")
            cp.config.ris.elements = static_cast<int>(p.value);
        else
            throw std::invalid_argument("unrecognised rank sweep parameter " + p.param);
        cp.labels = labels;
        cp.elements.assign(labels.size(), cp.config.ris.elements);
        cp.measurements.assign(labels.size(), cp.config.ris.measurements);
        cp.spectrum_tag = tag_for(p.param, p.value);
        points.push_back(std::move(cp));
    }
    run_cartesian_points(points, options, out);

    AuxTable bounds{"rank_bounds.csv", {"sweep_param", "sweep_value", "rank_upper_bound"}, {}};
    for (const auto &p : points) {
        const int m = p.config.roi.cells_x * p.config.roi.cells_y;
        const auto topo = cfg.mode == OperatorMode::summed ? ReceiverTopology::shared : ReceiverTopology::dedicated;
        bounds.rows.push_back({p.point.param, format_number(p.point.value),
                               std::to_string(rank_upper_bound(topo, m, p.measurements, p.elements))});
    }
    out.tables.push_back(std::move(bounds));
    return out;
}

ExperimentResult run_topology_study(const ScenarioConfig &cfg, const RunOptions &options)
{
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::topology);
    out.provenance = make_provenance(cfg);
    std::vector<CartesianPoint> points;
    AuxTable table{"strategies.csv", {"index", "name", "landmarks", "elements", "measurements"}, {}};
    for (std::size_t s = 0; s < cfg.topology.strategies.size(); ++s) {
        const auto &st = cfg.topology.strategies[s];
        CartesianPoint cp;
        cp.point = {"strategy", static_cast<double>(s + 1)};
        cp.config = cfg;
        cp.labels = strategy_labels(st.labels);
        const int k = static_cast<int>(cp.labels.size());
        cp.elements = even_split(cfg.topology.total_elements, k);
        cp.measurements = even_split(cfg.topology.total_measurements, k);
        cp.spectrum_tag = "strategy_" + st.name;
        std::string el, me;
        for (int j = 0; j < k; ++j) {
            el += (j ? ";" : "") + std::to_string(cp.elements[static_cast<std::size_t>(j)]);
            me += (j ? ";" : "") + std::to_string(cp.measurements[static_cast<std::size_t>(j)]);
        }
        table.rows.push_back({std::to_string(s + 1), st.name, join_labels(cp.labels), el, me});
        points.push_back(std::move(cp));
    }
    run_cartesian_points(points, options, out);
    out.tables.push_back(std::move(table));
    return out;
}

ExperimentResult run_distance_study(const ScenarioConfig &cfg, const RunOptions &options)
{
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::distance);
    out.provenance = make_provenance(cfg);
    const auto labels = strategy_labels(cfg.landmarks.labels);
    const int k = static_cast<int>(labels.size());
    std::vector<CartesianPoint> points;
    for (const auto &p : sweep_points(cfg, "L", cfg.landmarks.distance)) {
        if (p.param != "L")
            throw std::invalid_argument("unrecognised distance sweep parameter " + p.param);
        CartesianPoint cp;
        cp.point = p;
        cp.config = cfg;
        cp.config.landmarks.distance = p.value;
        cp.labels = labels;
        cp.elements = even_split(cfg.topology.total_elements, k);
        cp.measurements = even_split(cfg.topology.total_measurements, k);
        cp.spectrum_tag = tag_for("L", p.value);
        points.push_back(std::move(cp));
    }
    run_cartesian_points(points, options, out);
    return out;
}

ExperimentResult run_doa_study(const ScenarioConfig &cfg, const RunOptions &options)
{
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::doa);
    out.provenance = make_provenance(cfg);
    doa_part(cfg, options, out);
    return out;
}

ExperimentResult run_prototype_study(const ScenarioConfig &cfg, const RunOptions &options)
{
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::prototype);
    out.provenance = make_provenance(cfg);
    doa_part(cfg, options, out);
    localization_part(cfg, options, out);
    return out;
}

ExperimentResult run_spectrum(const ScenarioConfig &cfg, const RunOptions &options)
{
    (void)options;
    ExperimentResult out;
    out.experiment = experiment_name(Experiment::spectrum);
    out.provenance = make_provenance(cfg);
    const auto ctx = cfg.wave();
    const auto labels = strategy_labels(cfg.landmarks.labels);
    const std::vector<int> elements(labels.size(), cfg.ris.elements);
    const std::vector<int> measurements(labels.size(), cfg.ris.measurements);
    const auto panels = landmark_panels(cfg, labels, elements, measurements,
                                        monte_carlo_seed(cfg.master_seed, 0, SeedStream::phase));
    const auto scene = roi_scene(cfg);
    const auto op = cfg.mode == OperatorMode::summed ? multi_ris_summed_operator(panels, scene, ctx)
                                                     : multi_ris_stacked_operator(panels, scene, ctx);
    const auto report = spectrum(op, cfg.rank_tolerance);
    TrialRow row;
    row.sweep_param = "operator";
    row.sweep_value = 0.0;
    fill_spectrum(row, report);
    out.rows.push_back(row);
    out.spectra.push_back({"operator", report.singular_values});
    out.tables.push_back({"rank_bounds.csv",
                          {"rows", "cols", "numeric_rank", "rank_upper_bound", "condition_number_full"},
                          {{std::to_string(op.rows()), std::to_string(op.cols()), std::to_string(report.numeric_rank),
                            std::to_string(rank_upper_bound(op)), format_number(report.condition_number_full)}}});
    return out;
}

ExperimentResult run_experiment(const ScenarioConfig &cfg, const RunOptions &options)
{
    switch (cfg.experiment) {
    case Experiment::bound_sweep:
        return run_bound_sweep(cfg, options);
    case Experiment::rank_sweep:
        return run_rank_sweep(cfg, options);
    case Experiment::topology:
        return run_topology_study(cfg, options);
    case Experiment::distance:
        return run_distance_study(cfg, options);
    case Experiment::prototype:
        return run_prototype_study(cfg, options);
    case Experiment::doa:
        return run_doa_study(cfg, options);
    case Experiment::spectrum:
        return run_spectrum(cfg, options);
    case Experiment::bounds:
        break;
    }
    throw std::invalid_argument("experiment '" + experiment_name(cfg.experiment) + "' produces no result table");
}

std::vector<SummaryRow> ExperimentResult::summary() const
{
    std::vector<SummaryRow> out;
    auto mean_into = [](double &acc, double v, int &count) {
        if (std::isnan(v))
            return;
        acc = count == 0 ? v : acc + v;
        ++count;
    };
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        while (j < rows.size() && rows[j].sweep_param == rows[i].sweep_param &&
               rows[j].sweep_value == rows[i].sweep_value)
            ++j;
        SummaryRow s;
        s.sweep_param = rows[i].sweep_param;
        s.sweep_value = rows[i].sweep_value;
        s.trials = static_cast<int>(j - i);
        int c[6] = {0, 0, 0, 0, 0, 0};
        for (std::size_t k = i; k < j; ++k) {
            mean_into(s.rel_error, rows[k].rel_error, c[0]);
            mean_into(s.ssim, rows[k].ssim, c[1]);
            mean_into(s.bound, rows[k].bound, c[2]);
            mean_into(s.rank, rows[k].rank, c[3]);
            mean_into(s.cond_number, rows[k].cond_number, c[4]);
            mean_into(s.sigma_min, rows[k].sigma_min, c[5]);
        }
        double *fields[6] = {&s.rel_error, &s.ssim, &s.bound, &s.rank, &s.cond_number, &s.sigma_min};
        for (int f = 0; f < 6; ++f)
            if (c[f] > 0)
                *fields[f] /= c[f];
        out.push_back(s);
        i = j;
    }
    return out;
}

} // namespace rissense
