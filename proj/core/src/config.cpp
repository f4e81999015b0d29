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
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rissense/scenario.hpp"

namespace rissense {

using nlohmann::json;

namespace {

const std::vector<std::string> kLabels{"A", "B", "C", "D", "E", "F", "G", "H"};

std::string join(const std::string &prefix, const std::string &key) { return prefix.empty() ? key : prefix + "." + key; }

std::vector<std::string> sweep_parameters(Experiment e)
{
    switch (e) {
    case Experiment::bound_sweep:
        return {"N", "T", "d", "delta_cr", "theta_i", "cos_theta_i", "snr"};
    case Experiment::rank_sweep:
        return {"T_k", "N_k"};
    case Experiment::distance:
        return {"L"};
    default:
        return {};
    }
}

// Collects errors while walking the document; every accessor reports and carries on.
class Reader {
public:
    explicit Reader(std::vector<ConfigError> &errors) : errors_(errors) {}

    void fail(const std::string &key, const std::string &message) { errors_.push_back({key, message}); }

    // Returns false when `node` is not an object. Reports keys outside `allowed`.
    bool object(const json &node, const std::string &path, const std::vector<std::string> &allowed)
    {
        if (!node.is_object()) {
            fail(path.empty() ? "<root>" : path, "expected an object");
            return false;
        }
        for (const auto &item : node.items())
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                fail(join(path, item.key()), "unknown key");
        return true;
    }

    void number(const json &obj, const std::string &key, const std::string &path, double &out,
                const std::function<bool(double)> &valid, const char *requirement)
    {
        if (!obj.contains(key))
            return;
        const auto &v = obj.at(key);
        const auto full = join(path, key);
        if (!v.is_number()) {
            fail(full, "expected a number");
            return;
        }
        const double x = v.get<double>();
        if (!std::isfinite(x) || !valid(x)) {
            fail(full, requirement);
            return;
        }
        out = x;
    }

    void integer(const json &obj, const std::string &key, const std::string &path, int &out, int minimum)
    {
        if (!obj.contains(key))
            return;
        const auto &v = obj.at(key);
        const auto full = join(path, key);
        if (!v.is_number_integer()) {
            fail(full, "expected an integer");
            return;
        }
        const auto x = v.get<long long>();
        if (x < minimum || x > 1'000'000'000) {
            fail(full, "must be an integer >= " + std::to_string(minimum));
            return;
        }
        out = static_cast<int>(x);
    }

    void boolean(const json &obj, const std::string &key, const std::string &path, bool &out)
    {
        if (!obj.contains(key))
            return;
        if (!obj.at(key).is_boolean()) {
            fail(join(path, key), "expected true or false");
            return;
        }
        out = obj.at(key).get<bool>();
    }

    template <class T>
    void choice(const json &obj, const std::string &key, const std::string &path, T &out,
                const std::vector<std::pair<std::string, T>> &options)
    {
        if (!obj.contains(key))
            return;
        const auto &v = obj.at(key);
        const auto full = join(path, key);
        std::string allowed;
        for (const auto &o : options)
            allowed += (allowed.empty() ? "" : "|") + o.first;
        if (!v.is_string()) {
            fail(full, "expected one of " + allowed);
            return;
        }
        for (const auto &o : options)
            if (o.first == v.get<std::string>()) {
                out = o.second;
                return;
            }
        fail(full, "expected one of " + allowed);
    }

    bool numbers(const json &obj, const std::string &key, const std::string &path, std::vector<double> &out,
                 std::size_t exact_size)
    {
        if (!obj.contains(key))
            return false;
        const auto &v = obj.at(key);
        const auto full = join(path, key);
        if (!v.is_array() || (exact_size && v.size() != exact_size) || v.empty()) {
            fail(full, exact_size ? "expected an array of " + std::to_string(exact_size) + " numbers"
                                  : "expected a nonempty array of numbers");
            return false;
        }
        std::vector<double> tmp;
        for (const auto &x : v) {
            if (!x.is_number() || !std::isfinite(x.get<double>())) {
                fail(full, "array entries must be finite numbers");
                return false;
            }
            tmp.push_back(x.get<double>());
        }
        out = std::move(tmp);
        return true;
    }

    bool labels(const json &obj, const std::string &key, const std::string &path, std::vector<std::string> &out)
    {
        if (!obj.contains(key))
            return false;
        const auto &v = obj.at(key);
        const auto full = join(path, key);
        if (!v.is_array() || v.empty()) {
            fail(full, "expected a nonempty array of landmark labels A..H");
            return false;
        }
        std::vector<std::string> tmp;
        for (const auto &x : v) {
            if (!x.is_string() || std::find(kLabels.begin(), kLabels.end(), x.get<std::string>()) == kLabels.end()) {
                fail(full, "landmark labels must be among A..H");
                return false;
            }
            tmp.push_back(x.get<std::string>());
        }
        if (std::set<std::string>(tmp.begin(), tmp.end()).size() != tmp.size()) {
            fail(full, "landmark labels must be distinct");
            return false;
        }
        std::sort(tmp.begin(), tmp.end());
        out = std::move(tmp);
        return true;
    }

private:
    std::vector<ConfigError> &errors_;
};

const auto positive = [](double x) { return x > 0.0; };
const auto nonnegative = [](double x) { return x >= 0.0; };
const auto any = [](double) { return true; };

void read_receiver(Reader &r, const json &obj, const std::string &path, ReceiverConfig &out)
{
    if (!r.object(obj, path, {"distance_m", "theta_deg"}))
        return;
    r.number(obj, "distance_m", path, out.distance, positive, "must be positive");
    r.number(obj, "theta_deg", path, out.theta_deg, [](double x) { return std::abs(x) < 90.0; },
             "must lie strictly between -90 and 90 degrees");
}

void read_tau(Reader &r, const json &obj, const std::string &path, std::optional<cdouble> &out)
{
    if (!obj.contains("tau"))
        return;
    const auto &v = obj.at("tau");
    const auto full = join(path, "tau");
    if (v.is_null()) {
        out.reset();
    } else if (v.is_number()) {
        out = cdouble(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        out = cdouble(v[0].get<double>(), v[1].get<double>());
    } else {
        r.fail(full, "expected null, a number or [real, imag]");
        return;
    }
    if (out && (!std::isfinite(std::abs(*out)) || std::abs(*out) == 0.0)) {
        r.fail(full, "must be finite and nonzero");
        out.reset();
    }
}

void read_snr(Reader &r, const json &root, SnrConfig &out)
{
    if (!root.contains("snr"))
        return;
    const auto &v = root.at("snr");
    auto parse_value = [&](const json &x, const std::string &key) {
        if (x.is_string() && (x.get<std::string>() == "inf" || x.get<std::string>() == "infinity")) {
            out.value = std::numeric_limits<double>::infinity();
        } else if (x.is_number() && std::isfinite(x.get<double>())) {
            out.value = x.get<double>();
        } else {
            r.fail(key, "expected a number or \"inf\"");
        }
    };
    if (!v.is_object()) {
        parse_value(v, "snr");
    } else if (r.object(v, "snr", {"value", "unit", "reference"})) {
        if (v.contains("value"))
            parse_value(v.at("value"), "snr.value");
        r.choice<SnrUnit>(v, "unit", "snr", out.unit, {{"linear", SnrUnit::linear}, {"db", SnrUnit::db}});
        r.choice<NoiseReference>(v, "reference", "snr", out.reference,
                                 {{"field", NoiseReference::field}, {"measurement", NoiseReference::measurement}});
    }
    if (out.unit == SnrUnit::linear && !(out.value > 0.0))
        r.fail(v.is_object() ? "snr.value" : "snr", "linear SNR must be positive");
}

void read_document(Reader &r, const json &root, Experiment experiment, ScenarioConfig &cfg)
{
    if (!r.object(root, "",
                  {"experiment", "wave", "roi", "landmarks", "ris", "mode", "snr", "trials", "master_seed",
                   "rank_tolerance", "sweep", "bound", "topology", "prototype", "ground_truth", "phaseless"}))
        return;

    if (root.contains("experiment")) {
        const auto &v = root.at("experiment");
        if (!v.is_string() || !experiment_from_name(v.get<std::string>()))
            r.fail("experiment", "unknown experiment name");
        else if (*experiment_from_name(v.get<std::string>()) != experiment)
            r.fail("experiment", "config is for '" + v.get<std::string>() + "' but '" + experiment_name(experiment) +
                                     "' was requested");
    }

    if (root.contains("wave") && r.object(root.at("wave"), "wave", {"frequency_hz"}))
        r.number(root.at("wave"), "frequency_hz", "wave", cfg.frequency_hz, positive, "must be positive");

    if (root.contains("roi") && r.object(root.at("roi"), "roi", {"extent_m", "cells", "center_m"})) {
        const auto &o = root.at("roi");
        std::vector<double> v;
        if (r.numbers(o, "extent_m", "roi", v, 2)) {
            if (v[0] > 0.0 && v[1] > 0.0) {
                cfg.roi.extent_x = v[0];
                cfg.roi.extent_y = v[1];
            } else {
                r.fail("roi.extent_m", "extents must be positive");
            }
        }
        if (r.numbers(o, "cells", "roi", v, 2)) {
            if (v[0] >= 1 && v[1] >= 1 && v[0] == std::floor(v[0]) && v[1] == std::floor(v[1]) && v[0] * v[1] <= 1e5) {
                cfg.roi.cells_x = static_cast<int>(v[0]);
                cfg.roi.cells_y = static_cast<int>(v[1]);
            } else {
                r.fail("roi.cells", "cell counts must be positive integers");
            }
        }
        if (r.numbers(o, "center_m", "roi", v, 3))
            cfg.roi.center = Vec3(v[0], v[1], v[2]);
    }

    if (root.contains("landmarks") &&
        r.object(root.at("landmarks"), "landmarks", {"distance_m", "start_bearing_deg", "step_deg", "labels"})) {
        const auto &o = root.at("landmarks");
        r.number(o, "distance_m", "landmarks", cfg.landmarks.distance, positive, "must be positive");
        r.number(o, "start_bearing_deg", "landmarks", cfg.landmarks.start_bearing_deg, any, "must be finite");
        r.number(o, "step_deg", "landmarks", cfg.landmarks.step_deg, [](double x) { return x > 0.0 && x <= 45.0; },
                 "must lie in (0, 45] degrees");
        r.labels(o, "labels", "landmarks", cfg.landmarks.labels);
    }

    if (root.contains("ris") &&
        r.object(root.at("ris"), "ris", {"elements", "measurements", "spacing_m", "tau", "receiver"})) {
        const auto &o = root.at("ris");
        r.integer(o, "elements", "ris", cfg.ris.elements, 1);
        r.integer(o, "measurements", "ris", cfg.ris.measurements, 1);
        r.number(o, "spacing_m", "ris", cfg.ris.spacing, positive, "must be positive");
        read_tau(r, o, "ris", cfg.ris.tau);
        if (o.contains("receiver"))
            read_receiver(r, o.at("receiver"), "ris.receiver", cfg.ris.receiver);
    }

    r.choice<OperatorMode>(root, "mode", "", cfg.mode,
                           {{"stacked", OperatorMode::stacked}, {"summed", OperatorMode::summed}});
    read_snr(r, root, cfg.snr);
    r.integer(root, "trials", "", cfg.trials, 1);

    if (root.contains("master_seed")) {
        const auto &v = root.at("master_seed");
        if (v.is_number_unsigned())
            cfg.master_seed = v.get<std::uint64_t>();
        else if (v.is_number_integer() && v.get<long long>() >= 0)
            cfg.master_seed = static_cast<std::uint64_t>(v.get<long long>());
        else
            r.fail("master_seed", "expected a nonnegative integer");
    }
    r.number(root, "rank_tolerance", "", cfg.rank_tolerance, [](double x) { return x > 0.0 && x < 1.0; },
             "must lie in (0, 1)");

    if (root.contains("sweep")) {
        const auto &o = root.at("sweep");
        if (o.is_null()) {
            cfg.sweep.reset();
        } else if (r.object(o, "sweep", {"parameter", "values"})) {
            SweepConfig s = cfg.sweep.value_or(SweepConfig{});
            const auto allowed = sweep_parameters(experiment);
            if (o.contains("parameter")) {
                const auto &p = o.at("parameter");
                if (!p.is_string() || std::find(allowed.begin(), allowed.end(), p.get<std::string>()) == allowed.end()) {
                    std::string list;
                    for (const auto &a : allowed)
                        list += (list.empty() ? "" : "|") + a;
                    r.fail("sweep.parameter", allowed.empty() ? "experiment '" + experiment_name(experiment) +
                                                                    "' does not support sweeps"
                                                              : "expected one of " + list);
                } else {
                    s.parameter = p.get<std::string>();
                }
            }
            r.numbers(o, "values", "sweep", s.values, 0);
            cfg.sweep = s;
        }
    }

    if (root.contains("bound") && r.object(root.at("bound"), "bound",
                                           {"elements", "measurements", "spacing_m", "theta_i_deg", "delta_cr_m",
                                            "r_i_m", "r_s_m"})) {
        const auto &o = root.at("bound");
        r.integer(o, "elements", "bound", cfg.bound.elements, 1);
        r.integer(o, "measurements", "bound", cfg.bound.measurements, 1);
        r.number(o, "spacing_m", "bound", cfg.bound.spacing, positive, "must be positive");
        r.number(o, "theta_i_deg", "bound", cfg.bound.theta_i_deg, [](double x) { return std::abs(x) < 90.0; },
                 "must lie strictly between -90 and 90 degrees");
        r.number(o, "delta_cr_m", "bound", cfg.bound.delta_cr, [](double x) { return x != 0.0; }, "must be nonzero");
        r.number(o, "r_i_m", "bound", cfg.bound.r_i, positive, "must be positive");
        r.number(o, "r_s_m", "bound", cfg.bound.r_s, positive, "must be positive");
    }

    if (root.contains("topology") &&
        r.object(root.at("topology"), "topology", {"total_elements", "total_measurements", "strategies"})) {
        const auto &o = root.at("topology");
        r.integer(o, "total_elements", "topology", cfg.topology.total_elements, 1);
        r.integer(o, "total_measurements", "topology", cfg.topology.total_measurements, 1);
        if (o.contains("strategies")) {
            const auto &s = o.at("strategies");
            if (!s.is_array() || s.empty()) {
                r.fail("topology.strategies", "expected a nonempty array of {name, labels}");
            } else {
                std::vector<Strategy> list;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const auto path = "topology.strategies[" + std::to_string(i) + "]";
                    Strategy st;
                    if (!r.object(s[i], path, {"name", "labels"}))
                        continue;
                    if (!s[i].contains("name") || !s[i].at("name").is_string())
                        r.fail(path + ".name", "expected a string");
                    else
                        st.name = s[i].at("name").get<std::string>();
                    if (!r.labels(s[i], "labels", path, st.labels))
                        if (!s[i].contains("labels"))
                            r.fail(path + ".labels", "missing landmark labels");
                    list.push_back(st);
                }
                cfg.topology.strategies = list;
            }
        }
    }

    if (root.contains("prototype") &&
        r.object(root.at("prototype"), "prototype",
                 {"elements", "measurements", "spacing_m", "separation_m", "source_m", "doa_truth_deg", "receiver",
                  "doa_grid"})) {
        const auto &o = root.at("prototype");
        auto &p = cfg.prototype;
        r.integer(o, "elements", "prototype", p.elements, 1);
        r.integer(o, "measurements", "prototype", p.measurements, 1);
        r.number(o, "spacing_m", "prototype", p.spacing, positive, "must be positive");
        r.number(o, "separation_m", "prototype", p.separation, positive, "must be positive");
        std::vector<double> v;
        if (r.numbers(o, "source_m", "prototype", v, 2))
            p.source_xy = {v[0], v[1]};
        if (r.numbers(o, "doa_truth_deg", "prototype", v, 2)) {
            if (std::abs(v[0]) < 90.0 && std::abs(v[1]) < 90.0)
                p.doa_truth_deg = {v[0], v[1]};
            else
                r.fail("prototype.doa_truth_deg", "angles must lie strictly between -90 and 90 degrees");
        }
        if (o.contains("receiver"))
            read_receiver(r, o.at("receiver"), "prototype.receiver", p.receiver);
        if (o.contains("doa_grid") &&
            r.object(o.at("doa_grid"), "prototype.doa_grid", {"min_deg", "max_deg", "step_deg"})) {
            const auto &g = o.at("doa_grid");
            r.number(g, "min_deg", "prototype.doa_grid", p.doa_grid.min_deg, [](double x) { return x > -90.0; },
                     "must exceed -90 degrees");
            r.number(g, "max_deg", "prototype.doa_grid", p.doa_grid.max_deg, [](double x) { return x < 90.0; },
                     "must be below 90 degrees");
            r.number(g, "step_deg", "prototype.doa_grid", p.doa_grid.step_deg, positive, "must be positive");
        }
    }

    if (root.contains("ground_truth") && r.object(root.at("ground_truth"), "ground_truth", {"pattern", "cell"})) {
        const auto &o = root.at("ground_truth");
        r.choice<GroundTruthPattern>(o, "pattern", "ground_truth", cfg.ground_truth.pattern,
                                     {{"blocks", GroundTruthPattern::blocks}, {"point", GroundTruthPattern::point}});
        r.integer(o, "cell", "ground_truth", cfg.ground_truth.cell, 0);
    }

    if (root.contains("phaseless") &&
        r.object(root.at("phaseless"), "phaseless",
                 {"max_iterations", "step_size", "reweight_epsilon", "init", "stop_tolerance", "normalize_columns"})) {
        const auto &o = root.at("phaseless");
        auto &p = cfg.phaseless;
        r.integer(o, "max_iterations", "phaseless", p.max_iterations, 1);
        if (o.contains("step_size")) {
            if (o.at("step_size").is_null()) {
                p.step_size.reset();
            } else {
                double s = 0.0;
                r.number(o, "step_size", "phaseless", s, positive, "must be positive or null");
                if (s > 0.0)
                    p.step_size = s;
            }
        }
        r.number(o, "reweight_epsilon", "phaseless", p.reweight_epsilon, nonnegative, "must be nonnegative");
        r.choice<PhaselessInit>(o, "init", "phaseless", p.init,
                                {{"spectral", PhaselessInit::spectral}, {"random", PhaselessInit::random}});
        r.number(o, "stop_tolerance", "phaseless", p.stop_tolerance, positive, "must be positive");
        r.boolean(o, "normalize_columns", "phaseless", p.normalize_columns);
    }
}

void cross_checks(Reader &r, const ScenarioConfig &cfg)
{
    if (cfg.experiment == Experiment::bound_sweep || cfg.experiment == Experiment::bounds) {
        if (cfg.bound.measurements <= cfg.bound.elements)
            r.fail("bound.measurements", "must exceed bound.elements");
    }
    if (cfg.sweep && cfg.sweep->values.empty())
        r.fail("sweep.values", "expected a nonempty array of numbers");
    if (cfg.sweep && cfg.sweep->parameter.empty())
        r.fail("sweep.parameter", "missing sweep parameter");
    if (cfg.experiment == Experiment::topology || cfg.experiment == Experiment::distance) {
        std::size_t widest = cfg.landmarks.labels.size();
        for (const auto &s : cfg.topology.strategies)
            widest = std::max(widest, s.labels.size());
        if (static_cast<std::size_t>(cfg.topology.total_elements) < widest)
            r.fail("topology.total_elements", "must be at least the number of panels");
        if (static_cast<std::size_t>(cfg.topology.total_measurements) < widest)
            r.fail("topology.total_measurements", "must be at least the number of panels");
    }
    if (cfg.mode == OperatorMode::summed && cfg.experiment == Experiment::topology) {
        for (const auto &s : cfg.topology.strategies)
            if (cfg.topology.total_measurements % static_cast<int>(s.labels.size()) != 0) {
                r.fail("mode", "summed mode needs equal measurement counts; total_measurements is not divisible");
                break;
            }
    }
    const auto &g = cfg.prototype.doa_grid;
    if (!(g.max_deg > g.min_deg))
        r.fail("prototype.doa_grid.max_deg", "must exceed min_deg");
    if (cfg.ground_truth.pattern == GroundTruthPattern::point &&
        cfg.ground_truth.cell >= cfg.roi.cells_x * cfg.roi.cells_y)
        r.fail("ground_truth.cell", "cell index outside the RoI grid");
    if (cfg.sweep && cfg.experiment == Experiment::rank_sweep)
        for (double v : cfg.sweep->values)
            if (!(v >= 1.0) || v != std::floor(v)) {
                r.fail("sweep.values", "counts must be positive integers");
                break;
            }
    if (cfg.sweep && cfg.experiment == Experiment::bound_sweep) {
        const auto &p = cfg.sweep->parameter;
        for (double v : cfg.sweep->values) {
            bool ok = true;
            if (p == "N" || p == "T")
                ok = v >= 1.0 && v == std::floor(v);
            else if (p == "cos_theta_i")
                ok = v > 0.0 && v <= 1.0;
            else if (p == "theta_i")
                ok = std::abs(v) < 90.0;
            else if (p == "delta_cr")
                ok = v != 0.0;
            else
                ok = v > 0.0;
            if (!ok) {
                r.fail("sweep.values", "value out of range for parameter " + p);
                break;
            }
            if (p == "N" && v >= cfg.bound.measurements)
                r.fail("sweep.values", "N must stay below bound.measurements");
            if (p == "T" && v <= cfg.bound.elements)
                r.fail("sweep.values", "T must exceed bound.elements");
        }
    }
}

bool apply_override(json &root, const std::string &text, std::vector<ConfigError> &errors)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        errors.push_back({text, "override must look like dotted.key=value"});
        return false;
    }
    const std::string key = text.substr(0, eq);
    const std::string raw = text.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error &) {
        value = raw;
    }
    json *node = &root;
    std::stringstream ss(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.'))
        parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (parts[i].empty()) {
            errors.push_back({key, "empty path component"});
            return false;
        }
        json &next = (*node)[parts[i]];
        if (next.is_null())
            next = json::object();
        if (!next.is_object()) {
            errors.push_back({key, "'" + parts[i] + "' is not an object"});
            return false;
        }
        node = &next;
    }
    if (parts.empty() || parts.back().empty()) {
        errors.push_back({key, "empty path component"});
        return false;
    }
    (*node)[parts.back()] = value;
    return true;
}

json receiver_json(const ReceiverConfig &r) { return {{"distance_m", r.distance}, {"theta_deg", r.theta_deg}}; }

std::string mode_name(OperatorMode m)
{
    switch (m) {
    case OperatorMode::single:
        return "single";
    case OperatorMode::stacked:
        return "stacked";
    default:
        return "summed";
    }
}

} // namespace

std::string experiment_name(Experiment e)
{
    switch (e) {
    case Experiment::bound_sweep:
        return "bound-sweep";
    case Experiment::rank_sweep:
        return "rank-sweep";
    case Experiment::topology:
        return "topology";
    case Experiment::distance:
        return "distance";
    case Experiment::prototype:
        return "prototype";
    case Experiment::spectrum:
        return "spectrum";
    case Experiment::bounds:
        return "bounds";
    case Experiment::doa:
        return "doa";
    }
    return "unknown";
}

std::optional<Experiment> experiment_from_name(const std::string &name)
{
    for (auto e : {Experiment::bound_sweep, Experiment::rank_sweep, Experiment::topology, Experiment::distance,
                   Experiment::prototype, Experiment::spectrum, Experiment::bounds, Experiment::doa})
        if (experiment_name(e) == name)
            return e;
    return std::nullopt;
}

double SnrConfig::linear() const
{
    if (unit == SnrUnit::db)
        return std::isinf(value) ? value : std::pow(10.0, value / 10.0);
    return value;
}

ScenarioConfig defaults_for(Experiment e)
{
    ScenarioConfig c;
    c.experiment = e;
    switch (e) {
    case Experiment::bound_sweep:
    case Experiment::bounds:
        c.frequency_hz = 5.8e9;
        c.snr = {2000.0, SnrUnit::linear, NoiseReference::field};
        c.trials = e == Experiment::bound_sweep ? 500 : 1;
        if (e == Experiment::bound_sweep)
            c.sweep = SweepConfig{"snr", {250, 500, 1000, 2000, 4000, 8000}};
        break;
    case Experiment::rank_sweep:
        c.sweep = SweepConfig{"T_k", {50, 70, 90, 110}};
        break;
    case Experiment::spectrum:
        break;
    case Experiment::topology:
    case Experiment::distance:
        c.snr = {30.0, SnrUnit::linear, NoiseReference::measurement};
        c.trials = 20;
        if (e == Experiment::distance)
            c.sweep = SweepConfig{"L", {10, 15, 20, 25}};
        break;
    case Experiment::prototype:
    case Experiment::doa:
        c.frequency_hz = 5.8e9;
        c.roi = {12.0, 12.0, 12, 12, Vec3(0.0, 6.5, 0.0)};
        c.trials = e == Experiment::prototype ? 20 : 1;
        c.ground_truth.pattern = GroundTruthPattern::point;
        break;
    }
    return c;
}

ConfigResult parse_config(const std::string &json_text, Experiment experiment,
                          const std::vector<std::string> &overrides)
{
    ConfigResult result;
    json root;
    try {
        root = json_text.empty() ? json::object() : json::parse(json_text);
    } catch (const json::parse_error &err) {
        result.errors.push_back({"<file>", std::string("JSON parse error: ") + err.what()});
        return result;
    }
    for (const auto &o : overrides)
        apply_override(root, o, result.errors);

    ScenarioConfig cfg = defaults_for(experiment);
    Reader reader(result.errors);
    read_document(reader, root, experiment, cfg);
    cross_checks(reader, cfg);
    if (result.errors.empty())
        result.config = cfg;
    return result;
}

ConfigResult validate_config(const std::string &path, Experiment experiment, const std::vector<std::string> &overrides)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), experiment, overrides);
}

std::string canonical_json(const ScenarioConfig &c)
{
    json j;
    j["experiment"] = experiment_name(c.experiment);
    j["wave"] = {{"frequency_hz", c.frequency_hz}};
    j["roi"] = {{"extent_m", {c.roi.extent_x, c.roi.extent_y}},
                {"cells", {c.roi.cells_x, c.roi.cells_y}},
                {"center_m", {c.roi.center.x(), c.roi.center.y(), c.roi.center.z()}}};
    j["landmarks"] = {{"distance_m", c.landmarks.distance},
                      {"start_bearing_deg", c.landmarks.start_bearing_deg},
                      {"step_deg", c.landmarks.step_deg},
                      {"labels", c.landmarks.labels}};
    j["ris"] = {{"elements", c.ris.elements},
                {"measurements", c.ris.measurements},
                {"spacing_m", c.ris.spacing},
                {"tau", c.ris.tau ? json{c.ris.tau->real(), c.ris.tau->imag()} : json(nullptr)},
                {"receiver", receiver_json(c.ris.receiver)}};
    j["mode"] = mode_name(c.mode);
    j["snr"] = {{"value", std::isinf(c.snr.value) ? json("inf") : json(c.snr.value)},
                {"unit", c.snr.unit == SnrUnit::db ? "db" : "linear"},
                {"reference", c.snr.reference == NoiseReference::field ? "field" : "measurement"}};
    j["trials"] = c.trials;
    j["master_seed"] = c.master_seed;
    j["rank_tolerance"] = c.rank_tolerance;
    j["sweep"] = c.sweep ? json{{"parameter", c.sweep->parameter}, {"values", c.sweep->values}} : json(nullptr);
    j["bound"] = {{"elements", c.bound.elements},       {"measurements", c.bound.measurements},
                  {"spacing_m", c.bound.spacing},       {"theta_i_deg", c.bound.theta_i_deg},
                  {"delta_cr_m", c.bound.delta_cr},     {"r_i_m", c.bound.r_i},
                  {"r_s_m", c.bound.r_s}};
    json strategies = json::array();
    for (const auto &s : c.topology.strategies)
        strategies.push_back({{"name", s.name}, {"labels", s.labels}});
    j["topology"] = {{"total_elements", c.topology.total_elements},
                     {"total_measurements", c.topology.total_measurements},
                     {"strategies", strategies}};
    const auto &p = c.prototype;
    j["prototype"] = {{"elements", p.elements},
                      {"measurements", p.measurements},
                      {"spacing_m", p.spacing},
                      {"separation_m", p.separation},
                      {"source_m", {p.source_xy[0], p.source_xy[1]}},
                      {"doa_truth_deg", {p.doa_truth_deg[0], p.doa_truth_deg[1]}},
                      {"receiver", receiver_json(p.receiver)},
                      {"doa_grid",
                       {{"min_deg", p.doa_grid.min_deg}, {"max_deg", p.doa_grid.max_deg}, {"step_deg", p.doa_grid.step_deg}}}};
    j["ground_truth"] = {{"pattern", c.ground_truth.pattern == GroundTruthPattern::blocks ? "blocks" : "point"},
                         {"cell", c.ground_truth.cell}};
    const auto &ph = c.phaseless;
    j["phaseless"] = {{"max_iterations", ph.max_iterations},
                      {"step_size", ph.step_size ? json(*ph.step_size) : json(nullptr)},
                      {"reweight_epsilon", ph.reweight_epsilon},
                      {"init", ph.init == PhaselessInit::spectral ? "spectral" : "random"},
                      {"stop_tolerance", ph.stop_tolerance},
                      {"normalize_columns", ph.normalize_columns}};
    return j.dump();
}

std::string config_hash(const ScenarioConfig &config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_json(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace rissense
