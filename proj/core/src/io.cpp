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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "rissense/experiments.hpp"

namespace rissense {

namespace fs = std::filesystem;

namespace {

const char *kColumns = "sweep_param,sweep_value,trial,rel_error,ssim,bound,rank,cond_number,sigma_min";

std::ofstream open_for_write(const fs::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_csv_line(std::ostream &out, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
        out << (i ? "," : "") << fields[i];
    out << '\n';
}

} // namespace

std::string format_number(double value)
{
    if (std::isnan(value))
        return {};
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_outputs(const ExperimentResult &result, const std::string &directory)
{
    const fs::path dir(directory);
    fs::create_directories(dir);

    {
        auto out = open_for_write(dir / (result.experiment + ".csv"));
        out << kColumns << '\n';
        for (const auto &r : result.rows)
            write_csv_line(out, {r.sweep_param, format_number(r.sweep_value), std::to_string(r.trial),
                                 format_number(r.rel_error), format_number(r.ssim), format_number(r.bound),
                                 format_number(r.rank), format_number(r.cond_number), format_number(r.sigma_min)});
    }
    {
        auto out = open_for_write(dir / "summary.csv");
        out << kColumns << '\n';
        for (const auto &s : result.summary())
            write_csv_line(out, {s.sweep_param, format_number(s.sweep_value), "mean", format_number(s.rel_error),
                                 format_number(s.ssim), format_number(s.bound), format_number(s.rank),
                                 format_number(s.cond_number), format_number(s.sigma_min)});
    }
    for (const auto &spec : result.spectra) {
        auto out = open_for_write(dir / ("spectrum_" + spec.tag + ".csv"));
        out << "index,sigma\n";
        for (Eigen::Index i = 0; i < spec.singular_values.size(); ++i)
            out << i << ',' << format_number(spec.singular_values(i)) << '\n';
    }
    for (const auto &table : result.tables) {
        auto out = open_for_write(dir / table.filename);
        write_csv_line(out, table.header);
        for (const auto &row : table.rows)
            write_csv_line(out, row);
    }
    {
        nlohmann::json p;
        p["experiment"] = result.provenance.experiment;
        p["config_hash"] = result.provenance.config_hash;
        p["master_seed"] = result.provenance.master_seed;
        p["tool_version"] = result.provenance.tool_version;
        auto out = open_for_write(dir / "provenance.json");
        out << p.dump(2) << '\n';
    }
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &fn)
{
    std::size_t workers = threads <= 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : static_cast<std::size_t>(threads);
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(count);
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace rissense
