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

#include "rissense/forward.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "rissense/random.hpp"
#include "rissense/spectral.hpp"

namespace rissense {

namespace {

// S * B for a real sign matrix S, done as two real products.
CMatrix sign_times(const RMatrix &signs, const CMatrix &b)
{
    const RMatrix re = signs * b.real();
    const RMatrix im = signs * b.imag();
    CMatrix out(re.rows(), re.cols());
    out.real() = re;
    out.imag() = im;
    return out;
}

void check_panel(const ElementArray &array, const PhaseConfigMatrix &config, const ReceiverSpec &receiver)
{
    if (config.cols() != array.element_count()) {
        std::ostringstream msg;
        msg << "phase configuration has " << config.cols() << " columns but array '" << array.id() << "' has "
            << array.element_count() << " elements";
        throw std::invalid_argument(msg.str());
    }
    if (!(receiver.distance > 0.0))
        throw std::invalid_argument("receiver distance must be positive");
}

void validate_if_requested(const SensingOperator &op, const AssemblyOptions &options)
{
    if (!options.validate_rank)
        return;
    const auto report = spectrum(op, options.rank_tolerance);
    const int bound = rank_upper_bound(op);
    if (report.numeric_rank > bound) {
        std::ostringstream msg;
        msg << "assembled operator rank " << report.numeric_rank << " exceeds theoretical bound " << bound;
        throw std::logic_error(msg.str());
    }
}

std::string seeds_provenance(const char *mode, std::span<const Panel> panels)
{
    std::ostringstream out;
    out << "mode=" << mode << ";seeds=";
    for (std::size_t k = 0; k < panels.size(); ++k)
        out << (k ? "," : "") << panels[k].config.seed();
    return out.str();
}

} // namespace

ReceiverSpec ReceiverSpec::make(double distance, DirectionAngles angles)
{
    if (!(distance > 0.0) || !std::isfinite(distance))
        throw std::invalid_argument("receiver distance must be positive");
    return {distance, DirectionAngles::make(angles.theta, angles.phi)};
}

Vec3 receiver_world_position(const ElementArray &array, const ReceiverSpec &receiver)
{
    const Vec3 local = receiver.distance * unit_direction(receiver.angles);
    return array.pose().to_world(local);
}

SceneGrid SceneGrid::angular_line(std::vector<double> signed_angles, CVector amplitudes,
                                  std::optional<std::vector<double>> ranges)
{
    if (signed_angles.empty())
        throw std::invalid_argument("angular scene needs at least one cell");
    for (std::size_t i = 0; i < signed_angles.size(); ++i) {
        if (!std::isfinite(signed_angles[i]))
            throw std::invalid_argument("angular cells must be finite");
        if (i > 0 && !(signed_angles[i] > signed_angles[i - 1]))
            throw std::invalid_argument("angular cells must be strictly increasing");
    }
    const auto count = static_cast<Eigen::Index>(signed_angles.size());
    if (amplitudes.size() == 0)
        amplitudes = CVector::Zero(count);
    if (amplitudes.size() != count)
        throw std::invalid_argument("amplitude count does not match angular cell count");
    if (ranges) {
        if (ranges->size() != signed_angles.size())
            throw std::invalid_argument("range count does not match angular cell count");
        for (double r : *ranges)
            if (!(r > 0.0))
                throw std::invalid_argument("angular cell ranges must be positive");
    }
    SceneGrid g;
    g.kind_ = SceneKind::angular;
    g.angles_ = std::move(signed_angles);
    g.ranges_ = std::move(ranges);
    g.amplitudes_ = std::move(amplitudes);
    return g;
}

SceneGrid SceneGrid::cartesian(std::vector<CartesianCell> cells, CVector amplitudes)
{
    if (cells.empty())
        throw std::invalid_argument("cartesian scene needs at least one cell");
    const auto count = static_cast<Eigen::Index>(cells.size());
    if (amplitudes.size() == 0)
        amplitudes = CVector::Zero(count);
    if (amplitudes.size() != count)
        throw std::invalid_argument("amplitude count does not match cartesian cell count");
    const Vec3 extent = cells.front().extent;
    for (const auto &c : cells) {
        if ((c.extent - extent).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + extent.norm()))
            throw std::invalid_argument("cartesian cells must be uniform voxels");
        if (!std::isfinite(c.center.norm()))
            throw std::invalid_argument("cartesian cell centres must be finite");
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            const Vec3 gap = (cells[i].center - cells[j].center).cwiseAbs();
            bool separated = false;
            for (int a = 0; a < 3 && !separated; ++a) {
                const double need = extent(a) > 0.0 ? extent(a) * (1.0 - 1e-9) : 1e-12;
                separated = gap(a) >= need;
            }
            if (!separated)
                throw std::invalid_argument("cartesian cells overlap");
        }
    SceneGrid g;
    g.kind_ = SceneKind::cartesian;
    g.cells_ = std::move(cells);
    g.amplitudes_ = std::move(amplitudes);
    return g;
}

SceneGrid SceneGrid::uniform_plane(const Vec3 &center, double extent_x, double extent_y, int nx, int ny,
                                   CVector amplitudes)
{
    if (nx < 1 || ny < 1 || !(extent_x > 0.0) || !(extent_y > 0.0))
        throw std::invalid_argument("plane grid needs positive extents and cell counts");
    const double hx = extent_x / nx;
    const double hy = extent_y / ny;
    std::vector<CartesianCell> cells;
    cells.reserve(static_cast<std::size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            const Vec3 c(center.x() - 0.5 * extent_x + hx * (ix + 0.5), center.y() - 0.5 * extent_y + hy * (iy + 0.5),
                         center.z());
            cells.push_back({c, Vec3(hx, hy, 0.0)});
        }
    auto g = cartesian(std::move(cells), std::move(amplitudes));
    g.nx_ = nx;
    g.ny_ = ny;
    return g;
}

SceneGrid SceneGrid::with_amplitudes(CVector amplitudes) const
{
    if (amplitudes.size() != amplitudes_.size())
        throw std::invalid_argument("amplitude count does not match scene cell count");
    SceneGrid g = *this;
    g.amplitudes_ = std::move(amplitudes);
    return g;
}

std::vector<DirectionAngles> SceneGrid::directions() const
{
    if (kind_ != SceneKind::angular)
        throw std::invalid_argument("directions are defined for angular scenes only");
    std::vector<DirectionAngles> out;
    out.reserve(angles_.size());
    for (double a : angles_)
        out.push_back(DirectionAngles::from_broadside(a));
    return out;
}

int SceneGrid::nearest_cell(const Vec3 &point) const
{
    if (kind_ != SceneKind::cartesian)
        throw std::invalid_argument("nearest_cell requires a cartesian scene");
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < cells_.size(); ++m) {
        const double d = (cells_[m].center - point).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(m);
        }
    }
    return best;
}

SensingOperator single_ris_operator(const ElementArray &array, const PhaseConfigMatrix &config,
                                    const ReceiverSpec &receiver, std::span<const DirectionAngles> incident,
                                    const WaveContext &ctx, const AssemblyOptions &options)
{
    check_panel(array, config, receiver);
    const CMatrix incident_phases = incident_phase_matrix(array, incident, ctx);
    const CVector scattered = steering_vector(array, receiver.angles, ctx);
    const cdouble scale = array.tau() * path_loss(receiver.distance, ctx);
    const CMatrix weighted = scattered.asDiagonal() * incident_phases;

    SensingOperator op;
    op.matrix = scale * sign_times(config.signs(), weighted);
    op.mode = OperatorMode::single;
    op.blocks.push_back({config.rows(), array.element_count(), array.id()});
    op.provenance = "mode=single;seeds=" + std::to_string(config.seed());
    validate_if_requested(op, options);
    return op;
}

CVector incident_attenuation(const SceneGrid &scene, const Vec3 &ris_origin, const WaveContext &ctx)
{
    CVector out(scene.size());
    if (scene.kind() == SceneKind::cartesian) {
        const auto &cells = scene.cells();
        for (int m = 0; m < scene.size(); ++m) {
            const double r = (cells[static_cast<std::size_t>(m)].center - ris_origin).norm();
            if (!(r > 0.0))
                throw std::invalid_argument("scene cell " + std::to_string(m) + " coincides with the RIS origin");
            out(m) = path_loss(r, ctx);
        }
        return out;
    }
    if (!scene.ranges())
        throw std::invalid_argument("angular scene has no per-cell ranges");
    for (int m = 0; m < scene.size(); ++m)
        out(m) = path_loss((*scene.ranges())[static_cast<std::size_t>(m)], ctx);
    return out;
}

CMatrix panel_block(const Panel &panel, const SceneGrid &scene, const WaveContext &ctx)
{
    if (scene.kind() != SceneKind::cartesian)
        throw std::invalid_argument("multi-RIS assembly requires a cartesian scene");
    const ElementArray &array = panel.array;
    check_panel(array, panel.config, panel.receiver);
    const Vec3 origin = array.reference_point();
    const auto &cells = scene.cells();
    CMatrix incident(array.element_count(), scene.size());
    for (int m = 0; m < scene.size(); ++m) {
        const Vec3 dv = cells[static_cast<std::size_t>(m)].center - origin;
        const double r = dv.norm();
        if (!(r > 0.0))
            throw std::invalid_argument("scene cell " + std::to_string(m) + " coincides with panel '" + array.id() + "'");
        const Vec3 local = array.pose().direction_to_local(dv / r);
        incident.col(m) = steering_vector(array, local, ctx) * path_loss(r, ctx);
    }
    const CVector scattered = steering_vector(array, panel.receiver.angles, ctx);
    const cdouble scale = array.tau() * path_loss(panel.receiver.distance, ctx);
    return scale * sign_times(panel.config.signs(), scattered.asDiagonal() * incident);
}

SensingOperator multi_ris_stacked_operator(std::span<const Panel> panels, const SceneGrid &scene,
                                           const WaveContext &ctx, const AssemblyOptions &options)
{
    if (panels.empty())
        throw std::invalid_argument("panel list is empty");
    Eigen::Index total = 0;
    for (const auto &p : panels)
        total += p.config.rows();
    SensingOperator op;
    op.matrix.resize(total, scene.size());
    Eigen::Index row = 0;
    for (const auto &p : panels) {
        op.matrix.middleRows(row, p.config.rows()) = panel_block(p, scene, ctx);
        row += p.config.rows();
        op.blocks.push_back({p.config.rows(), p.array.element_count(), p.array.id()});
    }
    op.mode = OperatorMode::stacked;
    op.provenance = seeds_provenance("stacked", panels);
    validate_if_requested(op, options);
    return op;
}

SensingOperator multi_ris_summed_operator(std::span<const Panel> panels, const SceneGrid &scene,
                                          const WaveContext &ctx, const AssemblyOptions &options)
{
    if (panels.empty())
        throw std::invalid_argument("panel list is empty");
    const int rows = panels.front().config.rows();
    for (const auto &p : panels)
        if (p.config.rows() != rows)
            throw std::invalid_argument("summed mode requires the same measurement count on every panel");
    SensingOperator op;
    op.matrix = CMatrix::Zero(rows, scene.size());
    for (const auto &p : panels) {
        op.matrix += panel_block(p, scene, ctx);
        op.blocks.push_back({rows, p.array.element_count(), p.array.id()});
    }
    op.mode = OperatorMode::summed;
    op.provenance = seeds_provenance("summed", panels);
    validate_if_requested(op, options);
    return op;
}

MeasurementSet simulate_measurements(const SensingOperator &op, const CVector &amplitudes, const NoiseSpec &noise)
{
    if (amplitudes.size() != op.cols())
        throw std::invalid_argument("amplitude vector length does not match operator columns");
    if (std::isnan(noise.snr) || !(noise.snr > 0.0))
        throw std::invalid_argument("snr must be positive");
    MeasurementSet out;
    out.values = op.matrix * amplitudes;
    out.snr = noise.snr;
    out.noise_seed = noise.seed;

    if (noise.sigma2_override) {
        if (!(*noise.sigma2_override >= 0.0))
            throw std::invalid_argument("sigma2 override must be nonnegative");
        out.sigma2 = *noise.sigma2_override;
    } else if (std::isinf(noise.snr)) {
        out.sigma2 = 0.0;
    } else {
        const double energy = noise.reference == NoiseReference::field
                                  ? amplitudes.squaredNorm()
                                  : out.values.squaredNorm() / static_cast<double>(op.rows());
        if (!(energy > 0.0))
            throw std::invalid_argument("signal energy is zero; supply sigma2_override");
        out.sigma2 = energy / noise.snr;
    }
    if (out.sigma2 > 0.0) {
        Rng rng(noise.seed);
        for (Eigen::Index t = 0; t < out.values.size(); ++t)
            out.values(t) += rng.complex_normal(out.sigma2);
    }
    return out;
}

MeasurementSet simulate_measurements(const SensingOperator &op, const SceneGrid &scene, const NoiseSpec &noise)
{
    return simulate_measurements(op, scene.amplitudes(), noise);
}

cdouble exact_field_oracle(std::span<const PointSource> sources, const ElementArray &array,
                           std::span<const double> config_row, const Vec3 &receiver_world, const WaveContext &ctx)
{
    if (config_row.size() != static_cast<std::size_t>(array.element_count()))
        throw std::invalid_argument("configuration row length does not match element count");
    const auto elements = array.world_positions();
    cdouble total{0.0, 0.0};
    for (std::size_t n = 0; n < elements.size(); ++n) {
        const double rs = (receiver_world - elements[n]).norm();
        if (!(rs > 0.0))
            throw std::invalid_argument("receiver coincides with an element");
        cdouble incident{0.0, 0.0};
        for (const auto &src : sources) {
            const double ri = (src.position - elements[n]).norm();
            if (!(ri > 0.0))
                throw std::invalid_argument("source coincides with an element");
            incident += src.amplitude * path_loss(ri, ctx);
        }
        total += array.tau() * std::polar(1.0, config_row[n]) * incident * path_loss(rs, ctx);
    }
    return total;
}

} // namespace rissense
