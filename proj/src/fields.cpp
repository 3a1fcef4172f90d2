/*
 * Copyright 2026 The Tornado Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tornado/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tornado/parallel.hpp"

namespace tornado {

VectorField::VectorField(GridSpec grid) : grid_(grid) {
    for (auto& c : comp_) c.assign(grid_.size(), 0.0);
}

bool VectorField::all_finite() const {
    for (const auto& c : comp_) {
        for (double x : c) {
            if (!std::isfinite(x)) return false;
        }
    }
    return true;
}

void VectorField::scale(double alpha) {
    for (auto& c : comp_) {
        for (double& x : c) x *= alpha;
    }
}

void VectorField::axpy(double alpha, const VectorField& other) {
    if (!(other.grid_ == grid_)) throw std::invalid_argument("VectorField::axpy: grid mismatch");
    for (std::size_t c = 0; c < 3; ++c) {
        const auto& src = other.comp_[c];
        auto& dst = comp_[c];
        for (std::size_t n = 0; n < dst.size(); ++n) dst[n] += alpha * src[n];
    }
    solenoidal_ = solenoidal_ && other.solenoidal_;
}

void EnergyTrace::push(double t, double energy) {
    push(EnergyRecord{t, energy, std::sqrt(energy)});
}

void EnergyTrace::push(const EnergyRecord& r) {
    if (!std::isfinite(r.t)) throw std::invalid_argument("EnergyTrace: time must be finite");
    if (!records_.empty() && !(r.t > records_.back().t)) {
        throw std::invalid_argument("EnergyTrace: times must be strictly increasing");
    }
    if (!(r.energy >= 0.0) || !std::isfinite(r.energy)) {
        throw std::invalid_argument("EnergyTrace: energy must be finite and non-negative");
    }
    if (!(r.mynorm >= 0.0) ||
        std::abs(r.mynorm * r.mynorm - r.energy) > 1e-12 * std::max(r.energy, 1e-300)) {
        if (!(r.energy == 0.0 && r.mynorm == 0.0)) {
            throw std::invalid_argument("EnergyTrace: mynorm^2 must equal energy");
        }
    }
    records_.push_back(r);
}

Vec3 leray_project_point(const Vec3& k, const Vec3& w) {
    const double kk = norm2(k);
    if (kk == 0.0) return {0.0, 0.0, 0.0};
    const double s = dot(k, w) / kk;
    return {w[0] - s * k[0], w[1] - s * k[1], w[2] - s * k[2]};
}

void leray_project_in_place(VectorField& v) {
    const GridSpec& g = v.grid();
    auto x = v.component(0);
    auto y = v.component(1);
    auto z = v.component(2);
    const auto n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for num_threads(worker_count())
    for (std::ptrdiff_t q = 0; q < n; ++q) {
        const auto idx = static_cast<std::size_t>(q);
        const Vec3 p = leray_project_point(g.wavenumber_at(idx), {x[idx], y[idx], z[idx]});
        x[idx] = p[0];
        y[idx] = p[1];
        z[idx] = p[2];
    }
    v.set_solenoidal(true);
}

VectorField leray_project(const VectorField& v) {
    VectorField out = v;
    leray_project_in_place(out);
    return out;
}

double max_orthogonality_defect(const VectorField& v) {
    const GridSpec& g = v.grid();
    double worst = 0.0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const Vec3 k = g.wavenumber_at(idx);
        const Vec3 w = v.at(idx);
        const double scale = std::sqrt(norm2(k) * norm2(w));
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(dot(k, w)) / scale);
    }
    return worst;
}

double energy(const VectorField& v) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (double x : v.component(c)) sum += x * x;
    }
    return v.grid().cell_volume() * sum;
}

double distance(const VectorField& a, const VectorField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("distance: grid mismatch");
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto x = a.component(c);
        auto y = b.component(c);
        for (std::size_t n = 0; n < x.size(); ++n) {
            const double d = x[n] - y[n];
            sum += d * d;
        }
    }
    return std::sqrt(a.grid().cell_volume() * sum);
}

double boundary_shell_energy(const VectorField& v) {
    const GridSpec& g = v.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const bool side = i == 0 || j == 0 || i + 1 == g.nx() || j + 1 == g.ny();
            for (std::size_t l = 0; l < g.nz(); ++l) {
                if (!side && l != 0 && l + 1 != g.nz()) continue;
                sum += norm2(v.at(g.linear(i, j, l)));
            }
        }
    }
    return g.cell_volume() * sum;
}

std::vector<double> z_marginal(const VectorField& v) {
    const GridSpec& g = v.grid();
    std::vector<double> e(g.nz(), 0.0);
    for (std::size_t i = 0; i < g.nx(); ++i) {
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const std::size_t base = g.linear(i, j, 0);
            for (std::size_t l = 0; l < g.nz(); ++l) e[l] += norm2(v.at(base + l));
        }
    }
    const double w = g.h() * g.h();
    for (double& x : e) x *= w;
    return e;
}

std::vector<Cloud> detect_clouds(std::span<const double> profile, const GridSpec& grid, double R,
                                 int p_max, double width) {
    if (profile.empty()) throw std::invalid_argument("detect_clouds: empty profile");
    if (profile.size() != grid.nz()) {
        throw std::invalid_argument("detect_clouds: profile length does not match grid nz");
    }
    if (!(R > 0.0)) throw std::invalid_argument("detect_clouds: R must be positive");

    double total = 0.0;
    for (double x : profile) total += x;

    std::vector<Cloud> clouds;
    for (int p = 1; p <= p_max; ++p) {
        const double center = p * R;
        const double half = width * std::sqrt(p * R);
        double mass = 0.0;
        double moment = 0.0;
        for (std::size_t l = 0; l < profile.size(); ++l) {
            const double z = grid.origin()[2] + grid.h() * static_cast<double>(l);
            if (std::abs(z - center) > half) continue;
            mass += profile[l];
            moment += profile[l] * z;
        }
        clouds.push_back({p, mass > 0.0 ? moment / mass : std::numeric_limits<double>::quiet_NaN(),
                          total > 0.0 ? mass / total : 0.0});
    }
    return clouds;
}

}  // namespace tornado
