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

#include "tornado/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "tornado/integrator.hpp"

namespace tornado {

namespace {

void multiply_pointwise(VectorField& v, const std::vector<double>& factor) {
    for (int c = 0; c < 3; ++c) {
        auto x = v.component(c);
        for (std::size_t q = 0; q < x.size(); ++q) x[q] *= factor[q];
    }
}

std::vector<double> heat_factors(const GridSpec& grid, double t) {
    std::vector<double> f(grid.size());
    for (std::size_t q = 0; q < grid.size(); ++q) f[q] = std::exp(-t * norm2(grid.wavenumber_at(q)));
    return f;
}

// One quadrature interval of length dt of a(t) = int exp(-(t-s)|k|^2) h(s) ds:
// given a at the left end, h at both ends and exp(-dt|k|^2), returns a at
// the right end.
VectorField advance_integral(const VectorField& a_left, const VectorField& h_left, const VectorField& h_right,
                             const std::vector<double>& heat, double dt, TimeQuadrature rule) {
    VectorField out = a_left;
    if (rule == TimeQuadrature::left_endpoint) {
        out.axpy(dt, h_left);
        multiply_pointwise(out, heat);
    } else {
        out.axpy(0.5 * dt, h_left);
        multiply_pointwise(out, heat);
        out.axpy(0.5 * dt, h_right);
    }
    return out;
}

// h_p from a_1..a_{p-1} given at one instant.
VectorField coefficient_from(const std::vector<const VectorField*>& a, int p, const ConvolutionPlan& plan) {
    VectorField sum(plan.grid());
    for (int p1 = 1; p1 < p; ++p1) {
        const int p2 = p - p1;
        sum.axpy(1.0, bilinear_form(*a[static_cast<std::size_t>(p1 - 1)], *a[static_cast<std::size_t>(p2 - 1)], plan));
    }
    sum.set_solenoidal(true);
    return sum;
}

}  // namespace

SeriesSet::SeriesSet(VectorField c0, double t_end, std::size_t intervals, ConvolutionPlan plan,
                     TimeQuadrature rule)
    : c0_(std::move(c0)), plan_(std::move(plan)), rule_(rule), spacing_(0.0) {
    if (!(c0_.grid() == plan_.grid())) throw std::invalid_argument("SeriesSet: c0 grid differs from plan grid");
    if (!(t_end > 0.0)) throw std::invalid_argument("SeriesSet: t_end must be positive");
    if (intervals < 1) throw std::invalid_argument("SeriesSet: need at least one interval");
    spacing_ = t_end / static_cast<double>(intervals);
    times_.resize(intervals + 1);
    for (std::size_t q = 0; q <= intervals; ++q) times_[q] = spacing_ * static_cast<double>(q);
    heat_step_ = heat_factors(c0_.grid(), spacing_);

    std::vector<VectorField> a1;
    a1.reserve(times_.size());
    for (double s : times_) a1.push_back(heat_evolve(c0_, s));
    a_.push_back(std::move(a1));
}

const VectorField& SeriesSet::h(int p, std::size_t q) const {
    if (p < 2 || p > p_max()) throw std::out_of_range("SeriesSet::h: coefficient not computed");
    return h_.at(static_cast<std::size_t>(p - 2)).at(q);
}

const VectorField& SeriesSet::a(int p, std::size_t q) const {
    if (p < 1 || p > p_max()) throw std::out_of_range("SeriesSet::a: coefficient not computed");
    return a_.at(static_cast<std::size_t>(p - 1)).at(q);
}

VectorField compute_h2(const VectorField& c0, double s, const ConvolutionPlan& plan) {
    if (!(s >= 0.0)) throw std::invalid_argument("compute_h2: s must be >= 0");
    const VectorField decayed = heat_evolve(c0, s);
    return bilinear_term(decayed, plan);
}

void compute_hp(SeriesSet& series, int p) {
    if (p < 2) throw std::logic_error("compute_hp: p must be >= 2");
    if (p != series.p_max() + 1) {
        throw std::logic_error("compute_hp: coefficients below p=" + std::to_string(p) + " are missing");
    }
    const std::size_t samples = series.times_.size();
    std::vector<VectorField> hp;
    hp.reserve(samples);
    for (std::size_t q = 0; q < samples; ++q) {
        std::vector<const VectorField*> at_q;
        for (int r = 1; r < p; ++r) at_q.push_back(&series.a_[static_cast<std::size_t>(r - 1)][q]);
        hp.push_back(coefficient_from(at_q, p, series.plan_));
    }
    std::vector<VectorField> ap;
    ap.reserve(samples);
    ap.emplace_back(series.c0_.grid());
    for (std::size_t q = 1; q < samples; ++q) {
        ap.push_back(advance_integral(ap.back(), hp[q - 1], hp[q], series.heat_step_, series.spacing_, series.rule_));
    }
    series.h_.push_back(std::move(hp));
    series.a_.push_back(std::move(ap));
}

VectorField series_solution(const SeriesSet& series, double A, double t, int P) {
    if (P < 1 || P > series.p_max()) {
        throw std::invalid_argument("series_solution: truncation order exceeds computed coefficients");
    }
    const auto& times = series.times();
    const double t_end = times.back();
    if (!(t >= 0.0) || t > t_end * (1.0 + 1e-12)) {
        throw std::invalid_argument("series_solution: t outside the sampled range");
    }
    const GridSpec& grid = series.c0().grid();

    // Sample index at or below t, and the leftover partial interval.
    const double pos = t / series.spacing();
    auto n = static_cast<std::size_t>(std::floor(pos + 1e-9));
    n = std::min(n, times.size() - 1);
    const double rest = std::max(0.0, t - times[n]);
    const bool on_sample = rest <= 1e-12 * std::max(1.0, t);

    VectorField out = heat_evolve(series.c0(), t);
    out.scale(A);
    if (P == 1) return out;

    std::vector<VectorField> a_now;  // a_p(t), p = 1..P
    a_now.push_back(heat_evolve(series.c0(), t));
    const std::vector<double> heat_rest = heat_factors(grid, rest);
    for (int p = 2; p <= P; ++p) {
        if (on_sample) {
            a_now.push_back(series.a(p, n));
        } else {
            std::vector<const VectorField*> ptrs;
            for (const auto& f : a_now) ptrs.push_back(&f);
            const VectorField h_now = coefficient_from(ptrs, p, series.plan());
            a_now.push_back(advance_integral(series.a(p, n), series.h(p, n), h_now, heat_rest, rest, series.rule()));
        }
        out.axpy(std::pow(A, p), a_now.back());
    }
    return out;
}

std::vector<SupportEntry> support_report(const SeriesSet& series, double R, std::optional<std::size_t> sample) {
    const std::size_t q = sample.value_or(series.times().size() - 1);
    const GridSpec& grid = series.c0().grid();
    std::vector<SupportEntry> report;
    for (int p = 1; p <= series.p_max(); ++p) {
        const VectorField& f = p == 1 ? series.c0() : series.h(p, q);
        const Vec3 center{0.0, 0.0, p * R};
        std::vector<std::pair<double, double>> by_distance;  // (distance, energy)
        by_distance.reserve(grid.size());
        double total = 0.0;
        double moment = 0.0;
        for (std::size_t idx = 0; idx < grid.size(); ++idx) {
            const Vec3 k = grid.wavenumber_at(idx);
            const double e = norm2(f.at(idx));
            total += e;
            moment += e * k[2];
            const Vec3 d{k[0] - center[0], k[1] - center[1], k[2] - center[2]};
            by_distance.emplace_back(std::sqrt(norm2(d)), e);
        }
        std::sort(by_distance.begin(), by_distance.end());
        double radius = 0.0;
        double acc = 0.0;
        for (const auto& [dist, e] : by_distance) {
            acc += e;
            radius = dist;
            if (acc >= 0.99 * total) break;
        }
        report.push_back({p, total > 0.0 ? moment / total : std::nan(""), total > 0.0 ? radius : 0.0,
                          grid.cell_volume() * total});
    }
    return report;
}

}  // namespace tornado
