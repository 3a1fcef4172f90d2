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

#include "tornado/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tornado/parallel.hpp"

namespace tornado {

NumericalOverflow::NumericalOverflow(double t)
    : std::runtime_error([t] {
          std::ostringstream os;
          os << "numerical overflow at t=" << t;
          return os.str();
      }()),
      t_(t) {}

void RunConfig::validate_stepping() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("RunConfig: dt must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("RunConfig: t_max must be positive");
    if (!(blowup_threshold > 1.0)) throw std::invalid_argument("RunConfig: blowup_threshold must exceed 1");
    if (snapshot_every < 0) throw std::invalid_argument("RunConfig: snapshot_every must be >= 0");
}

void RunConfig::validate() const {
    validate_stepping();
    init.validate();
}

std::string to_string(RunOutcome outcome) {
    switch (outcome) {
    case RunOutcome::horizon: return "horizon";
    case RunOutcome::threshold: return "threshold";
    case RunOutcome::overflow: return "overflow";
    }
    return "unknown";
}

Stepper::Stepper(ConvolutionPlan plan, double dt, bool nonlinear)
    : plan_(std::move(plan)), dt_(dt), nonlinear_(nonlinear) {
    if (!(dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
    const GridSpec& g = plan_.grid();
    heat_.resize(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) heat_[q] = std::exp(-dt * norm2(g.wavenumber_at(q)));
}

VectorField Stepper::advance(const VectorField& v, double t_after, BilinearDiagnostics* diagnostics) const {
    VectorField out = v;
    if (nonlinear_) out.axpy(dt_, bilinear_term(v, plan_, diagnostics));
    for (int c = 0; c < 3; ++c) {
        auto x = out.component(c);
        const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for num_threads(worker_count())
        for (std::ptrdiff_t q = 0; q < n; ++q) x[q] *= heat_[static_cast<std::size_t>(q)];
    }
    if (!out.all_finite()) throw NumericalOverflow(t_after);
    return out;
}

VectorField step(const VectorField& v, double dt, const ConvolutionPlan& plan) {
    return Stepper(plan, dt).advance(v, dt);
}

VectorField heat_evolve(const VectorField& v, double t) {
    VectorField out = v;
    const GridSpec& g = v.grid();
    for (int c = 0; c < 3; ++c) {
        auto x = out.component(c);
        for (std::size_t q = 0; q < x.size(); ++q) x[q] *= std::exp(-t * norm2(g.wavenumber_at(q)));
    }
    return out;
}

RunResult run(const RunConfig& cfg, const SnapshotSink& sink) {
    cfg.validate();
    return run_from(cfg, build_initial_data(cfg.init, cfg.grid), sink);
}

RunResult run_from(const RunConfig& cfg, VectorField initial, const SnapshotSink& sink) {
    if (!(initial.grid() == cfg.grid)) throw std::invalid_argument("run_from: initial field grid mismatch");
    cfg.validate_stepping();

    const Stepper stepper(ConvolutionPlan(cfg.grid, cfg.method), cfg.dt, cfg.nonlinear);
    const auto max_steps = static_cast<std::size_t>(std::llround(std::ceil(cfg.t_max / cfg.dt - 1e-9)));

    RunResult result{EnergyTrace{}, RunOutcome::horizon, std::move(initial), 0.0, 0, {}};
    VectorField& v = result.final_field;
    result.trace.push(0.0, energy(v));
    double m_min = result.trace.back().mynorm;

    auto emit = [&](std::size_t n, double t) {
        if (sink) sink(v, t, n);
    };
    bool emitted_last = false;
    if (cfg.snapshot_every > 0) {
        emit(0, 0.0);
        emitted_last = true;
    }

    for (std::size_t n = 1; n <= max_steps; ++n) {
        const double t = static_cast<double>(n) * cfg.dt;
        BilinearDiagnostics diag;
        try {
            v = stepper.advance(v, t, &diag);
        } catch (const NumericalOverflow&) {
            result.outcome = RunOutcome::overflow;
            break;
        }
        result.steps = n;
        result.final_time = t;
        result.trace.push(t, energy(v));
        if (cfg.method == ConvolutionMethod::fast && cfg.nonlinear) {
            result.diagnostics.push_back({t, diag.discarded_energy, boundary_shell_energy(v)});
        }
        emitted_last = false;
        if (cfg.snapshot_every > 0 && n % static_cast<std::size_t>(cfg.snapshot_every) == 0) {
            emit(n, t);
            emitted_last = true;
        }
        const double m = result.trace.back().mynorm;
        m_min = std::min(m_min, m);
        if (m > cfg.blowup_threshold * m_min) {
            result.outcome = RunOutcome::threshold;
            break;
        }
    }
    if (!emitted_last) emit(result.steps, result.final_time);
    return result;
}

PowerLawLine fit_power_law_fixed(std::span<const EnergyRecord> window, double t_cr) {
    // log E = log C - alpha log(T_cr - t)
    const auto n = static_cast<double>(window.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : window) {
        const double x = std::log(t_cr - r.t);
        const double y = std::log(r.energy);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double mx = sx / n;
    const double my = sy / n;
    const double varx = sxx / n - mx * mx;
    const double slope = varx > 0.0 ? (sxy / n - mx * my) / varx : 0.0;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (const auto& r : window) {
        const double e = std::log(r.energy) - (intercept + slope * std::log(t_cr - r.t));
        ss += e * e;
    }
    return {intercept, -slope, std::sqrt(ss / n)};
}

BlowupFit fit_blowup(const EnergyTrace& trace, double tail_fraction) {
    constexpr std::size_t kMinPoints = 10;
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw std::invalid_argument("fit_blowup: tail_fraction must be in (0, 1]");
    }
    const auto& rec = trace.records();
    std::size_t start = rec.size();
    if (!rec.empty()) {
        start = rec.size() - 1;
        while (start > 0 && rec[start - 1].energy < rec[start].energy && rec[start - 1].energy > 0.0) --start;
    }
    const std::size_t growing = rec.size() - start;
    if (growing < kMinPoints || rec[start].energy <= 0.0) {
        throw NoBlowupSignature("no blow-up signature: fewer than 10 growing points at the end of the trace");
    }
    const auto want = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(growing)));
    const std::size_t count = std::min(growing, std::max(kMinPoints, want));
    const std::span<const EnergyRecord> window(rec.data() + rec.size() - count, count);

    const double t_lo = window.front().t;
    const double t_hi = window.back().t;
    const double span = t_hi - t_lo;

    // Scan the gap T_cr - t_hi on a log scale, then refine by golden section.
    auto objective = [&](double log_gap) { return fit_power_law_fixed(window, t_hi + std::exp(log_gap)).residual; };
    const double lo_gap = std::log(1e-7 * span);
    const double hi_gap = std::log(20.0 * span);
    constexpr int kScan = 240;
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= kScan; ++s) {
        const double g = lo_gap + (hi_gap - lo_gap) * s / kScan;
        const double value = objective(g);
        if (value < best_value) {
            best_value = value;
            best = s;
        }
    }
    const double cell = (hi_gap - lo_gap) / kScan;
    double a = lo_gap + cell * std::max(0, best - 1);
    double b = lo_gap + cell * std::min(kScan, best + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    const double t_cr = t_hi + std::exp(0.5 * (a + b));
    const PowerLawLine line = fit_power_law_fixed(window, t_cr);
    return {t_cr, line.alpha, line.log_c, t_lo, t_hi, line.residual, count};
}

namespace {

SweepEntry classify(const RunConfig& base, double amplitude, const SweepOptions& options, bool bisection,
                    const SweepObserver& on_entry) {
    RunConfig cfg = base;
    cfg.init.A = amplitude;
    const RunResult r = run(cfg);
    double m_min = std::numeric_limits<double>::infinity();
    for (const auto& rec : r.trace.records()) m_min = std::min(m_min, rec.mynorm);
    SweepEntry entry{amplitude, r.outcome, std::nullopt, r.final_time, m_min, r.trace.back().mynorm, bisection};
    if (is_blowup(r.outcome)) {
        try {
            entry.t_cr = fit_blowup(r.trace, options.fit_tail).t_cr;
        } catch (const NoBlowupSignature&) {
        }
    }
    if (on_entry) on_entry(entry, r);
    return entry;
}

}  // namespace

SweepResult sweep(const RunConfig& base, std::span<const double> amplitudes, const SweepOptions& options,
                  const SweepObserver& on_entry) {
    for (std::size_t q = 0; q < amplitudes.size(); ++q) {
        if (!(amplitudes[q] > 0.0)) throw std::invalid_argument("sweep: amplitudes must be positive");
        if (q > 0 && !(amplitudes[q] > amplitudes[q - 1])) {
            throw std::invalid_argument("sweep: amplitudes must be strictly increasing");
        }
    }
    SweepResult result;
    auto record = [&](const SweepEntry& e) { result.entries.push_back(e); };
    std::optional<double> largest_decay;
    std::optional<double> smallest_blowup;
    for (double a : amplitudes) {
        SweepEntry e = classify(base, a, options, false, on_entry);
        if (is_blowup(e.outcome)) {
            if (!smallest_blowup) smallest_blowup = a;
        } else {
            largest_decay = a;
        }
        record(e);
    }
    if (largest_decay && smallest_blowup && *largest_decay < *smallest_blowup) {
        double lo = *largest_decay;
        double hi = *smallest_blowup;
        if (options.bisect_relative_width) {
            for (int it = 0; it < options.max_bisections && (hi - lo) / lo > *options.bisect_relative_width; ++it) {
                const double mid = 0.5 * (lo + hi);
                SweepEntry e = classify(base, mid, options, true, on_entry);
                if (is_blowup(e.outcome)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
                record(e);
            }
        }
        result.bracket = std::make_pair(lo, hi);
    }
    return result;
}

}  // namespace tornado
