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

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tornado/fields.hpp"
#include "tornado/hermite.hpp"
#include "tornado/nonlinear.hpp"

namespace tornado {

/// Raised when a step produces a non-finite value.
class NumericalOverflow : public std::runtime_error {
  public:
    explicit NumericalOverflow(double t);
    double time() const { return t_; }

  private:
    double t_;
};

struct RunConfig {
    GridSpec grid;
    HermiteInitSpec init;
    double dt = 1e-3;
    double t_max = 0.1;
    int snapshot_every = 0;  // 0: only the final state
    double blowup_threshold = 1e4;
    ConvolutionMethod method = ConvolutionMethod::fast;
    bool nonlinear = true;   // false: pure heat evolution
    std::string output_dir = ".";

    /// Throws std::invalid_argument when dt, t_max or the threshold are out of range.
    void validate_stepping() const;
    /// validate_stepping() plus init.validate().
    void validate() const;
};

/// Exponential Euler for the Duhamel form:
///   v(t + dt) = exp(-dt |k|^2) (v(t) + dt B(v(t))).
/// The heat factor is exact; the Duhamel integral uses the left endpoint.
class Stepper {
  public:
    Stepper(ConvolutionPlan plan, double dt, bool nonlinear = true);

    double dt() const { return dt_; }
    const ConvolutionPlan& plan() const { return plan_; }

    /// Throws NumericalOverflow (stamped with t_after) if the result is not finite.
    VectorField advance(const VectorField& v, double t_after = 0.0,
                        BilinearDiagnostics* diagnostics = nullptr) const;

  private:
    ConvolutionPlan plan_;
    double dt_;
    bool nonlinear_;
    std::vector<double> heat_;  // exp(-dt |k|^2) per grid point
};

/// One step from v with the given plan.
VectorField step(const VectorField& v, double dt, const ConvolutionPlan& plan);

/// Closed-form heat evolution exp(-t |k|^2) v(k).
VectorField heat_evolve(const VectorField& v, double t);

enum class RunOutcome {
    horizon,    // reached t_max
    threshold,  // M exceeded blowup_threshold * min M
    overflow,   // a step produced non-finite values
};

std::string to_string(RunOutcome outcome);
inline bool is_blowup(RunOutcome o) { return o != RunOutcome::horizon; }

struct StepDiagnostics {
    double t;
    double discarded_energy;  // convolution output that fell outside the grid
    double boundary_energy;   // energy in the outermost grid shell
};

struct RunResult {
    EnergyTrace trace;
    RunOutcome outcome = RunOutcome::horizon;
    VectorField final_field;
    double final_time = 0.0;
    std::size_t steps = 0;
    std::vector<StepDiagnostics> diagnostics;
};

/// Called with (field, t, step index) at the snapshot cadence and at termination.
using SnapshotSink = std::function<void(const VectorField&, double, std::size_t)>;

/// Builds the initial data from cfg.init and integrates.
RunResult run(const RunConfig& cfg, const SnapshotSink& sink = {});

/// Integrates from the given initial field (its grid must be cfg.grid).
RunResult run_from(const RunConfig& cfg, VectorField initial, const SnapshotSink& sink = {});

/// Power-law fit E(t) ~ C / (T_cr - t)^alpha over the tail of the trace.
struct BlowupFit {
    double t_cr;
    double alpha;
    double log_c;
    double t_lo;
    double t_hi;
    double residual;  // RMS of the log-space fit
    std::size_t points;
};

class NoBlowupSignature : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Fits over the last `tail_fraction` of the trailing strictly-growing run
/// of records (at least 10 points). T_cr is chosen by a log-spaced scan
/// followed by golden-section refinement of the fit residual. Throws
/// NoBlowupSignature when fewer than 10 growing points exist.
BlowupFit fit_blowup(const EnergyTrace& trace, double tail_fraction = 0.5);

/// Least-squares (log C, alpha, RMS residual) for a fixed T_cr.
struct PowerLawLine {
    double log_c;
    double alpha;
    double residual;
};
PowerLawLine fit_power_law_fixed(std::span<const EnergyRecord> window, double t_cr);

struct SweepEntry {
    double amplitude;
    RunOutcome outcome;
    std::optional<double> t_cr;  // fitted when the run blew up with enough growth
    double t_end;
    double m_min;
    double m_end;
    bool from_bisection;
};

struct SweepOptions {
    std::optional<double> bisect_relative_width;  // bracket A* to this (hi-lo)/lo
    int max_bisections = 8;
    double fit_tail = 0.5;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    std::optional<std::pair<double, double>> bracket;  // (largest decay, smallest blow-up)
};

using SweepObserver = std::function<void(const SweepEntry&, const RunResult&)>;

/// Classifies each amplitude (positive, increasing) and optionally bisects
/// the decay/blow-up transition. Runs are sequential; `on_entry` sees every
/// run as it finishes.
SweepResult sweep(const RunConfig& base, std::span<const double> amplitudes,
                  const SweepOptions& options = {}, const SweepObserver& on_entry = {});

}  // namespace tornado
