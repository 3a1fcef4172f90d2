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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tornado/integrator.hpp"

using namespace tornado;
using tornado::testing::random_field;
using tornado::testing::reference_c0;

namespace {

const GridSpec kToy = GridSpec::aligned(16, 16, 16, 0.5, {-4.0, -4.0, 1.0});

RunConfig toy_config(double A) {
    RunConfig cfg{kToy, HermiteInitSpec{}};
    cfg.init.R = 5.0;
    cfg.init.lambda = random_lambda(3, 1);
    cfg.init.A = A;
    cfg.dt = 1e-3;
    cfg.t_max = 0.02;
    return cfg;
}

EnergyTrace synthetic_trace(double t_cr, double alpha, double t0, double t1, double dt) {
    EnergyTrace trace;
    const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = t0 + dt * static_cast<double>(i);
        trace.push(t, std::pow(t_cr - t, -alpha));
    }
    return trace;
}

}  // namespace

TEST(Step, ZeroStaysZero) {
    const ConvolutionPlan plan(kToy, ConvolutionMethod::fast);
    EXPECT_EQ(energy(step(VectorField(kToy), 1e-3, plan)), 0.0);
}

TEST(Step, PureHeatWhenBilinearVanishes) {
    const GridSpec g(4, 4, 4, 1.0, {-1.0, -1.0, 1.0});
    VectorField v(g);
    const std::size_t q = g.linear(1, 1, 3);  // k = (0, 0, 4); 2k is off the grid
    v.set(q, {1.0, -2.0, 0.0});
    const VectorField w = step(v, 0.01, ConvolutionPlan(g, ConvolutionMethod::fast));
    const double f = std::exp(-0.01 * 16.0);
    EXPECT_NEAR(w.at(q)[0], f, 1e-15);
    EXPECT_NEAR(w.at(q)[1], -2.0 * f, 1e-15);
    EXPECT_NEAR(energy(w), 5.0 * f * f, 1e-14);
}

TEST(Step, HeatEvolutionExactWithoutNonlinearity) {
    const VectorField v0 = reference_c0(kToy);
    const Stepper s(ConvolutionPlan(kToy, ConvolutionMethod::fast), 1e-3, false);
    VectorField v = v0;
    for (int n = 0; n < 100; ++n) v = s.advance(v);
    const VectorField want = heat_evolve(v0, 0.1);
    EXPECT_LE(distance(v, want) / std::sqrt(energy(want)), 1e-12);
}

TEST(Step, QuadraticScalingCovariance) {
    const ConvolutionPlan plan(kToy, ConvolutionMethod::fast);
    const VectorField v = reference_c0(kToy);
    const double dt = 1e-3, alpha = 3.7;
    VectorField dv = step(v, dt, plan);
    dv.axpy(-1.0, heat_evolve(v, dt));
    VectorField va = v;
    va.scale(alpha);
    VectorField dva = step(va, dt, plan);
    dva.axpy(-1.0, heat_evolve(va, dt));
    dv.scale(alpha * alpha);
    EXPECT_LE(distance(dva, dv) / std::sqrt(energy(dv)), 1e-12);
}

TEST(Run, LinearRegimeMatchesClosedForm) {
    const RunConfig cfg = toy_config(1e-6);
    const RunResult r = run(cfg);
    const VectorField c0 = reference_c0(kToy);
    ASSERT_EQ(r.trace.size(), 21u);
    for (std::size_t n = 0; n < r.trace.size(); ++n) {
        const double t = cfg.dt * static_cast<double>(n);
        double want = 0.0;
        for (std::size_t q = 0; q < c0.size(); ++q) {
            want += std::exp(-2.0 * t * norm2(kToy.wavenumber_at(q))) * norm2(c0.at(q));
        }
        want *= kToy.cell_volume() * 1e-12;
        EXPECT_NEAR(r.trace[n].energy, want, 0.01 * want) << "step " << n;
    }
}

TEST(Run, ZeroAmplitudeGivesZeroTrace) {
    const RunResult r = run(toy_config(0.0));
    EXPECT_EQ(r.outcome, RunOutcome::horizon);
    for (const auto& rec : r.trace.records()) EXPECT_EQ(rec.energy, 0.0);
}

TEST(Run, TinyAmplitudeDecaysMonotonically) {
    const RunResult r = run(toy_config(1e-3));
    EXPECT_EQ(r.outcome, RunOutcome::horizon);
    EXPECT_NEAR(r.trace[0].mynorm, 1e-3, 1e-15);
    for (std::size_t n = 1; n < r.trace.size(); ++n) EXPECT_LT(r.trace[n].mynorm, r.trace[n - 1].mynorm);
    EXPECT_NEAR(r.final_time, 0.02, 1e-15);
    EXPECT_EQ(r.steps, 20u);
}

TEST(Run, SnapshotCadence) {
    RunConfig cfg = toy_config(1e-3);
    cfg.t_max = 0.007;
    cfg.snapshot_every = 3;
    std::vector<std::size_t> steps;
    run(cfg, [&](const VectorField&, double, std::size_t n) { steps.push_back(n); });
    EXPECT_EQ(steps, (std::vector<std::size_t>{0, 3, 6, 7}));
    cfg.snapshot_every = 0;
    steps.clear();
    run(cfg, [&](const VectorField&, double, std::size_t n) { steps.push_back(n); });
    EXPECT_EQ(steps, (std::vector<std::size_t>{7}));
}

TEST(Run, RejectsBadStepping) {
    RunConfig cfg = toy_config(1.0);
    cfg.dt = 0.0;
    EXPECT_THROW(run(cfg), std::invalid_argument);
    cfg = toy_config(1.0);
    cfg.blowup_threshold = 0.5;
    EXPECT_THROW(run(cfg), std::invalid_argument);
}

TEST(Run, DirectAndFastAgree) {
    const GridSpec g = GridSpec::aligned(8, 8, 12, 0.8, {-3.2, -3.2, 1.0});
    RunConfig cfg{g, HermiteInitSpec{}};
    cfg.init.lambda = random_lambda(3, 1);
    cfg.init.A = 20.0;
    cfg.t_max = 0.005;
    const RunResult fast = run(cfg);
    cfg.method = ConvolutionMethod::direct;
    const RunResult direct = run(cfg);
    ASSERT_EQ(fast.trace.size(), direct.trace.size());
    EXPECT_LE(distance(fast.final_field, direct.final_field), 1e-10 * std::sqrt(energy(direct.final_field)));
}

TEST(Fit, RecoversKnownExponents) {
    for (double alpha : {5.0, 15.0, 20.0}) {
        const EnergyTrace trace = synthetic_trace(0.05, alpha, 0.02, 0.049, 1e-4);
        const BlowupFit fit = fit_blowup(trace);
        EXPECT_NEAR(fit.alpha, alpha, 0.05 * alpha);
        EXPECT_NEAR(fit.t_cr, 0.05, 0.02 * 0.029);
    }
    const BlowupFit five = fit_blowup(synthetic_trace(0.05, 5.0, 0.02, 0.049, 1e-4));
    EXPECT_NEAR(five.alpha, 5.0, 0.25);
    EXPECT_NEAR(five.t_cr, 0.05, 0.001);
}

TEST(Fit, DecayingTraceThrows) {
    EnergyTrace trace;
    for (int i = 0; i < 50; ++i) trace.push(0.001 * i, std::exp(-0.1 * i));
    EXPECT_THROW(fit_blowup(trace), NoBlowupSignature);
}

TEST(Fit, UsesTrailingGrowth) {
    // A decaying start followed by power-law growth, as in a real run.
    EnergyTrace trace;
    for (int i = 0; i < 20; ++i) trace.push(0.001 * i, 1.0 - 0.01 * i);
    for (int i = 0; i < 30; ++i) {
        const double t = 0.02 + 0.001 * i;
        trace.push(t, 0.81 * std::pow(0.06 - 0.02, 5.0) * std::pow(0.06 - t, -5.0));
    }
    const BlowupFit fit = fit_blowup(trace);
    EXPECT_NEAR(fit.alpha, 5.0, 0.25);
    EXPECT_GT(fit.t_lo, 0.02);
}

TEST(Sweep, TinyAmplitudesAllDecay) {
    RunConfig base = toy_config(1.0);
    base.t_max = 0.005;
    const std::vector<double> amps{1e-4, 1e-3, 1e-2};
    const SweepResult r = sweep(base, amps);
    ASSERT_EQ(r.entries.size(), 3u);
    for (const auto& e : r.entries) EXPECT_EQ(e.outcome, RunOutcome::horizon);
    EXPECT_FALSE(r.bracket);
}

TEST(Sweep, RejectsUnsortedAmplitudes) {
    const std::vector<double> amps{2.0, 1.0};
    EXPECT_THROW(sweep(toy_config(1.0), amps), std::invalid_argument);
    const std::vector<double> neg{-1.0, 1.0};
    EXPECT_THROW(sweep(toy_config(1.0), neg), std::invalid_argument);
}
