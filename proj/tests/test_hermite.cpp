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

#include "oracles.hpp"
#include "tornado/hermite.hpp"

using namespace tornado;

namespace {

const GridSpec kBox = GridSpec::covering({-8.0, -8.0, -3.0}, {8.0, 8.0, 13.0}, 0.5);

HermiteInitSpec reference_spec(std::uint64_t seed = 1) {
    HermiteInitSpec s;
    s.R = 5.0;
    s.lambda = random_lambda(3, seed);
    s.seed = seed;
    return s;
}

}  // namespace

TEST(HermiteFunction, Values) {
    EXPECT_EQ(hermite_function(0, 0.0), 1.0);
    EXPECT_EQ(hermite_function(2, 0.0), -1.0);
    EXPECT_NEAR(hermite_function(3, 2.0), 2.0 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(hermite_function(1, 1.5), 1.5 * std::exp(-1.5 * 1.5 / 4), 1e-15);
    // H_3(2) = 8 * 8 - 12 * 2 = 40
    EXPECT_NEAR(hermite_function(3, 2.0, HermiteConvention::physicists), 40.0 * std::exp(-2.0), 1e-13);
}

TEST(HermiteFunction, RecurrenceAndDecay) {
    for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
        const double g = std::exp(-x * x / 4);
        for (int m = 1; m < 8; ++m) {
            const double next = x * hermite_function(m, x) - m * hermite_function(m - 1, x);
            EXPECT_NEAR(hermite_function(m + 1, x), next, 1e-12 * (1 + std::abs(next))) << m << " " << x;
            EXPECT_TRUE(std::isfinite(hermite_function(m, x) / g));
        }
    }
    for (int m = 0; m < 6; ++m) EXPECT_LT(std::abs(hermite_function(m, 60.0)), 1e-300);
}

TEST(InitialData, ZeroAmplitude) {
    HermiteInitSpec s = reference_spec();
    s.A = 0.0;
    EXPECT_EQ(energy(build_initial_data(s, kBox)), 0.0);
}

TEST(InitialData, NormalizedToUnitMyNorm) {
    const VectorField v = build_initial_data(reference_spec(), kBox);
    EXPECT_NEAR(energy(v), 1.0, 1e-12);
    EXPECT_NEAR(std::sqrt(energy(v)), 1.00000, 5e-6);
    EXPECT_TRUE(v.solenoidal());
    EXPECT_LE(max_orthogonality_defect(v), 1e-12);
}

TEST(InitialData, AmplitudeScalesAfterNormalization) {
    HermiteInitSpec s = reference_spec();
    s.A = 7.0;
    EXPECT_NEAR(energy(build_initial_data(s, kBox)), 49.0, 1e-10);
}

TEST(InitialData, DegenerateLambdaThrows) {
    HermiteInitSpec s;
    s.lambda = LambdaTable(3);
    EXPECT_THROW(build_initial_data(s, kBox), std::invalid_argument);
}

TEST(InitialData, SingleOrderCentredAtK0) {
    // D = 1 and a delta pattern in component 2: v^2 = psi_1(x1) psi_1(x2) psi_1(x3),
    // an odd product, so |v|^2 is symmetric about k0.
    HermiteInitSpec s;
    s.R = 5.0;
    s.lambda = LambdaTable(1);
    for (int axis = 0; axis < 3; ++axis) s.lambda(axis, 1, 1) = 1.0;
    s.project = false;
    const GridSpec g = GridSpec::covering({-4.0, -4.0, 1.0}, {4.0, 4.0, 9.0}, 0.25);
    const VectorField v = build_initial_data(s, g);
    Vec3 centroid{0, 0, 0};
    double mass = 0.0;
    std::size_t best = 0;
    for (std::size_t q = 0; q < v.size(); ++q) {
        const double w = norm2(v.at(q));
        const Vec3 k = g.wavenumber_at(q);
        for (int a = 0; a < 3; ++a) centroid[a] += w * k[a];
        mass += w;
        if (w > norm2(v.at(best))) best = q;
        EXPECT_EQ(v.at(q)[0], 0.0);
        EXPECT_EQ(v.at(q)[2], 0.0);
    }
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(centroid[a] / mass, s.center()[a], g.h());
    // psi_1 peaks at x = +-sqrt(2), i.e. |k^i - k0^i| = sqrt(2R) / 3 on every axis.
    const Vec3 kb = g.wavenumber_at(best);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(std::abs(kb[a] - s.center()[a]), std::sqrt(2 * s.R) / 3, g.h());
}

TEST(InitialData, LocalizedNearK0) {
    const VectorField v = build_initial_data(reference_spec(), kBox);
    double inside = 0.0;
    for (std::size_t q = 0; q < v.size(); ++q) {
        const Vec3 k = kBox.wavenumber_at(q);
        const double r2 = k[0] * k[0] + k[1] * k[1] + (k[2] - 5.0) * (k[2] - 5.0);
        if (r2 <= 9.0 * 5.0) inside += kBox.cell_volume() * norm2(v.at(q));
    }
    EXPECT_GE(inside, 0.9999);
}

TEST(RandomLambda, Deterministic) {
    EXPECT_EQ(random_lambda(3, 42), random_lambda(3, 42));
    EXPECT_NE(random_lambda(3, 42), random_lambda(3, 43));
    const LambdaTable t = random_lambda(3, 7);
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c)
            for (int m = 1; m <= 3; ++m) {
                EXPECT_GE(t(a, c, m), -1.0);
                EXPECT_LE(t(a, c, m), 1.0);
            }
    EXPECT_THROW(t(0, 0, 4), std::out_of_range);
    EXPECT_THROW(t(3, 0, 1), std::out_of_range);
}

TEST(InitialData, SameSeedSameField) {
    EXPECT_EQ(build_initial_data(reference_spec(5), kBox), build_initial_data(reference_spec(5), kBox));
    EXPECT_NE(build_initial_data(reference_spec(5), kBox), build_initial_data(reference_spec(6), kBox));
}

TEST(InitialDataSpec, Validation) {
    HermiteInitSpec s = reference_spec();
    s.R = 0.0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = reference_spec();
    s.lambda(1, 1, 2) = NAN;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    HermiteInitSpec empty;
    EXPECT_THROW(empty.validate(), std::invalid_argument);
}
