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
#include "tornado/nonlinear.hpp"

using namespace tornado;
using tornado::testing::kernel_bilinear;
using tornado::testing::random_field;

namespace {

double relative_error(const VectorField& got, const VectorField& want) {
    return distance(got, want) / std::sqrt(energy(want));
}

}  // namespace

TEST(SmoothSize, Values) {
    EXPECT_EQ(smooth_size(1), 1u);
    EXPECT_EQ(smooth_size(11), 12u);
    EXPECT_EQ(smooth_size(31), 32u);
    EXPECT_EQ(smooth_size(127), 128u);
    EXPECT_EQ(smooth_size(1023), 1024u);
    EXPECT_EQ(smooth_size(2879), 2880u);
    EXPECT_EQ(smooth_size(13), 14u);
}

TEST(Bilinear, ZeroField) {
    const GridSpec g = GridSpec::aligned(8, 8, 8, 0.5, {-2.0, -2.0, 1.0});
    const VectorField zero(g);
    for (auto m : {ConvolutionMethod::fast, ConvolutionMethod::direct}) {
        EXPECT_EQ(energy(bilinear_term(zero, ConvolutionPlan(g, m))), 0.0);
    }
}

TEST(Bilinear, SinglePointByHand) {
    const GridSpec g(6, 6, 8, 0.5, {-1.0, -1.0, 0.5});
    const Index3 i0{3, 2, 1};  // k0 = (0.5, 0, 1)
    const Vec3 k0 = g.wavenumber(i0);
    const Vec3 w{0.3, -0.7, 0.2};
    VectorField v(g);
    v.set(g.linear(i0), w);
    const Vec3 k2{2 * k0[0], 2 * k0[1], 2 * k0[2]};
    const std::size_t q2 = g.linear(g.index_of(k2));
    const double lw = dot(k0, w);
    const double hv = 0.125;
    const Vec3 want = leray_project_point(k2, {hv * lw * w[0], hv * lw * w[1], hv * lw * w[2]});
    for (auto m : {ConvolutionMethod::fast, ConvolutionMethod::direct}) {
        const VectorField b = bilinear_term(v, ConvolutionPlan(g, m));
        for (std::size_t q = 0; q < g.size(); ++q) {
            const Vec3 got = b.at(q);
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(got[c], q == q2 ? want[c] : 0.0, 1e-15);
        }
    }
}

TEST(Bilinear, DoubledPointOutsideGridGivesZero) {
    const GridSpec g(4, 4, 4, 1.0, {-1.0, -1.0, 1.0});
    VectorField v(g);
    v.set(g.linear(1, 1, 3), {1.0, 1.0, 0.0});  // k0 = (0, 0, 4); 2 k0 falls outside
    for (auto m : {ConvolutionMethod::fast, ConvolutionMethod::direct}) {
        EXPECT_LT(energy(bilinear_term(v, ConvolutionPlan(g, m))), 1e-30);
    }
}

TEST(Bilinear, FastMatchesDirect16) {
    const GridSpec g = GridSpec::aligned(16, 16, 16, 0.5, {-4.0, -4.0, 1.0});
    const ConvolutionPlan fast(g, ConvolutionMethod::fast);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const VectorField v = random_field(g, seed);
        EXPECT_LE(relative_error(bilinear_term(v, fast), bilinear_term_direct(v)), 1e-10) << "seed " << seed;
    }
}

TEST(Bilinear, DirectMatchesIndependentOracle) {
    // Odd extents and an origin with negative z to exercise every index case.
    const GridSpec g = GridSpec::aligned(5, 6, 7, 0.4, {-1.0, -0.8, -0.4});
    const VectorField f = random_field(g, 11);
    const VectorField gg = random_field(g, 12);
    const VectorField want = kernel_bilinear(f, gg, [](const Vec3&, const Vec3&, const Vec3&) { return 1.0; });
    EXPECT_LE(relative_error(bilinear_form_direct(f, gg), want), 1e-13);
    EXPECT_LE(relative_error(bilinear_form(f, gg, ConvolutionPlan(g, ConvolutionMethod::fast)), want), 1e-10);
}

TEST(Bilinear, Bilinearity) {
    const GridSpec g = GridSpec::aligned(8, 8, 10, 0.5, {-2.0, -2.0, 1.0});
    const ConvolutionPlan plan(g, ConvolutionMethod::fast);
    const VectorField a = random_field(g, 1), b = random_field(g, 2), c = random_field(g, 3);
    VectorField ab = a;
    ab.axpy(-2.5, b);
    VectorField rhs = bilinear_form(a, c, plan);
    rhs.axpy(-2.5, bilinear_form(b, c, plan));
    EXPECT_LE(relative_error(bilinear_form(ab, c, plan), rhs), 1e-12);
    VectorField cb = c;
    cb.scale(3.0);
    VectorField scaled = bilinear_form(a, c, plan);
    scaled.scale(3.0);
    EXPECT_LE(relative_error(bilinear_form(a, cb, plan), scaled), 1e-12);
}

TEST(Bilinear, OutputIsSolenoidal) {
    const GridSpec g = GridSpec::aligned(8, 8, 10, 0.5, {-2.0, -2.0, 1.0});
    const VectorField b = bilinear_term(random_field(g, 5), ConvolutionPlan(g, ConvolutionMethod::fast));
    EXPECT_TRUE(b.solenoidal());
    EXPECT_LE(max_orthogonality_defect(b), 1e-10);
}

TEST(Bilinear, SupportInSumset) {
    const GridSpec g = GridSpec::aligned(8, 8, 16, 0.5, {-2.0, -2.0, 0.5});
    VectorField v(g);
    // Support in a small box around (0, 0, 2); B(v) must live in the doubled box.
    for (std::size_t i = 3; i <= 5; ++i)
        for (std::size_t j = 3; j <= 5; ++j)
            for (std::size_t l = 2; l <= 4; ++l) v.set(g.linear(i, j, l), {0.1 * i, -0.2 * j, 0.3});
    const VectorField b = bilinear_term(v, ConvolutionPlan(g, ConvolutionMethod::fast));
    for (std::size_t q = 0; q < g.size(); ++q) {
        const Vec3 k = g.wavenumber_at(q);
        const bool inside = std::abs(k[0]) <= 1.0 + 1e-9 && std::abs(k[1]) <= 1.0 + 1e-9 && k[2] >= 3.0 - 1e-9 &&
                            k[2] <= 5.0 + 1e-9;
        if (!inside) EXPECT_LT(norm2(b.at(q)), 1e-26) << "k = " << k[0] << "," << k[1] << "," << k[2];
    }
    EXPECT_GT(energy(b), 0.0);
}

TEST(Bilinear, RejectsBadInput) {
    const GridSpec g = GridSpec::aligned(4, 4, 4, 1.0, {0, 0, 1});
    EXPECT_THROW(ConvolutionPlan(GridSpec(4, 4, 4, 0.4, {0.1, 0.0, 0.0}), ConvolutionMethod::fast),
                 std::invalid_argument);
    const ConvolutionPlan plan(g, ConvolutionMethod::fast);
    VectorField v(g);
    v.component(0)[3] = NAN;
    EXPECT_THROW(bilinear_term(v, plan), std::invalid_argument);
    EXPECT_THROW(bilinear_term(VectorField(GridSpec::aligned(5, 4, 4, 1.0, {0, 0, 1})), plan),
                 std::invalid_argument);
}

TEST(Bilinear, Diagnostics) {
    const GridSpec g = GridSpec::aligned(8, 8, 8, 0.5, {-2.0, -2.0, 1.0});
    BilinearDiagnostics d;
    bilinear_term(random_field(g, 4), ConvolutionPlan(g, ConvolutionMethod::fast), &d);
    EXPECT_GT(d.kept_energy, 0.0);
    EXPECT_GT(d.discarded_energy, 0.0);
}
