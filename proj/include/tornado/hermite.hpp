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

#include <cstdint>
#include <vector>

#include "tornado/fields.hpp"
#include "tornado/grid.hpp"

namespace tornado {

enum class HermiteConvention {
    probabilists,  // He_m(x) exp(-x^2 / 4)
    physicists,    // H_m(x) exp(-x^2 / 2)
};

/// Coefficients lambda(axis, component, order) with axis, component in
/// {0, 1, 2} and order in {1, ..., D}.
class LambdaTable {
  public:
    LambdaTable() = default;
    explicit LambdaTable(int max_order);

    int max_order() const { return max_order_; }
    double& operator()(int axis, int component, int order) { return values_.at(offset(axis, component, order)); }
    double operator()(int axis, int component, int order) const {
        return values_.at(offset(axis, component, order));
    }
    bool all_zero() const;
    bool all_finite() const;

    friend bool operator==(const LambdaTable&, const LambdaTable&) = default;

  private:
    std::size_t offset(int axis, int component, int order) const;

    int max_order_ = 0;
    std::vector<double> values_;
};

struct HermiteInitSpec {
    double R = 5.0;  // center k0 = (0, 0, R)
    LambdaTable lambda;
    double A = 1.0;
    bool normalize_M0 = true;
    bool project = true;
    std::uint64_t seed = 0;
    HermiteConvention convention = HermiteConvention::probabilists;

    int D() const { return lambda.max_order(); }
    Vec3 center() const { return {0.0, 0.0, R}; }
    /// Throws std::invalid_argument on D < 1, R <= 0, non-finite entries, or
    /// an all-zero table with A != 0.
    void validate() const;
};

/// Hermite function of order m >= 0 at x in the given convention.
double hermite_function(int m, double x, HermiteConvention convention = HermiteConvention::probabilists);

/// Product-of-sums initial data
///   v^j(k) = prod_i sum_{m=1}^{D} lambda(i, j, m) psi_m(3 (k^i - k0^i) / sqrt(R)),
/// optionally Leray-projected, normalized to unit energy, and then scaled by A.
VectorField build_initial_data(const HermiteInitSpec& spec, const GridSpec& grid);

/// Deterministic lambda entries in [-1, 1] from a 64-bit Mersenne Twister.
LambdaTable random_lambda(int max_order, std::uint64_t seed);

}  // namespace tornado
