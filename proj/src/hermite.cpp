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

#include "tornado/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace tornado {

LambdaTable::LambdaTable(int max_order) : max_order_(max_order) {
    if (max_order < 1) throw std::invalid_argument("LambdaTable: D must be >= 1");
    values_.assign(9 * static_cast<std::size_t>(max_order), 0.0);
}

std::size_t LambdaTable::offset(int axis, int component, int order) const {
    if (axis < 0 || axis > 2 || component < 0 || component > 2 || order < 1 || order > max_order_) {
        throw std::out_of_range("LambdaTable: index (" + std::to_string(axis) + ", " +
                                std::to_string(component) + ", " + std::to_string(order) +
                                ") out of range");
    }
    return (static_cast<std::size_t>(axis) * 3 + static_cast<std::size_t>(component)) *
               static_cast<std::size_t>(max_order_) +
           static_cast<std::size_t>(order - 1);
}

bool LambdaTable::all_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

bool LambdaTable::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

void HermiteInitSpec::validate() const {
    if (lambda.max_order() < 1) throw std::invalid_argument("HermiteInitSpec: D must be >= 1");
    if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("HermiteInitSpec: R must be positive");
    if (!lambda.all_finite()) throw std::invalid_argument("HermiteInitSpec: lambda must be finite");
    if (!std::isfinite(A)) throw std::invalid_argument("HermiteInitSpec: A must be finite");
    if (A != 0.0 && lambda.all_zero()) {
        throw std::invalid_argument("HermiteInitSpec: degenerate initial data (all lambda are zero)");
    }
}

double hermite_function(int m, double x, HermiteConvention convention) {
    if (m < 0) throw std::invalid_argument("hermite_function: order must be >= 0");
    const bool phys = convention == HermiteConvention::physicists;
    // He_{m+1} = x He_m - m He_{m-1};  H_{m+1} = 2x H_m - 2m H_{m-1}.
    double prev = 1.0;
    double cur = phys ? 2.0 * x : x;
    if (m == 0) cur = prev;
    for (int n = 1; n < m; ++n) {
        const double next = phys ? 2.0 * x * cur - 2.0 * n * prev : x * cur - n * prev;
        prev = cur;
        cur = next;
    }
    return cur * std::exp(phys ? -0.5 * x * x : -0.25 * x * x);
}

VectorField build_initial_data(const HermiteInitSpec& spec, const GridSpec& grid) {
    spec.validate();
    VectorField v(grid);
    if (spec.A == 0.0) return v;

    const Vec3 k0 = spec.center();
    const double arg_scale = 3.0 / std::sqrt(spec.R);
    const int D = spec.D();

    // factor[axis][component][index along axis] = sum_m lambda psi_m(arg).
    std::array<std::array<std::vector<double>, 3>, 3> factor;
    for (int axis = 0; axis < 3; ++axis) {
        const std::size_t n = grid.extent(axis);
        for (int comp = 0; comp < 3; ++comp) {
            auto& f = factor[static_cast<std::size_t>(axis)][static_cast<std::size_t>(comp)];
            f.assign(n, 0.0);
            for (std::size_t q = 0; q < n; ++q) {
                const double k = grid.origin()[static_cast<std::size_t>(axis)] + grid.h() * static_cast<double>(q);
                const double x = arg_scale * (k - k0[static_cast<std::size_t>(axis)]);
                double sum = 0.0;
                for (int m = 1; m <= D; ++m) sum += spec.lambda(axis, comp, m) * hermite_function(m, x, spec.convention);
                f[q] = sum;
            }
        }
    }

    for (int comp = 0; comp < 3; ++comp) {
        const auto c = static_cast<std::size_t>(comp);
        auto out = v.component(comp);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            for (std::size_t j = 0; j < grid.ny(); ++j) {
                const double fxy = factor[0][c][i] * factor[1][c][j];
                const std::size_t base = grid.linear(i, j, 0);
                for (std::size_t l = 0; l < grid.nz(); ++l) out[base + l] = fxy * factor[2][c][l];
            }
        }
    }

    if (spec.project) leray_project_in_place(v);

    if (spec.normalize_M0) {
        const double e = energy(v);
        if (!(e > 0.0)) {
            throw std::invalid_argument("build_initial_data: degenerate initial data (zero energy on this grid)");
        }
        v.scale(1.0 / std::sqrt(e));
    }
    v.scale(spec.A);
    return v;
}

LambdaTable random_lambda(int max_order, std::uint64_t seed) {
    LambdaTable table(max_order);
    std::mt19937_64 engine(seed);
    // Top 53 bits -> [0, 1), independent of the standard library's
    // distribution implementation.
    auto next = [&engine] {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        return 2.0 * u - 1.0;
    };
    for (int axis = 0; axis < 3; ++axis) {
        for (int comp = 0; comp < 3; ++comp) {
            for (int m = 1; m <= max_order; ++m) table(axis, comp, m) = next();
        }
    }
    return table;
}

}  // namespace tornado
