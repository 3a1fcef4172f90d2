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

#include "tornado/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tornado {

namespace {

constexpr double kAlignTolerance = 1e-9;

// floor(x / h) that is not fooled by x / h landing a hair below an integer.
double snap_down(double x, double h) {
    const double q = x / h;
    const double r = std::round(q);
    if (std::abs(q - r) <= kAlignTolerance * std::max(1.0, std::abs(q))) return r * h;
    return std::floor(q) * h;
}

}  // namespace

GridSpec::GridSpec(std::size_t nx, std::size_t ny, std::size_t nz, double h, Vec3 origin)
    : n_{nx, ny, nz}, h_(h), origin_(origin) {
    if (nx < 2 || ny < 2 || nz < 2) {
        throw std::invalid_argument("GridSpec: every axis needs at least 2 points");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("GridSpec: spacing h must be positive and finite");
    }
    for (double o : origin) {
        if (!std::isfinite(o)) throw std::invalid_argument("GridSpec: origin must be finite");
    }
}

GridSpec GridSpec::covering(const Vec3& lo, const Vec3& hi, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("GridSpec::covering: h must be positive");
    Index3 n{};
    Vec3 origin{};
    for (std::size_t a = 0; a < 3; ++a) {
        if (!(hi[a] > lo[a])) {
            throw std::invalid_argument("GridSpec::covering: empty domain on axis " +
                                        std::to_string(a));
        }
        origin[a] = snap_down(lo[a], h);
        const double span = (hi[a] - origin[a]) / h;
        auto steps = static_cast<std::size_t>(std::ceil(span - kAlignTolerance * std::max(1.0, span)));
        n[a] = std::max<std::size_t>(2, steps + 1);
    }
    return GridSpec(n[0], n[1], n[2], h, origin);
}

GridSpec GridSpec::aligned(std::size_t nx, std::size_t ny, std::size_t nz, double h,
                           const Vec3& min_corner) {
    if (!(h > 0.0)) throw std::invalid_argument("GridSpec::aligned: h must be positive");
    return GridSpec(nx, ny, nz, h,
                    {snap_down(min_corner[0], h), snap_down(min_corner[1], h),
                     snap_down(min_corner[2], h)});
}

Vec3 GridSpec::wavenumber(const Index3& idx) const {
    for (std::size_t a = 0; a < 3; ++a) {
        if (idx[a] >= n_[a]) {
            throw std::out_of_range("GridSpec::wavenumber: index " + std::to_string(idx[a]) +
                                    " out of range on axis " + std::to_string(a));
        }
    }
    return {origin_[0] + h_ * static_cast<double>(idx[0]),
            origin_[1] + h_ * static_cast<double>(idx[1]),
            origin_[2] + h_ * static_cast<double>(idx[2])};
}

Index3 GridSpec::index_of(const Vec3& k) const {
    Index3 idx{};
    for (std::size_t a = 0; a < 3; ++a) {
        const double q = std::round((k[a] - origin_[a]) / h_);
        if (!(q >= 0.0) || q > static_cast<double>(n_[a] - 1)) {
            throw std::out_of_range("GridSpec::index_of: wavenumber outside grid on axis " +
                                    std::to_string(a));
        }
        idx[a] = static_cast<std::size_t>(q);
    }
    return idx;
}

bool GridSpec::lattice_aligned() const {
    for (double o : origin_) {
        const double q = o / h_;
        if (std::abs(q - std::round(q)) > kAlignTolerance * std::max(1.0, std::abs(q))) return false;
    }
    return true;
}

std::array<std::int64_t, 3> GridSpec::origin_steps() const {
    if (!lattice_aligned()) {
        throw std::logic_error("GridSpec: origin is not a multiple of h; wavenumber sums leave the lattice");
    }
    return {static_cast<std::int64_t>(std::llround(origin_[0] / h_)),
            static_cast<std::int64_t>(std::llround(origin_[1] / h_)),
            static_cast<std::int64_t>(std::llround(origin_[2] / h_))};
}

}  // namespace tornado
