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

#include <array>
#include <cstddef>
#include <cstdint>

namespace tornado {

using Vec3 = std::array<double, 3>;
using Index3 = std::array<std::size_t, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm2(const Vec3& a) { return dot(a, a); }

/// Uniform lattice of wavenumbers k = origin + h * (i, j, l).
///
/// Points are stored z-fastest: linear index = (i * ny + j) * nz + l.
/// The grid is immutable once constructed.
class GridSpec {
  public:
    /// Throws std::invalid_argument if any count is < 2, h <= 0, or the
    /// origin is not finite.
    GridSpec(std::size_t nx, std::size_t ny, std::size_t nz, double h, Vec3 origin);

    /// Smallest grid with spacing h whose points lie on the lattice hZ^3 and
    /// that covers the box [lo, hi]. Counts are rounded up, the origin down.
    static GridSpec covering(const Vec3& lo, const Vec3& hi, double h);

    /// Grid with the given counts whose origin is `min_corner` snapped down
    /// to the lattice hZ^3.
    static GridSpec aligned(std::size_t nx, std::size_t ny, std::size_t nz, double h,
                            const Vec3& min_corner);

    std::size_t nx() const { return n_[0]; }
    std::size_t ny() const { return n_[1]; }
    std::size_t nz() const { return n_[2]; }
    std::size_t extent(int axis) const { return n_.at(static_cast<std::size_t>(axis)); }
    const Index3& extents() const { return n_; }
    std::size_t size() const { return n_[0] * n_[1] * n_[2]; }
    double h() const { return h_; }
    const Vec3& origin() const { return origin_; }

    /// Throws std::out_of_range for an index outside the grid.
    Vec3 wavenumber(const Index3& idx) const;

    /// Unchecked wavenumber of the point with linear index `linear`.
    Vec3 wavenumber_at(std::size_t linear) const {
        const std::size_t l = linear % n_[2];
        const std::size_t ij = linear / n_[2];
        const std::size_t j = ij % n_[1];
        const std::size_t i = ij / n_[1];
        return {origin_[0] + h_ * static_cast<double>(i), origin_[1] + h_ * static_cast<double>(j),
                origin_[2] + h_ * static_cast<double>(l)};
    }

    /// Nearest grid index to k. Throws std::out_of_range if k rounds to a
    /// point outside the grid.
    Index3 index_of(const Vec3& k) const;

    std::size_t linear(std::size_t i, std::size_t j, std::size_t l) const {
        return (i * n_[1] + j) * n_[2] + l;
    }
    std::size_t linear(const Index3& idx) const { return linear(idx[0], idx[1], idx[2]); }

    /// Quadrature weight h^3 of one lattice cell.
    double cell_volume() const { return h_ * h_ * h_; }

    /// True when every origin component is an integer multiple of h (to a
    /// relative 1e-9), so that sums and differences of grid wavenumbers are
    /// again lattice points.
    bool lattice_aligned() const;

    /// origin / h as integers. Throws std::logic_error when not aligned.
    std::array<std::int64_t, 3> origin_steps() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

  private:
    Index3 n_;
    double h_;
    Vec3 origin_;
};

}  // namespace tornado
