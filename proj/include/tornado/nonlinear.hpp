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

#include <memory>

#include "tornado/fields.hpp"
#include "tornado/grid.hpp"

namespace tornado {

enum class ConvolutionMethod { fast, direct };

namespace detail {
class FftPlans;
}

/// How the lattice convolution of the bilinear term is evaluated.
///
/// The fast method zero-pads every axis to at least 2n - 1 points (rounded
/// up to a 2,3,5,7-smooth length) so the transform computes a linear, not
/// circular, convolution. Plans are immutable and may be shared between
/// threads; every call allocates its own work buffers.
class ConvolutionPlan {
  public:
    /// Throws std::invalid_argument if the grid origin is not a multiple of h
    /// (sums of grid wavenumbers would then fall between lattice points).
    ConvolutionPlan(const GridSpec& grid, ConvolutionMethod method);

    const GridSpec& grid() const { return grid_; }
    ConvolutionMethod method() const { return method_; }
    /// Padded transform extents; equal to the grid extents for `direct`.
    const Index3& padded() const { return padded_; }

    const detail::FftPlans* fft() const { return fft_.get(); }

  private:
    GridSpec grid_;
    ConvolutionMethod method_;
    Index3 padded_;
    std::shared_ptr<const detail::FftPlans> fft_;
};

/// Energy of the unprojected convolution sum that lands inside the grid and
/// the part that falls outside it and is dropped.
struct BilinearDiagnostics {
    double kept_energy = 0.0;
    double discarded_energy = 0.0;
};

/// B(f, g)(k) = P_k h^3 sum_l <l, f(k - l)> g(l), summed over all l with both
/// l and k - l on the grid. Throws std::invalid_argument on grid mismatch or
/// non-finite input. Diagnostics are filled only by the fast method.
VectorField bilinear_form(const VectorField& f, const VectorField& g, const ConvolutionPlan& plan,
                          BilinearDiagnostics* diagnostics = nullptr);

/// B(v) = B(v, v).
VectorField bilinear_term(const VectorField& v, const ConvolutionPlan& plan,
                          BilinearDiagnostics* diagnostics = nullptr);

/// Literal double loop over (k, l). O(N^2); meant for grids up to ~24^3.
VectorField bilinear_form_direct(const VectorField& f, const VectorField& g);
VectorField bilinear_term_direct(const VectorField& v);

/// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t smooth_size(std::size_t n);

}  // namespace tornado
