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

#include <optional>
#include <vector>

#include "tornado/fields.hpp"
#include "tornado/nonlinear.hpp"

namespace tornado {

// Amplitude expansion of the solution started from A c0:
//
//   v_A(t) = A a_1(t) + sum_{p >= 2} A^p a_p(t),   a_1(t) = exp(-t|k|^2) c0,
//   a_p(t) = int_0^t exp(-(t - s)|k|^2) h_p(s) ds,
//   h_p(s) = sum_{p1 + p2 = p} B(a_{p1}(s), a_{p2}(s)),
//
// with B(f, g) the bilinear form of nonlinear.hpp. For p = 2, 3 this is the
// nested-integral recurrence for h_p written out term by term; the p1 = 1
// and p2 = 1 terms of the sum are its two single-integral lines.

enum class TimeQuadrature {
    trapezoid,      // composite trapezoid rule on the samples
    left_endpoint,  // the exponential-Euler rule used by the integrator
};

/// Coefficients h_p and their Duhamel integrals a_p on uniform time samples
/// s_q = q * t_end / intervals, q = 0..intervals.
class SeriesSet {
  public:
    SeriesSet(VectorField c0, double t_end, std::size_t intervals, ConvolutionPlan plan,
              TimeQuadrature rule = TimeQuadrature::trapezoid);

    const VectorField& c0() const { return c0_; }
    const ConvolutionPlan& plan() const { return plan_; }
    TimeQuadrature rule() const { return rule_; }
    const std::vector<double>& times() const { return times_; }
    double spacing() const { return spacing_; }

    /// Highest p whose coefficients are available (1 before any compute_hp).
    int p_max() const { return static_cast<int>(a_.size()); }

    /// h_p at sample q; p in [2, p_max()].
    const VectorField& h(int p, std::size_t q) const;
    /// a_p at sample q; p in [1, p_max()].
    const VectorField& a(int p, std::size_t q) const;

  private:
    friend void compute_hp(SeriesSet& series, int p);

    VectorField c0_;
    ConvolutionPlan plan_;
    TimeQuadrature rule_;
    std::vector<double> times_;
    double spacing_;
    std::vector<double> heat_step_;           // exp(-spacing |k|^2)
    std::vector<std::vector<VectorField>> h_;  // h_[p - 2][q]
    std::vector<std::vector<VectorField>> a_;  // a_[p - 1][q]
};

/// h_2(k, s) = h^3 sum_l <l, c0(k - l)> P_k c0(l) exp(-s(|l|^2 + |k - l|^2)).
VectorField compute_h2(const VectorField& c0, double s, const ConvolutionPlan& plan);

/// Computes h_p and a_p on every sample. Requires p == series.p_max() + 1
/// and p >= 2; throws std::logic_error otherwise.
void compute_hp(SeriesSet& series, int p);

/// A a_1(t) + sum_{p=2}^{P} A^p a_p(t). t in [0, t_end]; between samples the
/// last partial interval uses the same quadrature rule.
VectorField series_solution(const SeriesSet& series, double A, double t, int P);

struct SupportEntry {
    int p;
    double center_z;  // energy-weighted centroid z
    double radius99;  // smallest radius about (0, 0, pR) holding 99% of the energy
    double energy;
};

/// Support statistics of c0 (p = 1) and h_p (p >= 2) at sample `sample`
/// (default: the last one).
std::vector<SupportEntry> support_report(const SeriesSet& series, double R,
                                         std::optional<std::size_t> sample = std::nullopt);

}  // namespace tornado
