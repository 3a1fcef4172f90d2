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
#include <span>
#include <vector>

#include "tornado/grid.hpp"

namespace tornado {

/// Real 3-component field over a GridSpec: the imaginary part of the Fourier
/// transformed velocity. Components are stored as three z-fastest lattices.
class VectorField {
  public:
    explicit VectorField(GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return grid_.size(); }

    std::span<double> component(int c) { return comp_.at(static_cast<std::size_t>(c)); }
    std::span<const double> component(int c) const { return comp_.at(static_cast<std::size_t>(c)); }

    Vec3 at(std::size_t linear) const { return {comp_[0][linear], comp_[1][linear], comp_[2][linear]}; }
    void set(std::size_t linear, const Vec3& v) {
        comp_[0][linear] = v[0];
        comp_[1][linear] = v[1];
        comp_[2][linear] = v[2];
    }

    /// Set by leray_project and the bilinear term. Callers that write into
    /// components are responsible for clearing it.
    bool solenoidal() const { return solenoidal_; }
    void set_solenoidal(bool flag) { solenoidal_ = flag; }

    bool all_finite() const;

    void scale(double alpha);
    /// this += alpha * other. Grids must match.
    void axpy(double alpha, const VectorField& other);

    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.grid_ == b.grid_ && a.comp_ == b.comp_;
    }

  private:
    GridSpec grid_;
    std::array<std::vector<double>, 3> comp_;
    bool solenoidal_ = false;
};

struct EnergyRecord {
    double t;
    double energy;
    double mynorm;

    friend bool operator==(const EnergyRecord&, const EnergyRecord&) = default;
};

/// Time series of (t, E, M = sqrt(E)) with strictly increasing t.
class EnergyTrace {
  public:
    /// Appends (t, E, sqrt(E)). Throws std::invalid_argument if t does not
    /// increase or E is negative or not finite.
    void push(double t, double energy);
    /// Appends a record as stored (for readers). Checks M^2 = E to 1e-12.
    void push(const EnergyRecord& record);

    const std::vector<EnergyRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const EnergyRecord& operator[](std::size_t i) const { return records_[i]; }
    const EnergyRecord& back() const { return records_.back(); }

    friend bool operator==(const EnergyTrace&, const EnergyTrace&) = default;

  private:
    std::vector<EnergyRecord> records_;
};

/// P_k w = w - k <k, w> / |k|^2; the zero map at k = 0.
Vec3 leray_project_point(const Vec3& k, const Vec3& w);

/// Pointwise Leray projection; the result is flagged solenoidal.
VectorField leray_project(const VectorField& v);
void leray_project_in_place(VectorField& v);

/// Largest |<k, v(k)>| / (|k| |v(k)|) over points with k != 0 and v != 0.
double max_orthogonality_defect(const VectorField& v);

/// h^3 * sum |v|^2.
double energy(const VectorField& v);

/// sqrt(h^3 * sum |a - b|^2).
double distance(const VectorField& a, const VectorField& b);

/// Energy in the outermost shell of grid points (any index on a face).
double boundary_shell_energy(const VectorField& v);

/// e(l) = h^2 * sum_{i,j} |v(i,j,l)|^2, one entry per z index.
std::vector<double> z_marginal(const VectorField& v);

struct Cloud {
    int p;
    double z_center;       // mass-weighted center of the band (NaN when empty)
    double mass_fraction;  // share of total profile mass in the band
};

/// For p = 1..p_max, the share of profile mass in |z - pR| <= width * sqrt(pR)
/// and the band's mass-weighted center. Throws std::invalid_argument for an
/// empty profile or one whose length differs from grid.nz().
std::vector<Cloud> detect_clouds(std::span<const double> profile, const GridSpec& grid, double R,
                                 int p_max, double width = 3.0);

}  // namespace tornado
