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

#include "tornado/nonlinear.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <new>
#include <stdexcept>

#include "tornado/parallel.hpp"

namespace tornado {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <typename T>
class FftwBuffer {
  public:
    explicit FftwBuffer(std::size_t n) : n_(n), data_(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
        if (data_ == nullptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data_); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    T* data() { return data_; }
    std::size_t size() const { return n_; }
    void zero() { std::memset(static_cast<void*>(data_), 0, sizeof(T) * n_); }

  private:
    std::size_t n_;
    T* data_;
};

void check_inputs(const VectorField& f, const VectorField& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("bilinear term: grid mismatch");
    if (!f.all_finite() || !g.all_finite()) {
        throw std::invalid_argument("bilinear term: non-finite input field");
    }
}

}  // namespace

namespace detail {

class FftPlans {
  public:
    explicit FftPlans(const Index3& n) : n_(n) {
        const std::size_t nreal = n[0] * n[1] * n[2];
        const std::size_t ncomplex = n[0] * n[1] * (n[2] / 2 + 1);
        FftwBuffer<double> r(nreal);
        FftwBuffer<fftw_complex> c(ncomplex);
        const int dims[3] = {static_cast<int>(n[0]), static_cast<int>(n[1]), static_cast<int>(n[2])};
        // ESTIMATE keeps the chosen algorithm, and with it the rounding, the
        // same on every run.
        std::lock_guard lock(planner_mutex());
        forward_ = fftw_plan_dft_r2c(3, dims, r.data(), c.data(), FFTW_ESTIMATE);
        inverse_ = fftw_plan_dft_c2r(3, dims, c.data(), r.data(), FFTW_ESTIMATE);
        if (forward_ == nullptr || inverse_ == nullptr) {
            throw std::runtime_error("FFTW planner failed");
        }
    }
    ~FftPlans() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(inverse_);
    }
    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

    const Index3& extents() const { return n_; }
    std::size_t real_size() const { return n_[0] * n_[1] * n_[2]; }
    std::size_t complex_size() const { return n_[0] * n_[1] * (n_[2] / 2 + 1); }

    void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
    // Destroys `in`.
    void inverse(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(inverse_, in, out); }

  private:
    Index3 n_;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
};

}  // namespace detail

std::size_t smooth_size(std::size_t n) {
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5, 7}) {
            while (r % p == 0) r /= p;
        }
        if (r == 1) return m;
    }
}

ConvolutionPlan::ConvolutionPlan(const GridSpec& grid, ConvolutionMethod method)
    : grid_(grid), method_(method), padded_(grid.extents()) {
    if (!grid.lattice_aligned()) {
        throw std::invalid_argument(
            "ConvolutionPlan: grid origin must be an integer multiple of h");
    }
    if (method == ConvolutionMethod::fast) {
        for (std::size_t a = 0; a < 3; ++a) padded_[a] = smooth_size(2 * grid.extents()[a] - 1);
        fft_ = std::make_shared<const detail::FftPlans>(padded_);
    }
}

namespace {

// Copies `value(linear grid index)` into the zero-padded real buffer.
template <typename ValueAt>
void embed(const GridSpec& grid, const Index3& pad, double* buf, ValueAt value) {
    const auto n0 = static_cast<std::ptrdiff_t>(pad[0]);
#pragma omp parallel for num_threads(worker_count())
    for (std::ptrdiff_t ii = 0; ii < n0; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < pad[1]; ++j) {
            double* row = buf + (i * pad[1] + j) * pad[2];
            if (i < grid.nx() && j < grid.ny()) {
                const std::size_t base = grid.linear(i, j, 0);
                for (std::size_t l = 0; l < grid.nz(); ++l) row[l] = value(base + l);
                std::fill(row + grid.nz(), row + pad[2], 0.0);
            } else {
                std::fill(row, row + pad[2], 0.0);
            }
        }
    }
}

void multiply_accumulate(const fftw_complex* a, const fftw_complex* b, fftw_complex* acc,
                         std::size_t n) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for num_threads(worker_count())
    for (std::ptrdiff_t q = 0; q < count; ++q) {
        const double re = a[q][0] * b[q][0] - a[q][1] * b[q][1];
        const double im = a[q][0] * b[q][1] + a[q][1] * b[q][0];
        acc[q][0] += re;
        acc[q][1] += im;
    }
}

VectorField bilinear_fast(const VectorField& f, const VectorField& g, const ConvolutionPlan& plan,
                          BilinearDiagnostics* diagnostics) {
    const GridSpec& grid = plan.grid();
    const detail::FftPlans& fft = *plan.fft();
    const Index3& pad = plan.padded();
    const auto o = grid.origin_steps();

    FftwBuffer<double> real(fft.real_size());
    std::array<FftwBuffer<fftw_complex>, 3> fhat{FftwBuffer<fftw_complex>(fft.complex_size()),
                                                  FftwBuffer<fftw_complex>(fft.complex_size()),
                                                  FftwBuffer<fftw_complex>(fft.complex_size())};
    FftwBuffer<fftw_complex> term(fft.complex_size());
    FftwBuffer<fftw_complex> acc(fft.complex_size());

    for (int c = 0; c < 3; ++c) {
        auto fc = f.component(c);
        embed(grid, pad, real.data(), [&](std::size_t q) { return fc[q]; });
        fft.forward(real.data(), fhat[static_cast<std::size_t>(c)].data());
    }

    VectorField out(grid);
    // Linear convolution index m = a + b; output grid index is m + origin/h.
    const double scale = grid.cell_volume() / static_cast<double>(fft.real_size());
    double kept = 0.0;
    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
        acc.zero();
        auto gj = g.component(j);
        for (int c = 0; c < 3; ++c) {
            const double origin_c = grid.origin()[static_cast<std::size_t>(c)];
            const double h = grid.h();
            const std::size_t stride_c = c == 0 ? grid.ny() * grid.nz() : c == 1 ? grid.nz() : 1;
            const std::size_t extent_c = grid.extent(c);
            embed(grid, pad, real.data(), [&](std::size_t q) {
                const std::size_t idx_c = (q / stride_c) % extent_c;
                return (origin_c + h * static_cast<double>(idx_c)) * gj[q];
            });
            fft.forward(real.data(), term.data());
            multiply_accumulate(fhat[static_cast<std::size_t>(c)].data(), term.data(), acc.data(),
                                fft.complex_size());
        }
        fft.inverse(acc.data(), real.data());

        auto out_j = out.component(j);
        const std::int64_t full[3] = {static_cast<std::int64_t>(2 * grid.nx() - 1),
                                      static_cast<std::int64_t>(2 * grid.ny() - 1),
                                      static_cast<std::int64_t>(2 * grid.nz() - 1)};
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const std::int64_t mi = static_cast<std::int64_t>(i) - o[0];
            if (mi < 0 || mi >= full[0]) continue;
            for (std::size_t jj = 0; jj < grid.ny(); ++jj) {
                const std::int64_t mj = static_cast<std::int64_t>(jj) - o[1];
                if (mj < 0 || mj >= full[1]) continue;
                const double* row =
                    real.data() + (static_cast<std::size_t>(mi) * pad[1] + static_cast<std::size_t>(mj)) * pad[2];
                const std::size_t base = grid.linear(i, jj, 0);
                for (std::size_t l = 0; l < grid.nz(); ++l) {
                    const std::int64_t ml = static_cast<std::int64_t>(l) - o[2];
                    if (ml < 0 || ml >= full[2]) continue;
                    const double value = scale * row[ml];
                    out_j[base + l] = value;
                    kept += value * value;
                }
            }
        }
        if (diagnostics != nullptr) {
            for (std::int64_t mi = 0; mi < full[0]; ++mi) {
                for (std::int64_t mj = 0; mj < full[1]; ++mj) {
                    const double* row = real.data() + (static_cast<std::size_t>(mi) * pad[1] +
                                                       static_cast<std::size_t>(mj)) * pad[2];
                    for (std::int64_t ml = 0; ml < full[2]; ++ml) {
                        const double value = scale * row[ml];
                        total += value * value;
                    }
                }
            }
        }
    }
    if (diagnostics != nullptr) {
        diagnostics->kept_energy = grid.cell_volume() * kept;
        diagnostics->discarded_energy = std::max(0.0, grid.cell_volume() * (total - kept));
    }
    leray_project_in_place(out);
    return out;
}

}  // namespace

VectorField bilinear_form(const VectorField& f, const VectorField& g, const ConvolutionPlan& plan,
                          BilinearDiagnostics* diagnostics) {
    check_inputs(f, g);
    if (!(f.grid() == plan.grid())) throw std::invalid_argument("bilinear term: plan grid mismatch");
    if (plan.method() == ConvolutionMethod::direct) return bilinear_form_direct(f, g);
    return bilinear_fast(f, g, plan, diagnostics);
}

VectorField bilinear_term(const VectorField& v, const ConvolutionPlan& plan,
                          BilinearDiagnostics* diagnostics) {
    return bilinear_form(v, v, plan, diagnostics);
}

VectorField bilinear_form_direct(const VectorField& f, const VectorField& g) {
    check_inputs(f, g);
    const GridSpec& grid = f.grid();
    const auto o = grid.origin_steps();
    const std::int64_t n[3] = {static_cast<std::int64_t>(grid.nx()),
                               static_cast<std::int64_t>(grid.ny()),
                               static_cast<std::int64_t>(grid.nz())};
    VectorField out(grid);

    const auto total = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for num_threads(worker_count())
    for (std::ptrdiff_t kq = 0; kq < total; ++kq) {
        const auto k_lin = static_cast<std::size_t>(kq);
        const std::int64_t kc[3] = {static_cast<std::int64_t>(k_lin / (grid.ny() * grid.nz())),
                                    static_cast<std::int64_t>((k_lin / grid.nz()) % grid.ny()),
                                    static_cast<std::int64_t>(k_lin % grid.nz())};
        Vec3 sum{0.0, 0.0, 0.0};
        for (std::size_t l_lin = 0; l_lin < grid.size(); ++l_lin) {
            const std::int64_t lc[3] = {static_cast<std::int64_t>(l_lin / (grid.ny() * grid.nz())),
                                        static_cast<std::int64_t>((l_lin / grid.nz()) % grid.ny()),
                                        static_cast<std::int64_t>(l_lin % grid.nz())};
            // k - l in grid indices: (o + kc) - (o + lc) - o.
            std::int64_t d[3];
            bool inside = true;
            for (int a = 0; a < 3; ++a) {
                d[a] = kc[a] - lc[a] - o[static_cast<std::size_t>(a)];
                inside = inside && d[a] >= 0 && d[a] < n[a];
            }
            if (!inside) continue;
            const Vec3 l = grid.wavenumber_at(l_lin);
            const Vec3 fkl = f.at(grid.linear(static_cast<std::size_t>(d[0]), static_cast<std::size_t>(d[1]),
                                              static_cast<std::size_t>(d[2])));
            const double w = dot(l, fkl);
            const Vec3 gl = g.at(l_lin);
            sum[0] += w * gl[0];
            sum[1] += w * gl[1];
            sum[2] += w * gl[2];
        }
        const double hv = grid.cell_volume();
        out.set(k_lin, leray_project_point(grid.wavenumber_at(k_lin), {hv * sum[0], hv * sum[1], hv * sum[2]}));
    }
    out.set_solenoidal(true);
    return out;
}

VectorField bilinear_term_direct(const VectorField& v) { return bilinear_form_direct(v, v); }

}  // namespace tornado
