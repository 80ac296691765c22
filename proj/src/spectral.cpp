#include "invlab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <algorithm>
#include <map>
#include <new>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "invlab/error.hpp"

namespace invlab::spectral {
namespace {

using cplx = std::complex<double>;

// SIMD-aligned scratch owned through fftw_malloc.
template <class T>
class AlignedBuffer {
 public:
  explicit AlignedBuffer(std::size_t n) : p_(static_cast<T*>(fftw_malloc(n * sizeof(T)))) {
    if (!p_) throw std::bad_alloc();
  }
  ~AlignedBuffer() { fftw_free(p_); }
  AlignedBuffer(const AlignedBuffer&) = delete;
  AlignedBuffer& operator=(const AlignedBuffer&) = delete;
  T* get() { return p_; }
  T& operator[](std::size_t i) { return p_[i]; }

 private:
  T* p_;
};
using RealBuffer = AlignedBuffer<double>;
using ComplexBuffer = AlignedBuffer<fftw_complex>;

// FFTW real-to-complex plans for one (nx, ny); the half spectrum keeps
// k2 = 0..ny/2. The planner is not thread-safe, so creation is serialised;
// execution through the new-array interface is reentrant.
class PlanPair {
 public:
  PlanPair(int nx, int ny)
      : real_(static_cast<std::size_t>(nx) * ny), half_(static_cast<std::size_t>(nx) * (ny / 2 + 1)) {
    RealBuffer real(real_);
    ComplexBuffer spec(half_);
    fwd_ = fftw_plan_dft_r2c_2d(nx, ny, real.get(), spec.get(), FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_2d(nx, ny, spec.get(), real.get(), FFTW_ESTIMATE);
  }
  ~PlanPair() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;

  std::size_t real_size() const { return real_; }
  std::size_t half_size() const { return half_; }

  void forward(RealBuffer& in, ComplexBuffer& out) const {
    fftw_execute_dft_r2c(fwd_, in.get(), out.get());
  }
  // Destroys `in`.
  void backward(ComplexBuffer& in, RealBuffer& out) const {
    fftw_execute_dft_c2r(bwd_, in.get(), out.get());
  }

 private:
  std::size_t real_;
  std::size_t half_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

const PlanPair& plans_for(const Grid2D& g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{g.nx, g.ny}];
  if (!slot) slot = std::make_unique<PlanPair>(g.nx, g.ny);
  return *slot;
}

double kappa(int k, double length) { return k * (2.0 * std::numbers::pi / length); }

// c * iκ, written out so that no 0 * x terms enter the rounding.
cplx times_i(cplx c, double kap) { return {-kap * c.imag(), kap * c.real()}; }

}  // namespace

Spectrum forward(const Field& f) {
  const Grid2D& g = f.grid;
  if (const long bad = f.first_nonfinite(); bad >= 0) {
    const int j = static_cast<int>(bad / g.ny);
    const int k = static_cast<int>(bad % g.ny);
    std::ostringstream msg;
    msg << "forward: non-finite value " << f.values[bad] << " at node (" << j
        << ", " << k << ")";
    throw NonFiniteError(msg.str(), j, k);
  }
  const PlanPair& plans = plans_for(g);
  const int nh = g.ny / 2 + 1;
  RealBuffer in(plans.real_size());
  std::copy(f.values.begin(), f.values.end(), in.get());
  ComplexBuffer out(plans.half_size());
  plans.forward(in, out);
  const cplx* half = reinterpret_cast<const cplx*>(out.get());

  Spectrum s(g);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (int i1 = 0; i1 < g.nx; ++i1) {
    const int m1 = (g.nx - i1) % g.nx;
    const cplx* row = half + static_cast<std::size_t>(i1) * nh;
    for (int i2 = 0; i2 < nh; ++i2) {
      const cplx c = row[i2] * scale;
      s.coeffs[g.index(i1, i2)] = c;
      if (i2 > 0 && 2 * i2 < g.ny) s.coeffs[g.index(m1, g.ny - i2)] = std::conj(c);
    }
  }
  return s;
}

Field inverse_unchecked(const Spectrum& s) {
  const Grid2D& g = s.grid;
  const PlanPair& plans = plans_for(g);
  const int nh = g.ny / 2 + 1;
  ComplexBuffer in(plans.half_size());
  auto* half = reinterpret_cast<cplx*>(in.get());
  for (int i1 = 0; i1 < g.nx; ++i1)
    for (int i2 = 0; i2 < nh; ++i2)
      half[static_cast<std::size_t>(i1) * nh + i2] = s.coeffs[g.index(i1, i2)];
  RealBuffer out(plans.real_size());
  plans.backward(in, out);
  Field f(g);
  std::copy(out.get(), out.get() + plans.real_size(), f.values.begin());
  return f;
}

Field inverse(const Spectrum& s) {
  const double defect = s.hermitian_defect();
  if (defect > 1e-9 * std::max(1.0, s.max_abs())) {
    std::ostringstream msg;
    msg << "inverse: spectrum is not Hermitian-symmetric (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
  return inverse_unchecked(s);
}

Spectrum ddx1(const Spectrum& s) {
  const Grid2D& g = s.grid;
  Spectrum out(g);
  for (int i1 = 0; i1 < g.nx; ++i1) {
    const int k1 = Grid2D::wavenumber(i1, g.nx);
    if (2 * k1 == g.nx) continue;
    const double kap = kappa(k1, g.lx);
    for (int i2 = 0; i2 < g.ny; ++i2)
      out.coeffs[g.index(i1, i2)] = times_i(s.coeffs[g.index(i1, i2)], kap);
  }
  return out;
}

Spectrum ddx2(const Spectrum& s) {
  const Grid2D& g = s.grid;
  Spectrum out(g);
  for (int i1 = 0; i1 < g.nx; ++i1) {
    for (int i2 = 0; i2 < g.ny; ++i2) {
      const int k2 = Grid2D::wavenumber(i2, g.ny);
      if (2 * k2 == g.ny) continue;
      out.coeffs[g.index(i1, i2)] = times_i(s.coeffs[g.index(i1, i2)], kappa(k2, g.ly));
    }
  }
  return out;
}

Spectrum laplacian(const Spectrum& s) {
  const Grid2D& g = s.grid;
  Spectrum out(g);
  for (int i1 = 0; i1 < g.nx; ++i1) {
    const double a = kappa(Grid2D::wavenumber(i1, g.nx), g.lx);
    for (int i2 = 0; i2 < g.ny; ++i2) {
      const double b = kappa(Grid2D::wavenumber(i2, g.ny), g.ly);
      out.coeffs[g.index(i1, i2)] = -(a * a + b * b) * s.coeffs[g.index(i1, i2)];
    }
  }
  return out;
}

Spectrum poisson_solve(const Spectrum& omega) {
  const Grid2D& g = omega.grid;
  if (std::abs(omega.coeffs[0]) > 1e-10) {
    std::ostringstream msg;
    msg << "poisson_solve: vorticity has nonzero mean " << omega.coeffs[0].real()
        << "; incompatible with a periodic stream function";
    throw ValidationError(msg.str());
  }
  Spectrum psi(g);
  for (int i1 = 0; i1 < g.nx; ++i1) {
    const double a = kappa(Grid2D::wavenumber(i1, g.nx), g.lx);
    for (int i2 = 0; i2 < g.ny; ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      const double b = kappa(Grid2D::wavenumber(i2, g.ny), g.ly);
      psi.coeffs[g.index(i1, i2)] = -omega.coeffs[g.index(i1, i2)] / (a * a + b * b);
    }
  }
  return psi;
}

double x2_mean_defect(const Spectrum& s) {
  double worst = 0.0;
  for (int i1 = 0; i1 < s.grid.nx; ++i1)
    worst = std::max(worst, std::abs(s.coeffs[s.grid.index(i1, 0)]));
  return worst;
}

Spectrum antideriv_x2(const Spectrum& theta) {
  const Grid2D& g = theta.grid;
  if (const double d = x2_mean_defect(theta); d > 1e-10) {
    std::ostringstream msg;
    msg << "antideriv_x2: scalar has nonzero x2-mean (|c(k1,0)| up to " << d
        << "); -d/dx2 psi = theta has no periodic solution";
    throw ValidationError(msg.str());
  }
  Spectrum psi(g);
  for (int i1 = 0; i1 < g.nx; ++i1) {
    for (int i2 = 1; i2 < g.ny; ++i2) {
      const int k2 = Grid2D::wavenumber(i2, g.ny);
      if (2 * k2 == g.ny) continue;
      psi.coeffs[g.index(i1, i2)] =
          -theta.coeffs[g.index(i1, i2)] / cplx(0.0, kappa(k2, g.ly));
    }
  }
  return psi;
}

void dealias_in_place(Spectrum& s) {
  const Grid2D& g = s.grid;
  for (int i1 = 0; i1 < g.nx; ++i1) {
    const bool cut1 = 3 * std::abs(Grid2D::wavenumber(i1, g.nx)) > g.nx;
    for (int i2 = 0; i2 < g.ny; ++i2) {
      const bool cut2 = 3 * std::abs(Grid2D::wavenumber(i2, g.ny)) > g.ny;
      if (cut1 || cut2) s.coeffs[g.index(i1, i2)] = 0.0;
    }
  }
}

Spectrum dealias(const Spectrum& s) {
  Spectrum out = s;
  dealias_in_place(out);
  return out;
}

}  // namespace invlab::spectral
