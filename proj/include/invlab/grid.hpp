#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace invlab {

/// Uniform periodic grid. Node (j, k) sits at (j*lx/nx, k*ly/ny); x2 is the
/// fast index in every flat array.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;

  Grid2D() = default;
  Grid2D(int nx_, int ny_, double lx_ = 2.0 * std::numbers::pi,
         double ly_ = 2.0 * std::numbers::pi);

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * ny + k;
  }
  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double x1(int j) const { return j * dx(); }
  double x2(int k) const { return k * dy(); }

  /// Signed wavenumber of FFT slot i for n points: i <= n/2 ? i : i - n.
  static int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }
  /// FFT slot of signed wavenumber k.
  static int slot(int k, int n) { return ((k % n) + n) % n; }

  bool operator==(const Grid2D&) const = default;
};

/// Real nodal samples on a grid.
struct Field {
  Grid2D grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid2D& g, double fill = 0.0)
      : grid(g), values(g.size(), fill) {}

  template <class F>
  static Field sample(const Grid2D& g, F&& f) {
    Field out(g);
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.ny; ++k)
        out.values[g.index(j, k)] = f(g.x1(j), g.x2(k));
    return out;
  }

  double& operator()(int j, int k) { return values[grid.index(j, k)]; }
  double operator()(int j, int k) const { return values[grid.index(j, k)]; }

  /// Index of the first non-finite value, or -1.
  long first_nonfinite() const;
  bool finite() const { return first_nonfinite() < 0; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);
  /// this += a * o
  Field& axpy(double a, const Field& o);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);
/// Pointwise product.
Field hadamard(const Field& a, const Field& b);

/// Fourier coefficients c(k1, k2) with f = sum c e^{i(κ1 x1 + κ2 x2)},
/// κ = 2πk/L. Stored in FFT slot order, k2 fastest.
struct Spectrum {
  Grid2D grid;
  std::vector<std::complex<double>> coeffs;

  Spectrum() = default;
  explicit Spectrum(const Grid2D& g) : grid(g), coeffs(g.size()) {}

  std::complex<double>& at(int k1, int k2) {
    return coeffs[grid.index(Grid2D::slot(k1, grid.nx), Grid2D::slot(k2, grid.ny))];
  }
  std::complex<double> at(int k1, int k2) const {
    return coeffs[grid.index(Grid2D::slot(k1, grid.nx), Grid2D::slot(k2, grid.ny))];
  }

  /// Largest |c(-k) - conj(c(k))| over all k.
  double hermitian_defect() const;
  double max_abs() const;

  Spectrum& operator+=(const Spectrum& o);
  Spectrum& operator*=(double a);
};

}  // namespace invlab
