#include "invlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invlab/error.hpp"

namespace invlab {

Grid2D::Grid2D(int nx_, int ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
    throw ValidationError("grid: nx and ny must be even and >= 8 (got " +
                          std::to_string(nx) + "x" + std::to_string(ny) + ")");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw ValidationError("grid: periods lx, ly must be positive");
}

long Field::first_nonfinite() const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) return static_cast<long>(i);
  return -1;
}

Field& Field::operator+=(const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (auto& v : values) v *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += a * o.values[i];
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

Field hadamard(const Field& a, const Field& b) {
  Field out(a.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a.values[i] * b.values[i];
  return out;
}

double Spectrum::hermitian_defect() const {
  double worst = 0.0;
  for (int i1 = 0; i1 < grid.nx; ++i1) {
    const int m1 = (grid.nx - i1) % grid.nx;
    for (int i2 = 0; i2 < grid.ny; ++i2) {
      const int m2 = (grid.ny - i2) % grid.ny;
      const auto d = coeffs[grid.index(m1, m2)] - std::conj(coeffs[grid.index(i1, i2)]);
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

double Spectrum::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

Spectrum& Spectrum::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

}  // namespace invlab
