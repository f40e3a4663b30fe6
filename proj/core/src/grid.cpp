#include "gravwave/grid.hpp"

#include <algorithm>
#include <string>

namespace gravwave {

Grid::Grid(int n, double period) : n_(n), period_(period) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("grid period must be positive and finite");
  }
}

Grid make_grid(int n, double period) { return Grid(n, period); }

RealField operator*(const RealField& a, const RealField& b) {
  a.check_same(b);
  RealField out(a.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

ComplexField operator*(const ComplexField& a, const ComplexField& b) {
  a.check_same(b);
  ComplexField out(a.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

double mean(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

complex mean(const ComplexField& f) {
  complex s = 0.0;
  for (const complex& v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

bool all_finite(const RealField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](double v) { return std::isfinite(v); });
}

ComplexField to_complex(const RealField& f) {
  ComplexField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k];
  return out;
}

RealField real_part(const ComplexField& f) {
  RealField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].real();
  return out;
}

RealField imag_part(const ComplexField& f) {
  RealField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].imag();
  return out;
}

}  // namespace gravwave
