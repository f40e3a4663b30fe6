#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace gravwave {

using complex = std::complex<double>;

/// Square torus (R/RZ)^2 sampled on an n x n uniform grid.
///
/// Samples are stored row-major with the first index along x1. Spectral
/// arrays use the same layout in standard DFT order, so index i carries the
/// signed lattice mode m(i) in [-n/2, n/2) and frequency 2*pi*m(i)/R.
class Grid {
 public:
  Grid(int n, double period);

  int n() const { return n_; }
  double period() const { return period_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  /// Physical spacing R/n.
  double spacing() const { return period_ / n_; }
  /// Lattice spacing 2*pi/R of the frequency grid.
  double dk() const { return 2.0 * std::numbers::pi / period_; }
  /// Quadrature weight (R/n)^2 of one sample.
  double cell_area() const { return spacing() * spacing(); }

  int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
  double freq(int i) const { return dk() * mode(i); }
  double coord(int i) const { return spacing() * i; }
  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * n_ + i2;
  }
  /// Index of the frequency -xi for the entry at (i1, i2).
  std::size_t reflected(int i1, int i2) const {
    return index((n_ - i1) % n_, (n_ - i2) % n_);
  }
  double freq_norm(int i1, int i2) const {
    const double a = freq(i1), b = freq(i2);
    return std::sqrt(a * a + b * b);
  }
  /// Largest |xi| on the lattice.
  double max_freq() const { return dk() * (n_ / 2) * std::numbers::sqrt2; }
  /// Smallest nonzero |xi| on the lattice.
  double min_freq() const { return dk(); }
  bool is_nyquist(int i) const { return i == n_ / 2; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.period_ == b.period_;
  }

 private:
  int n_;
  double period_;
};

Grid make_grid(int n, double period);

struct PhysicalTag {};
struct SpectralTag {};

/// n x n array of values attached to a grid. The tag separates sample-space
/// and coefficient-space arrays so that transforms cannot be skipped.
template <class T, class Tag>
class BasicField {
 public:
  using value_type = T;

  explicit BasicField(const Grid& grid) : grid_(grid), values_(grid.size(), T{}) {}
  BasicField(const Grid& grid, std::vector<T> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("field size does not match grid");
    }
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  T& operator[](std::size_t k) { return values_[k]; }
  const T& operator[](std::size_t k) const { return values_[k]; }
  T& operator()(int i1, int i2) { return values_[grid_.index(i1, i2)]; }
  const T& operator()(int i1, int i2) const { return values_[grid_.index(i1, i2)]; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }
  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }

  BasicField& operator+=(const BasicField& o) {
    check_same(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
  }
  BasicField& operator-=(const BasicField& o) {
    check_same(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
  }
  BasicField& operator*=(T s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

  friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
  friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
  friend BasicField operator*(BasicField a, T s) { return a *= s; }
  friend BasicField operator*(T s, BasicField a) { return a *= s; }
  friend BasicField operator-(BasicField a) { return a *= T(-1); }

  void check_same(const BasicField& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("fields live on different grids");
  }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using RealField = BasicField<double, PhysicalTag>;
using ComplexField = BasicField<complex, PhysicalTag>;
using SpectralField = BasicField<complex, SpectralTag>;

/// Pointwise product of sample fields (no dealiasing).
RealField operator*(const RealField& a, const RealField& b);
ComplexField operator*(const ComplexField& a, const ComplexField& b);

/// Evaluates f(x1, x2) at every grid point.
template <class F>
RealField sample(const Grid& grid, F&& f) {
  RealField out(grid);
  for (int i = 0; i < grid.n(); ++i)
    for (int j = 0; j < grid.n(); ++j) out(i, j) = f(grid.coord(i), grid.coord(j));
  return out;
}

double mean(const RealField& f);
complex mean(const ComplexField& f);
bool all_finite(const RealField& f);

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);

}  // namespace gravwave
