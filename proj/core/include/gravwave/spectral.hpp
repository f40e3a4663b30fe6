#pragma once

#include <functional>
#include <string>

#include "gravwave/grid.hpp"

namespace gravwave {

// Fourier convention: Fu(xi) = int e^{-i x.xi} u(x) dx, approximated by
// (R/n)^2 times the DFT sum; the inverse is R^{-2} sum_xi e^{i x.xi} Fu(xi).

SpectralField transform(const RealField& f);
SpectralField transform(const ComplexField& f);
/// Inverse transform keeping the real part of the samples.
RealField inverse(const SpectralField& F);
ComplexField inverse_complex(const SpectralField& F);

/// Radial-or-vector Fourier multiplier evaluated on lattice frequencies.
struct Symbol {
  std::function<complex(double xi1, double xi2)> eval;
  std::string name;
  /// Negative powers of |xi|: the zero mode of the input must vanish.
  bool singular_at_zero = false;
  /// Odd in xi: the Nyquist lines are zeroed so real data stays real.
  bool odd = false;
};

namespace symbols {
Symbol abs_grad();                       // |grad|
Symbol half_grad();                      // Lambda = |grad|^{1/2}
Symbol abs_grad_pow(double s);           // |grad|^s
Symbol bessel_pow(double s);             // <grad>^s
Symbol partial(int axis);                // i xi_axis
Symbol laplacian();                      // -|xi|^2
Symbol poisson(double y, double lambda = 1.0);  // e^{y lambda |xi|}
Symbol half_wave(double t, int sign);    // e^{sign i t Lambda}
}  // namespace symbols

/// Thrown when a negative power of |grad| meets a field with nonzero mean.
class IllPosedSymbol : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

SpectralField apply_symbol(const SpectralField& F, const Symbol& symbol);
/// Convenience: inverse(apply_symbol(transform(f), symbol)).
RealField apply_symbol(const RealField& f, const Symbol& symbol);

/// Keeps the modes with |m_1|, |m_2| strictly below fraction * n/2 (so the
/// Nyquist lines always go). fraction = 2/3 is the quadratic rule, 1/2 the
/// cubic one: products of two (three) truncated factors alias only outside
/// the kept band.
SpectralField truncate(const SpectralField& F, double fraction);
RealField truncate(const RealField& f, double fraction);

inline constexpr double kQuadraticRule = 2.0 / 3.0;
inline constexpr double kCubicRule = 0.5;

/// Product of two sample fields with both factors and the result truncated
/// to the quadratic dealiasing band.
RealField dealiased_product(const RealField& a, const RealField& b);

/// Gradient components (d1 f, d2 f) computed spectrally.
struct Gradient {
  RealField d1;
  RealField d2;
};
Gradient gradient(const RealField& f);
RealField divergence(const RealField& v1, const RealField& v2);

/// Conjugate reflection F(-xi)^*: the coefficients of the pointwise
/// conjugate field.
SpectralField conj_reflect(const SpectralField& F);

/// Relative deviation from Hermitian symmetry, max |F(-xi)^* - F(xi)| / max|F|.
double hermitian_defect(const SpectralField& F);

}  // namespace gravwave
