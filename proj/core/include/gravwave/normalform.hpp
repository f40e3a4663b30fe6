#pragma once

#include <array>
#include <functional>
#include <vector>

#include "gravwave/grid.hpp"
#include "gravwave/zakharov.hpp"

namespace gravwave {

using Vec2 = std::array<double, 2>;

enum class Multiplier { m1, m2 };

/// m1 = (|xi1+xi2||xi2| - (xi1+xi2).xi2) / sqrt|xi2|,
/// m2 = sqrt|xi1+xi2| (|xi1||xi2| + xi1.xi2) / sqrt(|xi1||xi2|); 0 at vanishing frequencies.
double m_symbol(const Vec2& xi1, const Vec2& xi2, Multiplier which);

/// Phi_{mu nu} = sqrt|xi1+xi2| - mu sqrt|xi1| - nu sqrt|xi2|, mu, nu = +-1.
double phase(const Vec2& xi1, const Vec2& xi2, int mu, int nu);

/// Multiplier of N_{mu nu}[U_mu, U_nu]: (i nu/4) m1 - (i mu nu/8) m2.
complex m_mu_nu(const Vec2& xi1, const Vec2& xi2, int mu, int nu);

/// Lower bound |Phi_{mu nu}| >= c min(|xi1|, |xi2|, |xi1+xi2|)^{1/2}; the sharp
/// value is 2 - sqrt 2.
inline constexpr double kPhaseConstant = 0.5857;

/// Upsilon = e^{i t Lambda} U.
SpectralField profile(const SpectralField& U, double t);

/// U_+ = U, U_- = coefficients of the pointwise conjugate.
SpectralField signed_component(const SpectralField& U, int sign);

struct BilinearOptions {
  /// Input modes kept by truncate(., input_fraction).
  double input_fraction = 2.0 / 3.0;
  /// Output modes kept by truncate(., output_fraction); 1 keeps all but Nyquist.
  double output_fraction = 1.0;
  double threshold = 1e-14;
};

/// R^{-2} sum_{xi1+xi2=xi} k(xi1, xi2) A(xi1) B(xi2) over significant modes.
SpectralField bilinear_sum(const SpectralField& A, const SpectralField& B,
                           const std::function<complex(const Vec2&, const Vec2&)>& kernel,
                           const BilinearOptions& opts = {});

/// W_{mu nu}(t), with e^{-i t Lambda(xi)} W^(xi) = R^{-2} sum (m / i Phi) U_mu U_nu.
SpectralField quadratic_boundary(const SpectralField& U, double t, int mu, int nu,
                                 const BilinearOptions& opts = {});

/// N_{mu nu}[U_mu, U_nu].
SpectralField n2_bilinear(const SpectralField& U, int mu, int nu, const BilinearOptions& opts = {});

/// N2 = -|grad|(h|grad|phi) - div(h grad phi) + (i/2) Lambda((|grad|phi)^2 - |grad phi|^2)
/// evaluated on the grid with U = h + i Lambda phi, dealiased.
SpectralField n2_field(const SpectralField& U);

struct ResidualRow {
  double epsilon = 0.0;
  double duhamel = 0.0;   // |Upsilon(T) - Upsilon(0)|
  double residual = 0.0;  // after subtracting sum W(T) - W(0)
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  double slope_duhamel = 0.0;
  double slope_residual = 0.0;
};

/// (duhamel, residual) from the endpoints U(0), U(T). The boundary terms are
/// cut to the quadratic dealiasing band the evolution keeps; quadratic = false
/// is for flows without a quadratic nonlinearity, whose boundary terms vanish.
ResidualRow residual_from_endpoints(const SpectralField& U0, const SpectralField& UT, double T,
                                    bool quadratic = true, const BilinearOptions& opts = {});

/// Runs the evolution for each epsilon with data(epsilon) and reports the
/// log-log slopes of the Duhamel and residual sizes.
ResidualReport residual_order(const std::function<SurfaceState(double)>& data, double T,
                              double dt, const std::vector<double>& epsilons,
                              const ZakharovParams& params = {}, Scheme scheme = Scheme::ifrk4);

}  // namespace gravwave
