#pragma once

#include "gravwave/grid.hpp"

namespace gravwave {

// Paraproducts for symbols a = a(x):
//   F(T_a f)(xi) = (C / R^2) sum_eta phi_{<=-gap}(|xi-eta| / |xi+eta|) Fa(xi-eta) Ff(eta),
// with the weight taken as 0 when xi + eta = 0 and C fixed by T_1 = id.
// gap = 10 is the standard choice; smaller gaps are useful to make the
// frequency cone visible on small grids. Sums run over modes whose
// coefficients exceed threshold * (largest coefficient); outputs on the
// Nyquist lines are dropped.

struct ParaOptions {
  int gap = 10;
  double threshold = 1e-14;
};

/// phi_{<=-gap}(ratio).
double paraproduct_weight(double ratio, int gap);

/// The normalization C, obtained by applying the unnormalized recipe with
/// a = 1 to a mean-free probe mode.
double paraproduct_normalization(const Grid& grid, const ParaOptions& opts = {});

SpectralField paraproduct(const SpectralField& a, const SpectralField& f,
                          const ParaOptions& opts = {});
RealField paraproduct(const RealField& a, const RealField& f, const ParaOptions& opts = {});

/// H(f, g) = fg - T_f g - T_g f.
RealField remainder(const RealField& f, const RealField& g, const ParaOptions& opts = {});

/// E(a, b) f = T_a T_b f - T_{ab} f.
RealField composition_error(const RealField& a, const RealField& b, const RealField& f,
                            const ParaOptions& opts = {});

/// Good unknown h + i Lambda (phi - T_B h).
SpectralField good_unknown(const RealField& h, const RealField& phi, const RealField& B,
                           const ParaOptions& opts = {});

}  // namespace gravwave
