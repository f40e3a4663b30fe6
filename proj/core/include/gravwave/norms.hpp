#pragma once

#include "gravwave/grid.hpp"

namespace gravwave {

/// Default weight exponent of the periodic Z-norm.
inline constexpr double kZWeightExponent = 2.0 / 3.0;
/// Derivative count inside the Z-norm.
inline constexpr int kZDerivatives = 8;

/// (R^{-2} sum <xi>^{2s} |F(xi)|^2)^{1/2}.
double sobolev_norm(const SpectralField& F, double s);

/// L2 norm by plain Riemann quadrature.
double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);

double sup_norm(const RealField& f);
double sup_norm(const ComplexField& f);

/// Hoelder-Zygmund norm ||P_{<=0} u||_inf + sup_{k>0} 2^{kr} ||P_k u||_inf.
double holder_norm(const SpectralField& F, double r);
double holder_norm(const RealField& f, double r);

/// Spatial weight (1 + ||x||)^alpha used by the Z-norm.
RealField z_weight(const Grid& grid, double alpha = kZWeightExponent);

/// ||(1 + ||x||)^alpha <grad>^8 u||_{L2}.
double z_norm(const SpectralField& F, double alpha = kZWeightExponent);
double z_norm(const RealField& f, double alpha = kZWeightExponent);

/// L2 inner product int f g dx.
double inner(const RealField& f, const RealField& g);

}  // namespace gravwave
