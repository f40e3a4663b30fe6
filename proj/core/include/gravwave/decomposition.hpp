#pragma once

#include <utility>

#include "gravwave/grid.hpp"

namespace gravwave {

/// Smooth radial cutoff: 1 on [0, 3/4], 0 on [3/2, inf), C-infinity and
/// nonincreasing in between.
double lp_profile(double r);

/// Dyadic piece phi_k(r) = phi(r / 2^k) - phi(r / 2^{k-1}).
double lp_piece(double r, int k);

/// Low-pass phi_{<=k}(r) = phi(r / 2^k).
double lp_low_weight(double r, int k);

/// Frequency projection P_k. The zero frequency is never retained.
SpectralField lp_project(const SpectralField& F, int k);
/// Low-pass P_{<=k}; keeps the mean.
SpectralField lp_low(const SpectralField& F, int k);

/// Inclusive range [k_lo, k_hi] of dyadic indices for which P_k can be
/// nonzero on this grid.
std::pair<int, int> lp_band_range(const Grid& grid);

/// Geodesic distance ||x|| of the sample (i1, i2) from the torus center
/// (R/2, R/2).
double distance_from_center(const Grid& grid, int i1, int i2);

/// Largest j with a nonzero spatial cutoff Q_j on this torus: the largest
/// j >= 0 with 2^j <= sqrt(2) R, or 0 if there is none.
int spatial_cutoff_top(const Grid& grid);

/// Weight of Q_j at distance r from the center.
double spatial_cutoff_weight(const Grid& grid, double r, int j);

/// Spatial cutoff Q_j f. Q_0 is the low part phi(||x||); the top index
/// absorbs the far tail so that the Q_j sum to the identity.
RealField spatial_cutoff(const RealField& f, int j);

}  // namespace gravwave
