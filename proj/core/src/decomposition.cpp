#include "gravwave/decomposition.hpp"

#include <algorithm>
#include <cmath>

namespace gravwave {
namespace {

double bump_tail(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = bump_tail(t);
  const double b = bump_tail(1.0 - t);
  return a / (a + b);
}

}  // namespace

double lp_profile(double r) { return smooth_step(2.0 - (4.0 / 3.0) * std::abs(r)); }

double lp_low_weight(double r, int k) { return lp_profile(std::ldexp(r, -k)); }

double lp_piece(double r, int k) {
  return lp_profile(std::ldexp(r, -k)) - lp_profile(std::ldexp(r, -(k - 1)));
}

SpectralField lp_project(const SpectralField& F, int k) {
  const Grid& g = F.grid();
  SpectralField out(g);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      if (i == 0 && j == 0) continue;
      const double w = lp_piece(g.freq_norm(i, j), k);
      if (w != 0.0) out(i, j) = w * F(i, j);
    }
  }
  return out;
}

SpectralField lp_low(const SpectralField& F, int k) {
  const Grid& g = F.grid();
  SpectralField out(g);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      const double w = lp_low_weight(g.freq_norm(i, j), k);
      if (w != 0.0) out(i, j) = w * F(i, j);
    }
  }
  return out;
}

std::pair<int, int> lp_band_range(const Grid& grid) {
  // phi_k is supported in 3/8 2^k <= |xi| <= 3/2 2^k.
  const int lo = static_cast<int>(std::floor(std::log2(grid.min_freq() / 1.5)));
  const int hi = static_cast<int>(std::ceil(std::log2(grid.max_freq() / 0.375)));
  return {lo, hi};
}

double distance_from_center(const Grid& grid, int i1, int i2) {
  const double c = 0.5 * grid.period();
  auto wrap = [&](double d) {
    d = std::abs(d);
    return std::min(d, grid.period() - d);
  };
  return std::hypot(wrap(grid.coord(i1) - c), wrap(grid.coord(i2) - c));
}

int spatial_cutoff_top(const Grid& grid) {
  const double limit = std::numbers::sqrt2 * grid.period();
  int j = 0;
  while (std::ldexp(1.0, j + 1) <= limit) ++j;
  return j;
}

double spatial_cutoff_weight(const Grid& grid, double r, int j) {
  const int top = spatial_cutoff_top(grid);
  if (j < 0 || j > top) return 0.0;
  if (top == 0) return 1.0;
  if (j == 0) return lp_profile(r);
  if (j == top) return 1.0 - lp_profile(std::ldexp(r, -(j - 1)));
  return lp_piece(r, j);
}

RealField spatial_cutoff(const RealField& f, int j) {
  const Grid& g = f.grid();
  RealField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double w = spatial_cutoff_weight(g, distance_from_center(g, i1, i2), j);
      if (w != 0.0) out(i1, i2) = w * f(i1, i2);
    }
  }
  return out;
}

}  // namespace gravwave
