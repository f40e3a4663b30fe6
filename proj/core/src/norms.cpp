#include "gravwave/norms.hpp"

#include <algorithm>
#include <cmath>

#include "gravwave/decomposition.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave {

double sobolev_norm(const SpectralField& F, double s) {
  const Grid& g = F.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double a = g.freq(i);
    for (int j = 0; j < g.n(); ++j) {
      const double b = g.freq(j);
      sum += std::pow(1.0 + a * a + b * b, s) * std::norm(F(i, j));
    }
  }
  return std::sqrt(sum) / g.period();
}

double l2_norm(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v * v;
  return std::sqrt(sum * f.grid().cell_area());
}

double l2_norm(const ComplexField& f) {
  double sum = 0.0;
  for (const complex& v : f.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().cell_area());
}

double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const ComplexField& f) {
  double m = 0.0;
  for (const complex& v : f.values()) m = std::max(m, std::norm(v));
  return std::sqrt(m);
}

double holder_norm(const SpectralField& F, double r) {
  const auto [lo, hi] = lp_band_range(F.grid());
  double norm = sup_norm(inverse_complex(lp_low(F, 0)));
  double high = 0.0;
  for (int k = std::max(lo, 1); k <= hi; ++k) {
    high = std::max(high, std::pow(2.0, k * r) *
                              sup_norm(inverse_complex(lp_project(F, k))));
  }
  return norm + high;
}

double holder_norm(const RealField& f, double r) { return holder_norm(transform(f), r); }

RealField z_weight(const Grid& grid, double alpha) {
  RealField w(grid);
  for (int i = 0; i < grid.n(); ++i)
    for (int j = 0; j < grid.n(); ++j)
      w(i, j) = std::pow(1.0 + distance_from_center(grid, i, j), alpha);
  return w;
}

double z_norm(const SpectralField& F, double alpha) {
  const ComplexField smooth =
      inverse_complex(apply_symbol(F, symbols::bessel_pow(kZDerivatives)));
  const RealField w = z_weight(F.grid(), alpha);
  double sum = 0.0;
  for (std::size_t k = 0; k < smooth.size(); ++k) sum += std::norm(w[k] * smooth[k]);
  return std::sqrt(sum * F.grid().cell_area());
}

double z_norm(const RealField& f, double alpha) { return z_norm(transform(f), alpha); }

double inner(const RealField& f, const RealField& g) {
  f.check_same(g);
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) sum += f[k] * g[k];
  return sum * f.grid().cell_area();
}

}  // namespace gravwave
