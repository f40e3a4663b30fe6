#include "gravwave/paracalc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gravwave/decomposition.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave {
namespace {

struct Mode {
  int m1, m2;
  complex c;
};

std::vector<Mode> significant_modes(const SpectralField& F, double threshold) {
  const Grid& g = F.grid();
  double peak = 0.0;
  for (const complex& c : F.values()) peak = std::max(peak, std::norm(c));
  std::vector<Mode> out;
  if (peak == 0.0) return out;
  const double cut = threshold * threshold * peak;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (std::norm(F(i, j)) > cut) out.push_back({g.mode(i), g.mode(j), F(i, j)});
  return out;
}

SpectralField raw_paraproduct(const SpectralField& a, const SpectralField& f,
                              const ParaOptions& opts, double scale) {
  const Grid& g = a.grid();
  if (!(f.grid() == g)) throw std::invalid_argument("paraproduct: grid mismatch");
  const int n = g.n();
  const std::vector<Mode> am = significant_modes(a, opts.threshold);
  const std::vector<Mode> fm = significant_modes(f, opts.threshold);
  // The weight vanishes once |zeta| >= 1.5 2^-gap |zeta + 2 eta|.
  const double cone = 1.5 * std::ldexp(1.0, -opts.gap);
  SpectralField out(g);
  const double factor = scale / (g.period() * g.period());
  for (const Mode& z : am) {
    const double zn = std::sqrt(double(z.m1 * z.m1 + z.m2 * z.m2));
    for (const Mode& e : fm) {
      const int x1 = z.m1 + e.m1, x2 = z.m2 + e.m2;
      if (std::abs(x1) >= n / 2 || std::abs(x2) >= n / 2) continue;
      const int s1 = z.m1 + 2 * e.m1, s2 = z.m2 + 2 * e.m2;
      if (s1 == 0 && s2 == 0) continue;
      const double sn = std::sqrt(double(s1 * s1 + s2 * s2));
      if (zn >= cone * sn) continue;
      const double w = paraproduct_weight(zn / sn, opts.gap);
      out((x1 + n) % n, (x2 + n) % n) += factor * w * z.c * e.c;
    }
  }
  return out;
}

}  // namespace

double paraproduct_weight(double ratio, int gap) { return lp_low_weight(ratio, -gap); }

double paraproduct_normalization(const Grid& grid, const ParaOptions& opts) {
  // T_1 applied to the lowest mode: only zeta = 0 contributes.
  static_cast<void>(grid);
  return 1.0 / paraproduct_weight(0.0, opts.gap);
}

SpectralField paraproduct(const SpectralField& a, const SpectralField& f, const ParaOptions& opts) {
  return raw_paraproduct(a, f, opts, paraproduct_normalization(a.grid(), opts));
}

RealField paraproduct(const RealField& a, const RealField& f, const ParaOptions& opts) {
  return inverse(paraproduct(transform(a), transform(f), opts));
}

RealField remainder(const RealField& f, const RealField& g, const ParaOptions& opts) {
  return f * g - paraproduct(f, g, opts) - paraproduct(g, f, opts);
}

RealField composition_error(const RealField& a, const RealField& b, const RealField& f,
                            const ParaOptions& opts) {
  return paraproduct(a, paraproduct(b, f, opts), opts) - paraproduct(a * b, f, opts);
}

SpectralField good_unknown(const RealField& h, const RealField& phi, const RealField& B,
                           const ParaOptions& opts) {
  const SpectralField tbh = paraproduct(transform(B), transform(h), opts);
  SpectralField out = transform(h);
  out += complex(0.0, 1.0) * apply_symbol(transform(phi) - tbh, symbols::half_grad());
  return out;
}

}  // namespace gravwave
