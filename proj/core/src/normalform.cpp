#include "gravwave/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gravwave/dtn.hpp"
#include "gravwave/fit.hpp"
#include "gravwave/norms.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave {
namespace {

double norm2(const Vec2& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1]); }
double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
Vec2 sum(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }

struct Mode {
  int m1, m2;
  Vec2 xi;
  complex c;
};

std::vector<Mode> modes(const SpectralField& F, double fraction, double threshold) {
  const Grid& g = F.grid();
  const SpectralField T = truncate(F, fraction);
  double peak = 0.0;
  for (const complex& c : T.values()) peak = std::max(peak, std::norm(c));
  std::vector<Mode> out;
  if (peak == 0.0) return out;
  const double cut = threshold * threshold * peak;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (std::norm(T(i, j)) > cut)
        out.push_back({g.mode(i), g.mode(j), {g.freq(i), g.freq(j)}, T(i, j)});
  return out;
}

}  // namespace

double m_symbol(const Vec2& xi1, const Vec2& xi2, Multiplier which) {
  const Vec2 xi = sum(xi1, xi2);
  const double a = norm2(xi1), b = norm2(xi2), s = norm2(xi);
  if (which == Multiplier::m1) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return (s * b - dot(xi, xi2)) / std::sqrt(b);
  }
  if (a == 0.0 || b == 0.0) return 0.0;
  return std::sqrt(s) * (a * b + dot(xi1, xi2)) / std::sqrt(a * b);
}

double phase(const Vec2& xi1, const Vec2& xi2, int mu, int nu) {
  return std::sqrt(norm2(sum(xi1, xi2))) - mu * std::sqrt(norm2(xi1)) - nu * std::sqrt(norm2(xi2));
}

complex m_mu_nu(const Vec2& xi1, const Vec2& xi2, int mu, int nu) {
  return complex(0.0, 0.25 * nu * m_symbol(xi1, xi2, Multiplier::m1) -
                          0.125 * mu * nu * m_symbol(xi1, xi2, Multiplier::m2));
}

SpectralField profile(const SpectralField& U, double t) {
  return apply_symbol(U, symbols::half_wave(t, +1));
}

SpectralField signed_component(const SpectralField& U, int sign) {
  return sign > 0 ? U : conj_reflect(U);
}

SpectralField bilinear_sum(const SpectralField& A, const SpectralField& B,
                           const std::function<complex(const Vec2&, const Vec2&)>& kernel,
                           const BilinearOptions& opts) {
  const Grid& g = A.grid();
  if (!(B.grid() == g)) throw std::invalid_argument("bilinear_sum: grid mismatch");
  const int n = g.n();
  const std::vector<Mode> am = modes(A, opts.input_fraction, opts.threshold);
  const std::vector<Mode> bm = modes(B, opts.input_fraction, opts.threshold);
  const double cut = opts.output_fraction * (n / 2);
  const double scale = 1.0 / (g.period() * g.period());
  SpectralField out(g);
  for (const Mode& a : am)
    for (const Mode& b : bm) {
      const int o1 = a.m1 + b.m1, o2 = a.m2 + b.m2;
      if (std::abs(o1) >= cut || std::abs(o2) >= cut) continue;
      out((o1 + n) % n, (o2 + n) % n) += scale * kernel(a.xi, b.xi) * a.c * b.c;
    }
  return out;
}

SpectralField quadratic_boundary(const SpectralField& U, double t, int mu, int nu,
                                 const BilinearOptions& opts) {
  auto kernel = [mu, nu](const Vec2& x1, const Vec2& x2) -> complex {
    const double ph = phase(x1, x2, mu, nu);
    if (ph == 0.0 || norm2(x1) == 0.0 || norm2(x2) == 0.0 || norm2(sum(x1, x2)) == 0.0)
      return 0.0;
    return m_mu_nu(x1, x2, mu, nu) / complex(0.0, ph);
  };
  const SpectralField W =
      bilinear_sum(signed_component(U, mu), signed_component(U, nu), kernel, opts);
  return t == 0.0 ? W : profile(W, t);
}

SpectralField n2_bilinear(const SpectralField& U, int mu, int nu, const BilinearOptions& opts) {
  auto kernel = [mu, nu](const Vec2& x1, const Vec2& x2) { return m_mu_nu(x1, x2, mu, nu); };
  return bilinear_sum(signed_component(U, mu), signed_component(U, nu), kernel, opts);
}

SpectralField n2_field(const SpectralField& U) {
  const SurfaceState s = from_complex_variable(U, 0.0);
  const RealField phi = truncate(s.phi, kQuadraticRule);
  const RealField ap = dtn_order0(phi);
  const Gradient gp = gradient(phi);
  const RealField q = ap * ap - gp.d1 * gp.d1 - gp.d2 * gp.d2;
  SpectralField out = truncate(transform(dtn_order1(s.h, phi)), kQuadraticRule);
  out += complex(0.0, 0.5) *
         apply_symbol(truncate(transform(q), kQuadraticRule), symbols::half_grad());
  return out;
}

ResidualRow residual_from_endpoints(const SpectralField& U0, const SpectralField& UT, double T,
                                    bool quadratic, const BilinearOptions& opts) {
  BilinearOptions band = opts;
  band.output_fraction = std::min(opts.output_fraction, kQuadraticRule);
  const SpectralField change = profile(UT, T) - U0;
  SpectralField rest = change;
  if (quadratic)
    for (int mu : {1, -1})
      for (int nu : {1, -1}) {
        rest -= quadratic_boundary(UT, T, mu, nu, band);
        rest += quadratic_boundary(U0, 0.0, mu, nu, band);
      }
  return {0.0, sobolev_norm(change, 0.0), sobolev_norm(rest, 0.0)};
}

ResidualReport residual_order(const std::function<SurfaceState(double)>& data, double T,
                              double dt, const std::vector<double>& epsilons,
                              const ZakharovParams& params, Scheme scheme) {
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("residual_order: T, dt > 0");
  const int steps = static_cast<int>(std::lround(T / dt));
  const double h = T / steps;
  ResidualReport report;
  std::vector<double> eps, d, r;
  for (double e : epsilons) {
    SurfaceState s = data(e);
    Zakharov engine(s.grid(), params);
    const SpectralField U0 = complex_variable(s);
    for (int k = 0; k < steps; ++k) s = engine.step(s, h, scheme);
    ResidualRow row =
        residual_from_endpoints(U0, complex_variable(s), steps * h, !params.linear_only);
    row.epsilon = e;
    report.rows.push_back(row);
    eps.push_back(e);
    d.push_back(row.duhamel);
    r.push_back(row.residual);
  }
  if (eps.size() >= 2) {
    report.slope_duhamel = fit_power_law(eps, d);
    report.slope_residual = fit_power_law(eps, r);
  }
  return report;
}

}  // namespace gravwave
