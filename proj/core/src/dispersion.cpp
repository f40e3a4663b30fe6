#include "gravwave/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "gravwave/decomposition.hpp"
#include "gravwave/fit.hpp"
#include "gravwave/norms.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave {

SpectralField propagate_linear(const SpectralField& F, double t) {
  return apply_symbol(F, symbols::half_wave(t, -1));
}

SpectralField gaussian_data(const Grid& grid, double sigma) {
  SpectralField F(grid);
  const double shell = (grid.n() / 2) * grid.dk();
  const double c = 0.5 * grid.period();
  for (int i = 0; i < grid.n(); ++i)
    for (int j = 0; j < grid.n(); ++j) {
      if (grid.is_nyquist(i) || grid.is_nyquist(j)) continue;
      const double k = grid.freq_norm(i, j);
      if (k >= shell) continue;
      const double amp = std::exp(-k * k / (2 * sigma * sigma));
      F(i, j) = std::polar(amp, -c * (grid.freq(i) + grid.freq(j)));
    }
  return F;
}

double wrap_time(double period, double k_typ) { return 2.0 * period * std::sqrt(k_typ); }

DecayCurve decay_curve(const SpectralField& u0, const std::vector<double>& times,
                       std::optional<int> k) {
  DecayCurve curve;
  curve.k = k;
  const SpectralField base = k ? lp_project(u0, *k) : u0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("decay_curve: times must increase");
    curve.times.push_back(times[i]);
    curve.values.push_back(sup_norm(inverse_complex(propagate_linear(base, times[i]))));
  }
  const double k_typ = k ? std::ldexp(1.0, *k) : 1.0;
  curve.fit_window = {5.0, wrap_time(u0.grid().period(), k_typ)};
  try {
    curve.fitted_slope = fit_decay(curve, curve.fit_window);
  } catch (const std::invalid_argument&) {
    curve.fitted_slope = 0.0;
  }
  return curve;
}

double fit_decay(const DecayCurve& curve, std::pair<double, double> window) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    const double t = curve.times[i];
    if (t < window.first || t > window.second) continue;
    x.push_back(std::log1p(t));
    y.push_back(std::log(curve.values[i]));
  }
  if (x.size() < 5) throw std::invalid_argument("fit_decay: fewer than 5 samples in window");
  return fit_line_slope(x, y);
}

namespace {

std::vector<double> frequency_magnitudes(const Grid& g) {
  std::vector<double> k(g.size());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) k[g.index(i, j)] = g.freq_norm(i, j);
  return k;
}

// sum_{j<=6} sup | |grad|^j F | with the inverse transforms done in place.
double w6_from(const SpectralField& F, const std::vector<double>& k,
               detail::AlignedVector<complex>& D, detail::AlignedVector<complex>& work) {
  const Grid& g = F.grid();
  std::copy(F.values().begin(), F.values().end(), D.begin());
  const double w = 1.0 / (g.period() * g.period());
  double total = 0.0;
  for (int j = 0; j <= 6; ++j) {
    if (j > 0)
      for (std::size_t q = 0; q < k.size(); ++q) D[q] *= k[q];
    std::copy(D.begin(), D.end(), work.begin());
    detail::fft2_aligned(work.data(), g.n(), +1);
    double m = 0.0;
    for (const complex& v : work) m = std::max(m, std::norm(v));
    total += w * std::sqrt(m);
  }
  return total;
}

}  // namespace

double w6_norm(const SpectralField& F) {
  detail::AlignedVector<complex> D(F.size()), work(F.size());
  return w6_from(F, frequency_magnitudes(F.grid()), D, work);
}

double strichartz_norm(const SpectralField& u0, double T, double dt) {
  if (!(T > 0.0)) throw std::invalid_argument("strichartz_norm: T must be positive");
  if (dt <= 0.0) dt = T / kStrichartzSteps;
  const int steps = std::max(1, static_cast<int>(std::lround(T / dt)));
  const double h = T / steps;
  const std::vector<double> k = frequency_magnitudes(u0.grid());
  std::vector<double> lambda(k.size());
  for (std::size_t q = 0; q < k.size(); ++q) lambda[q] = std::sqrt(k[q]);
  SpectralField u(u0.grid());
  detail::AlignedVector<complex> D(u0.size()), work(u0.size());
  double sum = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double t = (s + 0.5) * h;
    for (std::size_t q = 0; q < k.size(); ++q)
      u[q] = u0[q] == complex(0.0) ? complex(0.0) : u0[q] * std::polar(1.0, -t * lambda[q]);
    const double w = w6_from(u, k, D, work);
    sum += h * w * w;
  }
  return std::sqrt(sum);
}

}  // namespace gravwave
