#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gravwave/dispersion.hpp"
#include "gravwave/norms.hpp"
#include "gravwave/spectral.hpp"
#include "test_support.hpp"

using namespace gravwave;
using gravwave::testing::max_abs;
using gravwave::testing::max_abs_diff;
constexpr double pi = std::numbers::pi;

namespace {

SpectralField single_mode(const Grid& g, int m1, int m2, complex c) {
  SpectralField U(g);
  U((m1 + g.n()) % g.n(), (m2 + g.n()) % g.n()) = c;
  return U;
}

SpectralField random_spectrum(const Grid& g, std::uint64_t seed) {
  const RealField a = gravwave::testing::random_field(g, seed, 0.8);
  const RealField b = gravwave::testing::random_field(g, seed + 7, 0.8);
  return transform(a) + complex(0.0, 1.0) * transform(b);
}

DecayCurve synthetic(double (*f)(double), double t0, double t1, int count) {
  DecayCurve c;
  for (int i = 0; i < count; ++i) {
    const double t = t0 * std::pow(t1 / t0, double(i) / (count - 1));
    c.times.push_back(t);
    c.values.push_back(f(t));
  }
  return c;
}

}  // namespace

TEST_CASE("linear propagator on a single mode") {
  const Grid g(16, 2 * pi);
  const complex c(0.7, -0.4);
  const SpectralField U = single_mode(g, 3, 4, c);
  const double t = 2.3;
  const SpectralField V = propagate_linear(U, t);
  CHECK(std::abs(V(3, 4) - c * std::polar(1.0, -t * std::sqrt(5.0))) < 1e-15);
  CHECK(max_abs(V) == doctest::Approx(std::abs(c)));
  CHECK(max_abs_diff(propagate_linear(U, 0.0), U) == 0.0);
}

TEST_CASE("group property and isometry") {
  const Grid g(32, 4 * pi);
  const SpectralField U = random_spectrum(g, 17);
  const SpectralField a = propagate_linear(propagate_linear(U, 1.25), 3.5);
  const SpectralField b = propagate_linear(U, 4.75);
  CHECK(max_abs_diff(a, b) <= 1e-13 * max_abs(U));
  CHECK(max_abs_diff(propagate_linear(b, -4.75), U) <= 1e-13 * max_abs(U));
  const double l2 = sobolev_norm(U, 0.0);
  for (double t : {0.1, 10.0, 1e3})
    CHECK(sobolev_norm(propagate_linear(U, t), 0.0) == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("Gaussian data is real and centred") {
  const Grid g(64, 8 * pi);
  const SpectralField G = gaussian_data(g);
  CHECK(hermitian_defect(G) < 1e-14);
  const RealField u = inverse(G);
  const double peak = sup_norm(u);
  CHECK(u(32, 32) == doctest::Approx(peak));
  // Sum of exp(-|xi|^2/2) over the lattice times R^{-2} is close to 1/(2 pi).
  CHECK(peak == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-6));
}

TEST_CASE("decay curve of a single mode is flat") {
  const Grid g(16, 2 * pi);
  const complex c(1.5, 2.0);
  const SpectralField U = single_mode(g, 2, -1, c);
  const DecayCurve curve = decay_curve(U, {0.0, 1.0, 5.0, 9.0, 17.0, 40.0, 90.0});
  for (double v : curve.values) CHECK(v == doctest::Approx(std::abs(c) / (4 * pi * pi)).epsilon(1e-13));
  CHECK(curve.fit_window.first == 5.0);
  CHECK(curve.fit_window.second == doctest::Approx(4 * pi));
  CHECK(std::abs(fit_decay(curve, {0.0, 100.0})) < 1e-12);
  CHECK_THROWS_AS(decay_curve(U, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("wrap time") {
  CHECK(wrap_time(100 * pi, 1.0) == doctest::Approx(200 * pi));
  CHECK(wrap_time(10.0, 4.0) == doctest::Approx(40.0));
}

TEST_CASE("fitted slopes of synthetic curves") {
  const DecayCurve flat = synthetic([](double) { return 3.0; }, 1.0, 100.0, 20);
  CHECK(std::abs(fit_decay(flat, {1.0, 100.0})) < 1e-12);
  const DecayCurve inv = synthetic([](double t) { return 1.0 / (1.0 + t); }, 5.0, 40.0, 20);
  CHECK(fit_decay(inv, {5.0, 40.0}) == doctest::Approx(-1.0).epsilon(1e-3));
  const DecayCurve root = synthetic([](double t) { return 1.0 / std::sqrt(t); }, 1e3, 1e4, 20);
  CHECK(fit_decay(root, {1e3, 1e4}) == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK_THROWS_AS(fit_decay(inv, {5.0, 6.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay(inv, {100.0, 200.0}), std::invalid_argument);
}

TEST_CASE("W6 and Strichartz norms of simple data") {
  const Grid g(16, 2 * pi);
  const complex c(0.0, 2.0);
  const double base = std::abs(c) / (4 * pi * pi);
  // |xi| = 2: sum of 2^j for j <= 6.
  CHECK(w6_norm(single_mode(g, 2, 0, c)) == doctest::Approx(127 * base).epsilon(1e-13));
  const SpectralField U = single_mode(g, 1, 0, c);
  CHECK(w6_norm(U) == doctest::Approx(7 * base).epsilon(1e-13));
  for (double T : {1.0, 10.0})
    CHECK(strichartz_norm(U, T, T / 8) == doctest::Approx(std::sqrt(T) * 7 * base).epsilon(1e-12));
  CHECK(strichartz_norm(SpectralField(g), 3.0, 0.5) == 0.0);
  CHECK_THROWS_AS(strichartz_norm(U, 0.0), std::invalid_argument);
}
