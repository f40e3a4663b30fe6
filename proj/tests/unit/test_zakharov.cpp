#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gravwave/norms.hpp"
#include "gravwave/spectral.hpp"
#include "gravwave/zakharov.hpp"
#include "test_support.hpp"

using namespace gravwave;
using gravwave::testing::loglog_slope;
using gravwave::testing::max_abs_diff;
constexpr double pi = std::numbers::pi;

namespace {

const Grid& torus() {
  static const Grid g(32, 2 * pi);
  return g;
}

SurfaceState small_data(double eps) {
  const Grid& g = torus();
  const RealField h = sample(g, [&](double x, double y) {
    return eps * (std::cos(x) + 0.5 * std::sin(2 * y) + 0.3 * std::cos(x + y));
  });
  const RealField phi = sample(g, [&](double x, double y) {
    return eps * (std::sin(x) * std::cos(y) + 0.4 * std::cos(2 * x - y));
  });
  return make_state(h, phi);
}

double field_diff(const SurfaceState& a, const SurfaceState& b) {
  return std::max(max_abs_diff(a.h, b.h), max_abs_diff(a.phi, b.phi));
}

}  // namespace

TEST_CASE("state assembly and the complex variable") {
  const Grid& g = torus();
  const RealField c = sample(g, [](double x, double) { return std::cos(x); });
  const RealField zero(g);
  const SurfaceState hs = make_state(c, zero);
  const ComplexField u = inverse_complex(complex_variable(hs));
  CHECK(sup_norm(imag_part(u)) < 1e-15);
  CHECK(max_abs_diff(real_part(u), c) < 1e-15);

  const SurfaceState ps = make_state(zero, c);
  const ComplexField v = inverse_complex(complex_variable(ps));
  CHECK(sup_norm(real_part(v)) < 1e-15);
  CHECK(max_abs_diff(imag_part(v), c) < 1e-14);

  const SurfaceState s = small_data(0.3);
  const SurfaceState back = from_complex_variable(complex_variable(s), 0.0);
  CHECK(field_diff(s, back) < 1e-15);
  const auto p = momentum(s);
  CHECK(std::abs(p[0]) < 1e-15);
  CHECK(std::abs(p[1]) < 1e-15);

  RealField shifted = c;
  for (auto& x : shifted.values()) x += 2.0;
  CHECK(std::abs(mean(make_state(zero, shifted).phi)) < 1e-15);
}

TEST_CASE("equilibrium is a fixed point") {
  const Grid& g = torus();
  const SurfaceState rest = make_state(RealField(g), RealField(g));
  for (DtnMode mode : {DtnMode::full, DtnMode::series2}) {
    Zakharov z(g, ZakharovParams{.mode = mode});
    const Tendency t = z.rhs(rest);
    CHECK(sup_norm(t.h_t) == 0.0);
    CHECK(sup_norm(t.phi_t) == 0.0);
    for (Scheme sc : {Scheme::ifrk4, Scheme::rk4}) {
      const SurfaceState next = z.step(rest, 0.01, sc);
      CHECK(sup_norm(next.h) == 0.0);
      CHECK(sup_norm(next.phi) == 0.0);
    }
    CHECK(z.energy(rest) == 0.0);
    const RealField a = z.taylor_coefficient(rest);
    for (double v : a.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("right-hand side approaches the linear flow") {
  std::vector<double> eps{1e-2, 1e-3, 1e-4}, rel;
  Zakharov z(torus());
  for (double e : eps) {
    const SurfaceState s = small_data(e);
    const Tendency t = z.rhs(s);
    const RealField lh = dtn_order0(s.phi);
    const RealField lp = -s.h;
    const double num = std::hypot(l2_norm(t.h_t - lh), l2_norm(t.phi_t - lp));
    rel.push_back(num / std::hypot(l2_norm(lh), l2_norm(lp)));
  }
  CHECK(loglog_slope(eps, rel) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("two forms of the potential equation agree") {
  for (double e : {0.05, 0.01}) {
    const SurfaceState s = small_data(e);
    Zakharov z(torus());
    const Tendency a = z.rhs(s);
    const Tendency b = z.rhs_velocity_form(s);
    CHECK(max_abs_diff(a.h_t, b.h_t) <= 1e-10 * sup_norm(a.h_t));
    CHECK(max_abs_diff(a.phi_t, b.phi_t) <= 1e-10 * sup_norm(a.phi_t));
    Zakharov zs(torus(), ZakharovParams{.mode = DtnMode::series2});
    const Tendency c = zs.rhs(s);
    const Tendency d = zs.rhs_velocity_form(s);
    CHECK(max_abs_diff(c.phi_t, d.phi_t) <= 1e-13 * sup_norm(c.phi_t));
  }
}

TEST_CASE("series mode tracks the full operator to fourth order") {
  std::vector<double> eps{4e-2, 2e-2, 1e-2}, gap;
  Zakharov full(torus());
  Zakharov series(torus(), ZakharovParams{.mode = DtnMode::series2});
  for (double e : eps) {
    const SurfaceState s = small_data(e);
    gap.push_back(l2_norm(full.rhs(s).h_t - series.rhs(s).h_t));
  }
  CHECK(loglog_slope(eps, gap) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("linear flow: integrating factor is exact, rk4 is fifth order per step") {
  const Grid& g = torus();
  const RealField h = sample(g, [](double x, double y) { return 0.1 * std::cos(3 * x + 4 * y); });
  const SurfaceState s = make_state(h, RealField(g));
  Zakharov z(g, ZakharovParams{.linear_only = true});
  const double w = std::sqrt(5.0);
  for (double dt : {0.01, 0.05}) {
    const SurfaceState next = z.step(s, dt, Scheme::ifrk4);
    const RealField hx = sample(g, [&](double x, double y) { return 0.1 * std::cos(w * dt) * std::cos(3 * x + 4 * y); });
    const RealField px = sample(g, [&](double x, double y) { return -0.1 * std::sin(w * dt) / w * std::cos(3 * x + 4 * y); });
    CHECK(max_abs_diff(next.h, hx) < 1e-14);
    CHECK(max_abs_diff(next.phi, px) < 1e-14);
  }
  std::vector<double> dts{0.1, 0.05, 0.025}, err;
  for (double dt : dts) {
    const SurfaceState next = z.step(s, dt, Scheme::rk4);
    const complex want = std::polar(1.0, -w * dt);
    const SpectralField U = complex_variable(next);
    const complex got = U(3, 4) / complex_variable(s)(3, 4);
    err.push_back(std::abs(got - want));
  }
  CHECK(loglog_slope(dts, err) == doctest::Approx(5.0).epsilon(0.06));
}

TEST_CASE("energy integrals") {
  const Grid& g = torus();
  const RealField c = sample(g, [](double x, double) { return std::cos(x); });
  const RealField zero(g);
  Zakharov z(g);
  CHECK(z.energy(make_state(zero, c)) == doctest::Approx(pi * pi).epsilon(1e-13));
  CHECK(z.energy(make_state(c, zero)) == doctest::Approx(pi * pi).epsilon(1e-13));
  CHECK(energy(make_state(c, zero), ZakharovParams{.mode = DtnMode::series2}) ==
        doctest::Approx(pi * pi).epsilon(1e-13));
}

TEST_CASE("short trajectory conserves energy, mean height and momentum") {
  SurfaceState s = small_data(0.05);
  Zakharov z(torus());
  const double e0 = z.energy(s);
  const double m0 = mean_h(s);
  const double dt = 0.01;
  for (int k = 0; k < 50; ++k) {
    s = z.step(s, dt);
    CHECK(std::abs(momentum(s)[0]) < 1e-12);
    CHECK(std::abs(momentum(s)[1]) < 1e-12);
  }
  CHECK(s.t == doctest::Approx(0.5));
  CHECK(std::abs(z.energy(s) - e0) / e0 < 1e-8 * s.t);
  CHECK(std::abs(mean_h(s) - m0) < 1e-10 * s.t);
}

TEST_CASE("time reversal retraces the trajectory") {
  const SurfaceState s0 = small_data(0.05);
  Zakharov z(torus());
  SurfaceState s = s0;
  for (int k = 0; k < 20; ++k) s = z.step(s, 0.01);
  s = time_reversed(s);
  for (int k = 0; k < 20; ++k) s = z.step(s, 0.01);
  s = time_reversed(s);
  CHECK(field_diff(s, s0) < 1e-9);
}

TEST_CASE("Taylor coefficient") {
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3}, dev;
  Zakharov z(torus());
  for (double e : eps) {
    const SurfaceState s = small_data(e);
    const RealField a = z.taylor_coefficient(s);
    RealField lin = dtn_order0(s.h);
    for (auto& v : lin.values()) v = 1.0 - v;
    dev.push_back(l2_norm(a - lin));
  }
  CHECK(loglog_slope(eps, dev) == doctest::Approx(2.0).epsilon(0.15));
  Zakharov zs(torus(), ZakharovParams{.mode = DtnMode::series2});
  const SurfaceState s = small_data(1e-2);
  CHECK(max_abs_diff(zs.taylor_coefficient(s), z.taylor_coefficient(s)) < 1e-6);
}

TEST_CASE("step guards and blow-up") {
  const SurfaceState s = small_data(0.01);
  Zakharov z(torus());
  CHECK_THROWS_AS(z.step(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(z.step(s, 10.0), std::invalid_argument);
  CHECK(z.max_dt() == doctest::Approx(0.5 / std::sqrt(16 * std::sqrt(2.0))));

  const Grid& g = torus();
  const RealField steep = sample(g, [](double x, double) { return 0.6 * std::sin(x); });
  const SurfaceState bad = make_state(steep, RealField(g));
  try {
    z.step(bad, 0.01);
    FAIL("expected blow-up");
  } catch (const BlowUp& e) {
    CHECK(max_abs_diff(e.last_good().h, bad.h) == 0.0);
  }
  const RealField tall = sample(g, [](double x, double) { return 0.25 * std::cos(x); });
  CHECK_THROWS_AS(z.step(make_state(tall, RealField(g)), 0.01), BlowUp);
  CHECK(amplitude_limit(g) == doctest::Approx(2 * pi / 32));
}

TEST_CASE("trajectory log") {
  TrajectoryLog log;
  log.append({.t = 0.0, .energy = 1.0});
  log.append({.t = 0.5, .energy = 1.0 / 3.0, .min_a = 0.99});
  CHECK_THROWS_AS(log.append({.t = 0.5}), std::invalid_argument);
  std::ostringstream out;
  log.write_csv(out);
  CHECK(out.str() ==
        "t,energy,hN,c6,z,sup_h,min_a,px,py\n"
        "0,1,0,0,0,0,0,0,0\n"
        "0.5,0.33333333333333331,0,0,0,0,0.98999999999999999,0,0\n");

  Zakharov z(torus());
  const SurfaceState s = small_data(0.01);
  const TrajectoryRecord r = measure(z, s);
  CHECK(r.energy == doctest::Approx(z.energy(s)));
  CHECK(r.sup_h == doctest::Approx(sup_norm(s.h)));
  CHECK(r.hN > 0.0);
  CHECK(r.c6 > 0.0);
  CHECK(r.z > 0.0);
  CHECK(r.min_a > 0.9);
}
