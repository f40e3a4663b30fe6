#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gravwave/decomposition.hpp"
#include "gravwave/norms.hpp"
#include "gravwave/snapshot.hpp"
#include "gravwave/spectral.hpp"
#include "test_support.hpp"

using namespace gravwave;
using gravwave::testing::max_abs;
using gravwave::testing::max_abs_diff;
using gravwave::testing::random_field;
constexpr double pi = std::numbers::pi;

TEST_CASE("make_grid lattice spacing") {
  const Grid g8 = make_grid(8, 2 * pi);
  CHECK(g8.dk() == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 8; ++i) {
    CHECK(g8.mode(i) >= -4);
    CHECK(g8.mode(i) <= 3);
    CHECK(g8.freq(i) == doctest::Approx(g8.mode(i)).epsilon(1e-15));
  }
  CHECK(make_grid(16, 4 * pi).dk() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(make_grid(64, 100 * pi).dk() == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, -2.0), std::invalid_argument);
}

TEST_CASE("transform of a single cosine") {
  const Grid g(16, 2 * pi);
  const RealField f = sample(g, [](double x, double) { return std::cos(x); });
  const SpectralField F = transform(f);
  // Fu(+-1, 0) = R^2 / 2 = 2 pi^2.
  CHECK(F(1, 0).real() == doctest::Approx(2 * pi * pi).epsilon(1e-13));
  CHECK(F(15, 0).real() == doctest::Approx(2 * pi * pi).epsilon(1e-13));
  double rest = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!((i == 1 || i == 15) && j == 0)) rest = std::max(rest, std::abs(F(i, j)));
  CHECK(rest < 1e-12);
}

TEST_CASE("transform of a constant") {
  const Grid g(8, 3.0);
  RealField one(g);
  for (auto& v : one.values()) v = 1.0;
  const SpectralField F = transform(one);
  CHECK(F(0, 0).real() == doctest::Approx(9.0).epsilon(1e-14));
  F(0, 0);
  SpectralField G = F;
  G(0, 0) = 0.0;
  CHECK(max_abs(G) < 1e-13);
}

TEST_CASE("round trip and Parseval on every grid size") {
  for (int n = 8; n <= 256; n *= 2) {
    const Grid g(n, 5.0 + n);
    RealField f(g);
    std::mt19937_64 rng(n);
    std::normal_distribution<double> nd;
    for (auto& v : f.values()) v = nd(rng);
    const SpectralField F = transform(f);
    const RealField back = inverse(F);
    CHECK(max_abs_diff(back, f) <= 1e-13 * sup_norm(f));
    double lhs = 0.0, rhs = 0.0;
    for (double v : f.values()) lhs += v * v;
    lhs *= g.cell_area();
    for (const auto& c : F.values()) rhs += std::norm(c);
    rhs /= g.period() * g.period();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
    CHECK(hermitian_defect(F) <= 1e-12);
  }
}

TEST_CASE("apply_symbol examples") {
  const Grid g(16, 2 * pi);
  SpectralField F(g);
  F(1, 0) = 1.0;
  F(1, 1) = 1.0;
  const SpectralField L = apply_symbol(F, symbols::half_grad());
  CHECK(L(1, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(L(1, 1).real() == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  const SpectralField P = apply_symbol(F, symbols::half_wave(pi, -1));
  CHECK(std::abs(P(1, 0) - complex(-1.0, 0.0)) < 1e-15);

  SpectralField mean_only(g);
  mean_only(0, 0) = 3.0;
  CHECK(max_abs(apply_symbol(mean_only, symbols::abs_grad())) == 0.0);
  CHECK(apply_symbol(mean_only, symbols::bessel_pow(4.0))(0, 0).real() == 3.0);
  CHECK(apply_symbol(mean_only, symbols::half_wave(2.0, 1))(0, 0).real() == 3.0);
}

TEST_CASE("negative powers need a mean-free field") {
  const Grid g(16, 2 * pi);
  SpectralField F(g);
  F(0, 0) = 1.0;
  F(2, 0) = 1.0;
  CHECK_THROWS_AS(apply_symbol(F, symbols::abs_grad_pow(-0.5)), IllPosedSymbol);
  F(0, 0) = 0.0;
  const SpectralField out = apply_symbol(F, symbols::abs_grad_pow(-0.5));
  CHECK(out(2, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("gradient zeroes the Nyquist lines and keeps real data real") {
  const Grid g(16, 2 * pi);
  const RealField f = random_field(g, 7, 1.0);
  const SpectralField d = apply_symbol(transform(f), symbols::partial(0));
  CHECK(hermitian_defect(d) < 1e-12);
  for (int j = 0; j < 16; ++j) CHECK(d(8, j) == complex(0.0));
}

TEST_CASE("half-wave propagator is an L2 isometry") {
  const Grid g(32, 7.0);
  const SpectralField F = transform(random_field(g, 3, 1.0));
  for (double t : {0.3, 5.0, 123.0}) {
    const SpectralField P = apply_symbol(F, symbols::half_wave(t, -1));
    CHECK(std::abs(sobolev_norm(P, 0) - sobolev_norm(F, 0)) <= 1e-12 * sobolev_norm(F, 0));
  }
}

TEST_CASE("Littlewood-Paley profile") {
  CHECK(lp_profile(0.0) == 1.0);
  CHECK(lp_profile(0.75) == 1.0);
  CHECK(lp_profile(1.5) == 0.0);
  double prev = 1.0;
  for (double r = 0.0; r < 2.0; r += 0.001) {
    const double v = lp_profile(r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("P_k on a unit-frequency mode") {
  const Grid g(16, 2 * pi);
  SpectralField F(g);
  F(1, 0) = 1.0;
  const double p1 = lp_profile(1.0);
  CHECK(lp_project(F, 0)(1, 0).real() == doctest::Approx(p1).epsilon(1e-15));
  CHECK(lp_project(F, 1)(1, 0).real() == doctest::Approx(1.0 - p1).epsilon(1e-15));
  const auto [lo, hi] = lp_band_range(g);
  double total = 0.0;
  for (int k = lo; k <= hi; ++k) {
    const double w = lp_project(F, k)(1, 0).real();
    if (k != 0 && k != 1) CHECK(w == 0.0);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("P_k kills constants and half-unit frequencies sit in k = -1, 0") {
  const Grid g(16, 4 * pi);  // lattice spacing 1/2
  SpectralField F(g);
  F(0, 0) = 5.0;
  F(1, 0) = 1.0;  // |xi| = 0.5
  const auto [lo, hi] = lp_band_range(g);
  for (int k = lo; k <= hi; ++k) {
    const SpectralField P = lp_project(F, k);
    CHECK(P(0, 0) == complex(0.0));
    if (k != -1 && k != 0) CHECK(P(1, 0) == complex(0.0));
  }
}

TEST_CASE("Littlewood-Paley completeness and almost orthogonality") {
  const Grid g(64, 10.0);
  const RealField u = random_field(g, 11, 1.0);
  const SpectralField U = transform(u);
  const auto [lo, hi] = lp_band_range(g);
  SpectralField sum(g);
  sum(0, 0) = U(0, 0);
  for (int k = lo; k <= hi; ++k) sum += lp_project(U, k);
  CHECK(max_abs_diff(inverse(sum), u) <= 1e-12 * sup_norm(u));
  for (int k = lo; k <= hi; ++k)
    for (int kk = k + 2; kk <= hi; ++kk)
      CHECK(max_abs(lp_project(lp_project(U, k), kk)) == 0.0);
}

TEST_CASE("spatial cutoffs partition unity") {
  for (double R : {2 * pi, 40.0, 100 * pi}) {
    const Grid g(32, R);
    RealField one(g);
    for (auto& v : one.values()) v = 1.0;
    RealField sum(g);
    const int top = spatial_cutoff_top(g);
    for (int j = 0; j <= top + 3; ++j) sum += spatial_cutoff(one, j);
    CHECK(max_abs_diff(sum, one) <= 1e-12);
    CHECK(sup_norm(spatial_cutoff(one, top + 1)) == 0.0);
    CHECK(std::ldexp(1.0, top) <= std::numbers::sqrt2 * R);
  }
}

TEST_CASE("spatial cutoff keeps a central bump only in Q_0") {
  const Grid g(64, 40.0);
  RealField bump(g);
  bump(32, 32) = 1.0;  // the torus center
  CHECK(spatial_cutoff(bump, 0)(32, 32) == 1.0);
  CHECK(sup_norm(spatial_cutoff(bump, 4)) == 0.0);
}

TEST_CASE("norm examples") {
  const Grid g(32, 2 * pi);
  RealField one(g);
  for (auto& v : one.values()) v = 1.0;
  for (double s : {0.0, 1.0, 11.0}) {
    CHECK(sobolev_norm(transform(one), s) == doctest::Approx(2 * pi).epsilon(1e-13));
  }
  const RealField c = sample(g, [](double x, double) { return std::cos(x); });
  CHECK(sobolev_norm(transform(c), 0) == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(l2_norm(c) == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-13));
  for (double r : {0.5, 3.0, 6.0}) CHECK(holder_norm(one, r) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sup_norm(c) == doctest::Approx(1.0));
}

TEST_CASE("Z-norm of a constant is the weighted area") {
  const Grid g(32, 8.0);
  RealField one(g);
  for (auto& v : one.values()) v = 1.0;
  const RealField w = z_weight(g);
  double expect = 0.0;
  for (double v : w.values()) expect += v * v;
  expect = std::sqrt(expect * g.cell_area());
  CHECK(z_norm(one) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("Hoelder norm is dominated by a higher Sobolev norm") {
  // ||u||_{C^r_*} <= (1 + (8/3)^r) R^{-1} (sum <xi>^{-2(1+d)})^{1/2} ||u||_{H^{r+1+d}}.
  const double r = 2.0, d = 0.25;
  for (double R : {2 * pi, 30.0}) {
    const Grid g(64, R);
    double lattice = 0.0;
    for (int i = 0; i < g.n(); ++i)
      for (int j = 0; j < g.n(); ++j)
        lattice += std::pow(1.0 + g.freq(i) * g.freq(i) + g.freq(j) * g.freq(j), -(1.0 + d));
    const double constant = (1.0 + std::pow(8.0 / 3.0, r)) * std::sqrt(lattice) / R;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SpectralField U = transform(random_field(g, 100 + seed, 0.5));
      CHECK(holder_norm(U, r) <= constant * sobolev_norm(U, r + 1 + d));
    }
  }
}

TEST_CASE("snapshot round trip") {
  const Grid g(16, 3.5);
  const RealField f = random_field(g, 5, 1.0);
  std::stringstream buf;
  write_snapshot(buf, f);
  CHECK(buf.str().size() == kSnapshotHeaderBytes + 8 * g.size());
  CHECK(buf.str().substr(0, 4) == "GWF1");
  const RealField back = read_snapshot(buf);
  CHECK(back.grid() == g);
  CHECK(max_abs_diff(back, f) == 0.0);

  std::stringstream bad("XXXX0000");
  CHECK_THROWS_AS(read_snapshot(bad), SnapshotError);
}
