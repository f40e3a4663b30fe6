#include "gravwave/zakharov.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <iomanip>

#include "gravwave/norms.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave {
namespace {

constexpr double kRule = kQuadraticRule;

RealField band(const RealField& f) { return truncate(f, kRule); }

RealField ratio(const RealField& num, const RealField& den) {
  RealField out(num.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = num[k] / den[k];
  return out;
}

RealField plus_one(RealField f) {
  for (auto& v : f.values()) v += 1.0;
  return f;
}

bool finite(const SpectralField& F) {
  for (const complex& c : F.values())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

SurfaceState make_state(const RealField& h, const RealField& phi, double t) {
  SpectralField P = truncate(transform(phi), kRule);
  P(0, 0) = 0.0;
  return SurfaceState{t, band(h), inverse(P)};
}

BlowUp::BlowUp(const std::string& reason, SurfaceState last_good)
    : std::runtime_error("blow-up: " + reason), last_good_(std::move(last_good)) {}

struct Zakharov::Impl {
  Grid grid;
  ZakharovParams params;
  std::optional<DtnSolver> solver;
  DtnWarmStart warm_main, warm_aux;
  std::vector<double> lambda;  // |xi|^{1/2}
  double kmax = 0.0;
  double cached_dt = -1.0;
  std::vector<complex> half_step;  // e^{-i Lambda dt/2}

  Impl(const Grid& g, const ZakharovParams& p) : grid(g), params(p), lambda(g.size()) {
    if (params.mode == DtnMode::full && !params.linear_only) solver.emplace(grid, params.dtn);
    for (int i = 0; i < grid.n(); ++i)
      for (int j = 0; j < grid.n(); ++j) {
        const double k = grid.freq_norm(i, j);
        lambda[grid.index(i, j)] = std::sqrt(k);
        kmax = std::max(kmax, k);
      }
  }

  SurfaceKinematics kinematics(const RealField& h, const RealField& phi, DtnWarmStart& warm) {
    if (solver) {
      DtnResult r = solver->solve(h, phi, &warm);
      return {std::move(r.G), std::move(r.B), std::move(r.V1), std::move(r.V2)};
    }
    const Gradient gh = gradient(h);
    const RealField slope2 = gh.d1 * gh.d1 + gh.d2 * gh.d2;
    if (!(std::sqrt(sup_norm(slope2)) <= kMaxSlope))
      throw DtnPrecondition("surface slope exceeds the DtN guard");
    const Gradient gp = gradient(phi);
    RealField G = dtn_series(h, phi, 2);
    RealField B = ratio(G + gh.d1 * gp.d1 + gh.d2 * gp.d2, plus_one(slope2));
    RealField V1 = gp.d1 - B * gh.d1;
    RealField V2 = gp.d2 - B * gh.d2;
    return {std::move(G), std::move(B), std::move(V1), std::move(V2)};
  }

  RealField dtn_apply(const RealField& h, const RealField& f, DtnWarmStart& warm) {
    if (solver) return solver->solve(h, f, &warm).G;
    return dtn_series(h, f, 2);
  }

  // (G phi - |grad| phi, phi_t + h) before dealiasing.
  std::pair<RealField, RealField> forcing(const SurfaceState& s) {
    if (params.linear_only) return {RealField(grid), RealField(grid)};
    const SurfaceKinematics k = kinematics(s.h, s.phi, warm_main);
    const Gradient gh = gradient(s.h);
    const Gradient gp = gradient(s.phi);
    const RealField num = k.G + gh.d1 * gp.d1 + gh.d2 * gp.d2;
    const RealField den = plus_one(gh.d1 * gh.d1 + gh.d2 * gh.d2) * 2.0;
    RealField pn = ratio(num * num, den) - (gp.d1 * gp.d1 + gp.d2 * gp.d2) * 0.5;
    return {k.G - dtn_order0(s.phi), std::move(pn)};
  }

  SpectralField nonlinearity(const SpectralField& U) {
    const SurfaceState s = from_complex_variable(U, 0.0);
    const auto [gn, pn] = forcing(s);
    SpectralField N = truncate(transform(gn), kRule);
    const SpectralField P = truncate(transform(pn), kRule);
    for (std::size_t q = 0; q < N.size(); ++q) N[q] += complex(0.0, lambda[q]) * P[q];
    return N;
  }

  void set_dt(double dt) {
    if (dt == cached_dt) return;
    half_step.resize(grid.size());
    for (std::size_t q = 0; q < grid.size(); ++q)
      half_step[q] = std::polar(1.0, -0.5 * dt * lambda[q]);
    cached_dt = dt;
  }
};

Zakharov::Zakharov(const Grid& grid, const ZakharovParams& params)
    : impl_(std::make_unique<Impl>(grid, params)) {}
Zakharov::~Zakharov() = default;
Zakharov::Zakharov(Zakharov&&) noexcept = default;
Zakharov& Zakharov::operator=(Zakharov&&) noexcept = default;

const Grid& Zakharov::grid() const { return impl_->grid; }
const ZakharovParams& Zakharov::params() const { return impl_->params; }
double Zakharov::max_dt() const { return 0.5 / std::sqrt(impl_->kmax); }

SurfaceKinematics Zakharov::kinematics(const SurfaceState& s) {
  return impl_->kinematics(s.h, s.phi, impl_->warm_main);
}

Tendency Zakharov::rhs(const SurfaceState& s) {
  auto [gn, pn] = impl_->forcing(s);
  return {band(gn + dtn_order0(s.phi)), band(pn - s.h)};
}

Tendency Zakharov::rhs_velocity_form(const SurfaceState& s) {
  if (impl_->params.linear_only) return rhs(s);
  const SurfaceKinematics k = kinematics(s);
  const Gradient gh = gradient(s.h);
  const RealField vh = k.V1 * gh.d1 + k.V2 * gh.d2;
  RealField phi_t = (k.B * k.B - k.B * vh * 2.0 - k.V1 * k.V1 - k.V2 * k.V2) * 0.5 - s.h;
  return {band(k.G), band(phi_t)};
}

SpectralField Zakharov::nonlinearity(const SpectralField& U) { return impl_->nonlinearity(U); }

SurfaceState Zakharov::step(const SurfaceState& s, double dt, Scheme scheme) {
  if (!(dt > 0.0) || dt > max_dt())
    throw std::invalid_argument("step: dt must lie in (0, " + std::to_string(max_dt()) + "]");
  Impl& m = *impl_;
  const std::size_t nq = m.grid.size();
  const SpectralField U = complex_variable(s);
  SpectralField out(m.grid);
  try {
    if (scheme == Scheme::ifrk4) {
      m.set_dt(dt);
      const auto& E = m.half_step;
      SpectralField tmp(m.grid);
      const SpectralField k1 = m.nonlinearity(U);
      for (std::size_t q = 0; q < nq; ++q) tmp[q] = E[q] * (U[q] + 0.5 * dt * k1[q]);
      const SpectralField k2 = m.nonlinearity(tmp);
      for (std::size_t q = 0; q < nq; ++q) tmp[q] = E[q] * U[q] + 0.5 * dt * k2[q];
      const SpectralField k3 = m.nonlinearity(tmp);
      for (std::size_t q = 0; q < nq; ++q) tmp[q] = E[q] * (E[q] * U[q] + dt * k3[q]);
      const SpectralField k4 = m.nonlinearity(tmp);
      for (std::size_t q = 0; q < nq; ++q) {
        const complex e = E[q];
        out[q] = e * e * U[q] + dt / 6.0 * (e * e * k1[q] + 2.0 * e * (k2[q] + k3[q]) + k4[q]);
      }
    } else {
      auto f = [&](const SpectralField& V) {
        SpectralField r = m.nonlinearity(V);
        for (std::size_t q = 0; q < nq; ++q) r[q] -= complex(0.0, m.lambda[q]) * V[q];
        return r;
      };
      SpectralField tmp(m.grid);
      const SpectralField k1 = f(U);
      for (std::size_t q = 0; q < nq; ++q) tmp[q] = U[q] + 0.5 * dt * k1[q];
      const SpectralField k2 = f(tmp);
      for (std::size_t q = 0; q < nq; ++q) tmp[q] = U[q] + 0.5 * dt * k2[q];
      const SpectralField k3 = f(tmp);
      for (std::size_t q = 0; q < nq; ++q) tmp[q] = U[q] + dt * k3[q];
      const SpectralField k4 = f(tmp);
      for (std::size_t q = 0; q < nq; ++q)
        out[q] = U[q] + dt / 6.0 * (k1[q] + 2.0 * (k2[q] + k3[q]) + k4[q]);
    }
  } catch (const DtnPrecondition& e) {
    throw BlowUp(e.what(), s);
  }
  if (!finite(out)) throw BlowUp("non-finite values", s);
  SurfaceState next = from_complex_variable(out, s.t + dt);
  if (sup_norm(next.h) > amplitude_limit(m.grid)) throw BlowUp("sup|h| above R/n", s);
  return next;
}

double Zakharov::energy(const SurfaceState& s) {
  if (sup_norm(s.phi) == 0.0) return 0.5 * inner(s.h, s.h);
  const RealField G = impl_->params.linear_only
                          ? dtn_order0(s.phi)
                          : impl_->dtn_apply(s.h, s.phi, impl_->warm_aux);
  return 0.5 * (inner(s.phi, G) + inner(s.h, s.h));
}

RealField Zakharov::taylor_coefficient(const SurfaceState& s) {
  Impl& m = *impl_;
  const SurfaceKinematics k = m.kinematics(s.h, s.phi, m.warm_aux);
  const Gradient gh = gradient(s.h);
  const Gradient gB = gradient(k.B);
  const Gradient gV1 = gradient(k.V1);
  const Gradient gV2 = gradient(k.V2);
  const RealField VgB = k.V1 * gB.d1 + k.V2 * gB.d2;
  const RealField divV = gV1.d1 + gV2.d2;
  const RealField VgV1 = k.V1 * gV1.d1 + k.V2 * gV1.d2;
  const RealField VgV2 = k.V1 * gV2.d1 + k.V2 * gV2.d2;
  const RealField slope2 = gh.d1 * gh.d1 + gh.d2 * gh.d2;
  const RealField Vh = k.V1 * gh.d1 + k.V2 * gh.d2;
  const RealField Bh = gB.d1 * gh.d1 + gB.d2 * gh.d2;
  const RealField at = VgB - k.G * divV - (gh.d1 * VgV1 + gh.d2 * VgV2) - VgB * slope2 + Vh * Bh;
  const RealField q = k.B * k.B + k.V1 * k.V1 + k.V2 * k.V2 + s.h * 2.0;
  DtnWarmStart scratch;
  const RealField Gq = m.dtn_apply(s.h, q, scratch);
  return band(ratio(plus_one(at - Gq * 0.5), plus_one(slope2)));
}

Tendency rhs(const SurfaceState& s, const ZakharovParams& params) {
  Zakharov z(s.grid(), params);
  return z.rhs(s);
}

SurfaceState step(const SurfaceState& s, double dt, Scheme scheme, const ZakharovParams& params) {
  Zakharov z(s.grid(), params);
  return z.step(s, dt, scheme);
}

double energy(const SurfaceState& s, const ZakharovParams& params) {
  Zakharov z(s.grid(), params);
  return z.energy(s);
}

RealField taylor_coefficient(const SurfaceState& s, const ZakharovParams& params) {
  Zakharov z(s.grid(), params);
  return z.taylor_coefficient(s);
}

SpectralField complex_variable(const SurfaceState& s) {
  SpectralField U = transform(s.h);
  U += complex(0.0, 1.0) * apply_symbol(transform(s.phi), symbols::half_grad());
  return U;
}

SurfaceState from_complex_variable(const SpectralField& U, double t) {
  const Grid& g = U.grid();
  const SpectralField R = conj_reflect(U);
  SpectralField H(g), P(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const std::size_t q = g.index(i, j);
      H[q] = 0.5 * (U[q] + R[q]);
      const double lam = std::sqrt(g.freq_norm(i, j));
      if (lam > 0.0) P[q] = (U[q] - R[q]) / complex(0.0, 2.0 * lam);
    }
  return SurfaceState{t, inverse(H), inverse(P)};
}

std::array<double, 2> momentum(const SurfaceState& s) {
  const Gradient gp = gradient(s.phi);
  const double area = s.grid().period() * s.grid().period();
  return {transform(gp.d1)(0, 0).real() / area, transform(gp.d2)(0, 0).real() / area};
}

double mean_h(const SurfaceState& s) { return mean(s.h); }

SurfaceState time_reversed(const SurfaceState& s) { return SurfaceState{s.t, s.h, -s.phi}; }

double amplitude_limit(const Grid& grid) { return grid.period() / grid.n(); }

void TrajectoryLog::append(const TrajectoryRecord& r) {
  if (!records.empty() && !(r.t > records.back().t))
    throw std::invalid_argument("TrajectoryLog: times must increase");
  records.push_back(r);
}

void TrajectoryLog::write_csv(std::ostream& out) const {
  out << "t,energy,hN,c6,z,sup_h,min_a,px,py\n";
  const auto old = out.precision(17);
  for (const TrajectoryRecord& r : records)
    out << r.t << ',' << r.energy << ',' << r.hN << ',' << r.c6 << ',' << r.z << ',' << r.sup_h
        << ',' << r.min_a << ',' << r.px << ',' << r.py << '\n';
  out.precision(old);
}

TrajectoryRecord measure(Zakharov& engine, const SurfaceState& s, int sobolev_index) {
  const SpectralField U = complex_variable(s);
  const RealField a = engine.taylor_coefficient(s);
  double min_a = a[0];
  for (double v : a.values()) min_a = std::min(min_a, v);
  const auto p = momentum(s);
  return {s.t,
          engine.energy(s),
          sobolev_norm(U, sobolev_index),
          holder_norm(U, 6.0),
          z_norm(U),
          sup_norm(s.h),
          min_a,
          p[0],
          p[1]};
}

}  // namespace gravwave
