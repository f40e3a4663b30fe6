#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "gravwave/dtn.hpp"
#include "gravwave/norms.hpp"
#include "gravwave/spectral.hpp"

// The flattened potential is solved in the vertical variable zeta = e^{beta y},
// beta = pi / R, on Chebyshev-Lobatto nodes in [zeta_min, 1]. The kernel
// integrals are evaluated exactly on the Lagrange interpolant of the forcing
// (product integration), so each lattice frequency |xi| = beta s needs two
// matrices:
//   Lo_s f (zeta_m) = (1/beta) int_{zeta_min}^{zeta_m} (z/zeta_m)^s f(z) dz/z
//   Up_s f (zeta_m) = (1/beta) int_{zeta_m}^{1}      (zeta_m/z)^s f(z) dz/z
// With S = i xi.w_x^/|xi| and W = w_y^ the update per frequency is
//   U^  = phi^ zeta^s + (zeta^s a_top - a + b) / 2
//   gy^ = |xi| phi^ zeta^s + |xi| (zeta^s a_top + a + b) / 2 - W
// where a = Lo_s (S + W) and b = Up_s (W - S); grad_x u = i xi U^.

namespace gravwave {

DtnNonConvergence::DtnNonConvergence(int iterations, double residual)
    : std::runtime_error("DtN fixed point did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

namespace {

using Matrix = Eigen::MatrixXd;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

struct Group {
  double s = 0.0;
  double k = 0.0;
  Matrix lo, up;
  std::vector<double> zeta_s;  // zeta_m^s
  std::vector<int> modes;      // positions in the retained-mode list
};

}  // namespace

struct DtnSolver::Impl {
  Grid grid;
  DtnParams params;
  int n = 0, half = 0, nl = 0;
  std::size_t hs = 0;  // half-spectrum size
  double beta = 0.0, depth = 0.0;
  std::vector<double> zeta, tau, y;
  std::vector<double> xi1, xi2, kabs;  // per half-spectrum entry
  std::vector<double> dx1, dx2;        // xi / R^2 with the Nyquist lines zeroed
  std::vector<double> poisson;         // e^{|xi| y_m}, level-major
  std::vector<std::size_t> retained;   // half-spectrum indices inside the 2/3 band
  std::vector<int> group_of;
  std::vector<Group> groups;
  Matrix diff;  // d/dzeta on the nodes

  Impl(const Grid& g, const DtnParams& p) : grid(g), params(p) {
    if (p.levels < 4) throw std::invalid_argument("DtnSolver: at least 4 levels required");
    if (p.tol <= 0.0 || p.max_iter < 1) throw std::invalid_argument("DtnSolver: bad tolerance");
    n = g.n();
    half = n / 2 + 1;
    hs = static_cast<std::size_t>(n) * half;
    nl = p.levels;
    beta = std::numbers::pi / g.period();
    depth = p.depth > 0.0 ? p.depth : std::log(1e12) / g.min_freq();
    const double zmin = std::exp(-beta * depth);
    zeta.resize(nl);
    tau.resize(nl);
    y.resize(nl);
    for (int m = 0; m < nl; ++m) {
      const double c = 0.5 * (1.0 - std::cos(std::numbers::pi * m / (nl - 1)));
      zeta[m] = m == nl - 1 ? 1.0 : zmin + (1.0 - zmin) * c;
      tau[m] = std::log(zeta[m]);
      y[m] = tau[m] / beta;
    }
    y[nl - 1] = 0.0;

    xi1.resize(hs);
    xi2.resize(hs);
    kabs.resize(hs);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < half; ++j) {
        const std::size_t q = static_cast<std::size_t>(i) * half + j;
        xi1[q] = g.freq(i);
        xi2[q] = g.freq(j);
        kabs[q] = std::hypot(xi1[q], xi2[q]);
      }
    dx1.resize(hs);
    dx2.resize(hs);
    const double inv_area = 1.0 / (g.period() * g.period());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < half; ++j) {
        const std::size_t q = static_cast<std::size_t>(i) * half + j;
        const bool nyq = g.is_nyquist(i) || j == half - 1;
        dx1[q] = nyq ? 0.0 : xi1[q] * inv_area;
        dx2[q] = nyq ? 0.0 : xi2[q] * inv_area;
      }
    poisson.resize(hs * nl);
    for (int m = 0; m < nl; ++m)
      for (std::size_t q = 0; q < hs; ++q) poisson[m * hs + q] = std::exp(kabs[q] * y[m]);

    const double cut = kQuadraticRule * (n / 2);
    std::map<long, int> by_norm;
    for (int i = 0; i < n; ++i) {
      const int mi = g.mode(i);
      if (g.is_nyquist(i) || std::abs(mi) >= cut) continue;
      for (int j = 0; j < half; ++j) {
        if (g.is_nyquist(j) || j >= cut || (i == 0 && j == 0)) continue;
        const long key = static_cast<long>(mi) * mi + static_cast<long>(j) * j;
        auto [it, fresh] = by_norm.try_emplace(key, static_cast<int>(groups.size()));
        if (fresh) {
          Group grp;
          grp.k = g.dk() * std::sqrt(static_cast<double>(key));
          grp.s = grp.k / beta;
          groups.push_back(std::move(grp));
        }
        groups[it->second].modes.push_back(static_cast<int>(retained.size()));
        group_of.push_back(it->second);
        retained.push_back(static_cast<std::size_t>(i) * half + j);
      }
    }
    build_kernels();
    build_diff();
  }

  // Barycentric weights of the Chebyshev-Lobatto nodes.
  double bary_weight(int j) const {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return (j == 0 || j == nl - 1) ? 0.5 * sign : sign;
  }

  void build_kernels() {
    double smax = static_cast<double>(nl);
    for (const Group& grp : groups) smax = std::max(smax, grp.s);
    std::vector<double> gx, gw;
    gauss_legendre(12, gx, gw);

    // Quadrature points per inter-node panel (panel m spans tau_{m-1}..tau_m).
    std::vector<std::vector<double>> qt(nl), qw(nl);
    std::vector<Matrix> basis(nl);
    for (int m = 1; m < nl; ++m) {
      const double a = tau[m - 1], b = tau[m];
      const int sub = std::max(1, static_cast<int>(std::ceil((b - a) * smax / 2.0)));
      const double hsub = (b - a) / sub;
      for (int p = 0; p < sub; ++p) {
        const double c0 = a + p * hsub;
        for (std::size_t r = 0; r < gx.size(); ++r) {
          qt[m].push_back(c0 + 0.5 * hsub * (gx[r] + 1.0));
          qw[m].push_back(0.5 * hsub * gw[r]);
        }
      }
      basis[m].resize(static_cast<Eigen::Index>(qt[m].size()), nl);
      for (std::size_t q = 0; q < qt[m].size(); ++q) {
        const double z = std::exp(qt[m][q]);
        double denom = 0.0;
        for (int j = 0; j < nl; ++j) denom += bary_weight(j) / (z - zeta[j]);
        for (int j = 0; j < nl; ++j)
          basis[m](static_cast<Eigen::Index>(q), j) = bary_weight(j) / (z - zeta[j]) / denom;
      }
    }

    for (Group& grp : groups) {
      const double s = grp.s;
      grp.lo = Matrix::Zero(nl, nl);
      grp.up = Matrix::Zero(nl, nl);
      grp.zeta_s.resize(nl);
      for (int m = 0; m < nl; ++m) grp.zeta_s[m] = std::exp(s * tau[m]);
      Eigen::VectorXd wq;
      for (int m = 1; m < nl; ++m) {
        const auto nq = static_cast<Eigen::Index>(qt[m].size());
        wq.resize(nq);
        for (Eigen::Index q = 0; q < nq; ++q) wq[q] = qw[m][q] * std::exp(s * (qt[m][q] - tau[m]));
        grp.lo.row(m) = std::exp(-s * (tau[m] - tau[m - 1])) * grp.lo.row(m - 1) +
                        (wq.transpose() * basis[m]);
      }
      for (int m = nl - 2; m >= 0; --m) {
        const auto nq = static_cast<Eigen::Index>(qt[m + 1].size());
        wq.resize(nq);
        for (Eigen::Index q = 0; q < nq; ++q)
          wq[q] = qw[m + 1][q] * std::exp(s * (tau[m] - qt[m + 1][q]));
        grp.up.row(m) = std::exp(-s * (tau[m + 1] - tau[m])) * grp.up.row(m + 1) +
                        (wq.transpose() * basis[m + 1]);
      }
      grp.lo /= beta;
      grp.up /= beta;
    }
  }

  void build_diff() {
    diff = Matrix::Zero(nl, nl);
    for (int i = 0; i < nl; ++i) {
      double sum = 0.0;
      for (int j = 0; j < nl; ++j) {
        if (i == j) continue;
        diff(i, j) = bary_weight(j) / bary_weight(i) / (zeta[i] - zeta[j]);
        sum += diff(i, j);
      }
      diff(i, i) = -sum;
    }
  }

  // Inverse transform of a half spectrum carrying the Fourier-convention scale.
  void to_physical(const complex* in, double* out) const {
    detail::irfft2(in, out, n);
    const double w = 1.0 / (grid.period() * grid.period());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] *= w;
  }
  void to_spectral(const double* in, complex* out) const {
    detail::rfft2(in, out, n);
    const double w = grid.cell_area();
    for (std::size_t i = 0; i < hs; ++i) out[i] *= w;
  }

  struct Slopes {
    RealField h1, h2, q;
  };

  Slopes slopes(const RealField& h) const {
    Gradient gh = gradient(h);
    RealField q = gh.d1 * gh.d1 + gh.d2 * gh.d2;
    const double smax = std::sqrt(sup_norm(q));
    if (!(smax <= kMaxSlope)) {
      throw DtnPrecondition("DtN solver needs |grad h| <= " + std::to_string(kMaxSlope) +
                            ", got " + std::to_string(smax));
    }
    return {std::move(gh.d1), std::move(gh.d2), std::move(q)};
  }

  // Picard iteration on the half spectra U^ (potential) and gy^ per level.
  void iterate(const RealField& h, const RealField& phi, std::vector<complex>& U,
               std::vector<complex>& Gy, int& iterations, double& residual,
               DtnWarmStart* warm = nullptr) const {
    if (!(h.grid() == grid) || !(phi.grid() == grid))
      throw std::invalid_argument("DtnSolver: field grid mismatch");
    const Slopes sl = slopes(h);
    std::vector<complex> ph(hs);
    to_spectral(phi.data(), ph.data());

    U.assign(hs * nl, complex(0.0));
    Gy.assign(hs * nl, complex(0.0));
    for (int m = 0; m < nl; ++m)
      for (std::size_t q = 0; q < hs; ++q) {
        const complex v = ph[q] * poisson[m * hs + q];
        U[m * hs + q] = v;
        Gy[m * hs + q] = kabs[q] * v;
      }
    const bool use_warm = warm && warm->dU.size() == U.size() && warm->dGy.size() == Gy.size();
    if (use_warm) {
      for (std::size_t i = 0; i < U.size(); ++i) {
        U[i] += warm->dU[i];
        Gy[i] += warm->dGy[i];
      }
    }
    auto save_warm = [&] {
      if (!warm) return;
      warm->dU.resize(U.size());
      warm->dGy.resize(Gy.size());
      for (int m = 0; m < nl; ++m)
        for (std::size_t q = 0; q < hs; ++q) {
          const complex v = ph[q] * poisson[m * hs + q];
          warm->dU[m * hs + q] = U[m * hs + q] - v;
          warm->dGy[m * hs + q] = Gy[m * hs + q] - kabs[q] * v;
        }
    };

    const std::size_t nr = retained.size();
    const std::size_t np = grid.size();
    std::vector<complex> S(nr * nl), W(nr * nl), W0(nl);
    detail::AlignedVector<complex> spec(hs), Wx1(hs), Wx2(hs), Wy(hs);
    detail::AlignedVector<double> gx1(np), gx2(np), gy(np), w1(np), w2(np), wy(np);
    const double inv_area = 1.0 / (grid.period() * grid.period());
    const double area = grid.cell_area();
    Matrix A, Bm, a, b;

    residual = 0.0;
    for (int it = 1; it <= params.max_iter; ++it) {
      for (int m = 0; m < nl; ++m) {
        const complex* Um = &U[m * hs];
        for (std::size_t q = 0; q < hs; ++q) spec[q] = complex(0.0, dx1[q]) * Um[q];
        detail::irfft2_aligned(spec.data(), gx1.data(), n);
        for (std::size_t q = 0; q < hs; ++q) spec[q] = complex(0.0, dx2[q]) * Um[q];
        detail::irfft2_aligned(spec.data(), gx2.data(), n);
        for (std::size_t q = 0; q < hs; ++q) spec[q] = inv_area * Gy[m * hs + q];
        detail::irfft2_aligned(spec.data(), gy.data(), n);
        for (std::size_t p = 0; p < np; ++p) {
          w1[p] = sl.h1[p] * gy[p];
          w2[p] = sl.h2[p] * gy[p];
          wy[p] = -sl.h1[p] * gx1[p] - sl.h2[p] * gx2[p] + sl.q[p] * gy[p];
        }
        detail::rfft2_aligned(w1.data(), Wx1.data(), n);
        detail::rfft2_aligned(w2.data(), Wx2.data(), n);
        detail::rfft2_aligned(wy.data(), Wy.data(), n);
        for (std::size_t r = 0; r < nr; ++r) {
          const std::size_t q = retained[r];
          const complex t = xi1[q] * Wx1[q] + xi2[q] * Wx2[q];
          S[r * nl + m] = complex(-t.imag(), t.real()) * (area / kabs[q]);
          W[r * nl + m] = area * Wy[q];
        }
        W0[m] = area * Wy[0];
      }

      double diff2 = 0.0, norm2 = 0.0;
      auto update = [&](std::size_t idx, complex u_new, complex g_new, double k) {
        diff2 += std::norm(k * (u_new - U[idx])) + std::norm(g_new - Gy[idx]);
        U[idx] = u_new;
        Gy[idx] = g_new;
      };
      for (int m = 0; m < nl; ++m) update(m * hs, complex(0.0), -W0[m], 0.0);

      for (const Group& grp : groups) {
        const auto c = static_cast<Eigen::Index>(grp.modes.size());
        A.resize(nl, 2 * c);
        Bm.resize(nl, 2 * c);
        for (Eigen::Index col = 0; col < c; ++col) {
          const std::size_t r = static_cast<std::size_t>(grp.modes[col]);
          for (int m = 0; m < nl; ++m) {
            const complex sp = S[r * nl + m] + W[r * nl + m];
            const complex dm = W[r * nl + m] - S[r * nl + m];
            A(m, 2 * col) = sp.real();
            A(m, 2 * col + 1) = sp.imag();
            Bm(m, 2 * col) = dm.real();
            Bm(m, 2 * col + 1) = dm.imag();
          }
        }
        a.noalias() = grp.lo * A;
        b.noalias() = grp.up * Bm;
        for (Eigen::Index col = 0; col < c; ++col) {
          const std::size_t r = static_cast<std::size_t>(grp.modes[col]);
          const std::size_t q = retained[r];
          const complex top(a(nl - 1, 2 * col), a(nl - 1, 2 * col + 1));
          for (int m = 0; m < nl; ++m) {
            const complex am(a(m, 2 * col), a(m, 2 * col + 1));
            const complex bm(b(m, 2 * col), b(m, 2 * col + 1));
            const complex lin = ph[q] * poisson[m * hs + q];
            const complex zt = grp.zeta_s[m] * top;
            const complex u_new = lin + 0.5 * (zt - am + bm);
            const complex g_new = grp.k * (lin + 0.5 * (zt + am + bm)) - W[r * nl + m];
            update(m * hs + q, u_new, g_new, grp.k);
          }
        }
      }
      for (int m = 0; m < nl; ++m)
        for (std::size_t q = 0; q < hs; ++q)
          norm2 += std::norm(kabs[q] * U[m * hs + q]) + std::norm(Gy[m * hs + q]);

      residual = norm2 > 0.0 ? std::sqrt(diff2 / norm2) : 0.0;
      iterations = it;
      if (!std::isfinite(residual)) break;
      if (residual <= params.tol) {
        save_warm();
        return;
      }
    }
    throw DtnNonConvergence(iterations, residual);
  }

  void zero_nyquist(std::vector<complex>& spec) const {
    const std::size_t ny = static_cast<std::size_t>(n / 2);
    for (int j = 0; j < half; ++j) spec[ny * half + j] = 0.0;
    for (int i = 0; i < n; ++i) spec[static_cast<std::size_t>(i) * half + (half - 1)] = 0.0;
  }

  RealField level_field(const std::vector<complex>& F, int m, int component) const {
    std::vector<complex> spec(hs);
    const complex* Fm = &F[m * hs];
    if (component == 2) {
      std::copy(Fm, Fm + hs, spec.begin());
    } else {
      const std::vector<double>& xi = component == 0 ? xi1 : xi2;
      for (std::size_t q = 0; q < hs; ++q) spec[q] = complex(0.0, xi[q]) * Fm[q];
      zero_nyquist(spec);
    }
    RealField out(grid);
    to_physical(spec.data(), out.data());
    return out;
  }
};

DtnSolver::DtnSolver(const Grid& grid, const DtnParams& params)
    : impl_(std::make_unique<Impl>(grid, params)) {}
DtnSolver::~DtnSolver() = default;
DtnSolver::DtnSolver(DtnSolver&&) noexcept = default;
DtnSolver& DtnSolver::operator=(DtnSolver&&) noexcept = default;

const Grid& DtnSolver::grid() const { return impl_->grid; }
const DtnParams& DtnSolver::params() const { return impl_->params; }
double DtnSolver::depth() const { return impl_->depth; }
const std::vector<double>& DtnSolver::levels() const { return impl_->y; }

VolumeGradient DtnSolver::extend(const RealField& h, const RealField& phi) const {
  const Impl& s = *impl_;
  std::vector<complex> U, Gy;
  VolumeGradient out{.grid = s.grid, .depth = s.depth, .levels = s.y};
  s.iterate(h, phi, U, Gy, out.iterations, out.residual);
  for (int m = 0; m < s.nl; ++m) {
    out.gx1.push_back(s.level_field(U, m, 0));
    out.gx2.push_back(s.level_field(U, m, 1));
    out.gy.push_back(s.level_field(Gy, m, 2));
  }
  return out;
}

DtnResult DtnSolver::solve(const RealField& h, const RealField& phi, DtnWarmStart* warm) const {
  const Impl& s = *impl_;
  std::vector<complex> U, Gy;
  int iterations = 0;
  double residual = 0.0;
  s.iterate(h, phi, U, Gy, iterations, residual, warm);
  const int top = s.nl - 1;
  const RealField gx1 = s.level_field(U, top, 0);
  const RealField gx2 = s.level_field(U, top, 1);
  DtnResult r{.G = RealField(s.grid),
              .B = s.level_field(Gy, top, 2),
              .V1 = RealField(s.grid),
              .V2 = RealField(s.grid),
              .iterations = iterations,
              .residual = residual};
  const Gradient gh = gradient(h);
  for (std::size_t p = 0; p < s.grid.size(); ++p) {
    const double q = gh.d1[p] * gh.d1[p] + gh.d2[p] * gh.d2[p];
    r.G[p] = (1.0 + q) * r.B[p] - gh.d1[p] * gx1[p] - gh.d2[p] * gx2[p];
    r.V1[p] = gx1[p] - r.B[p] * gh.d1[p];
    r.V2[p] = gx2[p] - r.B[p] * gh.d2[p];
  }
  return r;
}

double DtnSolver::elliptic_residual(const VolumeGradient& g, const RealField& h) const {
  const Impl& s = *impl_;
  const int nl = s.nl;
  const std::size_t np = s.grid.size();
  const Gradient gh = gradient(h);
  const RealField lh = apply_symbol(h, symbols::laplacian());
  // d/dy = beta zeta d/dzeta on every column.
  auto dy = [&](const std::vector<RealField>& f, int m, std::size_t p) {
    double acc = 0.0;
    for (int j = 0; j < nl; ++j) acc += s.diff(m, j) * f[j][p];
    return s.beta * s.zeta[m] * acc;
  };
  double res2 = 0.0, ref2 = 0.0;
  for (int m = 0; m < nl; ++m) {
    const RealField div = divergence(g.gx1[m], g.gx2[m]);
    const double wm = 0.5 * ((m > 0 ? s.y[m] - s.y[m - 1] : 0.0) +
                             (m < nl - 1 ? s.y[m + 1] - s.y[m] : 0.0));
    for (std::size_t p = 0; p < np; ++p) {
      const double q = gh.d1[p] * gh.d1[p] + gh.d2[p] * gh.d2[p];
      const double yy = (1.0 + q) * dy(g.gy, m, p);
      const double cross = 2.0 * (gh.d1[p] * dy(g.gx1, m, p) + gh.d2[p] * dy(g.gx2, m, p));
      const double r = yy + div[p] - cross - lh[p] * g.gy[m][p];
      res2 += wm * r * r;
      ref2 += wm * (yy * yy + div[p] * div[p]);
    }
  }
  return ref2 > 0.0 ? std::sqrt(res2 / ref2) : 0.0;
}

VolumeSnapshot to_snapshot(const VolumeGradient& g) {
  VolumeSnapshot s{.grid = g.grid, .depth = g.depth, .levels = g.levels};
  for (std::size_t m = 0; m < g.levels.size(); ++m) {
    s.gx1.insert(s.gx1.end(), g.gx1[m].values().begin(), g.gx1[m].values().end());
    s.gx2.insert(s.gx2.end(), g.gx2[m].values().begin(), g.gx2[m].values().end());
    s.gy.insert(s.gy.end(), g.gy[m].values().begin(), g.gy[m].values().end());
  }
  return s;
}

VolumeGradient from_snapshot(const VolumeSnapshot& s) {
  VolumeGradient g{.grid = s.grid, .depth = s.depth, .levels = s.levels};
  const std::size_t np = s.grid.size();
  auto slice = [&](const std::vector<double>& v, std::size_t m) {
    RealField f(s.grid);
    std::copy(v.begin() + m * np, v.begin() + (m + 1) * np, f.values().begin());
    return f;
  };
  for (std::size_t m = 0; m < s.levels.size(); ++m) {
    g.gx1.push_back(slice(s.gx1, m));
    g.gx2.push_back(slice(s.gx2, m));
    g.gy.push_back(slice(s.gy, m));
  }
  return g;
}

VolumeGradient harmonic_extension(const RealField& h, const RealField& phi,
                                  const DtnParams& params) {
  return cached_solver(h.grid(), params).extend(h, phi);
}

DtnResult dtn_full(const RealField& h, const RealField& phi, const DtnParams& params) {
  return cached_solver(h.grid(), params).solve(h, phi);
}

const DtnSolver& cached_solver(const Grid& grid, const DtnParams& params) {
  struct Entry {
    Grid grid;
    DtnParams params;
    std::unique_ptr<DtnSolver> solver;
  };
  thread_local std::vector<Entry> cache;
  for (const Entry& e : cache) {
    if (e.grid == grid && e.params.depth == params.depth && e.params.levels == params.levels &&
        e.params.tol == params.tol && e.params.max_iter == params.max_iter)
      return *e.solver;
  }
  if (cache.size() >= 4) cache.erase(cache.begin());
  cache.push_back({grid, params, std::make_unique<DtnSolver>(grid, params)});
  return *cache.back().solver;
}

}  // namespace gravwave
