#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "gravwave/dtn.hpp"
#include "gravwave/fit.hpp"
#include "gravwave/norms.hpp"
#include "gravwave/snapshot.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave::cli {
namespace {

constexpr double pi = std::numbers::pi;

const std::set<std::string> kCommands{"simulate", "dtn-verify", "decay",
                                      "strichartz", "normalform", "lifespan"};

std::set<std::string> allowed_keys(const std::string& command) {
  std::set<std::string> keys{"grid.n",     "grid.R",  "data.kind", "data.eps",
                             "data.seed",  "data.sigma", "data.m1", "data.m2",
                             "data.separation"};
  const std::set<std::string> dtn{"dtn.Y", "dtn.ny", "dtn.tol", "dtn.max_iter", "dtn.mode"};
  auto add = [&keys](std::initializer_list<const char*> more) {
    for (const char* k : more) keys.insert(k);
  };
  if (command != "decay" && command != "strichartz") keys.insert(dtn.begin(), dtn.end());
  if (command == "simulate")
    add({"evolution.dt", "evolution.scheme", "evolution.T", "evolution.snapshot_every",
         "evolution.log_every"});
  if (command == "normalform") add({"evolution.dt", "evolution.scheme", "evolution.T", "sweep.eps"});
  if (command == "lifespan")
    add({"evolution.dt", "evolution.scheme", "sweep.eps", "lifespan.T_max", "lifespan.sobolev"});
  if (command == "dtn-verify") add({"sweep.eps"});
  if (command == "decay")
    add({"decay.k", "decay.t_min", "decay.t_max", "decay.samples", "decay.fit_window"});
  if (command == "strichartz") add({"sweep.T", "strichartz.dt"});
  return keys;
}

double default_period(const std::string& command) {
  if (command == "dtn-verify") return 2 * pi;
  if (command == "normalform" || command == "decay" || command == "strichartz") return 8 * pi;
  return 4 * pi;
}

int checked_int(const Config& c, const std::string& key, long long fallback, long long lo,
                long long hi) {
  const long long v = c.integer(key, fallback);
  if (v < lo || v > hi)
    throw ConfigError(key, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double positive(const Config& c, const std::string& key, double fallback) {
  const double v = c.real(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
  return v;
}

void check_amplitude(const std::string& key, double eps) {
  if (!(eps >= 0.0)) throw ConfigError(key, "amplitude must be non-negative");
  if (eps > 0.1) throw ConfigError(key, "amplitude above the small-data guard 0.1");
}

RealField bump(const Grid& g, double c1, double c2, double sigma) {
  return sample(g, [=](double x, double y) {
    const double a = x - c1, b = y - c2;
    return std::exp(-(a * a + b * b) / (2 * sigma * sigma));
  });
}

std::ofstream open_csv(const std::filesystem::path& path, const std::string& command,
                       const ExperimentConfig& cfg, const std::vector<std::uint64_t>& seeds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  out << "# gravwave " << command << "\n# n = " << cfg.n << "\n# R = " << cfg.R << "\n# seed = "
      << cfg.seed << "\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) out << "# cell " << i << " seed = " << seeds[i] << "\n";
  return out;
}

const char* kind_name(DataKind k) {
  switch (k) {
    case DataKind::gaussian: return "gaussian";
    case DataKind::mode: return "mode";
    default: return "two_bump";
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t index) { return splitmix64(base + index); }

ExperimentConfig read_config(const Config& c, const std::string& command) {
  if (!kCommands.count(command)) throw ConfigError("", "unknown command '" + command + "'");
  c.reject_unknown(allowed_keys(command));
  ExperimentConfig cfg;

  cfg.n = checked_int(c, "grid.n", 32, 8, 1 << 14);
  if ((cfg.n & (cfg.n - 1)) != 0) throw ConfigError("grid.n", "must be a power of two");
  cfg.R = positive(c, "grid.R", default_period(command));

  cfg.dtn.depth = c.real("dtn.Y", 0.0);
  if (cfg.dtn.depth < 0.0) throw ConfigError("dtn.Y", "must be non-negative");
  cfg.dtn.levels = checked_int(c, "dtn.ny", cfg.dtn.levels, 4, 4096);
  cfg.dtn.tol = positive(c, "dtn.tol", command == "dtn-verify" ? 1e-13 : cfg.dtn.tol);
  cfg.dtn.max_iter = checked_int(c, "dtn.max_iter", cfg.dtn.max_iter, 1, 100000);
  const std::string mode = c.text("dtn.mode", command == "lifespan" ? "series2" : "full");
  if (mode == "full") cfg.mode = DtnMode::full;
  else if (mode == "series2") cfg.mode = DtnMode::series2;
  else throw ConfigError("dtn.mode", "expected full or series2, got '" + mode + "'");

  cfg.dt = positive(c, "evolution.dt", command == "lifespan" ? 0.05 : 0.01);
  const std::string scheme = c.text("evolution.scheme", "ifrk4");
  if (scheme == "ifrk4") cfg.scheme = Scheme::ifrk4;
  else if (scheme == "rk4") cfg.scheme = Scheme::rk4;
  else throw ConfigError("evolution.scheme", "expected ifrk4 or rk4, got '" + scheme + "'");
  cfg.T = positive(c, "evolution.T", command == "normalform" ? 10.0 : 1.0);
  cfg.snapshot_every = checked_int(c, "evolution.snapshot_every", 0, 0, 1 << 30);
  cfg.log_every = checked_int(c, "evolution.log_every", 1, 1, 1 << 30);

  const std::string kind = c.text("data.kind", command == "dtn-verify" ? "mode" : "gaussian");
  if (kind == "gaussian") cfg.kind = DataKind::gaussian;
  else if (kind == "mode") cfg.kind = DataKind::mode;
  else if (kind == "two_bump") cfg.kind = DataKind::two_bump;
  else throw ConfigError("data.kind", "expected gaussian, mode or two_bump, got '" + kind + "'");
  cfg.eps = c.real("data.eps", 0.01);
  check_amplitude("data.eps", cfg.eps);
  const long long seed = c.integer("data.seed", 1);
  if (seed < 0) throw ConfigError("data.seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.sigma = positive(c, "data.sigma", 1.0);
  cfg.m1 = checked_int(c, "data.m1", 1, -(1 << 20), 1 << 20);
  cfg.m2 = checked_int(c, "data.m2", 0, -(1 << 20), 1 << 20);
  cfg.separation = c.real("data.separation", cfg.R / 4);

  // Grid and data must be compatible before anything is computed.
  if (cfg.kind == DataKind::mode) {
    if (cfg.m1 == 0 && cfg.m2 == 0) throw ConfigError("data.m1", "mode (0, 0) is the mean");
    if (3 * std::abs(cfg.m1) >= cfg.n) throw ConfigError("data.m1", "mode outside the dealiased band |m| < n/3");
    if (3 * std::abs(cfg.m2) >= cfg.n) throw ConfigError("data.m2", "mode outside the dealiased band |m| < n/3");
  } else {
    const double shell = (cfg.n / 2) * 2 * pi / cfg.R;
    if (shell * cfg.sigma < 3.0)
      throw ConfigError("data.sigma", "Gaussian not resolved: needs (n/2)(2 pi/R) sigma >= 3");
    if (cfg.R < 8 * cfg.sigma) throw ConfigError("data.sigma", "Gaussian wider than R/8");
    if (cfg.kind == DataKind::two_bump &&
        (!(cfg.separation > 0.0) || cfg.separation + 8 * cfg.sigma > cfg.R))
      throw ConfigError("data.separation", "bumps must fit in the period: 0 < separation <= R - 8 sigma");
  }

  const std::vector<double> default_eps =
      command == "dtn-verify" ? std::vector<double>{1e-2, 1e-3, 1e-4}
                              : std::vector<double>{0.02, 0.01, 0.005};
  cfg.eps_list = c.reals("sweep.eps", default_eps);
  for (double e : cfg.eps_list) {
    check_amplitude("sweep.eps", e);
    if (e == 0.0) throw ConfigError("sweep.eps", "sweep amplitudes must be positive");
  }
  cfg.T_list = c.reals("sweep.T", {10.0, 100.0, 1000.0});
  for (double t : cfg.T_list)
    if (!(t > 0.0)) throw ConfigError("sweep.T", "times must be positive");

  if (c.has("decay.k")) cfg.band = checked_int(c, "decay.k", 0, -64, 64);
  cfg.t_min = c.real("decay.t_min", 5.0);
  cfg.t_max = c.real("decay.t_max", 40.0);
  if (cfg.t_min < 0.0) throw ConfigError("decay.t_min", "must be non-negative");
  if (!(cfg.t_max > cfg.t_min)) throw ConfigError("decay.t_max", "must exceed decay.t_min");
  cfg.samples = checked_int(c, "decay.samples", 32, 2, 1 << 20);
  if (c.has("decay.fit_window")) {
    const std::vector<double> w = c.reals("decay.fit_window", {});
    if (w.size() != 2 || !(w[1] > w[0])) throw ConfigError("decay.fit_window", "expected 'lo, hi' with lo < hi");
    cfg.fit_window = std::make_pair(w[0], w[1]);
  }
  cfg.strichartz_dt = c.real("strichartz.dt", 0.0);
  if (cfg.strichartz_dt < 0.0) throw ConfigError("strichartz.dt", "must be non-negative");
  cfg.T_max = c.real("lifespan.T_max", 50 * cfg.R);
  if (!(cfg.T_max > 0.0)) throw ConfigError("lifespan.T_max", "must be positive");
  cfg.sobolev = checked_int(c, "lifespan.sobolev", kDefaultSobolevIndex, 0, 64);

  if (command == "simulate" || command == "normalform" || command == "lifespan") {
    const Grid g = cfg.grid();
    const double limit = 0.5 / std::sqrt(g.max_freq());
    if (cfg.dt > limit)
      throw ConfigError("evolution.dt", "above the stability limit 0.5/sqrt(max |xi|) = " +
                                            std::to_string(limit));
    const double amp = command == "simulate"
                           ? cfg.eps
                           : *std::max_element(cfg.eps_list.begin(), cfg.eps_list.end());
    const SurfaceState s = initial_state(cfg, amp, cell_seed(cfg.seed, 0));
    const std::string key = command == "simulate" ? "data.eps" : "sweep.eps";
    if (sup_norm(s.h) >= amplitude_limit(g))
      throw ConfigError(key, "surface amplitude not resolved on this grid (limit R/n)");
    const Gradient dh = gradient(s.h);
    if (sup_norm(dh.d1 * dh.d1 + dh.d2 * dh.d2) > kMaxSlope * kMaxSlope)
      throw ConfigError(key, "initial slope |grad h| above the DtN guard " + std::to_string(kMaxSlope));
  }
  return cfg;
}

SurfaceState initial_state(const ExperimentConfig& cfg, double eps, std::uint64_t seed) {
  const Grid g = cfg.grid();
  const double c = cfg.R / 2;
  RealField h(g);
  switch (cfg.kind) {
    case DataKind::gaussian:
      h = bump(g, c, c, cfg.sigma);
      break;
    case DataKind::mode: {
      const double k1 = 2 * pi * cfg.m1 / cfg.R, k2 = 2 * pi * cfg.m2 / cfg.R;
      h = sample(g, [=](double x, double y) { return std::cos(k1 * x + k2 * y); });
      break;
    }
    case DataKind::two_bump: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> jitter(-0.5 * cfg.sigma, 0.5 * cfg.sigma);
      const double a1 = c - cfg.separation / 2 + jitter(rng), a2 = c + jitter(rng);
      const double b1 = c + cfg.separation / 2 + jitter(rng), b2 = c + jitter(rng);
      h = bump(g, a1, a2, cfg.sigma) + bump(g, b1, b2, cfg.sigma);
      break;
    }
  }
  h *= eps;
  return make_state(h, RealField(g));
}

SpectralField linear_data(const ExperimentConfig& cfg) {
  if (cfg.kind == DataKind::gaussian) return gaussian_data(cfg.grid(), cfg.sigma);
  return transform(initial_state(cfg, 1.0, cell_seed(cfg.seed, 0)).h);
}

int thread_budget() {
  if (const char* env = std::getenv("GRAVWAVE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void run_cells(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(thread_budget(), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

LifespanRecord lifespan(const ExperimentConfig& cfg, double eps, std::uint64_t seed) {
  LifespanRecord rec{eps, cfg.R, cfg.T_max, true, false, seed};
  SurfaceState s = initial_state(cfg, eps, seed);
  const double start = sobolev_norm(complex_variable(s), cfg.sobolev);
  if (start == 0.0) return rec;
  Zakharov engine(s.grid(), cfg.zakharov());
  const long steps = std::lround(std::ceil(cfg.T_max / cfg.dt));
  const double h = cfg.T_max / steps;
  for (long k = 0; k < steps; ++k) {
    try {
      s = engine.step(s, h, cfg.scheme);
    } catch (const BlowUp& e) {
      rec.T_double = std::max(e.last_good().t, h);
      rec.censored = false;
      rec.blowup = true;
      return rec;
    }
    if (sobolev_norm(complex_variable(s), cfg.sobolev) >= 2 * start) {
      rec.T_double = s.t;
      rec.censored = false;
      return rec;
    }
  }
  return rec;
}

LifespanReport lifespan_sweep(const ExperimentConfig& cfg) {
  LifespanReport rep;
  rep.records.resize(cfg.eps_list.size());
  run_cells(cfg.eps_list.size(), [&](std::size_t i) {
    rep.records[i] = lifespan(cfg, cfg.eps_list[i], cell_seed(cfg.seed, i));
  });
  std::vector<double> e, t;
  for (const auto& r : rep.records) {
    e.push_back(r.epsilon);
    t.push_back(r.T_double);
    rep.censored += r.censored;
  }
  if (e.size() >= 2) rep.slope = fit_power_law(e, t);
  return rep;
}

std::vector<StrichartzRow> strichartz_sweep(const ExperimentConfig& cfg) {
  const SpectralField u0 = linear_data(cfg);
  const double h7 = sobolev_norm(u0, 7.0);
  std::vector<StrichartzRow> rows(cfg.T_list.size());
  run_cells(rows.size(), [&](std::size_t i) {
    const double T = cfg.T_list[i];
    const double norm = strichartz_norm(u0, T, cfg.strichartz_dt);
    rows[i] = {T, norm, norm / (std::sqrt(std::log1p(T) * (1 + T / cfg.R)) * h7)};
  });
  return rows;
}

DtnOrderReport dtn_order_report(const ExperimentConfig& cfg) {
  const Grid g = cfg.grid();
  const double k = 2 * pi / cfg.R;
  const RealField phi = sample(g, [k](double, double y) { return std::cos(k * y); });
  DtnOrderReport rep;
  rep.eps = cfg.eps_list;
  rep.residuals.resize(rep.eps.size());
  run_cells(rep.eps.size(), [&](std::size_t i) {
    const RealField h = initial_state(cfg, rep.eps[i], cell_seed(cfg.seed, i)).h;
    const RealField G = dtn_full(h, phi, cfg.dtn).G;
    for (int order = 0; order <= 2; ++order)
      rep.residuals[i][order] = l2_norm(G - dtn_series(h, phi, order));
  });
  if (rep.eps.size() >= 2)
    for (int order = 0; order <= 2; ++order) {
      std::vector<double> r;
      for (const auto& row : rep.residuals) r.push_back(row[order]);
      rep.slopes[order] = fit_power_law(rep.eps, r);
    }
  return rep;
}

int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  const std::uint64_t seed = cell_seed(cfg.seed, 0);
  SurfaceState s = initial_state(cfg, cfg.eps, seed);
  Zakharov engine(s.grid(), cfg.zakharov());
  const long steps = std::max(1L, std::lround(cfg.T / cfg.dt));
  const double h = cfg.T / steps;
  TrajectoryLog traj;
  auto snapshot = [&](long k) {
    std::ostringstream name;
    name << "snapshot_" << std::setw(7) << std::setfill('0') << k;
    write_snapshot(out / (name.str() + "_h.gws"), s.h);
    write_snapshot(out / (name.str() + "_phi.gws"), s.phi);
    traj.snapshots.push_back(name.str());
  };
  int code = 0;
  std::string failure;
  traj.append(measure(engine, s));
  if (cfg.snapshot_every > 0) snapshot(0);
  for (long k = 1; k <= steps; ++k) {
    try {
      s = engine.step(s, h, cfg.scheme);
      if (k % cfg.log_every == 0 || k == steps) traj.append(measure(engine, s));
    } catch (const BlowUp& e) {
      code = kExitBlowUp;
      failure = std::string("blowup: ") + e.what();
      break;
    } catch (const DtnNonConvergence& e) {
      code = kExitDtnFailure;
      failure = std::string("dtn: ") + e.what();
      break;
    }
    if (cfg.snapshot_every > 0 && k % cfg.snapshot_every == 0) snapshot(k);
  }
  std::ofstream csv = open_csv(out / "trajectory.csv", "simulate", cfg, {seed});
  traj.write_csv(csv);
  log << std::setprecision(17) << "data = " << kind_name(cfg.kind) << "\neps = " << cfg.eps
      << "\nsteps_logged = " << traj.records.size() << "\nsnapshots = " << traj.snapshots.size()
      << "\nfinal_t = " << traj.records.back().t << "\nfinal_energy = " << traj.records.back().energy
      << "\n";
  if (code != 0) log << failure << "\n";
  return code;
}

int cmd_dtn_verify(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  const DtnOrderReport rep = dtn_order_report(cfg);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < rep.eps.size(); ++i) seeds.push_back(cell_seed(cfg.seed, i));
  std::ofstream csv = open_csv(out / "dtn_orders.csv", "dtn-verify", cfg, seeds);
  csv << "epsilon,res0,res1,res2\n";
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    csv << rep.eps[i] << ',' << rep.residuals[i][0] << ',' << rep.residuals[i][1] << ','
        << rep.residuals[i][2] << '\n';
  log << std::setprecision(17) << "slope_order0 = " << rep.slopes[0] << "\nslope_order1 = "
      << rep.slopes[1] << "\nslope_order2 = " << rep.slopes[2] << "\n";
  return 0;
}

int cmd_decay(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  std::vector<double> times(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) {
    const double f = double(i) / (cfg.samples - 1);
    times[i] = cfg.t_min > 0.0 ? cfg.t_min * std::pow(cfg.t_max / cfg.t_min, f)
                               : cfg.t_min + f * (cfg.t_max - cfg.t_min);
  }
  DecayCurve curve = decay_curve(linear_data(cfg), times, cfg.band);
  if (cfg.fit_window) {
    curve.fit_window = *cfg.fit_window;
    curve.fitted_slope = fit_decay(curve, curve.fit_window);
  }
  std::ofstream csv = open_csv(out / "decay.csv", "decay", cfg, {});
  csv << "t,value\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) csv << curve.times[i] << ',' << curve.values[i] << '\n';
  log << std::setprecision(17) << "band = " << (cfg.band ? std::to_string(*cfg.band) : "all")
      << "\nfit_window = " << curve.fit_window.first << ", " << curve.fit_window.second
      << "\nslope = " << curve.fitted_slope << "\n";
  return 0;
}

int cmd_strichartz(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  const std::vector<StrichartzRow> rows = strichartz_sweep(cfg);
  std::ofstream csv = open_csv(out / "strichartz.csv", "strichartz", cfg, {});
  csv << "T,norm,bound_ratio\n";
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rows) {
    csv << r.T << ',' << r.norm << ',' << r.bound_ratio << '\n';
    lo = std::min(lo, r.bound_ratio);
    hi = std::max(hi, r.bound_ratio);
  }
  log << std::setprecision(17) << "ratio_spread = " << (lo > 0.0 ? hi / lo : 0.0) << "\n";
  return 0;
}

int cmd_normalform(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  std::vector<ResidualRow> rows(cfg.eps_list.size());
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < rows.size(); ++i) seeds.push_back(cell_seed(cfg.seed, i));
  run_cells(rows.size(), [&](std::size_t i) {
    auto data = [&](double e) { return initial_state(cfg, e, seeds[i]); };
    rows[i] = residual_order(data, cfg.T, cfg.dt, {cfg.eps_list[i]}, cfg.zakharov(), cfg.scheme).rows[0];
  });
  std::vector<double> e, d, r;
  std::ofstream csv = open_csv(out / "normalform.csv", "normalform", cfg, seeds);
  csv << "epsilon,duhamel,residual\n";
  for (const auto& row : rows) {
    csv << row.epsilon << ',' << row.duhamel << ',' << row.residual << '\n';
    e.push_back(row.epsilon);
    d.push_back(row.duhamel);
    r.push_back(row.residual);
  }
  log << std::setprecision(17);
  if (e.size() >= 2)
    log << "slope_duhamel = " << fit_power_law(e, d) << "\nslope_residual = " << fit_power_law(e, r) << "\n";
  return 0;
}

int cmd_lifespan(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  const LifespanReport rep = lifespan_sweep(cfg);
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rep.records) seeds.push_back(r.seed);
  std::ofstream csv = open_csv(out / "lifespan.csv", "lifespan", cfg, seeds);
  csv << "epsilon,R,T_double,censored,blowup\n";
  for (const auto& r : rep.records)
    csv << r.epsilon << ',' << r.R << ',' << r.T_double << ',' << r.censored << ',' << r.blowup << '\n';
  log << std::setprecision(17) << "slope = " << rep.slope << "\ncensored = " << rep.censored << " of "
      << rep.records.size() << "\n";
  return 0;
}

int run_command(const std::string& command, const Config& config, const std::filesystem::path& out,
                std::ostream& log) {
  const ExperimentConfig cfg = read_config(config, command);
  std::filesystem::create_directories(out);
  try {
    if (command == "simulate") return cmd_simulate(cfg, out, log);
    if (command == "dtn-verify") return cmd_dtn_verify(cfg, out, log);
    if (command == "decay") return cmd_decay(cfg, out, log);
    if (command == "strichartz") return cmd_strichartz(cfg, out, log);
    if (command == "normalform") return cmd_normalform(cfg, out, log);
    return cmd_lifespan(cfg, out, log);
  } catch (const BlowUp& e) {
    log << "blowup: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const DtnNonConvergence& e) {
    log << "dtn: " << e.what() << "\n";
    return kExitDtnFailure;
  } catch (const DtnPrecondition& e) {
    log << "dtn: " << e.what() << "\n";
    return kExitDtnFailure;
  }
}

}  // namespace gravwave::cli
