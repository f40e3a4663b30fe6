#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "gravwave/dispersion.hpp"
#include "gravwave/normalform.hpp"
#include "gravwave/zakharov.hpp"

namespace gravwave::cli {

enum class DataKind { gaussian, mode, two_bump };

struct ExperimentConfig {
  int n = 32;
  double R = 0.0;
  DtnParams dtn;
  DtnMode mode = DtnMode::full;
  double dt = 0.01;
  Scheme scheme = Scheme::ifrk4;
  double T = 1.0;
  int snapshot_every = 0;
  int log_every = 1;
  DataKind kind = DataKind::gaussian;
  double eps = 0.01;
  std::uint64_t seed = 1;
  double sigma = 1.0;
  int m1 = 1, m2 = 0;
  double separation = 0.0;
  std::vector<double> eps_list;
  std::vector<double> T_list;
  std::optional<int> band;
  double t_min = 5.0, t_max = 40.0;
  int samples = 32;
  std::optional<std::pair<double, double>> fit_window;
  double strichartz_dt = 0.0;
  double T_max = 0.0;
  int sobolev = kDefaultSobolevIndex;

  Grid grid() const { return Grid(n, R); }
  ZakharovParams zakharov() const { return {dtn, mode, false}; }
};

/// Reads and validates the keys a command accepts. Throws ConfigError naming
/// the offending key for unknown keys, bad values and grid/data mismatches.
ExperimentConfig read_config(const Config& c, const std::string& command);

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of sweep cell `index`.
std::uint64_t cell_seed(std::uint64_t base, std::size_t index);

/// Initial surface for the configured data kind at amplitude eps.
SurfaceState initial_state(const ExperimentConfig& cfg, double eps, std::uint64_t seed);
/// Linear-problem data: the Gaussian spectrum, a single mode, or two bumps.
SpectralField linear_data(const ExperimentConfig& cfg);

/// Worker count: GRAVWAVE_THREADS if set, else the hardware concurrency.
int thread_budget();
/// Runs fn(0..count-1) on at most thread_budget() threads; the first
/// exception by index is rethrown after all cells finish.
void run_cells(std::size_t count, const std::function<void(std::size_t)>& fn);

struct LifespanRecord {
  double epsilon = 0.0;
  double R = 0.0;
  double T_double = 0.0;
  bool censored = false;
  bool blowup = false;
  std::uint64_t seed = 0;
};

/// Time for |U|_{H^s} to reach twice its initial value, censored at T_max.
LifespanRecord lifespan(const ExperimentConfig& cfg, double eps, std::uint64_t seed);

struct LifespanReport {
  std::vector<LifespanRecord> records;
  double slope = 0.0;
  int censored = 0;
};
LifespanReport lifespan_sweep(const ExperimentConfig& cfg);

struct StrichartzRow {
  double T = 0.0;
  double norm = 0.0;
  double bound_ratio = 0.0;
};
/// norm / sqrt(log(1+T)(1+T/R)) |u0|_{H^7} for each T.
std::vector<StrichartzRow> strichartz_sweep(const ExperimentConfig& cfg);

struct DtnOrderReport {
  std::vector<double> eps;
  std::vector<std::array<double, 3>> residuals;
  std::array<double, 3> slopes{};
};
DtnOrderReport dtn_order_report(const ExperimentConfig& cfg);

/// Subcommands. Each writes CSV files to out and a summary to log; the
/// return value is the process exit code.
int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_dtn_verify(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_decay(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_strichartz(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_normalform(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_lifespan(const ExperimentConfig& cfg, const std::filesystem::path& out, std::ostream& log);

inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitDtnFailure = 3;

/// Dispatches a subcommand by name, mapping BlowUp and DtnNonConvergence to
/// their exit codes.
int run_command(const std::string& command, const Config& config, const std::filesystem::path& out,
                std::ostream& log);

}  // namespace gravwave::cli
