#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "experiments.hpp"

using namespace gravwave::cli;
namespace fs = std::filesystem;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in);
}

std::string error_key(const std::string& text, const std::string& command) {
  try {
    read_config(parse(text), command);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gravwave_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config file syntax") {
  const Config c = parse("# comment\n grid.n = 64  \ngrid.R = 4pi # trailing\nsweep.eps = 0.02, 0.01,0.005\n\n");
  CHECK(c.integer("grid.n", 0) == 64);
  CHECK(c.real("grid.R", 0.0) == doctest::Approx(4 * std::numbers::pi));
  CHECK(c.reals("sweep.eps", {}) == std::vector<double>{0.02, 0.01, 0.005});
  CHECK(parse_real("x.y", "pi") == std::numbers::pi);
  CHECK(parse_real("x.y", "100 * pi") == doctest::Approx(100 * std::numbers::pi));
  CHECK(parse_real("x.y", "1e-3") == 1e-3);
  CHECK_THROWS_AS(parse("grid.n 32\n"), ConfigError);
  CHECK_THROWS_AS(parse("grid = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse("grid.n = \n"), ConfigError);
  CHECK_THROWS_AS(parse("grid.n = 1\ngrid.n = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_real("x.y", "12abc"), ConfigError);
}

TEST_CASE("validation names the offending key") {
  CHECK(error_key("grid.n = 32\ndata.color = red\n", "simulate") == "data.color");
  CHECK(error_key("grid.n = 48\n", "simulate") == "grid.n");
  CHECK(error_key("grid.R = -1\n", "decay") == "grid.R");
  CHECK(error_key("data.eps = 0.2\n", "simulate") == "data.eps");
  CHECK(error_key("sweep.eps = 0.01, 0.3\n", "lifespan") == "sweep.eps");
  CHECK(error_key("evolution.dt = 1\n", "simulate") == "evolution.dt");
  CHECK(error_key("data.kind = mode\ndata.m2 = 11\n", "simulate") == "data.m2");
  CHECK(error_key("data.kind = blob\n", "simulate") == "data.kind");
  CHECK(error_key("dtn.mode = exact\n", "simulate") == "dtn.mode");
  CHECK(error_key("grid.n = 8\ngrid.R = 100pi\n", "decay") == "data.sigma");
  CHECK(error_key("decay.t_min = 10\ndecay.t_max = 5\n", "decay") == "decay.t_max");
  CHECK(error_key("evolution.T = 3\n", "decay") == "evolution.T");
  CHECK(error_key("grid.R = 2pi\ndata.kind = mode\ndata.m1 = 10\ndata.eps = 0.06\n", "simulate") ==
        "data.eps");
  CHECK(error_key("grid.n = 32\n", "simulate") == "<none>");
  CHECK_THROWS_AS(read_config(parse(""), "frobnicate"), ConfigError);
}

TEST_CASE("defaults per command") {
  const ExperimentConfig life = read_config(parse(""), "lifespan");
  CHECK(life.R == doctest::Approx(4 * std::numbers::pi));
  CHECK(life.T_max == doctest::Approx(200 * std::numbers::pi));
  CHECK(life.sobolev == 11);
  CHECK(life.mode == gravwave::DtnMode::series2);
  CHECK(life.eps_list == std::vector<double>{0.02, 0.01, 0.005});
  const ExperimentConfig dtn = read_config(parse(""), "dtn-verify");
  CHECK(dtn.kind == DataKind::mode);
  CHECK(dtn.eps_list == std::vector<double>{1e-2, 1e-3, 1e-4});
}

TEST_CASE("seed derivation") {
  // First output of the reference splitmix64 generator started from state 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafull);
  CHECK(cell_seed(7, 0) != cell_seed(7, 1));
  CHECK(cell_seed(7, 1) == splitmix64(8));
}

TEST_CASE("cells run in order-independent fashion and rethrow the first failure") {
  std::vector<int> out(10, 0);
  run_cells(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  CHECK_THROWS_WITH(run_cells(5,
                              [](std::size_t i) {
                                if (i >= 2) throw std::runtime_error("cell " + std::to_string(i));
                              }),
                    "cell 2");
  ::setenv("GRAVWAVE_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  ::unsetenv("GRAVWAVE_THREADS");
  CHECK(thread_budget() >= 1);
}

TEST_CASE("simulate: zero data stays zero and outputs are reproducible") {
  const fs::path a = scratch("zero");
  std::ostringstream log;
  const Config zero = parse("grid.n = 16\ndata.eps = 0\ngrid.R = 2pi\ndata.sigma = 0.75\nevolution.T = 0.1\n");
  CHECK(run_command("simulate", zero, a, log) == 0);
  std::istringstream csv(slurp(a / "trajectory.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    ++rows;
    std::istringstream fields(line);
    std::string f;
    std::vector<double> v;
    while (std::getline(fields, f, ',')) v.push_back(std::stod(f));
    REQUIRE(v.size() == 9);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 0.0);
    CHECK(v[5] == 0.0);
  }
  CHECK(rows == 11);

  const Config cfg = parse("grid.n = 16\ngrid.R = 2pi\ndata.kind = two_bump\ndata.sigma = 0.5\n"
                           "data.separation = 2\ndata.seed = 42\nevolution.dt = 0.02\nevolution.T = 0.2\n"
                           "evolution.snapshot_every = 5\n");
  const fs::path b1 = scratch("rep1"), b2 = scratch("rep2");
  CHECK(run_command("simulate", cfg, b1, log) == 0);
  CHECK(run_command("simulate", cfg, b2, log) == 0);
  CHECK(slurp(b1 / "trajectory.csv") == slurp(b2 / "trajectory.csv"));
  CHECK(slurp(b1 / "trajectory.csv").find("# cell 0 seed = " + std::to_string(cell_seed(42, 0))) !=
        std::string::npos);
  CHECK(fs::exists(b1 / "snapshot_0000010_h.gws"));
  CHECK(slurp(b1 / "snapshot_0000010_phi.gws") == slurp(b2 / "snapshot_0000010_phi.gws"));
}

TEST_CASE("dtn-verify reports the expansion orders") {
  const ExperimentConfig cfg = read_config(parse("grid.n = 16\n"), "dtn-verify");
  const DtnOrderReport rep = dtn_order_report(cfg);
  CHECK(rep.slopes[0] == doctest::Approx(1.0).epsilon(0.1));
  CHECK(rep.slopes[1] == doctest::Approx(2.0).epsilon(0.075));
  CHECK(rep.slopes[2] == doctest::Approx(3.0).epsilon(0.066));
}

TEST_CASE("lifespan bookkeeping") {
  const ExperimentConfig cfg =
      read_config(parse("grid.n = 16\ngrid.R = 4pi\ndata.kind = mode\ndata.m1 = 2\nevolution.dt = 0.1\n"
                        "lifespan.T_max = 1\n"),
                  "lifespan");
  const LifespanRecord zero = lifespan(cfg, 0.0, 1);
  CHECK(zero.censored);
  CHECK(zero.T_double == 1.0);
  const LifespanRecord r = lifespan(cfg, 0.01, 1);
  CHECK(r.censored);
  CHECK_FALSE(r.blowup);
  CHECK(r.R == cfg.R);
}
