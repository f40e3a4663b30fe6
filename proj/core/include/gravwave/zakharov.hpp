#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gravwave/dtn.hpp"
#include "gravwave/grid.hpp"

namespace gravwave {

/// Surface elevation and boundary potential at time t. phi is kept mean-free.
struct SurfaceState {
  double t = 0.0;
  RealField h;
  RealField phi;
  const Grid& grid() const { return h.grid(); }
};

/// Cuts (h, phi) to the quadratic dealiasing band and removes the mean of phi.
SurfaceState make_state(const RealField& h, const RealField& phi, double t = 0.0);

enum class DtnMode { full, series2 };
enum class Scheme { rk4, ifrk4 };

struct ZakharovParams {
  DtnParams dtn;
  DtnMode mode = DtnMode::full;
  /// Drops the nonlinearity: the flow reduces to U_t = -i Lambda U.
  bool linear_only = false;
};

struct Tendency {
  RealField h_t;
  RealField phi_t;
};

/// Surface quantities derived from one DtN evaluation.
struct SurfaceKinematics {
  RealField G, B, V1, V2;
};

/// Raised when a step produces non-finite values, the surface leaves the
/// resolvable amplitude range, or the slope guard of the DtN solver trips.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& reason, SurfaceState last_good);
  const SurfaceState& last_good() const { return last_good_; }

 private:
  SurfaceState last_good_;
};

/// Evolution engine for one trajectory. Holds the DtN solver and the warm
/// start carried between consecutive solves; not shareable across threads.
class Zakharov {
 public:
  Zakharov(const Grid& grid, const ZakharovParams& params = {});
  ~Zakharov();
  Zakharov(Zakharov&&) noexcept;
  Zakharov& operator=(Zakharov&&) noexcept;

  const Grid& grid() const;
  const ZakharovParams& params() const;

  SurfaceKinematics kinematics(const SurfaceState& s);
  /// h_t = G(h) phi, phi_t = -h - |grad phi|^2/2 + (G phi + grad h.grad phi)^2 / (2(1+|grad h|^2)).
  Tendency rhs(const SurfaceState& s);
  /// Same flow with phi_t = -h + (B^2 - 2 B V.grad h - |V|^2)/2.
  Tendency rhs_velocity_form(const SurfaceState& s);
  /// Nonlinear part N of U_t = -i Lambda U + N, in Fourier variables.
  SpectralField nonlinearity(const SpectralField& U);

  SurfaceState step(const SurfaceState& s, double dt, Scheme scheme = Scheme::ifrk4);
  double energy(const SurfaceState& s);
  /// a = (1 + a~ - G(h)[B^2 + |V|^2 + 2h]/2) / (1 + |grad h|^2).
  RealField taylor_coefficient(const SurfaceState& s);

  /// Largest time step accepted by step(): 0.5 / sqrt(max |xi|).
  double max_dt() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Free-function forms; each builds a short-lived engine.
Tendency rhs(const SurfaceState& s, const ZakharovParams& params = {});
SurfaceState step(const SurfaceState& s, double dt, Scheme scheme,
                  const ZakharovParams& params = {});
double energy(const SurfaceState& s, const ZakharovParams& params = {});
RealField taylor_coefficient(const SurfaceState& s, const ZakharovParams& params = {});

/// U = h + i Lambda phi.
SpectralField complex_variable(const SurfaceState& s);
/// (h, phi) recovered from U; phi has zero mean.
SurfaceState from_complex_variable(const SpectralField& U, double t);
/// Zero-frequency coefficients of grad phi, divided by R^2.
std::array<double, 2> momentum(const SurfaceState& s);
double mean_h(const SurfaceState& s);
/// (h, -phi): evolving this forward retraces the original trajectory.
SurfaceState time_reversed(const SurfaceState& s);

/// sup|h| above which the surface is declared unresolved: R/n, half the
/// shortest resolvable wavelength.
double amplitude_limit(const Grid& grid);

struct TrajectoryRecord {
  double t = 0.0;
  double energy = 0.0;
  double hN = 0.0;
  double c6 = 0.0;
  double z = 0.0;
  double sup_h = 0.0;
  double min_a = 0.0;
  double px = 0.0;
  double py = 0.0;
};

struct TrajectoryLog {
  std::vector<TrajectoryRecord> records;
  std::vector<std::string> snapshots;
  /// Throws std::invalid_argument unless t increases strictly.
  void append(const TrajectoryRecord& r);
  void write_csv(std::ostream& out) const;
};

inline constexpr int kDefaultSobolevIndex = 11;

/// Diagnostics of one state; uses the engine for energy and a.
TrajectoryRecord measure(Zakharov& engine, const SurfaceState& s,
                         int sobolev_index = kDefaultSobolevIndex);

}  // namespace gravwave
