#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "gravwave/grid.hpp"
#include "gravwave/snapshot.hpp"

namespace gravwave {

// Explicit Taylor orders of the Dirichlet-to-Neumann operator. Products are
// dealiased: quadratic terms keep |m_i| < n/3, cubic terms |m_i| < n/4.

/// |grad| phi.
RealField dtn_order0(const RealField& phi);
/// -|grad|(h |grad| phi) - div(h grad phi).
RealField dtn_order1(const RealField& h, const RealField& phi);
/// Quadratic part of B: -|grad|(h |grad| phi) - h Lap phi.
RealField b2(const RealField& h, const RealField& phi);
/// Cubic part of B: |grad|(h|grad|(h|grad|phi)) + (Lap(h^2|grad|phi) + |grad|(h^2 Lap phi))/2
///   - |grad h|^2 |grad| phi.
RealField b3_cubic(const RealField& h, const RealField& phi);
/// Cubic part of G: b3_cubic + |grad h|^2 |grad| phi.
RealField dtn_order2(const RealField& h, const RealField& phi);
/// Cubic bulk nonlinearity of the U equation (complex valued).
ComplexField n3_explicit(const RealField& h, const RealField& phi);
/// Sum of the orders 0..order.
RealField dtn_series(const RealField& h, const RealField& phi, int order);

struct DtnParams {
  /// Depth of the truncated fluid column; 0 picks e^{-Y k_min} = 1e-12.
  double depth = 0.0;
  int levels = 24;
  double tol = 1e-10;
  int max_iter = 60;
};

/// (grad_x u, d_y u) of the flattened potential on the vertical levels,
/// ordered from the bottom y = -depth up to the surface y = 0.
struct VolumeGradient {
  Grid grid;
  double depth = 0.0;
  std::vector<double> levels;
  std::vector<RealField> gx1, gx2, gy;
  int iterations = 0;
  double residual = 0.0;
};

/// Conversion to and from the volume snapshot layout (level-major blocks).
VolumeSnapshot to_snapshot(const VolumeGradient& g);
VolumeGradient from_snapshot(const VolumeSnapshot& s);

struct DtnResult {
  RealField G;
  RealField B;
  RealField V1, V2;
  int iterations = 0;
  double residual = 0.0;
};

class DtnNonConvergence : public std::runtime_error {
 public:
  DtnNonConvergence(int iterations, double residual);
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Raised when |grad h| exceeds the contraction guard.
class DtnPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kMaxSlope = 0.5;

/// Nonlinear part of a previous solution. Handing it back to the next solve
/// on nearby data starts the iteration closer to the fixed point.
struct DtnWarmStart {
  std::vector<complex> dU, dGy;
};

/// Fixed-point solver for the flattened Dirichlet problem. Construction
/// precomputes the vertical kernel matrices for the grid; solves reuse them.
class DtnSolver {
 public:
  DtnSolver(const Grid& grid, const DtnParams& params = {});
  ~DtnSolver();
  DtnSolver(DtnSolver&&) noexcept;
  DtnSolver& operator=(DtnSolver&&) noexcept;

  const Grid& grid() const;
  const DtnParams& params() const;
  double depth() const;
  /// Level heights y_m in [-depth, 0], increasing.
  const std::vector<double>& levels() const;

  VolumeGradient extend(const RealField& h, const RealField& phi) const;
  DtnResult solve(const RealField& h, const RealField& phi, DtnWarmStart* warm = nullptr) const;

  /// Relative L2 residual of the flattened elliptic equation
  /// (1+|grad h|^2) d_y gy + div gx - 2 grad h . d_y gx - Lap h gy = 0,
  /// with d_y taken by polynomial differentiation across the levels.
  double elliptic_residual(const VolumeGradient& g, const RealField& h) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

VolumeGradient harmonic_extension(const RealField& h, const RealField& phi,
                                  const DtnParams& params = {});
/// Uses a per-thread solver cache keyed on grid and parameters.
DtnResult dtn_full(const RealField& h, const RealField& phi, const DtnParams& params = {});
const DtnSolver& cached_solver(const Grid& grid, const DtnParams& params);

}  // namespace gravwave
