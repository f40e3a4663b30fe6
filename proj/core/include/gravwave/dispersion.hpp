#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gravwave/grid.hpp"

namespace gravwave {

/// e^{-i t Lambda} F.
SpectralField propagate_linear(const SpectralField& F, double t);

/// Fourier coefficients exp(-|xi|^2 / (2 sigma^2)) on the modes inside the
/// grid shell |xi| < (n/2) 2pi/R, shifted to centre the bump at (R/2, R/2).
SpectralField gaussian_data(const Grid& grid, double sigma = 1.0);

struct DecayCurve {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<int> k;
  double fitted_slope = 0.0;
  std::pair<double, double> fit_window{0.0, 0.0};
};

/// Time after which packets at frequency |xi| ~ k_typ re-enter: 2 R sqrt(k_typ).
double wrap_time(double period, double k_typ);

/// sup |e^{-i t Lambda} u0| (of P_k u0 when k is given) at each time. The slope
/// is fitted on [5, wrap_time] when at least five samples fall inside, else 0.
DecayCurve decay_curve(const SpectralField& u0, const std::vector<double>& times,
                       std::optional<int> k = std::nullopt);

/// Least-squares slope of log value against log(1 + t) over the window;
/// throws std::invalid_argument with fewer than five samples inside.
double fit_decay(const DecayCurve& curve, std::pair<double, double> window);

/// sum_{j<=6} sup |(|grad|^j) u|.
double w6_norm(const SpectralField& F);

inline constexpr int kStrichartzSteps = 2048;

/// (int_0^T |e^{-is Lambda} u0|_{W^{6,inf}}^2 ds)^{1/2} by the midpoint rule
/// with step dt (default T / 2048).
double strichartz_norm(const SpectralField& u0, double T, double dt = 0.0);

}  // namespace gravwave
