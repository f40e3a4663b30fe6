#pragma once

#include <vector>

namespace gravwave {

/// Least-squares slope of y against x. Needs two distinct x values.
double fit_line_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Exponent p of the least-squares fit y ~ C x^p; all values must be positive.
double fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gravwave
