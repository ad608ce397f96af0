#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace transit_measure::numeric {

/// -(1/beta) * log(sum_i exp(-beta * l_i)), shifted by min l_i so the
/// largest exponent is zero.
inline double soft_min(std::span<const double> durations, double beta) {
  const double lmin = *std::min_element(durations.begin(), durations.end());
  double sum = 0.0;
  for (double l : durations) sum += std::exp(-beta * (l - lmin));
  return lmin - std::log(sum) / beta;
}

/// log(1 - exp(-z)) for z > 0.
inline double log1mexp(double z) {
  if (z <= 0.0) return -std::numeric_limits<double>::infinity();
  // Maechler's switch point: expm1 below log 2, log1p above
  if (z < 0.6931471805599453) return std::log(-std::expm1(-z));
  return std::log1p(-std::exp(-z));
}

/// x * log(x), with the 0 * log 0 = 0 limit.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace transit_measure::numeric
