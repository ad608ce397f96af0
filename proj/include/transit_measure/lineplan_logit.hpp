// Line plan measure under logit routing with perceived travel time evaluation.
//
// Optimising over the jump sizes y_i = Delta_i instead of the gaps turns the
// problem into a separable convex one:
//
//   min (1/T) sum f_i(y_i)   s.t.  sum y_i = T,  y_i >= 0
//   f_i(y)  = y^2/2 + y tau_i(y)
//   tau_i(y) = l_i + (1/beta) log((1 - e^{-beta y}) / (1 - e^{-beta T}))
//
// f_i' is increasing with range R, so the KKT point is y_i = g_i(mu) with g_i
// the inverse of f_i'. The outer search bisects on mu until sum g_i(mu) = T;
// each g_i is itself evaluated by bisection.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "transit_measure/core.hpp"
#include "transit_measure/lineplan_sp.hpp"
#include "transit_measure/numeric.hpp"

namespace transit_measure {

struct LogitAllocation {
  std::vector<double> y;
  double mu = 0.0;
  double measure = 0.0;
  RoutingProbabilities probabilities;
};

struct ValueAndSlope {
  double value;
  double slope;
};

inline constexpr double kInverseTolerance = 1e-12;
inline constexpr double kStationarityTolerance = 1e-8;

namespace detail {

inline void require_positive_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw ValidationError("period must be positive and finite");
}

/// y / (1 - e^{-beta y}); tends to 1/beta as y -> 0.
inline double wait_share(double y, double beta) {
  if (y == 0.0) return 1.0 / beta;
  return y / -std::expm1(-beta * y);
}

/// z/(1 - e^{-z}) - 1 >= 0, accurate for small z.
inline double excess_above(double z) {
  if (z < 1e-2) {
    const double z2 = z * z;
    return z / 2.0 + z2 / 12.0 - z2 * z2 / 720.0 + z2 * z2 * z2 / 30240.0;
  }
  return z / -std::expm1(-z) - 1.0;
}

/// 1 - z/(e^z - 1) >= 0, accurate for small z.
inline double deficit_below(double z) {
  if (z < 1e-2) {
    const double z2 = z * z;
    return z / 2.0 - z2 / 12.0 + z2 * z2 / 720.0 - z2 * z2 * z2 / 30240.0;
  }
  return 1.0 - z / std::expm1(z);
}

}  // namespace detail

/// Value at departure of a route whose jump is y.
inline double tau_of_y(double y, double duration, double period, Beta beta) {
  if (!(y > 0.0)) throw ValidationError("tau_of_y: jump must be positive");
  detail::require_positive_period(period);
  const double b = beta.value();
  return duration + (numeric::log1mexp(b * y) - numeric::log1mexp(b * period)) / b;
}

/// Term f(y) of the objective and its derivative. At y = 0 the removable
/// singularity of f is filled with 0 and the derivative is -infinity.
inline ValueAndSlope f_and_fprime(double y, double duration, double period, Beta beta) {
  if (y < 0.0 || std::isnan(y)) throw ValidationError("f_and_fprime: y must be nonnegative");
  detail::require_positive_period(period);
  if (y == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
  const double tau = tau_of_y(y, duration, period, beta);
  return {0.5 * y * y + y * tau, tau + detail::wait_share(y, beta.value())};
}

/// Inverse of f'(.) at mu: the y > 0 with f'(y) = mu.
inline double g_inverse(double mu, double duration, double period, Beta beta) {
  if (!std::isfinite(mu)) throw ValidationError("g_inverse: mu must be finite");
  detail::require_positive_period(period);
  auto slope = [&](double y) { return f_and_fprime(y, duration, period, beta).slope; };
  const double tol = kInverseTolerance * std::max(1.0, std::abs(mu));

  if (slope(period) == mu) return period;
  double lo = period;
  double hi = period;
  while (lo > 0.0 && slope(lo) > mu) lo *= 0.5;
  while (slope(hi) < mu) hi *= 2.0;

  double best = hi;
  double best_err = std::abs(slope(hi) - mu);
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double s = slope(mid);
    const double err = std::abs(s - mu);
    if (err < best_err) {
      best = mid;
      best_err = err;
    }
    if (err <= tol) break;
    if (s < mu) lo = mid; else hi = mid;
  }
  if (lo > 0.0 && std::abs(slope(lo) - mu) < best_err) best = lo;
  return best;
}

/// (1/T) sum f_i(y_i)
inline double logit_allocation_objective(const RouteSet& r, double period, Beta beta,
                                         std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += f_and_fprime(y[i], r[i], period, beta).value;
  return s / period;
}

inline LogitAllocation solve_logit_allocation(const RouteSet& r, double period, Beta beta) {
  detail::require_positive_period(period);
  const std::size_t n = r.size();
  const auto durations = r.durations();

  auto allocate = [&](double mu) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = g_inverse(mu, durations[i], period, beta);
    return y;
  };
  auto total = [](const std::vector<double>& y) {
    double s = 0.0;
    for (double v : y) s += v;
    return s;
  };

  // f_i'(y) = f_0'(y) + l_i, so at y = T/n the longest route pins a multiplier
  // where every other route takes at least T/n, and the shortest one where
  // every other route takes at most T/n.
  const double even = period / static_cast<double>(n);
  const auto [min_it, max_it] = std::minmax_element(durations.begin(), durations.end());
  double mu_lo = f_and_fprime(even, *min_it, period, beta).slope;
  double mu_hi = f_and_fprime(even, *max_it, period, beta).slope;
  for (double step = 1.0; total(allocate(mu_lo)) > period; step *= 2.0) mu_lo -= step;
  for (double step = 1.0; total(allocate(mu_hi)) < period; step *= 2.0) mu_hi += step;

  const double target_tol = 1e-12 * period;
  double mu = 0.5 * (mu_lo + mu_hi);
  std::vector<double> y = allocate(mu);
  for (int iter = 0; iter < 2000; ++iter) {
    const double s = total(y);
    if (std::abs(s - period) <= target_tol) break;
    if (s < period) mu_lo = mu; else mu_hi = mu;
    const double mid = mu_lo + 0.5 * (mu_hi - mu_lo);
    if (!(mid > mu_lo && mid < mu_hi)) break;
    mu = mid;
    y = allocate(mu);
  }

  // Remove the last bit of residual so the probabilities sit on the simplex.
  const double scale = period / total(y);
  for (double& v : y) v *= scale;

  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = y[i] / period;
  double psum = 0.0;
  for (double v : p) psum += v;
  for (double& v : p) v /= psum;

  const double value = logit_allocation_objective(r, period, beta, y);
  return LogitAllocation{std::move(y), mu, value, RoutingProbabilities(std::move(p))};
}

inline double logit_lineplan_measure(const RouteSet& r, double period, Beta beta) {
  return solve_logit_allocation(r, period, beta).measure;
}

/// Gaps delta of the timetable realising an optimal allocation in the given
/// order; entry k is the gap before order[k] departs.
///
/// The textbook gap is tau_i(y_i) - tau_s(y_s) + y_i for successor s of i.
/// Substituting stationarity f_i'(y_i) = f_s'(y_s) rewrites it as
/// (1/beta) [A(beta y_s) + (beta y_i - A(beta y_i))] with
/// A(z) = z/(1 - e^{-z}) - 1, a sum of two nonnegative terms. This keeps
/// gaps positive even when both jumps are tiny next to the durations.
inline std::vector<double> logit_construction_gaps(const RouteSet& r, double period, Beta beta,
                                                   const LogitAllocation& alloc,
                                                   std::span<const std::size_t> order) {
  const std::size_t n = r.size();
  require_permutation(order, n);
  if (alloc.y.size() != n) throw ValidationError("allocation does not match the route set");
  double total = 0.0;
  for (double yi : alloc.y) {
    if (!(yi > 0.0)) throw ValidationError("allocation jumps must be positive");
    total += yi;
  }
  if (std::abs(total - period) > 1e-9 * std::max(1.0, period))
    throw ValidationError("allocation jumps do not sum to the period");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = f_and_fprime(alloc.y[i], r[i], period, beta).slope;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (hi - lo > kStationarityTolerance * std::max(1.0, std::abs(alloc.mu)))
    throw ValidationError("allocation is not stationary, refusing to build a timetable from it");

  const double b = beta.value();
  std::vector<double> gaps(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t route = order[k];
    const std::size_t prev = order[k == 0 ? n - 1 : k - 1];
    const double z_prev = b * alloc.y[prev];
    const double z_route = b * alloc.y[route];
    gaps[k] = (detail::excess_above(z_route) + detail::deficit_below(z_prev)) / b;
  }
  if (n == 1) gaps[0] = period;
  return gaps;
}

inline PeriodicTimetable construct_logit_timetable(const RouteSet& r, double period, Beta beta,
                                                   const LogitAllocation& alloc,
                                                   std::span<const std::size_t> order) {
  const auto gaps = logit_construction_gaps(r, period, beta, alloc, order);
  std::vector<double> theta(r.size(), 0.0);
  double clock = 0.0;
  for (std::size_t k = 1; k < r.size(); ++k) {
    clock += gaps[k];
    theta[order[k]] = mod_period(clock, period);
  }
  return PeriodicTimetable(r, period, std::move(theta));
}

}  // namespace transit_measure
