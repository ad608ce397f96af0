// Line plan measure under shortest path routing with travel time evaluation.
//
// The optimal timetable spends the period T on gaps x_i >= 0 minimising
// (1/T) sum(x_i^2/2 + x_i l_i) subject to sum x_i = T. The minimiser is
// x_i = [mu - l_i]^+ for a multiplier mu found by sweeping the sorted
// durations: between consecutive breakpoints sum [mu - l_i]^+ is linear in mu.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "transit_measure/core.hpp"
#include "transit_measure/timetable_measures.hpp"

namespace transit_measure {

struct SpAllocation {
  std::vector<double> x;
  double mu = 0.0;
  double measure = 0.0;
  RoutingProbabilities probabilities;
};

/// (1/T) sum(x_i^2/2 + x_i l_i)
inline double sp_allocation_objective(const RouteSet& r, double period, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += 0.5 * x[i] * x[i] + x[i] * r[i];
  return s / period;
}

inline SpAllocation solve_sp_allocation(const RouteSet& r, double period) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw ValidationError("period must be positive and finite");
  const std::size_t n = r.size();

  std::vector<double> sorted(r.durations().begin(), r.durations().end());
  std::sort(sorted.begin(), sorted.end());
  const double lmin = sorted.front();

  // Work with durations relative to l_min: active routes then differ by at
  // most T, so x keeps full relative precision even when T << l.
  // Active set = routes with l < breakpoint. At mu = b the allocated total is
  // count * b - sum; once it reaches T the crossing lies on the current
  // segment and mu = (T + sum) / count solves it exactly. Running past the last
  // breakpoint is the same formula with every route active.
  std::size_t count = 0;
  double sum = 0.0;
  std::size_t k = 0;
  while (k < n) {
    const double b = sorted[k] - lmin;
    if (count > 0 && static_cast<double>(count) * b - sum >= period) break;
    while (k < n && sorted[k] - lmin == b) {
      sum += b;
      ++count;
      ++k;
    }
  }
  const double level = (period + sum) / static_cast<double>(count);  // mu - l_min
  const double mu = lmin + level;

  std::vector<double> x(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (x[i] = std::max(0.0, level - (r[i] - lmin)));

  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = x[i] / total;

  return SpAllocation{x, mu, sp_allocation_objective(r, period, x), RoutingProbabilities(std::move(p))};
}

inline double sp_lineplan_measure(const RouteSet& r, double period) {
  return solve_sp_allocation(r, period).measure;
}

inline void require_permutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) throw ValidationError("order must list every route exactly once");
  std::vector<bool> seen(n, false);
  for (std::size_t i : order) {
    if (i >= n || seen[i]) throw ValidationError("order must be a permutation of the routes");
    seen[i] = true;
  }
}

/// Timetable with order[0] departing at 0 and each later route departing its
/// gap x after the previous one.
inline PeriodicTimetable construct_sp_timetable(const RouteSet& r, double period,
                                                const SpAllocation& alloc,
                                                std::span<const std::size_t> order) {
  const std::size_t n = r.size();
  require_permutation(order, n);
  if (alloc.x.size() != n) throw ValidationError("allocation does not match the route set");
  double total = 0.0;
  for (double xi : alloc.x) {
    if (xi < 0.0) throw ValidationError("allocation has negative spacing");
    total += xi;
  }
  if (std::abs(total - period) > 1e-9 * std::max(1.0, period))
    throw ValidationError("allocation spacing does not sum to the period");

  // A zero spacing on order[0] puts the tail of the order at T, i.e. back at
  // 0; rounding in the running sum must not split that tie.
  const double wrap = 1e-9 * std::max(1.0, period);
  std::vector<double> theta(n, 0.0);
  double clock = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    clock += alloc.x[order[k]];
    theta[order[k]] = period - clock <= wrap ? 0.0 : mod_period(clock, period);
  }
  return PeriodicTimetable(r, period, std::move(theta));
}

/// Every route is either best at its own departure or departs together with
/// its predecessor. The representation breaks departure ties by index; a tie
/// group is accepted when some member could lead it, i.e. the group's shortest
/// route attains the value at that departure. Members after the leader have a
/// zero gap.
inline bool is_standard(const PeriodicTimetable& tt, double tolerance = 1e-9) {
  const auto rep = representation(tt, base_measure::SpTravelTime{});
  const CyclicOrder order = departure_order(tt);
  const auto seq = order.order();
  const std::size_t n = seq.size();
  for (std::size_t k = 0; k < n;) {
    const std::size_t lead = seq[k];
    double shortest = tt.routes()[lead];
    std::size_t end = k + 1;
    for (; end < n && rep.delta[seq[end]] == 0.0; ++end) shortest = std::min(shortest, tt.routes()[seq[end]]);
    // tau of the index-order leader is the plain observed value at this time
    if (rep.delta[lead] > tolerance && std::abs(rep.tau[lead] - shortest) > tolerance) return false;
    for (std::size_t m = k + 1; m < end; ++m) {
      const std::size_t i = seq[m];
      if (rep.delta[i] > tolerance && std::abs(rep.tau[i] - tt.routes()[i]) > tolerance) return false;
    }
    k = end;
  }
  return true;
}

}  // namespace transit_measure
