// Periodic timetables: observed route sets, departure order, the gap/jump
// representations of the observed measure and the averaged timetable measure.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <type_traits>
#include <variant>
#include <vector>

#include "transit_measure/core.hpp"
#include "transit_measure/numeric.hpp"

namespace transit_measure {

namespace base_measure {
/// Shortest path routing with travel time evaluation.
struct SpTravelTime {};
/// Logit routing with perceived travel time evaluation.
struct LogitPerceived {
  Beta beta;
};
}  // namespace base_measure

using BaseMeasure = std::variant<base_measure::SpTravelTime, base_measure::LogitPerceived>;

/// Value of a translation-invariant base measure on a list of durations.
inline double base_value(std::span<const double> durations, const BaseMeasure& b) {
  if (const auto* logit = std::get_if<base_measure::LogitPerceived>(&b))
    return numeric::soft_min(durations, logit->beta.value());
  return *std::min_element(durations.begin(), durations.end());
}

/// Routes sorted by departure time (ties by index) with cyclic
/// predecessor/successor lookups.
class CyclicOrder {
 public:
  explicit CyclicOrder(std::vector<std::size_t> order) : order_(std::move(order)) {
    position_.assign(order_.size(), 0);
    for (std::size_t k = 0; k < order_.size(); ++k) position_.at(order_[k]) = k;
  }

  std::size_t size() const { return order_.size(); }
  std::span<const std::size_t> order() const { return order_; }
  std::size_t position(std::size_t route) const { return position_[route]; }
  std::size_t predecessor(std::size_t route) const {
    const std::size_t k = position_[route];
    return order_[k == 0 ? order_.size() - 1 : k - 1];
  }
  std::size_t successor(std::size_t route) const {
    const std::size_t k = position_[route];
    return order_[k + 1 == order_.size() ? 0 : k + 1];
  }

 private:
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;
};

inline CyclicOrder departure_order(const PeriodicTimetable& tt) {
  std::vector<std::size_t> order(tt.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tt.departure(a) < tt.departure(b);
  });
  return CyclicOrder(std::move(order));
}

/// Durations seen by a traveller arriving at time t, waiting included.
inline RouteSet observed_route_set(const PeriodicTimetable& tt, double t) {
  if (!(t >= 0.0 && t < tt.period()))
    throw ValidationError("observation time must lie in [0, period)");
  std::vector<double> d(tt.size());
  for (std::size_t i = 0; i < tt.size(); ++i)
    d[i] = tt.routes()[i] + mod_period(tt.departure(i) - t, tt.period());
  return RouteSet(std::move(d));
}

inline double observed_measure(const PeriodicTimetable& tt, double t, const BaseMeasure& b) {
  return base_value(observed_route_set(tt, t).durations(), b);
}

/// Gap (delta), value-at-departure (tau) and jump (Delta) per route, indexed
/// by route.
struct Representation {
  std::vector<double> delta;
  std::vector<double> tau;
  std::vector<double> jump;
  double period = 0.0;

  /// (1/T) sum(delta^2/2 + delta*tau)
  double measure_from_gaps() const {
    double s = 0.0;
    for (std::size_t i = 0; i < delta.size(); ++i) s += 0.5 * delta[i] * delta[i] + delta[i] * tau[i];
    return s / period;
  }
  /// (1/T) sum(Delta^2/2 + Delta*tau)
  double measure_from_jumps() const {
    double s = 0.0;
    for (std::size_t i = 0; i < jump.size(); ++i) s += 0.5 * jump[i] * jump[i] + jump[i] * tau[i];
    return s / period;
  }
};

/// Builds the representation. Routes departing together are processed one
/// at a time in order; each already-processed co-departing route counts as
/// missed (its wait becomes T) for the ones after it.
inline Representation representation(const PeriodicTimetable& tt, const BaseMeasure& b) {
  const std::size_t n = tt.size();
  const double T = tt.period();
  const CyclicOrder order = departure_order(tt);
  const auto seq = order.order();

  Representation rep;
  rep.period = T;
  rep.delta.assign(n, 0.0);
  rep.tau.assign(n, 0.0);
  rep.jump.assign(n, 0.0);

  rep.delta[seq.front()] = T - tt.departure(seq.back()) + tt.departure(seq.front());
  for (std::size_t k = 1; k < n; ++k)
    rep.delta[seq[k]] = tt.departure(seq[k]) - tt.departure(seq[k - 1]);

  std::vector<double> observed(n);
  std::size_t group_start = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = seq[k];
    if (k == 0 || rep.delta[i] > 0.0) group_start = k;
    for (std::size_t j = 0; j < n; ++j)
      observed[j] = tt.routes()[j] + mod_period(tt.departure(j) - tt.departure(i), T);
    for (std::size_t m = group_start; m < k; ++m) observed[seq[m]] += T;
    rep.tau[i] = base_value(observed, b);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = order.successor(i);
    rep.jump[i] = rep.tau[s] + rep.delta[s] - rep.tau[i];
  }
  return rep;
}

inline double timetable_measure(const PeriodicTimetable& tt, const BaseMeasure& b) {
  return representation(tt, b).measure_from_gaps();
}

}  // namespace transit_measure
