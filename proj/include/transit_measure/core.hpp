// Domain types shared by every measure: route sets, logit scale,
// periodic timetables, probability vectors and OD aggregation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace transit_measure {

/// Raised whenever an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kSimplexTolerance = 1e-12;

/// Maps x onto [0, period) by adding an integer multiple of the period.
inline double mod_period(double x, double period) {
  if (!std::isfinite(x)) throw ValidationError("mod_period: value must be finite");
  if (!(period > 0.0) || !std::isfinite(period))
    throw ValidationError("mod_period: period must be positive and finite");
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  // r + period can round up to exactly period for tiny negative r
  if (r >= period) r = 0.0;
  return r;
}

/// Finite set of travel options for one OD pair, indexed in input order.
/// Durations are in minutes and may be negative.
class RouteSet {
 public:
  explicit RouteSet(std::vector<double> durations) : durations_(std::move(durations)) {
    if (durations_.empty()) throw ValidationError("route set must contain at least one route");
    for (double l : durations_)
      if (!std::isfinite(l)) throw ValidationError("route durations must be finite");
  }

  std::size_t size() const { return durations_.size(); }
  double operator[](std::size_t i) const { return durations_[i]; }
  std::span<const double> durations() const { return durations_; }

  double min() const {
    double m = durations_.front();
    for (double l : durations_) m = std::min(m, l);
    return m;
  }
  double mean() const {
    double s = 0.0;
    for (double l : durations_) s += l;
    return s / static_cast<double>(durations_.size());
  }

  /// Copy with one additional route appended.
  RouteSet with_route(double duration) const {
    auto d = durations_;
    d.push_back(duration);
    return RouteSet(std::move(d));
  }
  /// Copy with route i's duration replaced.
  RouteSet with_duration(std::size_t i, double duration) const {
    auto d = durations_;
    d.at(i) = duration;
    return RouteSet(std::move(d));
  }

 private:
  std::vector<double> durations_;
};

inline RouteSet make_route_set(std::vector<double> durations) {
  return RouteSet(std::move(durations));
}

/// Logit scale parameter (1/minutes).
class Beta {
 public:
  explicit Beta(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw ValidationError("beta must be positive and finite");
  }
  double value() const { return value_; }

 private:
  double value_;
};

/// Route set operated periodically with departures in [0, period).
class PeriodicTimetable {
 public:
  PeriodicTimetable(RouteSet routes, double period, std::vector<double> departures)
      : routes_(std::move(routes)), period_(period), departures_(std::move(departures)) {
    if (!(period_ > 0.0) || !std::isfinite(period_))
      throw ValidationError("period must be positive and finite");
    if (departures_.size() != routes_.size())
      throw ValidationError("timetable needs exactly one departure per route");
    for (double theta : departures_)
      if (!(theta >= 0.0 && theta < period_))
        throw ValidationError("departure times must lie in [0, period)");
  }

  const RouteSet& routes() const { return routes_; }
  double period() const { return period_; }
  std::size_t size() const { return routes_.size(); }
  std::span<const double> departures() const { return departures_; }
  double departure(std::size_t i) const { return departures_[i]; }

 private:
  RouteSet routes_;
  double period_;
  std::vector<double> departures_;
};

inline PeriodicTimetable make_timetable(RouteSet routes, double period,
                                        std::vector<double> departures) {
  return PeriodicTimetable(std::move(routes), period, std::move(departures));
}

/// Probability vector over a route set: nonnegative, sums to one.
class RoutingProbabilities {
 public:
  explicit RoutingProbabilities(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw ValidationError("probability vector must be nonempty");
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw ValidationError("probabilities must be finite and nonnegative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance)
      throw ValidationError("probabilities must sum to one");
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

struct WeightedMeasure {
  double value;
  double weight;
};

/// Per-OD measure values with their demand weights.
class ODWeighting {
 public:
  explicit ODWeighting(std::vector<WeightedMeasure> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ValidationError("OD weighting needs at least one entry");
    double total = 0.0;
    for (const auto& e : entries_) {
      if (!std::isfinite(e.value)) throw ValidationError("OD measure values must be finite");
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
        throw ValidationError("OD weights must be finite and nonnegative");
      total += e.weight;
    }
    if (!(total > 0.0)) throw ValidationError("OD weights must not all be zero");
  }

  std::span<const WeightedMeasure> entries() const { return entries_; }

 private:
  std::vector<WeightedMeasure> entries_;
};

inline double aggregate_weighted(const ODWeighting& w) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& e : w.entries()) {
    num += e.weight * e.value;
    den += e.weight;
  }
  return num / den;
}

}  // namespace transit_measure
