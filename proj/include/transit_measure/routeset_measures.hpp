// Route choice models, evaluation functions and the nine route set measures.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "transit_measure/core.hpp"
#include "transit_measure/numeric.hpp"

namespace transit_measure {

namespace routing_model {
struct Uniform {};
struct ShortestPath {};
struct Logit {
  Beta beta;
};
}  // namespace routing_model

using RoutingModel =
    std::variant<routing_model::Uniform, routing_model::ShortestPath, routing_model::Logit>;

namespace evaluation {
struct Dispersion {};
struct TravelTime {};
struct PerceivedTravelTime {
  Beta beta;
};
}  // namespace evaluation

using EvaluationFunction =
    std::variant<evaluation::Dispersion, evaluation::TravelTime, evaluation::PerceivedTravelTime>;

enum class DominanceResult { Strict, Weak, None };

inline std::string_view name_of(const RoutingModel& m) {
  switch (m.index()) {
    case 0: return "uniform";
    case 1: return "sp";
    default: return "logit";
  }
}

inline std::string_view name_of(const EvaluationFunction& e) {
  switch (e.index()) {
    case 0: return "disp";
    case 1: return "tt";
    default: return "ptt";
  }
}

/// Index of the shortest route; ties go to the lowest index.
inline std::size_t shortest_route(const RouteSet& r) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] < r[best]) best = i;
  return best;
}

inline std::vector<double> logit_probabilities(std::span<const double> durations, double beta) {
  const double lmin = *std::min_element(durations.begin(), durations.end());
  std::vector<double> w(durations.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    w[i] = std::exp(-beta * (durations[i] - lmin));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

inline RoutingProbabilities routing(const RouteSet& r, const RoutingModel& m) {
  const std::size_t n = r.size();
  return std::visit(
      [&](const auto& model) {
        using M = std::decay_t<decltype(model)>;
        std::vector<double> p(n, 0.0);
        if constexpr (std::is_same_v<M, routing_model::Uniform>) {
          std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
        } else if constexpr (std::is_same_v<M, routing_model::ShortestPath>) {
          p[shortest_route(r)] = 1.0;
        } else {
          p = logit_probabilities(r.durations(), model.beta.value());
        }
        return RoutingProbabilities(std::move(p));
      },
      m);
}

inline double evaluate(const RouteSet& r, const RoutingProbabilities& p,
                       const EvaluationFunction& e) {
  if (p.size() != r.size())
    throw ValidationError("probability vector does not match the route set");
  double travel_time = 0.0;
  double entropy_term = 0.0;  // sum p log p
  for (std::size_t i = 0; i < r.size(); ++i) {
    travel_time += r[i] * p[i];
    entropy_term += numeric::xlogx(p[i]);
  }
  return std::visit(
      [&](const auto& eval) -> double {
        using E = std::decay_t<decltype(eval)>;
        if constexpr (std::is_same_v<E, evaluation::Dispersion>) {
          return entropy_term;
        } else if constexpr (std::is_same_v<E, evaluation::TravelTime>) {
          return travel_time;
        } else {
          return travel_time + entropy_term / eval.beta.value();
        }
      },
      e);
}

inline double measure(const RouteSet& r, const RoutingModel& m, const EvaluationFunction& e) {
  return evaluate(r, routing(r, m), e);
}

/// The nine measures through their closed forms, without forming the
/// routing vector where a closed form avoids it. For logit routing with
/// perceived travel time the two beta values may differ; equal values give
/// the familiar -(1/beta) log sum exp(-beta l).
inline double measure_closed_form(const RouteSet& r, const RoutingModel& m,
                                  const EvaluationFunction& e) {
  const double n = static_cast<double>(r.size());
  const double lmin = r.min();

  if (std::holds_alternative<routing_model::Uniform>(m)) {
    if (std::holds_alternative<evaluation::Dispersion>(e)) return -std::log(n);
    if (std::holds_alternative<evaluation::TravelTime>(e)) return r.mean();
    return r.mean() - std::log(n) / std::get<evaluation::PerceivedTravelTime>(e).beta.value();
  }
  if (std::holds_alternative<routing_model::ShortestPath>(m)) {
    if (std::holds_alternative<evaluation::Dispersion>(e)) return 0.0;
    return lmin;
  }

  const double beta = std::get<routing_model::Logit>(m).beta.value();
  // log S = -beta * lmin + log sum exp(-beta (l - lmin))
  double shifted_sum = 0.0;
  double weighted_length = 0.0;
  for (double l : r.durations()) {
    const double w = std::exp(-beta * (l - lmin));
    shifted_sum += w;
    weighted_length += w * l;
  }
  const double mean_length = weighted_length / shifted_sum;
  const double log_sum = -beta * lmin + std::log(shifted_sum);

  if (std::holds_alternative<evaluation::Dispersion>(e)) return -beta * mean_length - log_sum;
  if (std::holds_alternative<evaluation::TravelTime>(e)) return mean_length;
  const double beta_eval = std::get<evaluation::PerceivedTravelTime>(e).beta.value();
  if (beta_eval == beta) return numeric::soft_min(r.durations(), beta);
  return (1.0 - beta / beta_eval) * mean_length - log_sum / beta_eval;
}

/// Route set dominance: r dominates r2 when each route of r2 can be matched
/// to a distinct route of r that is no longer. Strict when r has extra
/// routes or some matched pair is strictly shorter.
inline DominanceResult dominance(const RouteSet& r, const RouteSet& r2) {
  if (r.size() < r2.size()) return DominanceResult::None;
  std::vector<double> a(r.durations().begin(), r.durations().end());
  std::vector<double> b(r2.durations().begin(), r2.durations().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  bool strict = a.size() > b.size();
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (a[k] > b[k]) return DominanceResult::None;
    if (a[k] < b[k]) strict = true;
  }
  return strict ? DominanceResult::Strict : DominanceResult::Weak;
}

/// The routing that minimises each evaluation function over the simplex.
inline RoutingModel consistent_routing(const EvaluationFunction& e) {
  if (std::holds_alternative<evaluation::Dispersion>(e)) return routing_model::Uniform{};
  if (std::holds_alternative<evaluation::TravelTime>(e)) return routing_model::ShortestPath{};
  return routing_model::Logit{std::get<evaluation::PerceivedTravelTime>(e).beta};
}

}  // namespace transit_measure
