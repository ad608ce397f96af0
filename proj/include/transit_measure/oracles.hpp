// Slow reference computations used to check the analytic results: direct
// quadrature of the averaged observed measure, exhaustive timetable search,
// arrival simulation and random-utility sampling.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "transit_measure/core.hpp"
#include "transit_measure/routeset_measures.hpp"
#include "transit_measure/timetable_measures.hpp"

namespace transit_measure::oracles {

/// Midpoint rule for (1/T) * integral over [0, T) of the observed measure.
/// Cells never straddle a departure: the integrand jumps exactly there, so
/// the period is first cut at the departure times and each piece is covered
/// by cells no wider than step.
inline double integrate_timetable_measure(const PeriodicTimetable& tt, const BaseMeasure& b,
                                          double step) {
  const double T = tt.period();
  if (!(step > 0.0) || step > T / (10.0 * static_cast<double>(tt.size())))
    throw ValidationError("quadrature step must be positive and at most T/(10n)");

  std::vector<double> cuts(tt.departures().begin(), tt.departures().end());
  cuts.push_back(0.0);
  cuts.push_back(T);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double len = cuts[k + 1] - a;
    const auto cells = static_cast<std::size_t>(std::ceil(len / step));
    const double h = len / static_cast<double>(cells);
    for (std::size_t c = 0; c < cells; ++c)
      integral += h * observed_measure(tt, a + (static_cast<double>(c) + 0.5) * h, b);
  }
  return integral / T;
}

struct BruteForceResult {
  std::vector<double> departures;
  double value = std::numeric_limits<double>::infinity();
};

/// Exhaustive scan over timetables on a grid with the first departure fixed
/// at 0 (timetable measures are invariant under rotation).
inline BruteForceResult brute_force_lineplan(const RouteSet& r, double period, const BaseMeasure& b,
                                             double grid) {
  const std::size_t n = r.size();
  if (n > 3) throw ValidationError("brute force line plan search is limited to three routes");
  if (!(grid > 0.0) || !(period > 0.0)) throw ValidationError("grid and period must be positive");
  const double cells_real = period / grid;
  const auto cells = static_cast<std::size_t>(std::llround(cells_real));
  if (cells == 0 || std::abs(cells_real - static_cast<double>(cells)) > 1e-9 * cells_real)
    throw ValidationError("grid must divide the period");

  BruteForceResult best;
  auto consider = [&](std::vector<double> theta) {
    const double v = timetable_measure(PeriodicTimetable(r, period, theta), b);
    if (v < best.value) {
      best.value = v;
      best.departures = std::move(theta);
    }
  };
  auto at = [&](std::size_t k) { return static_cast<double>(k) * grid; };

  if (n == 1) {
    consider({0.0});
  } else if (n == 2) {
    for (std::size_t a = 0; a < cells; ++a) consider({0.0, at(a)});
  } else {
    for (std::size_t a = 0; a < cells; ++a)
      for (std::size_t c = 0; c < cells; ++c) consider({0.0, at(a), at(c)});
  }
  return best;
}

struct MonteCarloReport {
  std::vector<double> shares;
  std::vector<double> standard_errors;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Average observed duration of the chosen route.
  double mean_chosen_duration = 0.0;
};

inline constexpr std::size_t kMinArrivalSamples = 10'000;
inline constexpr std::size_t kMinGumbelSamples = 100'000;

inline std::vector<double> binomial_standard_errors(std::span<const double> shares, std::size_t n) {
  std::vector<double> se(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i)
    se[i] = std::sqrt(shares[i] * (1.0 - shares[i]) / static_cast<double>(n));
  return se;
}

/// Travellers arrive uniformly over the period and pick a route from the
/// observed route set under the given routing model.
inline MonteCarloReport monte_carlo_shares(const PeriodicTimetable& tt, const RoutingModel& model,
                                           std::size_t samples, std::uint64_t seed) {
  if (samples < kMinArrivalSamples)
    throw ValidationError("monte carlo needs at least 10^4 samples");
  const std::size_t n = tt.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> arrival(0.0, tt.period());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::size_t> counts(n, 0);
  double duration_sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double t = arrival(rng);
    if (t >= tt.period()) t = 0.0;
    const RouteSet observed = observed_route_set(tt, t);
    std::size_t chosen = 0;
    if (std::holds_alternative<routing_model::ShortestPath>(model)) {
      chosen = shortest_route(observed);
    } else {
      const auto p = routing(observed, model);
      double u = unit(rng);
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (u < p[i]) {
          chosen = i;
          break;
        }
        u -= p[i];
      }
    }
    ++counts[chosen];
    duration_sum += observed[chosen];
  }

  MonteCarloReport report;
  report.samples = samples;
  report.seed = seed;
  report.shares.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    report.shares[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
  report.standard_errors = binomial_standard_errors(report.shares, samples);
  report.mean_chosen_duration = duration_sum / static_cast<double>(samples);
  return report;
}

struct GumbelEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::vector<double> argmin_shares;
  std::vector<double> argmin_standard_errors;
};

/// Random utility sampling: perceived durations l_i - eps_i / beta with
/// standard Gumbel eps_i. The expected minimum is the logit perceived travel
/// time minus gamma/beta, so gamma/beta is added back.
inline GumbelEstimate gumbel_ptt_estimate(const RouteSet& r, Beta beta, std::size_t samples,
                                          std::uint64_t seed) {
  if (samples < kMinGumbelSamples) throw ValidationError("gumbel estimate needs at least 10^5 samples");
  const std::size_t n = r.size();
  const double b = beta.value();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);

  std::vector<std::size_t> counts(n, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double eps = -std::log(-std::log(unit(rng)));
      const double chi = r[i] - eps / b;
      if (chi < best) {
        best = chi;
        arg = i;
      }
    }
    ++counts[arg];
    sum += best;
    sum_sq += best * best;
  }
  const double N = static_cast<double>(samples);
  const double mean = sum / N;
  const double var = std::max(0.0, (sum_sq - N * mean * mean) / (N - 1.0));

  GumbelEstimate out;
  out.estimate = mean + std::numbers::egamma / b;
  out.standard_error = std::sqrt(var / N);
  out.argmin_shares.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.argmin_shares[i] = static_cast<double>(counts[i]) / N;
  out.argmin_standard_errors = binomial_standard_errors(out.argmin_shares, samples);
  return out;
}

/// min over sampled probability vectors of evaluate(r, p, e) - measure(r, m, e).
/// Samples are uniform on the simplex (Dirichlet(1)) plus its vertices.
inline double simplex_consistency_probe(const RouteSet& r, const EvaluationFunction& e,
                                        const RoutingModel& m, std::size_t trials,
                                        std::uint64_t seed) {
  if (trials < 1000) throw ValidationError("consistency probe needs at least 10^3 trials");
  const std::size_t n = r.size();
  const double reference = measure(r, m, e);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);

  double gap = std::numeric_limits<double>::infinity();
  std::vector<double> p(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(p.begin(), p.end(), 0.0);
    p[v] = 1.0;
    gap = std::min(gap, evaluate(r, RoutingProbabilities(p), e) - reference);
  }
  for (std::size_t t = 0; t < trials; ++t) {
    double s = 0.0;
    for (double& v : p) s += (v = expo(rng));
    for (double& v : p) v /= s;
    double sum = 0.0;
    for (double v : p) sum += v;
    p[n - 1] = std::max(0.0, p[n - 1] + (1.0 - sum));
    gap = std::min(gap, evaluate(r, RoutingProbabilities(p), e) - reference);
  }
  return gap;
}

/// Probe against the routing that is consistent with e.
inline double simplex_consistency_probe(const RouteSet& r, const EvaluationFunction& e,
                                        std::size_t trials, std::uint64_t seed) {
  return simplex_consistency_probe(r, e, consistent_routing(e), trials, seed);
}

}  // namespace transit_measure::oracles
