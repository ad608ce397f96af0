#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace transit_measure;
using transit_measure::testkit::Gen;

namespace {

const RoutingModel kUniform = routing_model::Uniform{};
const RoutingModel kSp = routing_model::ShortestPath{};
RoutingModel logit(double b) { return routing_model::Logit{Beta(b)}; }
const EvaluationFunction kDisp = evaluation::Dispersion{};
const EvaluationFunction kTt = evaluation::TravelTime{};
EvaluationFunction ptt(double b) { return evaluation::PerceivedTravelTime{Beta(b)}; }

}  // namespace

TEST(Routing, ShortestPathTiesGoToLowestIndex) {
  const auto p = routing(RouteSet({15, 10, 10}), kSp);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 1.0);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Routing, UniformAndLogit) {
  const auto u = routing(RouteSet({1, 2, 3, 4}), kUniform);
  for (double v : u.values()) EXPECT_DOUBLE_EQ(v, 0.25);
  const auto l = routing(RouteSet({10, 20}), logit(0.1));
  EXPECT_NEAR(l[0], 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
}

TEST(Routing, LogitSurvivesHugeExponents) {
  const auto p = routing(RouteSet({0, 1e6}), logit(1e3));
  EXPECT_EQ(p[0], 1.0);
  EXPECT_EQ(p[1], 0.0);
}

TEST(Evaluate, Examples) {
  EXPECT_NEAR(evaluate(RouteSet({3, 9}), RoutingProbabilities({0.5, 0.5}), kDisp), -std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(evaluate(RouteSet({20, 30, 15, 10}), RoutingProbabilities({0, 0, 0, 1}), kTt), 10.0);
  EXPECT_NEAR(evaluate(RouteSet({15, 15}), RoutingProbabilities({0.5, 0.5}), ptt(0.22)),
              15.0 - std::log(2.0) / 0.22, 1e-12);
  EXPECT_NEAR(15.0 - std::log(2.0) / 0.22, 11.849331, 1e-6);
}

TEST(Evaluate, RejectsSizeMismatch) {
  EXPECT_THROW(evaluate(RouteSet({1, 2}), RoutingProbabilities({1.0}), kTt), ValidationError);
}

TEST(Measure, TableCells) {
  const RouteSet four({20, 30, 15, 10});
  EXPECT_DOUBLE_EQ(measure(four, kSp, kTt), 10.0);
  EXPECT_NEAR(measure(RouteSet({4, 8, 1}), kUniform, kDisp), -std::log(3.0), 1e-15);
  EXPECT_NEAR(measure(RouteSet({15, 15}), logit(0.22), ptt(0.22)), 15.0 - std::log(2.0) / 0.22, 1e-12);
  EXPECT_DOUBLE_EQ(measure_closed_form(four, kSp, ptt(0.3)), 10.0);
  EXPECT_NEAR(measure_closed_form(RouteSet({10, 20}), kUniform, ptt(1.0)), 15.0 - std::log(2.0), 1e-14);
  EXPECT_EQ(measure_closed_form(RouteSet({0, 0}), kSp, kDisp), 0.0);
}

TEST(Measure, ClosedFormsAgreeOnRandomInstances) {
  Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const RouteSet r = gen.route_set();
    const double b = gen.uniform(0.05, 1.0);
    for (const RoutingModel& m : {kUniform, kSp, logit(b)})
      for (const EvaluationFunction& e : {kDisp, kTt, ptt(b)})
        EXPECT_NEAR(measure(r, m, e), measure_closed_form(r, m, e), 1e-10);
  }
}

TEST(Measure, MismatchedBetaClosedForm) {
  const RouteSet r({12, 17, 31});
  for (const auto& [br, be] : {std::pair{0.1, 0.4}, std::pair{0.9, 0.05}})
    EXPECT_NEAR(measure(r, logit(br), ptt(be)), measure_closed_form(r, logit(br), ptt(be)), 1e-10);
}

TEST(Measure, LogitLimits) {
  Gen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    RouteSet r = gen.route_set(6, 0.0, 60.0);
    // separate the minimum so the large-beta limit is a vertex
    r = r.with_duration(shortest_route(r), r.min() - 0.5);
    const auto hot = routing(r, logit(1e3));
    const auto sp = routing(r, kSp);
    // deviation from uniform is about beta times the duration spread
    const RouteSet unit_scale(gen.durations(r.size(), 0.0, 1.0));
    const auto cold = routing(unit_scale, logit(1e-6));
    const auto uni = routing(unit_scale, kUniform);
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_NEAR(hot[i], sp[i], 1e-6);
      EXPECT_NEAR(cold[i], uni[i], 1e-6);
    }
  }
}

TEST(Measure, LogitTranslationInvariant) {
  Gen gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const RouteSet r = gen.route_set();
    const double c = gen.uniform(-100.0, 100.0);
    std::vector<double> shifted(r.durations().begin(), r.durations().end());
    for (double& v : shifted) v += c;
    const double b = gen.uniform(0.05, 1.0);
    const auto p = routing(r, logit(b));
    const auto q = routing(RouteSet(shifted), logit(b));
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
  }
}

TEST(Dominance, Examples) {
  EXPECT_EQ(dominance(RouteSet({10, 20}), RouteSet({12, 20})), DominanceResult::Strict);
  EXPECT_EQ(dominance(RouteSet({10, 20}), RouteSet({10, 20})), DominanceResult::Weak);
  EXPECT_EQ(dominance(RouteSet({10}), RouteSet({5, 20})), DominanceResult::None);
  EXPECT_EQ(dominance(RouteSet({10, 20}), RouteSet({20})), DominanceResult::Strict);
  EXPECT_EQ(dominance(RouteSet({20, 10}), RouteSet({20, 10})), DominanceResult::Weak);
  EXPECT_EQ(dominance(RouteSet({10, 30}), RouteSet({20, 20})), DominanceResult::None);
}

TEST(Properties, ConsistentRoutingMinimisesItsEvaluation) {
  Gen gen(14);
  for (int trial = 0; trial < 50; ++trial) {
    const RouteSet r = gen.route_set();
    const double b = gen.uniform(0.05, 1.0);
    for (const EvaluationFunction& e : {kDisp, kTt, ptt(b)})
      EXPECT_GE(oracles::simplex_consistency_probe(r, e, 1000, 100 + trial), -1e-12);
  }
}

TEST(Properties, MonotoneCellsUnderDomination) {
  Gen gen(15);
  int strict_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const RouteSet r2 = gen.route_set(6);
    std::vector<double> d(r2.durations().begin(), r2.durations().end());
    for (double& v : d)
      if (gen.coin()) v -= gen.uniform(0.0, 5.0);
    const std::size_t extra = gen.index(0, 2);
    for (std::size_t k = 0; k < extra; ++k) d.push_back(gen.uniform(0.0, 60.0));
    const RouteSet r(d);
    const auto dom = dominance(r, r2);
    ASSERT_NE(dom, DominanceResult::None);
    const double b = gen.uniform(0.05, 1.0);
    EXPECT_LE(measure(r, kSp, kTt), measure(r2, kSp, kTt) + 1e-12);
    EXPECT_LE(measure(r, kSp, ptt(b)), measure(r2, kSp, ptt(b)) + 1e-12);
    EXPECT_LE(measure(r, kSp, kDisp), measure(r2, kSp, kDisp) + 1e-12);
    EXPECT_LE(measure(r, kUniform, kDisp), measure(r2, kUniform, kDisp) + 1e-12);
    EXPECT_LE(measure(r, logit(b), ptt(b)), measure(r2, logit(b), ptt(b)) + 1e-12);
    if (dom == DominanceResult::Strict) ++strict_checked;
  }
  EXPECT_GT(strict_checked, 100);
}

TEST(Properties, LogitPerceivedIsStrictlyMonotone) {
  // durations within 10 minutes keep every route's weight above e^{-10}, so
  // the improvement is resolvable in double precision
  Gen gen(16);
  for (int trial = 0; trial < 500; ++trial) {
    const RouteSet r2 = gen.route_set(6, 0.0, 10.0);
    const double b = gen.uniform(0.05, 1.0);
    const std::size_t i = gen.index(0, r2.size() - 1);
    const RouteSet shorter = r2.with_duration(i, r2[i] - gen.uniform(1e-3, 5.0));
    const RouteSet larger = r2.with_route(gen.uniform(0.0, 10.0));
    ASSERT_EQ(dominance(shorter, r2), DominanceResult::Strict);
    ASSERT_EQ(dominance(larger, r2), DominanceResult::Strict);
    const double base = measure(r2, logit(b), ptt(b));
    EXPECT_LT(measure(shorter, logit(b), ptt(b)), base);
    EXPECT_LT(measure(larger, logit(b), ptt(b)), base);
  }
}

TEST(Properties, LogitTravelTimeIsNotMonotone) {
  // l = (15, x): travel time under logit rises and then falls again as x grows
  double best_x = 15.0;
  double best = -1.0;
  for (double x = 15.0; x <= 40.0 + 1e-9; x += 0.01) {
    const double v = measure(RouteSet({15.0, x}), logit(0.22), kTt);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  EXPECT_GT(best_x, 15.5);
  EXPECT_LT(best_x, 39.5);
  EXPECT_LT(measure(RouteSet({15.0, 60.0}), logit(0.22), kTt), best);
}

TEST(Properties, LogitTravelTimeInconsistencyWitness) {
  const RouteSet r({10, 14, 25});
  EXPECT_LT(oracles::simplex_consistency_probe(r, kTt, logit(0.22), 1000, 5), 0.0);
}

TEST(Names, RoundTrip) {
  EXPECT_EQ(name_of(kUniform), "uniform");
  EXPECT_EQ(name_of(kSp), "sp");
  EXPECT_EQ(name_of(logit(1.0)), "logit");
  EXPECT_EQ(name_of(kDisp), "disp");
  EXPECT_EQ(name_of(kTt), "tt");
  EXPECT_EQ(name_of(ptt(1.0)), "ptt");
}
