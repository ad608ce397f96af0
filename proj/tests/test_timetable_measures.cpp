#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace transit_measure;
using transit_measure::testkit::Gen;

namespace {

PeriodicTimetable four_routes() { return PeriodicTimetable(RouteSet({20, 30, 15, 10}), 60.0, {5, 10, 20, 50}); }

const BaseMeasure kSp = base_measure::SpTravelTime{};
BaseMeasure logit(double b) { return base_measure::LogitPerceived{Beta(b)}; }

void expect_all_near(std::span<const double> got, std::vector<double> want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

}  // namespace

TEST(ObservedRouteSet, FourRouteExample) {
  const auto tt = four_routes();
  expect_all_near(observed_route_set(tt, 5.0).durations(), {20, 35, 30, 55}, 0.0);
  EXPECT_EQ(observed_measure(tt, 5.0, kSp), 20.0);
  EXPECT_EQ(observed_measure(tt, 55.0, kSp), 30.0);
  EXPECT_EQ(observed_route_set(tt, 10.0)[1], 30.0);
}

TEST(ObservedRouteSet, SingleRouteIsPureWait) {
  const PeriodicTimetable tt(RouteSet({0}), 10.0, {0});
  EXPECT_DOUBLE_EQ(observed_measure(tt, 4.0, kSp), 6.0);
  EXPECT_DOUBLE_EQ(observed_measure(tt, 0.0, kSp), 0.0);
}

TEST(ObservedRouteSet, RejectsTimeOutsidePeriod) {
  EXPECT_THROW(observed_route_set(four_routes(), 60.0), ValidationError);
  EXPECT_THROW(observed_route_set(four_routes(), -0.1), ValidationError);
}

TEST(DepartureOrder, SortsStablyByTime) {
  auto order_of = [](std::vector<double> theta) {
    const std::size_t n = theta.size();
    const auto o = departure_order(PeriodicTimetable(RouteSet(std::vector<double>(n, 1.0)), 60.0, theta));
    return std::vector<std::size_t>(o.order().begin(), o.order().end());
  };
  EXPECT_EQ(order_of({5, 10, 20, 50}), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(order_of({50, 5}), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(order_of({5, 5}), (std::vector<std::size_t>{0, 1}));
}

TEST(DepartureOrder, SuccessorInvertsPredecessor) {
  Gen gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto o = departure_order(gen.timetable());
    for (std::size_t i = 0; i < o.size(); ++i) {
      EXPECT_EQ(o.successor(o.predecessor(i)), i);
      EXPECT_EQ(o.order()[o.position(i)], i);
    }
  }
}

TEST(Representation, FourRouteExampleSp) {
  const auto rep = representation(four_routes(), kSp);
  expect_all_near(rep.delta, {15, 5, 10, 30}, 1e-12);
  expect_all_near(rep.tau, {20, 25, 15, 10}, 1e-12);
  expect_all_near(rep.jump, {10, 0, 25, 25}, 1e-12);
}

TEST(Representation, SmallCases) {
  const auto one = representation(PeriodicTimetable(RouteSet({7}), 10.0, {3}), kSp);
  expect_all_near(one.delta, {10}, 0.0);
  expect_all_near(one.tau, {7}, 0.0);
  expect_all_near(one.jump, {10}, 0.0);
  const auto two = representation(PeriodicTimetable(RouteSet({0, 0}), 1.0, {0, 0.5}), kSp);
  expect_all_near(two.delta, {0.5, 0.5}, 1e-15);
  expect_all_near(two.tau, {0, 0}, 1e-15);
  expect_all_near(two.jump, {0.5, 0.5}, 1e-15);
}

TEST(Representation, SimultaneousDeparturesProcessedInOrder) {
  // route 0 and 1 leave together: route 0 still sees route 1 at zero wait,
  // route 1 sees route 0 a full period away
  const PeriodicTimetable tt(RouteSet({10, 5}), 30.0, {0, 0});
  const auto rep = representation(tt, kSp);
  expect_all_near(rep.delta, {30, 0}, 0.0);
  expect_all_near(rep.tau, {5, 5}, 0.0);
  expect_all_near(rep.jump, {0, 30}, 0.0);
  double sum = 0.0;
  for (double d : rep.jump) sum += d;
  EXPECT_NEAR(sum, 30.0, 1e-12);
  EXPECT_NEAR(rep.measure_from_gaps(), rep.measure_from_jumps(), 1e-12);
  EXPECT_NEAR(rep.measure_from_gaps(), oracles::integrate_timetable_measure(tt, kSp, 1e-3), 1e-6);
}

TEST(TimetableMeasure, Examples) {
  EXPECT_NEAR(timetable_measure(four_routes(), kSp), 25.0, 1e-12);
  EXPECT_NEAR(timetable_measure(PeriodicTimetable(RouteSet({7}), 10.0, {0}), kSp), 12.0, 1e-12);
  EXPECT_NEAR(timetable_measure(PeriodicTimetable(RouteSet({0, 0}), 1.0, {0, 0.5}), kSp), 0.25, 1e-12);
}

TEST(TimetableMeasure, AgreesWithQuadrature) {
  const auto tt = four_routes();
  for (const BaseMeasure& b : {kSp, logit(0.22)})
    EXPECT_NEAR(timetable_measure(tt, b), oracles::integrate_timetable_measure(tt, b, 1e-4 * 60.0), 1e-3);
}

TEST(Properties, GapAndJumpFormsAgree) {
  Gen gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto tt = gen.timetable();
    for (const BaseMeasure& b : {kSp, logit(gen.uniform(0.05, 1.0))}) {
      const auto rep = representation(tt, b);
      double sd = 0.0;
      double sj = 0.0;
      for (std::size_t i = 0; i < tt.size(); ++i) {
        sd += rep.delta[i];
        sj += rep.jump[i];
        EXPECT_GE(rep.jump[i], -1e-9);
        EXPECT_GE(rep.delta[i], 0.0);
      }
      EXPECT_NEAR(sd, tt.period(), 1e-9);
      EXPECT_NEAR(sj, tt.period(), 1e-9);
      EXPECT_NEAR(rep.measure_from_gaps(), rep.measure_from_jumps(), 1e-9);
    }
  }
}

TEST(Properties, RoutingConstantBetweenDepartures) {
  Gen gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto tt = gen.timetable();
    const auto o = departure_order(tt);
    const std::size_t k = gen.index(0, tt.size() - 1);
    const std::size_t next = o.order()[k];
    const double end = tt.departure(next);
    const double start = k == 0 ? tt.departure(o.order().back()) - tt.period() : tt.departure(o.order()[k - 1]);
    if (end - start < 1e-6) continue;
    const double t1 = mod_period(gen.uniform(start, end), tt.period());
    const double t2 = mod_period(gen.uniform(start, end), tt.period());
    const double b = gen.uniform(0.05, 1.0);
    for (const RoutingModel& m : {RoutingModel(routing_model::Logit{Beta(b)})}) {
      const auto p1 = routing(observed_route_set(tt, t1), m);
      const auto p2 = routing(observed_route_set(tt, t2), m);
      for (std::size_t i = 0; i < tt.size(); ++i) EXPECT_NEAR(p1[i], p2[i], 1e-12);
    }
    if (t1 != end && t2 != end) {
      EXPECT_EQ(shortest_route(observed_route_set(tt, t1)), shortest_route(observed_route_set(tt, t2)));
    }
  }
}

TEST(Properties, TranslationBetweenDepartures) {
  Gen gen(24);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tt = gen.timetable();
    const double t = gen.uniform(0.0, tt.period());
    // next departure at or after t
    double wait = tt.period();
    double next = 0.0;
    for (double th : tt.departures()) {
      if (mod_period(th - t, tt.period()) < wait) {
        wait = mod_period(th - t, tt.period());
        next = th;
      }
    }
    for (const BaseMeasure& b : {kSp, logit(gen.uniform(0.05, 1.0))})
      EXPECT_NEAR(observed_measure(tt, t, b), wait + observed_measure(tt, next, b), 1e-9);
  }
}

TEST(Properties, RotationInvariance) {
  Gen gen(25);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tt = gen.timetable();
    const double shift = gen.uniform(0.0, tt.period());
    std::vector<double> rotated(tt.departures().begin(), tt.departures().end());
    for (double& v : rotated) v = mod_period(v + shift, tt.period());
    const PeriodicTimetable other(tt.routes(), tt.period(), rotated);
    for (const BaseMeasure& b : {kSp, logit(gen.uniform(0.05, 1.0))})
      EXPECT_NEAR(timetable_measure(tt, b), timetable_measure(other, b), 1e-9);
  }
}

TEST(Properties, WaitingNeverHelps) {
  Gen gen(26);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tt = gen.timetable();
    const double b = gen.uniform(0.05, 1.0);
    EXPECT_GE(timetable_measure(tt, kSp), tt.routes().min() - 1e-12);
    EXPECT_GE(timetable_measure(tt, logit(b)), numeric::soft_min(tt.routes().durations(), b) - 1e-12);
  }
}

TEST(Properties, LongerRoutesNeverHelp) {
  Gen gen(27);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tt = gen.timetable();
    const std::size_t i = gen.index(0, tt.size() - 1);
    const PeriodicTimetable longer(tt.routes().with_duration(i, tt.routes()[i] + gen.uniform(0.0, 10.0)),
                                   tt.period(), std::vector<double>(tt.departures().begin(), tt.departures().end()));
    for (const BaseMeasure& b : {kSp, logit(gen.uniform(0.05, 1.0))})
      EXPECT_LE(timetable_measure(tt, b), timetable_measure(longer, b) + 1e-12);
  }
}
