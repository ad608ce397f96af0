// transit-measure command line: routeset, timetable, lineplan, construct,
// sweep and verify. Exit codes: 0 success, 1 invalid input, 2 a verification
// check failed.
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "transit_measure/transit_measure.hpp"

namespace transit_measure::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Fixed-point text independent of the global locale.
inline std::string fixed(double v, int precision = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

/// Shortest round-trip text, used for CSV.
inline std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v))
    throw ValidationError(what + ": '" + s + "' is not a finite number");
  return v;
}

struct SweepSpec {
  std::string parameter;
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  std::string measure;

  std::vector<double> points() const {
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) pts.push_back(lo + static_cast<double>(k) * step);
    return pts;
  }
};

inline SweepSpec parse_sweep(const std::string& parameter, const std::string& range,
                             const std::string& measure_name) {
  SweepSpec spec;
  spec.parameter = parameter;
  spec.measure = measure_name;
  std::vector<std::string> parts;
  std::stringstream ss(range);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError("--range must look like lo:hi:step");
  spec.lo = parse_double(parts[0], "--range lo");
  spec.hi = parse_double(parts[1], "--range hi");
  spec.step = parse_double(parts[2], "--range step");
  if (!(spec.lo < spec.hi)) throw ValidationError("--range needs lo < hi");
  if (!(spec.step > 0.0)) throw ValidationError("--range needs step > 0");
  return spec;
}

namespace detail {

inline InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const InstanceError& e) {
    throw InstanceError(path + ": " + e.what());
  }
}

inline InstanceFile builtin_instance() {
  InstanceFile inst;
  inst.routes = {{"r1", 20.0}, {"r2", 30.0}, {"r3", 15.0}, {"r4", 10.0}};
  inst.period_min = 60.0;
  inst.departures_min = std::vector<double>{5.0, 10.0, 20.0, 50.0};
  inst.beta = 0.22;
  return inst;
}

inline Beta require_beta(const InstanceFile& inst, double flag) {
  if (flag > 0.0) return Beta(flag);
  if (inst.beta) return Beta(*inst.beta);
  throw ValidationError("logit measures need beta (instance field 'beta' or --beta)");
}

inline double require_period(const InstanceFile& inst, double flag) {
  if (flag > 0.0) return flag;
  if (inst.period_min) return *inst.period_min;
  throw ValidationError("this command needs a period (instance field 'period_min' or --period)");
}

inline PeriodicTimetable require_timetable(const InstanceFile& inst) {
  if (!inst.departures_min || !inst.period_min)
    throw ValidationError("this command needs 'period_min' and 'departures_min' in the instance");
  return PeriodicTimetable(inst.route_set(), *inst.period_min, *inst.departures_min);
}

inline RoutingModel routing_from(const std::string& name, const InstanceFile& inst, double beta_flag) {
  if (name == "uniform") return routing_model::Uniform{};
  if (name == "sp") return routing_model::ShortestPath{};
  if (name == "logit") return routing_model::Logit{require_beta(inst, beta_flag)};
  throw ValidationError("unknown routing model '" + name + "'");
}

inline EvaluationFunction evaluation_from(const std::string& name, const InstanceFile& inst,
                                          double beta_flag) {
  if (name == "disp") return evaluation::Dispersion{};
  if (name == "tt") return evaluation::TravelTime{};
  if (name == "ptt") return evaluation::PerceivedTravelTime{require_beta(inst, beta_flag)};
  throw ValidationError("unknown evaluation function '" + name + "'");
}

inline BaseMeasure base_from(const std::string& model, const InstanceFile& inst, double beta_flag) {
  if (model == "sp") return base_measure::SpTravelTime{};
  if (model == "logit") return base_measure::LogitPerceived{require_beta(inst, beta_flag)};
  throw ValidationError("--model must be sp or logit");
}

inline std::vector<std::size_t> parse_order(const std::string& text, const InstanceFile& inst) {
  const std::size_t n = inst.routes.size();
  std::vector<std::size_t> order;
  if (text.empty()) {
    for (std::size_t i = 0; i < n; ++i) order.push_back(i);
    return order;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (const auto idx = inst.index_of(item)) {
      order.push_back(*idx);
      continue;
    }
    std::size_t k = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), k);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || k == 0 || k > n)
      throw ValidationError("--order entry '" + item + "' is neither a route id nor an index in 1.." +
                            std::to_string(n));
    order.push_back(k - 1);
  }
  require_permutation(order, n);
  return order;
}

/// Evaluates a named measure on an instance (used by sweep).
inline double named_measure(const std::string& name, const InstanceFile& inst) {
  const auto underscore = name.find('_');
  if (underscore == std::string::npos) throw ValidationError("unknown measure '" + name + "'");
  const std::string head = name.substr(0, underscore);
  const std::string tail = name.substr(underscore + 1);
  if (head == "tt") {
    return timetable_measure(require_timetable(inst), base_from(tail, inst, 0.0));
  }
  if (head == "lp") {
    const double T = require_period(inst, 0.0);
    if (tail == "sp") return sp_lineplan_measure(inst.route_set(), T);
    if (tail == "logit") return logit_lineplan_measure(inst.route_set(), T, require_beta(inst, 0.0));
    throw ValidationError("unknown measure '" + name + "'");
  }
  return measure(inst.route_set(), routing_from(head, inst, 0.0), evaluation_from(tail, inst, 0.0));
}

inline void apply_parameter(InstanceFile& inst, const std::string& param, double value) {
  if (param == "beta") {
    inst.beta = value;
    return;
  }
  if (param == "period") {
    inst.period_min = value;
    return;
  }
  if (param.size() > 1 && param[0] == 'l') {
    std::size_t k = 0;
    auto res = std::from_chars(param.data() + 1, param.data() + param.size(), k);
    if (res.ec == std::errc{} && res.ptr == param.data() + param.size() && k >= 1 &&
        k <= inst.routes.size()) {
      inst.routes[k - 1].duration_min = value;
      return;
    }
  }
  throw ValidationError("--param must be l<i> (1-based route index), beta or period");
}

// -- verify ---------------------------------------------------------------

struct CheckOutcome {
  bool passed;
  std::string detail;
};

class VerifyReport {
 public:
  explicit VerifyReport(std::ostream& out) : out_(out) {}

  void run(const std::string& name, const std::function<CheckOutcome()>& check) {
    CheckOutcome r{false, ""};
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    out_ << (r.passed ? "PASS " : "FAIL ") << name;
    if (!r.detail.empty()) out_ << "  (" << r.detail << ")";
    out_ << '\n';
    if (!r.passed) ++failures_;
  }
  void skip(const std::string& name, const std::string& why) {
    out_ << "SKIP " << name << "  (" << why << ")\n";
  }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

inline bool within_three_sigma(std::span<const double> observed, std::span<const double> se,
                               std::span<const double> expected, std::string& detail) {
  bool ok = true;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = std::abs(observed[i] - expected[i]);
    if (diff > 3.0 * se[i]) ok = false;
    detail += (i ? " " : "") + fixed(observed[i], 4) + "/" + fixed(expected[i], 4);
  }
  return ok;
}

inline int run_verify(const InstanceFile& inst, std::uint64_t seed, std::size_t samples,
                      std::ostream& out) {
  VerifyReport report(out);
  const RouteSet r = inst.route_set();
  const Beta beta(inst.beta.value_or(0.22));
  if (!inst.beta) out << "note: instance has no beta, using 0.22\n";

  const std::vector<RoutingModel> models = {routing_model::Uniform{}, routing_model::ShortestPath{},
                                            routing_model::Logit{beta}};
  const std::vector<EvaluationFunction> evals = {evaluation::Dispersion{}, evaluation::TravelTime{},
                                                 evaluation::PerceivedTravelTime{beta}};
  report.run("routeset.closed_forms", [&] {
    double worst = 0.0;
    for (const auto& m : models)
      for (const auto& e : evals)
        worst = std::max(worst, std::abs(measure(r, m, e) - measure_closed_form(r, m, e)));
    return CheckOutcome{worst <= 1e-10, "max diff " + shortest(worst)};
  });
  for (const auto& e : evals) {
    report.run("routeset.consistency." + std::string(name_of(e)), [&] {
      const double gap = oracles::simplex_consistency_probe(r, e, 2000, seed);
      return CheckOutcome{gap >= -1e-12, "min gap " + shortest(gap)};
    });
  }

  const BaseMeasure sp_base = base_measure::SpTravelTime{};
  const BaseMeasure logit_base = base_measure::LogitPerceived{beta};

  if (inst.departures_min && inst.period_min) {
    const PeriodicTimetable tt(r, *inst.period_min, *inst.departures_min);
    const double T = tt.period();
    for (const auto& [label, base] : {std::pair{"sp", sp_base}, std::pair{"logit", logit_base}}) {
      report.run(std::string("timetable.representation.") + label, [&, base = base] {
        const auto rep = representation(tt, base);
        double sd = 0.0, sj = 0.0, min_jump = 0.0;
        for (std::size_t i = 0; i < tt.size(); ++i) {
          sd += rep.delta[i];
          sj += rep.jump[i];
          min_jump = std::min(min_jump, rep.jump[i]);
        }
        const double diff = std::abs(rep.measure_from_gaps() - rep.measure_from_jumps());
        const bool ok = diff <= 1e-9 && std::abs(sd - T) <= 1e-9 && std::abs(sj - T) <= 1e-9 &&
                        min_jump >= -1e-9;
        return CheckOutcome{ok, "form diff " + shortest(diff)};
      });
      report.run(std::string("timetable.quadrature.") + label, [&, base = base] {
        const double exact = timetable_measure(tt, base);
        const double quad = oracles::integrate_timetable_measure(tt, base, 1e-4 * T);
        return CheckOutcome{std::abs(exact - quad) <= 1e-3, fixed(exact) + " vs " + fixed(quad)};
      });
    }
  } else {
    report.skip("timetable.*", "instance has no departures");
  }

  if (inst.period_min) {
    const double T = *inst.period_min;
    std::vector<std::size_t> order(r.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const auto sp = solve_sp_allocation(r, T);
    const auto sp_tt = construct_sp_timetable(r, T, sp, order);
    report.run("lineplan.sp.construction", [&] {
      const double v = timetable_measure(sp_tt, sp_base);
      const bool ok = is_standard(sp_tt) && std::abs(v - sp.measure) <= 1e-9;
      return CheckOutcome{ok, fixed(v, 9) + " vs " + fixed(sp.measure, 9)};
    });
    report.run("lineplan.sp.shares", [&] {
      const auto mc = oracles::monte_carlo_shares(sp_tt, routing_model::ShortestPath{}, samples, seed);
      std::string detail;
      const bool ok = within_three_sigma(mc.shares, mc.standard_errors, sp.probabilities.values(), detail);
      return CheckOutcome{ok, detail};
    });
    if (r.size() <= 3) {
      report.run("lineplan.sp.brute_force", [&] {
        const auto bf = oracles::brute_force_lineplan(r, T, sp_base, T / 200.0);
        const bool ok = bf.value >= sp.measure - 1e-9 && bf.value <= sp.measure + T / 200.0;
        return CheckOutcome{ok, fixed(bf.value) + " vs " + fixed(sp.measure)};
      });
    } else {
      report.skip("lineplan.sp.brute_force", "more than three routes");
    }

    const auto lg = solve_logit_allocation(r, T, beta);
    report.run("lineplan.logit.round_trip", [&] {
      const auto gaps = logit_construction_gaps(r, T, beta, lg, order);
      const auto tt = construct_logit_timetable(r, T, beta, lg, order);
      const auto rep = representation(tt, logit_base);
      double worst = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(rep.jump[i] - lg.y[i]));
      const double v = rep.measure_from_gaps();
      bool positive = true;
      for (double g : gaps) positive = positive && g > 0.0;
      const bool ok = worst <= 1e-7 && std::abs(v - lg.measure) <= 1e-7 && positive;
      return CheckOutcome{ok, "max |Delta-y| " + shortest(worst)};
    });
    report.run("lineplan.logit.shares", [&] {
      const auto tt = construct_logit_timetable(r, T, beta, lg, order);
      const auto mc = oracles::monte_carlo_shares(tt, routing_model::Logit{beta}, samples, seed);
      std::string detail;
      const bool ok = within_three_sigma(mc.shares, mc.standard_errors, lg.probabilities.values(), detail);
      return CheckOutcome{ok, detail};
    });
  } else {
    report.skip("lineplan.*", "instance has no period");
  }

  report.run("rum.gumbel", [&] {
    const auto g = oracles::gumbel_ptt_estimate(r, beta, std::max(samples, oracles::kMinGumbelSamples), seed);
    const double exact = measure_closed_form(r, routing_model::Logit{beta}, evaluation::PerceivedTravelTime{beta});
    const auto logit = routing(r, routing_model::Logit{beta});
    std::string detail;
    const bool shares_ok =
        within_three_sigma(g.argmin_shares, g.argmin_standard_errors, logit.values(), detail);
    const bool ok = std::abs(g.estimate - exact) <= 3.0 * g.standard_error && shares_ok;
    return CheckOutcome{ok, fixed(g.estimate) + " vs " + fixed(exact)};
  });

  out << (report.failures() == 0 ? "all checks passed" : std::to_string(report.failures()) + " check(s) failed")
      << '\n';
  return report.failures() == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace detail

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Service quality measures for route sets, timetables and line plans",
               "transit-measure"};
  app.require_subcommand(1);

  std::string file;
  std::string model;
  std::string eval;
  bool all = false;
  double beta_flag = 0.0;
  double period_flag = 0.0;
  std::string order_text;
  bool as_json = false;
  std::string param;
  std::string range;
  std::string measure_name;
  std::string csv_path;
  bool builtin = false;
  std::uint64_t seed = 20240521;
  std::size_t samples = 200000;

  auto* routeset_cmd = app.add_subcommand("routeset", "Evaluate a route set measure");
  routeset_cmd->add_option("file", file, "Instance JSON")->required();
  routeset_cmd->add_option("--model", model, "uniform | sp | logit");
  routeset_cmd->add_option("--eval", eval, "disp | tt | ptt");
  routeset_cmd->add_flag("--all", all, "Print all nine measures");
  routeset_cmd->add_option("--beta", beta_flag, "Logit scale (overrides instance)")->check(CLI::PositiveNumber);

  auto* timetable_cmd = app.add_subcommand("timetable", "Evaluate a periodic timetable");
  timetable_cmd->add_option("file", file, "Instance JSON with departures")->required();
  timetable_cmd->add_option("--model", model, "sp | logit")->required();
  timetable_cmd->add_option("--beta", beta_flag, "Logit scale (overrides instance)")->check(CLI::PositiveNumber);

  auto* lineplan_cmd = app.add_subcommand("lineplan", "Solve for the line plan measure");
  lineplan_cmd->add_option("file", file, "Instance JSON")->required();
  lineplan_cmd->add_option("--model", model, "sp | logit")->required();
  lineplan_cmd->add_option("--beta", beta_flag, "Logit scale (overrides instance)")->check(CLI::PositiveNumber);
  lineplan_cmd->add_option("--period", period_flag, "Period in minutes (overrides instance)")->check(CLI::PositiveNumber);

  auto* construct_cmd = app.add_subcommand("construct", "Emit an optimal timetable for a route order");
  construct_cmd->add_option("file", file, "Instance JSON")->required();
  construct_cmd->add_option("--model", model, "sp | logit")->required();
  construct_cmd->add_option("--order", order_text, "Comma separated route ids or 1-based indices");
  construct_cmd->add_option("--beta", beta_flag, "Logit scale (overrides instance)")->check(CLI::PositiveNumber);
  construct_cmd->add_option("--period", period_flag, "Period in minutes (overrides instance)")->check(CLI::PositiveNumber);
  construct_cmd->add_flag("--json", as_json, "Write the timetable as an instance file");

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a measure over a parameter range");
  sweep_cmd->add_option("file", file, "Instance JSON")->required();
  sweep_cmd->add_option("--param", param, "l<i> | beta | period")->required();
  sweep_cmd->add_option("--range", range, "lo:hi:step")->required();
  sweep_cmd->add_option("--measure", measure_name,
                        "<uniform|sp|logit>_<disp|tt|ptt>, tt_<sp|logit> or lp_<sp|logit>")
      ->required();
  sweep_cmd->add_option("--csv", csv_path, "Output CSV path (stdout if omitted)");

  auto* verify_cmd = app.add_subcommand("verify", "Check the analytic results against the oracles");
  verify_cmd->add_option("file", file, "Instance JSON");
  verify_cmd->add_flag("--builtin", builtin, "Use the built-in four-route example");
  verify_cmd->add_option("--seed", seed, "Random seed");
  verify_cmd->add_option("--samples", samples, "Monte Carlo sample count");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (verify_cmd->parsed()) {
      if (builtin == !file.empty()) throw ValidationError("verify needs exactly one of <file> or --builtin");
      const InstanceFile inst = builtin ? detail::builtin_instance() : detail::load_instance(file);
      return detail::run_verify(inst, seed, samples, out);
    }

    InstanceFile inst = detail::load_instance(file);

    if (routeset_cmd->parsed()) {
      const RouteSet r = inst.route_set();
      if (all) {
        const bool have_beta = beta_flag > 0.0 || inst.beta.has_value();
        out << std::left << std::setw(12) << "evaluation" << std::setw(14) << "uniform" << std::setw(14)
            << "sp" << "logit" << '\n';
        for (const char* e : {"disp", "tt", "ptt"}) {
          out << std::setw(12) << e;
          for (const char* m : {"uniform", "sp", "logit"}) {
            const bool needs_beta = std::string(m) == "logit" || std::string(e) == "ptt";
            std::string cell = "n/a";
            if (!needs_beta || have_beta)
              cell = fixed(measure(r, detail::routing_from(m, inst, beta_flag),
                                   detail::evaluation_from(e, inst, beta_flag)));
            out << std::setw(std::string(m) == "logit" ? 0 : 14) << cell;
          }
          out << '\n';
        }
        return kExitOk;
      }
      if (model.empty() || eval.empty()) throw ValidationError("routeset needs --model and --eval, or --all");
      const double v = measure(r, detail::routing_from(model, inst, beta_flag),
                               detail::evaluation_from(eval, inst, beta_flag));
      out << "route set measure [" << model << "/" << eval << "]: " << fixed(v) << '\n';
      return kExitOk;
    }

    if (timetable_cmd->parsed()) {
      const auto tt = detail::require_timetable(inst);
      const auto rep = representation(tt, detail::base_from(model, inst, beta_flag));
      out << "timetable measure [" << model << "]: " << fixed(rep.measure_from_gaps()) << '\n';
      out << "jump form: " << fixed(rep.measure_from_jumps()) << '\n';
      out << std::left << std::setw(10) << "route" << std::setw(12) << "duration" << std::setw(12)
          << "departure" << std::setw(12) << "delta" << std::setw(12) << "tau" << "Delta" << '\n';
      for (std::size_t i = 0; i < tt.size(); ++i)
        out << std::setw(10) << inst.routes[i].id << std::setw(12) << fixed(tt.routes()[i], 3) << std::setw(12)
            << fixed(tt.departure(i), 3) << std::setw(12) << fixed(rep.delta[i], 3) << std::setw(12)
            << fixed(rep.tau[i], 3) << fixed(rep.jump[i], 3) << '\n';
      return kExitOk;
    }

    if (lineplan_cmd->parsed()) {
      const RouteSet r = inst.route_set();
      const double T = detail::require_period(inst, period_flag);
      std::vector<double> spacing;
      std::vector<double> probs;
      double value = 0.0;
      double mu = 0.0;
      std::string label;
      if (model == "sp") {
        const auto a = solve_sp_allocation(r, T);
        spacing = a.x;
        probs.assign(a.probabilities.values().begin(), a.probabilities.values().end());
        value = a.measure;
        mu = a.mu;
        label = "x";
      } else if (model == "logit") {
        const auto a = solve_logit_allocation(r, T, detail::require_beta(inst, beta_flag));
        spacing = a.y;
        probs.assign(a.probabilities.values().begin(), a.probabilities.values().end());
        value = a.measure;
        mu = a.mu;
        label = "y";
      } else {
        throw ValidationError("--model must be sp or logit");
      }
      out << "line plan measure [" << model << "]: " << fixed(value) << '\n';
      out << "mu: " << fixed(mu) << '\n';
      out << std::left << std::setw(10) << "route" << std::setw(12) << "duration" << std::setw(14) << label
          << "probability" << '\n';
      for (std::size_t i = 0; i < r.size(); ++i)
        out << std::setw(10) << inst.routes[i].id << std::setw(12) << fixed(r[i], 3) << std::setw(14)
            << fixed(spacing[i]) << fixed(probs[i]) << '\n';
      return kExitOk;
    }

    if (construct_cmd->parsed()) {
      const RouteSet r = inst.route_set();
      const double T = detail::require_period(inst, period_flag);
      const auto order = detail::parse_order(order_text, inst);
      std::optional<PeriodicTimetable> tt;
      double value = 0.0;
      if (model == "sp") {
        const auto a = solve_sp_allocation(r, T);
        tt = construct_sp_timetable(r, T, a, order);
        value = a.measure;
      } else if (model == "logit") {
        const Beta beta = detail::require_beta(inst, beta_flag);
        const auto a = solve_logit_allocation(r, T, beta);
        tt = construct_logit_timetable(r, T, beta, a, order);
        value = a.measure;
        inst.beta = beta.value();
      } else {
        throw ValidationError("--model must be sp or logit");
      }
      inst.period_min = T;
      inst.departures_min = std::vector<double>(tt->departures().begin(), tt->departures().end());
      if (as_json) {
        out << to_json(inst).dump(2) << '\n';
        return kExitOk;
      }
      out << "optimal timetable [" << model << "], measure " << fixed(value) << '\n';
      out << std::left << std::setw(10) << "route" << "departure" << '\n';
      for (std::size_t k = 0; k < order.size(); ++k)
        out << std::setw(10) << inst.routes[order[k]].id << fixed(tt->departure(order[k])) << '\n';
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const SweepSpec spec = parse_sweep(param, range, measure_name);
      std::ostringstream csv;
      csv << "param,value\n";
      for (double x : spec.points()) {
        InstanceFile point = inst;
        detail::apply_parameter(point, spec.parameter, x);
        csv << shortest(x) << ',' << shortest(detail::named_measure(spec.measure, point)) << '\n';
      }
      if (csv_path.empty()) {
        out << csv.str();
      } else {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + csv_path + "'");
        f << csv.str();
        out << "wrote " << spec.points().size() << " rows to " << csv_path << '\n';
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace transit_measure::cli
