// JSON instance files:
//
//   { "routes": [{"id": "r1", "duration_min": 20.0}, ...],
//     "period_min": 60.0,
//     "departures_min": {"r1": 5.0, ...},
//     "beta": 0.22,
//     "od_weight": 1.0 }
//
// Only "routes" is required. Syntax errors are reported with line and
// column, schema errors with the JSON path of the offending value.
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "transit_measure/core.hpp"

namespace transit_measure {

class InstanceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct Route {
  std::string id;
  double duration_min = 0.0;
};

struct InstanceFile {
  std::vector<Route> routes;
  std::optional<double> period_min;
  std::optional<std::vector<double>> departures_min;  // by route index
  std::optional<double> beta;
  std::optional<double> od_weight;

  RouteSet route_set() const {
    std::vector<double> d;
    d.reserve(routes.size());
    for (const auto& r : routes) d.push_back(r.duration_min);
    return RouteSet(std::move(d));
  }

  std::optional<std::size_t> index_of(std::string_view id) const {
    for (std::size_t i = 0; i < routes.size(); ++i)
      if (routes[i].id == id) return i;
    return std::nullopt;
  }
};

namespace detail {

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline double finite_number(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number()) throw InstanceError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InstanceError(path + ": must be finite");
  return x;
}

}  // namespace detail

inline InstanceFile parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw InstanceError("invalid JSON at " + detail::line_column(text, at) + ": " + e.what());
  }
  if (!doc.is_object()) throw InstanceError("$: instance must be a JSON object");

  static const std::set<std::string> known = {"routes", "period_min", "departures_min", "beta",
                                              "od_weight"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) throw InstanceError("$." + key + ": unknown field");

  InstanceFile inst;
  if (!doc.contains("routes")) throw InstanceError("$.routes: required field is missing");
  const auto& routes = doc["routes"];
  if (!routes.is_array() || routes.empty())
    throw InstanceError("$.routes: expected a nonempty array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const std::string path = "$.routes[" + std::to_string(i) + "]";
    const auto& r = routes[i];
    if (!r.is_object()) throw InstanceError(path + ": expected an object");
    for (const auto& [key, _] : r.items())
      if (key != "id" && key != "duration_min") throw InstanceError(path + "." + key + ": unknown field");
    if (!r.contains("id") || !r["id"].is_string())
      throw InstanceError(path + ".id: expected a string");
    if (!r.contains("duration_min")) throw InstanceError(path + ".duration_min: required field is missing");
    Route route{r["id"].get<std::string>(), detail::finite_number(r["duration_min"], path + ".duration_min")};
    if (!ids.insert(route.id).second) throw InstanceError(path + ".id: duplicate route id '" + route.id + "'");
    inst.routes.push_back(std::move(route));
  }

  if (doc.contains("period_min")) {
    const double T = detail::finite_number(doc["period_min"], "$.period_min");
    if (!(T > 0.0)) throw InstanceError("$.period_min: must be positive");
    inst.period_min = T;
  }

  if (doc.contains("beta")) {
    const double b = detail::finite_number(doc["beta"], "$.beta");
    if (!(b > 0.0)) throw InstanceError("$.beta: must be positive");
    inst.beta = b;
  }

  if (doc.contains("od_weight")) {
    const double w = detail::finite_number(doc["od_weight"], "$.od_weight");
    if (w < 0.0) throw InstanceError("$.od_weight: must be nonnegative");
    inst.od_weight = w;
  }

  if (doc.contains("departures_min")) {
    const auto& deps = doc["departures_min"];
    if (!deps.is_object()) throw InstanceError("$.departures_min: expected an object keyed by route id");
    if (!inst.period_min) throw InstanceError("$.departures_min: departures require period_min");
    std::vector<double> theta(inst.routes.size(), 0.0);
    std::vector<bool> seen(inst.routes.size(), false);
    for (const auto& [key, value] : deps.items()) {
      const std::string path = "$.departures_min." + key;
      const auto idx = inst.index_of(key);
      if (!idx) throw InstanceError(path + ": no route with this id");
      const double t = detail::finite_number(value, path);
      if (!(t >= 0.0 && t < *inst.period_min))
        throw InstanceError(path + ": departure must lie in [0, period_min)");
      theta[*idx] = t;
      seen[*idx] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw InstanceError("$.departures_min: missing departure for route '" + inst.routes[i].id + "'");
    inst.departures_min = std::move(theta);
  }
  return inst;
}

/// Serialises an instance back to the file schema.
inline nlohmann::ordered_json to_json(const InstanceFile& inst) {
  nlohmann::ordered_json doc;
  doc["routes"] = nlohmann::ordered_json::array();
  for (const auto& r : inst.routes) doc["routes"].push_back({{"id", r.id}, {"duration_min", r.duration_min}});
  if (inst.period_min) doc["period_min"] = *inst.period_min;
  if (inst.departures_min) {
    nlohmann::ordered_json deps = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < inst.routes.size(); ++i) deps[inst.routes[i].id] = (*inst.departures_min)[i];
    doc["departures_min"] = deps;
  }
  if (inst.beta) doc["beta"] = *inst.beta;
  if (inst.od_weight) doc["od_weight"] = *inst.od_weight;
  return doc;
}

}  // namespace transit_measure
