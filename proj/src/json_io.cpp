#include "freshopt/json_io.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace freshopt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw std::invalid_argument(ctx + ": " + msg);
}

// Re-labels the constructors' domain errors as schema errors: at load time
// a bad numeric value is an input problem, not a caller bug.
template <typename F>
auto checked(const std::string& ctx, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::domain_error& e) {
    fail(ctx, e.what());
  }
}

const json& member(const json& j, const char* field, const std::string& ctx) {
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) fail(ctx, std::string("missing field '") + field + "'");
  return *it;
}

double number(const json& j, const char* field, const std::string& ctx) {
  const json& v = member(j, field, ctx);
  if (!v.is_number()) fail(ctx + "." + field, "expected a number");
  return v.get<double>();
}

std::uint64_t unsigned_int(const json& j, const char* field,
                           const std::string& ctx) {
  const json& v = member(j, field, ctx);
  if (!v.is_number_unsigned()) {
    fail(ctx + "." + field, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string kind_of(const json& j, const std::string& ctx) {
  const json& v = member(j, "kind", ctx);
  if (!v.is_string()) fail(ctx + ".kind", "expected a string");
  return v.get<std::string>();
}

}  // namespace

nlohmann::json encode(const AgeCost& c) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, AgeCost::Linear>) {
          return {{"kind", "linear"}, {"slope", s.slope}};
        } else if constexpr (std::is_same_v<S, AgeCost::Power>) {
          return {{"kind", "power"}, {"coeff", s.coeff}, {"exp", s.exponent}};
        } else if constexpr (std::is_same_v<S, AgeCost::Exponential>) {
          return {{"kind", "exponential"}, {"scale", s.scale}, {"rate", s.rate}};
        } else {
          json pts = json::array();
          for (const auto& p : s.points) pts.push_back({p.t, p.c});
          return {{"kind", "table"}, {"points", std::move(pts)}};
        }
      },
      c.spec());
}

AgeCost parse_age_cost(const json& j, const std::string& ctx) {
  const std::string kind = kind_of(j, ctx);
  return checked(ctx, [&]() -> AgeCost {
    if (kind == "linear") {
      return AgeCost::linear(number(j, "slope", ctx));
    }
    if (kind == "power") {
      return AgeCost::power(number(j, "coeff", ctx), number(j, "exp", ctx));
    }
    if (kind == "exponential") {
      return AgeCost::exponential(number(j, "scale", ctx),
                                  number(j, "rate", ctx));
    }
    if (kind == "table") {
      const json& pts = member(j, "points", ctx);
      if (!pts.is_array()) fail(ctx + ".points", "expected an array");
      std::vector<AgeCost::TablePoint> points;
      points.reserve(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const json& p = pts[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
            !p[1].is_number()) {
          fail(ctx + ".points[" + std::to_string(i) + "]",
               "expected a [t, c] number pair");
        }
        points.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      return AgeCost::table(std::move(points));
    }
    fail(ctx + ".kind", "unknown age cost kind '" + kind + "'");
  });
}

nlohmann::json encode(const Scenario& scn) {
  return {{"lambda", scn.lambda()},
          {"refresh_cost", scn.refresh_cost()},
          {"age_cost", encode(scn.age_cost())}};
}

Scenario parse_scenario(const json& j, const std::string& ctx) {
  return checked(ctx, [&] {
    return Scenario(number(j, "lambda", ctx), number(j, "refresh_cost", ctx),
                    parse_age_cost(member(j, "age_cost", ctx), ctx + ".age_cost"));
  });
}

nlohmann::json encode(const IntervalDistribution& d) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IntervalDistribution::Degenerate>) {
          return {{"kind", "degenerate"}, {"t", s.t}};
        } else if constexpr (std::is_same_v<S, IntervalDistribution::Uniform>) {
          return {{"kind", "uniform"}, {"a", s.a}, {"b", s.b}};
        } else if constexpr (std::is_same_v<S,
                                            IntervalDistribution::Exponential>) {
          return {{"kind", "exponential"}, {"mean", s.mean}};
        } else {
          return {{"kind", "gamma"}, {"shape", s.shape}, {"scale", s.scale}};
        }
      },
      d.spec());
}

IntervalDistribution parse_distribution(const json& j, const std::string& ctx) {
  const std::string kind = kind_of(j, ctx);
  return checked(ctx, [&]() -> IntervalDistribution {
    if (kind == "degenerate") {
      return IntervalDistribution::degenerate(number(j, "t", ctx));
    }
    if (kind == "uniform") {
      return IntervalDistribution::uniform(number(j, "a", ctx),
                                           number(j, "b", ctx));
    }
    if (kind == "exponential") {
      return IntervalDistribution::exponential(number(j, "mean", ctx));
    }
    if (kind == "gamma") {
      return IntervalDistribution::gamma(number(j, "shape", ctx),
                                         number(j, "scale", ctx));
    }
    fail(ctx + ".kind", "unknown distribution kind '" + kind + "'");
  });
}

nlohmann::json encode(const ScheduleSpec& s) {
  if (const auto* fixed = std::get_if<FixedSchedule>(&s)) {
    return {{"kind", "fixed"}, {"interval", fixed->interval}};
  }
  return {{"kind", "random"},
          {"dist", encode(std::get<RandomSchedule>(s).dist)}};
}

ScheduleSpec parse_schedule(const json& j, const std::string& ctx) {
  const std::string kind = kind_of(j, ctx);
  if (kind == "fixed") {
    const double t = number(j, "interval", ctx);
    if (!(t > 0.0)) fail(ctx + ".interval", "must be positive");
    return FixedSchedule{t};
  }
  if (kind == "random") {
    return RandomSchedule{
        parse_distribution(member(j, "dist", ctx), ctx + ".dist")};
  }
  fail(ctx + ".kind", "unknown schedule kind '" + kind + "'");
}

FleetSpec parse_fleet(const json& j, const std::string& ctx) {
  return checked(ctx, [&]() -> FleetSpec {
    const double conn = number(j, "conn_cost", ctx);
    const bool has_elements = j.is_object() && j.contains("elements");
    const bool has_mesh = j.is_object() && j.contains("mesh");
    if (has_elements == has_mesh) {
      fail(ctx, "expected exactly one of 'elements' or 'mesh'");
    }
    const char* key = has_elements ? "elements" : "mesh";
    const json& arr = member(j, key, ctx);
    if (!arr.is_array() || arr.empty()) {
      fail(ctx + "." + key, "expected a non-empty array");
    }
    std::vector<FleetElement> records;
    std::vector<double> weights;
    records.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ectx = ctx + "." + key + "[" + std::to_string(i) + "]";
      const json& e = arr[i];
      records.push_back(FleetElement{
          number(e, "lambda", ectx), number(e, "refresh_cost", ectx),
          parse_age_cost(member(e, "age_cost", ectx), ectx + ".age_cost")});
      if (has_mesh) weights.push_back(number(e, "weight", ectx));
    }
    if (has_mesh) {
      return FleetSpec::from_mesh(std::move(records), std::move(weights), conn);
    }
    return FleetSpec::from_elements(std::move(records), conn);
  });
}

nlohmann::json encode(const CostReport& r) {
  return {{"total", r.total},
          {"refresh_component", r.refresh_component},
          {"age_component", r.age_component},
          {"interval", r.interval}};
}

nlohmann::json encode(const OptimalPolicy& p) {
  return {{"t_star", p.t_star},
          {"cost", p.cost_at_star.total},
          {"cost_report", encode(p.cost_at_star)},
          {"method", method_name(p.method)}};
}

nlohmann::json encode(const SimResult& r) {
  return {{"mean_cost_per_time", r.mean_cost_per_time},
          {"std_error", r.std_error},
          {"n_updates_total", r.n_updates_total},
          {"n_cycles", r.n_cycles},
          {"refresh_component", r.refresh_component},
          {"age_component", r.age_component}};
}

ScenarioFile parse_scenario_file(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("scenario file: expected a JSON object");
  }
  ScenarioFile f;
  if (j.contains("lambda") || j.contains("refresh_cost") ||
      j.contains("age_cost")) {
    f.scenario = parse_scenario(j, "scenario");
  }
  if (j.contains("schedule")) {
    f.schedule = parse_schedule(j.at("schedule"), "schedule");
  }
  if (j.contains("sim")) {
    const json& sim = j.at("sim");
    if (!sim.is_object()) throw std::invalid_argument("sim: expected an object");
    if (sim.contains("cycles")) f.sim_cycles = unsigned_int(sim, "cycles", "sim");
    if (sim.contains("seed")) f.sim_seed = unsigned_int(sim, "seed", "sim");
  }
  if (j.contains("fleet")) {
    f.fleet = parse_fleet(j.at("fleet"), "fleet");
  }
  return f;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open scenario file: " + path);
  }
  return parse_scenario_file(json::parse(in));
}

const char* method_name(SolveMethod m) {
  return m == SolveMethod::ClosedFormLinear ? "closed_form_linear"
                                            : "numeric_root";
}

}  // namespace freshopt
