#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "freshopt/cost_model.hpp"
#include "freshopt/fleet.hpp"
#include "freshopt/optimizer.hpp"
#include "freshopt/random_schedule.hpp"
#include "freshopt/simulator.hpp"

namespace freshopt {

// JSON wire formats. Inputs validate both shape and the numeric invariants
// of the underlying types; violations surface as std::invalid_argument with
// a field path, never as a half-constructed object.
//
//   age_cost: {"kind":"linear","slope":1.0} | {"kind":"power","coeff":a,"exp":p}
//           | {"kind":"exponential","scale":a,"rate":b}
//           | {"kind":"table","points":[[t,c],...]}
//   scenario: {"lambda":l,"refresh_cost":c,"age_cost":{...}}
//   distribution: {"kind":"degenerate","t":2.0} | {"kind":"uniform","a":1,"b":3}
//               | {"kind":"exponential","mean":2} | {"kind":"gamma","shape":2,"scale":1.5}
//   schedule: {"kind":"fixed","interval":2.0} | {"kind":"random","dist":{...}}
//   fleet: {"conn_cost":10,"elements":[{"lambda":..,"refresh_cost":..,"age_cost":{..}},...]}
//        | {"conn_cost":10,"mesh":[{"lambda":..,"weight":..,"refresh_cost":..,"age_cost":{..}},...]}

nlohmann::json encode(const AgeCost& c);
nlohmann::json encode(const Scenario& scn);
nlohmann::json encode(const IntervalDistribution& d);
nlohmann::json encode(const ScheduleSpec& s);
nlohmann::json encode(const CostReport& r);
nlohmann::json encode(const OptimalPolicy& p);
nlohmann::json encode(const SimResult& r);

AgeCost parse_age_cost(const nlohmann::json& j, const std::string& ctx = "age_cost");
Scenario parse_scenario(const nlohmann::json& j, const std::string& ctx = "scenario");
IntervalDistribution parse_distribution(const nlohmann::json& j,
                                        const std::string& ctx = "distribution");
ScheduleSpec parse_schedule(const nlohmann::json& j,
                            const std::string& ctx = "schedule");
FleetSpec parse_fleet(const nlohmann::json& j, const std::string& ctx = "fleet");

/// A scenario document: Scenario fields at the top level, plus optional
/// "schedule", "sim" ({"cycles":n,"seed":s}) and "fleet" sections.
struct ScenarioFile {
  std::optional<Scenario> scenario;
  std::optional<ScheduleSpec> schedule;
  std::optional<std::uint64_t> sim_cycles;
  std::optional<std::uint64_t> sim_seed;
  std::optional<FleetSpec> fleet;
};

ScenarioFile parse_scenario_file(const nlohmann::json& j);

/// Reads and parses a scenario document; std::invalid_argument on I/O
/// failure, nlohmann parse_error (with byte offset) on malformed JSON.
ScenarioFile load_scenario_file(const std::string& path);

const char* method_name(SolveMethod m);

}  // namespace freshopt
