#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "freshopt/json_io.hpp"
#include "support/generators.hpp"

using freshopt::AgeCost;
using freshopt::IntervalDistribution;
using freshopt::Scenario;
using nlohmann::json;

TEST_CASE("documented age-cost payloads parse") {
  const auto linear =
      freshopt::parse_age_cost(json::parse(R"({"kind":"linear","slope":1.0})"));
  CHECK(linear.kind() == AgeCost::Kind::Linear);
  CHECK(linear.value(2.0) == 2.0);

  const auto power = freshopt::parse_age_cost(
      json::parse(R"({"kind":"power","coeff":2.0,"exp":3.0})"));
  CHECK(power.value(2.0) == doctest::Approx(16.0));

  const auto table = freshopt::parse_age_cost(
      json::parse(R"({"kind":"table","points":[[0,0],[1,2],[5,10]]})"));
  CHECK(table.value(3.0) == doctest::Approx(6.0));
}

TEST_CASE("documented scenario payload parses") {
  const auto scn = freshopt::parse_scenario(json::parse(
      R"({"lambda":1.0,"refresh_cost":2.0,"age_cost":{"kind":"linear","slope":1.0}})"));
  CHECK(scn.lambda() == 1.0);
  CHECK(scn.refresh_cost() == 2.0);
}

TEST_CASE("documented distribution payloads parse") {
  CHECK(freshopt::parse_distribution(
            json::parse(R"({"kind":"degenerate","t":2.0})"))
            .mean() == 2.0);
  CHECK(freshopt::parse_distribution(
            json::parse(R"({"kind":"uniform","a":1,"b":3})"))
            .mean() == 2.0);
  CHECK(freshopt::parse_distribution(
            json::parse(R"({"kind":"exponential","mean":2})"))
            .mean() == 2.0);
  CHECK(freshopt::parse_distribution(
            json::parse(R"({"kind":"gamma","shape":2,"scale":1.5})"))
            .mean() == doctest::Approx(3.0));
}

TEST_CASE("schema violations are invalid_argument with a field path") {
  CHECK_THROWS_WITH_AS(
      freshopt::parse_age_cost(json::parse(R"({"kind":"cubic","slope":1})")),
      doctest::Contains("unknown age cost kind"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      freshopt::parse_age_cost(json::parse(R"({"kind":"linear"})")),
      doctest::Contains("slope"), std::invalid_argument);
  // Value constraints are enforced at load time too.
  CHECK_THROWS_AS(
      freshopt::parse_age_cost(json::parse(R"({"kind":"linear","slope":-1})")),
      std::invalid_argument);
  CHECK_THROWS_AS(freshopt::parse_scenario(json::parse(
                      R"({"lambda":-1,"refresh_cost":1,
                          "age_cost":{"kind":"linear","slope":1}})")),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      freshopt::parse_distribution(json::parse(R"({"kind":"uniform","a":1})")),
      doctest::Contains("'b'"), std::invalid_argument);
}

TEST_CASE("age cost round-trips through JSON") {
  freshopt::SplitMix64 rng(808080);
  for (int i = 0; i < 30; ++i) {
    const AgeCost cost = testgen::random_age_cost(rng);
    const AgeCost back = freshopt::parse_age_cost(freshopt::encode(cost));
    CHECK(back.kind() == cost.kind());
    for (double t : {0.0, 0.37, 1.0, 4.2, 19.0}) {
      CHECK(back.value(t) == cost.value(t));
      CHECK(back.integral(t) == cost.integral(t));
    }
  }
}

TEST_CASE("scenario and distribution round-trip through JSON") {
  freshopt::SplitMix64 rng(5544);
  for (int i = 0; i < 20; ++i) {
    const Scenario scn = testgen::random_scenario(rng);
    const Scenario back = freshopt::parse_scenario(freshopt::encode(scn));
    CHECK(back.lambda() == scn.lambda());
    CHECK(back.refresh_cost() == scn.refresh_cost());

    const auto d = testgen::random_distribution(rng, scn);
    const auto d_back = freshopt::parse_distribution(freshopt::encode(d));
    CHECK(d_back.kind() == d.kind());
    CHECK(d_back.mean() == d.mean());
    for (double t : {0.1, 1.0, 2.7}) {
      CHECK(d_back.survival(t) == d.survival(t));
    }
  }
}

TEST_CASE("schedules round-trip through JSON") {
  const freshopt::ScheduleSpec fixed = freshopt::FixedSchedule{2.5};
  const auto fixed_back = freshopt::parse_schedule(freshopt::encode(fixed));
  CHECK(std::get<freshopt::FixedSchedule>(fixed_back).interval == 2.5);

  const freshopt::ScheduleSpec random =
      freshopt::RandomSchedule{IntervalDistribution::gamma(2.0, 1.5)};
  const auto random_back = freshopt::parse_schedule(freshopt::encode(random));
  CHECK(std::get<freshopt::RandomSchedule>(random_back).dist.mean() ==
        doctest::Approx(3.0));

  CHECK_THROWS_AS(
      freshopt::parse_schedule(json::parse(R"({"kind":"fixed","interval":0})")),
      std::invalid_argument);
}

TEST_CASE("fleet documents parse in both forms") {
  const auto discrete = freshopt::parse_fleet(json::parse(R"({
    "conn_cost": 10,
    "elements": [
      {"lambda": 1, "refresh_cost": 2, "age_cost": {"kind":"linear","slope":1}},
      {"lambda": 3, "refresh_cost": 2, "age_cost": {"kind":"linear","slope":1}}
    ]})"));
  CHECK(discrete.size() == 2);
  CHECK_FALSE(discrete.is_mesh());
  CHECK(discrete.conn_cost() == 10.0);

  const auto mesh = freshopt::parse_fleet(json::parse(R"({
    "conn_cost": 0,
    "mesh": [
      {"lambda": 0.5, "weight": 0.5, "refresh_cost": 2,
       "age_cost": {"kind":"linear","slope":1}},
      {"lambda": 1.5, "weight": 0.5, "refresh_cost": 2,
       "age_cost": {"kind":"linear","slope":1}}
    ]})"));
  CHECK(mesh.is_mesh());
  CHECK(freshopt::uniform_policy(mesh).t_star == doctest::Approx(2.0));

  CHECK_THROWS_WITH_AS(freshopt::parse_fleet(json::parse(R"({"conn_cost":1})")),
                       doctest::Contains("elements"), std::invalid_argument);
}

TEST_CASE("scenario files expose their optional sections") {
  const auto file = freshopt::parse_scenario_file(json::parse(R"({
    "lambda": 1.0, "refresh_cost": 2.0,
    "age_cost": {"kind": "linear", "slope": 1.0},
    "schedule": {"kind": "random", "dist": {"kind": "exponential", "mean": 2}},
    "sim": {"cycles": 1000, "seed": 7}
  })"));
  REQUIRE(file.scenario.has_value());
  REQUIRE(file.schedule.has_value());
  CHECK(file.sim_cycles == 1000);
  CHECK(file.sim_seed == 7);
  CHECK_FALSE(file.fleet.has_value());

  const auto fleet_only = freshopt::parse_scenario_file(json::parse(R"({
    "fleet": {"conn_cost": 0, "elements": [
      {"lambda": 1, "refresh_cost": 2, "age_cost": {"kind":"linear","slope":1}}
    ]}})"));
  CHECK_FALSE(fleet_only.scenario.has_value());
  REQUIRE(fleet_only.fleet.has_value());
}

TEST_CASE("reports serialize with stable keys") {
  const Scenario scn(1.0, 2.0, AgeCost::linear(1.0));
  const json cost = freshopt::encode(freshopt::long_run_cost(scn, 2.0));
  CHECK(cost.at("total") == 2.0);
  CHECK(cost.at("refresh_component") == 1.0);
  CHECK(cost.at("age_component") == 1.0);

  const json policy = freshopt::encode(freshopt::optimal_interval(scn));
  CHECK(policy.at("t_star") == 2.0);
  CHECK(policy.at("method") == "closed_form_linear");
}
