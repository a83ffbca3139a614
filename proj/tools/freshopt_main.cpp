// freshopt: optimal cache-refresh intervals under Poisson content updates.
//
// Subcommands work off a scenario JSON document (see README for schemas):
//   optimize     unique cost-minimizing refresh interval
//   curve        cost curve C(T) over a log-spaced interval grid (CSV)
//   simulate     Monte Carlo renewal simulation of the configured schedule
//   compare      random-interval schedule vs fixed schedule at the same mean
//   fleet        shared-interval policy for a multi-element fleet
//   sweep-lambda / sweep-cost   optimal interval along a parameter grid
//
// Exit codes: 0 success, 2 input/schema error, 3 domain/precondition error,
// 4 numeric failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freshopt/errors.hpp"
#include "freshopt/fleet.hpp"
#include "freshopt/json_io.hpp"
#include "freshopt/optimizer.hpp"
#include "freshopt/random_schedule.hpp"
#include "freshopt/simulator.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

unsigned thread_cap() {
  const char* env = std::getenv("FRESHOPT_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (env == nullptr || *env == '\0') return hw;
  const unsigned long v = std::strtoul(env, nullptr, 10);
  if (v == 0) return hw;
  return std::min<unsigned long>(v, hw);
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

freshopt::Scenario require_scenario(const freshopt::ScenarioFile& f) {
  if (!f.scenario) {
    throw std::invalid_argument("scenario file: missing lambda/refresh_cost/age_cost");
  }
  return *f.scenario;
}

struct CurveArgs {
  std::string path;
  double t_min = 0.0;
  double t_max = 0.0;
  int points = 50;
};

struct SimArgs {
  std::string path;
  std::optional<std::uint64_t> cycles;
  std::optional<std::uint64_t> seed;
  std::optional<double> interval;
  std::string dist_json;
  std::string trace_path;
};

int run_optimize(const std::string& path) {
  const auto scn = require_scenario(freshopt::load_scenario_file(path));
  const auto policy = freshopt::optimal_interval(scn);
  emit({{"t_star", policy.t_star},
        {"cost", policy.cost_at_star.total},
        {"method", freshopt::method_name(policy.method)}});
  return 0;
}

int run_curve(const CurveArgs& args, const std::string& output) {
  if (!(args.t_min > 0.0) || !(args.t_max > args.t_min) || args.points < 2) {
    throw std::invalid_argument(
        "curve range requires 0 < t-min < t-max and points >= 2");
  }
  const auto scn = require_scenario(freshopt::load_scenario_file(args.path));
  const double ratio = args.t_max / args.t_min;
  json rows = json::array();
  if (output == "csv") {
    std::cout << "T,total,refresh_component,age_component\n";
  }
  for (int i = 0; i < args.points; ++i) {
    const double t =
        i + 1 == args.points
            ? args.t_max
            : args.t_min * std::pow(ratio, static_cast<double>(i) /
                                               (args.points - 1));
    const auto r = freshopt::long_run_cost(scn, t);
    if (output == "csv") {
      std::cout << fmt17(r.interval) << ',' << fmt17(r.total) << ','
                << fmt17(r.refresh_component) << ','
                << fmt17(r.age_component) << "\n";
    } else {
      rows.push_back(freshopt::encode(r));
    }
  }
  if (output != "csv") emit(rows);
  return 0;
}

int run_simulate(const SimArgs& args, bool quiet) {
  const auto file = freshopt::load_scenario_file(args.path);
  const auto scn = require_scenario(file);

  freshopt::SimConfig cfg;
  if (args.interval && !args.dist_json.empty()) {
    throw std::invalid_argument("give either --interval or --dist, not both");
  }
  if (args.interval) {
    cfg.schedule = freshopt::FixedSchedule{*args.interval};
  } else if (!args.dist_json.empty()) {
    cfg.schedule = freshopt::RandomSchedule{
        freshopt::parse_distribution(json::parse(args.dist_json), "--dist")};
  } else if (file.schedule) {
    cfg.schedule = *file.schedule;
  } else {
    throw std::invalid_argument(
        "no schedule: set \"schedule\" in the file or pass --interval/--dist");
  }

  if (args.cycles) {
    cfg.n_cycles = *args.cycles;
  } else if (file.sim_cycles) {
    cfg.n_cycles = *file.sim_cycles;
  } else {
    throw std::invalid_argument("cycle count required (--cycles or sim.cycles)");
  }
  // Seeds are always explicit so reruns are reproducible.
  if (args.seed) {
    cfg.seed = *args.seed;
  } else if (file.sim_seed) {
    cfg.seed = *file.sim_seed;
  } else {
    throw std::invalid_argument("seed required (--seed or sim.seed)");
  }

  freshopt::SimResult result;
  const auto start = std::chrono::steady_clock::now();
  if (!args.trace_path.empty()) {
    std::ofstream trace(args.trace_path);
    if (!trace) {
      throw std::invalid_argument("cannot open trace file: " + args.trace_path);
    }
    trace << "cycle_index,cycle_len,n_updates,cycle_cost\n";
    result = freshopt::simulate_with_trace(
        scn, cfg, [&trace](const freshopt::TraceRow& row) {
          trace << row.cycle_index << ',' << fmt17(row.cycle_len) << ','
                << row.n_updates << ',' << fmt17(row.cycle_cost) << "\n";
        });
  } else {
    result = freshopt::simulate(scn, cfg, thread_cap());
  }
  if (!quiet) {
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - start;
    std::cerr << "simulated " << cfg.n_cycles << " cycles in " << dt.count()
              << " s\n";
  }
  emit(freshopt::encode(result));
  return 0;
}

int run_compare(const std::string& path, const std::string& dist_json) {
  const auto scn = require_scenario(freshopt::load_scenario_file(path));
  const auto dist =
      freshopt::parse_distribution(json::parse(dist_json), "--dist");
  const auto cmp = freshopt::compare_random_vs_fixed(scn, dist);
  emit({{"c_h", cmp.random.total},
        {"c_fixed", cmp.fixed.total},
        {"gap", cmp.gap},
        {"mean_interval", cmp.random.interval}});
  return 0;
}

int run_fleet(const std::string& path) {
  const auto file = freshopt::load_scenario_file(path);
  if (!file.fleet) {
    throw std::invalid_argument("scenario file: missing \"fleet\" section");
  }
  const auto& fs = *file.fleet;
  const auto policy = freshopt::uniform_policy(fs);
  const auto conn = freshopt::amortized_connection_comparison(fs);
  json per_element = json::array();
  for (const auto& p : freshopt::per_element_optima(fs)) {
    per_element.push_back(p.t_star);
  }
  emit({{"t_star", policy.t_star},
        {"total_cost", policy.total_cost},
        {"amortized_conn",
         {{"uniform", conn.uniform_per_element},
          {"non_uniform", conn.non_uniform_per_element}}},
        {"per_element_t_star", per_element}});
  return 0;
}

int run_sweep(const std::string& path, const std::vector<double>& values,
              bool vary_lambda, const std::string& output) {
  if (values.empty()) {
    throw std::invalid_argument("sweep needs at least one grid value");
  }
  const auto scn = require_scenario(freshopt::load_scenario_file(path));
  const auto rows = vary_lambda ? freshopt::sweep_lambda(scn, values)
                                : freshopt::sweep_refresh_cost(scn, values);
  const char* param = vary_lambda ? "lambda" : "refresh_cost";
  if (output == "json") {
    json out = json::array();
    for (const auto& [v, p] : rows) {
      out.push_back({{param, v},
                     {"t_star", p.t_star},
                     {"cost", p.cost_at_star.total},
                     {"method", freshopt::method_name(p.method)}});
    }
    emit(out);
  } else {
    std::cout << param << ",t_star,cost,method\n";
    for (const auto& [v, p] : rows) {
      std::cout << fmt17(v) << ',' << fmt17(p.t_star) << ','
                << fmt17(p.cost_at_star.total) << ','
                << freshopt::method_name(p.method) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal cache refresh scheduling under Poisson updates"};
  app.require_subcommand(1);

  std::string output = "default";
  bool quiet = false;
  app.add_option("--output", output, "output format (json|csv)")
      ->check(CLI::IsMember({"json", "csv", "default"}));
  app.add_flag("--quiet", quiet, "suppress informational stderr output");

  std::string opt_path;
  auto* cmd_optimize =
      app.add_subcommand("optimize", "compute the optimal refresh interval");
  cmd_optimize->add_option("scenario", opt_path, "scenario JSON file")
      ->required();

  CurveArgs curve;
  auto* cmd_curve = app.add_subcommand("curve", "emit the cost curve C(T)");
  cmd_curve->add_option("scenario", curve.path, "scenario JSON file")
      ->required();
  cmd_curve->add_option("--t-min", curve.t_min, "lowest interval")->required();
  cmd_curve->add_option("--t-max", curve.t_max, "highest interval")->required();
  cmd_curve->add_option("--points", curve.points, "grid size (default 50)");

  SimArgs sim;
  std::uint64_t sim_cycles = 0;
  std::uint64_t sim_seed = 0;
  double sim_interval = 0.0;
  auto* cmd_simulate =
      app.add_subcommand("simulate", "Monte Carlo renewal simulation");
  cmd_simulate->add_option("scenario", sim.path, "scenario JSON file")
      ->required();
  auto* cycles_opt = cmd_simulate->add_option("--cycles", sim_cycles,
                                              "number of renewal cycles");
  auto* seed_opt = cmd_simulate->add_option("--seed", sim_seed, "RNG seed");
  auto* interval_opt = cmd_simulate->add_option(
      "--interval", sim_interval, "fixed schedule interval (overrides file)");
  cmd_simulate->add_option("--dist", sim.dist_json,
                           "random schedule distribution JSON (overrides file)");
  cmd_simulate->add_option("--trace", sim.trace_path,
                           "write per-cycle CSV trace to this path");

  std::string cmp_path;
  std::string cmp_dist;
  auto* cmd_compare = app.add_subcommand(
      "compare", "random-interval schedule vs fixed schedule with equal mean");
  cmd_compare->add_option("scenario", cmp_path, "scenario JSON file")
      ->required();
  cmd_compare->add_option("--dist", cmp_dist, "distribution JSON")->required();

  std::string fleet_path;
  auto* cmd_fleet =
      app.add_subcommand("fleet", "uniform-allocation policy for a fleet");
  cmd_fleet->add_option("scenario", fleet_path, "scenario JSON file")
      ->required();

  std::string sweep_l_path;
  std::vector<double> sweep_l_values;
  auto* cmd_sweep_lambda = app.add_subcommand(
      "sweep-lambda", "optimal interval along an ascending update-rate grid");
  cmd_sweep_lambda->add_option("scenario", sweep_l_path, "scenario JSON file")
      ->required();
  cmd_sweep_lambda
      ->add_option("--values", sweep_l_values, "comma-separated rates")
      ->required()
      ->delimiter(',');

  std::string sweep_c_path;
  std::vector<double> sweep_c_values;
  auto* cmd_sweep_cost = app.add_subcommand(
      "sweep-cost", "optimal interval along an ascending refresh-cost grid");
  cmd_sweep_cost->add_option("scenario", sweep_c_path, "scenario JSON file")
      ->required();
  cmd_sweep_cost
      ->add_option("--values", sweep_c_values, "comma-separated refresh costs")
      ->required()
      ->delimiter(',');

  // Global flags are also accepted after the subcommand name.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_optimize) {
      if (output == "csv") {
        throw std::invalid_argument("optimize emits JSON only");
      }
      return run_optimize(opt_path);
    }
    if (*cmd_curve) {
      return run_curve(curve, output == "json" ? "json" : "csv");
    }
    if (*cmd_simulate) {
      if (*cycles_opt) sim.cycles = sim_cycles;
      if (*seed_opt) sim.seed = sim_seed;
      if (*interval_opt) sim.interval = sim_interval;
      if (output == "csv") {
        throw std::invalid_argument("simulate emits JSON only");
      }
      return run_simulate(sim, quiet);
    }
    if (*cmd_compare) {
      if (output == "csv") {
        throw std::invalid_argument("compare emits JSON only");
      }
      return run_compare(cmp_path, cmp_dist);
    }
    if (*cmd_fleet) {
      if (output == "csv") {
        throw std::invalid_argument("fleet emits JSON only");
      }
      return run_fleet(fleet_path);
    }
    if (*cmd_sweep_lambda) {
      return run_sweep(sweep_l_path, sweep_l_values, true,
                       output == "json" ? "json" : "csv");
    }
    if (*cmd_sweep_cost) {
      return run_sweep(sweep_c_path, sweep_c_values, false,
                       output == "json" ? "json" : "csv");
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const freshopt::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
