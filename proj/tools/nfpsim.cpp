// Command-line driver: run a scenario, sweep constraint subsets, or search for a seed.
//
// Exit codes: 0 success, 1 unexpected error, 2 config error, 3 infeasible or placement
// failure, 4 exact-solver guard or node budget exceeded.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nfp/nfp.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::string solver;
  std::string constraints;
  std::size_t target = 28;
  std::uint64_t max_seeds = 10'000;
  std::uint64_t start = 0;
};

nfp::ScenarioConfig load(const Options& o) {
  auto cfg = o.config.empty() ? nfp::preset("table1-urban") : nfp::load_scenario(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.solver.empty()) cfg.solver = nfp::parse_solver(o.solver);
  if (!o.constraints.empty()) cfg.constraints = nfp::parse_constraints(o.constraints);
  cfg.validate();
  return cfg;
}

void print_report(const nfp::SolveReport& r) {
  fmt::print("{:>7}: sum rate {:.3f} Gbps, {} cells on {} hubs, links [{}], {} ops, {:.6f} s\n",
             r.method, static_cast<double>(r.sum_rate_bps) / 1e9, r.n_associated, r.hubs_in_use,
             nfp::detail::join(r.per_hub_links, ','), r.op_count, r.wall_time_s);
}

int cmd_run(const Options& o) {
  const auto cfg = load(o);
  const auto run = nfp::run_scenario(cfg);
  nfp::write_run(run, o.out);
  fmt::print("seed {}: {} cells, {} hubs (min separation {:.1f} m)\n", cfg.seed,
             run.instance.n_cells(), run.instance.n_hubs(), run.deployment.plan.hub_min_sep_m);
  for (const auto& s : run.solutions) print_report(s.report);
  for (const auto& n : run.notes) fmt::print("note: {}\n", n);
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto cfg = load(o);
  std::vector<std::string> notes;
  const auto rows = nfp::sweep_constraints(cfg, &notes);
  nfp::write_sweep(rows, o.out);
  for (const auto& r : rows)
    fmt::print("{:>7} {:>8}: {} of {} admissible cells, {:.3f} Gbps{}{}\n", r.method,
               r.constraints, r.n_associated, r.n_admissible,
               static_cast<double>(r.sum_rate_bps) / 1e9,
               r.violates_backhaul ? ", exceeds R" : "", r.violates_bandwidth ? ", exceeds B" : "");
  for (const auto& n : notes) fmt::print("note: {}\n", n);
  return 0;
}

int cmd_seed_search(const Options& o) {
  const auto cfg = load(o);
  const auto seed = nfp::seed_search(cfg, o.target, o.max_seeds, o.start);
  fmt::print("{}\n", seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NFP hub / small-cell association simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario file (defaults to the table1-urban preset)");
    sub->add_option("--seed", o.seed, "Override the scenario seed");
    sub->add_option("--solver", o.solver, "greedy | exact | both")
        ->check(CLI::IsMember({"greedy", "exact", "both"}));
    sub->add_option("--constraints", o.constraints, "all | qos-only")
        ->check(CLI::IsMember({"all", "qos-only"}));
  };

  auto* run = app.add_subcommand("run", "Generate a scenario and solve the association");
  add_common(run);
  run->add_option("--out", o.out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Solve under qos-only and all constraints");
  add_common(sweep);
  sweep->add_option("--out", o.out, "Output directory");

  auto* search = app.add_subcommand("seed-search", "Find a seed giving a target cell count");
  add_common(search);
  search->add_option("--target", o.target, "Number of cells wanted");
  search->add_option("--max-seeds", o.max_seeds, "Seeds to scan");
  search->add_option("--start", o.start, "First seed to try");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o);
    if (*search) return cmd_seed_search(o);
  } catch (const nfp::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nfp::infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const nfp::guard_error& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
