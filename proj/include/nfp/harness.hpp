#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "nfp/association.hpp"
#include "nfp/channel.hpp"
#include "nfp/config.hpp"
#include "nfp/deployment.hpp"
#include "nfp/errors.hpp"
#include "nfp/exact.hpp"
#include "nfp/geometry.hpp"
#include "nfp/rng.hpp"

namespace nfp {

struct RunResult {
  ScenarioConfig cfg;
  Deployment deployment;
  ProblemInstance instance;
  std::vector<Solution> solutions;
  std::vector<std::string> notes;
  double realized_mean_spec_eff = 0.0;  // over each cell's max-SINR hub
};

inline ProblemInstance build_instance(const ScenarioConfig& cfg, const Layout& layout) {
  const auto cells = layout.cell_positions();
  const auto rates = layout.rates();
  const auto hubs = layout.hub_positions();
  return make_instance(build_link_table(cfg.channel, cfg.radio, cells, rates, hubs), layout, cfg);
}

/// Cells whose best SINR clears the admission threshold.
inline std::int64_t count_admissible(const ProblemInstance& inst) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < inst.n_cells(); ++i)
    for (std::size_t j = 0; j < inst.n_hubs(); ++j)
      if (inst.sinr_db(i, j) >= inst.sinr_min_db) {
        ++n;
        break;
      }
  return n;
}

namespace detail {

inline void stamp(const ScenarioConfig& cfg, SolveReport& rep) {
  rep.rng_algorithm = std::string(kRngAlgorithmId);
  rep.seed = cfg.seed;
}

inline void verify_or_throw(const ProblemInstance& inst, const Solution& sol) {
  const auto rep = check_feasible(inst, sol.assoc);
  if (!rep.ok)
    throw error(sol.report.method + " returned an association violating " +
                std::string(to_string(rep.violated.front().id)));
}

inline bool exact_allowed(const ScenarioConfig& cfg, const ProblemInstance& inst,
                          bool explicitly_requested, std::vector<std::string>& notes) {
  if (inst.n_cells() <= cfg.exact_max_cells) return true;
  const auto msg = fmt::format("exact solver skipped: {} cells exceed exact_max_cells = {}",
                               inst.n_cells(), cfg.exact_max_cells);
  if (explicitly_requested) throw guard_error(msg);
  notes.push_back(msg);
  return false;
}

}  // namespace detail

/// Generate, evaluate the channel, size and place the fleet, then solve with the selected
/// methods. Every returned association has been re-checked against the instance.
inline RunResult run_scenario(const ScenarioConfig& cfg) {
  RunResult res;
  res.cfg = cfg;
  res.deployment = deploy(cfg);
  res.instance = build_instance(cfg, res.deployment.layout);

  const auto& inst = res.instance;
  if (inst.n_cells() > 0 && inst.n_hubs() > 0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.n_cells(); ++i) {
      double best = inst.links.spec_eff(i, 0);
      for (std::size_t j = 1; j < inst.n_hubs(); ++j) best = std::max(best, inst.links.spec_eff(i, j));
      sum += best;
    }
    res.realized_mean_spec_eff = sum / static_cast<double>(inst.n_cells());
  }

  if (cfg.solver != SolverChoice::exact) res.solutions.push_back(solve_greedy(inst));
  if (cfg.solver != SolverChoice::greedy &&
      detail::exact_allowed(cfg, inst, cfg.solver == SolverChoice::exact, res.notes))
    res.solutions.push_back(solve_exact(inst, cfg.node_budget));

  for (auto& sol : res.solutions) {
    detail::verify_or_throw(inst, sol);
    detail::stamp(cfg, sol.report);
  }
  return res;
}

struct SweepRow {
  std::string method;
  std::string constraints;
  std::int64_t n_associated = 0;
  std::int64_t n_admissible = 0;
  bps sum_rate_bps = 0;
  bool violates_backhaul = false;
  bool violates_bandwidth = false;
  std::vector<std::int64_t> per_hub_links;
};

/// Re-solves one instance with only the QoS constraints (SINR, links, single association)
/// and with all constraints, for each selected method. Violations are judged against the
/// full constraint set.
inline std::vector<SweepRow> sweep_constraints(const ScenarioConfig& cfg,
                                               std::vector<std::string>* notes = nullptr) {
  const auto dep = deploy(cfg);
  ProblemInstance inst = build_instance(cfg, dep.layout);
  ProblemInstance full = inst;
  full.constraints = ConstraintSet::all();
  const auto admissible = count_admissible(inst);

  std::vector<std::string> local_notes;
  const bool run_exact =
      cfg.solver != SolverChoice::greedy &&
      detail::exact_allowed(cfg, inst, cfg.solver == SolverChoice::exact, local_notes);

  std::vector<SweepRow> rows;
  for (const auto set : {ConstraintSet::qos_only(), ConstraintSet::all()}) {
    inst.constraints = set;
    std::vector<Solution> sols;
    if (cfg.solver != SolverChoice::exact) sols.push_back(solve_greedy(inst));
    if (run_exact) sols.push_back(solve_exact(inst, cfg.node_budget));
    for (const auto& sol : sols) {
      detail::verify_or_throw(inst, sol);
      const auto judged = check_feasible(full, sol.assoc);
      rows.push_back({sol.report.method, std::string(to_string(set)), sol.report.n_associated,
                      admissible, sol.report.sum_rate_bps,
                      judged.violates(ConstraintId::backhaul),
                      judged.violates(ConstraintId::bandwidth), sol.report.per_hub_links});
    }
  }
  if (notes) notes->insert(notes->end(), local_notes.begin(), local_notes.end());
  return rows;
}

/// First seed in [start, start + max_seeds) whose cell process yields exactly
/// `target_cells` points.
inline std::uint64_t seed_search(const ScenarioConfig& cfg, std::size_t target_cells,
                                 std::uint64_t max_seeds, std::uint64_t start = 0) {
  const HardCoreSpec spec{cfg.area_side_m, cfg.lambda_per_m2, cfg.s_bs_min_m};
  for (std::uint64_t k = 0; k < max_seeds; ++k) {
    if (matern_type1(spec, start + k).size() == target_cells) return start + k;
  }
  throw infeasible_error(fmt::format("seed_search: no seed in [{}, {}) gives {} cells", start,
                                     start + max_seeds, target_cells));
}

// ---------------------------------------------------------------------------------------
// Output files
// ---------------------------------------------------------------------------------------

namespace detail {

inline std::string join(const std::vector<std::int64_t>& v, char sep = ';') {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += std::to_string(v[k]);
  }
  return s;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw error("cannot write " + p.string());
  return out;
}

inline nlohmann::ordered_json config_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["area_side_m"] = c.area_side_m;
  j["lambda_per_m2"] = c.lambda_per_m2;
  j["s_bs_min_m"] = c.s_bs_min_m;
  j["h_max_m"] = c.h_max_m;
  j["pl_max_db"] = c.radio.pl_max_db;
  j["alpha"] = c.channel.alpha;
  j["beta"] = c.channel.beta;
  j["eta_los_db"] = c.channel.eta_los_db;
  j["eta_nlos_db"] = c.channel.eta_nlos_db;
  j["carrier_hz"] = c.channel.carrier_hz;
  j["pl_exponent"] = c.channel.pl_exponent;
  j["light_speed"] = c.channel.light_speed;
  j["tx_power_w"] = c.radio.tx_power_w;
  j["noise_w"] = c.radio.noise_w;
  j["sinr_min_db"] = c.radio.sinr_min_db;
  j["backhaul_cap_bps"] = c.backhaul_cap_bps;
  j["hub_bandwidth_hz"] = c.hub_bandwidth_hz;
  j["hub_link_cap"] = c.hub_link_cap;
  j["rate_menu_bps"] = c.rate_menu_bps;
  j["eta_avg_estimate"] = c.eta_avg_estimate;
  j["seed"] = c.seed;
  j["solver"] = std::string(to_string(c.solver));
  j["constraints"] = std::string(to_string(c.constraints));
  j["node_budget"] = c.node_budget;
  j["placement_retries"] = c.placement_retries;
  j["exact_max_cells"] = c.exact_max_cells;
  return j;
}

}  // namespace detail

inline constexpr std::string_view kReportHeader =
    "method,constraints,sum_rate_bps,n_associated,per_hub_links,hubs_in_use,feasible,optimal,"
    "op_count,node_count,rng_algorithm,seed\n";

/// Writes layout.csv, links.csv, assoc_<m>.csv, report_<m>.csv, hub_links.csv and
/// summary.json, all byte-deterministic for a given config, plus timing.json which holds
/// the wall-clock measurements.
inline void write_run(const RunResult& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& layout = run.deployment.layout;
  const auto& inst = run.instance;

  {
    auto out = detail::open_out(dir / "layout.csv");
    out << "kind,id,x,y,h,rate_bps,bandwidth_cap_hz,link_cap\n";
    for (std::size_t i = 0; i < layout.cells.size(); ++i) {
      const auto& c = layout.cells[i];
      out << fmt::format("cell,{},{},{},,{},,\n", i, c.pos.x, c.pos.y, c.rate);
    }
    for (std::size_t j = 0; j < layout.hubs.size(); ++j) {
      const auto& h = layout.hubs[j];
      out << fmt::format("hub,{},{},{},{},,{},{}\n", j, h.pos.x, h.pos.y, h.pos.h,
                         h.bandwidth_cap_hz, h.link_cap);
    }
  }
  {
    auto out = detail::open_out(dir / "links.csv");
    out << "cell,hub,pl_db,sinr_db,spec_eff,bw_hz\n";
    for (std::size_t i = 0; i < inst.n_cells(); ++i)
      for (std::size_t j = 0; j < inst.n_hubs(); ++j)
        out << fmt::format("{},{},{},{},{},{}\n", i, j, inst.links.pl_db(i, j),
                           inst.links.sinr_db(i, j), inst.links.spec_eff(i, j),
                           inst.links.bandwidth_hz(i, j));
  }

  auto hub_links = detail::open_out(dir / "hub_links.csv");
  hub_links << "method,hub,n_links\n";
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  nlohmann::ordered_json timing;
  for (const auto& sol : run.solutions) {
    const auto& r = sol.report;
    {
      auto out = detail::open_out(dir / ("assoc_" + r.method + ".csv"));
      out << "cell,hub\n";
      for (std::size_t i = 0; i < sol.assoc.rows(); ++i)
        if (const auto j = hub_of(sol.assoc, i)) out << fmt::format("{},{}\n", i, *j);
    }
    {
      auto out = detail::open_out(dir / ("report_" + r.method + ".csv"));
      out << kReportHeader;
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.method,
                         to_string(inst.constraints), r.sum_rate_bps, r.n_associated,
                         detail::join(r.per_hub_links), r.hubs_in_use, r.feasible, r.optimal,
                         r.op_count, r.node_count, r.rng_algorithm, r.seed);
    }
    for (std::size_t j = 0; j < r.per_hub_links.size(); ++j)
      hub_links << fmt::format("{},{},{}\n", r.method, j, r.per_hub_links[j]);

    nlohmann::ordered_json m;
    m["method"] = r.method;
    m["sum_rate_bps"] = r.sum_rate_bps;
    m["n_associated"] = r.n_associated;
    m["hubs_in_use"] = r.hubs_in_use;
    m["per_hub_links"] = r.per_hub_links;
    m["feasible"] = r.feasible;
    m["optimal"] = r.optimal;
    m["op_count"] = r.op_count;
    m["node_count"] = r.node_count;
    methods.push_back(m);
    timing[r.method + "_wall_time_s"] = r.wall_time_s;
  }

  nlohmann::ordered_json summary;
  summary["rng_algorithm"] = std::string(kRngAlgorithmId);
  summary["seed"] = run.cfg.seed;
  summary["config"] = detail::config_json(run.cfg);
  const auto& plan = run.deployment.plan;
  summary["fleet"] = {{"n_hubs", plan.n_hubs},
                      {"per_hub_cell_cap", plan.per_hub_cell_cap},
                      {"avg_bandwidth_hz", plan.avg_bandwidth_hz},
                      {"avg_spec_eff_estimate", plan.avg_spec_eff},
                      {"hub_altitude_m", plan.hub_altitude_m},
                      {"hub_min_sep_m", plan.hub_min_sep_m}};
  summary["n_cells"] = inst.n_cells();
  summary["n_hubs"] = inst.n_hubs();
  summary["n_admissible"] = count_admissible(inst);
  summary["realized_mean_spec_eff"] = run.realized_mean_spec_eff;
  summary["methods"] = methods;
  summary["notes"] = run.notes;
  detail::open_out(dir / "summary.json") << summary.dump(2) << '\n';
  detail::open_out(dir / "timing.json") << timing.dump(2) << '\n';
}

inline void write_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto out = detail::open_out(dir / "sweep.csv");
  out << "method,constraints,n_associated,n_admissible,sum_rate_bps,violates_backhaul,"
         "violates_bandwidth,per_hub_links\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.method, r.constraints, r.n_associated,
                       r.n_admissible, r.sum_rate_bps, r.violates_backhaul, r.violates_bandwidth,
                       detail::join(r.per_hub_links));
}

}  // namespace nfp
