#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nfp/channel.hpp"
#include "nfp/errors.hpp"
#include "nfp/units.hpp"

namespace nfp {

/// Which of the five problem constraints a solver honours.
struct ConstraintSet {
  bool backhaul = true;
  bool bandwidth = true;
  bool sinr = true;
  bool links = true;
  bool single_assoc = true;

  static constexpr ConstraintSet all() { return {}; }
  /// SINR admission, link caps and single association only; no backhaul or bandwidth caps.
  static constexpr ConstraintSet qos_only() { return {false, false, true, true, true}; }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

inline std::string_view to_string(const ConstraintSet& c) {
  if (c == ConstraintSet::all()) return "all";
  if (c == ConstraintSet::qos_only()) return "qos-only";
  return "custom";
}

enum class SolverChoice { greedy, exact, both };

inline std::string_view to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::greedy: return "greedy";
    case SolverChoice::exact: return "exact";
    case SolverChoice::both: return "both";
  }
  return "both";
}

/// Every environment, radio and constraint parameter of one scenario. Defaults are the
/// urban case study ("table1-urban" preset).
struct ScenarioConfig {
  // Environment and point processes.
  double area_side_m = 4000.0;
  double lambda_per_m2 = 2e-6;
  double s_bs_min_m = 300.0;
  double h_max_m = 300.0;

  ChannelParams channel = ChannelParams::urban();
  RadioParams radio{};

  // Constraints.
  bps backhaul_cap_bps = 2'000 * kMbps;
  double hub_bandwidth_hz = 250e6;
  std::int64_t hub_link_cap = 7;
  std::vector<bps> rate_menu_bps{30 * kMbps, 60 * kMbps, 90 * kMbps, 120 * kMbps, 150 * kMbps};
  double eta_avg_estimate = 5.0;

  // Run control.
  std::uint64_t seed = 0;
  SolverChoice solver = SolverChoice::both;
  ConstraintSet constraints = ConstraintSet::all();
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t placement_retries = 256;
  std::uint64_t exact_max_cells = 40;

  void validate() const {
    if (!(area_side_m > 0.0)) throw config_error("area_side_m must be positive");
    if (!(lambda_per_m2 >= 0.0)) throw config_error("lambda_per_m2 must be non-negative");
    if (!(s_bs_min_m > 0.0) || !(s_bs_min_m < area_side_m))
      throw config_error("s_bs_min_m must lie in (0, area_side_m)");
    if (!(h_max_m > 0.0)) throw config_error("h_max_m must be positive");
    channel.validate();
    radio.validate();
    if (backhaul_cap_bps < 0) throw config_error("backhaul_cap_bps must be non-negative");
    if (!(hub_bandwidth_hz > 0.0)) throw config_error("hub_bandwidth_hz must be positive");
    if (hub_link_cap < 1) throw config_error("hub_link_cap must be at least 1");
    if (rate_menu_bps.empty()) throw config_error("rate_menu_bps must not be empty");
    for (bps r : rate_menu_bps)
      if (r <= 0) throw config_error("rate_menu_bps entries must be positive");
    if (!(eta_avg_estimate > 0.0)) throw config_error("eta_avg_estimate must be positive");
    if (node_budget == 0) throw config_error("node_budget must be positive");
  }
};

}  // namespace nfp
