#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nfp/channel.hpp"
#include "nfp/config.hpp"
#include "nfp/errors.hpp"
#include "nfp/geometry.hpp"
#include "nfp/rng.hpp"
#include "nfp/units.hpp"

namespace nfp {

// Seed streams derived from the scenario seed. Cell positions use the seed itself so a
// seed found by seed_search reproduces the same cell layout in a full run.
inline constexpr std::uint64_t kRateStream = 1;
inline constexpr std::uint64_t kHubStream = 2;

struct Cell {
  Point2 pos;
  bps rate = 0;
};

struct Hub {
  Point3 pos;
  double bandwidth_cap_hz = 0.0;
  std::int64_t link_cap = 0;
};

struct Layout {
  std::vector<Cell> cells;
  std::vector<Hub> hubs;

  std::vector<Point2> cell_positions() const {
    std::vector<Point2> out;
    for (const auto& c : cells) out.push_back(c.pos);
    return out;
  }
  std::vector<Point3> hub_positions() const {
    std::vector<Point3> out;
    for (const auto& h : hubs) out.push_back(h.pos);
    return out;
  }
  std::vector<bps> rates() const {
    std::vector<bps> out;
    for (const auto& c : cells) out.push_back(c.rate);
    return out;
  }
};

struct FleetPlan {
  std::int64_t n_hubs = 0;
  std::int64_t per_hub_cell_cap = 0;
  double avg_bandwidth_hz = 0.0;
  double avg_spec_eff = 0.0;
  double hub_altitude_m = 0.0;
  double hub_min_sep_m = 0.0;
};

/// How many average cells one hub's bandwidth can carry: floor(B / b_avg) with
/// b_avg = mean(rates) / avg_spec_eff.
inline std::int64_t cells_per_hub(double bandwidth_cap_hz, std::span<const bps> rates,
                                  double avg_spec_eff) {
  if (!(avg_spec_eff > 0.0)) throw domain_error("cells_per_hub: avg_spec_eff must be positive");
  if (rates.empty()) throw domain_error("cells_per_hub: no rates");
  long double sum = 0;
  for (bps r : rates) sum += static_cast<long double>(r);
  if (sum <= 0) throw domain_error("cells_per_hub: all demanded rates are zero");
  const double b_avg = static_cast<double>(sum / rates.size()) / avg_spec_eff;
  return static_cast<std::int64_t>(std::floor(bandwidth_cap_hz / b_avg));
}

inline double average_bandwidth_hz(std::span<const bps> rates, double avg_spec_eff) {
  long double sum = 0;
  for (bps r : rates) sum += static_cast<long double>(r);
  return static_cast<double>(sum / rates.size()) / avg_spec_eff;
}

/// ceil(n_cells / min(link_cap, cells_per_hub)).
inline std::int64_t fleet_size(std::int64_t n_cells, std::int64_t link_cap,
                               std::int64_t per_hub_cells) {
  const std::int64_t per_hub = std::min(link_cap, per_hub_cells);
  if (per_hub < 1)
    throw infeasible_error("fleet_size: a hub cannot carry a single cell (min(N_l, N_BS^D) = " +
                           std::to_string(per_hub) + ")");
  return (n_cells + per_hub - 1) / per_hub;
}

/// Rates drawn uniformly from the menu, one per cell, in cell order.
inline std::vector<bps> draw_rates(std::span<const bps> menu, std::size_t n_cells,
                                   std::uint64_t seed) {
  Rng rng(derive_seed(seed, kRateStream));
  std::vector<bps> rates(n_cells);
  for (auto& r : rates) r = menu[rng.below(menu.size())];
  return rates;
}

/// Places `n_hubs` hubs at altitude h_max: the first n_hubs points, in generation order,
/// of a hard-core draw with separation `min_sep`. Short draws are repeated with derived
/// sub-seeds up to `cfg.placement_retries` extra attempts.
inline std::vector<Point3> place_fleet(const ScenarioConfig& cfg, std::int64_t n_hubs,
                                       double min_sep, std::uint64_t seed) {
  if (n_hubs <= 0) return {};
  const HardCoreSpec spec{cfg.area_side_m, cfg.lambda_per_m2, min_sep};
  for (std::uint64_t attempt = 0; attempt <= cfg.placement_retries; ++attempt) {
    const auto candidates = matern_type1(spec, derive_seed(seed, kHubStream, attempt));
    if (static_cast<std::int64_t>(candidates.size()) < n_hubs) continue;
    std::vector<Point3> hubs;
    for (std::int64_t j = 0; j < n_hubs; ++j)
      hubs.push_back({candidates[j].x, candidates[j].y, cfg.h_max_m});
    return hubs;
  }
  throw placement_error("place_fleet: no hard-core draw produced " + std::to_string(n_hubs) +
                        " hubs at separation " + std::to_string(min_sep) + " m after " +
                        std::to_string(cfg.placement_retries + 1) + " attempts");
}

inline FleetPlan plan_fleet(const ScenarioConfig& cfg, std::span<const bps> rates) {
  FleetPlan plan;
  plan.hub_altitude_m = cfg.h_max_m;
  plan.avg_spec_eff = cfg.eta_avg_estimate;
  plan.hub_min_sep_m = coverage_radius(cfg.channel, cfg.h_max_m, cfg.radio.pl_max_db);
  if (rates.empty()) return plan;
  plan.avg_bandwidth_hz = average_bandwidth_hz(rates, cfg.eta_avg_estimate);
  plan.per_hub_cell_cap = cells_per_hub(cfg.hub_bandwidth_hz, rates, cfg.eta_avg_estimate);
  plan.n_hubs = fleet_size(static_cast<std::int64_t>(rates.size()), cfg.hub_link_cap,
                           plan.per_hub_cell_cap);
  return plan;
}

struct Deployment {
  Layout layout;
  FleetPlan plan;
};

/// The initialization procedure: cells by hard-core process, rates from the menu, fleet
/// sized from demand, hubs by a second hard-core process at h_max.
inline Deployment deploy(const ScenarioConfig& cfg) {
  cfg.validate();
  Deployment d;
  const auto positions =
      matern_type1(HardCoreSpec{cfg.area_side_m, cfg.lambda_per_m2, cfg.s_bs_min_m}, cfg.seed);
  const auto rates = draw_rates(cfg.rate_menu_bps, positions.size(), cfg.seed);
  for (std::size_t i = 0; i < positions.size(); ++i)
    d.layout.cells.push_back({positions[i], rates[i]});

  d.plan = plan_fleet(cfg, rates);
  for (const auto& p : place_fleet(cfg, d.plan.n_hubs, d.plan.hub_min_sep_m, cfg.seed))
    d.layout.hubs.push_back({p, cfg.hub_bandwidth_hz, cfg.hub_link_cap});
  return d;
}

}  // namespace nfp
