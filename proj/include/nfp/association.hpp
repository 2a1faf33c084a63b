#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfp/channel.hpp"
#include "nfp/config.hpp"
#include "nfp/deployment.hpp"
#include "nfp/errors.hpp"
#include "nfp/matrix.hpp"
#include "nfp/units.hpp"

namespace nfp {

/// Binary cell x hub matrix; a(i, j) = 1 when cell i is served by hub j.
using AssociationMatrix = Matrix<std::uint8_t>;

/// One instance of the association problem for fixed hub positions.
struct ProblemInstance {
  LinkTable links;
  std::vector<bps> rates;
  bps backhaul_cap_bps = 0;
  std::vector<double> hub_bandwidth_caps;
  std::vector<std::int64_t> hub_link_caps;
  double sinr_min_db = 0.0;
  ConstraintSet constraints = ConstraintSet::all();

  std::size_t n_cells() const { return rates.size(); }
  std::size_t n_hubs() const { return hub_link_caps.size(); }

  double sinr_db(std::size_t i, std::size_t j) const { return links.sinr_db(i, j); }
  double bandwidth_hz(std::size_t i, std::size_t j) const { return links.bandwidth_hz(i, j); }

  void validate() const {
    const std::size_t n = n_cells();
    const std::size_t m = n_hubs();
    if (hub_bandwidth_caps.size() != m)
      throw domain_error("instance: hub bandwidth and link cap vectors differ in length");
    if (!links.sinr_db.same_shape(n, m) || !links.bandwidth_hz.same_shape(n, m))
      throw domain_error("instance: link table is not n_cells x n_hubs");
    if (backhaul_cap_bps < 0) throw domain_error("instance: negative backhaul cap");
    for (double b : hub_bandwidth_caps)
      if (b < 0.0) throw domain_error("instance: negative hub bandwidth cap");
    for (auto l : hub_link_caps)
      if (l < 0) throw domain_error("instance: negative hub link cap");
    for (bps r : rates)
      if (r < 0) throw domain_error("instance: negative demanded rate");
  }

  AssociationMatrix empty_association() const { return AssociationMatrix(n_cells(), n_hubs(), 0); }
};

inline ProblemInstance make_instance(const LinkTable& links, const Layout& layout,
                                     const ScenarioConfig& cfg) {
  ProblemInstance inst;
  inst.links = links;
  inst.rates = layout.rates();
  inst.backhaul_cap_bps = cfg.backhaul_cap_bps;
  for (const auto& h : layout.hubs) {
    inst.hub_bandwidth_caps.push_back(h.bandwidth_cap_hz);
    inst.hub_link_caps.push_back(h.link_cap);
  }
  inst.sinr_min_db = cfg.radio.sinr_min_db;
  inst.constraints = cfg.constraints;
  return inst;
}

enum class ConstraintId { backhaul, bandwidth, sinr, links, single_assoc };

inline std::string_view to_string(ConstraintId c) {
  switch (c) {
    case ConstraintId::backhaul: return "backhaul";
    case ConstraintId::bandwidth: return "bandwidth";
    case ConstraintId::sinr: return "sinr";
    case ConstraintId::links: return "links";
    case ConstraintId::single_assoc: return "single-assoc";
  }
  return "?";
}

struct Violation {
  ConstraintId id;
  std::string detail;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<Violation> violated;

  bool violates(ConstraintId id) const {
    return std::any_of(violated.begin(), violated.end(),
                       [id](const Violation& v) { return v.id == id; });
  }
};

/// Per-solve metrics. Timing is the only nondeterministic field.
struct SolveReport {
  std::string method;
  bps sum_rate_bps = 0;
  std::int64_t n_associated = 0;
  std::vector<std::int64_t> per_hub_links;
  std::int64_t hubs_in_use = 0;
  bool feasible = false;
  bool optimal = false;
  double wall_time_s = 0.0;
  std::uint64_t op_count = 0;
  std::uint64_t node_count = 0;
  std::string rng_algorithm;
  std::uint64_t seed = 0;
};

inline void require_shape(const ProblemInstance& inst, const AssociationMatrix& a) {
  if (!a.same_shape(inst.n_cells(), inst.n_hubs()))
    throw domain_error("association matrix is not n_cells x n_hubs");
}

/// Sum of demanded rates over associated entries.
inline bps objective(const ProblemInstance& inst, const AssociationMatrix& a) {
  require_shape(inst, a);
  bps total = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j)) total += inst.rates[i];
  return total;
}

/// Evaluates the constraints active in `inst.constraints`. The SINR constraint is vacuous
/// on zero entries.
inline FeasibilityReport check_feasible(const ProblemInstance& inst, const AssociationMatrix& a) {
  require_shape(inst, a);
  const auto& on = inst.constraints;
  FeasibilityReport rep;
  auto fail = [&](ConstraintId id, std::string detail) {
    rep.violated.push_back({id, std::move(detail)});
  };

  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) > 1) fail(ConstraintId::single_assoc, "non-binary entry");
    }
  }

  if (on.backhaul) {
    const bps total = objective(inst, a);
    if (total > inst.backhaul_cap_bps)
      fail(ConstraintId::backhaul, "total rate " + std::to_string(total) + " > " +
                                       std::to_string(inst.backhaul_cap_bps));
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double bw = 0.0;
    std::int64_t count = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (!a(i, j)) continue;
      bw += inst.bandwidth_hz(i, j);
      ++count;
      if (on.sinr && !(inst.sinr_db(i, j) >= inst.sinr_min_db))
        fail(ConstraintId::sinr, "cell " + std::to_string(i) + " hub " + std::to_string(j));
    }
    if (on.bandwidth && bw > inst.hub_bandwidth_caps[j])
      fail(ConstraintId::bandwidth, "hub " + std::to_string(j));
    if (on.links && count > inst.hub_link_caps[j])
      fail(ConstraintId::links, "hub " + std::to_string(j) + " has " + std::to_string(count));
  }
  if (on.single_assoc) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      int row = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) ? 1 : 0;
      if (row > 1) fail(ConstraintId::single_assoc, "cell " + std::to_string(i));
    }
  }
  rep.ok = rep.violated.empty();
  return rep;
}

/// Hub serving cell `i`, if any (first nonzero column).
inline std::optional<std::size_t> hub_of(const AssociationMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a(i, j)) return j;
  return std::nullopt;
}

inline std::vector<std::int64_t> links_per_hub(const AssociationMatrix& a) {
  std::vector<std::int64_t> out(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j)) ++out[j];
  return out;
}

/// Fills the solution-derived fields of a report.
inline void summarize(const ProblemInstance& inst, const AssociationMatrix& a, SolveReport& rep) {
  rep.sum_rate_bps = objective(inst, a);
  rep.per_hub_links = links_per_hub(a);
  rep.hubs_in_use = std::count_if(rep.per_hub_links.begin(), rep.per_hub_links.end(),
                                  [](std::int64_t c) { return c > 0; });
  rep.n_associated = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (hub_of(a, i)) ++rep.n_associated;
  rep.feasible = check_feasible(inst, a).ok;
}

// ---------------------------------------------------------------------------------------
// Distributed maximal-demand minimum-servers greedy
// ---------------------------------------------------------------------------------------

/// Elementary comparison/update counter shared by the greedy steps.
struct OpCounter {
  std::uint64_t n = 0;
  void add(std::uint64_t k = 1) { n += k; }
};

/// Step 1: every cell requests its maximum-SINR hub, provided that SINR clears the minimum.
/// Ties go to the lowest hub index.
inline AssociationMatrix greedy_step1(const ProblemInstance& inst, OpCounter& ops) {
  auto cand = inst.empty_association();
  for (std::size_t i = 0; i < inst.n_cells(); ++i) {
    if (inst.n_hubs() == 0) break;
    std::size_t best = 0;
    for (std::size_t j = 1; j < inst.n_hubs(); ++j) {
      ops.add();
      if (inst.sinr_db(i, j) > inst.sinr_db(i, best)) best = j;
    }
    if (!inst.constraints.sinr || inst.sinr_db(i, best) >= inst.sinr_min_db) cand(i, best) = 1;
  }
  return cand;
}

inline AssociationMatrix greedy_step1(const ProblemInstance& inst) {
  OpCounter ops;
  return greedy_step1(inst, ops);
}

/// Step 2 for a single hub: accepted cells out of `requests`, highest rate first (rate ties
/// by smaller bandwidth, then lower index), within the hub's link and bandwidth caps.
/// Touches no shared state, so hubs can be packed in any order or in parallel.
inline std::vector<std::size_t> pack_hub(const ProblemInstance& inst, std::size_t hub,
                                         std::vector<std::size_t> requests, OpCounter& ops) {
  std::sort(requests.begin(), requests.end(), [&](std::size_t a, std::size_t b) {
    ops.add();
    if (inst.rates[a] != inst.rates[b]) return inst.rates[a] > inst.rates[b];
    const double ba = inst.bandwidth_hz(a, hub);
    const double bb = inst.bandwidth_hz(b, hub);
    if (ba != bb) return ba < bb;
    return a < b;
  });

  const bool cap_links = inst.constraints.links;
  const bool cap_bw = inst.constraints.bandwidth;
  std::vector<std::size_t> accepted;
  double used_bw = 0.0;
  for (std::size_t cell : requests) {
    ops.add();
    if (cap_links && static_cast<std::int64_t>(accepted.size()) >= inst.hub_link_caps[hub]) break;
    const double b = inst.bandwidth_hz(cell, hub);
    if (cap_bw && used_bw + b > inst.hub_bandwidth_caps[hub]) continue;  // request discarded
    accepted.push_back(cell);
    used_bw += b;
    assert(!cap_bw || used_bw <= inst.hub_bandwidth_caps[hub]);
    assert(!cap_links || static_cast<std::int64_t>(accepted.size()) <= inst.hub_link_caps[hub]);
  }
  return accepted;
}

/// Step 2: every hub packs its own request list.
inline AssociationMatrix greedy_step2(const ProblemInstance& inst,
                                      const AssociationMatrix& candidates, OpCounter& ops) {
  require_shape(inst, candidates);
  auto out = inst.empty_association();
  for (std::size_t j = 0; j < inst.n_hubs(); ++j) {
    std::vector<std::size_t> requests;
    for (std::size_t i = 0; i < inst.n_cells(); ++i)
      if (candidates(i, j)) requests.push_back(i);
    ops.add(inst.n_cells());
    for (std::size_t i : pack_hub(inst, j, std::move(requests), ops)) out(i, j) = 1;
  }
  return out;
}

inline AssociationMatrix greedy_step2(const ProblemInstance& inst,
                                      const AssociationMatrix& candidates) {
  OpCounter ops;
  return greedy_step2(inst, candidates, ops);
}

struct TrimResult {
  AssociationMatrix assoc;
  std::int64_t hubs_in_use = 0;
};

/// Step 3: enforce the backhaul cap. While the total exceeds R, the hub with the fewest
/// links loses a cell: the smallest-rate cell that alone brings the total within R if the
/// hub has one, else its smallest-rate cell.
inline TrimResult greedy_step3(const ProblemInstance& inst, AssociationMatrix assoc,
                               OpCounter& ops) {
  require_shape(inst, assoc);
  const std::size_t m = inst.n_hubs();
  std::vector<std::vector<std::size_t>> members(m);
  bps total = 0;
  for (std::size_t i = 0; i < inst.n_cells(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (assoc(i, j)) {
        members[j].push_back(i);
        total += inst.rates[i];
      }
  ops.add(inst.n_cells());

  // Ascending rate, then cell index.
  for (auto& list : members)
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      ops.add();
      return inst.rates[a] != inst.rates[b] ? inst.rates[a] < inst.rates[b] : a < b;
    });

  while (inst.constraints.backhaul && total > inst.backhaul_cap_bps) {
    std::optional<std::size_t> hub;
    for (std::size_t j = 0; j < m; ++j) {
      ops.add();
      if (members[j].empty()) continue;
      if (!hub || members[j].size() < members[*hub].size()) hub = j;
    }
    assert(hub);
    auto& list = members[*hub];
    const bps excess = total - inst.backhaul_cap_bps;
    auto victim = list.begin();
    for (auto it = list.begin(); it != list.end(); ++it) {
      ops.add();
      if (inst.rates[*it] >= excess) {
        victim = it;
        break;
      }
    }
    assoc(*victim, *hub) = 0;
    total -= inst.rates[*victim];
    list.erase(victim);
  }

  TrimResult res{std::move(assoc), 0};
  for (const auto& list : members)
    if (!list.empty()) ++res.hubs_in_use;
  return res;
}

inline TrimResult greedy_step3(const ProblemInstance& inst, AssociationMatrix assoc) {
  OpCounter ops;
  return greedy_step3(inst, std::move(assoc), ops);
}

struct Solution {
  AssociationMatrix assoc;
  SolveReport report;
};

inline Solution solve_greedy(const ProblemInstance& inst) {
  inst.validate();
  const auto start = std::chrono::steady_clock::now();
  OpCounter ops;
  auto candidates = greedy_step1(inst, ops);
  auto packed = greedy_step2(inst, candidates, ops);
  auto trimmed = greedy_step3(inst, std::move(packed), ops);
  const auto stop = std::chrono::steady_clock::now();

  Solution sol{std::move(trimmed.assoc), {}};
  sol.report.method = "greedy";
  summarize(inst, sol.assoc, sol.report);
  sol.report.hubs_in_use = trimmed.hubs_in_use;
  sol.report.op_count = ops.n;
  sol.report.wall_time_s = std::chrono::duration<double>(stop - start).count();
  return sol;
}

}  // namespace nfp
