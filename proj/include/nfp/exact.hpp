#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nfp/association.hpp"
#include "nfp/errors.hpp"

namespace nfp {

/// Raised when the branch-and-bound search hits its node budget. Carries the best
/// feasible matrix found so far, which is not known to be optimal.
class budget_exceeded : public guard_error {
 public:
  budget_exceeded(std::string what, Solution incumbent)
      : guard_error(std::move(what)), incumbent_(std::move(incumbent)) {}
  const Solution& incumbent() const noexcept { return incumbent_; }

 private:
  Solution incumbent_;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Optimistic completion used for pruning.
enum class BoundRule {
  /// Running rate plus every remaining cell's rate, capped by the remaining backhaul budget.
  rate_budget,
  /// Additionally skips cells with no admissible hub, keeps only as many of the remaining
  /// cells as there is link room left, and rounds the backhaul budget down to the gcd of
  /// the rates.
  tightened,
};

namespace detail {

/// Depth-first branch and bound over cells taken in descending rate order. Children of a
/// node, in canonical order: cell left unassigned, then each admissible hub by index.
class BranchAndBound {
 public:
  BranchAndBound(const ProblemInstance& inst, std::uint64_t node_budget, BoundRule rule)
      : inst_(inst), budget_(node_budget), rule_(rule) {
    const std::size_t n = inst.n_cells();
    const std::size_t m = inst.n_hubs();
    const auto& on = inst.constraints;

    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return inst.rates[a] > inst.rates[b]; });

    options_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t i = order_[p];
      if (on.backhaul && inst.rates[i] > inst.backhaul_cap_bps) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (on.sinr && !(inst.sinr_db(i, j) >= inst.sinr_min_db)) continue;
        if (on.bandwidth && inst.bandwidth_hz(i, j) > inst.hub_bandwidth_caps[j]) continue;
        if (on.links && inst.hub_link_caps[j] < 1) continue;
        options_[p].push_back(j);
      }
    }

    // Prefix sums over cells that have at least one admissible hub. Because positions are
    // in descending rate, the k best remaining cells are the next k admissible ones.
    prefix_rate_.assign(n + 1, 0);
    prefix_count_.assign(n + 1, 0);
    for (std::size_t p = 0; p < n; ++p) {
      const bool admissible = !options_[p].empty();
      prefix_rate_[p + 1] = prefix_rate_[p] + (admissible ? inst.rates[order_[p]] : 0);
      prefix_count_[p + 1] = prefix_count_[p] + (admissible ? 1 : 0);
      if (admissible && inst.rates[order_[p]] > 0)
        granularity_ = std::gcd(granularity_, inst.rates[order_[p]]);
    }
    if (granularity_ == 0) granularity_ = 1;
    suffix_rate_.assign(n + 1, 0);
    for (std::size_t p = n; p-- > 0;) suffix_rate_[p] = suffix_rate_[p + 1] + inst.rates[order_[p]];

    link_room_ = 0;
    for (auto l : inst.hub_link_caps) link_room_ += l;
    links_.assign(m, 0);
    bandwidth_.assign(m, 0.0);
    current_.assign(n, kNone);
    best_.assign(n, kNone);
  }

  void run() {
    const auto t0 = std::chrono::steady_clock::now();
    visit(0, 0);
    elapsed_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  Solution solution(bool optimal) const {
    Solution sol{inst_.empty_association(), {}};
    for (std::size_t p = 0; p < best_.size(); ++p)
      if (best_[p] != kNone) sol.assoc(order_[p], best_[p]) = 1;
    sol.report.method = "exact";
    summarize(inst_, sol.assoc, sol.report);
    sol.report.optimal = optimal;
    sol.report.op_count = expanded_;
    sol.report.node_count = terminal_;
    sol.report.wall_time_s = elapsed_;
    return sol;
  }

  struct BudgetHit {};

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bps bound(std::size_t pos, bps running) const {
    const std::size_t n = order_.size();
    if (rule_ == BoundRule::rate_budget) {
      bps extra = suffix_rate_[pos];
      if (inst_.constraints.backhaul) extra = std::min(extra, inst_.backhaul_cap_bps - running);
      return running + extra;
    }
    bps extra = prefix_rate_[n] - prefix_rate_[pos];
    if (inst_.constraints.links) {
      const std::int64_t k = link_room_;
      const std::int64_t avail = prefix_count_[n] - prefix_count_[pos];
      if (k < avail) {
        // First position q with count(pos..q) == k.
        const auto target = prefix_count_[pos] + k;
        const auto it = std::lower_bound(prefix_count_.begin() + pos, prefix_count_.end(), target);
        extra = prefix_rate_[it - prefix_count_.begin()] - prefix_rate_[pos];
      }
    }
    if (inst_.constraints.backhaul) {
      const bps room = inst_.backhaul_cap_bps - running;
      extra = std::min(extra, room / granularity_ * granularity_);
    }
    return running + extra;
  }

  void visit(std::size_t pos, bps running) {
    if (++expanded_ > budget_) throw BudgetHit{};
    if (pos == order_.size()) {
      ++terminal_;
      if (running > best_value_) {
        best_value_ = running;
        best_ = current_;
      }
      return;
    }
    if (bound(pos, running) <= best_value_) {
      ++terminal_;
      return;
    }

    visit(pos + 1, running);

    const auto& on = inst_.constraints;
    const std::size_t i = order_[pos];
    const bps r = inst_.rates[i];
    for (std::size_t j : options_[pos]) {
      if (on.links && links_[j] >= inst_.hub_link_caps[j]) continue;
      const double b = inst_.bandwidth_hz(i, j);
      if (on.bandwidth && bandwidth_[j] + b > inst_.hub_bandwidth_caps[j]) continue;
      if (on.backhaul && running + r > inst_.backhaul_cap_bps) continue;

      const double saved_bw = bandwidth_[j];
      ++links_[j];
      --link_room_;
      bandwidth_[j] += b;
      current_[pos] = j;
      visit(pos + 1, running + r);
      current_[pos] = kNone;
      bandwidth_[j] = saved_bw;
      ++link_room_;
      --links_[j];
    }
  }

  const ProblemInstance& inst_;
  std::uint64_t budget_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> options_;
  BoundRule rule_;
  std::vector<bps> suffix_rate_;
  std::vector<bps> prefix_rate_;
  std::vector<std::int64_t> prefix_count_;
  bps granularity_ = 0;
  std::int64_t link_room_ = 0;
  std::vector<std::int64_t> links_;
  std::vector<double> bandwidth_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  bps best_value_ = 0;
  std::uint64_t expanded_ = 0;
  std::uint64_t terminal_ = 0;
  double elapsed_ = 0.0;
};

}  // namespace detail

/// Optimal association by branch and bound.
///
/// A node is pruned when its bound (see BoundRule) does not beat the incumbent, so the
/// first matrix found at the optimal value is the one returned. Both rules are valid upper
/// bounds and give the same optimum; they differ only in how many nodes are expanded.
///
/// `op_count` in the report counts expanded nodes (the budgeted quantity); `node_count`
/// counts terminal nodes, i.e. complete assignments plus bound-pruned subtrees.
inline Solution solve_exact(const ProblemInstance& inst,
                            std::uint64_t node_budget = kDefaultNodeBudget,
                            BoundRule rule = BoundRule::rate_budget) {
  inst.validate();
  detail::BranchAndBound bb(inst, node_budget, rule);
  try {
    bb.run();
  } catch (const detail::BranchAndBound::BudgetHit&) {
    throw budget_exceeded("solve_exact: node budget of " + std::to_string(node_budget) +
                              " exceeded",
                          bb.solution(false));
  }
  return bb.solution(true);
}

struct EnumerationResult {
  AssociationMatrix assoc;
  bps objective = 0;
  std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

/// Number of row-feasible matrices, (n_hubs + 1)^n_cells, saturating above the guard.
inline std::uint64_t enumeration_size(const ProblemInstance& inst) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < inst.n_cells(); ++i) {
    total *= inst.n_hubs() + 1;
    if (total > kEnumerationGuard) return kEnumerationGuard + 1;
  }
  return total;
}

/// Brute force over every matrix with at most one 1 per row, scored by check_feasible and
/// objective. Exists as the reference for solve_exact; the first maximizer in odometer
/// order (cell 0 fastest) is returned.
inline EnumerationResult enumerate_all(const ProblemInstance& inst) {
  inst.validate();
  if (enumeration_size(inst) > kEnumerationGuard)
    throw guard_error("enumerate_all: (n_hubs + 1)^n_cells exceeds 1e7");

  const std::size_t n = inst.n_cells();
  const std::size_t m = inst.n_hubs();
  std::vector<std::size_t> digit(n, 0);  // 0 = unassigned, j + 1 = hub j
  auto a = inst.empty_association();
  EnumerationResult res{a, 0, 0};
  bool have = false;
  while (true) {
    ++res.candidates;
    if (check_feasible(inst, a).ok) {
      const bps value = objective(inst, a);
      if (!have || value > res.objective) {
        res.objective = value;
        res.assoc = a;
        have = true;
      }
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (digit[i] > 0) a(i, digit[i] - 1) = 0;
      digit[i] = (digit[i] + 1) % (m + 1);
      if (digit[i] > 0) a(i, digit[i] - 1) = 1;
      if (digit[i] != 0) break;
    }
    if (i == n) break;
  }
  return res;
}

}  // namespace nfp
