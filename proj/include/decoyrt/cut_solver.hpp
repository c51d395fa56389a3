#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decoyrt/instance.hpp"
#include "decoyrt/reachability.hpp"

namespace decoyrt {

enum class CutStatus { optimal, infeasible_within_budget, unreachable_trivial };

std::string_view to_string(CutStatus status);

struct CutSolution {
  NodeSet blocks;  // includes any fixed blocks
  int objective_value = 0;
  CutStatus status = CutStatus::optimal;
  std::uint64_t branch_nodes = 0;
};

struct CutSearchLimits {
  std::uint64_t max_branch_nodes = 50'000'000;
};

/// Minimum-cardinality temporal (entries, DA) vertex cut over the blockable
/// set, by path-branching branch and bound.
CutSolution min_temporal_cut(const Instance& instance, const CutSearchLimits& limits = {});

/// Smallest extension of `fixed` to a temporal cut using at most
/// `budget` blocks in total; nullopt when none exists.
std::optional<NodeSet> complete_cut(const Instance& instance, const NodeSet& fixed, int budget,
                                    const CutSearchLimits& limits = {},
                                    std::uint64_t* branch_nodes = nullptr);

struct RepairResult {
  bool infeasible = false;
  std::vector<bool> bits;      // repaired individual when !infeasible
  std::vector<bool> survivors;  // blocks kept after the random unblocking step
};

/// Repair operator: every blocked position not in `changed` is unblocked with
/// probability 1/2, then the survivors are completed to a cut within budget.
RepairResult repair(const Instance& instance, const std::vector<bool>& offspring,
                    const std::vector<bool>& changed, int budget, Rng& rng);

// ---------------------------------------------------------------------------
// Integer program in LP text form.

enum class IlpVariant { repair, mincut };

struct LpTerm {
  double coef = 0;
  std::string var;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  std::string sense;  // ">=", "<=", "="
  double rhs = 0;
};

struct LpModel {
  bool minimize = true;
  std::vector<LpTerm> objective;
  std::vector<LpRow> rows;
  std::vector<std::string> binaries;
};

struct LpLimits {
  std::size_t max_rows = 5'000'000;
};

/// Reachability model R_v_t (DA reachable departing v at t or later) with
/// decoy variables B_v. Throws CapExceeded above `limits.max_rows`.
LpModel build_cut_model(const Instance& instance, IlpVariant variant, const NodeSet& fixed_blocks,
                        std::optional<int> budget, const LpLimits& limits = {});

std::string to_lp_text(const LpModel& model);

std::string export_ilp(const Instance& instance, IlpVariant variant, const NodeSet& fixed_blocks,
                       std::optional<int> budget, const LpLimits& limits = {});

std::string reach_var(const Instance& instance, NodeId v, Time t);
std::string block_var(const Instance& instance, NodeId v);

}  // namespace decoyrt
