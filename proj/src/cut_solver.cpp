#include "decoyrt/cut_solver.hpp"

#include <algorithm>
#include <sstream>

namespace decoyrt {

std::string_view to_string(CutStatus status) {
  switch (status) {
    case CutStatus::optimal: return "optimal";
    case CutStatus::infeasible_within_budget: return "infeasible_within_budget";
    case CutStatus::unreachable_trivial: return "unreachable_trivial";
  }
  return "optimal";
}

namespace {

// Branch and bound over surviving paths. Every cut must block some
// blockable interior node of any surviving path, so branching on those
// nodes (with earlier siblings forbidden) enumerates every minimal
// extension exactly once. R variables of the integer model are never
// materialized: for fixed blocks their least solution is reachability.
class PathBranching {
 public:
  PathBranching(const Instance& inst, const CutSearchLimits& limits)
      : inst_(inst), limits_(limits), blockable_(inst.blockable_set()),
        forbidden_(inst.node_count()) {}

  std::optional<NodeSet> solve(const NodeSet& fixed, int max_total) {
    max_total_ = max_total;
    best_.reset();
    NodeSet blocked = fixed;
    if (static_cast<int>(blocked.size()) <= max_total_) branch(blocked);
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Blockable, not-yet-decided interior nodes of `path`, latest entry first.
  std::vector<NodeId> candidates(const TemporalPath& path, const NodeSet& blocked) const {
    std::vector<std::pair<Time, NodeId>> c;
    for (const auto& e : path.edges) {
      const NodeId v = e.to;
      if (v == inst_.da || !blockable_.contains(v) || blocked.contains(v) ||
          forbidden_.contains(v)) {
        continue;
      }
      c.emplace_back(e.time, v);
    }
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<NodeId> out;
    for (const auto& [t, v] : c) out.push_back(v);
    return out;
  }

  // Greedy packing of surviving paths with pairwise disjoint interiors; each
  // needs its own block. Returns -1 when some path has no candidate.
  int packing_bound(const NodeSet& blocked) const {
    NodeSet used = blocked;
    int count = 0;
    for (;;) {
      const auto am = ea_dijkstra(inst_.graph, inst_.entries, inst_.interval(), &used);
      if (!am.reached(inst_.da)) return count;
      const auto path = reconstruct_path(am, inst_.da);
      // No decidable node left on a surviving path: this subtree has no cut.
      if (candidates(path, blocked).empty()) return -1;
      for (const auto& e : path.edges) {
        if (e.to != inst_.da) used.insert(e.to);
      }
      ++count;
      if (static_cast<int>(blocked.size()) + count > max_total_) return count;
    }
  }

  void branch(NodeSet& blocked) {
    if (++nodes_ > limits_.max_branch_nodes) throw CapExceeded("cut search branch limit exceeded");
    const auto am = ea_dijkstra(inst_.graph, inst_.entries, inst_.interval(), &blocked);
    if (!am.reached(inst_.da)) {
      best_ = blocked;
      max_total_ = static_cast<int>(blocked.size()) - 1;
      return;
    }
    if (static_cast<int>(blocked.size()) + 1 > max_total_) return;
    const auto path = reconstruct_path(am, inst_.da);
    const auto cand = candidates(path, blocked);
    if (cand.empty()) return;
    const int lb = packing_bound(blocked);
    if (lb < 0 || static_cast<int>(blocked.size()) + lb > max_total_) return;

    std::vector<NodeId> forbidden_here;
    for (NodeId v : cand) {
      if (static_cast<int>(blocked.size()) + 1 > max_total_) break;
      blocked.insert(v);
      branch(blocked);
      blocked.erase(v);
      forbidden_.insert(v);
      forbidden_here.push_back(v);
    }
    for (NodeId v : forbidden_here) forbidden_.erase(v);
  }

  const Instance& inst_;
  CutSearchLimits limits_;
  NodeSet blockable_;
  NodeSet forbidden_;
  int max_total_ = 0;
  std::optional<NodeSet> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<NodeSet> complete_cut(const Instance& instance, const NodeSet& fixed, int budget,
                                    const CutSearchLimits& limits, std::uint64_t* branch_nodes) {
  PathBranching search(instance, limits);
  auto result = search.solve(fixed, budget);
  if (branch_nodes) *branch_nodes += search.nodes();
  return result;
}

CutSolution min_temporal_cut(const Instance& instance, const CutSearchLimits& limits) {
  CutSolution sol;
  sol.blocks = NodeSet(instance.node_count());
  if (!target_reachable(instance)) {
    sol.status = CutStatus::unreachable_trivial;
    return sol;
  }
  auto cut = complete_cut(instance, NodeSet(instance.node_count()),
                          static_cast<int>(instance.blockable.size()), limits, &sol.branch_nodes);
  if (!cut) {
    sol.status = CutStatus::infeasible_within_budget;
    return sol;
  }
  sol.blocks = *cut;
  sol.objective_value = static_cast<int>(cut->size());
  sol.status = CutStatus::optimal;
  return sol;
}

RepairResult repair(const Instance& instance, const std::vector<bool>& offspring,
                    const std::vector<bool>& changed, int budget, Rng& rng) {
  RepairResult out;
  out.survivors = offspring;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < out.survivors.size(); ++i) {
    const bool touched = i < changed.size() && changed[i];
    if (out.survivors[i] && !touched && coin(rng)) out.survivors[i] = false;
  }
  const NodeSet fixed = instance.cut_from_bits(out.survivors);
  if (static_cast<int>(fixed.size()) > budget) {
    out.infeasible = true;
    return out;
  }
  auto cut = complete_cut(instance, fixed, budget);
  if (!cut) {
    out.infeasible = true;
    return out;
  }
  out.bits = instance.bits_from_cut(*cut);
  return out;
}

std::string reach_var(const Instance&, NodeId v, Time t) {
  return "R_" + std::to_string(v) + "_" + std::to_string(t);
}

std::string block_var(const Instance&, NodeId v) { return "B_" + std::to_string(v); }

LpModel build_cut_model(const Instance& instance, IlpVariant variant, const NodeSet& fixed_blocks,
                        std::optional<int> budget, const LpLimits& limits) {
  const auto& g = instance.graph;
  const auto& iv = instance.interval();
  LpModel m;
  auto push = [&](LpRow row) {
    if (m.rows.size() >= limits.max_rows) throw CapExceeded("LP row cap exceeded");
    m.rows.push_back(std::move(row));
  };

  if (variant == IlpVariant::mincut) {
    for (NodeId v : instance.blockable) m.objective.push_back({1, block_var(instance, v)});
  } else {
    for (NodeId s : instance.entries) {
      for (Time t = iv.t_alpha; t <= iv.t_omega; ++t) m.objective.push_back({1, reach_var(instance, s, t)});
    }
  }

  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edge(i);
    for (Time t : g.time_labels(e.from, e.to)) {
      LpRow row;
      row.name = "edge_" + std::to_string(i) + "_" + std::to_string(t);
      row.terms = {{1, reach_var(instance, e.from, t)}, {-1, reach_var(instance, e.to, t + e.duration)}};
      if (instance.is_blockable(e.to)) row.terms.push_back({1, block_var(instance, e.to)});
      row.sense = ">=";
      push(std::move(row));
    }
  }
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    for (Time t = iv.t_alpha; t < iv.t_omega; ++t) {
      push({"wait_" + std::to_string(v) + "_" + std::to_string(t),
            {{1, reach_var(instance, v, t)}, {-1, reach_var(instance, v, t + 1)}}, ">=", 0});
    }
  }
  for (Time t = iv.t_alpha; t <= iv.t_omega; ++t) {
    push({"target_" + std::to_string(t), {{1, reach_var(instance, instance.da, t)}}, "=", 1});
  }
  if (variant == IlpVariant::mincut) {
    for (NodeId s : instance.entries) {
      push({"entry_" + std::to_string(s), {{1, reach_var(instance, s, iv.t_alpha)}}, "=", 0});
    }
  }
  for (NodeId v : fixed_blocks.members()) {
    if (!instance.is_blockable(v)) throw GraphError("fixed block on unblockable node");
    push({"fixed_" + std::to_string(v), {{1, block_var(instance, v)}}, "=", 1});
  }
  if (budget) {
    LpRow row{"budget", {}, "<=", static_cast<double>(*budget)};
    for (NodeId v : instance.blockable) row.terms.push_back({1, block_var(instance, v)});
    push(std::move(row));
  }

  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    for (Time t = iv.t_alpha; t <= iv.t_omega; ++t) m.binaries.push_back(reach_var(instance, v, t));
  }
  for (NodeId v : instance.blockable) m.binaries.push_back(block_var(instance, v));
  return m;
}

namespace {

void write_terms(std::ostringstream& os, const std::vector<LpTerm>& terms) {
  bool first = true;
  for (const auto& term : terms) {
    const bool neg = term.coef < 0;
    const double mag = neg ? -term.coef : term.coef;
    if (first) {
      if (neg) os << "- ";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (mag != 1) os << mag << " ";
    os << term.var;
    first = false;
  }
  if (first) os << "0";
}

}  // namespace

std::string to_lp_text(const LpModel& model) {
  std::ostringstream os;
  os << (model.minimize ? "Minimize\n" : "Maximize\n") << " obj: ";
  write_terms(os, model.objective);
  os << "\nSubject To\n";
  for (const auto& row : model.rows) {
    os << " " << row.name << ": ";
    write_terms(os, row.terms);
    os << " " << row.sense << " " << row.rhs << "\n";
  }
  os << "Binary\n";
  for (const auto& v : model.binaries) os << " " << v << "\n";
  os << "End\n";
  return os.str();
}

std::string export_ilp(const Instance& instance, IlpVariant variant, const NodeSet& fixed_blocks,
                       std::optional<int> budget, const LpLimits& limits) {
  return to_lp_text(build_cut_model(instance, variant, fixed_blocks, budget, limits));
}

}  // namespace decoyrt
