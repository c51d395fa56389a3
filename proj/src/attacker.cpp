#include "decoyrt/attacker.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace decoyrt {

std::string_view to_string(AttackMode mode) {
  switch (mode) {
    case AttackMode::alg1: return "alg1";
    case AttackMode::exact: return "exact";
    case AttackMode::exhaustive: return "exhaustive";
  }
  return "alg1";
}

AttackMode parse_attack_mode(std::string_view text) {
  if (text == "alg1") return AttackMode::alg1;
  if (text == "exact") return AttackMode::exact;
  if (text == "exhaustive") return AttackMode::exhaustive;
  throw std::invalid_argument("unknown attack mode '" + std::string(text) + "'");
}

std::string_view to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::optimal: return "optimal";
    case AttackStatus::not_a_cut: return "not_a_cut";
    case AttackStatus::unreachable: return "unreachable";
    case AttackStatus::no_single_contact: return "no_single_contact";
  }
  return "optimal";
}

std::string_view to_string(FitnessStatus status) {
  switch (status) {
    case FitnessStatus::feasible: return "feasible";
    case FitnessStatus::infeasible: return "infeasible";
    case FitnessStatus::vacuous: return "vacuous";
  }
  return "infeasible";
}

TemporalPath AttackReport::full_path() const {
  TemporalPath p = prefix;
  p.edges.insert(p.edges.end(), suffix.edges.begin(), suffix.edges.end());
  return p;
}

TemporalPath simplify_walk(const TemporalPath& walk) {
  TemporalPath out;
  if (walk.empty()) return out;
  std::map<NodeId, std::size_t> position;  // node -> number of edges before it
  position[walk.edges.front().from] = 0;
  for (const auto& e : walk.edges) {
    auto it = position.find(e.to);
    if (it != position.end()) {
      const std::size_t keep = it->second;
      for (std::size_t i = keep; i < out.edges.size(); ++i) position.erase(out.edges[i].to);
      out.edges.resize(keep);
      position[e.to] = keep;
      continue;
    }
    out.edges.push_back(e);
    position[e.to] = out.edges.size();
  }
  return out;
}

namespace {

struct Entry {
  Time arrival;
  NodeId via;
  Time departure;
  Time duration;
};

// First-entry options into c: arrival -> one witnessing in-edge.
std::map<Time, Entry> entry_options(const TemporalGraph& graph, const ArrivalMap& am,
                                    std::span<const NodeId> sources, NodeId c,
                                    const Interval& query) {
  std::map<Time, Entry> out;
  if (std::find(sources.begin(), sources.end(), c) != sources.end()) {
    out.emplace(query.t_alpha, Entry{query.t_alpha, kNoNode, 0, 0});
  }
  for (auto idx : graph.in_edges(c)) {
    const Edge& e = graph.edge(idx);
    if (!am.reached(e.from)) continue;
    const Time ready = std::max(am.arrival[e.from], query.t_alpha);
    if (e.is_static) {
      const Time hi = std::min(graph.last_departure(e), query.t_omega - e.duration);
      for (Time t = std::max(ready, graph.interval().t_alpha); t <= hi; ++t) {
        out.emplace(t + e.duration, Entry{t + e.duration, e.from, t, e.duration});
      }
    } else {
      auto it = std::lower_bound(e.labels.begin(), e.labels.end(), ready);
      for (; it != e.labels.end() && *it + e.duration <= query.t_omega; ++it) {
        out.emplace(*it + e.duration, Entry{*it + e.duration, e.from, *it, e.duration});
      }
    }
  }
  return out;
}

std::optional<AttackReport> precheck(const Instance& instance, const NodeSet& cut,
                                     AttackMode mode) {
  AttackReport r;
  r.mode = mode;
  if (!target_reachable(instance)) {
    r.status = AttackStatus::unreachable;
    return r;
  }
  if (!is_temporal_cut(instance, cut)) {
    r.status = AttackStatus::not_a_cut;
    return r;
  }
  return std::nullopt;
}

AttackReport contact_search(const Instance& instance, const NodeSet& cut, AttackMode mode) {
  if (auto early = precheck(instance, cut, mode)) return *early;
  const auto& g = instance.graph;
  const auto& iv = instance.interval();

  AttackReport best;
  best.mode = mode;
  best.status = AttackStatus::no_single_contact;

  // Prefix arrivals avoid every decoy, so the contact is entered for the
  // first time and is the first decoy on the path.
  const ArrivalMap prefix_map = ea_dijkstra(g, instance.entries, iv, &cut);
  const NodeId da = instance.da;

  for (NodeId c : cut.members()) {
    const auto options = entry_options(g, prefix_map, instance.entries, c, iv);
    if (options.empty()) continue;
    NodeSet others = cut;
    others.erase(c);
    const NodeSet* suffix_excluded = mode == AttackMode::alg1 ? &others : nullptr;
    const NodeId from[] = {c};
    for (const auto& [t, entry] : options) {
      const auto suffix_map = ea_dijkstra(g, from, Interval{t, iv.t_omega}, suffix_excluded);
      if (!suffix_map.reached(da)) continue;
      const Time rt = suffix_map.arrival[da] - t;
      if (best.response_time && rt >= *best.response_time) continue;
      best.status = AttackStatus::optimal;
      best.response_time = rt;
      best.contact = c;
      best.contact_time = t;
      best.prefix = entry.via == kNoNode ? TemporalPath{} : reconstruct_path(prefix_map, entry.via);
      if (entry.via != kNoNode) best.prefix.edges.push_back({entry.via, c, entry.departure, entry.duration});
      best.suffix = reconstruct_path(suffix_map, da);
    }
  }

  if (best.status == AttackStatus::optimal) {
    // Under the exact suffix the concatenation can revisit a prefix vertex;
    // cutting the cycle yields a simple path with the same value.
    const TemporalPath walk = best.full_path();
    const TemporalPath path = simplify_walk(walk);
    if (path.size() != walk.size()) {
      const auto contact = first_contact(path, cut);
      best.prefix.edges.assign(path.edges.begin(),
                               path.edges.begin() + static_cast<std::ptrdiff_t>(contact->edge_index + 1));
      best.suffix.edges.assign(path.edges.begin() + static_cast<std::ptrdiff_t>(contact->edge_index + 1),
                               path.edges.end());
      best.contact = contact->node;
      best.contact_time = contact->arrival;
      best.response_time = path.edges.back().arrival() - contact->arrival;
    }
  }
  return best;
}

}  // namespace

std::vector<Time> achievable_arrivals(const TemporalGraph& graph, std::span<const NodeId> sources,
                                      NodeId c, const Interval& query, const NodeSet* excluded) {
  NodeSet without_c = excluded ? *excluded : NodeSet(graph.node_count());
  without_c.insert(c);
  const auto am = ea_dijkstra(graph, sources, query, &without_c);
  std::vector<Time> out;
  for (const auto& [t, entry] : entry_options(graph, am, sources, c, query)) out.push_back(t);
  return out;
}

AttackReport optimal_attack_alg1(const Instance& instance, const NodeSet& cut) {
  return contact_search(instance, cut, AttackMode::alg1);
}

AttackReport optimal_attack_exact(const Instance& instance, const NodeSet& cut) {
  return contact_search(instance, cut, AttackMode::exact);
}

AttackReport optimal_attack_exhaustive(const Instance& instance, const NodeSet& cut,
                                       const EnumerationCaps& caps) {
  AttackReport r;
  r.mode = AttackMode::exhaustive;
  const auto& g = instance.graph;
  bool any_path = false;
  std::size_t best_touched = 0;
  std::size_t total = 0;
  for (NodeId s : instance.entries) {
    EnumerationCaps left = caps;
    left.max_paths = caps.max_paths - std::min(caps.max_paths, total);
    for (const auto& path : enumerate_temporal_paths(g, s, instance.da, instance.interval(), left)) {
      ++total;
      any_path = true;
      const auto contact = first_contact(path, cut);
      if (!contact) {
        r.status = AttackStatus::not_a_cut;
        r.response_time.reset();
        r.prefix = path;
        r.suffix = {};
        return r;
      }
      const Time rt = path.edges.back().arrival() - contact->arrival;
      std::size_t touched = 0;
      for (const auto& e : path.edges) touched += cut.contains(e.to) ? 1 : 0;
      if (r.response_time && (rt > *r.response_time ||
                              (rt == *r.response_time && touched >= best_touched))) {
        continue;
      }
      r.status = AttackStatus::optimal;
      r.response_time = rt;
      best_touched = touched;
      r.contact = contact->node;
      r.contact_time = contact->arrival;
      r.prefix.edges.assign(path.edges.begin(),
                            path.edges.begin() + static_cast<std::ptrdiff_t>(contact->edge_index + 1));
      r.suffix.edges.assign(path.edges.begin() + static_cast<std::ptrdiff_t>(contact->edge_index + 1),
                            path.edges.end());
    }
  }
  if (!any_path) r.status = AttackStatus::unreachable;
  return r;
}

AttackReport optimal_attack(const Instance& instance, const NodeSet& cut, AttackMode mode,
                            const EnumerationCaps& caps) {
  switch (mode) {
    case AttackMode::alg1: return optimal_attack_alg1(instance, cut);
    case AttackMode::exact: return optimal_attack_exact(instance, cut);
    case AttackMode::exhaustive: return optimal_attack_exhaustive(instance, cut, caps);
  }
  return optimal_attack_alg1(instance, cut);
}

FitnessReport fitness_full(const Instance& instance, const NodeSet& cut, AttackMode mode) {
  FitnessReport fr;
  AttackReport r = optimal_attack(instance, cut, mode);
  if (r.status == AttackStatus::no_single_contact) {
    // Scoring this as unbounded would reward stacking decoys in series.
    r = optimal_attack_exact(instance, cut);
    fr.fell_back = true;
  }
  switch (r.status) {
    case AttackStatus::unreachable:
      fr.status = FitnessStatus::vacuous;
      fr.value = 0;
      break;
    case AttackStatus::not_a_cut:
      fr.status = FitnessStatus::infeasible;
      fr.value = 0;
      break;
    default:
      fr.status = FitnessStatus::feasible;
      fr.value = r.response_time.value_or(0);
      break;
  }
  fr.witness = std::move(r);
  return fr;
}

Fitness surrogate_fitness(const Instance& instance, const NodeSet& cut,
                          std::span<const TemporalPath> pool) {
  Fitness untouched = 0;
  Fitness best = kInfiniteFitness;
  for (const auto& path : pool) {
    const auto rt = response_time(path, cut, instance.da);
    if (!rt) {
      ++untouched;
    } else {
      best = std::min<Fitness>(best, *rt);
    }
  }
  return untouched > 0 ? -untouched : best;
}

}  // namespace decoyrt
