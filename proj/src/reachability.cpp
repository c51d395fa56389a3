#include "decoyrt/reachability.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace decoyrt {

Time ArrivalMap::at(NodeId v) const {
  if (!reached(v)) throw GraphError("node " + std::to_string(v) + " not reached");
  return arrival[v];
}

std::size_t ArrivalMap::reached_count() const {
  return static_cast<std::size_t>(
      std::count_if(arrival.begin(), arrival.end(), [](Time t) { return t != kUnreached; }));
}

namespace {

bool blocked(const NodeSet* excluded, NodeId v) {
  return excluded != nullptr && excluded->contains(v);
}

void seed_sources(ArrivalMap& am, std::span<const NodeId> sources, const Interval& query,
                  const NodeSet* excluded) {
  for (NodeId s : sources) {
    if (blocked(excluded, s)) continue;
    am.arrival[s] = query.t_alpha;
    am.pred[s] = {};
  }
}

}  // namespace

ArrivalMap ea_dijkstra(const TemporalGraph& graph, std::span<const NodeId> sources,
                       const Interval& query, const NodeSet* excluded, SearchStats* stats) {
  const auto n = graph.node_count();
  ArrivalMap am(n);
  std::vector<Time> tentative(n, kUnreached);
  std::vector<ArrivalMap::Pred> tentative_pred(n);

  // (arrival, node) min-heap; ties resolve on the smaller node id.
  using Entry = std::pair<Time, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  for (NodeId s : sources) {
    if (blocked(excluded, s) || tentative[s] == query.t_alpha) continue;
    tentative[s] = query.t_alpha;
    tentative_pred[s] = {};
    pq.emplace(query.t_alpha, s);
  }

  while (!pq.empty()) {
    auto [t_u, u] = pq.top();
    pq.pop();
    if (am.reached(u)) continue;  // stale entry
    if (stats) ++stats->pops;
    am.arrival[u] = t_u;
    am.pred[u] = tentative_pred[u];
    for (auto idx : graph.out_edges(u)) {
      const Edge& e = graph.edge(idx);
      if (stats) ++stats->relaxations;
      if (am.reached(e.to) || blocked(excluded, e.to)) continue;
      auto dep = graph.earliest_departure(e, std::max(t_u, query.t_alpha), query.t_omega);
      if (!dep) continue;
      const Time arrive = *dep + e.duration;
      if (arrive < tentative[e.to]) {
        tentative[e.to] = arrive;
        tentative_pred[e.to] = {u, *dep, e.duration};
        pq.emplace(arrive, e.to);
      }
    }
  }
  return am;
}

EdgeStream edge_stream(const TemporalGraph& graph, const Interval& query) {
  EdgeStream stream;
  std::size_t total = 0;
  for (const auto& e : graph.edges()) {
    if (e.is_static) {
      const Time lo = std::max(query.t_alpha, graph.interval().t_alpha);
      const Time hi = std::min(graph.last_departure(e), query.t_omega - e.duration);
      if (hi >= lo) total += static_cast<std::size_t>(hi - lo + 1);
    } else {
      total += e.labels.size();
    }
  }
  stream.reserve(total);
  for (const auto& e : graph.edges()) {
    if (e.is_static) {
      const Time lo = std::max(query.t_alpha, graph.interval().t_alpha);
      const Time hi = std::min(graph.last_departure(e), query.t_omega - e.duration);
      for (Time t = lo; t <= hi; ++t) stream.push_back({e.from, e.to, t, e.duration});
    } else {
      for (Time t : e.labels) {
        if (t >= query.t_alpha && t + e.duration <= query.t_omega) {
          stream.push_back({e.from, e.to, t, e.duration});
        }
      }
    }
  }
  std::stable_sort(stream.begin(), stream.end(),
                   [](const StreamEdge& a, const StreamEdge& b) { return a.time < b.time; });
  return stream;
}

ArrivalMap ea_wu(const EdgeStream& stream, std::size_t node_count,
                 std::span<const NodeId> sources, const Interval& query,
                 const NodeSet* excluded, SearchStats* stats) {
  ArrivalMap am(node_count);
  seed_sources(am, sources, query, excluded);
  for (const auto& se : stream) {
    if (stats) ++stats->scans;
    if (se.time < query.t_alpha || se.time + se.duration > query.t_omega) continue;
    const Time a_u = am.arrival[se.from];
    if (a_u == kUnreached || se.time < a_u) continue;
    if (blocked(excluded, se.to)) continue;
    const Time arrive = se.time + se.duration;
    if (arrive < am.arrival[se.to]) {
      am.arrival[se.to] = arrive;
      am.pred[se.to] = {se.from, se.time, se.duration};
    }
  }
  return am;
}

ArrivalMap ea_wu(const TemporalGraph& graph, std::span<const NodeId> sources,
                 const Interval& query, const NodeSet* excluded, SearchStats* stats) {
  return ea_wu(edge_stream(graph, query), graph.node_count(), sources, query, excluded, stats);
}

ArrivalMap ea_bruteforce(const TemporalGraph& graph, std::span<const NodeId> sources,
                         const Interval& query, std::uint64_t cap) {
  const auto n = graph.node_count();
  const auto slots = static_cast<std::uint64_t>(query.t_omega - query.t_alpha + 1);
  if (static_cast<std::uint64_t>(n) * slots > cap) {
    throw CapExceeded("product graph larger than oracle cap");
  }
  // at[v][k]: v can be occupied at time t_alpha + k.
  std::vector<std::vector<char>> at(n, std::vector<char>(slots, 0));
  std::vector<std::vector<ArrivalMap::Pred>> how(n, std::vector<ArrivalMap::Pred>(slots));
  for (NodeId s : sources) at[s][0] = 1;

  for (std::uint64_t k = 0; k < slots; ++k) {
    const Time t = query.t_alpha + static_cast<Time>(k);
    for (std::size_t v = 0; v < n; ++v) {
      if (k > 0 && !at[v][k] && at[v][k - 1]) {
        at[v][k] = 1;
        how[v][k] = how[v][k - 1];
      }
    }
    for (const auto& e : graph.edges()) {
      if (!at[e.from][k]) continue;
      const auto labels = graph.time_labels(e.from, e.to);
      if (!std::binary_search(labels.begin(), labels.end(), t)) continue;
      const Time arrive = t + e.duration;
      if (arrive > query.t_omega) continue;
      const auto ak = static_cast<std::uint64_t>(arrive - query.t_alpha);
      if (!at[e.to][ak]) {
        at[e.to][ak] = 1;
        how[e.to][ak] = {e.from, t, e.duration};
      }
    }
  }

  ArrivalMap am(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint64_t k = 0; k < slots; ++k) {
      if (at[v][k]) {
        am.arrival[v] = query.t_alpha + static_cast<Time>(k);
        am.pred[v] = how[v][k];
        break;
      }
    }
  }
  for (NodeId s : sources) am.pred[s] = {};
  return am;
}

TemporalPath reconstruct_path(const ArrivalMap& arrivals, NodeId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= arrivals.arrival.size() || !arrivals.reached(v)) {
    throw GraphError("cannot reconstruct a path to an unreached node");
  }
  TemporalPath path;
  NodeId cur = v;
  std::size_t guard = arrivals.arrival.size();
  while (arrivals.pred[cur].node != kNoNode) {
    if (guard-- == 0) throw GraphError("predecessor cycle");
    const auto& p = arrivals.pred[cur];
    path.edges.push_back({p.node, cur, p.departure, p.duration});
    cur = p.node;
  }
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

std::vector<TemporalPath> enumerate_temporal_paths(const TemporalGraph& graph, NodeId s,
                                                   NodeId d, const Interval& query,
                                                   const EnumerationCaps& caps,
                                                   const NodeSet* excluded) {
  std::vector<TemporalPath> out;
  if (s == d || blocked(excluded, s) || blocked(excluded, d)) return out;

  // Out-edges sorted by head id for a deterministic order.
  std::vector<std::vector<std::uint32_t>> order(graph.node_count());
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    auto span = graph.out_edges(static_cast<NodeId>(v));
    order[v].assign(span.begin(), span.end());
    std::sort(order[v].begin(), order[v].end(), [&](auto a, auto b) {
      return graph.edge(a).to < graph.edge(b).to;
    });
  }

  std::vector<bool> on_path(graph.node_count(), false);
  TemporalPath cur;
  std::function<void(NodeId, Time)> dfs = [&](NodeId u, Time ready) {
    if (cur.size() >= caps.max_length) return;
    for (auto idx : order[u]) {
      const Edge& e = graph.edge(idx);
      if (on_path[e.to] || blocked(excluded, e.to)) continue;
      for (Time t : graph.time_labels(e.from, e.to)) {
        if (t < ready || t < query.t_alpha) continue;
        if (t + e.duration > query.t_omega) break;
        cur.edges.push_back({u, e.to, t, e.duration});
        if (e.to == d) {
          if (out.size() >= caps.max_paths) throw CapExceeded("temporal path count cap exceeded");
          out.push_back(cur);
        } else {
          on_path[e.to] = true;
          dfs(e.to, t + e.duration);
          on_path[e.to] = false;
        }
        cur.edges.pop_back();
      }
    }
  };
  on_path[s] = true;
  dfs(s, query.t_alpha);
  return out;
}

std::optional<TemporalPath> random_temporal_path(const TemporalGraph& graph,
                                                 std::span<const NodeId> sources, NodeId d,
                                                 const Interval& query, Rng& rng,
                                                 const NodeSet* excluded) {
  if (blocked(excluded, d)) return std::nullopt;
  std::vector<NodeId> starts;
  for (NodeId s : sources) {
    if (!blocked(excluded, s) && s != d) starts.push_back(s);
  }
  std::shuffle(starts.begin(), starts.end(), rng);

  // A state (v, t) is only expanded when t improves on every earlier visit
  // of v, which keeps the search complete and the stack vertex-simple.
  std::vector<Time> best(graph.node_count(), kUnreached);
  TemporalPath cur;

  std::function<bool(NodeId, Time)> dfs = [&](NodeId u, Time ready) -> bool {
    auto outs = graph.out_edges(u);
    std::vector<std::uint32_t> succ(outs.begin(), outs.end());
    std::shuffle(succ.begin(), succ.end(), rng);
    for (auto idx : succ) {
      const Edge& e = graph.edge(idx);
      if (blocked(excluded, e.to)) continue;
      auto dep = graph.earliest_departure(e, std::max(ready, query.t_alpha), query.t_omega);
      if (!dep) continue;
      const Time arrive = *dep + e.duration;
      if (arrive >= best[e.to]) continue;
      best[e.to] = arrive;
      cur.edges.push_back({u, e.to, *dep, e.duration});
      if (e.to == d || dfs(e.to, arrive)) return true;
      cur.edges.pop_back();
    }
    return false;
  };

  for (NodeId s : starts) {
    if (best[s] <= query.t_alpha) continue;
    best[s] = query.t_alpha;
    if (dfs(s, query.t_alpha)) return cur;
  }
  return std::nullopt;
}

bool is_temporal_cut(const Instance& instance, const NodeSet& cut) {
  auto am = ea_dijkstra(instance.graph, instance.entries, instance.interval(), &cut);
  return !am.reached(instance.da);
}

bool target_reachable(const Instance& instance) {
  auto am = ea_dijkstra(instance.graph, instance.entries, instance.interval());
  return am.reached(instance.da);
}

}  // namespace decoyrt
