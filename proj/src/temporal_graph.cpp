#include "decoyrt/temporal_graph.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace decoyrt {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

constexpr std::array<std::pair<NodeKind, std::string_view>, 5> kKindNames{{
    {NodeKind::user, "user"},
    {NodeKind::computer, "computer"},
    {NodeKind::group, "group"},
    {NodeKind::domain_admin, "domain_admin"},
    {NodeKind::other, "other"},
}};

std::string edge_text(NodeId u, NodeId v) {
  std::ostringstream os;
  os << "(" << u << "," << v << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "other";
}

NodeKind parse_node_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw GraphError("unknown node kind '" + std::string(text) + "'");
}

NodeSet::NodeSet(std::size_t universe, std::span<const NodeId> members)
    : bits_(universe, false) {
  for (NodeId v : members) insert(v);
}

void NodeSet::insert(NodeId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= bits_.size()) {
    throw GraphError("node id " + std::to_string(v) + " outside set universe");
  }
  if (!bits_[v]) {
    bits_[v] = true;
    ++count_;
  }
}

void NodeSet::erase(NodeId v) {
  if (contains(v)) {
    bits_[v] = false;
    --count_;
  }
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

TemporalGraph TemporalGraph::build(std::vector<Node> nodes,
                                   std::vector<StaticEdgeSpec> static_edges,
                                   std::vector<DynamicEdgeSpec> dynamic_edges,
                                   Interval interval, BuildOptions options) {
  if (interval.t_alpha < 0) throw GraphError("interval start must be non-negative");
  if (interval.t_alpha >= interval.t_omega) {
    throw GraphError("interval must satisfy t_alpha < t_omega");
  }

  TemporalGraph g;
  g.interval_ = interval;
  const auto n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].id != static_cast<NodeId>(i)) {
      throw GraphError("node ids must be contiguous 0..|V|-1; got id " +
                       std::to_string(nodes[i].id) + " at position " + std::to_string(i));
    }
    if (nodes[i].name.empty()) nodes[i].name = std::to_string(i);
    if (!g.by_name_.emplace(nodes[i].name, nodes[i].id).second) {
      throw GraphError("duplicate node name '" + nodes[i].name + "'");
    }
  }
  g.nodes_ = std::move(nodes);
  g.out_.resize(n);
  g.in_.resize(n);

  auto check_endpoints = [&](NodeId u, NodeId v) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n) {
      throw GraphError("edge " + edge_text(u, v) + " references unknown node");
    }
    if (u == v) throw GraphError("self-loop on node " + std::to_string(u));
  };

  auto add = [&](Edge e) {
    if (e.duration < 1) throw GraphError("edge " + edge_text(e.from, e.to) + " duration must be >= 1");
    if (interval.t_omega - e.duration < interval.t_alpha) {
      throw GraphError("edge " + edge_text(e.from, e.to) + " duration exceeds the lifetime");
    }
    const auto key = pair_key(e.from, e.to);
    const auto idx = static_cast<std::uint32_t>(g.edges_.size());
    if (!g.edge_index_.emplace(key, idx).second) {
      throw GraphError("duplicate edge pair " + edge_text(e.from, e.to));
    }
    g.out_[e.from].push_back(idx);
    g.in_[e.to].push_back(idx);
    if (e.is_static) ++g.static_count_;
    g.edges_.push_back(std::move(e));
  };

  for (const auto& s : static_edges) {
    check_endpoints(s.from, s.to);
    add(Edge{s.from, s.to, s.duration, true, {}});
  }
  for (auto& d : dynamic_edges) {
    check_endpoints(d.from, d.to);
    const auto name = edge_text(d.from, d.to);
    if (d.labels.empty()) throw GraphError("dynamic edge " + name + " has no labels");
    for (std::size_t i = 1; i < d.labels.size(); ++i) {
      if (d.labels[i] < d.labels[i - 1]) throw GraphError("unsorted labels on edge " + name);
      if (d.labels[i] == d.labels[i - 1]) throw GraphError("duplicate label on edge " + name);
    }
    const Time last = interval.t_omega - d.duration;
    if (d.labels.front() < interval.t_alpha || d.labels.back() > last) {
      throw GraphError("label out of interval on edge " + name);
    }
    const auto slots = static_cast<std::size_t>(last - interval.t_alpha + 1);
    if (d.labels.size() == slots) {
      if (!options.promote_full_dynamic) {
        throw GraphError("dynamic edge " + name + " is present at every time step");
      }
      add(Edge{d.from, d.to, d.duration, true, {}});
      continue;
    }
    add(Edge{d.from, d.to, d.duration, false, std::move(d.labels)});
  }
  return g;
}

std::optional<NodeId> TemporalGraph::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

NodeId TemporalGraph::require(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw GraphError("unknown node '" + std::string(name) + "'");
}

const Edge* TemporalGraph::find_edge(NodeId u, NodeId v) const {
  auto it = edge_index_.find(pair_key(u, v));
  return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

std::vector<Time> TemporalGraph::time_labels(NodeId u, NodeId v) const {
  const Edge* e = find_edge(u, v);
  if (e == nullptr) throw GraphError("unknown edge " + edge_text(u, v));
  if (!e->is_static) return e->labels;
  std::vector<Time> out;
  for (Time t = interval_.t_alpha; t <= last_departure(*e); ++t) out.push_back(t);
  return out;
}

std::optional<Time> TemporalGraph::earliest_departure(const Edge& e, Time not_before,
                                                      Time arrive_by) const {
  Time t;
  if (e.is_static) {
    t = std::max(not_before, interval_.t_alpha);
    if (t > last_departure(e)) return std::nullopt;
  } else {
    auto it = std::lower_bound(e.labels.begin(), e.labels.end(), not_before);
    if (it == e.labels.end()) return std::nullopt;
    t = *it;
  }
  if (t + e.duration > arrive_by) return std::nullopt;
  return t;
}

bool TemporalGraph::has_departure(const Edge& e, Time t) const {
  if (e.is_static) return t >= interval_.t_alpha && t <= last_departure(e);
  return std::binary_search(e.labels.begin(), e.labels.end(), t);
}

std::vector<NodeId> TemporalPath::node_sequence() const {
  std::vector<NodeId> seq;
  if (edges.empty()) return seq;
  seq.reserve(edges.size() + 1);
  seq.push_back(edges.front().from);
  for (const auto& e : edges) seq.push_back(e.to);
  return seq;
}

PathCheck validate_path(const TemporalGraph& graph, const TemporalPath& path) {
  auto fail = [](std::size_t i, std::string why) {
    return PathCheck{false, i, std::move(why)};
  };
  std::vector<bool> seen(graph.node_count(), false);
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const auto& pe = path.edges[i];
    if (pe.from < 0 || pe.to < 0 || static_cast<std::size_t>(pe.from) >= graph.node_count() ||
        static_cast<std::size_t>(pe.to) >= graph.node_count()) {
      return fail(i, "unknown node");
    }
    if (i == 0) {
      seen[pe.from] = true;
    } else {
      const auto& prev = path.edges[i - 1];
      if (prev.to != pe.from) return fail(i, "broken chain");
      if (pe.time <= prev.time) return fail(i, "non-increasing time labels");
      if (pe.time < prev.arrival()) return fail(i, "departure before arrival");
    }
    if (seen[pe.to]) return fail(i, "repeated vertex");
    seen[pe.to] = true;
    const Edge* e = graph.find_edge(pe.from, pe.to);
    if (e == nullptr) return fail(i, "edge absent from graph");
    if (e->duration != pe.duration) return fail(i, "duration mismatch");
    if (!graph.has_departure(*e, pe.time)) return fail(i, "time label not present on edge");
  }
  return {};
}

PathMetrics path_metrics(const TemporalPath& path) {
  if (path.empty()) throw GraphError("path metrics of an empty path");
  PathMetrics m;
  m.start = path.edges.front().time;
  m.end = path.edges.back().arrival();
  m.duration = m.end - m.start;
  return m;
}

std::optional<Contact> first_contact(const TemporalPath& path, const NodeSet& cut) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const auto& pe = path.edges[i];
    if (cut.contains(pe.to)) return Contact{pe.to, pe.arrival(), i};
  }
  return std::nullopt;
}

std::optional<Time> response_time(const TemporalPath& path, const NodeSet& cut, NodeId da) {
  if (path.empty() || path.target() != da) {
    throw GraphError("response time needs a path ending at the target");
  }
  auto contact = first_contact(path, cut);
  if (!contact) return std::nullopt;
  return path.edges.back().arrival() - contact->arrival;
}

TemporalGraph remove_nodes(const TemporalGraph& graph, const NodeSet& removed,
                           NodeId protected_node) {
  if (protected_node != kNoNode && removed.contains(protected_node)) {
    throw GraphError("cannot remove the target node");
  }
  std::vector<NodeId> remap(graph.node_count(), kNoNode);
  std::vector<Node> nodes;
  for (const auto& nd : graph.nodes()) {
    if (removed.contains(nd.id)) continue;
    remap[nd.id] = static_cast<NodeId>(nodes.size());
    nodes.push_back(Node{remap[nd.id], nd.name, nd.kind});
  }
  std::vector<StaticEdgeSpec> st;
  std::vector<DynamicEdgeSpec> dy;
  for (const auto& e : graph.edges()) {
    const NodeId u = remap[e.from];
    const NodeId v = remap[e.to];
    if (u == kNoNode || v == kNoNode) continue;
    if (e.is_static) {
      st.push_back({u, v, e.duration});
    } else {
      dy.push_back({u, v, e.labels, e.duration});
    }
  }
  return TemporalGraph::build(std::move(nodes), std::move(st), std::move(dy), graph.interval());
}

}  // namespace decoyrt
