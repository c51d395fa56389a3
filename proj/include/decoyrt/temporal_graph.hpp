#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace decoyrt {

using NodeId = std::int32_t;
using Time = std::int64_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr Time kUnreached = std::numeric_limits<Time>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { user, computer, group, domain_admin, other };

std::string_view to_string(NodeKind kind);
NodeKind parse_node_kind(std::string_view text);

struct Node {
  NodeId id = kNoNode;
  std::string name;
  NodeKind kind = NodeKind::other;
};

/// Closed time window [t_alpha, t_omega]. Lifetime is t_omega - t_alpha.
struct Interval {
  Time t_alpha = 0;
  Time t_omega = 0;

  Time lifetime() const { return t_omega - t_alpha; }
  bool contains(Time t) const { return t >= t_alpha && t <= t_omega; }
  bool operator==(const Interval&) const = default;
};

struct StaticEdgeSpec {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  Time duration = 1;
};

struct DynamicEdgeSpec {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  std::vector<Time> labels;
  Time duration = 1;
};

/// One underlying edge. Static edges carry no label list; their departures
/// are every t in [t_alpha, t_omega - duration].
struct Edge {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  Time duration = 1;
  bool is_static = true;
  std::vector<Time> labels;
};

struct BuildOptions {
  // A dynamic edge whose labels cover every departure slot is by definition
  // static. Default is to reject it; with this flag it is silently promoted.
  bool promote_full_dynamic = false;
};

/// Small dense set over node ids.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : bits_(universe, false) {}
  NodeSet(std::size_t universe, std::span<const NodeId> members);

  std::size_t universe() const { return bits_.size(); }
  bool contains(NodeId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < bits_.size() && bits_[v];
  }
  void insert(NodeId v);
  void erase(NodeId v);
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::vector<NodeId> members() const;

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

/// Temporal directed graph. Immutable once built.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  static TemporalGraph build(std::vector<Node> nodes,
                             std::vector<StaticEdgeSpec> static_edges,
                             std::vector<DynamicEdgeSpec> dynamic_edges,
                             Interval interval, BuildOptions options = {});

  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(NodeId v) const { return nodes_.at(static_cast<std::size_t>(v)); }
  std::span<const Node> nodes() const { return nodes_; }
  std::optional<NodeId> find(std::string_view name) const;
  NodeId require(std::string_view name) const;

  const Interval& interval() const { return interval_; }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }
  std::span<const std::uint32_t> out_edges(NodeId v) const { return out_[v]; }
  std::span<const std::uint32_t> in_edges(NodeId v) const { return in_[v]; }
  const Edge* find_edge(NodeId u, NodeId v) const;

  std::size_t static_edge_count() const { return static_count_; }
  std::size_t dynamic_edge_count() const { return edges_.size() - static_count_; }

  /// Departure labels of (u, v); throws GraphError when the edge is absent.
  std::vector<Time> time_labels(NodeId u, NodeId v) const;

  /// Earliest departure time t >= not_before on `e` with t + duration <= arrive_by.
  std::optional<Time> earliest_departure(const Edge& e, Time not_before,
                                         Time arrive_by) const;
  bool has_departure(const Edge& e, Time t) const;

  Time last_departure(const Edge& e) const { return interval_.t_omega - e.duration; }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index_;
  std::unordered_map<std::string, NodeId> by_name_;
  Interval interval_;
  std::size_t static_count_ = 0;
};

struct PathEdge {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  Time time = 0;
  Time duration = 1;

  Time arrival() const { return time + duration; }
  bool operator==(const PathEdge&) const = default;
};

/// Edge sequence with strictly increasing departures and no repeated vertex.
struct TemporalPath {
  std::vector<PathEdge> edges;

  bool empty() const { return edges.empty(); }
  std::size_t size() const { return edges.size(); }
  NodeId source() const { return edges.front().from; }
  NodeId target() const { return edges.back().to; }
  std::vector<NodeId> node_sequence() const;

  bool operator==(const TemporalPath&) const = default;
};

struct PathCheck {
  bool valid = true;
  std::optional<std::size_t> first_violation;
  std::string reason;

  explicit operator bool() const { return valid; }
};

PathCheck validate_path(const TemporalGraph& graph, const TemporalPath& path);

struct PathMetrics {
  Time start = 0;
  Time end = 0;
  Time duration = 0;
};

PathMetrics path_metrics(const TemporalPath& path);

struct Contact {
  NodeId node = kNoNode;
  Time arrival = 0;
  std::size_t edge_index = 0;  // index of the edge entering the contact node
};

/// First decoy hit along the path. The path's source never counts.
std::optional<Contact> first_contact(const TemporalPath& path, const NodeSet& cut);

/// Arrival at the path's end minus arrival at the first contact.
/// Throws GraphError when the path does not end at `da`.
std::optional<Time> response_time(const TemporalPath& path, const NodeSet& cut,
                                  NodeId da);

/// Induced subgraph on V \ removed. Surviving nodes are renumbered densely in
/// their original order; names and kinds are kept.
TemporalGraph remove_nodes(const TemporalGraph& graph, const NodeSet& removed,
                           NodeId protected_node = kNoNode);

}  // namespace decoyrt
