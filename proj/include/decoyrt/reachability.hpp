#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "decoyrt/instance.hpp"
#include "decoyrt/temporal_graph.hpp"

namespace decoyrt {

using Rng = std::mt19937_64;

/// Earliest arrival per node plus the predecessor edge used to get there.
struct ArrivalMap {
  struct Pred {
    NodeId node = kNoNode;
    Time departure = 0;
    Time duration = 1;
  };

  std::vector<Time> arrival;  // kUnreached when absent
  std::vector<Pred> pred;     // node == kNoNode for sources and unreached nodes

  explicit ArrivalMap(std::size_t n = 0) : arrival(n, kUnreached), pred(n) {}

  bool reached(NodeId v) const { return arrival[v] != kUnreached; }
  Time at(NodeId v) const;
  std::size_t reached_count() const;
  bool operator==(const ArrivalMap& o) const { return arrival == o.arrival; }
};

/// Operation counters; `relaxations` counts underlying edges examined by the
/// priority-queue search, `scans` counts edge-stream entries visited.
struct SearchStats {
  std::uint64_t relaxations = 0;
  std::uint64_t scans = 0;
  std::uint64_t pops = 0;
};

/// Dijkstra-style earliest arrival from a source set over `query`.
/// Nodes in `excluded` are treated as absent (sources included).
ArrivalMap ea_dijkstra(const TemporalGraph& graph, std::span<const NodeId> sources,
                       const Interval& query, const NodeSet* excluded = nullptr,
                       SearchStats* stats = nullptr);

struct StreamEdge {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  Time time = 0;
  Time duration = 1;
};

/// Every (u, v, t) departure in `query`, ascending by t, static edges
/// expanded once per slot.
using EdgeStream = std::vector<StreamEdge>;

EdgeStream edge_stream(const TemporalGraph& graph, const Interval& query);

/// One-pass edge-stream earliest arrival.
ArrivalMap ea_wu(const TemporalGraph& graph, std::span<const NodeId> sources,
                 const Interval& query, const NodeSet* excluded = nullptr,
                 SearchStats* stats = nullptr);
ArrivalMap ea_wu(const EdgeStream& stream, std::size_t node_count,
                 std::span<const NodeId> sources, const Interval& query,
                 const NodeSet* excluded = nullptr, SearchStats* stats = nullptr);

/// Exhaustive search over the (node, time) product graph. Test oracle.
inline constexpr std::uint64_t kDefaultOracleCap = 4'000'000;
ArrivalMap ea_bruteforce(const TemporalGraph& graph, std::span<const NodeId> sources,
                         const Interval& query, std::uint64_t cap = kDefaultOracleCap);

/// Witness path ending at `v`; empty when v is a source. Throws GraphError
/// when v is unreached.
TemporalPath reconstruct_path(const ArrivalMap& arrivals, NodeId v);

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationCaps {
  std::size_t max_paths = 200'000;
  std::size_t max_length = 64;
};

/// Every vertex-simple temporal (s, d)-path inside `query`, each with every
/// admissible label combination, in lexicographic (node id, time) order.
std::vector<TemporalPath> enumerate_temporal_paths(const TemporalGraph& graph, NodeId s,
                                                   NodeId d, const Interval& query,
                                                   const EnumerationCaps& caps = {},
                                                   const NodeSet* excluded = nullptr);

/// Randomized temporal DFS: successors are shuffled, each hop leaves at the
/// earliest admissible departure, dead ends backtrack. Returns nullopt iff
/// `d` is unreachable from every source.
std::optional<TemporalPath> random_temporal_path(const TemporalGraph& graph,
                                                 std::span<const NodeId> sources, NodeId d,
                                                 const Interval& query, Rng& rng,
                                                 const NodeSet* excluded = nullptr);

/// True iff no temporal path from any entry reaches DA once `cut` is removed.
bool is_temporal_cut(const Instance& instance, const NodeSet& cut);

/// DA reachable from the entries with no decoys placed.
bool target_reachable(const Instance& instance);

}  // namespace decoyrt
