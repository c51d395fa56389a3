#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decoyrt/instance.hpp"
#include "decoyrt/reachability.hpp"

namespace decoyrt {

/// Static infrastructure graph before session edges are merged in.
struct Mould {
  std::vector<Node> nodes;
  std::vector<StaticEdgeSpec> edges;
  NodeId da = kNoNode;

  std::vector<NodeId> of_kind(NodeKind kind) const;
};

/// Reads the instance file format; dynamic edges must be absent or empty,
/// entries/blockable/budget are ignored.
Mould parse_mould(const std::string& text);
Mould load_mould(const std::filesystem::path& file);

struct AuthEvent {
  Time time = 0;  // seconds
  std::string user;
  std::string computer;
  std::optional<Time> end_time;
};

struct TraceLoad {
  std::vector<AuthEvent> events;  // sorted by time
  std::size_t malformed = 0;
  std::vector<std::string> errors;  // "line N: reason"
};

/// Integer seconds or ISO-8601 `YYYY-MM-DD[T ]HH:MM:SS[Z]` (UTC).
std::optional<Time> parse_timestamp(std::string_view text);

/// CSV with header `time,user,computer[,end_time]`.
TraceLoad parse_auth_trace(const std::string& text);
TraceLoad load_auth_trace(const std::filesystem::path& file);

struct SessionOptions {
  Time snapshot_interval = 3600;
  Time horizon = 1000;
  std::optional<Time> trace_start;  // defaults to the earliest event
  // Sessions without an end time last this long; defaults to one snapshot.
  std::optional<Time> default_session;
  // false: a session yields label k if it is alive at snapshot k's instant.
  // true: if it overlaps [instant, instant + interval).
  bool overlap = false;
};

/// Trace entity name -> mould node.
using EntityMapping = std::map<std::string, NodeId>;

/// Random injective mapping of trace users onto user nodes and trace
/// computers onto computer nodes. Throws GraphError when the mould has too
/// few nodes of either kind.
EntityMapping build_mapping(const std::vector<AuthEvent>& events, const Mould& mould, Rng& rng);

/// HasSession edges computer -> user, labels within [1, horizon].
std::vector<DynamicEdgeSpec> sessions_to_edges(const std::vector<AuthEvent>& events,
                                               const SessionOptions& options,
                                               const EntityMapping& mapping);

struct TraceParams {
  int users = 20;
  int computers = 20;
  int events = 200;
  double mean_session_snapshots = 4.0;
  Time snapshot_interval = 3600;
  Time horizon = 1000;
};

/// Uniform start times over the horizon, geometric session lengths (in
/// snapshots) with the configured mean.
std::vector<AuthEvent> synth_trace(const TraceParams& params, Rng& rng);

struct MouldParams {
  int users = 40;
  int computers = 20;
  int groups = 8;
  int admin_groups = 3;
  int admin_users = 3;
  double extra_edge_prob = 0.05;
};

/// AD-shaped static mould: users are members of groups, ordinary groups
/// administer computers, admin groups chain towards DA and only admin users
/// belong to them. Session edges are left to the trace.
Mould synth_mould(const MouldParams& params, Rng& rng);

struct FinalizeOptions {
  int entries = 10;
  double blockable_fraction = 0.9;
  double budget_factor = 1.5;
  Time horizon = 1000;  // interval becomes [1, horizon + 1]
};

/// Picks entries (users first), a random blockable subset and the budget
/// ceil(budget_factor * |minC|). Throws GraphError("instance undefendable")
/// when no blockable cut exists.
Instance finalize_instance(const Mould& mould, std::vector<DynamicEdgeSpec> dynamic_edges,
                           const FinalizeOptions& options, Rng& rng, std::string name = {});

/// Recomputes blockable/budget on an existing instance, keeping its graph
/// and entries.
Instance rebudget(const Instance& instance, double budget_factor);

// Named fixtures.
Instance fixture_f1();
Instance fixture_chain4();
Instance fixture_disjoint(int k);
Instance fixture_star_static_heavy(int n, Time t_max);

/// "F1", "chain4", "disjoint_k(K)", "star_static_heavy(N,T)".
Instance fixture(std::string_view name);

struct RandomInstanceParams {
  int nodes = 10;
  Time t_max = 10;
  double edge_prob = 0.25;
  double dynamic_share = 0.5;
  int max_labels = 3;
  int entries = 2;
  double blockable_fraction = 1.0;
};

/// Small random instance for property tests: node 0.. are entries, the last
/// node is DA, edges drawn independently.
Instance random_instance(const RandomInstanceParams& params, Rng& rng);

}  // namespace decoyrt
