#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "decoyrt/temporal_graph.hpp"

namespace decoyrt {

/// One defense problem: graph, attacker footholds, target, decoy-eligible
/// nodes and the decoy budget.
struct Instance {
  std::string name;
  TemporalGraph graph;
  std::vector<NodeId> entries;
  NodeId da = kNoNode;
  std::vector<NodeId> blockable;  // ascending node ids
  std::optional<int> budget;

  const Interval& interval() const { return graph.interval(); }
  std::size_t node_count() const { return graph.node_count(); }

  NodeSet blockable_set() const { return NodeSet(node_count(), blockable); }
  bool is_blockable(NodeId v) const;
  /// Position of v in `blockable`, or -1.
  int blockable_index(NodeId v) const;

  /// Node set from a blockable-indexed bit vector.
  NodeSet cut_from_bits(const std::vector<bool>& bits) const;
  std::vector<bool> bits_from_cut(const NodeSet& cut) const;
};

/// Checks the cross-field invariants (entries and DA exist and are not
/// blockable, exactly one domain_admin node, DA has that kind) and returns
/// the instance with `blockable` sorted. Throws GraphError.
Instance make_instance(std::string name, TemporalGraph graph, std::vector<NodeId> entries,
                       NodeId da, std::vector<NodeId> blockable,
                       std::optional<int> budget = std::nullopt);

struct Diagnostic {
  std::string path;  // JSON pointer to the offending record
  std::string message;
};

/// Collects every invariant violation in an instance document without
/// stopping at the first one.
std::vector<Diagnostic> diagnose_instance_text(const std::string& text);

Instance parse_instance(const std::string& text, std::string name = {});
std::string serialize_instance(const Instance& instance);

Instance load_instance(const std::filesystem::path& file);
void save_instance(const Instance& instance, const std::filesystem::path& file);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& instance);

}  // namespace decoyrt
