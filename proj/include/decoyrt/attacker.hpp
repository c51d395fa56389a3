#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "decoyrt/instance.hpp"
#include "decoyrt/reachability.hpp"

namespace decoyrt {

using Fitness = std::int64_t;
inline constexpr Fitness kInfiniteFitness = std::numeric_limits<Fitness>::max();

/// How the attacker's best response is computed.
///  alg1       : per-decoy search with the other decoys removed for the whole
///               path, so the suffix after first contact avoids every decoy.
///  exact      : same prefix search, suffix on the full graph. Polynomial and
///               equal to the path-enumeration minimum.
///  exhaustive : literal minimum over enumerated temporal paths.
enum class AttackMode { alg1, exact, exhaustive };

std::string_view to_string(AttackMode mode);
AttackMode parse_attack_mode(std::string_view text);

enum class AttackStatus {
  optimal,            // response_time holds the attacker's minimum
  not_a_cut,          // some path avoids every decoy
  unreachable,        // DA unreachable even without decoys
  no_single_contact,  // alg1 only: every path meets a second decoy after the first
};

std::string_view to_string(AttackStatus status);

struct AttackReport {
  AttackStatus status = AttackStatus::not_a_cut;
  AttackMode mode = AttackMode::alg1;
  std::optional<Time> response_time;
  TemporalPath prefix;  // entry -> first contact
  TemporalPath suffix;  // first contact -> DA
  NodeId contact = kNoNode;
  Time contact_time = 0;

  bool feasible() const { return status != AttackStatus::not_a_cut; }
  TemporalPath full_path() const;
};

/// Exact set of times at which `c` can be entered for the first time by a
/// path from `sources` that avoids `excluded` (c itself is never passed
/// through earlier). Includes query start when c is a source.
std::vector<Time> achievable_arrivals(const TemporalGraph& graph, std::span<const NodeId> sources,
                                      NodeId c, const Interval& query,
                                      const NodeSet* excluded = nullptr);

AttackReport optimal_attack_alg1(const Instance& instance, const NodeSet& cut);
AttackReport optimal_attack_exact(const Instance& instance, const NodeSet& cut);
AttackReport optimal_attack_exhaustive(const Instance& instance, const NodeSet& cut,
                                       const EnumerationCaps& caps = {});
AttackReport optimal_attack(const Instance& instance, const NodeSet& cut, AttackMode mode,
                            const EnumerationCaps& caps = {});

enum class FitnessStatus { feasible, infeasible, vacuous };

std::string_view to_string(FitnessStatus status);

struct FitnessReport {
  Fitness value = 0;
  FitnessStatus status = FitnessStatus::infeasible;
  std::optional<AttackReport> witness;
  // alg1 found no single-contact attack and the exact value was used.
  bool fell_back = false;

  bool feasible() const { return status != FitnessStatus::infeasible; }
};

/// Defender objective: attacker's minimal response time if `cut` separates
/// the entries from DA, 0 otherwise. Unreachable DA reports `vacuous` with 0.
FitnessReport fitness_full(const Instance& instance, const NodeSet& cut,
                           AttackMode mode = AttackMode::alg1);

/// Penalized estimate over a path pool: minimum response time when every
/// path touches the cut, else minus the number of untouched paths. An empty
/// pool yields kInfiniteFitness.
Fitness surrogate_fitness(const Instance& instance, const NodeSet& cut,
                          std::span<const TemporalPath> pool);

/// Removes cycles from a time-respecting walk, keeping the first arrival at
/// each repeated vertex.
TemporalPath simplify_walk(const TemporalPath& walk);

}  // namespace decoyrt
