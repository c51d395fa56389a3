#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decoyrt/attacker.hpp"
#include "decoyrt/instance.hpp"
#include "decoyrt/reachability.hpp"

namespace decoyrt {

/// VAN: plain evolution on the full fitness. ILP: infeasible offspring are
/// repaired. EST: surrogate-assisted local search with periodic global
/// evaluation. Suffix D keeps a diverse population, V evicts the worst.
enum class Variant { van_d, van_v, ilp_d, ilp_v, est_d, est_v };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);
bool uses_diversity(Variant v);

struct OptimizerConfig {
  Variant variant = Variant::van_d;
  int population_size = 10;
  std::optional<int> budget;  // falls back to the instance budget
  double poisson_lambda = 1.0;
  double fitness_slack = 0.1;  // admit offspring within (1 - slack) of the best
  int local_batch = 1000;      // local iterations between global checks
  int phi_paths_per_infeasible = 1;
  int phi_seed_paths = 5;
  std::int64_t max_iterations = 2'000'000;
  double wallclock_limit_s = 24 * 3600.0;
  std::uint64_t seed = 1;
  std::optional<Fitness> target_fitness;  // stop once reached
  // alg1 overrates placements that stack decoys along one branch, which the
  // search learns to exploit; exact scores the true attacker minimum.
  AttackMode fitness_mode = AttackMode::exact;
  int jobs = 1;
};

/// Throws std::invalid_argument on out-of-range knobs.
void validate(const OptimizerConfig& config);

struct Individual {
  std::vector<bool> bits;  // one per blockable node
  Fitness fitness = 0;
  std::int64_t birth = 0;
};

using Population = std::vector<Individual>;

std::size_t popcount(const std::vector<bool>& bits);

/// Offspring plus the positions that differ from its parent.
struct Offspring {
  std::vector<bool> bits;
  std::vector<bool> changed;
};

Population init_population(const Instance& instance, const OptimizerConfig& config, int budget,
                           Rng& rng);

/// max(1, Poisson(lambda)) capped at `cap`.
int sample_change_count(Rng& rng, double lambda, std::size_t cap);

/// Clears uniformly random set bits until at most `budget` remain.
void enforce_budget(std::vector<bool>& bits, int budget, Rng& rng);

Offspring mutate(const std::vector<bool>& parent, int flips, int budget, Rng& rng);

std::pair<Offspring, Offspring> crossover(const std::vector<bool>& first,
                                          const std::vector<bool>& second, int flips, int budget,
                                          Rng& rng);

/// cnt[i] = number of individuals blocking position i.
std::vector<int> diversity_counts(const Population& population);

/// Sum of cnt over the individual's set bits. Lower means more distinctive.
std::int64_t diversity_contribution(std::span<const int> counts, const std::vector<bool>& bits);

/// Diversity-preserving acceptance. Returns true when the offspring was
/// admitted (it may still be the one evicted).
bool accept_reject_edo(Population& population, Individual offspring, double slack,
                       std::size_t capacity);

/// Value-based acceptance: admit, then evict the lowest fitness.
bool accept_reject_vec(Population& population, Individual offspring, std::size_t capacity);

/// Deduplicated pool of attack paths keyed by node sequence.
class PathPool {
 public:
  bool add(TemporalPath path);
  std::span<const TemporalPath> paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }

 private:
  std::vector<TemporalPath> paths_;
  std::set<std::vector<NodeId>> keys_;
};

struct HistoryPoint {
  std::int64_t iteration = 0;
  double wallclock_ms = 0;
  Fitness best = 0;
};

struct RunCounters {
  std::uint64_t fitness_calls = 0;
  std::uint64_t surrogate_calls = 0;
  std::uint64_t repair_calls = 0;
  std::uint64_t repair_failures = 0;
  std::uint64_t global_rounds = 0;
};

struct RunResult {
  Variant variant = Variant::van_d;
  int budget = 0;
  Population population;
  Fitness best_value = 0;
  std::vector<HistoryPoint> history;
  HistoryPoint last_improvement;
  std::int64_t iterations = 0;
  RunCounters counters;
  std::optional<std::int64_t> first_feasible_iteration;
  std::optional<std::uint64_t> first_feasible_round;  // EST: global rounds
  std::size_t pool_size = 0;
  bool any_feasible = false;
};

/// Counts and evaluates full fitness, optionally across threads; results
/// come back in input order.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const Instance& instance, AttackMode mode, int jobs = 1)
      : instance_(instance), mode_(mode), jobs_(jobs) {}

  FitnessReport operator()(const std::vector<bool>& bits);
  std::vector<FitnessReport> evaluate(const std::vector<std::vector<bool>>& batch);
  std::uint64_t calls() const { return calls_; }

 private:
  const Instance& instance_;
  AttackMode mode_;
  int jobs_;
  std::uint64_t calls_ = 0;
};

RunResult run_vanilla(const Instance& instance, const OptimizerConfig& config);
RunResult run_ilp_repair(const Instance& instance, const OptimizerConfig& config);
RunResult run_surrogate(const Instance& instance, const OptimizerConfig& config);
RunResult run_optimizer(const Instance& instance, const OptimizerConfig& config);

// Building blocks of the surrogate loop, exposed for testing.

struct SurrogateState {
  Population local;
  Population global;
  PathPool pool;
  RunCounters counters;
};

/// One mutation-or-crossover step on the local population scored with the
/// surrogate.
void local_search(const Instance& instance, SurrogateState& state, const OptimizerConfig& config,
                  int budget, std::int64_t iteration, Rng& rng);

/// Full evaluation of every local individual, offered to the global
/// population. Returns the reports in local-population order.
std::vector<FitnessReport> global_search(const Instance& instance, SurrogateState& state,
                                         const OptimizerConfig& config, std::int64_t iteration,
                                         FitnessEvaluator& evaluate);

/// Feasible individuals contribute their optimal attack path; infeasible
/// ones contribute random paths that avoid them. Returns paths added.
std::size_t update_pool(const Instance& instance, SurrogateState& state,
                        std::span<const FitnessReport> reports, const OptimizerConfig& config,
                        Rng& rng);

}  // namespace decoyrt
