#include "decoyrt/edo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "decoyrt/cut_solver.hpp"

namespace decoyrt {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::van_d: return "van_d";
    case Variant::van_v: return "van_v";
    case Variant::ilp_d: return "ilp_d";
    case Variant::ilp_v: return "ilp_v";
    case Variant::est_d: return "est_d";
    case Variant::est_v: return "est_v";
  }
  return "van_d";
}

Variant parse_variant(std::string_view text) {
  for (Variant v : {Variant::van_d, Variant::van_v, Variant::ilp_d, Variant::ilp_v, Variant::est_d,
                    Variant::est_v}) {
    if (text == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

bool uses_diversity(Variant v) {
  return v == Variant::van_d || v == Variant::ilp_d || v == Variant::est_d;
}

void validate(const OptimizerConfig& c) {
  if (c.population_size < 1) throw std::invalid_argument("population size must be positive");
  if (c.budget && *c.budget < 0) throw std::invalid_argument("budget must be non-negative");
  if (!(c.poisson_lambda > 0)) throw std::invalid_argument("poisson lambda must be positive");
  if (!(c.fitness_slack >= 0 && c.fitness_slack < 1)) {
    throw std::invalid_argument("fitness slack must lie in [0,1)");
  }
  if (c.local_batch < 1) throw std::invalid_argument("local batch must be positive");
  if (c.phi_paths_per_infeasible < 1) throw std::invalid_argument("phi paths per infeasible must be positive");
  if (c.phi_seed_paths < 0) throw std::invalid_argument("phi seed paths must be non-negative");
  if (c.max_iterations < 0) throw std::invalid_argument("max iterations must be non-negative");
  if (!(c.wallclock_limit_s > 0)) throw std::invalid_argument("wallclock limit must be positive");
  if (c.jobs < 1) throw std::invalid_argument("jobs must be positive");
}

std::size_t popcount(const std::vector<bool>& bits) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true));
}

namespace {

// x distinct indices from `pool`, uniformly, in draw order.
std::vector<std::size_t> choose(std::vector<std::size_t> pool, std::size_t x, Rng& rng) {
  x = std::min(x, pool.size());
  for (std::size_t i = 0; i < x; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(x);
  return pool;
}

std::vector<std::size_t> indices_where(const std::vector<bool>& bits, bool value) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == value) out.push_back(i);
  }
  return out;
}

int resolve_budget(const Instance& instance, const OptimizerConfig& config) {
  if (config.budget) return *config.budget;
  if (instance.budget) return *instance.budget;
  return static_cast<int>(instance.blockable.size());
}

}  // namespace

Population init_population(const Instance& instance, const OptimizerConfig& config, int budget,
                           Rng& rng) {
  const std::size_t n = instance.blockable.size();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  Population pop;
  for (int i = 0; i < config.population_size; ++i) {
    Individual ind;
    ind.bits.assign(n, false);
    for (auto idx : choose(all, static_cast<std::size_t>(std::max(budget, 0)), rng)) ind.bits[idx] = true;
    pop.push_back(std::move(ind));
  }
  return pop;
}

int sample_change_count(Rng& rng, double lambda, std::size_t cap) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  std::poisson_distribution<int> poisson(lambda);
  const int x = std::max(1, poisson(rng));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(x), cap));
}

void enforce_budget(std::vector<bool>& bits, int budget, Rng& rng) {
  const auto set = indices_where(bits, true);
  const auto limit = static_cast<std::size_t>(std::max(budget, 0));
  if (set.size() <= limit) return;
  for (auto idx : choose(set, set.size() - limit, rng)) bits[idx] = false;
}

Offspring mutate(const std::vector<bool>& parent, int flips, int budget, Rng& rng) {
  if (flips < 1) throw std::invalid_argument("mutation needs at least one flip");
  std::vector<std::size_t> all(parent.size());
  std::iota(all.begin(), all.end(), 0);
  Offspring o{parent, std::vector<bool>(parent.size(), false)};
  for (auto idx : choose(all, static_cast<std::size_t>(flips), rng)) {
    o.bits[idx] = !o.bits[idx];
    o.changed[idx] = true;
  }
  enforce_budget(o.bits, budget, rng);
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (o.bits[i] != parent[i]) o.changed[i] = true;
  }
  return o;
}

std::pair<Offspring, Offspring> crossover(const std::vector<bool>& first,
                                          const std::vector<bool>& second, int flips, int budget,
                                          Rng& rng) {
  if (first.size() != second.size()) throw std::invalid_argument("crossover parents differ in length");
  std::vector<std::size_t> zero_one, one_zero;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (!first[i] && second[i]) zero_one.push_back(i);
    if (first[i] && !second[i]) one_zero.push_back(i);
  }
  const auto x = static_cast<std::size_t>(std::max(flips, 0));
  auto a = choose(zero_one, x, rng);
  auto b = choose(one_zero, x, rng);
  Offspring o1{first, std::vector<bool>(first.size(), false)};
  Offspring o2{second, std::vector<bool>(second.size(), false)};
  for (auto idx : a) {
    o1.bits[idx] = !o1.bits[idx];
    o2.bits[idx] = !o2.bits[idx];
  }
  for (auto idx : b) {
    o1.bits[idx] = !o1.bits[idx];
    o2.bits[idx] = !o2.bits[idx];
  }
  enforce_budget(o1.bits, budget, rng);
  enforce_budget(o2.bits, budget, rng);
  for (std::size_t i = 0; i < first.size(); ++i) {
    o1.changed[i] = o1.bits[i] != first[i];
    o2.changed[i] = o2.bits[i] != second[i];
  }
  for (auto idx : a) o1.changed[idx] = o2.changed[idx] = true;
  for (auto idx : b) o1.changed[idx] = o2.changed[idx] = true;
  return {std::move(o1), std::move(o2)};
}

std::vector<int> diversity_counts(const Population& population) {
  std::vector<int> cnt(population.empty() ? 0 : population.front().bits.size(), 0);
  for (const auto& p : population) {
    for (std::size_t i = 0; i < p.bits.size(); ++i) cnt[i] += p.bits[i] ? 1 : 0;
  }
  return cnt;
}

std::int64_t diversity_contribution(std::span<const int> counts, const std::vector<bool>& bits) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) s += counts[i];
  }
  return s;
}

namespace {

std::size_t best_index(const Population& pop) {
  std::size_t b = 0;
  for (std::size_t i = 1; i < pop.size(); ++i) {
    if (pop[i].fitness > pop[b].fitness) b = i;
  }
  return b;
}

Fitness best_fitness(const Population& pop) {
  return pop.empty() ? 0 : pop[best_index(pop)].fitness;
}

// Admission gate: within slack of the best, measured on |best| so that
// negative penalty values tighten towards the best as well.
bool near_best(Fitness f, Fitness best, double slack) {
  const long double b = static_cast<long double>(best);
  const long double threshold = b - static_cast<long double>(slack) * std::fabs(b);
  return static_cast<long double>(f) >= threshold;
}

}  // namespace

bool accept_reject_edo(Population& population, Individual offspring, double slack,
                       std::size_t capacity) {
  if (population.size() < capacity) {
    population.push_back(std::move(offspring));
    return true;
  }
  const Fitness best = best_fitness(population);
  if (offspring.fitness <= best && !near_best(offspring.fitness, best, slack)) return false;

  population.push_back(std::move(offspring));
  const std::size_t keep = best_index(population);
  const Fitness new_best = population[keep].fitness;
  const auto counts = diversity_counts(population);

  // Individuals that fell out of the admission band go first, worst first;
  // otherwise the least distinctive one is removed.
  struct Key {
    bool below;
    Fitness fitness;
    std::int64_t contribution;
    std::int64_t birth;
  };
  auto key = [&](std::size_t i) {
    const auto& p = population[i];
    return Key{!near_best(p.fitness, new_best, slack), p.fitness,
               diversity_contribution(counts, p.bits), p.birth};
  };
  auto evict_before = [](const Key& a, const Key& b) {
    if (a.below != b.below) return a.below;
    if (a.below && a.fitness != b.fitness) return a.fitness < b.fitness;
    if (a.contribution != b.contribution) return a.contribution > b.contribution;
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.birth < b.birth;
  };
  std::size_t victim = population.size();
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (i == keep) continue;
    if (victim == population.size() || evict_before(key(i), key(victim))) victim = i;
  }
  population.erase(population.begin() + static_cast<std::ptrdiff_t>(victim));
  return true;
}

bool accept_reject_vec(Population& population, Individual offspring, std::size_t capacity) {
  population.push_back(std::move(offspring));
  if (population.size() <= capacity) return true;
  const std::size_t keep = best_index(population);
  const auto counts = diversity_counts(population);
  std::size_t victim = population.size();
  std::int64_t victim_contribution = 0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (i == keep) continue;
    const auto c = diversity_contribution(counts, population[i].bits);
    if (victim == population.size()) {
      victim = i;
      victim_contribution = c;
      continue;
    }
    const auto& p = population[i];
    const auto& v = population[victim];
    bool better = false;
    if (p.fitness != v.fitness) {
      better = p.fitness < v.fitness;
    } else if (c != victim_contribution) {
      better = c > victim_contribution;
    } else {
      better = p.birth < v.birth;
    }
    if (better) {
      victim = i;
      victim_contribution = c;
    }
  }
  const bool offspring_survived = victim != population.size() - 1;
  population.erase(population.begin() + static_cast<std::ptrdiff_t>(victim));
  return offspring_survived;
}

bool PathPool::add(TemporalPath path) {
  if (!keys_.insert(path.node_sequence()).second) return false;
  paths_.push_back(std::move(path));
  return true;
}

FitnessReport FitnessEvaluator::operator()(const std::vector<bool>& bits) {
  ++calls_;
  return fitness_full(instance_, instance_.cut_from_bits(bits), mode_);
}

std::vector<FitnessReport> FitnessEvaluator::evaluate(const std::vector<std::vector<bool>>& batch) {
  std::vector<FitnessReport> out(batch.size());
  calls_ += batch.size();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs_), batch.size());
  auto work = [&](std::size_t begin) {
    for (std::size_t i = begin; i < batch.size(); i += std::max<std::size_t>(workers, 1)) {
      out[i] = fitness_full(instance_, instance_.cut_from_bits(batch[i]), mode_);
    }
  };
  if (workers <= 1) {
    work(0);
    return out;
  }
  std::vector<std::jthread> threads;
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
  threads.clear();  // joins
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  Run(const Instance& instance, const OptimizerConfig& config)
      : instance_(instance), config_(config), rng_(config.seed), start_(Clock::now()) {
    validate(config);
    result_.variant = config.variant;
    result_.budget = resolve_budget(instance, config);
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

  bool should_stop(std::int64_t iteration) const {
    if (iteration > config_.max_iterations) return true;
    if (config_.target_fitness && result_.best_value >= *config_.target_fitness) return true;
    return elapsed_ms() > config_.wallclock_limit_s * 1000.0;
  }

  void record(std::int64_t iteration, Fitness best) {
    if (!result_.history.empty() && result_.history.back().best == best) return;
    HistoryPoint h{iteration, elapsed_ms(), best};
    result_.history.push_back(h);
    result_.best_value = best;
    result_.last_improvement = h;
  }

  void note_feasible(std::int64_t iteration) {
    if (!result_.first_feasible_iteration) result_.first_feasible_iteration = iteration;
    result_.any_feasible = true;
  }

  const Instance& instance_;
  const OptimizerConfig& config_;
  Rng rng_;
  Clock::time_point start_;
  RunResult result_;
};

bool offer(Variant variant, Population& pop, Individual ind, const OptimizerConfig& config) {
  const auto cap = static_cast<std::size_t>(config.population_size);
  return uses_diversity(variant) ? accept_reject_edo(pop, std::move(ind), config.fitness_slack, cap)
                                 : accept_reject_vec(pop, std::move(ind), cap);
}

// One generation step: mutation or crossover with probability 1/2 each.
std::vector<Offspring> breed(const Population& pop, const OptimizerConfig& config, int budget,
                             Rng& rng) {
  const std::size_t n = pop.front().bits.size();
  if (n == 0) return {};
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  const bool use_crossover = pop.size() >= 2 && coin(rng);
  const int x = sample_change_count(rng, config.poisson_lambda, n);
  if (!use_crossover) return {mutate(pop[pick(rng)].bits, x, budget, rng)};
  const std::size_t i = pick(rng);
  std::size_t j = pick(rng);
  while (j == i) j = pick(rng);
  auto [a, b] = crossover(pop[i].bits, pop[j].bits, x, budget, rng);
  return {std::move(a), std::move(b)};
}

bool is_feasible(const FitnessReport& r) { return r.status == FitnessStatus::feasible; }

RunResult evolve(const Instance& instance, const OptimizerConfig& config, bool with_repair) {
  Run run(instance, config);
  const int budget = run.result_.budget;
  FitnessEvaluator evaluate(instance, config.fitness_mode, config.jobs);
  auto& res = run.result_;

  auto fix = [&](std::vector<bool>& bits, const std::vector<bool>& changed,
                 FitnessReport& report) -> bool {
    if (!with_repair || report.feasible()) return true;
    ++res.counters.repair_calls;
    auto r = repair(instance, bits, changed, budget, run.rng_);
    if (r.infeasible) {
      ++res.counters.repair_failures;
      return false;
    }
    bits = std::move(r.bits);
    report = evaluate(bits);
    return true;
  };

  Population pop = init_population(instance, config, budget, run.rng_);
  std::vector<std::vector<bool>> batch;
  for (const auto& p : pop) batch.push_back(p.bits);
  auto reports = evaluate.evaluate(batch);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    fix(pop[i].bits, std::vector<bool>(pop[i].bits.size(), false), reports[i]);
    pop[i].fitness = reports[i].value;
    if (is_feasible(reports[i])) run.note_feasible(0);
  }
  run.record(0, best_fitness(pop));

  std::int64_t it = 1;
  for (; !run.should_stop(it); ++it) {
    for (auto& child : breed(pop, config, budget, run.rng_)) {
      auto report = evaluate(child.bits);
      if (!fix(child.bits, child.changed, report)) continue;
      const bool feasible = is_feasible(report);
      if (offer(config.variant, pop, Individual{std::move(child.bits), report.value, it}, config) &&
          feasible) {
        run.note_feasible(it);
      }
    }
    run.record(it, best_fitness(pop));
  }
  res.iterations = it - 1;
  res.population = std::move(pop);
  res.counters.fitness_calls = evaluate.calls();
  return std::move(res);
}

bool locally_feasible(const Population& pop) {
  return std::all_of(pop.begin(), pop.end(), [](const Individual& p) { return p.fitness >= 0; });
}

void rescore_local(const Instance& instance, SurrogateState& state) {
  for (auto& p : state.local) {
    p.fitness = surrogate_fitness(instance, instance.cut_from_bits(p.bits), state.pool.paths());
    ++state.counters.surrogate_calls;
  }
}

}  // namespace

void local_search(const Instance& instance, SurrogateState& state, const OptimizerConfig& config,
                  int budget, std::int64_t iteration, Rng& rng) {
  if (state.local.empty()) return;
  for (auto& child : breed(state.local, config, budget, rng)) {
    const Fitness f = surrogate_fitness(instance, instance.cut_from_bits(child.bits), state.pool.paths());
    ++state.counters.surrogate_calls;
    offer(config.variant, state.local, Individual{std::move(child.bits), f, iteration}, config);
  }
}

std::vector<FitnessReport> global_search(const Instance&, SurrogateState& state,
                                         const OptimizerConfig& config, std::int64_t iteration,
                                         FitnessEvaluator& evaluate) {
  std::vector<std::vector<bool>> batch;
  for (const auto& p : state.local) batch.push_back(p.bits);
  auto reports = evaluate.evaluate(batch);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    offer(config.variant, state.global, Individual{batch[i], reports[i].value, iteration}, config);
  }
  ++state.counters.global_rounds;
  return reports;
}

std::size_t update_pool(const Instance& instance, SurrogateState& state,
                        std::span<const FitnessReport> reports, const OptimizerConfig& config,
                        Rng& rng) {
  std::size_t added = 0;
  for (std::size_t i = 0; i < reports.size() && i < state.local.size(); ++i) {
    const auto& r = reports[i];
    if (r.status == FitnessStatus::feasible) {
      if (r.witness && r.witness->response_time) added += state.pool.add(r.witness->full_path()) ? 1 : 0;
    } else if (r.status == FitnessStatus::infeasible) {
      const NodeSet cut = instance.cut_from_bits(state.local[i].bits);
      for (int k = 0; k < config.phi_paths_per_infeasible; ++k) {
        auto path = random_temporal_path(instance.graph, instance.entries, instance.da,
                                         instance.interval(), rng, &cut);
        if (path) added += state.pool.add(std::move(*path)) ? 1 : 0;
      }
    }
  }
  return added;
}

RunResult run_vanilla(const Instance& instance, const OptimizerConfig& config) {
  if (config.variant != Variant::van_d && config.variant != Variant::van_v) {
    throw std::invalid_argument("run_vanilla needs van_d or van_v");
  }
  return evolve(instance, config, false);
}

RunResult run_ilp_repair(const Instance& instance, const OptimizerConfig& config) {
  if (config.variant != Variant::ilp_d && config.variant != Variant::ilp_v) {
    throw std::invalid_argument("run_ilp_repair needs ilp_d or ilp_v");
  }
  return evolve(instance, config, true);
}

RunResult run_surrogate(const Instance& instance, const OptimizerConfig& config) {
  if (config.variant != Variant::est_d && config.variant != Variant::est_v) {
    throw std::invalid_argument("run_surrogate needs est_d or est_v");
  }
  Run run(instance, config);
  auto& res = run.result_;
  const int budget = res.budget;
  FitnessEvaluator evaluate(instance, config.fitness_mode, config.jobs);

  SurrogateState state;
  state.local = init_population(instance, config, budget, run.rng_);
  for (int i = 0; i < config.phi_seed_paths; ++i) {
    auto path = random_temporal_path(instance.graph, instance.entries, instance.da,
                                     instance.interval(), run.rng_);
    if (path) state.pool.add(std::move(*path));
  }
  rescore_local(instance, state);
  run.record(0, 0);

  auto global_step = [&](std::int64_t it) {
    const auto reports = global_search(instance, state, config, it, evaluate);
    if (std::any_of(reports.begin(), reports.end(), is_feasible)) {
      run.note_feasible(it);
      if (!res.first_feasible_round) res.first_feasible_round = state.counters.global_rounds;
    }
    if (update_pool(instance, state, reports, config, run.rng_) > 0) rescore_local(instance, state);
  };

  std::int64_t since_global = 0;
  std::int64_t it = 1;
  for (; !run.should_stop(it); ++it) {
    local_search(instance, state, config, budget, it, run.rng_);
    if (++since_global >= config.local_batch && locally_feasible(state.local)) {
      global_step(it);
      since_global = 0;
    }
    run.record(it, best_fitness(state.global));
  }
  res.iterations = it - 1;
  // A run that never reached a global step reports its local population.
  if (state.global.empty()) global_step(res.iterations);
  run.record(res.iterations, best_fitness(state.global));

  res.population = std::move(state.global);
  res.pool_size = state.pool.size();
  res.counters.surrogate_calls = state.counters.surrogate_calls;
  res.counters.global_rounds = state.counters.global_rounds;
  res.counters.fitness_calls = evaluate.calls();
  return std::move(res);
}

RunResult run_optimizer(const Instance& instance, const OptimizerConfig& config) {
  switch (config.variant) {
    case Variant::van_d:
    case Variant::van_v: return run_vanilla(instance, config);
    case Variant::ilp_d:
    case Variant::ilp_v: return run_ilp_repair(instance, config);
    case Variant::est_d:
    case Variant::est_v: return run_surrogate(instance, config);
  }
  return run_vanilla(instance, config);
}

}  // namespace decoyrt
