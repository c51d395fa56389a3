#include "decoyrt/report.hpp"

#include <cstdio>
#include <sstream>

namespace decoyrt {

using json = nlohmann::json;

std::string format_path(const Instance& instance, const TemporalPath& path) {
  if (path.empty()) return "(empty)";
  const auto& g = instance.graph;
  std::ostringstream os;
  os << g.node(path.source()).name << "@" << path.edges.front().time;
  for (const auto& e : path.edges) os << " -> " << g.node(e.to).name << "@" << e.arrival();
  return os.str();
}

NodeSet parse_placement(const Instance& instance, std::string_view names) {
  NodeSet cut(instance.node_count());
  while (!names.empty()) {
    const auto comma = names.find(',');
    auto token = names.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      const NodeId v = instance.graph.require(token);
      if (!instance.is_blockable(v)) throw GraphError("node '" + std::string(token) + "' is not blockable");
      cut.insert(v);
    }
    if (comma == std::string_view::npos) break;
    names.remove_prefix(comma + 1);
  }
  return cut;
}

std::string format_attack(const Instance& instance, const NodeSet& cut, const AttackReport& attack,
                          const FitnessReport& fitness) {
  const auto& g = instance.graph;
  std::ostringstream os;
  os << "placement:";
  for (NodeId v : cut.members()) os << " " << g.node(v).name;
  os << "\nmode: " << to_string(attack.mode) << "\n";
  os << "status: " << to_string(attack.status) << "\n";
  os << "feasible: " << (fitness.feasible() ? "true" : "false") << "\n";
  os << "response_time: " << fitness.value << "\n";
  if (fitness.fell_back) os << "note: no single-contact attack; exact suffix value used\n";
  const AttackReport& w = fitness.witness ? *fitness.witness : attack;
  if (w.status == AttackStatus::optimal) {
    os << "contact: " << g.node(w.contact).name << "@" << w.contact_time << "\n";
    os << "path: " << format_path(instance, w.full_path()) << "\n";
  } else if (w.status == AttackStatus::not_a_cut && !w.prefix.empty()) {
    os << "evading_path: " << format_path(instance, w.prefix) << "\n";
  }
  return os.str();
}

json config_to_json(const OptimizerConfig& c) {
  json j;
  j["variant"] = std::string(to_string(c.variant));
  j["population_size"] = c.population_size;
  j["budget"] = c.budget ? json(*c.budget) : json(nullptr);
  j["poisson_lambda"] = c.poisson_lambda;
  j["fitness_slack"] = c.fitness_slack;
  j["local_batch"] = c.local_batch;
  j["phi_paths_per_infeasible"] = c.phi_paths_per_infeasible;
  j["phi_seed_paths"] = c.phi_seed_paths;
  j["max_iterations"] = c.max_iterations;
  j["wallclock_limit_s"] = c.wallclock_limit_s;
  j["seed"] = c.seed;
  j["target_fitness"] = c.target_fitness ? json(*c.target_fitness) : json(nullptr);
  j["fitness_mode"] = std::string(to_string(c.fitness_mode));
  j["jobs"] = c.jobs;
  return j;
}

OptimizerConfig config_from_json(const json& doc, OptimizerConfig c) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "variant") c.variant = parse_variant(v.get<std::string>());
    else if (key == "population_size") c.population_size = v.get<int>();
    else if (key == "budget") c.budget = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
    else if (key == "poisson_lambda") c.poisson_lambda = v.get<double>();
    else if (key == "fitness_slack") c.fitness_slack = v.get<double>();
    else if (key == "local_batch") c.local_batch = v.get<int>();
    else if (key == "phi_paths_per_infeasible") c.phi_paths_per_infeasible = v.get<int>();
    else if (key == "phi_seed_paths") c.phi_seed_paths = v.get<int>();
    else if (key == "max_iterations") c.max_iterations = v.get<std::int64_t>();
    else if (key == "wallclock_limit_s") c.wallclock_limit_s = v.get<double>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "target_fitness") c.target_fitness = v.is_null() ? std::nullopt : std::optional<Fitness>(v.get<Fitness>());
    else if (key == "fitness_mode") c.fitness_mode = parse_attack_mode(v.get<std::string>());
    else if (key == "jobs") c.jobs = v.get<int>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return c;
}

json result_to_json(const Instance& instance, const RunResult& r, const OptimizerConfig& config) {
  const auto& g = instance.graph;
  json j;
  j["instance"] = instance.name;
  j["variant"] = std::string(to_string(r.variant));
  j["seed"] = config.seed;
  j["budget"] = r.budget;
  j["best_value"] = r.best_value;
  j["status"] = r.any_feasible ? "feasible_found" : "no_feasible_solution";
  j["iterations"] = r.iterations;
  j["last_improvement_iteration"] = r.last_improvement.iteration;
  j["first_feasible_iteration"] = r.first_feasible_iteration ? json(*r.first_feasible_iteration) : json(nullptr);
  j["first_feasible_global_round"] = r.first_feasible_round ? json(*r.first_feasible_round) : json(nullptr);
  j["counters"] = {{"fitness_calls", r.counters.fitness_calls},
                   {"surrogate_calls", r.counters.surrogate_calls},
                   {"repair_calls", r.counters.repair_calls},
                   {"repair_failures", r.counters.repair_failures},
                   {"global_rounds", r.counters.global_rounds}};
  j["path_pool_size"] = r.pool_size;
  json pop = json::array();
  for (const auto& p : r.population) {
    json names = json::array();
    for (NodeId v : instance.cut_from_bits(p.bits).members()) names.push_back(g.node(v).name);
    pop.push_back({{"blocks", names}, {"fitness", p.fitness}, {"birth_iteration", p.birth}});
  }
  j["population"] = pop;
  json hist = json::array();
  for (const auto& h : r.history) hist.push_back({{"iteration", h.iteration}, {"best_fitness", h.best}});
  j["history"] = hist;
  return j;
}

std::string history_csv(const RunResult& r) {
  std::ostringstream os;
  os << "iteration,wallclock_ms,best_fitness\n";
  char buf[64];
  for (const auto& h : r.history) {
    std::snprintf(buf, sizeof buf, "%.3f", h.wallclock_ms);
    os << h.iteration << "," << buf << "," << h.best << "\n";
  }
  return os.str();
}

}  // namespace decoyrt
