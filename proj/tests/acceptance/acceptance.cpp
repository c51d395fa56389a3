// Acceptance harness: one PASS/FAIL line per criterion.
//
//   acceptance [--cli PATH] [--workdir DIR] [--only N]...
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "decoyrt/attacker.hpp"
#include "decoyrt/bench.hpp"
#include "decoyrt/cut_solver.hpp"
#include "decoyrt/edo.hpp"
#include "decoyrt/instance_gen.hpp"
#include "decoyrt/reachability.hpp"
#include "decoyrt/report.hpp"
#include "oracles.hpp"

using namespace decoyrt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  std::string cli;
  fs::path workdir = "acceptance_runs";
  std::set<int> only;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

NodeSet random_subset(const Instance& inst, Rng& rng, double p) {
  std::bernoulli_distribution pick(p);
  NodeSet c(inst.node_count());
  for (NodeId v : inst.blockable) {
    if (pick(rng)) c.insert(v);
  }
  return c;
}

RandomInstanceParams small_params(Rng& rng, int max_nodes, Time max_t) {
  RandomInstanceParams p;
  p.nodes = 3 + static_cast<int>(rng() % static_cast<unsigned>(max_nodes - 2));
  p.t_max = 2 + static_cast<Time>(rng() % static_cast<unsigned>(max_t - 1));
  p.entries = 1 + static_cast<int>(rng() % 2);
  if (p.entries >= p.nodes) p.entries = 1;
  p.edge_prob = 0.15 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
  p.dynamic_share = 0.5;
  return p;
}

std::size_t oracle_path_count(const Instance& inst, std::size_t cap) {
  std::size_t k = 0;
  oracle::for_each_path(inst.graph, inst.entries, inst.da, nullptr, [&](const oracle::Path&) {
    return ++k < cap;
  });
  return k;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = Clock::now();
  Rng rng(101);
  int graphs = 0, mismatches = 0;
  std::size_t static_edges = 0, dynamic_edges = 0;
  while (graphs < 1000) {
    const auto inst = random_instance(small_params(rng, 12, 12), rng);
    const auto& g = inst.graph;
    static_edges += g.static_edge_count();
    dynamic_edges += g.dynamic_edge_count();
    const auto d = ea_dijkstra(g, inst.entries, g.interval());
    const auto w = ea_wu(g, inst.entries, g.interval());
    const auto b = ea_bruteforce(g, inst.entries, g.interval());
    if (!(d == w) || !(d == b)) ++mismatches;
    ++graphs;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60 && static_edges > 0 && dynamic_edges > 0,
          fmt("%d graphs (%zu static, %zu dynamic edges), %d mismatches, %.2fs", graphs, static_edges,
              dynamic_edges, mismatches, secs)};
}

Outcome criterion2() {
  const auto inst = fixture_star_static_heavy(2000, 500);
  const auto& g = inst.graph;
  const auto iv = g.interval();
  const std::size_t es = g.static_edge_count(), ed = g.dynamic_edge_count();
  const auto tmax = iv.t_omega;
  bool shape = es >= 50 * ed && tmax >= 500;

  const auto stream = edge_stream(g, iv);
  bool counters = true;
  std::uint64_t worst_relax = 0;
  for (NodeId s : inst.entries) {
    const NodeId src[] = {s};
    SearchStats sd, sw;
    ea_dijkstra(g, src, iv, nullptr, &sd);
    ea_wu(stream, g.node_count(), src, iv, nullptr, &sw);
    worst_relax = std::max(worst_relax, sd.relaxations);
    counters = counters && sw.scans == stream.size() &&
               sd.relaxations <= es + ed * static_cast<std::uint64_t>(tmax);
  }
  const auto rec = bench_earliest_arrival(inst, BenchOptions{3, 7});
  const double ratio = rec[0].wall_ms / rec[1].wall_ms;
  return {shape && counters && ratio <= 0.5,
          fmt("eps_s=%zu eps_d=%zu t_max=%lld; dijkstra %.3f ms, wu %.3f ms, ratio %.4f; |stream|=%zu, "
              "max relaxations %llu <= %llu",
              es, ed, static_cast<long long>(tmax), rec[0].wall_ms, rec[1].wall_ms, ratio, stream.size(),
              static_cast<unsigned long long>(worst_relax),
              static_cast<unsigned long long>(es + ed * static_cast<std::uint64_t>(tmax)))};
}

Outcome criterion3() {
  const auto f1 = fixture_f1();
  const auto& g = f1.graph;
  TemporalPath p;
  p.edges = {{g.require("s1"), g.require("Gr1"), 2, 1},
             {g.require("Gr1"), g.require("Cp2"), 4, 1},
             {g.require("Cp2"), g.require("U2"), 6, 1},
             {g.require("U2"), g.require("DA"), 7, 1}};
  const NodeSet cut(f1.node_count(), std::vector<NodeId>{g.require("Cp2"), g.require("Cp3")});
  const auto rt = response_time(p, cut, f1.da);
  const bool valid = validate_path(g, p).valid;
  return {valid && rt == 3, fmt("path valid=%d, response_time=%lld", valid ? 1 : 0,
                                static_cast<long long>(rt.value_or(-1)))};
}

Outcome criterion4() {
  Rng rng(404);
  int single = 0, divergent = 0, equal_single = 0, bad_divergent = 0, tried = 0;
  while (single < 500 && tried < 200000) {
    ++tried;
    RandomInstanceParams p;
    p.nodes = 5 + static_cast<int>(rng() % 5);
    p.t_max = 4 + static_cast<Time>(rng() % 5);
    p.edge_prob = 0.3;
    const auto inst = random_instance(p, rng);
    if (!target_reachable(inst) || oracle_path_count(inst, 20000) >= 20000) continue;
    const auto cut = random_subset(inst, rng, 0.4);
    if (cut.empty()) continue;
    const auto ex = optimal_attack_exhaustive(inst, cut);
    if (ex.status != AttackStatus::optimal) continue;
    // Independent check of the exhaustive value itself.
    if (oracle::min_response_time(inst, cut) != ex.response_time) return {false, "exhaustive disagrees with oracle"};
    std::size_t touched = 0;
    for (const auto& e : ex.full_path().edges) touched += cut.contains(e.to) ? 1 : 0;
    const auto a1 = optimal_attack_alg1(inst, cut);
    if (touched == 1) {
      ++single;
      if (a1.status == AttackStatus::optimal && a1.response_time == ex.response_time) ++equal_single;
    } else {
      ++divergent;
      const auto fr = fitness_full(inst, cut, AttackMode::alg1);
      if (fr.value < *ex.response_time) ++bad_divergent;
    }
  }
  return {single >= 500 && equal_single == single && bad_divergent == 0,
          fmt("%d single-contact instances, %d equal; %d multi-decoy witnesses logged, %d with alg1 < exhaustive",
              single, equal_single, divergent, bad_divergent)};
}

Outcome criterion5() {
  Rng rng(505);
  int pairs = 0, coupling = 0, agree = 0, cuts = 0;
  while (pairs < 500) {
    RandomInstanceParams p;
    p.nodes = 5 + static_cast<int>(rng() % 5);
    p.t_max = 4 + static_cast<Time>(rng() % 5);
    p.edge_prob = 0.3;
    const auto inst = random_instance(p, rng);
    if (!target_reachable(inst)) continue;
    const auto cut = random_subset(inst, rng, 0.5);
    const bool is_cut = is_temporal_cut(inst, cut);
    const auto fr = fitness_full(inst, cut, AttackMode::exact);
    ++pairs;
    cuts += is_cut;
    coupling += (fr.value > 0) == is_cut;
    agree += oracle::is_cut(inst, cut) == is_cut;
  }
  return {coupling == pairs && agree == pairs && cuts > 50 && cuts < pairs - 50,
          fmt("%d pairs (%d cuts): fitness>0 <=> cut in %d, cut check agrees with enumeration in %d", pairs,
              cuts, coupling, agree)};
}

Outcome criterion6() {
  Rng rng(606);
  int done = 0, equal = 0, infeasible = 0;
  std::size_t max_nb = 0;
  while (done < 100) {
    RandomInstanceParams p;
    p.nodes = 8 + static_cast<int>(rng() % 9);
    p.t_max = 4 + static_cast<Time>(rng() % 5);
    p.edge_prob = 0.2;
    const auto inst = random_instance(p, rng);
    if (inst.blockable.size() > 14 || !target_reachable(inst)) continue;
    max_nb = std::max(max_nb, inst.blockable.size());
    const auto want = oracle::min_cut_size(inst);
    const auto sol = min_temporal_cut(inst);
    if (!want) {
      // Undefendable draws are checked but do not count towards the quota.
      infeasible += 1;
      if (sol.status != CutStatus::infeasible_within_budget) return {false, "undefendable instance reported a cut"};
    } else {
      ++done;
      equal += sol.status == CutStatus::optimal && static_cast<std::size_t>(sol.objective_value) == *want &&
               oracle::is_cut(inst, sol.blocks);
    }
  }
  return {equal == done, fmt("%d defendable instances (|N_b| <= %zu; %d undefendable draws also checked), %d match brute force", done, max_nb,
                             infeasible, equal)};
}

Outcome criterion7() {
  Rng rng(707);
  int calls = 0, repaired = 0, sound = 0, below = 0, below_flagged = 0;
  while (calls < 1000) {
    RandomInstanceParams p;
    p.nodes = 6 + static_cast<int>(rng() % 6);
    p.edge_prob = 0.3;
    const auto inst = random_instance(p, rng);
    const auto mc = min_temporal_cut(inst);
    if (mc.status != CutStatus::optimal || mc.objective_value == 0) continue;
    const auto nb = inst.blockable.size();
    for (int rep = 0; rep < 10; ++rep) {
      std::bernoulli_distribution coin(0.4);
      std::vector<bool> bits(nb), changed(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        bits[i] = coin(rng);
        changed[i] = bits[i] && coin(rng);
      }
      const bool tight = rep % 3 == 0;
      const int budget = tight ? mc.objective_value - 1
                               : mc.objective_value + static_cast<int>(rng() % 3);
      const auto r = repair(inst, bits, changed, budget, rng);
      ++calls;
      if (tight) {
        ++below;
        below_flagged += r.infeasible;
        continue;
      }
      if (r.infeasible) continue;
      ++repaired;
      const auto cut = inst.cut_from_bits(r.bits);
      bool ok = is_temporal_cut(inst, cut) && oracle::is_cut(inst, cut) &&
                static_cast<int>(cut.size()) <= budget;
      for (std::size_t i = 0; i < nb; ++i) {
        if (changed[i] && bits[i] && !r.bits[i]) ok = false;
      }
      sound += ok;
    }
  }
  return {sound == repaired && below_flagged == below && repaired > 300,
          fmt("%d repair calls: %d repaired, %d sound; %d with budget < |minC|, %d flagged infeasible", calls,
              repaired, sound, below, below_flagged)};
}

const Variant kVariants[] = {Variant::van_d, Variant::van_v, Variant::ilp_d,
                             Variant::ilp_v, Variant::est_d, Variant::est_v};

Outcome criterion8() {
  std::vector<Instance> pool{fixture_f1(), fixture_chain4()};
  Rng rng(808);
  while (pool.size() < 22) {
    RandomInstanceParams p;
    p.nodes = 7 + static_cast<int>(rng() % 6);
    p.t_max = 5 + static_cast<Time>(rng() % 4);
    p.edge_prob = 0.25;
    auto inst = random_instance(p, rng);
    if (inst.blockable.size() > 12 || inst.blockable.size() < 3 || !target_reachable(inst)) continue;
    if (oracle_path_count(inst, 50000) >= 50000) continue;
    const auto mc = min_temporal_cut(inst);
    if (mc.status != CutStatus::optimal) continue;
    inst = rebudget(inst, 1.5);
    inst.name = "random#" + std::to_string(pool.size() - 2);
    pool.push_back(std::move(inst));
  }

  int runs = 0, optimal = 0;
  std::vector<std::string> misses;
  for (const auto& inst : pool) {
    const Fitness opt = oracle::best_fitness(inst, static_cast<std::size_t>(*inst.budget));
    for (auto v : kVariants) {
      OptimizerConfig c;
      c.variant = v;
      c.max_iterations = 50000;
      c.local_batch = 100;
      c.seed = 8;
      c.target_fitness = opt;
      const auto r = run_optimizer(inst, c);
      ++runs;
      if (r.best_value == opt) {
        ++optimal;
      } else {
        misses.push_back(inst.name + "/" + std::string(to_string(v)) + fmt(" %lld<%lld",
                         static_cast<long long>(r.best_value), static_cast<long long>(opt)));
      }
    }
  }

  // Equal iteration budgets, no early stop: count full evaluations.
  int comparisons = 0, fewer = 0;
  for (const auto& inst : pool) {
    for (auto [van, est] : {std::pair{Variant::van_d, Variant::est_d}, std::pair{Variant::van_v, Variant::est_v}}) {
      OptimizerConfig c;
      c.max_iterations = 5000;
      c.seed = 8;
      c.variant = van;
      const auto a = run_optimizer(inst, c);
      c.variant = est;
      const auto b = run_optimizer(inst, c);
      ++comparisons;
      fewer += b.counters.fitness_calls < a.counters.fitness_calls;
    }
  }
  std::string miss_text;
  for (std::size_t i = 0; i < misses.size() && i < 5; ++i) miss_text += " " + misses[i];
  return {optimal == runs && fewer == comparisons,
          fmt("%d/%d runs optimal on %zu instances;", optimal, runs, pool.size()) + miss_text +
              fmt(" EST fewer full evaluations than VAN in %d/%d equal-budget pairs", fewer, comparisons)};
}

Outcome criterion9() {
  int runs = 0, within = 0;
  std::uint64_t worst_ratio_num = 0, worst_ratio_den = 1;
  for (int k = 3; k <= 8; ++k) {
    const auto inst = fixture_disjoint(k);
    const auto nv = inst.node_count();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      OptimizerConfig c;
      c.variant = seed % 2 ? Variant::est_d : Variant::est_v;
      c.seed = seed;
      c.local_batch = 10;
      c.phi_seed_paths = 1;
      c.max_iterations = 100000;
      c.target_fitness = 1;
      const auto r = run_surrogate(inst, c);
      ++runs;
      if (r.first_feasible_round && *r.first_feasible_round <= nv) {
        ++within;
        if (*r.first_feasible_round * worst_ratio_den > worst_ratio_num * nv) {
          worst_ratio_num = *r.first_feasible_round;
          worst_ratio_den = nv;
        }
      }
    }
  }
  return {within == runs, fmt("%d/%d runs feasible within |V| global rounds (worst %llu of |V|=%llu)", within,
                              runs, static_cast<unsigned long long>(worst_ratio_num),
                              static_cast<unsigned long long>(worst_ratio_den))};
}

// Disjoint entry-to-DA branches plus dead-end decoy candidates that no attack
// path visits. Random placements almost never cover every branch.
Instance distractor_family(int k, int distractors) {
  std::vector<Node> nodes;
  std::vector<StaticEdgeSpec> st;
  std::vector<NodeId> blockable;
  auto add = [&](std::string name, NodeKind kind) {
    const auto id = static_cast<NodeId>(nodes.size());
    nodes.push_back({id, std::move(name), kind});
    return id;
  };
  const auto s = add("s", NodeKind::user);
  const auto da = add("DA", NodeKind::domain_admin);
  for (int i = 0; i < k; ++i) {
    const auto x = add("x" + std::to_string(i), NodeKind::computer);
    const auto y = add("y" + std::to_string(i), NodeKind::user);
    st.push_back({s, x, 1});
    st.push_back({x, y, 1});
    st.push_back({y, da, 1});
    blockable.push_back(x);
    blockable.push_back(y);
  }
  for (int j = 0; j < distractors; ++j) {
    const auto z = add("z" + std::to_string(j), NodeKind::computer);
    st.push_back({s, z, 1});
    blockable.push_back(z);
  }
  auto g = TemporalGraph::build(std::move(nodes), std::move(st), {}, Interval{1, 10});
  return make_instance("distractors(" + std::to_string(k) + "," + std::to_string(distractors) + ")", std::move(g),
                       {s}, da, blockable, k);
}

Outcome criterion10() {
  const auto inst = distractor_family(3, 30);
  const std::int64_t cap = 200000;
  std::vector<double> van, est;
  int van_censored = 0, est_censored = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    OptimizerConfig c;
    c.seed = seed;
    c.max_iterations = cap;
    c.target_fitness = 1;
    c.variant = Variant::van_d;
    const auto a = run_vanilla(inst, c);
    van.push_back(static_cast<double>(a.first_feasible_iteration.value_or(cap)));
    van_censored += !a.first_feasible_iteration;
    c.variant = Variant::est_d;
    c.local_batch = 10;
    const auto b = run_surrogate(inst, c);
    est.push_back(static_cast<double>(b.first_feasible_iteration.value_or(cap)));
    est_censored += !b.first_feasible_iteration;
  }
  const double n = median(van), e = median(est);
  const int mu = OptimizerConfig{}.population_size;
  return {n >= 10.0 * mu && e <= n / 5 && est_censored == 0,
          fmt("%s, 10 seeds: median first feasible iteration VAN %.1f (%d censored at %lld), EST %.1f "
              "(%d censored); N >= 10*mu=%d, ratio %.1fx",
              inst.name.c_str(), n, van_censored, static_cast<long long>(cap), e, est_censored, 10 * mu,
              e > 0 ? n / e : 0.0)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the given 0-based CSV column from every line.
std::string drop_column(const std::string& csv, std::size_t column) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    cells.push_back(cell);
    if (column < cells.size()) cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(column));
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  }
  return out;
}

Outcome criterion11(const Options& opt) {
  std::vector<std::string> failures;
  int checks = 0;
  auto expect_same = [&](const std::string& what, const std::string& a, const std::string& b) {
    ++checks;
    if (a.empty() || a != b) failures.push_back(what);
  };

  // Library level, every variant, threaded evaluation in the second run.
  const auto f1 = fixture_f1();
  for (auto v : kVariants) {
    std::string res[2], hist[2];
    for (int rep = 0; rep < 2; ++rep) {
      OptimizerConfig c;
      c.variant = v;
      c.seed = 11;
      c.max_iterations = 3000;
      c.local_batch = 50;
      c.jobs = rep + 1;
      const auto r = run_optimizer(f1, c);
      res[rep] = result_to_json(f1, r, c).dump(2);
      hist[rep] = drop_column(history_csv(r), 1);
    }
    expect_same(std::string("library result ") + std::string(to_string(v)), res[0], res[1]);
    expect_same(std::string("library history ") + std::string(to_string(v)), hist[0], hist[1]);
  }

  if (opt.cli.empty()) {
    failures.push_back("CLI path not given; command-level runs skipped");
  } else {
    const fs::path root = opt.workdir / "determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    auto run = [&](const std::string& args, const fs::path& log) {
      const std::string cmd = "\"" + opt.cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
      return std::system(cmd.c_str());
    };
    const fs::path f1_file = root / "f1.json";
    run("generate --fixture F1 -o \"" + f1_file.string() + "\"", root / "gen_f1.log");
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path d = root / ("rep" + std::to_string(rep));
      fs::create_directories(d);
      run("generate --synth-trace --seed 5 --users 20 --computers 10 --groups 5 --events 150 --horizon 40 "
          "--entries 4 --blockable-frac 0.9 --bf 1.5 -o \"" + (d / "synth.json").string() + "\"",
          d / "generate.log");
      run("generate --fixture \"disjoint_k(4)\" -o \"" + (d / "disjoint.json").string() + "\"", d / "gen_dk.log");
      run("validate \"" + (d / "synth.json").string() + "\"", d / "validate.log");
      run("mincut \"" + (d / "synth.json").string() + "\"", d / "mincut.log");
      run("mincut \"" + f1_file.string() + "\" --export-lp \"" + (d / "f1.lp").string() + "\"", d / "lp.log");
      run("attack \"" + f1_file.string() + "\" --block Cp2,Cp3 --mode exhaustive", d / "attack.log");
      for (auto v : kVariants) {
        const std::string name(to_string(v));
        run("solve \"" + f1_file.string() + "\" --variant " + name + " --seed 9 --max-iters 2000 --jobs " +
                std::to_string(rep + 1) + " --out \"" + (d / ("solve_" + name)).string() + "\"",
            d / ("solve_" + name + ".log"));
      }
      run("solve \"" + (d / "synth.json").string() + "\" --variant est_d --seed 3 --max-iters 3000 --out \"" +
              (d / "solve_synth").string() + "\"",
          d / "solve_synth.log");
      run("bench-ea --graph \"star_static_heavy(200,50)\" --graph F1 --warmups 0 --reps 1 --out \"" +
              (d / "bench.csv").string() + "\"",
          d / "bench.log");
    }
    const fs::path a = root / "rep0", b = root / "rep1";
    for (const char* f : {"synth.json", "disjoint.json", "validate.log", "mincut.log", "f1.lp", "attack.log"}) {
      expect_same(std::string("cli ") + f, slurp(a / f), slurp(b / f));
    }
    std::vector<std::string> solves{"solve_synth"};
    for (auto v : kVariants) solves.push_back("solve_" + std::string(to_string(v)));
    for (const auto& s : solves) {
      expect_same("cli " + s + "/result.json", slurp(a / s / "result.json"), slurp(b / s / "result.json"));
      expect_same("cli " + s + "/history.csv (wallclock masked)", drop_column(slurp(a / s / "history.csv"), 1),
                  drop_column(slurp(b / s / "history.csv"), 1));
    }
    expect_same("cli bench.csv (wall_ms masked)", drop_column(slurp(a / "bench.csv"), 5),
                drop_column(slurp(b / "bench.csv"), 5));
  }
  std::string text = fmt("%d comparisons, %zu differ", checks, failures.size());
  for (const auto& f : failures) text += "; " + f;
  return {failures.empty(), text};
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) opt.cli = argv[++i];
    else if (a == "--workdir" && i + 1 < argc) opt.workdir = argv[++i];
    else if (a == "--only" && i + 1 < argc) opt.only.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--cli PATH] [--workdir DIR] [--only N]...\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"earliest-arrival agreement", criterion1},
      {"earliest-arrival performance", criterion2},
      {"response-time formula", criterion3},
      {"attacker oracle", criterion4},
      {"fitness/feasibility coupling", criterion5},
      {"min-cut exactness", criterion6},
      {"repair soundness", criterion7},
      {"optimizer optimality", criterion8},
      {"surrogate global rounds", criterion9},
      {"convergence to feasibility", criterion10},
      {"determinism", [&] { return criterion11(opt); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first
              << "): " << out.detail << fmt(" [%.1fs]", seconds_since(t0)) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
