#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "decoyrt/attacker.hpp"
#include "decoyrt/bench.hpp"
#include "decoyrt/cut_solver.hpp"
#include "decoyrt/edo.hpp"
#include "decoyrt/instance.hpp"
#include "decoyrt/instance_gen.hpp"
#include "decoyrt/report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace decoyrt;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kCaps = 3;
constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw UsageError("cannot write " + p.string());
  out << text;
}

Instance open_instance(const std::string& file) {
  if (!fs::exists(file)) throw UsageError("no such file: " + file);
  return load_instance(file);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string fixture;
  std::string mould_file;
  std::string trace_file;
  bool synth_trace = false;
  std::string out;
  std::uint64_t seed = 1;
  int entries = 10;
  double blockable_frac = 0.9;
  std::optional<double> bf;
  Time horizon = 1000;
  Time snapshot_s = 3600;
  bool overlap = false;
  MouldParams mould;
  TraceParams trace;
};

int cmd_generate(const GenerateArgs& a) {
  Rng rng(a.seed);
  Instance inst;
  if (!a.fixture.empty()) {
    inst = fixture(a.fixture);
    if (a.bf) inst = rebudget(inst, *a.bf);
  } else {
    const Mould mould = a.mould_file.empty() ? synth_mould(a.mould, rng) : [&] {
      if (!fs::exists(a.mould_file)) throw UsageError("no such file: " + a.mould_file);
      return load_mould(a.mould_file);
    }();
    std::vector<AuthEvent> events;
    if (!a.trace_file.empty()) {
      if (!fs::exists(a.trace_file)) throw UsageError("no such file: " + a.trace_file);
      auto loaded = load_auth_trace(a.trace_file);
      if (loaded.malformed > 0) {
        std::cerr << "warning: " << loaded.malformed << " malformed trace rows skipped\n";
        for (const auto& e : loaded.errors) std::cerr << "  " << e << "\n";
      }
      events = std::move(loaded.events);
    } else if (a.synth_trace) {
      TraceParams tp = a.trace;
      tp.horizon = a.horizon;
      tp.snapshot_interval = a.snapshot_s;
      tp.users = static_cast<int>(mould.of_kind(NodeKind::user).size());
      tp.computers = static_cast<int>(mould.of_kind(NodeKind::computer).size());
      events = synth_trace(tp, rng);
    }
    SessionOptions so;
    so.horizon = a.horizon;
    so.snapshot_interval = a.snapshot_s;
    so.overlap = a.overlap;
    if (a.synth_trace && a.trace_file.empty()) so.trace_start = 0;
    const auto mapping = build_mapping(events, mould, rng);
    FinalizeOptions fo;
    fo.entries = a.entries;
    fo.blockable_fraction = a.blockable_frac;
    fo.budget_factor = a.bf.value_or(1.5);
    fo.horizon = a.horizon;
    const std::string name = a.out.empty() ? "generated" : fs::path(a.out).stem().string();
    inst = finalize_instance(mould, sessions_to_edges(events, so, mapping), fo, rng, name);
  }
  const auto cut = min_temporal_cut(inst);
  if (!a.out.empty()) write_file(a.out, serialize_instance(inst));
  std::cout << "nodes: " << inst.node_count() << "\n"
            << "eps_s: " << inst.graph.static_edge_count() << "\n"
            << "eps_d: " << inst.graph.dynamic_edge_count() << "\n"
            << "min_cut: " << (cut.status == CutStatus::optimal ? std::to_string(cut.objective_value) : std::string(to_string(cut.status))) << "\n"
            << "budget: " << (inst.budget ? std::to_string(*inst.budget) : "none") << "\n";
  if (a.out.empty()) std::cout << serialize_instance(inst);
  return kOk;
}

int cmd_mincut(const std::string& file, const std::string& export_lp, const std::string& lp_variant) {
  const Instance inst = open_instance(file);
  if (!export_lp.empty()) {
    const auto variant = lp_variant == "repair" ? IlpVariant::repair : IlpVariant::mincut;
    if (lp_variant != "repair" && lp_variant != "mincut") throw UsageError("--lp-variant must be mincut or repair");
    const std::optional<int> budget = variant == IlpVariant::repair ? inst.budget : std::nullopt;
    write_file(export_lp, export_ilp(inst, variant, NodeSet(inst.node_count()), budget));
    std::cout << "wrote " << export_lp << "\n";
    return kOk;
  }
  const auto sol = min_temporal_cut(inst);
  std::cout << "status: " << to_string(sol.status) << "\n";
  if (sol.status == CutStatus::infeasible_within_budget) {
    std::cout << "instance undefendable\n";
    return kInfeasible;
  }
  std::cout << "min_cut: " << sol.objective_value << "\nwitness:";
  for (NodeId v : sol.blocks.members()) std::cout << " " << inst.graph.node(v).name;
  std::cout << "\nbranch_nodes: " << sol.branch_nodes << "\n";
  return kOk;
}

int cmd_attack(const std::string& file, const std::string& block, const std::string& mode_text) {
  const Instance inst = open_instance(file);
  const AttackMode mode = parse_attack_mode(mode_text);
  const NodeSet cut = parse_placement(inst, block);
  const auto attack = optimal_attack(inst, cut, mode);
  const auto fitness = fitness_full(inst, cut, mode);
  std::cout << format_attack(inst, cut, attack, fitness);
  return fitness.status == FitnessStatus::infeasible ? kInfeasible : kOk;
}

struct SolveArgs {
  std::string file;
  std::string config_file;
  std::string out = "run";
  std::optional<std::string> variant;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_iters;
  std::optional<double> wallclock_s;
  std::optional<int> jobs;
  std::optional<int> budget;
};

int cmd_solve(const SolveArgs& a, const std::string& command) {
  const std::string started = utc_now();
  const Instance inst = open_instance(a.file);
  OptimizerConfig config;
  if (!a.config_file.empty()) {
    json doc;
    try {
      doc = json::parse(read_file(a.config_file));
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
    config = config_from_json(doc, config);
  }
  if (a.variant) config.variant = parse_variant(*a.variant);
  if (a.mode) config.fitness_mode = parse_attack_mode(*a.mode);
  if (a.seed) config.seed = *a.seed;
  if (a.max_iters) config.max_iterations = *a.max_iters;
  if (a.wallclock_s) config.wallclock_limit_s = *a.wallclock_s;
  if (a.jobs) config.jobs = *a.jobs;
  if (a.budget) config.budget = *a.budget;
  validate(config);

  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_optimizer(inst, config);
  const double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const fs::path out(a.out);
  fs::create_directories(out);
  write_file(out / "result.json", result_to_json(inst, r, config).dump(2) + "\n");
  write_file(out / "history.csv", history_csv(r));
  json manifest;
  manifest["command"] = command;
  manifest["config"] = config_to_json(config);
  manifest["seed"] = config.seed;
  manifest["instance"] = {{"file", a.file}, {"digest", instance_digest(inst)}};
  manifest["versions"] = {{"decoyrt", kVersion}, {"compiler", __VERSION__}, {"cxx_standard", __cplusplus}};
  manifest["started_utc"] = started;
  manifest["finished_utc"] = utc_now();
  manifest["elapsed_ms"] = elapsed;
  manifest["last_improvement"] = {{"iteration", r.last_improvement.iteration},
                                  {"wallclock_ms", r.last_improvement.wallclock_ms}};
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "variant: " << to_string(r.variant) << "\n"
            << "best_fitness: " << r.best_value << "\n"
            << "last_improvement_iteration: " << r.last_improvement.iteration << "\n"
            << "last_improvement_ms: " << r.last_improvement.wallclock_ms << "\n"
            << "fitness_calls: " << r.counters.fitness_calls << "\n"
            << "iterations: " << r.iterations << "\n";
  if (!r.any_feasible) {
    std::cout << "status: no feasible solution found\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_bench(const std::vector<std::string>& graphs, const BenchOptions& options,
              const std::string& out, int jobs) {
  std::vector<Instance> instances;
  for (const auto& g : graphs) instances.push_back(fs::exists(g) ? load_instance(g) : fixture(g));
  std::vector<std::vector<BenchRecord>> rows(instances.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < instances.size(); i += stride) rows[i] = bench_earliest_arrival(instances[i], options);
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
  }
  std::ostringstream csv;
  csv << kBenchCsvHeader << "\n";
  for (const auto& rs : rows) {
    for (const auto& r : rs) csv << to_csv_row(r) << "\n";
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out, csv.str());
    std::cout << "wrote " << out << "\n";
  }
  return kOk;
}

int cmd_validate(const std::string& file) {
  if (!fs::exists(file)) throw UsageError("no such file: " + file);
  const auto diags = diagnose_instance_text(read_file(file));
  if (diags.empty()) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const auto& d : diags) std::cout << (d.path.empty() ? "/" : d.path) << ": " << d.message << "\n";
  std::cout << diags.size() << " problem(s)\n";
  return kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoy placement for temporal attack graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build an instance file");
  generate->add_option("--fixture", gen.fixture, "F1, chain4, disjoint_k(K), star_static_heavy(N,T)");
  generate->add_option("--mould", gen.mould_file, "Static mould file (instance format)");
  generate->add_option("--trace", gen.trace_file, "Authentication CSV time,user,computer[,end_time]");
  generate->add_flag("--synth-trace", gen.synth_trace, "Generate a synthetic authentication trace");
  generate->add_option("-o,--out", gen.out, "Output instance file");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--entries", gen.entries)->check(CLI::PositiveNumber);
  generate->add_option("--blockable-frac", gen.blockable_frac)->check(CLI::Range(0.0, 1.0));
  generate->add_option("--bf", gen.bf, "Budget factor: b = ceil(bf * |minC|)");
  generate->add_option("--horizon", gen.horizon, "Number of snapshots")->check(CLI::PositiveNumber);
  generate->add_option("--snapshot-s", gen.snapshot_s, "Snapshot length in seconds")->check(CLI::PositiveNumber);
  generate->add_flag("--overlap", gen.overlap, "Session counts if it overlaps the snapshot hour");
  generate->add_option("--users", gen.mould.users);
  generate->add_option("--computers", gen.mould.computers);
  generate->add_option("--groups", gen.mould.groups);
  generate->add_option("--admin-groups", gen.mould.admin_groups);
  generate->add_option("--admin-users", gen.mould.admin_users);
  generate->add_option("--extra-prob", gen.mould.extra_edge_prob);
  generate->add_option("--events", gen.trace.events);
  generate->add_option("--mean-session", gen.trace.mean_session_snapshots);

  std::string mincut_file, export_lp, lp_variant = "mincut";
  auto* mincut = app.add_subcommand("mincut", "Minimum temporal cut");
  mincut->add_option("instance", mincut_file)->required();
  mincut->add_option("--export-lp", export_lp, "Write the integer program in LP format instead");
  mincut->add_option("--lp-variant", lp_variant, "mincut or repair");

  std::string attack_file, block, mode = "alg1";
  auto* attack = app.add_subcommand("attack", "Attacker best response to a placement");
  attack->add_option("instance", attack_file)->required();
  attack->add_option("--block", block, "Comma-separated decoy node names");
  attack->add_option("--mode", mode, "alg1, exact or exhaustive");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run an optimizer variant");
  solve->add_option("instance", solve_args.file)->required();
  solve->add_option("--config", solve_args.config_file, "JSON config (same keys as the manifest config)");
  solve->add_option("--out", solve_args.out, "Output directory");
  solve->add_option("--variant", solve_args.variant, "van_d, van_v, ilp_d, ilp_v, est_d, est_v");
  solve->add_option("--mode", solve_args.mode, "Fitness attack mode");
  solve->add_option("--seed", solve_args.seed);
  solve->add_option("--max-iters", solve_args.max_iters);
  solve->add_option("--wallclock-s", solve_args.wallclock_s);
  solve->add_option("--jobs", solve_args.jobs);
  solve->add_option("--budget", solve_args.budget);

  std::vector<std::string> graphs;
  BenchOptions bench_opts;
  std::string bench_out;
  int bench_jobs = 1;
  auto* bench = app.add_subcommand("bench-ea", "Earliest-arrival timing");
  bench->add_option("--graph", graphs, "Fixture name or instance file (repeatable)");
  bench->add_option("--warmups", bench_opts.warmups);
  bench->add_option("--reps", bench_opts.repetitions);
  bench->add_option("--out", bench_out, "CSV output file");
  bench->add_option("--jobs", bench_jobs);

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  validate_cmd->add_option("instance", validate_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (generate->parsed()) {
      if (!gen.fixture.empty() && !gen.mould_file.empty()) throw UsageError("--fixture and --mould are exclusive");
      return cmd_generate(gen);
    }
    if (mincut->parsed()) return cmd_mincut(mincut_file, export_lp, lp_variant);
    if (attack->parsed()) return cmd_attack(attack_file, block, mode);
    if (solve->parsed()) return cmd_solve(solve_args, command_line(argc, argv));
    if (bench->parsed()) {
      if (graphs.empty()) graphs.push_back("star_static_heavy(2000,500)");
      return cmd_bench(graphs, bench_opts, bench_out, bench_jobs);
    }
    if (validate_cmd->parsed()) return cmd_validate(validate_file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCaps;
  } catch (const GraphError& e) {
    const std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    return msg.find("undefendable") != std::string::npos ? kInfeasible : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
