#include <doctest.h>

#include "decoyrt/attacker.hpp"
#include "decoyrt/instance_gen.hpp"
#include "oracles.hpp"

using namespace decoyrt;

namespace {

NodeSet named(const Instance& inst, std::initializer_list<const char*> names) {
  NodeSet s(inst.node_count());
  for (auto n : names) s.insert(inst.graph.require(n));
  return s;
}

TemporalPath example_path(const Instance& f1) {
  const auto& g = f1.graph;
  TemporalPath p;
  p.edges = {{g.require("s1"), g.require("Gr1"), 2, 1},
             {g.require("Gr1"), g.require("Cp2"), 4, 1},
             {g.require("Cp2"), g.require("U2"), 6, 1},
             {g.require("U2"), g.require("DA"), 7, 1}};
  return p;
}

}  // namespace

TEST_CASE("F1 placement {Cp2, Cp3} in every mode") {
  const auto f1 = fixture_f1();
  const auto cut = named(f1, {"Cp2", "Cp3"});
  for (auto mode : {AttackMode::alg1, AttackMode::exact, AttackMode::exhaustive}) {
    CAPTURE(to_string(mode));
    const auto r = optimal_attack(f1, cut, mode);
    REQUIRE(r.status == AttackStatus::optimal);
    CHECK(*r.response_time == 2);
    CHECK(cut.contains(r.contact));
    const auto full = r.full_path();
    CHECK(validate_path(f1.graph, full).valid);
    CHECK(response_time(full, cut, f1.da) == r.response_time);
  }
  CHECK(oracle::min_response_time(f1, cut) == 2);
  const auto fr = fitness_full(f1, cut);
  CHECK(fr.feasible());
  CHECK(fr.value == 2);
}

TEST_CASE("non-cuts score zero") {
  const auto f1 = fixture_f1();
  for (auto mode : {AttackMode::alg1, AttackMode::exact, AttackMode::exhaustive}) {
    const auto r = optimal_attack(f1, named(f1, {"Cp2"}), mode);
    CHECK(r.status == AttackStatus::not_a_cut);
    const auto fr = fitness_full(f1, named(f1, {"Cp2"}), mode);
    CHECK(fr.status == FitnessStatus::infeasible);
    CHECK(fr.value == 0);
    CHECK(fitness_full(f1, NodeSet(f1.node_count()), mode).value == 0);
  }
}

TEST_CASE("decoys in series on a chain") {
  const auto c = fixture_chain4();
  CHECK(fitness_full(c, named(c, {"a"})).value == 2);
  CHECK(fitness_full(c, named(c, {"b"})).value == 1);
  const auto both = named(c, {"a", "b"});
  CHECK(optimal_attack_alg1(c, both).status == AttackStatus::no_single_contact);
  const auto fr = fitness_full(c, both, AttackMode::alg1);
  CHECK(fr.fell_back);
  CHECK(fr.value == 2);
  CHECK(fitness_full(c, both, AttackMode::exhaustive).value == 2);
  CHECK(oracle::fitness(c, both) == 2);
}

TEST_CASE("unreachable DA is vacuous") {
  std::vector<Node> nodes{{0, "s", NodeKind::user}, {1, "x", NodeKind::computer}, {2, "DA", NodeKind::domain_admin}};
  auto g = TemporalGraph::build(nodes, {{0, 1, 1}}, {}, Interval{1, 5});
  const auto inst = make_instance("iso", std::move(g), {0}, 2, {1});
  const auto fr = fitness_full(inst, NodeSet(3));
  CHECK(fr.status == FitnessStatus::vacuous);
  CHECK(fr.value == 0);
  CHECK(optimal_attack(inst, NodeSet(3), AttackMode::exact).status == AttackStatus::unreachable);
}

TEST_CASE("first-entry arrival set") {
  const auto f1 = fixture_f1();
  const auto& g = f1.graph;
  // Without Cp3, Cp2 is entered from s1 via Gr1 at any time in 3..10.
  const NodeSet no_cp3 = named(f1, {"Cp3"});
  const NodeId s1[] = {g.require("s1")};
  const auto times = achievable_arrivals(g, s1, g.require("Cp2"), g.interval(), &no_cp3);
  std::vector<Time> want;
  for (Time t = 3; t <= 10; ++t) want.push_back(t);
  CHECK(times == want);
  const NodeId s2[] = {g.require("s2")};
  CHECK(achievable_arrivals(g, s2, g.require("Cp3"), g.interval()) == std::vector<Time>{3, 7});
  CHECK(achievable_arrivals(g, s2, g.require("s2"), g.interval()) == std::vector<Time>{1});
  CHECK(achievable_arrivals(g, s2, g.require("Cp2"), g.interval()).empty());
}

TEST_CASE("surrogate over a path pool") {
  const auto f1 = fixture_f1();
  const std::vector<TemporalPath> pool{example_path(f1)};
  CHECK(surrogate_fitness(f1, named(f1, {"Cp2"}), pool) == 3);
  CHECK(surrogate_fitness(f1, named(f1, {"U2"}), pool) == 1);
  CHECK(surrogate_fitness(f1, named(f1, {"Cp3"}), pool) == -1);
  const std::vector<TemporalPath> two{example_path(f1), example_path(f1)};
  CHECK(surrogate_fitness(f1, named(f1, {"Cp3"}), two) == -2);
  CHECK(surrogate_fitness(f1, named(f1, {"Cp2"}), {}) == kInfiniteFitness);
}

TEST_CASE("cycle removal keeps the walk time-respecting") {
  const auto f1 = fixture_f1();
  const auto p = example_path(f1);
  CHECK(simplify_walk(p) == p);
  TemporalPath w;
  w.edges = {{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 1, 3, 1}, {1, 3, 5, 1}};
  const auto s = simplify_walk(w);
  REQUIRE(s.size() == 2);
  CHECK(s.edges[0] == PathEdge{0, 1, 1, 1});
  CHECK(s.edges[1] == PathEdge{1, 3, 5, 1});
}

TEST_CASE("attacker modes against the enumeration oracle") {
  Rng rng(23);
  int cuts = 0, stacked = 0;
  for (int k = 0; k < 150; ++k) {
    RandomInstanceParams p;
    p.nodes = 5 + static_cast<int>(rng() % 4);
    p.t_max = 4 + static_cast<Time>(rng() % 5);
    const auto inst = random_instance(p, rng);
    oracle::for_each_subset(inst, 3, [&](const NodeSet& cut) {
      const auto want = oracle::min_response_time(inst, cut);
      const bool reach = oracle::reachable(inst);
      const auto ex = optimal_attack_exact(inst, cut);
      const auto en = optimal_attack_exhaustive(inst, cut);
      if (!reach) {
        CHECK(ex.status == AttackStatus::unreachable);
        return;
      }
      if (!want) {
        CHECK(ex.status == AttackStatus::not_a_cut);
        CHECK(en.status == AttackStatus::not_a_cut);
        return;
      }
      ++cuts;
      REQUIRE(ex.status == AttackStatus::optimal);
      CHECK(*ex.response_time == *want);
      CHECK(*en.response_time == *want);
      const auto a1 = optimal_attack_alg1(inst, cut);
      if (a1.status == AttackStatus::optimal) {
        CHECK(*a1.response_time >= *want);
        CHECK(validate_path(inst.graph, a1.full_path()).valid);
      } else {
        CHECK(a1.status == AttackStatus::no_single_contact);
        ++stacked;
      }
    });
  }
  CHECK(cuts > 100);
  MESSAGE("cuts checked: " << cuts << ", no single contact: " << stacked);
}

TEST_CASE("surrogate never underestimates a path sample") {
  Rng rng(29);
  for (int k = 0; k < 100; ++k) {
    const auto inst = random_instance({}, rng);
    if (!oracle::reachable(inst)) continue;
    std::vector<TemporalPath> pool;
    for (int i = 0; i < 4; ++i) {
      if (auto p = random_temporal_path(inst.graph, inst.entries, inst.da, inst.interval(), rng)) pool.push_back(*p);
    }
    oracle::for_each_subset(inst, 2, [&](const NodeSet& cut) {
      const auto full = fitness_full(inst, cut, AttackMode::exact);
      if (!full.feasible()) return;
      // A sampled path that touches the cut has RT at least the attacker optimum.
      CHECK(surrogate_fitness(inst, cut, pool) >= full.value);
    });
  }
}
