#include <doctest.h>

#include <cmath>

#include "decoyrt/cut_solver.hpp"
#include "decoyrt/instance_gen.hpp"
#include "oracles.hpp"

using namespace decoyrt;

namespace {

const char* kMould = R"({
  "nodes": [
    {"id": 0, "name": "alice", "kind": "user"},
    {"id": 1, "name": "bob", "kind": "user"},
    {"id": 2, "name": "pc1", "kind": "computer"},
    {"id": 3, "name": "pc2", "kind": "computer"},
    {"id": 4, "name": "admins", "kind": "group"},
    {"id": 5, "name": "DA", "kind": "domain_admin"}
  ],
  "static_edges": [[0, 2], [1, 3], [4, 5]],
  "da": 5
})";

}  // namespace

TEST_CASE("mould parsing") {
  const auto m = parse_mould(kMould);
  CHECK(m.nodes.size() == 6);
  CHECK(m.edges.size() == 3);
  CHECK(m.da == 5);
  CHECK(m.of_kind(NodeKind::user) == std::vector<NodeId>{0, 1});

  CHECK_THROWS_WITH_AS(parse_mould(R"({"nodes": [], "da": 0})"), doctest::Contains("static_edges"), GraphError);
  CHECK_THROWS_WITH_AS(parse_mould(R"({"nodes": [{"id":0,"kind":"domain_admin"}], "static_edges": [],
                                       "dynamic_edges": [{"edge":[0,0],"labels":[1]}], "da": 0})"),
                       doctest::Contains("mould must be static"), GraphError);
  CHECK_THROWS_WITH_AS(parse_mould(R"({"nodes": [{"id":0,"kind":"user"}], "static_edges": [], "da": 0})"),
                       doctest::Contains("exactly one domain_admin"), GraphError);
  CHECK_THROWS_WITH_AS(parse_mould(R"({"nodes": [{"id":0,"kind":"user"},{"id":1,"kind":"domain_admin"}],
                                       "static_edges": [], "da": 0})"),
                       doctest::Contains("da does not name"), GraphError);
  CHECK_THROWS_AS(parse_mould("{"), GraphError);
}

TEST_CASE("timestamps") {
  CHECK(parse_timestamp("42") == 42);
  CHECK(parse_timestamp(" 7 ") == 7);
  CHECK(parse_timestamp("1970-01-01T00:00:10Z") == 10);
  CHECK(parse_timestamp("1970-01-02 01:00:00") == 86400 + 3600);
  CHECK(parse_timestamp("2024-02-29T12:00:00") == 1709208000);
  CHECK_FALSE(parse_timestamp("2023-02-29T12:00:00").has_value());
  CHECK_FALSE(parse_timestamp("yesterday").has_value());
  CHECK_FALSE(parse_timestamp("").has_value());
}

TEST_CASE("auth trace parsing") {
  const auto t = parse_auth_trace(
      "time,user,computer,end_time\n"
      "20,bob,pc2,30\n"
      "10,alice,pc1,\n"
      "oops,alice,pc1,1\n"
      "5,alice\n"
      "15,alice,pc2,3\n");
  REQUIRE(t.events.size() == 2);
  CHECK(t.events[0].time == 10);
  CHECK_FALSE(t.events[0].end_time.has_value());
  CHECK(t.events[1].user == "bob");
  CHECK(t.events[1].end_time == 30);
  CHECK(t.malformed == 3);
  REQUIRE(t.errors.size() == 3);
  CHECK(t.errors[0].rfind("line 4:", 0) == 0);

  CHECK(parse_auth_trace("time,user,computer\n1,a,b\n").events.size() == 1);
  CHECK_THROWS_AS(parse_auth_trace("user,time,computer\n"), GraphError);
}

TEST_CASE("sessions become snapshot labels") {
  const auto m = parse_mould(kMould);
  EntityMapping map{{"user:alice", 0}, {"user:bob", 1}, {"computer:pc1", 2}, {"computer:pc2", 3}};
  SessionOptions o;
  o.snapshot_interval = 3600;
  o.trace_start = 0;
  std::vector<AuthEvent> ev{{7200, "alice", "pc1", 18000}};
  auto edges = sessions_to_edges(ev, o, map);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].from == 2);
  CHECK(edges[0].to == 0);
  CHECK(edges[0].labels == std::vector<Time>{3, 4, 5});

  // A session starting between instants counts from the next one unless
  // overlap is requested.
  ev = {{1800, "bob", "pc2", 5400}};
  CHECK(sessions_to_edges(ev, o, map)[0].labels == std::vector<Time>{2});
  o.overlap = true;
  CHECK(sessions_to_edges(ev, o, map)[0].labels == std::vector<Time>{1, 2});
  o.overlap = false;

  ev = {{0, "bob", "pc2", std::nullopt}};
  CHECK(sessions_to_edges(ev, o, map)[0].labels == std::vector<Time>{1});
  o.horizon = 2;
  ev = {{0, "bob", "pc2", 36000}};
  CHECK(sessions_to_edges(ev, o, map)[0].labels == std::vector<Time>{1, 2});
  ev = {{0, "carol", "pc2", 10}};
  CHECK_THROWS_AS(sessions_to_edges(ev, o, map), GraphError);

  Rng rng(1);
  const std::vector<AuthEvent> many{{0, "a", "x", {}}, {0, "b", "x", {}}, {0, "c", "x", {}}};
  CHECK_THROWS_WITH_AS(build_mapping(many, m, rng), doctest::Contains("mapping exhausted"), GraphError);
  const auto two = build_mapping({{0, "a", "x", {}}, {0, "b", "y", {}}}, m, rng);
  CHECK(two.size() == 4);
  CHECK(m.nodes[static_cast<std::size_t>(two.at("computer:x"))].kind == NodeKind::computer);
}

TEST_CASE("synthetic trace statistics") {
  Rng rng(8);
  TraceParams p;
  p.events = 20000;
  p.mean_session_snapshots = 4.0;
  const auto ev = synth_trace(p, rng);
  REQUIRE(ev.size() == 20000);
  double total = 0;
  for (const auto& e : ev) {
    REQUIRE(e.end_time.has_value());
    total += static_cast<double>(*e.end_time - e.time) / static_cast<double>(p.snapshot_interval);
  }
  CHECK(std::fabs(total / 20000 - 4.0) < 0.2);
  CHECK(std::is_sorted(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.time < b.time; }));
}

TEST_CASE("synthetic mould shape") {
  Rng rng(3);
  const auto m = synth_mould({}, rng);
  CHECK(m.of_kind(NodeKind::user).size() == 40);
  CHECK(m.of_kind(NodeKind::computer).size() == 20);
  CHECK(m.of_kind(NodeKind::group).size() == 8);
  CHECK(m.of_kind(NodeKind::domain_admin) == std::vector<NodeId>{m.da});
  MouldParams bad;
  bad.admin_users = 100;
  CHECK_THROWS_AS(synth_mould(bad, rng), GraphError);
}

TEST_CASE("finalized instances are defendable and budgeted") {
  Rng rng(21);
  const auto mould = synth_mould({}, rng);
  TraceParams tp;
  tp.horizon = 50;
  tp.events = 400;
  const auto ev = synth_trace(tp, rng);
  const auto map = build_mapping(ev, mould, rng);
  SessionOptions so;
  so.horizon = 50;
  FinalizeOptions fo;
  fo.horizon = 50;
  fo.blockable_fraction = 1.0;
  const auto inst = finalize_instance(mould, sessions_to_edges(ev, so, map), fo, rng, "synth");
  CHECK(inst.interval() == Interval{1, 51});
  CHECK(inst.entries.size() == 10);
  for (NodeId e : inst.entries) CHECK(inst.graph.node(e).kind == NodeKind::user);
  CHECK(inst.blockable.size() == mould.nodes.size() - 11);
  const auto minc = min_temporal_cut(inst);
  REQUIRE(inst.budget.has_value());
  CHECK(*inst.budget == static_cast<int>(std::ceil(1.5 * minc.objective_value - 1e-9)));

  fo.entries = static_cast<int>(mould.nodes.size());
  CHECK_THROWS_AS(finalize_instance(mould, {}, fo, rng), GraphError);
  fo = {};
  fo.budget_factor = 0.5;
  CHECK_THROWS_AS(finalize_instance(mould, {}, fo, rng), GraphError);
}

TEST_CASE("finalizing a mould where DA is cut off") {
  Rng rng(2);
  FinalizeOptions fo;
  fo.entries = 2;
  fo.horizon = 5;
  CHECK_THROWS_WITH_AS(finalize_instance(parse_mould(kMould), {}, fo, rng), doctest::Contains("unreachable"),
                       GraphError);
  // With bob in "admins" the group alone separates both entries from DA.
  auto m = parse_mould(kMould);
  m.edges.push_back({1, 4, 1});
  const auto inst = finalize_instance(m, {}, fo, rng);
  CHECK(*inst.budget == 2);
}

TEST_CASE("rebudget") {
  CHECK(*rebudget(fixture_f1(), 1.5).budget == 3);
  CHECK(*rebudget(fixture_f1(), 1.0).budget == 2);
  CHECK(*rebudget(fixture_disjoint(3), 2.0).budget == 6);
  CHECK_THROWS_AS(rebudget(fixture_f1(), 0.9), GraphError);
}

TEST_CASE("named fixtures") {
  CHECK(fixture("disjoint_k(3)").blockable.size() == 6);
  const auto star = fixture("star_static_heavy(40,20)");
  CHECK(star.node_count() >= 40);
  CHECK(target_reachable(star));
  CHECK_THROWS(fixture("nonsense"));
  CHECK_THROWS(fixture_disjoint(0));
}

TEST_CASE("random instances are valid") {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto inst = random_instance({}, rng);
    CHECK(inst.da == static_cast<NodeId>(inst.node_count() - 1));
    for (NodeId b : inst.blockable) CHECK(b >= 2);
  }
  RandomInstanceParams bad;
  bad.entries = 10;
  CHECK_THROWS_AS(random_instance(bad, rng), GraphError);
}
