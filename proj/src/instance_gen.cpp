#include "decoyrt/instance_gen.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "decoyrt/cut_solver.hpp"

namespace decoyrt {

using json = nlohmann::json;

std::vector<NodeId> Mould::of_kind(NodeKind kind) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes) {
    if (n.kind == kind) out.push_back(n.id);
  }
  return out;
}

namespace {

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw GraphError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The mould is checked by building a one-step static graph over it.
void check_mould(const Mould& m) {
  TemporalGraph::build(m.nodes, m.edges, {}, Interval{0, 1});
  const auto das = m.of_kind(NodeKind::domain_admin);
  if (das.size() != 1) {
    throw GraphError("mould must contain exactly one domain_admin node, found " +
                     std::to_string(das.size()));
  }
  if (m.da != das.front()) throw GraphError("da does not name the domain_admin node");
}

}  // namespace

Mould parse_mould(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw GraphError("mould must be a JSON object");
  for (const char* key : {"nodes", "static_edges", "da"}) {
    if (!doc.contains(key)) throw GraphError(std::string("/") + key + ": missing required key");
  }
  if (doc.contains("dynamic_edges") && !doc["dynamic_edges"].empty()) {
    throw GraphError("mould must be static");
  }
  Mould m;
  try {
    for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
      const auto& nd = doc["nodes"][i];
      Node node;
      node.id = nd.at("id").get<NodeId>();
      node.name = nd.value("name", std::to_string(node.id));
      node.kind = parse_node_kind(nd.value("kind", std::string("other")));
      m.nodes.push_back(std::move(node));
    }
    for (std::size_t i = 0; i < doc["static_edges"].size(); ++i) {
      const auto& e = doc["static_edges"][i];
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw GraphError("/static_edges/" + std::to_string(i) + ": expected [u, v] or [u, v, d]");
      }
      m.edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e.size() == 3 ? e[2].get<Time>() : 1});
    }
    m.da = doc["da"].get<NodeId>();
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed mould: ") + e.what());
  }
  check_mould(m);
  return m;
}

Mould load_mould(const std::filesystem::path& file) { return parse_mould(read_text(file)); }

std::optional<Time> parse_timestamp(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  Time value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return value;

  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  int consumed = 0;
  const std::string buf(text);
  if (std::sscanf(buf.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi, &s,
                  &consumed) != 7) {
    return std::nullopt;
  }
  if (sep != 'T' && sep != ' ') return std::nullopt;
  std::string_view rest = text.substr(static_cast<std::size_t>(consumed));
  if (!(rest.empty() || rest == "Z")) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
  const auto days = sys_days(ymd).time_since_epoch().count();
  return static_cast<Time>(days) * 86400 + h * 3600 + mi * 60 + s;
}

TraceLoad parse_auth_trace(const std::string& text) {
  TraceLoad out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool has_end = false;
  auto fail = [&](const std::string& why) {
    ++out.malformed;
    out.errors.push_back("line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (!header_seen) {
      header_seen = true;
      if (cols.size() < 3 || cols[0] != "time" || cols[1] != "user" || cols[2] != "computer" ||
          (cols.size() == 4 && cols[3] != "end_time") || cols.size() > 4) {
        throw GraphError("auth trace header must be time,user,computer[,end_time]");
      }
      has_end = cols.size() == 4;
      continue;
    }
    const std::size_t want = has_end ? 4 : 3;
    if (cols.size() != want && !(has_end && cols.size() == 3)) {
      fail("expected " + std::to_string(want) + " fields");
      continue;
    }
    AuthEvent ev;
    const auto t = parse_timestamp(cols[0]);
    if (!t) {
      fail("bad timestamp '" + cols[0] + "'");
      continue;
    }
    ev.time = *t;
    ev.user = cols[1];
    ev.computer = cols[2];
    if (ev.user.empty() || ev.computer.empty()) {
      fail("empty user or computer");
      continue;
    }
    if (has_end && cols.size() == 4 && !cols[3].empty()) {
      const auto e = parse_timestamp(cols[3]);
      if (!e || *e < ev.time) {
        fail("bad end_time '" + cols[3] + "'");
        continue;
      }
      ev.end_time = *e;
    }
    out.events.push_back(std::move(ev));
  }
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const AuthEvent& a, const AuthEvent& b) { return a.time < b.time; });
  return out;
}

TraceLoad load_auth_trace(const std::filesystem::path& file) {
  return parse_auth_trace(read_text(file));
}

EntityMapping build_mapping(const std::vector<AuthEvent>& events, const Mould& mould, Rng& rng) {
  std::set<std::string> users, computers;
  for (const auto& e : events) {
    users.insert(e.user);
    computers.insert(e.computer);
  }
  EntityMapping mapping;
  auto assign = [&](const std::set<std::string>& names, NodeKind kind, const char* what) {
    auto pool = mould.of_kind(kind);
    if (names.size() > pool.size()) {
      throw GraphError(std::string("mapping exhausted: ") + std::to_string(names.size()) + " trace " +
                       what + " but mould has " + std::to_string(pool.size()));
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t i = 0;
    for (const auto& n : names) mapping.emplace(std::string(what) + ":" + n, pool[i++]);
  };
  assign(users, NodeKind::user, "user");
  assign(computers, NodeKind::computer, "computer");
  return mapping;
}

std::vector<DynamicEdgeSpec> sessions_to_edges(const std::vector<AuthEvent>& events,
                                               const SessionOptions& options,
                                               const EntityMapping& mapping) {
  if (options.snapshot_interval <= 0) throw GraphError("snapshot interval must be positive");
  if (options.horizon <= 0) throw GraphError("horizon must be positive");
  if (events.empty()) return {};
  Time start = options.trace_start.value_or(events.front().time);
  for (const auto& e : events) {
    if (!options.trace_start) start = std::min(start, e.time);
  }
  const Time step = options.snapshot_interval;
  const Time fallback = options.default_session.value_or(step);

  std::map<std::pair<NodeId, NodeId>, std::set<Time>> labels;
  for (const auto& e : events) {
    const auto u = mapping.find("user:" + e.user);
    const auto c = mapping.find("computer:" + e.computer);
    if (u == mapping.end() || c == mapping.end()) {
      throw GraphError("trace entity without mapping: " + e.user + "@" + e.computer);
    }
    const Time begin = std::max<Time>(e.time - start, 0);
    Time end = e.end_time ? *e.end_time - start : begin + fallback;
    if (end <= begin) end = begin + 1;
    // Snapshot k sits at instant (k - 1) * step; sessions are [begin, end).
    const Time lo = options.overlap ? begin / step + 1 : (begin + step - 1) / step + 1;
    const Time hi = std::min((end - 1) / step + 1, options.horizon);
    for (Time k = lo; k <= hi; ++k) labels[{c->second, u->second}].insert(k);
  }
  std::vector<DynamicEdgeSpec> out;
  for (auto& [pair, ts] : labels) {
    if (ts.empty()) continue;
    out.push_back({pair.first, pair.second, std::vector<Time>(ts.begin(), ts.end()), 1});
  }
  return out;
}

std::vector<AuthEvent> synth_trace(const TraceParams& p, Rng& rng) {
  std::vector<AuthEvent> out;
  if (p.events <= 0) return out;
  if (p.users <= 0 || p.computers <= 0) throw GraphError("trace needs users and computers");
  if (p.mean_session_snapshots < 1) throw GraphError("mean session length must be >= 1 snapshot");
  std::uniform_int_distribution<int> user(0, p.users - 1), comp(0, p.computers - 1);
  std::uniform_int_distribution<Time> when(0, p.horizon * p.snapshot_interval - 1);
  std::geometric_distribution<int> extra(1.0 / p.mean_session_snapshots);
  for (int i = 0; i < p.events; ++i) {
    AuthEvent ev;
    ev.time = when(rng);
    ev.user = "u" + std::to_string(user(rng));
    ev.computer = "c" + std::to_string(comp(rng));
    const Time snapshots = 1 + extra(rng);
    ev.end_time = ev.time + snapshots * p.snapshot_interval;
    out.push_back(std::move(ev));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const AuthEvent& a, const AuthEvent& b) { return a.time < b.time; });
  return out;
}

Mould synth_mould(const MouldParams& p, Rng& rng) {
  if (p.users < 1 || p.computers < 1 || p.groups < 1 || p.admin_groups < 1 || p.admin_users < 1 ||
      p.admin_users > p.users || p.admin_groups > p.groups) {
    throw GraphError("invalid mould parameters");
  }
  if (p.extra_edge_prob < 0 || p.extra_edge_prob > 1) throw GraphError("extra_edge_prob must lie in [0,1]");
  Mould m;
  auto add = [&](std::string name, NodeKind kind) {
    const auto id = static_cast<NodeId>(m.nodes.size());
    m.nodes.push_back({id, std::move(name), kind});
    return id;
  };
  std::vector<NodeId> users, comps, groups;
  for (int i = 0; i < p.users; ++i) users.push_back(add("user" + std::to_string(i), NodeKind::user));
  for (int i = 0; i < p.computers; ++i) comps.push_back(add("comp" + std::to_string(i), NodeKind::computer));
  for (int i = 0; i < p.groups; ++i) groups.push_back(add("group" + std::to_string(i), NodeKind::group));
  m.da = add("DA", NodeKind::domain_admin);

  std::set<std::pair<NodeId, NodeId>> seen;
  auto edge = [&](NodeId u, NodeId v) {
    if (u != v && seen.insert({u, v}).second) m.edges.push_back({u, v, 1});
  };
  const int ordinary = p.groups - p.admin_groups;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  // Groups [ordinary, groups) are admin groups, each with its own link to DA
  // so that one decoy never suffices.
  for (int g = ordinary; g < p.groups; ++g) edge(groups[g], m.da);
  // Ordinary groups administer computers.
  for (int g = 0; g < ordinary; ++g) edge(groups[g], comps[pick(0, p.computers - 1)]);
  for (int c = 0; c < p.computers && ordinary > 0; ++c) edge(groups[pick(0, ordinary - 1)], comps[c]);
  // Admin users belong to an admin group, everyone else to an ordinary one.
  for (int u = 0; u < p.users; ++u) {
    const bool admin = u >= p.users - p.admin_users || ordinary == 0;
    edge(users[u], admin ? groups[pick(ordinary, p.groups - 1)] : groups[pick(0, ordinary - 1)]);
  }
  std::bernoulli_distribution extra(p.extra_edge_prob);
  for (int u = 0; u < p.users - p.admin_users && ordinary > 0; ++u) {
    for (int g = 0; g < ordinary; ++g) {
      if (extra(rng)) edge(users[u], groups[g]);
    }
  }
  for (int g = 0; g < ordinary; ++g) {
    for (int c = 0; c < p.computers; ++c) {
      if (extra(rng)) edge(groups[g], comps[c]);
    }
  }
  check_mould(m);
  return m;
}

namespace {

int budget_for(const Instance& inst, double factor) {
  const auto sol = min_temporal_cut(inst);
  if (sol.status == CutStatus::infeasible_within_budget) throw GraphError("instance undefendable");
  if (sol.status == CutStatus::unreachable_trivial) throw GraphError("DA unreachable from the entries");
  return static_cast<int>(std::ceil(factor * sol.objective_value - 1e-9));
}

}  // namespace

Instance finalize_instance(const Mould& mould, std::vector<DynamicEdgeSpec> dynamic_edges,
                           const FinalizeOptions& o, Rng& rng, std::string name) {
  if (!(o.blockable_fraction > 0 && o.blockable_fraction <= 1)) {
    throw GraphError("blockable fraction must lie in (0,1]");
  }
  if (!(o.budget_factor >= 1)) throw GraphError("budget factor must be at least 1");
  if (o.entries < 1) throw GraphError("at least one entry is required");
  const auto n = static_cast<int>(mould.nodes.size());
  if (o.entries > n - 1) throw GraphError("more entries requested than non-DA nodes");

  BuildOptions bo;
  bo.promote_full_dynamic = true;
  auto graph = TemporalGraph::build(mould.nodes, mould.edges, std::move(dynamic_edges),
                                    Interval{1, o.horizon + 1}, bo);

  std::vector<NodeId> users, others;
  for (const auto& nd : mould.nodes) {
    if (nd.id == mould.da) continue;
    (nd.kind == NodeKind::user ? users : others).push_back(nd.id);
  }
  std::shuffle(users.begin(), users.end(), rng);
  std::shuffle(others.begin(), others.end(), rng);
  std::vector<NodeId> entries(users.begin(), users.begin() + std::min<std::ptrdiff_t>(o.entries, std::ssize(users)));
  for (std::size_t i = 0; entries.size() < static_cast<std::size_t>(o.entries); ++i) entries.push_back(others[i]);

  std::vector<NodeId> candidates;
  const NodeSet entry_set(mould.nodes.size(), entries);
  for (const auto& nd : mould.nodes) {
    if (nd.id != mould.da && !entry_set.contains(nd.id)) candidates.push_back(nd.id);
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const auto keep = static_cast<std::size_t>(std::llround(o.blockable_fraction * static_cast<double>(candidates.size())));
  candidates.resize(std::min(keep, candidates.size()));

  Instance inst = make_instance(std::move(name), std::move(graph), entries, mould.da, candidates);
  inst.budget = budget_for(inst, o.budget_factor);
  return inst;
}

Instance rebudget(const Instance& instance, double budget_factor) {
  if (!(budget_factor >= 1)) throw GraphError("budget factor must be at least 1");
  Instance out = instance;
  out.budget = budget_for(out, budget_factor);
  return out;
}

namespace {

struct FixtureBuilder {
  std::vector<Node> nodes;
  std::vector<StaticEdgeSpec> st;
  std::vector<DynamicEdgeSpec> dy;

  NodeId node(std::string name, NodeKind kind) {
    const auto id = static_cast<NodeId>(nodes.size());
    nodes.push_back({id, std::move(name), kind});
    return id;
  }
};

}  // namespace

Instance fixture_f1() {
  FixtureBuilder b;
  const auto s1 = b.node("s1", NodeKind::user);
  const auto s2 = b.node("s2", NodeKind::user);
  const auto gr1 = b.node("Gr1", NodeKind::group);
  const auto cp1 = b.node("Cp1", NodeKind::computer);
  const auto cp2 = b.node("Cp2", NodeKind::computer);
  const auto cp3 = b.node("Cp3", NodeKind::computer);
  const auto u2 = b.node("U2", NodeKind::user);
  const auto u3 = b.node("U3", NodeKind::user);
  const auto da = b.node("DA", NodeKind::domain_admin);
  b.st = {{s1, gr1}, {gr1, cp2}, {cp2, u2}, {u2, da}, {u3, da}};
  b.dy = {{s2, cp1, {1}}, {cp1, cp3, {2, 6}}, {cp3, u3, {4, 6}}};
  auto g = TemporalGraph::build(b.nodes, b.st, b.dy, Interval{1, 10});
  // Decoys go on hosts and accounts; the group is not blockable.
  return make_instance("F1", std::move(g), {s1, s2}, da, {cp1, cp2, cp3, u2, u3}, 3);
}

Instance fixture_chain4() {
  FixtureBuilder b;
  const auto s = b.node("s", NodeKind::user);
  const auto a = b.node("a", NodeKind::computer);
  const auto c = b.node("b", NodeKind::user);
  const auto da = b.node("DA", NodeKind::domain_admin);
  b.st = {{s, a}, {a, c}, {c, da}};
  auto g = TemporalGraph::build(b.nodes, b.st, {}, Interval{1, 10});
  return make_instance("chain4", std::move(g), {s}, da, {a, c}, 2);
}

Instance fixture_disjoint(int k) {
  if (k < 1) throw GraphError("disjoint_k needs k >= 1");
  FixtureBuilder b;
  const auto s = b.node("s", NodeKind::user);
  std::vector<NodeId> blockable;
  std::vector<std::pair<NodeId, NodeId>> mids;
  for (int i = 1; i <= k; ++i) {
    const auto x = b.node("x" + std::to_string(i), NodeKind::computer);
    const auto y = b.node("y" + std::to_string(i), NodeKind::user);
    mids.emplace_back(x, y);
    blockable.push_back(x);
    blockable.push_back(y);
  }
  const auto da = b.node("DA", NodeKind::domain_admin);
  for (auto [x, y] : mids) {
    b.st.push_back({s, x});
    b.st.push_back({x, y});
    b.st.push_back({y, da});
  }
  auto g = TemporalGraph::build(b.nodes, b.st, {}, Interval{1, 10});
  return make_instance("disjoint_k(" + std::to_string(k) + ")", std::move(g), {s}, da, blockable, k);
}

Instance fixture_star_static_heavy(int n, Time t_max) {
  if (n < 8) throw GraphError("star_static_heavy needs n >= 8");
  if (t_max < 2) throw GraphError("star_static_heavy needs t_max >= 2");
  Rng rng(0x5eed);
  FixtureBuilder b;
  const auto hub = b.node("hub", NodeKind::group);
  std::vector<NodeId> leaves;
  for (int i = 0; i < n - 2; ++i) leaves.push_back(b.node("n" + std::to_string(i), NodeKind::computer));
  const auto da = b.node("DA", NodeKind::domain_admin);
  std::set<std::pair<NodeId, NodeId>> seen;
  auto add_static = [&](NodeId u, NodeId v) {
    if (u != v && seen.insert({u, v}).second) b.st.push_back({u, v, 1});
  };
  const auto m = static_cast<int>(leaves.size());
  for (int i = 0; i < m; ++i) {
    add_static(hub, leaves[i]);
    add_static(leaves[i], hub);
    add_static(leaves[i], leaves[(i + 1) % m]);
  }
  add_static(leaves[static_cast<std::size_t>(m / 2)], da);
  // Few, sparse dynamic edges keep eps_s >= 50 eps_d.
  const auto eps_d = std::max<std::size_t>(1, b.st.size() / 60);
  std::uniform_int_distribution<int> leaf(0, m - 1);
  std::uniform_int_distribution<Time> when(1, t_max - 1);
  while (b.dy.size() < eps_d) {
    const auto u = leaves[leaf(rng)], v = leaves[leaf(rng)];
    if (u == v || !seen.insert({u, v}).second) continue;
    std::set<Time> ts{when(rng), when(rng)};
    b.dy.push_back({u, v, std::vector<Time>(ts.begin(), ts.end()), 1});
  }
  auto g = TemporalGraph::build(b.nodes, b.st, b.dy, Interval{1, t_max});
  std::vector<NodeId> entries{leaves[0], leaves[1], leaves[2]};
  std::vector<NodeId> blockable;
  for (int i = 3; i < m; ++i) blockable.push_back(leaves[i]);
  blockable.push_back(hub);
  return make_instance("star_static_heavy(" + std::to_string(n) + "," + std::to_string(t_max) + ")",
                       std::move(g), entries, da, blockable);
}

namespace {

std::vector<long long> fixture_args(std::string_view name, std::string_view stem) {
  std::string_view rest = name.substr(stem.size());
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
    throw GraphError("fixture " + std::string(stem) + " needs arguments, e.g. " + std::string(stem) + "(3)");
  }
  rest = rest.substr(1, rest.size() - 2);
  std::vector<long long> out;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = rest.substr(0, comma);
    long long v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size()) {
      throw GraphError("bad fixture argument '" + std::string(token) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Instance fixture(std::string_view name) {
  if (name == "F1") return fixture_f1();
  if (name == "chain4") return fixture_chain4();
  if (name.starts_with("disjoint_k")) {
    const auto a = fixture_args(name, "disjoint_k");
    if (a.size() != 1) throw GraphError("disjoint_k takes one argument");
    return fixture_disjoint(static_cast<int>(a[0]));
  }
  if (name.starts_with("star_static_heavy")) {
    const auto a = fixture_args(name, "star_static_heavy");
    if (a.size() != 2) throw GraphError("star_static_heavy takes two arguments");
    return fixture_star_static_heavy(static_cast<int>(a[0]), a[1]);
  }
  throw GraphError("unknown fixture '" + std::string(name) + "'");
}

Instance random_instance(const RandomInstanceParams& p, Rng& rng) {
  if (p.nodes < p.entries + 1 || p.entries < 1) throw GraphError("random instance needs entries < nodes");
  if (p.t_max < 2) throw GraphError("random instance needs t_max >= 2");
  std::vector<Node> nodes;
  for (int i = 0; i < p.nodes; ++i) {
    const bool da = i == p.nodes - 1;
    nodes.push_back({i, da ? "DA" : "v" + std::to_string(i), da ? NodeKind::domain_admin : NodeKind::other});
  }
  std::bernoulli_distribution has_edge(p.edge_prob), dynamic(p.dynamic_share);
  std::uniform_int_distribution<int> nlabels(1, std::max(1, p.max_labels));
  std::uniform_int_distribution<Time> label(1, p.t_max - 1);
  std::vector<StaticEdgeSpec> st;
  std::vector<DynamicEdgeSpec> dy;
  for (NodeId u = 0; u < p.nodes; ++u) {
    for (NodeId v = 0; v < p.nodes; ++v) {
      if (u == v || !has_edge(rng)) continue;
      if (dynamic(rng)) {
        std::set<Time> ts;
        const int k = nlabels(rng);
        for (int i = 0; i < k; ++i) ts.insert(label(rng));
        dy.push_back({u, v, std::vector<Time>(ts.begin(), ts.end()), 1});
      } else {
        st.push_back({u, v, 1});
      }
    }
  }
  BuildOptions bo;
  bo.promote_full_dynamic = true;
  auto g = TemporalGraph::build(std::move(nodes), std::move(st), std::move(dy), Interval{1, p.t_max}, bo);
  std::vector<NodeId> entries;
  for (int i = 0; i < p.entries; ++i) entries.push_back(i);
  std::vector<NodeId> blockable;
  std::bernoulli_distribution pick(p.blockable_fraction);
  for (NodeId v = static_cast<NodeId>(p.entries); v < p.nodes - 1; ++v) {
    if (pick(rng)) blockable.push_back(v);
  }
  return make_instance("random", std::move(g), entries, static_cast<NodeId>(p.nodes - 1), blockable);
}

}  // namespace decoyrt
