#include "decoyrt/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace decoyrt {

using nlohmann::json;

bool Instance::is_blockable(NodeId v) const { return blockable_index(v) >= 0; }

int Instance::blockable_index(NodeId v) const {
  auto it = std::lower_bound(blockable.begin(), blockable.end(), v);
  if (it == blockable.end() || *it != v) return -1;
  return static_cast<int>(it - blockable.begin());
}

NodeSet Instance::cut_from_bits(const std::vector<bool>& bits) const {
  NodeSet cut(node_count());
  for (std::size_t i = 0; i < bits.size() && i < blockable.size(); ++i) {
    if (bits[i]) cut.insert(blockable[i]);
  }
  return cut;
}

std::vector<bool> Instance::bits_from_cut(const NodeSet& cut) const {
  std::vector<bool> bits(blockable.size(), false);
  for (std::size_t i = 0; i < blockable.size(); ++i) bits[i] = cut.contains(blockable[i]);
  return bits;
}

Instance make_instance(std::string name, TemporalGraph graph, std::vector<NodeId> entries,
                       NodeId da, std::vector<NodeId> blockable, std::optional<int> budget) {
  const auto n = static_cast<NodeId>(graph.node_count());
  auto in_range = [n](NodeId v) { return v >= 0 && v < n; };
  if (!in_range(da)) throw GraphError("target node id out of range");
  int da_kind = 0;
  for (const auto& nd : graph.nodes()) {
    if (nd.kind == NodeKind::domain_admin) ++da_kind;
  }
  if (da_kind != 1) {
    throw GraphError("instance must contain exactly one domain_admin node, found " +
                     std::to_string(da_kind));
  }
  if (graph.node(da).kind != NodeKind::domain_admin) {
    throw GraphError("target node is not the domain_admin node");
  }
  std::sort(blockable.begin(), blockable.end());
  if (std::adjacent_find(blockable.begin(), blockable.end()) != blockable.end()) {
    throw GraphError("duplicate blockable node");
  }
  for (NodeId v : blockable) {
    if (!in_range(v)) throw GraphError("blockable node id out of range");
    if (v == da) throw GraphError("target node cannot be blockable");
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  for (NodeId s : entries) {
    if (!in_range(s)) throw GraphError("entry node id out of range");
    if (s == da) throw GraphError("target node cannot be an entry");
    if (std::binary_search(blockable.begin(), blockable.end(), s)) {
      throw GraphError("entry node '" + graph.node(s).name + "' cannot be blockable");
    }
  }
  if (budget && *budget < 0) throw GraphError("budget must be non-negative");
  Instance inst;
  inst.name = std::move(name);
  inst.graph = std::move(graph);
  inst.entries = std::move(entries);
  inst.da = da;
  inst.blockable = std::move(blockable);
  inst.budget = budget;
  return inst;
}

namespace {

bool is_int(const json& j) { return j.is_number_integer() || j.is_number_unsigned(); }

struct Collector {
  std::vector<Diagnostic> out;
  void add(std::string path, std::string msg) { out.push_back({std::move(path), std::move(msg)}); }
};

void diagnose(const json& doc, Collector& c) {
  if (!doc.is_object()) {
    c.add("", "document must be a JSON object");
    return;
  }
  for (const char* key : {"nodes", "static_edges", "dynamic_edges", "interval", "entries", "da"}) {
    if (!doc.contains(key)) c.add(std::string("/") + key, "missing required key");
  }
  if (!c.out.empty()) return;

  Time t_alpha = 0, t_omega = 0;
  const auto& iv = doc["interval"];
  if (!iv.is_object() || !iv.contains("t_alpha") || !iv.contains("t_omega") ||
      !is_int(iv["t_alpha"]) || !is_int(iv["t_omega"])) {
    c.add("/interval", "interval needs integer t_alpha and t_omega");
  } else {
    t_alpha = iv["t_alpha"].get<Time>();
    t_omega = iv["t_omega"].get<Time>();
    if (t_alpha < 0) c.add("/interval/t_alpha", "must be non-negative");
    if (t_alpha >= t_omega) c.add("/interval", "t_alpha must be < t_omega");
  }

  const auto& nodes = doc["nodes"];
  std::size_t n = 0;
  std::vector<bool> blockable;
  std::vector<std::string> kinds;
  if (!nodes.is_array()) {
    c.add("/nodes", "must be an array");
  } else {
    n = nodes.size();
    blockable.assign(n, false);
    kinds.assign(n, "other");
    std::set<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = "/nodes/" + std::to_string(i);
      const auto& nd = nodes[i];
      if (!nd.is_object() || !nd.contains("id") || !is_int(nd["id"])) {
        c.add(p, "node needs an integer id");
        continue;
      }
      if (nd["id"].get<long long>() != static_cast<long long>(i)) {
        c.add(p + "/id", "ids must be contiguous 0..|V|-1 in order");
      }
      if (nd.contains("name")) {
        if (!nd["name"].is_string()) {
          c.add(p + "/name", "must be a string");
        } else if (!names.insert(nd["name"].get<std::string>()).second) {
          c.add(p + "/name", "duplicate node name");
        }
      }
      if (nd.contains("kind")) {
        if (!nd["kind"].is_string()) {
          c.add(p + "/kind", "must be a string");
        } else {
          try {
            parse_node_kind(nd["kind"].get<std::string>());
            kinds[i] = nd["kind"].get<std::string>();
          } catch (const GraphError& e) {
            c.add(p + "/kind", e.what());
          }
        }
      }
      if (nd.contains("blockable")) {
        if (!nd["blockable"].is_boolean()) {
          c.add(p + "/blockable", "must be a boolean");
        } else {
          blockable[i] = nd["blockable"].get<bool>();
        }
      }
    }
    const auto da_kinds = std::count(kinds.begin(), kinds.end(), "domain_admin");
    if (da_kinds != 1) {
      c.add("/nodes", "exactly one node must have kind domain_admin, found " +
                          std::to_string(da_kinds));
    }
  }

  auto valid_id = [n](const json& j) {
    return is_int(j) && j.get<long long>() >= 0 && j.get<long long>() < static_cast<long long>(n);
  };

  std::set<std::pair<long long, long long>> pairs;
  auto check_pair = [&](const std::string& p, const json& u, const json& v) {
    if (!valid_id(u) || !valid_id(v)) {
      c.add(p, "edge references unknown node");
      return false;
    }
    if (u == v) c.add(p, "self-loop");
    if (!pairs.emplace(u.get<long long>(), v.get<long long>()).second) {
      c.add(p, "duplicated edge pair");
    }
    return true;
  };

  if (!doc["static_edges"].is_array()) {
    c.add("/static_edges", "must be an array");
  } else {
    const auto& st = doc["static_edges"];
    for (std::size_t i = 0; i < st.size(); ++i) {
      const auto p = "/static_edges/" + std::to_string(i);
      const auto& e = st[i];
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        c.add(p, "static edge must be [u, v] or [u, v, duration]");
        continue;
      }
      check_pair(p, e[0], e[1]);
      if (e.size() == 3 && (!is_int(e[2]) || e[2].get<long long>() < 1)) {
        c.add(p + "/2", "duration must be a positive integer");
      }
    }
  }

  if (!doc["dynamic_edges"].is_array()) {
    c.add("/dynamic_edges", "must be an array");
  } else {
    const auto& dy = doc["dynamic_edges"];
    for (std::size_t i = 0; i < dy.size(); ++i) {
      const auto p = "/dynamic_edges/" + std::to_string(i);
      const auto& e = dy[i];
      if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("times") ||
          !e["times"].is_array()) {
        c.add(p, "dynamic edge needs u, v and a times array");
        continue;
      }
      check_pair(p, e["u"], e["v"]);
      Time duration = 1;
      if (e.contains("duration")) {
        if (!is_int(e["duration"]) || e["duration"].get<long long>() < 1) {
          c.add(p + "/duration", "duration must be a positive integer");
        } else {
          duration = e["duration"].get<Time>();
        }
      }
      const auto& times = e["times"];
      if (times.empty()) c.add(p + "/times", "dynamic edge has no labels");
      for (std::size_t k = 0; k < times.size(); ++k) {
        const auto tp = p + "/times/" + std::to_string(k);
        if (!is_int(times[k])) {
          c.add(tp, "time label must be an integer");
          continue;
        }
        const Time t = times[k].get<Time>();
        if (t < t_alpha || t > t_omega - duration) c.add(tp, "label out of interval");
        if (k > 0 && is_int(times[k - 1])) {
          const Time prev = times[k - 1].get<Time>();
          if (t < prev) c.add(tp, "unsorted labels");
          if (t == prev) c.add(tp, "duplicate label");
        }
      }
      if (t_omega > t_alpha &&
          times.size() == static_cast<std::size_t>(t_omega - duration - t_alpha + 1)) {
        c.add(p, "dynamic edge is present at every time step (should be static)");
      }
    }
  }

  long long da = -1;
  if (!valid_id(doc["da"])) {
    c.add("/da", "must be a valid node id");
  } else {
    da = doc["da"].get<long long>();
    if (blockable[da]) c.add("/nodes/" + std::to_string(da) + "/blockable", "DA is blockable");
    if (kinds[da] != "domain_admin") c.add("/da", "DA node kind must be domain_admin");
  }

  if (!doc["entries"].is_array()) {
    c.add("/entries", "must be an array");
  } else {
    const auto& en = doc["entries"];
    if (en.empty()) c.add("/entries", "at least one entry node is required");
    for (std::size_t i = 0; i < en.size(); ++i) {
      const auto p = "/entries/" + std::to_string(i);
      if (!valid_id(en[i])) {
        c.add(p, "must be a valid node id");
        continue;
      }
      const auto s = en[i].get<long long>();
      if (s == da) c.add(p, "entry equals DA");
      if (blockable[s]) c.add(p, "entry node is blockable");
    }
  }

  if (doc.contains("budget") && !doc["budget"].is_null()) {
    if (!is_int(doc["budget"]) || doc["budget"].get<long long>() < 0) {
      c.add("/budget", "must be a non-negative integer");
    }
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(std::string("parse error: ") + e.what());
  }
}

}  // namespace

std::vector<Diagnostic> diagnose_instance_text(const std::string& text) {
  Collector c;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    c.add("", std::string("parse error: ") + e.what());
    return c.out;
  }
  diagnose(doc, c);
  return c.out;
}

Instance parse_instance(const std::string& text, std::string name) {
  const json doc = parse_json(text);
  Collector c;
  diagnose(doc, c);
  if (!c.out.empty()) {
    std::string msg = c.out.front().path + ": " + c.out.front().message;
    if (c.out.size() > 1) msg += " (+" + std::to_string(c.out.size() - 1) + " more)";
    throw GraphError(msg);
  }

  std::vector<Node> nodes;
  std::vector<NodeId> blockable;
  for (const auto& nd : doc["nodes"]) {
    Node node;
    node.id = nd["id"].get<NodeId>();
    node.name = nd.value("name", std::to_string(node.id));
    node.kind = parse_node_kind(nd.value("kind", std::string("other")));
    if (nd.value("blockable", false)) blockable.push_back(node.id);
    nodes.push_back(std::move(node));
  }
  std::vector<StaticEdgeSpec> st;
  for (const auto& e : doc["static_edges"]) {
    st.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e.size() == 3 ? e[2].get<Time>() : 1});
  }
  std::vector<DynamicEdgeSpec> dy;
  for (const auto& e : doc["dynamic_edges"]) {
    dy.push_back({e["u"].get<NodeId>(), e["v"].get<NodeId>(), e["times"].get<std::vector<Time>>(),
                  e.value("duration", Time{1})});
  }
  Interval iv{doc["interval"]["t_alpha"].get<Time>(), doc["interval"]["t_omega"].get<Time>()};
  auto graph = TemporalGraph::build(std::move(nodes), std::move(st), std::move(dy), iv);

  std::optional<int> budget;
  if (doc.contains("budget") && !doc["budget"].is_null()) budget = doc["budget"].get<int>();
  if (name.empty()) name = doc.value("name", std::string{});
  return make_instance(std::move(name), std::move(graph), doc["entries"].get<std::vector<NodeId>>(),
                       doc["da"].get<NodeId>(), std::move(blockable), budget);
}

std::string serialize_instance(const Instance& instance) {
  const auto& g = instance.graph;
  json doc;
  if (!instance.name.empty()) doc["name"] = instance.name;
  json nodes = json::array();
  for (const auto& nd : g.nodes()) {
    nodes.push_back({{"id", nd.id},
                     {"name", nd.name},
                     {"kind", std::string(to_string(nd.kind))},
                     {"blockable", instance.is_blockable(nd.id)}});
  }
  doc["nodes"] = std::move(nodes);
  json st = json::array();
  json dy = json::array();
  for (const auto& e : g.edges()) {
    if (e.is_static) {
      json row = {e.from, e.to};
      if (e.duration != 1) row.push_back(e.duration);
      st.push_back(std::move(row));
    } else {
      json row = {{"u", e.from}, {"v", e.to}, {"times", e.labels}};
      if (e.duration != 1) row["duration"] = e.duration;
      dy.push_back(std::move(row));
    }
  }
  doc["static_edges"] = std::move(st);
  doc["dynamic_edges"] = std::move(dy);
  doc["interval"] = {{"t_alpha", g.interval().t_alpha}, {"t_omega", g.interval().t_omega}};
  doc["entries"] = instance.entries;
  doc["da"] = instance.da;
  if (instance.budget) doc["budget"] = *instance.budget;
  return doc.dump(1) + "\n";
}

namespace {

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Instance load_instance(const std::filesystem::path& file) {
  return parse_instance(read_file(file), file.stem().string());
}

void save_instance(const Instance& instance, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << serialize_instance(instance);
}

std::string instance_digest(const Instance& instance) {
  // The name is derived from the file name; leave it out so identical
  // contents hash identically.
  Instance anonymous = instance;
  anonymous.name.clear();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize_instance(anonymous)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace decoyrt
