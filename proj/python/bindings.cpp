#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decoyrt/attacker.hpp"
#include "decoyrt/cut_solver.hpp"
#include "decoyrt/edo.hpp"
#include "decoyrt/instance_gen.hpp"
#include "decoyrt/reachability.hpp"
#include "decoyrt/report.hpp"

namespace py = pybind11;
using namespace decoyrt;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

NodeSet placement(const Instance& inst, const std::vector<std::string>& names) {
  NodeSet cut(inst.node_count());
  for (const auto& n : names) {
    const NodeId v = inst.graph.require(n);
    if (!inst.is_blockable(v)) throw GraphError("node '" + n + "' is not blockable");
    cut.insert(v);
  }
  return cut;
}

std::vector<std::string> names_of(const Instance& inst, const std::vector<NodeId>& ids) {
  std::vector<std::string> out;
  for (NodeId v : ids) out.push_back(inst.graph.node(v).name);
  return out;
}

py::list path_hops(const Instance& inst, const TemporalPath& p) {
  py::list hops;
  for (const auto& e : p.edges) {
    hops.append(py::make_tuple(inst.graph.node(e.from).name, inst.graph.node(e.to).name, e.time, e.arrival()));
  }
  return hops;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal decoy placement: attacker oracle, minimum cuts and evolutionary optimizers";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_readonly("name", &Instance::name)
      .def_property_readonly("node_count", &Instance::node_count)
      .def_property_readonly("entries", [](const Instance& i) { return names_of(i, i.entries); })
      .def_property_readonly("da", [](const Instance& i) { return i.graph.node(i.da).name; })
      .def_property_readonly("blockable", [](const Instance& i) { return names_of(i, i.blockable); })
      .def_readonly("budget", &Instance::budget)
      .def_property_readonly("interval", [](const Instance& i) {
        return py::make_tuple(i.interval().t_alpha, i.interval().t_omega);
      })
      .def_property_readonly("static_edge_count", [](const Instance& i) { return i.graph.static_edge_count(); })
      .def_property_readonly("dynamic_edge_count", [](const Instance& i) { return i.graph.dynamic_edge_count(); })
      .def("to_json", &serialize_instance)
      .def("digest", &instance_digest)
      .def("save", [](const Instance& i, const std::string& path) { save_instance(i, path); })
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.name + " |V|=" + std::to_string(i.node_count()) + ">";
      });

  m.def("load_instance", [](const std::string& path) { return load_instance(path); }, py::arg("path"));
  m.def("parse_instance", &parse_instance, py::arg("text"), py::arg("name") = std::string());
  m.def("fixture", [](const std::string& name) { return fixture(name); }, py::arg("name"),
        "F1, chain4, disjoint_k(K) or star_static_heavy(N,T)");
  m.def("with_budget_factor", &rebudget, py::arg("instance"), py::arg("budget_factor"));

  m.def(
      "earliest_arrival",
      [](const Instance& inst, const std::string& algorithm, std::optional<std::vector<std::string>> sources) {
        std::vector<NodeId> src = inst.entries;
        if (sources) {
          src.clear();
          for (const auto& n : *sources) src.push_back(inst.graph.require(n));
        }
        ArrivalMap am;
        if (algorithm == "dijkstra") am = ea_dijkstra(inst.graph, src, inst.interval());
        else if (algorithm == "wu") am = ea_wu(inst.graph, src, inst.interval());
        else if (algorithm == "bruteforce") am = ea_bruteforce(inst.graph, src, inst.interval());
        else throw GraphError("unknown algorithm '" + algorithm + "'");
        py::dict out;
        for (NodeId v = 0; v < static_cast<NodeId>(inst.node_count()); ++v) {
          if (am.reached(v)) out[py::str(inst.graph.node(v).name)] = am.arrival[v];
        }
        return out;
      },
      py::arg("instance"), py::arg("algorithm") = "dijkstra", py::arg("sources") = py::none());

  m.def(
      "is_cut",
      [](const Instance& inst, const std::vector<std::string>& blocks) {
        return is_temporal_cut(inst, placement(inst, blocks));
      },
      py::arg("instance"), py::arg("blocks"));

  m.def(
      "attack",
      [](const Instance& inst, const std::vector<std::string>& blocks, const std::string& mode) {
        const auto cut = placement(inst, blocks);
        const auto fr = fitness_full(inst, cut, parse_attack_mode(mode));
        py::dict out;
        out["mode"] = mode;
        out["status"] = std::string(to_string(fr.status));
        out["feasible"] = fr.feasible();
        out["response_time"] = fr.value;
        out["fell_back"] = fr.fell_back;
        if (fr.witness && fr.witness->status == AttackStatus::optimal) {
          out["contact"] = inst.graph.node(fr.witness->contact).name;
          out["path"] = path_hops(inst, fr.witness->full_path());
        } else {
          out["contact"] = py::none();
          out["path"] = py::list();
        }
        return out;
      },
      py::arg("instance"), py::arg("blocks"), py::arg("mode") = "exact");

  m.def(
      "min_cut",
      [](const Instance& inst) {
        const auto sol = min_temporal_cut(inst);
        py::dict out;
        out["status"] = std::string(to_string(sol.status));
        out["size"] = sol.objective_value;
        out["blocks"] = names_of(inst, sol.blocks.members());
        return out;
      },
      py::arg("instance"));

  m.def(
      "export_lp",
      [](const Instance& inst, const std::string& variant, const std::vector<std::string>& fixed,
         std::optional<int> budget) {
        IlpVariant v;
        if (variant == "mincut") v = IlpVariant::mincut;
        else if (variant == "repair") v = IlpVariant::repair;
        else throw GraphError("unknown LP variant '" + variant + "'");
        return export_ilp(inst, v, placement(inst, fixed), budget);
      },
      py::arg("instance"), py::arg("variant") = "mincut", py::arg("fixed") = std::vector<std::string>{},
      py::arg("budget") = py::none());

  m.def(
      "solve",
      [](const Instance& inst, const py::dict& config) {
        nlohmann::json doc = nlohmann::json::object();
        const auto text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
        if (!config.empty()) doc = nlohmann::json::parse(text);
        const auto cfg = config_from_json(doc);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_optimizer(inst, cfg);
        }
        return to_python(result_to_json(inst, r, cfg));
      },
      py::arg("instance"), py::arg("config") = py::dict(),
      "Runs one optimizer; config keys match the JSON config file");

  m.def(
      "generate_synthetic",
      [](std::uint64_t seed, int entries, double blockable_fraction, double budget_factor, int horizon, int events) {
        Rng rng(seed);
        const auto mould = synth_mould({}, rng);
        TraceParams tp;
        tp.horizon = horizon;
        tp.events = events;
        const auto trace = synth_trace(tp, rng);
        const auto mapping = build_mapping(trace, mould, rng);
        SessionOptions so;
        so.horizon = horizon;
        FinalizeOptions fo;
        fo.entries = entries;
        fo.blockable_fraction = blockable_fraction;
        fo.budget_factor = budget_factor;
        fo.horizon = horizon;
        return finalize_instance(mould, sessions_to_edges(trace, so, mapping), fo, rng,
                                 "synthetic(seed=" + std::to_string(seed) + ")");
      },
      py::arg("seed") = 1, py::arg("entries") = 10, py::arg("blockable_fraction") = 0.9,
      py::arg("budget_factor") = 1.5, py::arg("horizon") = 100, py::arg("events") = 300);
}
