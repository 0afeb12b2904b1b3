#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "asns/generate.hpp"
#include "asns/graph.hpp"
#include "asns/scenario.hpp"
#include "asns/selection.hpp"
#include "asns/simulation.hpp"
#include "asns/spectral.hpp"
#include "asns/trace_io.hpp"

namespace py = pybind11;
using namespace asns;

namespace {

py::dict summary_dict(const SimSummary& s) {
  py::dict d;
  d["outcome"] = to_string(s.outcome);
  d["converged"] = s.converged;
  d["convergence_step"] = s.convergence_step;
  d["final_hull_width"] = s.final_hull_width;
  d["last_step"] = s.last_step;
  d["reconstructions"] = s.reconstructions;
  d["edges_per_epoch"] = s.edges_per_epoch;
  d["failure_step"] = s.failure_step;
  d["failure_cause"] = s.failure_cause;
  d["warnings"] = s.warnings;
  return d;
}

py::list edge_list(const std::vector<Edge>& edges) {
  py::list out;
  for (const auto& e : edges) out.append(py::make_tuple(e.from, e.to, e.weight));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resilient consensus with active secure neighbor selection";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<DirectedGraph>(m, "DirectedGraph")
      .def(py::init<int, bool>(), py::arg("n"), py::arg("undirected") = false)
      .def("add_edge", &DirectedGraph::add_edge, py::arg("src"), py::arg("dst"),
           py::arg("weight") = 1.0)
      .def("remove_edge", &DirectedGraph::remove_edge)
      .def("has_edge", &DirectedGraph::has_edge)
      .def_property_readonly("undirected", &DirectedGraph::undirected)
      .def_property_readonly("nodes", &DirectedGraph::nodes)
      .def("node_count", &DirectedGraph::node_count)
      .def("edge_count", &DirectedGraph::edge_count)
      .def("in_neighbors", &DirectedGraph::in_neighbors)
      .def("edges", [](const DirectedGraph& g) { return edge_list(g.edges()); })
      .def("__repr__", [](const DirectedGraph& g) {
        return "<DirectedGraph nodes=" + std::to_string(g.node_count()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("parse_graph", [](const std::string& text) { return parse_graph_literal(text); });
  m.def("format_graph", &format_graph_literal);
  m.def("max_robustness", &max_robustness, py::arg("graph"),
        py::arg("node_limit") = kDefaultRobustnessLimit);
  m.def("spanning_tree_root", &has_rooted_spanning_tree,
        "Lowest-id root of a directed spanning tree, or None");
  m.def("laplacian", [](const DirectedGraph& g) { return build_laplacian(g).matrix; });
  m.def("random_robust_graph",
        py::overload_cast<int, int, std::uint64_t, int>(&random_robust_graph), py::arg("n"),
        py::arg("r"), py::arg("seed") = 0, py::arg("node_limit") = kDefaultRobustnessLimit);

  m.def(
      "smallest_eigenpair",
      [](const DirectedGraph& pre, NodeId leader) {
        const auto eig = smallest_eigenpair(perturbed_laplacian(pre, leader));
        py::dict v1;
        for (std::size_t i = 0; i < eig.order.size(); ++i)
          v1[py::int_(eig.order[i])] = eig.v1(static_cast<Eigen::Index>(i));
        return py::make_tuple(eig.lambda1, v1);
      },
      py::arg("pre_subgraph"), py::arg("leader"),
      "(lambda1, {id: v1 entry}) of the leader-perturbed Laplacian");

  m.def(
      "select_neighbors",
      [](const DirectedGraph& candidates, const std::set<NodeId>& normal,
         std::optional<NodeId> leader, int degree) {
        const auto policy =
            degree <= 1 ? SelectionPolicy::minimum() : SelectionPolicy::flexible(degree);
        const auto ctx =
            prepare_selection(PreDiscriminativeGraph{0, candidates}, normal, leader, policy, 1);
        const auto g = select_in_neighbors(ctx.psi, policy, candidates.nodes());
        return py::make_tuple(ctx.leader, ctx.order, ctx.psi, g);
      },
      py::arg("candidates"), py::arg("normal"), py::arg("leader") = std::nullopt,
      py::arg("degree") = 1, "(leader, order, psi, selected graph)");

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("epsilon", &Scenario::epsilon)
      .def_readwrite("horizon", &Scenario::horizon)
      .def_readwrite("tolerance", &Scenario::tolerance)
      .def_readonly("agents", &Scenario::agents)
      .def_readonly("dimension", &Scenario::dimension)
      .def_readonly("F", &Scenario::F)
      .def_readonly("initial", &Scenario::initial)
      .def_readonly("candidates", &Scenario::candidates)
      .def_property(
          "defense", [](const Scenario& s) { return std::string(to_string(s.defense)); },
          [](Scenario& s, const std::string& d) { s.defense = parse_defense(d); })
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; })
      .def("validate", &validate_scenario)
      .def("to_text", &format_scenario);

  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); });
  m.def("load_scenario", &load_scenario);

  py::class_<SimTrace>(m, "SimTrace")
      .def_readonly("agents", &SimTrace::agents)
      .def_readonly("dimension", &SimTrace::dimension)
      .def_property_readonly("summary", [](const SimTrace& t) { return summary_dict(t.summary); })
      .def_property_readonly("steps", [](const SimTrace& t) {
        std::vector<Step> ks;
        for (const auto& r : t.rows) ks.push_back(r.k);
        return ks;
      })
      .def_property_readonly("states",
                             [](const SimTrace& t) {
                               std::vector<std::vector<Vec>> xs;
                               for (const auto& r : t.rows) xs.push_back(r.x);
                               return xs;
                             },
                             "Per step, per agent state vectors")
      .def_property_readonly("sigma",
                             [](const SimTrace& t) {
                               std::vector<std::vector<double>> out;
                               for (const auto& r : t.rows) out.push_back(r.sigma);
                               return out;
                             })
      .def_property_readonly("normal_width",
                             [](const SimTrace& t) {
                               std::vector<double> out;
                               for (const auto& r : t.rows) out.push_back(r.normal_width);
                               return out;
                             })
      .def_property_readonly("flags",
                             [](const SimTrace& t) {
                               py::list out;
                               for (const auto& f : t.flags)
                                 out.append(py::make_tuple(f.k, f.observer, f.flagged, f.residual));
                               return out;
                             })
      .def_property_readonly("epochs",
                             [](const SimTrace& t) {
                               py::list out;
                               for (const auto& e : t.epochs) {
                                 py::dict d;
                                 d["epoch"] = e.epoch;
                                 d["k"] = e.k;
                                 d["normal"] = e.normal;
                                 d["leader"] = e.leader;
                                 d["lambda1"] = e.lambda1;
                                 d["v1"] = e.v1;
                                 d["edges"] = edge_list(e.edges);
                                 d["normal_root"] = e.normal_root;
                                 out.append(d);
                               }
                               return out;
                             })
      .def("summary_json", &summary_json)
      .def("write", &write_trace, py::arg("directory"));

  m.def(
      "run_scenario",
      [](const Scenario& s, bool stop_on_convergence) {
        py::gil_scoped_release release;
        return run_scenario(s, RunOptions{stop_on_convergence, true});
      },
      py::arg("scenario"), py::arg("stop_on_convergence") = true);
}
