#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "mgpf/bench.hpp"
#include "mgpf/error.hpp"
#include "mgpf/informed_sampling.hpp"
#include "mgpf/oracle.hpp"
#include "mgpf/planner.hpp"

namespace py = pybind11;
using namespace mgpf;

namespace {

PlannerParams make_params(std::size_t n_s, std::size_t n_b, double eta, std::uint64_t seed, bool prune) {
  PlannerParams p;
  p.n_s = n_s;
  p.n_b = n_b;
  p.eta = eta;
  p.seed = seed;
  p.prune = prune;
  return p;
}

py::tuple pair_tuple(TerminalPair e) { return py::make_tuple(e.a, e.b); }

py::list tree_edges(const Planner& planner) {
  py::list out;
  for (const TerminalPair& e : planner.terminal_graph().tree()) out.append(pair_tuple(e));
  return out;
}

py::dict probability_dict(const ProbabilityTable& table) {
  py::dict out;
  for (const ProbabilityEntry& entry : table) out[pair_tuple(entry.edge)] = entry.probability;
  return out;
}

std::string render(const Planner& planner) {
  const auto* ist = dynamic_cast<const IstStar*>(&planner);
  return bench::render_svg(planner.roadmap(), planner.forest(), planner.terminal_graph(),
                           ist ? ist->probability() : ProbabilityTable{});
}

std::vector<std::vector<double>> matrix_rows(const oracle::CostMatrix& m) {
  std::vector<std::vector<double>> rows(m.n, std::vector<double>(m.n));
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
  }
  return rows;
}

oracle::CostMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  oracle::CostMatrix m{rows.size(), std::vector<double>(rows.size() * rows.size())};
  for (std::size_t i = 0; i < m.n; ++i) {
    if (rows[i].size() != m.n) throw Error(ErrorKind::DimensionMismatch, "cost matrix must be square");
    for (std::size_t j = 0; j < m.n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-goal path finding planners";

  static py::exception<Error> error_type(m, "MgpfError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  m.attr("CSV_HEADER") = std::string(bench::kCsvHeader);

  py::class_<Box>(m, "Box")
      .def(py::init([](std::vector<double> lo, std::vector<double> hi) { return Box{std::move(lo), std::move(hi)}; }),
           py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &Box::lo)
      .def_readonly("hi", &Box::hi);

  py::class_<Env>(m, "Env")
      .def_static("center_obstacle", &Env::center_obstacle, py::arg("dim"))
      .def_static("uniform_hypercubes", &Env::uniform_hypercubes, py::arg("dim"))
      .def_static("boxes", &Env::boxes, py::arg("dim"), py::arg("obstacles"),
                  py::arg("collision_resolution") = Env::kDefaultResolution)
      .def_property_readonly("dim", &Env::dim)
      .def_property_readonly("free_measure", &Env::free_measure)
      .def_property_readonly("obstacle_count", &Env::obstacle_count)
      .def("is_state_valid", [](const Env& env, const Config& x) { return env.is_state_valid(x); })
      .def("is_motion_valid",
           [](const Env& env, const Config& a, const Config& b) { return env.is_motion_valid(a, b); });

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("normal", &Rng::normal);

  m.def("heuristic", [](const Config& a, const Config& b) { return heuristic(a, b); });
  m.def("sample_uniform_free", &sample_uniform_free, py::arg("env"), py::arg("rng"));
  m.def(
      "sample_informed",
      [](const Config& a, const Config& b, double c_best, const Env& env, Rng& rng) {
        return sample_informed(InformedSet{a, b, c_best}, env, rng);
      },
      py::arg("focus_a"), py::arg("focus_b"), py::arg("c_best"), py::arg("env"), py::arg("rng"));

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("iteration", &TraceRow::iteration)
      .def_readonly("samples_total", &TraceRow::samples_total)
      .def_readonly("edges_active", &TraceRow::edges_active)
      .def_readonly("edges_pruned_cum", &TraceRow::edges_pruned_cum)
      .def_readonly("tree_cost", &TraceRow::tree_cost)
      .def_readonly("path_cost", &TraceRow::path_cost)
      .def_readonly("wall_time_s", &TraceRow::wall_time_s);

  py::class_<MgpfPath>(m, "Path")
      .def_readonly("visit_order", &MgpfPath::visit_order)
      .def_readonly("nodes", &MgpfPath::nodes)
      .def_readonly("waypoints", &MgpfPath::waypoints)
      .def_readonly("cost", &MgpfPath::cost);

  py::class_<Planner>(m, "Planner")
      .def("step", &Planner::step, py::return_value_policy::copy)
      .def("run", [](Planner& p) { return p.run(); }, py::return_value_policy::copy)
      .def("extract_path", py::overload_cast<>(&Planner::extract_path, py::const_))
      .def_property_readonly("tree_cost", &Planner::tree_cost)
      .def_property_readonly("trace", &Planner::trace, py::return_value_policy::copy)
      .def_property_readonly("tree_edges", &tree_edges)
      .def_property_readonly("node_count", [](const Planner& p) { return p.roadmap().size(); })
      .def_property_readonly("terminals", &Planner::terminals, py::return_value_policy::copy)
      .def("metric_completion",
           [](const Planner& p) { return matrix_rows(oracle::metric_completion(p.roadmap(), p.terminals().size())); })
      .def("render_svg", &render);

  auto planner_init = [](auto tag) {
    using T = typename decltype(tag)::type;
    return py::init([](const Env& env, std::vector<Config> terminals, std::size_t n_s, std::size_t n_b, double eta,
                       std::uint64_t seed, bool prune) {
      return std::make_unique<T>(env, std::move(terminals), make_params(n_s, n_b, eta, seed, prune));
    });
  };
  struct IstTag {
    using type = IstStar;
  };
  struct BaselineTag {
    using type = Baseline;
  };

  py::class_<IstStar, Planner>(m, "IstStar")
      .def(planner_init(IstTag{}), py::arg("env"), py::arg("terminals"), py::arg("n_s") = 200, py::arg("n_b") = 1,
           py::arg("eta") = 1.1, py::arg("seed") = 0, py::arg("prune") = true)
      .def_property_readonly("probability", [](const IstStar& p) { return probability_dict(p.probability()); })
      .def_property_readonly("pruned_pairs", [](const IstStar& p) {
        py::list out;
        for (const TerminalPair& e : p.pruned_pairs()) out.append(pair_tuple(e));
        return out;
      });

  py::class_<Baseline, Planner>(m, "Baseline")
      .def(planner_init(BaselineTag{}), py::arg("env"), py::arg("terminals"), py::arg("n_s") = 200,
           py::arg("n_b") = 1, py::arg("eta") = 1.1, py::arg("seed") = 0, py::arg("prune") = true);

  m.def("generate_terminals", &bench::generate_terminals, py::arg("env"), py::arg("count"), py::arg("seed"));

  m.def(
      "run_config",
      [](const std::string& json_text, bool timing) {
        std::ostringstream out;
        bench::run_instance(bench::parse_config(json_text), out, timing);
        return out.str();
      },
      py::arg("config_json"), py::arg("timing") = true, "Runs a JSON config and returns the trace CSV.");

  m.def(
      "sweep",
      [](const std::string& json_text, std::size_t seeds, const std::filesystem::path& out_dir, bool timing) {
        py::gil_scoped_release release;
        bench::sweep(bench::parse_config(json_text), seeds, out_dir, timing);
      },
      py::arg("config_json"), py::arg("seeds"), py::arg("out_dir"), py::arg("timing") = true);

  m.def(
      "compare",
      [](const std::filesystem::path& a, const std::filesystem::path& b) {
        std::ostringstream out;
        bench::write_comparison_csv(out, bench::compare(bench::load_trace_dir(a), bench::load_trace_dir(b)));
        return out.str();
      },
      py::arg("a_dir"), py::arg("b_dir"), "Compares two trace directories and returns the comparison CSV.");

  m.def("kruskal_weight", [](const std::vector<std::vector<double>>& rows) -> py::object {
    const auto tree = oracle::kruskal(from_rows(rows));
    return tree ? py::cast(tree->weight) : py::none();
  });
  m.def(
      "optimal_path_cost",
      [](const std::vector<std::vector<double>>& rows) {
        const oracle::CostMatrix costs = from_rows(rows);
        return oracle::optimal_mgpf(costs, 0, costs.n - 1).cost;
      },
      "Exact cheapest Hamiltonian path from the first to the last terminal.");
}
