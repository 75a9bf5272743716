#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uppertail/errors.hpp"
#include "uppertail/families.hpp"
#include "uppertail/report.hpp"

namespace py = pybind11;
namespace ut = uppertail;

namespace {

py::object json_to_py(const ut::Json& j) {
    switch (j.type()) {
        case nlohmann::detail::value_t::null: return py::none();
        case nlohmann::detail::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::detail::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case nlohmann::detail::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case nlohmann::detail::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::detail::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::detail::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case nlohmann::detail::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

std::vector<int> set_to_labels(ut::VertexSet s) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if ((s >> i) & 1u) out.push_back(i + 1);
    return out;
}

ut::VertexSet labels_to_set(const std::vector<int>& labels, int order) {
    ut::VertexSet s = 0;
    for (int label : labels) {
        if (label < 1 || label > order) throw py::value_error("vertex label out of range");
        s |= 1u << (label - 1);
    }
    return s;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact combinatorics and Monte Carlo for subgraph upper tails in G(n,p)";

    py::register_exception<ut::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ut::FeasibilityError>(m, "FeasibilityError", PyExc_RuntimeError);

    py::class_<ut::Graph>(m, "Graph")
        .def(py::init([](int order, const std::vector<std::pair<int, int>>& edges) {
                 std::vector<std::pair<int, int>> zero_based;
                 for (auto [u, v] : edges) zero_based.emplace_back(u - 1, v - 1);
                 return ut::Graph(order, zero_based);
             }),
             py::arg("order"), py::arg("edges"),
             "Build from 1-based edge label pairs.")
        .def_property_readonly("order", &ut::Graph::order)
        .def_property_readonly("edge_count", &ut::Graph::edge_count)
        .def("edges",
             [](const ut::Graph& g) {
                 std::vector<std::pair<int, int>> out;
                 for (auto [u, v] : g.edges()) out.emplace_back(u + 1, v + 1);
                 return out;
             })
        .def("__repr__", [](const ut::Graph& g) {
            return "Graph(order=" + std::to_string(g.order()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("from_edge_list", &ut::graph_from_edge_list, py::arg("text"));
    m.def("to_edge_list", &ut::graph_to_edge_list, py::arg("graph"));
    m.def("cycle_pendant", &ut::cycle_pendant, py::arg("l"), py::arg("r"));
    m.def("snail", &ut::snail);
    m.def("badnews", &ut::badnews, py::arg("r"));
    m.def("fig2_example", &ut::fig2_example);
    m.def("glue",
          [](const ut::Graph& j, const std::vector<int>& g_labels, int copies) {
              ut::GlueSpec spec;
              spec.j = j;
              spec.g_vertices = labels_to_set(g_labels, j.order());
              spec.copies = copies;
              return ut::glue(spec);
          },
          py::arg("j"), py::arg("g_vertices"), py::arg("copies"));

    m.def("connected", &ut::connected);
    m.def("induced_subgraph",
          [](const ut::Graph& g, const std::vector<int>& labels) {
              return ut::induced_subgraph(g, labels_to_set(labels, g.order()));
          },
          py::arg("graph"), py::arg("vertices"));
    m.def("automorphism_count",
          [](const ut::Graph& g) { return ut::automorphism_count(g); });
    m.def("count_copies",
          [](const ut::Graph& host, const ut::Graph& pattern) {
              return ut::count_copies(host, pattern);
          },
          py::arg("host"), py::arg("pattern"));

    m.def("m_density", [](const ut::Graph& h) {
        auto r = ut::m_density(h);
        return py::make_tuple(r.density.value.num, r.density.value.den,
                              set_to_labels(r.witness));
    });
    m.def("is_balanced", &ut::is_balanced);
    m.def("is_strictly_balanced", &ut::is_strictly_balanced);
    m.def("fractional_independence", [](const ut::Graph& g) {
        auto r = ut::fractional_independence(g);
        return py::make_tuple(r.num, r.den);
    });
    m.def("mu_ln",
          [](const ut::Graph& g, double n, double p) { return ut::mu(g, n, p).log_value; },
          py::arg("graph"), py::arg("n"), py::arg("p"));
    m.def("phi_ln",
          [](const ut::Graph& h, double n, double p) { return ut::phi(h, n, p).log_value; },
          py::arg("graph"), py::arg("n"), py::arg("p"));

    m.def("zeta", [](const ut::Graph& h) {
        auto z = ut::zeta(h);
        return py::make_tuple(z.zeta.num, z.zeta.den, set_to_labels(z.witness_G));
    });
    m.def("is_counterexample",
          [](const ut::Graph& h) { return ut::counterexample_check(h).is_counterexample; });

    m.def("analyze",
          [](const ut::Graph& h, py::object n, py::object p, py::object eps) {
              auto opt = [](py::object o) -> std::optional<double> {
                  if (o.is_none()) return std::nullopt;
                  return o.cast<double>();
              };
              return json_to_py(ut::analysis_report(h, opt(n), opt(p), opt(eps)));
          },
          py::arg("graph"), py::arg("n") = py::none(), py::arg("p") = py::none(),
          py::arg("eps") = py::none());

    m.def("tail_estimate",
          [](const ut::Graph& h, int n, double p, double eps, std::uint64_t trials,
             std::uint64_t seed) {
              return json_to_py(ut::to_json(ut::tail_estimate(h, n, p, eps, trials, seed)));
          },
          py::arg("graph"), py::arg("n"), py::arg("p"), py::arg("eps"), py::arg("trials"),
          py::arg("seed"));

    m.def("plan_pendant",
          [](int l, int r, double n, double p, double eps) {
              auto plan = ut::plan_pendant(l, r, n, p, eps);
              return json_to_py(ut::to_json(plan, plan.h.order()));
          },
          py::arg("l"), py::arg("r"), py::arg("n"), py::arg("p"), py::arg("eps"));
    m.def("run_pendant",
          [](int l, int r, double n, double p, double eps, std::uint64_t seed) {
              auto plan = ut::plan_pendant(l, r, n, p, eps);
              auto outcome = ut::execute_pendant(plan, seed);
              py::dict out;
              out["plan"] = json_to_py(ut::to_json(plan, plan.h.order()));
              out["outcome"] = json_to_py(ut::to_json(outcome));
              return out;
          },
          py::arg("l"), py::arg("r"), py::arg("n"), py::arg("p"), py::arg("eps"),
          py::arg("seed"));
    m.def("plan_mixed",
          [](int r, double n, double p, double eps) {
              auto plan = ut::plan_mixed(r, n, p, eps);
              return json_to_py(ut::to_json(plan, plan.h.order()));
          },
          py::arg("r"), py::arg("n"), py::arg("p"), py::arg("eps"));

    m.def("sample_gnp_edge_count", [](int n, double p, std::uint64_t seed) {
        return ut::sample_gnp(n, p, seed).edge_count();
    });
}
