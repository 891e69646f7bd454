// Python bindings for the main operations: graph loading, exact
// enumeration, coefficient tables, walk-based estimation, baselines and the
// evaluation metrics.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "graphlet/baselines.hpp"
#include "graphlet/bench.hpp"
#include "graphlet/estimate.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/oracle.hpp"

namespace py = pybind11;
using namespace graphlet;

namespace {

py::dict report_dict(const EstimateReport& rep) {
    py::dict d;
    d["graph"] = rep.config.graph_name;
    d["k"] = rep.config.k;
    d["d"] = rep.config.d;
    d["method"] = rep.config.method == Method::css ? "css" : "base";
    d["walk"] = rep.config.walk == WalkMode::non_backtracking ? "nb" : "srw";
    d["steps"] = rep.steps;
    d["seed"] = rep.config.seed;
    d["burn_in"] = rep.config.burn_in;
    d["valid_windows"] = rep.valid_windows;
    d["api_calls"] = rep.api_calls;
    d["degenerate"] = rep.degenerate;
    d["concentration"] = rep.concentration;
    if (rep.counts) {
        d["counts"] = *rep.counts;
    } else {
        d["counts"] = py::none();
    }
    d["not_estimable"] = rep.not_estimable;
    d["notes"] = rep.notes;
    return d;
}

py::dict baseline_dict(const BaselineReport& rep) {
    py::dict d;
    d["graph"] = rep.graph_name;
    d["method"] = rep.method;
    d["samples"] = rep.samples;
    d["kept"] = rep.kept;
    d["api_calls"] = rep.api_calls;
    d["counts"] = rep.counts;
    d["concentration"] = rep.concentration;
    d["not_estimable"] = rep.not_estimable;
    d["preprocess_ms"] = rep.preprocess_ms;
    d["sample_ms"] = rep.sample_ms;
    return d;
}

EstimatorConfig make_config(int k, int d, std::uint64_t steps, const std::string& method,
                            const std::string& walk, std::uint64_t seed,
                            std::uint64_t burn_in) {
    EstimatorConfig cfg;
    cfg.k = k;
    cfg.d = d;
    cfg.steps = steps;
    cfg.method = method == "css" ? Method::css : Method::base;
    cfg.walk = walk == "nb" ? WalkMode::non_backtracking : WalkMode::simple;
    cfg.seed = seed;
    cfg.burn_in = burn_in;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(pygraphlet, m) {
    m.doc() = "graphlet concentration estimation via subgraph-relationship random walks";

    py::class_<Graph, std::shared_ptr<Graph>>(m, "Graph")
        .def_static(
            "load",
            [](const std::string& path) {
                return std::make_shared<Graph>(load_edge_list_file(path));
            },
            py::arg("path"))
        .def_static(
            "from_edge_list",
            [](const std::string& text) {
                std::istringstream in(text);
                return std::make_shared<Graph>(load_edge_list(in));
            },
            py::arg("text"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree, py::arg("v"))
        .def(
            "neighbors",
            [](const Graph& g, NodeId v) {
                auto nb = g.neighbors(v);
                return std::vector<NodeId>(nb.begin(), nb.end());
            },
            py::arg("v"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("original_label", &Graph::original_label, py::arg("v"))
        .def("largest_connected_component",
             [](const Graph& g) {
                 return std::make_shared<Graph>(largest_connected_component(g));
             })
        .def("r2_size", [](const Graph& g) { return r2_size(g); })
        .def("__repr__", [](const Graph& g) {
            std::ostringstream os;
            os << "Graph(|V|=" << g.node_count() << ", |E|=" << g.edge_count() << ")";
            return os.str();
        });

    m.def(
        "exact_enumerate",
        [](const Graph& g, int k) {
            auto counts = exact_enumerate(g, k);
            py::dict d;
            d["k"] = counts.k;
            d["counts"] = counts.counts;
            d["total"] = counts.total;
            d["concentration"] = counts.concentration();
            return d;
        },
        py::arg("graph"), py::arg("k"));

    m.def(
        "alpha_table",
        [](int k, int d) { return Catalog::instance().alpha_table(k, d).alpha; },
        py::arg("k"), py::arg("d"), "full (unhalved) coefficients in class order");

    m.def(
        "graphlet_classes",
        [](int k) {
            py::list out;
            for (const auto& cls : Catalog::instance().classes(k)) {
                py::dict d;
                d["index"] = cls.index;
                d["edge_count"] = cls.edge_count;
                std::vector<int> sig(cls.degree_signature.begin(),
                                     cls.degree_signature.begin() + cls.k);
                d["degree_signature"] = sig;
                out.append(d);
            }
            return out;
        },
        py::arg("k"));

    m.def(
        "estimate",
        [](const Graph& g, int k, int d, std::uint64_t steps, const std::string& method,
           const std::string& walk, std::uint64_t seed, std::uint64_t burn_in, bool counts) {
            NeighborOracle oracle(g);
            auto cfg = make_config(k, d, steps, method, walk, seed, burn_in);
            auto rep = run_estimate(cfg, oracle);
            if (counts) {
                std::uint64_t rd = d == 1 ? g.edge_count() : (d == 2 ? r2_size(g) : 0);
                if (rd > 0) rep.counts = estimate_counts(rep, rd);
            }
            return report_dict(rep);
        },
        py::arg("graph"), py::arg("k"), py::arg("d"), py::arg("steps") = 20000,
        py::arg("method") = "base", py::arg("walk") = "srw", py::arg("seed") = 0,
        py::arg("burn_in") = 0, py::arg("counts") = false);

    m.def(
        "estimate_chains",
        [](const Graph& g, int k, int d, std::uint64_t steps, unsigned chains,
           const std::string& method, const std::string& walk, std::uint64_t seed,
           std::uint64_t burn_in) {
            NeighborOracle oracle(g);
            auto cfg = make_config(k, d, steps, method, walk, seed, burn_in);
            auto reports = run_parallel(cfg, oracle, chains);
            py::list out;
            for (const auto& rep : reports) out.append(report_dict(rep));
            return out;
        },
        py::arg("graph"), py::arg("k"), py::arg("d"), py::arg("steps") = 20000,
        py::arg("chains") = 1, py::arg("method") = "base", py::arg("walk") = "srw",
        py::arg("seed") = 0, py::arg("burn_in") = 0);

    m.def(
        "wedge_sampling",
        [](const Graph& g, std::uint64_t n, std::uint64_t seed) {
            return baseline_dict(wedge_sampling(g, n, seed));
        },
        py::arg("graph"), py::arg("samples"), py::arg("seed") = 0);

    m.def(
        "path3_sampling",
        [](const Graph& g, std::uint64_t n, std::uint64_t seed) {
            return baseline_dict(path3_sampling(g, n, seed));
        },
        py::arg("graph"), py::arg("samples"), py::arg("seed") = 0);

    m.def(
        "mhrw_wedge_sampling",
        [](const Graph& g, std::uint64_t n, std::uint64_t seed, const std::string& rule) {
            NeighborOracle oracle(g);
            MhrwRule r = rule == "degree-ratio" ? MhrwRule::degree_ratio : MhrwRule::hastings;
            return baseline_dict(mhrw_wedge_sampling(oracle, n, seed, r));
        },
        py::arg("graph"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("rule") = "hastings");

    m.def(
        "nrmse",
        [](const std::vector<double>& xs, double truth) {
            return nrmse(std::span<const double>(xs.data(), xs.size()), truth);
        },
        py::arg("estimates"), py::arg("truth"));

    m.def(
        "similarity",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return similarity(std::span<const double>(a.data(), a.size()),
                              std::span<const double>(b.data(), b.size()));
        },
        py::arg("a"), py::arg("b"));
}
