// Command-line front end: estimate, exact, alpha, bench, baseline,
// similarity.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphlet/baselines.hpp"
#include "graphlet/bench.hpp"
#include "graphlet/estimate.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/oracle.hpp"
#include "graphlet/report_io.hpp"

namespace {

using namespace graphlet;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

Graph load_graph(const std::string& path, bool lcc) {
    Graph g = load_edge_list_file(path);
    if (lcc) g = largest_connected_component(g);
    return g;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

int cmd_estimate(const std::string& graph_path, bool lcc, int k, int d,
                 const std::string& method, const std::string& walk, std::uint64_t steps,
                 std::uint64_t seed, std::uint64_t burn_in, unsigned chains,
                 std::optional<std::uint64_t> r_d, const std::string& format,
                 const std::string& out_path) {
    Graph g = load_graph(graph_path, lcc);
    NeighborOracle oracle(g);

    EstimatorConfig cfg;
    cfg.k = k;
    cfg.d = d;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.burn_in = burn_in;
    cfg.method = (method == "css") ? Method::css : Method::base;
    cfg.walk = (walk == "nb") ? WalkMode::non_backtracking : WalkMode::simple;
    cfg.graph_name = graph_path;

    auto reports = run_parallel(cfg, oracle, chains);

    std::uint64_t rd = 0;
    if (r_d) {
        rd = *r_d;
    } else if (d == 1) {
        rd = g.edge_count();
    } else if (d == 2) {
        rd = r2_size(g);
    }
    for (auto& rep : reports) {
        if (rd > 0) rep.counts = estimate_counts(rep, rd);
    }

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv") {
        for (const auto& rep : reports) report_to_csv(rep, out);
    } else {
        if (reports.size() == 1) {
            out << report_to_json(reports[0]).dump(2) << '\n';
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& rep : reports) arr.push_back(report_to_json(rep));
            out << arr.dump(2) << '\n';
        }
    }
    return 0;
}

int cmd_exact(const std::string& graph_path, bool lcc, int k, const std::string& format,
              const std::string& out_path) {
    Graph g = load_graph(graph_path, lcc);
    ExactCounts counts = exact_enumerate(g, k);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv") {
        exact_to_csv(counts, graph_path, out);
    } else {
        out << exact_to_json(counts, graph_path).dump(2) << '\n';
    }
    return 0;
}

int cmd_alpha(int k, int d, const std::string& out_path) {
    const Catalog& cat = Catalog::instance();
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (d > 0) {
        // single row of full alpha values
        const auto& t = cat.alpha_table(k, d);
        for (std::size_t i = 0; i < t.alpha.size(); ++i) {
            out << (i ? "," : "") << t.alpha[i];
        }
        out << '\n';
        return 0;
    }
    // table layout: rows SRW(d), halved values
    const std::size_t m = cat.classes(k).size();
    out << "walk";
    for (std::size_t i = 1; i <= m; ++i) out << ",g" << k << "_" << i;
    out << '\n';
    const int dmax = (k == 3) ? 3 : (k - 1);
    for (int dd = 1; dd <= dmax; ++dd) {
        const auto& t = cat.alpha_table(k, dd);
        out << "SRW(" << dd << ")";
        for (std::int64_t a : t.alpha) {
            if (a % 2 == 0) {
                out << ',' << (a / 2);
            } else {
                out << ',' << (static_cast<double>(a) / 2.0);
            }
        }
        out << '\n';
    }
    return 0;
}

int cmd_baseline(const std::string& graph_path, bool lcc, const std::string& method,
                 std::uint64_t samples, std::uint64_t seed, const std::string& rule,
                 const std::string& format, const std::string& out_path) {
    Graph g = load_graph(graph_path, lcc);
    BaselineReport rep;
    if (method == "wedge") {
        rep = wedge_sampling(g, samples, seed);
    } else if (method == "path3") {
        rep = path3_sampling(g, samples, seed);
    } else if (method == "mhrw-wedge") {
        NeighborOracle oracle(g);
        MhrwRule r = (rule == "degree-ratio") ? MhrwRule::degree_ratio : MhrwRule::hastings;
        rep = mhrw_wedge_sampling(oracle, samples, seed, r);
    } else {
        throw CLI::ValidationError("baseline", "unknown method: " + method);
    }
    rep.graph_name = graph_path;
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv") {
        baseline_to_csv(rep, out);
    } else {
        out << baseline_to_json(rep).dump(2) << '\n';
    }
    return 0;
}

int cmd_bench(const std::string& graph_path, bool lcc, int k, const std::string& methods,
              const std::string& steps, unsigned runs, std::uint64_t seed,
              const std::string& truth_src, const std::string& out_dir, unsigned threads) {
    Graph g = load_graph(graph_path, lcc);

    BenchSpec spec;
    spec.graph_name = graph_path;
    spec.k = k;
    spec.runs = runs;
    spec.seed = seed;
    spec.out_dir = out_dir;
    spec.threads = threads;
    for (const auto& tok : split_csv(methods)) spec.methods.push_back(MethodSpec::parse(tok, k));
    for (const auto& tok : split_csv(steps)) spec.steps_grid.push_back(std::stoull(tok));

    if (truth_src == "exact") {
        spec.truth = exact_enumerate(g, k).concentration();
    } else {
        spec.truth = load_concentration(truth_src);
        if (spec.truth.size() != Catalog::instance().classes(k).size()) {
            throw std::runtime_error("truth file class count does not match k");
        }
    }

    BenchResult result = run_bench(spec, g);
    if (out_dir.empty()) write_bench_csv(result, std::cout);
    return 0;
}

int cmd_similarity(const std::string& a_path, const std::string& b_path) {
    auto a = load_concentration(a_path);
    auto b = load_concentration(b_path);
    // not-estimable entries do not contribute
    for (auto& x : a) {
        if (std::isnan(x)) x = 0.0;
    }
    for (auto& x : b) {
        if (std::isnan(x)) x = 0.0;
    }
    std::cout << similarity(a, b) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphlet concentration estimation via subgraph-relationship random walks"};
    app.require_subcommand(1);

    std::string graph_path, out_path, format = "json";
    bool lcc = false;
    int k = 3, d = 1;
    std::uint64_t steps = 20000, seed = 0, burn_in = 0, samples = 10000;
    unsigned chains = 1, runs = 100, threads = 0;
    std::string method = "base", walk = "srw", rule = "hastings";
    std::string methods, steps_grid = "2000,4000,8000,16000", truth = "exact";
    std::string a_path, b_path;
    std::uint64_t r_d_value = 0;

    auto* est = app.add_subcommand("estimate", "run a walk-based concentration estimate");
    est->add_option("--graph", graph_path, "edge-list file")->required();
    est->add_flag("--lcc", lcc, "restrict to the largest connected component");
    est->add_option("--k", k, "graphlet size (3, 4 or 5)")->required();
    est->add_option("--d", d, "relationship-graph order (1 <= d < k)")->required();
    est->add_option("--method", method, "base | css")->check(CLI::IsMember({"base", "css"}));
    est->add_option("--walk", walk, "srw | nb")->check(CLI::IsMember({"srw", "nb"}));
    est->add_option("--steps", steps, "random-walk steps");
    est->add_option("--seed", seed, "rng seed");
    est->add_option("--burn-in", burn_in, "steps to discard before sampling");
    est->add_option("--chains", chains, "independent chains");
    est->add_option("--r-d", r_d_value, "|R^(d)| override for absolute counts");
    est->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    est->add_option("--out", out_path, "output file (default stdout)");

    auto* exa = app.add_subcommand("exact", "exact enumeration ground truth");
    exa->add_option("--graph", graph_path, "edge-list file")->required();
    exa->add_flag("--lcc", lcc, "restrict to the largest connected component");
    exa->add_option("--k", k, "graphlet size (3, 4 or 5)")->required();
    exa->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    exa->add_option("--out", out_path, "output file (default stdout)");

    auto* alp = app.add_subcommand("alpha", "state-corresponding coefficient tables");
    int alpha_d = 0;
    alp->add_option("--k", k, "graphlet size (3, 4 or 5)")->required();
    alp->add_option("--d", alpha_d, "single SRW(d) row of full alpha values");
    alp->add_option("--out", out_path, "output file (default stdout)");

    auto* bas = app.add_subcommand("baseline", "competing samplers");
    bas->add_option("--graph", graph_path, "edge-list file")->required();
    bas->add_flag("--lcc", lcc, "restrict to the largest connected component");
    bas->add_option("--method", method, "wedge | path3 | mhrw-wedge")->required();
    bas->add_option("--samples", samples, "sample budget");
    bas->add_option("--seed", seed, "rng seed");
    bas->add_option("--rule", rule, "mhrw acceptance rule: hastings | degree-ratio")
        ->check(CLI::IsMember({"hastings", "degree-ratio"}));
    bas->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    bas->add_option("--out", out_path, "output file (default stdout)");

    auto* ben = app.add_subcommand("bench", "NRMSE convergence sweep");
    ben->add_option("--graph", graph_path, "edge-list file")->required();
    ben->add_flag("--lcc", lcc, "restrict to the largest connected component");
    ben->add_option("--k", k, "graphlet size (3, 4 or 5)")->required();
    ben->add_option("--methods", methods, "comma list, e.g. srw1cssnb,srw2,psrw,wedge")
        ->required();
    ben->add_option("--steps", steps_grid, "comma list of step budgets, strictly increasing");
    ben->add_option("--runs", runs, "independent runs per cell");
    ben->add_option("--seed", seed, "rng seed");
    ben->add_option("--truth", truth, "\"exact\" or a ground-truth JSON file");
    ben->add_option("--out-dir", out_path, "directory for results.csv and plot data");
    ben->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* sim = app.add_subcommand("similarity", "cosine similarity of two concentration files");
    sim->add_option("--a", a_path, "report/truth JSON")->required();
    sim->add_option("--b", b_path, "report/truth JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (est->parsed()) {
            std::optional<std::uint64_t> rd;
            if (est->count("--r-d")) rd = r_d_value;
            return cmd_estimate(graph_path, lcc, k, d, method, walk, steps, seed, burn_in,
                                chains, rd, format, out_path);
        }
        if (exa->parsed()) return cmd_exact(graph_path, lcc, k, format, out_path);
        if (alp->parsed()) return cmd_alpha(k, alpha_d, out_path);
        if (bas->parsed()) {
            return cmd_baseline(graph_path, lcc, method, samples, seed, rule, format, out_path);
        }
        if (ben->parsed()) {
            return cmd_bench(graph_path, lcc, k, methods, steps_grid, runs, seed, truth,
                             out_path, threads);
        }
        if (sim->parsed()) return cmd_similarity(a_path, b_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
