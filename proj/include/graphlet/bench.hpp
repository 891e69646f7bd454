// Evaluation harness: NRMSE over repeated runs, convergence sweeps over a
// step grid, cosine similarity of concentration vectors, machine-readable
// CSV and plot-data outputs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graphlet/estimate.hpp"
#include "graphlet/graph.hpp"

namespace graphlet {

// sqrt(mean((x - truth)^2)) / truth; requires truth > 0 and >= 2 estimates.
double nrmse(std::span<const double> estimates, double truth);

// Cosine similarity of two non-zero vectors of equal length.
double similarity(std::span<const double> a, std::span<const double> b);

struct MethodSpec {
    enum class Kind { walk, wedge, path3, mhrw_wedge };
    Kind kind = Kind::walk;
    int d = 1;
    Method method = Method::base;
    WalkMode mode = WalkMode::simple;

    std::string name() const;
    // Accepts "srw<d>[css][nb]", "psrw" (d = k - 1), and the baseline names
    // "wedge", "path3", "mhrw-wedge".
    static MethodSpec parse(const std::string& token, int k);
};

struct BenchSpec {
    std::string graph_name;
    int k = 3;
    std::vector<MethodSpec> methods;
    std::vector<std::uint64_t> steps_grid;  // strictly increasing
    unsigned runs = 2;
    std::uint64_t seed = 0;
    std::vector<double> truth;  // per-class concentrations
    std::string out_dir;        // empty = no files
    unsigned threads = 0;
};

struct BenchCell {
    std::string method;
    std::uint64_t steps = 0;
    std::vector<double> mean;   // per class (NaN where undefined)
    std::vector<double> se;     // standard error of the run means
    std::vector<double> nrmse;  // NaN where truth is 0 or class undefined
    double api_calls_mean = 0.0;
    double wall_ms = 0.0;
};

struct BenchResult {
    BenchSpec spec;
    std::vector<BenchCell> cells;  // method-major, then steps ascending
};

BenchResult run_bench(const BenchSpec& spec, const Graph& graph);

// results.csv: one row per (cell, class); byte-identical for identical
// spec + seed (wall time goes to the separate timings writer).
void write_bench_csv(const BenchResult& result, std::ostream& out);
void write_bench_timings(const BenchResult& result, std::ostream& out);
// One plot-data file per class: x = steps, one NRMSE series per method.
void write_plot_data(const BenchResult& result, int cls, std::ostream& out);

}  // namespace graphlet
