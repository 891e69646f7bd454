#include "graphlet/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "graphlet/baselines.hpp"
#include "graphlet/catalog.hpp"

namespace graphlet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_double(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::uint64_t cell_salt(std::size_t cell_idx, unsigned run_idx) {
    // documented derivation: per-run seed = derive_seed(seed, ((cell+1)<<20) + run)
    return ((static_cast<std::uint64_t>(cell_idx) + 1) << 20) + run_idx;
}

}  // namespace

double nrmse(std::span<const double> estimates, double truth) {
    if (truth <= 0.0) throw std::invalid_argument("nrmse: truth must be positive");
    if (estimates.size() < 2) throw std::invalid_argument("nrmse: need at least 2 estimates");
    double acc = 0.0;
    for (double x : estimates) {
        double e = x - truth;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(estimates.size())) / truth;
}

double similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("similarity: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("similarity: zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::string MethodSpec::name() const {
    switch (kind) {
        case Kind::wedge:
            return "wedge";
        case Kind::path3:
            return "path3";
        case Kind::mhrw_wedge:
            return "mhrw-wedge";
        case Kind::walk:
            break;
    }
    std::string s = "srw" + std::to_string(d);
    if (method == Method::css) s += "css";
    if (mode == WalkMode::non_backtracking) s += "nb";
    return s;
}

MethodSpec MethodSpec::parse(const std::string& token, int k) {
    MethodSpec spec;
    if (token == "wedge") {
        spec.kind = Kind::wedge;
        return spec;
    }
    if (token == "path3") {
        spec.kind = Kind::path3;
        return spec;
    }
    if (token == "mhrw-wedge") {
        spec.kind = Kind::mhrw_wedge;
        return spec;
    }
    std::string t = token;
    if (t == "psrw") t = "srw" + std::to_string(k - 1);
    if (t.rfind("srw", 0) != 0 || t.size() < 4 || !std::isdigit(static_cast<unsigned char>(t[3]))) {
        throw std::invalid_argument("unknown method token: " + token);
    }
    spec.kind = Kind::walk;
    spec.d = t[3] - '0';
    std::string rest = t.substr(4);
    if (rest.rfind("css", 0) == 0) {
        spec.method = Method::css;
        rest = rest.substr(3);
    }
    if (rest == "nb") {
        spec.mode = WalkMode::non_backtracking;
        rest.clear();
    }
    if (!rest.empty()) throw std::invalid_argument("unknown method token: " + token);
    if (spec.d < 1 || spec.d >= k) {
        throw std::invalid_argument("method " + token + " invalid for k=" + std::to_string(k));
    }
    return spec;
}

BenchResult run_bench(const BenchSpec& spec, const Graph& graph) {
    if (spec.runs < 2) throw std::invalid_argument("bench: runs must be >= 2 for NRMSE");
    for (std::size_t i = 1; i < spec.steps_grid.size(); ++i) {
        if (spec.steps_grid[i] <= spec.steps_grid[i - 1]) {
            throw std::invalid_argument("bench: steps grid must be strictly increasing");
        }
    }
    const std::size_t m = Catalog::instance().classes(spec.k).size();
    if (spec.truth.size() != m) {
        throw std::invalid_argument("bench: truth vector length does not match class count");
    }
    for (const auto& ms : spec.methods) {
        if (ms.kind == MethodSpec::Kind::wedge || ms.kind == MethodSpec::Kind::mhrw_wedge) {
            if (spec.k != 3) throw std::invalid_argument("bench: " + ms.name() + " requires k=3");
        }
        if (ms.kind == MethodSpec::Kind::path3 && spec.k != 4) {
            throw std::invalid_argument("bench: path3 requires k=4");
        }
    }

    NeighborOracle oracle(graph);
    BenchResult result;
    result.spec = spec;

    std::size_t cell_idx = 0;
    for (const auto& ms : spec.methods) {
        for (std::uint64_t steps : spec.steps_grid) {
            auto t0 = std::chrono::steady_clock::now();
            std::vector<std::vector<double>> run_conc(spec.runs);
            std::vector<std::uint64_t> run_api(spec.runs, 0);

            if (ms.kind == MethodSpec::Kind::walk) {
                EstimatorConfig cfg;
                cfg.k = spec.k;
                cfg.d = ms.d;
                cfg.method = ms.method;
                cfg.walk = ms.mode;
                cfg.steps = steps;
                cfg.graph_name = spec.graph_name;
                std::vector<EstimateReport> reports(spec.runs);
                std::atomic<unsigned> next{0};
                const unsigned nthreads = effective_threads(spec.threads, spec.runs);
                auto worker = [&]() {
                    for (;;) {
                        unsigned i = next.fetch_add(1);
                        if (i >= spec.runs) return;
                        EstimatorConfig c = cfg;
                        c.seed = derive_seed(spec.seed, cell_salt(cell_idx, i));
                        reports[i] = run_estimate(c, oracle);
                    }
                };
                if (nthreads == 1) {
                    worker();
                } else {
                    std::vector<std::thread> pool;
                    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
                    for (auto& th : pool) th.join();
                }
                for (unsigned i = 0; i < spec.runs; ++i) {
                    run_conc[i] = reports[i].concentration;
                    run_api[i] = reports[i].api_calls;
                }
            } else {
                for (unsigned i = 0; i < spec.runs; ++i) {
                    std::uint64_t s = derive_seed(spec.seed, cell_salt(cell_idx, i));
                    BaselineReport rep;
                    if (ms.kind == MethodSpec::Kind::wedge) {
                        rep = wedge_sampling(graph, steps, s);
                    } else if (ms.kind == MethodSpec::Kind::path3) {
                        rep = path3_sampling(graph, steps, s);
                    } else {
                        rep = mhrw_wedge_sampling(oracle, steps, s);
                    }
                    run_conc[i] = rep.concentration;
                    run_api[i] = rep.api_calls;
                }
            }

            BenchCell cell;
            cell.method = ms.name();
            cell.steps = steps;
            cell.mean.assign(m, kNaN);
            cell.se.assign(m, kNaN);
            cell.nrmse.assign(m, kNaN);
            for (std::size_t c = 0; c < m; ++c) {
                std::vector<double> xs;
                xs.reserve(spec.runs);
                for (const auto& conc : run_conc) {
                    if (c < conc.size() && !std::isnan(conc[c])) xs.push_back(conc[c]);
                }
                if (xs.size() < 2) continue;
                double mean = 0.0;
                for (double x : xs) mean += x;
                mean /= static_cast<double>(xs.size());
                double var = 0.0;
                for (double x : xs) var += (x - mean) * (x - mean);
                var /= static_cast<double>(xs.size() - 1);
                cell.mean[c] = mean;
                cell.se[c] = std::sqrt(var / static_cast<double>(xs.size()));
                if (spec.truth[c] > 0.0) cell.nrmse[c] = nrmse(xs, spec.truth[c]);
            }
            double api_sum = 0.0;
            for (auto a : run_api) api_sum += static_cast<double>(a);
            cell.api_calls_mean = api_sum / static_cast<double>(spec.runs);
            cell.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            result.cells.push_back(std::move(cell));
            ++cell_idx;
        }
    }

    if (!spec.out_dir.empty()) {
        std::filesystem::create_directories(spec.out_dir);
        std::ofstream csv(spec.out_dir + "/results.csv");
        write_bench_csv(result, csv);
        std::ofstream timings(spec.out_dir + "/timings.csv");
        write_bench_timings(result, timings);
        for (std::size_t c = 0; c < m; ++c) {
            std::ofstream plot(spec.out_dir + "/plot_k" + std::to_string(spec.k) + "_class" +
                               std::to_string(c + 1) + ".dat");
            write_plot_data(result, static_cast<int>(c), plot);
        }
    }
    return result;
}

void write_bench_csv(const BenchResult& result, std::ostream& out) {
    out << "graph,k,method,steps,runs,class,truth,mean,se,nrmse,api_calls_mean\n";
    const std::size_t m = result.spec.truth.size();
    for (const auto& cell : result.cells) {
        for (std::size_t c = 0; c < m; ++c) {
            out << result.spec.graph_name << ',' << result.spec.k << ',' << cell.method << ','
                << cell.steps << ',' << result.spec.runs << ',' << (c + 1) << ','
                << fmt_double(result.spec.truth[c]) << ',' << fmt_double(cell.mean[c]) << ','
                << fmt_double(cell.se[c]) << ',' << fmt_double(cell.nrmse[c]) << ','
                << fmt_double(cell.api_calls_mean) << '\n';
        }
    }
}

void write_bench_timings(const BenchResult& result, std::ostream& out) {
    out << "graph,k,method,steps,wall_ms\n";
    for (const auto& cell : result.cells) {
        out << result.spec.graph_name << ',' << result.spec.k << ',' << cell.method << ','
            << cell.steps << ',' << fmt_double(cell.wall_ms) << '\n';
    }
}

void write_plot_data(const BenchResult& result, int cls, std::ostream& out) {
    // columns: steps, then one NRMSE series per method
    std::vector<std::string> methods;
    for (const auto& ms : result.spec.methods) methods.push_back(ms.name());
    out << "# steps";
    for (const auto& name : methods) out << ' ' << name;
    out << '\n';
    for (std::uint64_t steps : result.spec.steps_grid) {
        out << steps;
        for (const auto& name : methods) {
            double value = kNaN;
            for (const auto& cell : result.cells) {
                if (cell.method == name && cell.steps == steps) {
                    value = cell.nrmse[cls];
                    break;
                }
            }
            out << ' ' << (std::isnan(value) ? "nan" : fmt_double(value));
        }
        out << '\n';
    }
}

}  // namespace graphlet
