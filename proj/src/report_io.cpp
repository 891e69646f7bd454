#include "graphlet/report_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace graphlet {

namespace {

nlohmann::json double_or_null(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

nlohmann::json vector_json(const std::vector<double>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (double x : v) arr.push_back(double_or_null(x));
    return arr;
}

void csv_value(std::ostream& out, double x) {
    if (!std::isnan(x)) out << x;
}

}  // namespace

std::string method_name(Method m) { return m == Method::base ? "base" : "css"; }

std::string walk_name(WalkMode m) { return m == WalkMode::simple ? "srw" : "nb"; }

nlohmann::json report_to_json(const EstimateReport& report) {
    nlohmann::json j;
    j["graph"] = report.config.graph_name;
    j["k"] = report.config.k;
    j["d"] = report.config.d;
    j["method"] = method_name(report.config.method);
    j["walk"] = walk_name(report.config.walk);
    j["steps"] = report.steps;
    j["seed"] = report.config.seed;
    j["burn_in"] = report.config.burn_in;
    j["valid_windows"] = report.valid_windows;
    j["api_calls"] = report.api_calls;
    j["degenerate"] = report.degenerate;
    j["concentration"] = vector_json(report.concentration);
    j["counts"] = report.counts ? vector_json(*report.counts) : nlohmann::json(nullptr);
    j["not_estimable"] = report.not_estimable;
    j["notes"] = report.notes;
    return j;
}

void report_to_csv(const EstimateReport& report, std::ostream& out) {
    out << "graph,k,d,method,walk,steps,seed,class,concentration,count\n";
    for (std::size_t i = 0; i < report.concentration.size(); ++i) {
        out << report.config.graph_name << ',' << report.config.k << ',' << report.config.d << ','
            << method_name(report.config.method) << ',' << walk_name(report.config.walk) << ','
            << report.steps << ',' << report.config.seed << ',' << (i + 1) << ',';
        csv_value(out, report.concentration[i]);
        out << ',';
        if (report.counts) csv_value(out, (*report.counts)[i]);
        out << '\n';
    }
}

nlohmann::json exact_to_json(const ExactCounts& counts, const std::string& graph_name) {
    nlohmann::json j;
    j["graph"] = graph_name;
    j["k"] = counts.k;
    j["counts"] = counts.counts;
    j["total"] = counts.total;
    j["concentration"] = vector_json(counts.concentration());
    return j;
}

void exact_to_csv(const ExactCounts& counts, const std::string& graph_name, std::ostream& out) {
    out << "graph,k,class,count,concentration\n";
    auto conc = counts.concentration();
    for (std::size_t i = 0; i < counts.counts.size(); ++i) {
        out << graph_name << ',' << counts.k << ',' << (i + 1) << ',' << counts.counts[i] << ','
            << conc[i] << '\n';
    }
}

nlohmann::json baseline_to_json(const BaselineReport& report) {
    nlohmann::json j;
    j["graph"] = report.graph_name;
    j["method"] = report.method;
    j["samples"] = report.samples;
    j["kept"] = report.kept;
    j["api_calls"] = report.api_calls;
    j["counts"] = vector_json(report.counts);
    j["concentration"] = vector_json(report.concentration);
    j["not_estimable"] = report.not_estimable;
    j["preprocess_ms"] = report.preprocess_ms;
    j["sample_ms"] = report.sample_ms;
    return j;
}

void baseline_to_csv(const BaselineReport& report, std::ostream& out) {
    out << "graph,method,samples,class,count,concentration\n";
    for (std::size_t i = 0; i < report.concentration.size(); ++i) {
        out << report.graph_name << ',' << report.method << ',' << report.samples << ','
            << (i + 1) << ',';
        if (i < report.counts.size()) csv_value(out, report.counts[i]);
        out << ',';
        csv_value(out, report.concentration[i]);
        out << '\n';
    }
}

std::vector<double> load_concentration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.contains("concentration")) {
        throw std::runtime_error(path + ": no \"concentration\" field");
    }
    std::vector<double> out;
    for (const auto& x : j["concentration"]) {
        out.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                  : x.get<double>());
    }
    return out;
}

}  // namespace graphlet
