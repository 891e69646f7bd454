// JSON / CSV serialization of reports and ground-truth files.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphlet/baselines.hpp"
#include "graphlet/estimate.hpp"
#include "graphlet/oracle.hpp"

namespace graphlet {

std::string method_name(Method m);
std::string walk_name(WalkMode m);

nlohmann::json report_to_json(const EstimateReport& report);
void report_to_csv(const EstimateReport& report, std::ostream& out);

nlohmann::json exact_to_json(const ExactCounts& counts, const std::string& graph_name);
void exact_to_csv(const ExactCounts& counts, const std::string& graph_name, std::ostream& out);

nlohmann::json baseline_to_json(const BaselineReport& report);
void baseline_to_csv(const BaselineReport& report, std::ostream& out);

// Concentration vector from a report or ground-truth JSON file (the
// "concentration" field).
std::vector<double> load_concentration(const std::string& path);

}  // namespace graphlet
