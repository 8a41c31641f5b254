#pragma once

#include <string>

#include <json.hpp>

namespace dyadic {

// Aggregated verdict over the ratio files in a results directory.
struct ReportOutcome {
    nlohmann::json doc;
    std::string text;
    bool pass = true;
};

// Reads the ratio CSVs in dir (en, pn, enpn, tn, mult), fits a growth
// exponent per (experiment, index, family) group, and checks that
// groups inside the applicable parameter region stay flat. Sign-type
// level weights are judged on the unconditional region, the others on
// the full theorem region.
ReportOutcome build_report(const std::string& dir);

// Text table of per-group growth fits for a single ratio CSV.
std::string fit_table(const std::string& csv_path);

}  // namespace dyadic
