#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "corpus.hpp"
#include "norms.hpp"

namespace dyadic {

// The five ratio experiments. en tracks averaging operators, pn
// coefficient truncation, enpn the gap between the two, tn Haar
// multipliers, mult levelwise martingale multipliers.
enum class SweepKind { en, pn, enpn, tn, mult };

SweepKind sweep_kind_from_name(const std::string& name);
std::string sweep_kind_name(SweepKind kind);

// One measured ratio: quasi-norm of the transformed object over the
// quasi-norm of the input, at one smoothness index and one scale N.
struct RatioRow {
    std::string experiment;
    std::string family;
    SmoothnessIndex idx;
    int n = 0;
    double num = 0.0;
    double den = 0.0;
    double ratio = 0.0;
    bool in_theorem = false;
    bool in_uncond = false;
    double bdist = 0.0;
};

struct SweepResult {
    SweepKind kind = SweepKind::en;
    std::vector<RatioRow> rows;
    nlohmann::json summary;
    bool pass = true;
};

// Runs the experiment over the configured corpus with `jobs` worker
// threads. Output is independent of `jobs`: every random stream is
// keyed by position, and rows are emitted in a fixed canonical order
// (experiment, index, family instance, N).
SweepResult run_sweep(SweepKind kind, const ExperimentConfig& cfg,
                      int jobs = 1);

std::string ratio_csv_header();
std::string rows_to_csv(const std::vector<RatioRow>& rows);
std::vector<RatioRow> read_ratio_csv(const std::string& path);

// Writes <dir>/<kind>.csv and <dir>/<kind>_summary.json.
void write_sweep_result(const SweepResult& r, const std::string& dir);

}  // namespace dyadic
