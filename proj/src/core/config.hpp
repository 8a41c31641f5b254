#ifndef DYADIC_CONFIG_HPP
#define DYADIC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "norms.hpp"

namespace dyadic {

// JSON cannot hold IEEE infinities, so infinite exponents travel as the
// string "inf" (or "-inf").
nlohmann::json json_number(double v);
double json_number_in(const nlohmann::json& v, const char* what);

// One corpus family block. `decay` steers the level profile of the
// random multilevel generator; `match_indices` (optional) generates one
// instance per referenced smoothness index, using that index's s as the
// decay and normalizing the instance in its B^s_{p,inf} form.
struct FamilySpec {
    std::string name;
    int count = 8;
    double decay = 1.25;
    double norm_p = 2.0;
    double norm_s = 0.5;
    std::vector<int> match_indices;
};

// Sign-multiplier study block: a dedicated corpus of `count` multilevel
// instances matched to `index`, swept over `seeds` independent sign
// sequences.
struct SignStudy {
    SmoothnessIndex index{1.0, 4.0, 0.9, 2.0};
    int seeds = 32;
    int count = 4;
};

struct ExperimentConfig {
    int wavelet_order = 6;
    int cascade_depth = 15;
    int grid_j = 14;
    double x0 = -16.0;
    double x1 = 16.0;
    int j_max = 10;
    int min_gap = 4;
    double support_lo = -4.0;  // corpus functions live in this box
    double support_hi = 4.0;
    int n_begin = 1;
    int n_end = 9;
    std::uint64_t seed = 0x5EEDD1CEULL;
    std::vector<SmoothnessIndex> indices;
    std::vector<FamilySpec> corpus;
    std::vector<std::string> a_families;  // per-position weight families
    std::vector<std::string> b_families;  // per-level weight families
    SignStudy sign_study;
};

// Built-in configuration: mixed corpus over the eight reference indices.
ExperimentConfig default_config();

// Multilevel instances matched to the first six indices plus smooth
// bumps, for flatness runs right at the configured exponents.
ExperimentConfig matched_config();

// Smaller grid, fewer entries, shorter level range: minutes instead of
// tens of minutes, same families and indices.
ExperimentConfig reduced_config();

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& cfg, const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Throws ErrorCode::config when fields are inconsistent (resolution
// gaps, corpus box vs. grid margins, unknown family names, bad ranges).
void validate_config(const ExperimentConfig& cfg);

}  // namespace dyadic

#endif
