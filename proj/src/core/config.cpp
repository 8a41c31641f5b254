#include "config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "error.hpp"
#include "util.hpp"

namespace dyadic {

namespace {

using nlohmann::json;

const std::set<std::string> kFamilyNames{
    "single_wavelet", "single_haar",        "smooth_bump",
    "jump",           "random_multilevel",  "random_signs_flat",
};
const std::set<std::string> kAFamilies{"ones", "random_signs", "single_spike"};
const std::set<std::string> kBFamilies{"ones", "bv_bounded", "alternating",
                                       "random_signs"};

json index_out(const SmoothnessIndex& idx) {
    return json{{"p", json_number(idx.p)},
                {"q", json_number(idx.q)},
                {"s", idx.s},
                {"r", json_number(idx.r)}};
}

SmoothnessIndex index_in(const json& v) {
    require(v.is_object() && v.contains("p") && v.contains("q") &&
                v.contains("s"),
            ErrorCode::config, "index entries need p, q, s");
    SmoothnessIndex idx;
    idx.p = json_number_in(v.at("p"), "index.p");
    idx.q = json_number_in(v.at("q"), "index.q");
    idx.s = json_number_in(v.at("s"), "index.s");
    idx.r = v.contains("r") ? json_number_in(v.at("r"), "index.r") : 2.0;
    return idx;
}

}  // namespace

nlohmann::json json_number(double v) {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

double json_number_in(const nlohmann::json& v, const char* what) {
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        fail(ErrorCode::config, std::string(what) + ": bad number " + s);
    }
    require(v.is_number(), ErrorCode::config,
            std::string(what) + ": expected a number");
    return v.get<double>();
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.indices = {
        {0.6, 2.0, 0.84, 2.0},
        {1.0, 2.0, 0.5, 2.0},
        {1.0, 4.0, 0.9, 2.0},
        {2.0, 2.0, 0.0, 4.0},
        {2.0, 1.5, 0.25, 2.0},
        {3.0, 4.0, -0.2, 1.0},
        {0.6, 2.0, 1.9666666666666668, 2.0},
        {0.75, 2.0, 1.6333333333333333, 2.0},
    };
    cfg.corpus = {
        {"single_wavelet", 8, 1.25, 2.0, 0.5, {}},
        {"single_haar", 8, 1.25, 2.0, 0.5, {}},
        {"smooth_bump", 8, 1.25, 2.0, 0.5, {}},
        {"jump", 8, 1.25, 2.0, 0.5, {}},
        {"random_multilevel", 8, 1.25, 2.0, 0.5, {}},
        {"random_signs_flat", 8, 1.25, 2.0, 0.5, {}},
    };
    cfg.a_families = {"ones", "random_signs", "single_spike"};
    cfg.b_families = {"ones", "bv_bounded", "alternating", "random_signs"};
    return cfg;
}

ExperimentConfig matched_config() {
    ExperimentConfig cfg = default_config();
    cfg.corpus = {
        {"random_multilevel", 6, 1.25, 2.0, 0.5, {0, 1, 2, 3, 4, 5}},
        {"smooth_bump", 8, 1.25, 2.0, 0.5, {}},
    };
    return cfg;
}

ExperimentConfig reduced_config() {
    ExperimentConfig cfg = default_config();
    cfg.grid_j = 12;
    cfg.cascade_depth = 13;
    cfg.j_max = 8;
    cfg.n_begin = 1;
    cfg.n_end = 7;
    for (auto& fam : cfg.corpus) fam.count = 3;
    cfg.sign_study.seeds = 8;
    cfg.sign_study.count = 2;
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    require(cfg.wavelet_order >= 1 && cfg.wavelet_order <= 10,
            ErrorCode::config, "wavelet_order must be 1..10");
    require(cfg.grid_j >= 1 && cfg.grid_j <= 24, ErrorCode::config,
            "grid_j must be 1..24");
    require(cfg.cascade_depth >= cfg.grid_j, ErrorCode::config,
            "cascade_depth must reach the grid resolution");
    require(cfg.cascade_depth <= 24, ErrorCode::config,
            "cascade_depth must be <= 24");
    require(cfg.j_max >= 0 && cfg.min_gap >= 0 &&
                cfg.j_max + cfg.min_gap <= cfg.grid_j,
            ErrorCode::config, "j_max + min_gap must not exceed grid_j");
    require(cfg.x0 < cfg.x1, ErrorCode::config, "empty grid domain");
    require(cfg.support_lo < cfg.support_hi, ErrorCode::config,
            "empty corpus box");
    require(cfg.support_lo == std::floor(cfg.support_lo) &&
                cfg.support_hi == std::floor(cfg.support_hi),
            ErrorCode::config, "corpus box endpoints must be integers");
    const double width = 2.0 * cfg.wavelet_order - 1.0;
    require(cfg.x0 <= cfg.support_lo - width &&
                cfg.x1 >= cfg.support_hi + width,
            ErrorCode::config,
            "grid must extend one support width beyond the corpus box");
    require(cfg.n_begin >= 0 && cfg.n_begin <= cfg.n_end &&
                cfg.n_end + 1 <= cfg.grid_j,
            ErrorCode::config, "bad averaging level range");
    require(!cfg.indices.empty(), ErrorCode::config, "no indices configured");
    for (const auto& idx : cfg.indices) {
        require(idx.p > 0 && idx.q > 0 && idx.r > 0, ErrorCode::config,
                "index exponents must be positive");
        require(!std::isinf(idx.p), ErrorCode::config,
                "index p must be finite");
    }
    require(!cfg.corpus.empty(), ErrorCode::config, "no corpus configured");
    for (const auto& fam : cfg.corpus) {
        require(kFamilyNames.count(fam.name) == 1, ErrorCode::config,
                "unknown corpus family: " + fam.name);
        int count = fam.match_indices.empty()
                        ? fam.count
                        : static_cast<int>(fam.match_indices.size());
        require(count >= 1, ErrorCode::config,
                "family count must be positive: " + fam.name);
        for (int m : fam.match_indices)
            require(m >= 0 && m < static_cast<int>(cfg.indices.size()),
                    ErrorCode::config, "match index out of range");
        require(fam.norm_p > 0, ErrorCode::config, "norm_p must be positive");
    }
    for (const auto& a : cfg.a_families)
        require(kAFamilies.count(a) == 1, ErrorCode::config,
                "unknown position-weight family: " + a);
    for (const auto& b : cfg.b_families)
        require(kBFamilies.count(b) == 1, ErrorCode::config,
                "unknown level-weight family: " + b);
    require(cfg.sign_study.seeds >= 1 && cfg.sign_study.count >= 1,
            ErrorCode::config, "sign study needs seeds and instances");
    require(cfg.sign_study.index.p > 0 && !std::isinf(cfg.sign_study.index.p),
            ErrorCode::config, "sign study index needs finite p");
    // The grid itself must be constructible.
    make_grid(cfg.grid_j, cfg.x0, cfg.x1);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    json indices = json::array();
    for (const auto& idx : cfg.indices) indices.push_back(index_out(idx));
    json corpus = json::array();
    for (const auto& fam : cfg.corpus) {
        json f{{"name", fam.name},
               {"count", fam.count},
               {"decay", fam.decay},
               {"norm_p", fam.norm_p},
               {"norm_s", fam.norm_s}};
        if (!fam.match_indices.empty()) f["match_indices"] = fam.match_indices;
        corpus.push_back(std::move(f));
    }
    return json{
        {"wavelet_order", cfg.wavelet_order},
        {"cascade_depth", cfg.cascade_depth},
        {"grid", json{{"j", cfg.grid_j}, {"x0", cfg.x0}, {"x1", cfg.x1}}},
        {"j_max", cfg.j_max},
        {"min_gap", cfg.min_gap},
        {"support", json::array({cfg.support_lo, cfg.support_hi})},
        {"n_range", json::array({cfg.n_begin, cfg.n_end})},
        {"seed", cfg.seed},
        {"indices", std::move(indices)},
        {"corpus", std::move(corpus)},
        {"a_families", cfg.a_families},
        {"b_families", cfg.b_families},
        {"sign_study", json{{"index", index_out(cfg.sign_study.index)},
                            {"seeds", cfg.sign_study.seeds},
                            {"count", cfg.sign_study.count}}},
    };
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path);
    require(out.good(), ErrorCode::io, "cannot open " + path);
    out << config_to_json(cfg).dump(2) << "\n";
    require(out.good(), ErrorCode::io, "cannot write " + path);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io, "cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(ErrorCode::config, "bad config JSON: " + std::string(e.what()));
    }
    ExperimentConfig cfg = default_config();
    cfg.indices.clear();
    cfg.corpus.clear();
    try {
        cfg.wavelet_order = doc.at("wavelet_order").get<int>();
        cfg.cascade_depth = doc.at("cascade_depth").get<int>();
        cfg.grid_j = doc.at("grid").at("j").get<int>();
        cfg.x0 = doc.at("grid").at("x0").get<double>();
        cfg.x1 = doc.at("grid").at("x1").get<double>();
        cfg.j_max = doc.at("j_max").get<int>();
        if (doc.contains("min_gap")) cfg.min_gap = doc["min_gap"].get<int>();
        cfg.support_lo = doc.at("support").at(0).get<double>();
        cfg.support_hi = doc.at("support").at(1).get<double>();
        cfg.n_begin = doc.at("n_range").at(0).get<int>();
        cfg.n_end = doc.at("n_range").at(1).get<int>();
        cfg.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& v : doc.at("indices")) cfg.indices.push_back(index_in(v));
        for (const auto& v : doc.at("corpus")) {
            FamilySpec fam;
            fam.name = v.at("name").get<std::string>();
            if (v.contains("count")) fam.count = v["count"].get<int>();
            if (v.contains("decay")) fam.decay = v["decay"].get<double>();
            if (v.contains("norm_p")) fam.norm_p = v["norm_p"].get<double>();
            if (v.contains("norm_s")) fam.norm_s = v["norm_s"].get<double>();
            if (v.contains("match_indices"))
                fam.match_indices = v["match_indices"].get<std::vector<int>>();
            cfg.corpus.push_back(std::move(fam));
        }
        if (doc.contains("a_families"))
            cfg.a_families = doc["a_families"].get<std::vector<std::string>>();
        if (doc.contains("b_families"))
            cfg.b_families = doc["b_families"].get<std::vector<std::string>>();
        if (doc.contains("sign_study")) {
            const auto& ss = doc["sign_study"];
            cfg.sign_study.index = index_in(ss.at("index"));
            cfg.sign_study.seeds = ss.at("seeds").get<int>();
            cfg.sign_study.count = ss.at("count").get<int>();
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::config, "bad config field: " + std::string(e.what()));
    }
    validate_config(cfg);
    return cfg;
}

}  // namespace dyadic
