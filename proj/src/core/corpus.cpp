#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "error.hpp"
#include "norms.hpp"

namespace dyadic {

namespace {

bool level_has_interior(const SampledWavelet& sw, int j, std::int64_t lo,
                        std::int64_t hi) {
    const std::int64_t width = sw.support_width();
    if (j == 0) return hi - lo >= width;
    const std::int64_t scale = std::int64_t{1} << (j - 1);
    return (hi - lo) * scale >= width;
}

std::int64_t integer_coord(double x, const char* what) {
    const double r = std::nearbyint(x);
    require(r == x, ErrorCode::alignment, std::string(what) + " must be an integer");
    return static_cast<std::int64_t>(r);
}

}  // namespace

int coarsest_interior_level(const SampledWavelet& sw, std::int64_t lo,
                            std::int64_t hi) {
    require(hi > lo, ErrorCode::range, "empty support box");
    for (int j = 0; j <= 40; ++j)
        if (level_has_interior(sw, j, lo, hi)) return j;
    fail(ErrorCode::range, "no interior translates at any level");
}

std::pair<std::int64_t, std::int64_t> interior_translates(
    const SampledWavelet& sw, int j, std::int64_t lo, std::int64_t hi) {
    require(j >= 0, ErrorCode::invalid_argument, "level must be nonnegative");
    const std::int64_t order = sw.order();
    std::int64_t nu_min = 0, nu_max = -1;
    if (j == 0) {
        nu_min = lo;
        nu_max = hi - sw.support_width();
    } else {
        const std::int64_t scale = std::int64_t{1} << (j - 1);
        nu_min = lo * scale + order - 1;
        nu_max = hi * scale - order;
    }
    require(nu_min <= nu_max, ErrorCode::range,
            "no translates fit inside the box at this level");
    return {nu_min, nu_max};
}

namespace {

CorpusEntry synthesized_entry(std::string family, std::string label,
                              CoefficientField coeffs, const SampledWavelet& sw,
                              const DyadicGrid& grid) {
    CorpusEntry e{std::move(family), std::move(label), zero_function(grid),
                  std::move(coeffs), true};
    e.f = synthesize(e.coeffs, sw, grid);
    return e;
}

CorpusEntry sampled_entry(std::string family, std::string label,
                          GridFunction f, const ExperimentConfig& cfg,
                          const SampledWavelet& sw) {
    CoefficientField c = analyze(f, sw, cfg.j_max, cfg.min_gap);
    return CorpusEntry{std::move(family), std::move(label), std::move(f),
                       std::move(c), false};
}

CorpusEntry make_single_wavelet(const FamilySpec& spec, int instance,
                                const ExperimentConfig& cfg,
                                const SampledWavelet& sw,
                                const DyadicGrid& grid, SplitMix64& rng,
                                std::int64_t lo, std::int64_t hi,
                                const std::string& label) {
    const int jc = coarsest_interior_level(sw, lo, hi);
    const int j0 = jc + instance % 2;
    require(j0 <= cfg.j_max, ErrorCode::config,
            "support box too small for single_wavelet levels");
    const auto [a, b] = interior_translates(sw, j0, lo, hi);
    CoefficientField c(cfg.j_max);
    c.set(j0, rng.next_int(a, b), 1.0);
    return synthesized_entry(spec.name, label, std::move(c), sw, grid);
}

CorpusEntry make_single_haar(const FamilySpec& spec, int instance,
                             const ExperimentConfig& cfg,
                             const SampledWavelet& sw, const DyadicGrid& grid,
                             SplitMix64& rng, std::int64_t lo, std::int64_t hi,
                             const std::string& label) {
    const int n0 = std::min(instance % 6, grid.J - 1);
    const std::int64_t scale = std::int64_t{1} << n0;
    const std::int64_t mu = rng.next_int(lo * scale, hi * scale - 1);
    return sampled_entry(spec.name, label, haar_function(grid, n0, mu), cfg,
                         sw);
}

CorpusEntry make_smooth_bump(const FamilySpec& spec, const ExperimentConfig& cfg,
                             const SampledWavelet& sw, const DyadicGrid& grid,
                             SplitMix64& rng, std::int64_t lo, std::int64_t hi,
                             const std::string& label) {
    require(hi - lo >= 5, ErrorCode::config,
            "support box too small for smooth_bump");
    const double w = rng.next_double(1.5, 2.5);
    const double c0 = rng.next_double(static_cast<double>(lo) + w,
                                      static_cast<double>(hi) - w);
    GridFunction f = zero_function(grid);
    const double h = std::ldexp(1.0, -grid.J);
    const std::int64_t i0 = std::max<std::int64_t>(grid.locate(c0 - w), 0);
    const std::int64_t i1 =
        std::min<std::int64_t>(grid.locate(c0 + w), grid.cells() - 1);
    for (std::int64_t i = i0; i <= i1; ++i) {
        const double mid = grid.cell_left(i) + 0.5 * h;
        const double t = (mid - c0) / w;
        if (std::abs(t) < 1.0)
            f.values[static_cast<std::size_t>(i)] =
                std::exp(1.0 - 1.0 / (1.0 - t * t));
    }
    return sampled_entry(spec.name, label, std::move(f), cfg, sw);
}

CorpusEntry make_jump(const FamilySpec& spec, const ExperimentConfig& cfg,
                      const SampledWavelet& sw, const DyadicGrid& grid,
                      SplitMix64& rng, std::int64_t lo, std::int64_t hi,
                      const std::string& label) {
    require(hi - lo >= 3, ErrorCode::config, "support box too small for jump");
    const std::int64_t x0 = integer_coord(grid.x0, "grid origin");
    const std::int64_t unit = std::int64_t{1} << grid.J;
    const std::int64_t cell_a = (lo + 1 - x0) * unit;
    const std::int64_t cell_b = (hi - 1 - x0) * unit;
    const std::int64_t a = rng.next_int(cell_a, cell_b - unit);
    const std::int64_t len = rng.next_int(unit, cell_b - a);
    GridFunction f = zero_function(grid);
    for (std::int64_t i = a; i < a + len; ++i)
        f.values[static_cast<std::size_t>(i)] = 1.0;
    return sampled_entry(spec.name, label, std::move(f), cfg, sw);
}

CorpusEntry make_random_multilevel(const FamilySpec& spec, int instance,
                                   const ExperimentConfig& cfg,
                                   const SampledWavelet& sw,
                                   const DyadicGrid& grid, SplitMix64& rng,
                                   std::int64_t lo, std::int64_t hi,
                                   const std::string& label) {
    double decay = spec.decay;
    double norm_p = spec.norm_p;
    double norm_s = spec.norm_s;
    if (!spec.match_indices.empty()) {
        const std::size_t pick = static_cast<std::size_t>(instance) %
                                 spec.match_indices.size();
        const SmoothnessIndex& idx =
            cfg.indices[static_cast<std::size_t>(spec.match_indices[pick])];
        decay = idx.s;
        norm_p = idx.p;
        norm_s = idx.s;
    }
    const int jc = coarsest_interior_level(sw, lo, hi);
    require(jc <= cfg.j_max, ErrorCode::config,
            "support box too small for random_multilevel levels");
    // Content stops where the level sweep ends so that the averaging
    // window can resolve every populated scale.
    const int jt = std::max(jc, std::min(cfg.j_max, cfg.n_end - 1));
    CoefficientField c(cfg.j_max);
    for (int j = jc; j <= jt; ++j) {
        const auto [a, b] = interior_translates(sw, j, lo, hi);
        const double amp = std::exp2(-static_cast<double>(j) * decay);
        for (std::int64_t nu = a; nu <= b; ++nu) {
            const double sign = rng.next_sign();
            c.set(j, nu, amp * sign * rng.next_double(0.5, 1.0));
        }
    }
    const double nb = b_quasinorm(c, norm_p, std::numeric_limits<double>::infinity(),
                                  norm_s);
    require(nb > 0.0, ErrorCode::construction, "degenerate multilevel draw");
    for (auto& level : c.levels)
        for (auto& [nu, lambda] : level) lambda /= nb;
    return synthesized_entry(spec.name, label, std::move(c), sw, grid);
}

CorpusEntry make_random_signs_flat(const FamilySpec& spec,
                                   const ExperimentConfig& cfg,
                                   const SampledWavelet& sw,
                                   const DyadicGrid& grid, SplitMix64& rng,
                                   std::int64_t lo, std::int64_t hi,
                                   const std::string& label) {
    const int jc = coarsest_interior_level(sw, lo, hi);
    require(jc + 1 <= cfg.j_max, ErrorCode::config,
            "support box too small for random_signs_flat levels");
    CoefficientField c(cfg.j_max);
    for (int j = jc; j <= jc + 1; ++j) {
        const auto [a, b] = interior_translates(sw, j, lo, hi);
        for (std::int64_t nu = a; nu <= b; ++nu) c.set(j, nu, rng.next_sign());
    }
    return synthesized_entry(spec.name, label, std::move(c), sw, grid);
}

}  // namespace

CorpusEntry make_corpus_entry(const FamilySpec& spec, int instance,
                              const ExperimentConfig& cfg,
                              const SampledWavelet& sw, const DyadicGrid& grid,
                              SplitMix64 rng) {
    require(instance >= 0, ErrorCode::invalid_argument,
            "instance must be nonnegative");
    const std::int64_t lo = integer_coord(cfg.support_lo, "support_lo");
    const std::int64_t hi = integer_coord(cfg.support_hi, "support_hi");
    const std::string label = spec.name + "[" + std::to_string(instance) + "]";
    if (spec.name == "single_wavelet")
        return make_single_wavelet(spec, instance, cfg, sw, grid, rng, lo, hi,
                                   label);
    if (spec.name == "single_haar")
        return make_single_haar(spec, instance, cfg, sw, grid, rng, lo, hi,
                                label);
    if (spec.name == "smooth_bump")
        return make_smooth_bump(spec, cfg, sw, grid, rng, lo, hi, label);
    if (spec.name == "jump")
        return make_jump(spec, cfg, sw, grid, rng, lo, hi, label);
    if (spec.name == "random_multilevel")
        return make_random_multilevel(spec, instance, cfg, sw, grid, rng, lo,
                                      hi, label);
    if (spec.name == "random_signs_flat")
        return make_random_signs_flat(spec, cfg, sw, grid, rng, lo, hi, label);
    fail(ErrorCode::config, "unknown corpus family " + spec.name);
}

std::vector<CorpusEntry> make_corpus(const ExperimentConfig& cfg,
                                     const SampledWavelet& sw,
                                     const DyadicGrid& grid) {
    const SplitMix64 master(cfg.seed);
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < cfg.corpus.size(); ++i) {
        const SplitMix64 fam = master.child(i);
        for (int k = 0; k < cfg.corpus[i].count; ++k)
            out.push_back(make_corpus_entry(cfg.corpus[i], k, cfg, sw, grid,
                                            fam.child(static_cast<std::uint64_t>(k))));
    }
    return out;
}

int write_corpus(const ExperimentConfig& cfg, const std::string& dir) {
    validate_config(cfg);
    const SampledWavelet sw =
        cascade_sample(daubechies_filter(cfg.wavelet_order), cfg.cascade_depth);
    const DyadicGrid grid = make_grid(cfg.grid_j, cfg.x0, cfg.x1);
    const std::vector<CorpusEntry> corpus = make_corpus(cfg, sw, grid);
    std::filesystem::create_directories(dir);
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& e : corpus) {
        const std::string base = dir + "/" + e.label;
        write_grid_function(e.f, base + ".csv", base + "_grid.json");
        write_coefficients(e.coeffs, base + "_coeffs.json");
        manifest.push_back(nlohmann::json{{"family", e.family},
                                          {"label", e.label},
                                          {"exact_coeffs", e.exact_coeffs},
                                          {"coeff_count", e.coeffs.count()}});
    }
    std::ofstream out(dir + "/corpus_index.json");
    require(out.good(), ErrorCode::io, "cannot write corpus manifest");
    out << manifest.dump(2) << "\n";
    require(out.good(), ErrorCode::io, "corpus manifest write failed");
    return static_cast<int>(corpus.size());
}

std::vector<CorpusEntry> make_sign_corpus(const ExperimentConfig& cfg,
                                          const SampledWavelet& sw,
                                          const DyadicGrid& grid) {
    // Tag 9999 keeps these draws disjoint from the family streams, which
    // are tagged by ordinal.
    const SplitMix64 master(cfg.seed);
    const SplitMix64 base = master.child(9999);
    const SmoothnessIndex& idx = cfg.sign_study.index;
    FamilySpec spec;
    spec.name = "random_multilevel";
    spec.count = cfg.sign_study.count;
    spec.decay = idx.s;
    spec.norm_p = idx.p;
    spec.norm_s = idx.s;
    std::vector<CorpusEntry> out;
    for (int k = 0; k < spec.count; ++k) {
        CorpusEntry e = make_corpus_entry(
            spec, k, cfg, sw, grid, base.child(static_cast<std::uint64_t>(k)));
        e.family = "sign_multilevel";
        e.label = "sign_multilevel[" + std::to_string(k) + "]";
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace dyadic
