// Acceptance suite: nine criteria, one pass/fail line each. Criteria
// keep running after a failure so one run shows the full picture, and
// the exit code is nonzero when any line failed. Sweep results are
// shared across criteria through a results directory next to the
// binary's working directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "config.hpp"
#include "corpus.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "norms.hpp"
#include "oracle.hpp"
#include "pins.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sweep.hpp"
#include "wavelet.hpp"

using namespace dyadic;
using nlohmann::json;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Context {
    ExperimentConfig cfg = default_config();
    std::string dir;
    int jobs = 1;
    std::map<SweepKind, SweepResult> sweeps;

    const SweepResult& sweep(SweepKind kind) {
        auto it = sweeps.find(kind);
        if (it == sweeps.end()) {
            SweepResult r = run_sweep(kind, cfg, jobs);
            write_sweep_result(r, dir);
            it = sweeps.emplace(kind, std::move(r)).first;
        }
        return it->second;
    }
};

#if defined(__GNUC__)
__attribute__((format(printf, 1, 2)))
#endif
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

GridFunction random_function(const DyadicGrid& grid, std::uint64_t seed,
                             double lo, double hi) {
    GridFunction f = zero_function(grid);
    SplitMix64 rng(seed);
    const std::int64_t cells = grid.cells();
    for (std::int64_t c = 0; c < cells; ++c) {
        const double x = grid.cell_left(c);
        if (x >= lo && x < hi) f.values[c] = rng.next_double(-1.0, 1.0);
    }
    return f;
}

CoefficientField random_field(int j_max, std::uint64_t seed) {
    CoefficientField c(j_max);
    SplitMix64 rng(seed);
    for (int j = 0; j <= j_max; ++j) {
        const std::int64_t hi = (j == 0) ? 4 : std::int64_t{4} << (j - 1);
        for (std::int64_t nu = -1; nu < hi; ++nu)
            if (rng.next_double() < 0.5) c.set(j, nu, rng.next_double(-2.0, 2.0));
    }
    return c;
}

// Filter identities hold at rounding level for every tabulated order.
Outcome crit_filters(Context&) {
    double worst = 0.0;
    bool flagged = true;
    for (int order = 1; order <= 10; ++order) {
        const IdentityReport r = verify_filter_identities(daubechies_filter(order));
        worst = std::max({worst, r.sum_residual, r.orth_residual,
                          r.qmf_residual, r.moment_residual});
        flagged = flagged && r.pass;
    }
    const bool ok = flagged && worst <= pins::kFilterResidual;
    return {ok, fmt("orders 1..10, worst residual %.2e (tol %.0e)", worst,
                    pins::kFilterResidual)};
}

// Averaging composition, unit-weight multipliers, and telescoping are
// exact, not merely close, on dyadic lattice data.
Outcome crit_algebra(Context&) {
    const DyadicGrid g = make_grid(10, 0.0, 1.0);
    const std::int64_t lattice = std::int64_t{1} << 20;
    const SplitMix64 master(20260815);
    const int levels[] = {0, 2, 3, 5, 7, 10};
    int mismatches = 0;
    int functions = 0;
    for (int inst = 0; inst < 200; ++inst) {
        SplitMix64 rng = master.child(static_cast<std::uint64_t>(inst));
        GridFunction f = zero_function(g);
        for (auto& v : f.values)
            v = std::ldexp(static_cast<double>(rng.next_int(-lattice, lattice)),
                           -20);
        ++functions;

        std::map<int, GridFunction> avg;
        for (int n : levels) avg.emplace(n, conditional_expectation(f, n));
        for (int n : levels)
            for (int m : levels) {
                const GridFunction comp = conditional_expectation(avg.at(m), n);
                if (comp.values != avg.at(std::min(n, m)).values) ++mismatches;
            }

        for (int t : {0, 1, 4, 9}) {
            MultiplierSeq ones;
            ones.offset = 0;
            ones.entries.assign(std::size_t{1} << t, 1.0);
            const GridFunction via_weights = haar_multiplier(f, t, ones);
            const GridFunction direct = martingale_difference(f, t);
            if (via_weights.values != direct.values) ++mismatches;
        }

        GridFunction acc = conditional_expectation(f, 0);
        for (int n = 0; n < g.J; ++n)
            add_scaled(acc, 1.0, martingale_difference(f, n));
        if (acc.values != f.values) ++mismatches;
    }
    const bool ok = mismatches == 0 && functions == 200;
    return {ok, fmt("%d lattice functions: compositions, unit weights, "
                    "telescoping all exact (%d mismatches)",
                    functions, mismatches)};
}

// Fast paths agree with the brute-force oracles to relative precision.
Outcome crit_oracle(Context&) {
    double worst = 0.0;
    bool ok = true;
    auto check = [&](double a, double b) {
        const double d =
            std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
        worst = std::max(worst, d);
        if (d > pins::kOracleRel) ok = false;
    };

    int avg_instances = 0;
    {
        const DyadicGrid g = make_grid(10, 0.0, 2.0);
        std::vector<GridFunction> fs;
        for (std::uint64_t i = 0; i < 40; ++i)
            fs.push_back(random_function(g, 4100 + i, 0.0, 2.0));
        const std::int64_t cells = g.cells();
        for (int n : {0, 2, 4, 7, 10}) {
            const std::vector<double> m = oracle::dense_expectation_matrix(g, n);
            for (const GridFunction& f : fs) {
                const GridFunction want = oracle::apply_dense(m, f);
                const GridFunction got = conditional_expectation(f, n);
                for (std::int64_t c = 0; c < cells; ++c)
                    check(got.values[c], want.values[c]);
                ++avg_instances;
            }
        }
    }

    int analyze_instances = 0;
    {
        const DyadicGrid g = make_grid(10, -8.0, 8.0);
        for (int order : {6, 2}) {
            const SampledWavelet sw = cascade_sample(daubechies_filter(order), 11);
            for (std::uint64_t i = 0; i < 100; ++i) {
                const GridFunction f = random_function(g, 8200 + i, -4.0, 4.0);
                const CoefficientField fast = analyze(f, sw, 6, 4);
                const CoefficientField slow = oracle::naive_inner_products(f, sw, 6);
                for (int j = 0; j <= 6; ++j) {
                    for (const auto& [nu, lam] : slow.levels[j])
                        check(fast.get(j, nu), lam);
                    for (const auto& [nu, lam] : fast.levels[j])
                        check(lam, slow.get(j, nu));
                }
                ++analyze_instances;
            }
        }
    }

    int norm_instances = 0;
    {
        const SmoothnessIndex idxs[] = {{0.6, 2.0, 0.84, 2.0},
                                        {1.0, 4.0, 0.9, 2.0},
                                        {2.0, 1.5, 0.25, 2.0},
                                        {3.0, 4.0, -0.2, 2.0}};
        for (std::uint64_t i = 0; i < 200; ++i) {
            const CoefficientField c = random_field(8, 9300 + i);
            for (const SmoothnessIndex& ix : idxs) {
                check(b_quasinorm(c, ix.p, ix.q, ix.s),
                      oracle::brute_norm_b(c, ix.p, ix.q, ix.s));
                check(f_quasinorm(c, ix.p, ix.q, ix.s),
                      oracle::brute_norm_f(c, ix.p, ix.q, ix.s));
            }
            ++norm_instances;
        }
    }

    ok = ok && avg_instances >= 200 && analyze_instances >= 200 &&
         norm_instances >= 200;
    return {ok, fmt("%d+%d+%d instances, worst relative gap %.2e (tol %.0e)",
                    avg_instances, analyze_instances, norm_instances, worst,
                    pins::kOracleRel)};
}

// Analyzing a basis function returns a unit coefficient, and a single
// coefficient has the closed-form quasi-norm.
Outcome crit_normalization(Context&) {
    bool ok = true;
    const DyadicGrid g = make_grid(12, -16.0, 16.0);

    double worst_step = 0.0;
    {
        const SampledWavelet sw = cascade_sample(daubechies_filter(1), 12);
        for (int j : {0, 1, 4, 7}) {
            const auto [lo, hi] = interior_translates(sw, j, -16, 16);
            for (std::int64_t nu : {lo, (lo + hi) / 2, hi}) {
                const GridFunction f = wavelet_at(sw, g, j, nu);
                const CoefficientField back = analyze(f, sw, 8, 4);
                worst_step =
                    std::max(worst_step, std::abs(back.get(j, nu) - 1.0));
            }
        }
        ok = ok && worst_step <= pins::kUnitCoeffStep;
    }

    double worst_smooth = 0.0;
    {
        const SampledWavelet sw = cascade_sample(daubechies_filter(4), 13);
        for (int j : {0, 1, 2, 5, 8}) {
            const auto [lo, hi] = interior_translates(sw, j, -16, 16);
            for (std::int64_t nu : {lo, (lo + hi) / 2, hi}) {
                CoefficientField c(8);
                c.set(j, nu, 1.0);
                const GridFunction f = synthesize(c, sw, g);
                const CoefficientField back = analyze(f, sw, 8, 4);
                double defect = std::abs(back.get(j, nu) - 1.0);
                for (int jj = 0; jj <= 8; ++jj)
                    for (const auto& [mu, lam] : back.levels[jj]) {
                        const double want = (jj == j && mu == nu) ? 1.0 : 0.0;
                        defect = std::max(defect, std::abs(lam - want));
                    }
                worst_smooth = std::max(worst_smooth, defect);
            }
        }
        ok = ok && worst_smooth <= pins::kUnitCoeffSmooth;
    }

    double worst_norm = 0.0;
    {
        const SmoothnessIndex idxs[] = {{0.6, 2.0, 0.84, 2.0},
                                        {1.0, 4.0, 0.9, 2.0},
                                        {2.0, 2.0, 0.0, 2.0},
                                        {3.0, kInf, 0.8, 2.0}};
        for (int j : {0, 2, 5})
            for (const SmoothnessIndex& ix : idxs) {
                CoefficientField c(6);
                c.set(j, 3, 1.0);
                const double want = std::exp2(j * (ix.s - 1.0 / ix.p));
                for (double got : {b_quasinorm(c, ix.p, ix.q, ix.s),
                                   f_quasinorm(c, ix.p, ix.q, ix.s)})
                    worst_norm =
                        std::max(worst_norm, std::abs(got - want) / want);
            }
        ok = ok && worst_norm <= pins::kNormClosedForm;
    }

    return {ok, fmt("unit coefficient: step %.1e (tol %.0e), order-4 %.1e "
                    "(tol %.0e); closed form %.1e (tol %.0e)",
                    worst_step, pins::kUnitCoeffStep, worst_smooth,
                    pins::kUnitCoeffSmooth, worst_norm,
                    pins::kNormClosedForm)};
}

// Averaging ratios level off at every in-region index for every corpus
// family, with a finite observed constant.
Outcome crit_en(Context& ctx) {
    const SweepResult& r = ctx.sweep(SweepKind::en);
    const ReportOutcome rep = build_report(ctx.dir);
    bool ok = r.pass;
    for (const auto& ix : r.summary.at("indices"))
        if (ix.at("in_theorem").get<bool>())
            ok = ok && ix.at("admissible").get<bool>();
    const auto& st = rep.doc.at("experiments").at("en");
    ok = ok && st.at("violations").get<int>() == 0 &&
         st.at("too_short").get<int>() == 0;

    double hi = -1e300;
    double lo = 1e300;
    int families = 0;
    auto in_band = [](double s) {
        return s >= pins::kEnSlopeMin && s <= pins::kEnSlopeMax;
    };
    for (const auto& v : rep.doc.at("verdicts")) {
        if (v.at("experiment") != "en" || !v.at("in_region").get<bool>())
            continue;
        for (const auto& [name, slope] : v.at("class_slopes").items()) {
            (void)name;
            const double s = slope.get<double>();
            hi = std::max(hi, s);
            lo = std::min(lo, s);
            ++families;
        }
        if (!v.contains("slope") || !in_band(v.at("slope").get<double>()))
            ok = false;
    }
    ok = ok && families > 0 && in_band(hi) && in_band(lo);

    double c_obs = 0.0;
    for (const RatioRow& row : r.rows)
        if (row.in_theorem) c_obs = std::max(c_obs, row.ratio);
    ok = ok && std::isfinite(c_obs) && c_obs > 0.0;
    return {ok, fmt("in-region family slopes in [%+.4f, %+.4f] (band "
                    "[%+.2f, %+.2f]), observed constant %.3f",
                    lo, hi, pins::kEnSlopeMin, pins::kEnSlopeMax, c_obs)};
}

// The gap between averaging and coefficient truncation stays bounded
// inside the region and grows at the smooth out-of-region probes.
Outcome crit_enpn(Context& ctx) {
    const SweepResult& r = ctx.sweep(SweepKind::enpn);
    const ReportOutcome rep = build_report(ctx.dir);
    bool ok = r.pass;
    ok = ok &&
         rep.doc.at("experiments").at("enpn").at("violations").get<int>() == 0;

    double worst_in = -1e300;
    double worst_probe = 1e300;
    int probes = 0;
    for (const auto& v : rep.doc.at("verdicts")) {
        if (v.at("experiment") != "enpn") continue;
        if (v.at("in_region").get<bool>()) {
            for (const auto& [name, slope] : v.at("class_slopes").items()) {
                (void)name;
                worst_in = std::max(worst_in, slope.get<double>());
            }
        } else {
            const auto& cs = v.at("class_slopes");
            if (!cs.contains("smooth_bump")) {
                ok = false;
                continue;
            }
            ++probes;
            worst_probe =
                std::min(worst_probe, cs.at("smooth_bump").get<double>());
        }
    }
    ok = ok && worst_in <= pins::kEnpnSlopeMax;
    ok = ok && probes == 2 && worst_probe >= pins::kGrowthSlopeMin;
    return {ok, fmt("in-region family slope max %+.4f (cap %+.2f); smooth "
                    "probe growth min %+.4f (floor %+.2f, %d probes)",
                    worst_in, pins::kEnpnSlopeMax, worst_probe,
                    pins::kGrowthSlopeMin, probes)};
}

// Single-level multipliers with bounded weights stay flat in the
// region, and unit weights reproduce the martingale-difference rows.
Outcome crit_tn(Context& ctx) {
    const SweepResult& r = ctx.sweep(SweepKind::tn);
    const ReportOutcome rep = build_report(ctx.dir);
    bool ok = r.pass;
    for (const char* name : {"tn[ones]", "tn[random_signs]"})
        ok = ok &&
             rep.doc.at("experiments").at(name).at("violations").get<int>() == 0;

    double worst_slope = -1e300;
    for (const auto& v : rep.doc.at("verdicts")) {
        const std::string exp = v.at("experiment").get<std::string>();
        if ((exp != "tn[ones]" && exp != "tn[random_signs]") ||
            !v.at("in_region").get<bool>())
            continue;
        if (!v.contains("slope"))
            ok = false;
        else
            worst_slope = std::max(worst_slope, v.at("slope").get<double>());
    }
    ok = ok && worst_slope <= pins::kTnSlopeMax;

    const SampledWavelet sw =
        cascade_sample(daubechies_filter(ctx.cfg.wavelet_order),
                       ctx.cfg.cascade_depth);
    const DyadicGrid g = make_grid(ctx.cfg.grid_j, ctx.cfg.x0, ctx.cfg.x1);
    const std::vector<CorpusEntry> corpus = make_corpus(ctx.cfg, sw, g);
    std::map<std::string, const CorpusEntry*> by_label;
    for (const CorpusEntry& e : corpus) by_label[e.label] = &e;

    std::map<std::pair<std::string, int>, CoefficientField> cache;
    double worst_gap = 0.0;
    int rows = 0;
    for (const RatioRow& row : r.rows) {
        if (row.experiment != "tn[ones]") continue;
        if (row.n != 1 && row.n != 5 && row.n != 9) continue;
        const auto fe = by_label.find(row.family);
        if (fe == by_label.end()) {
            ok = false;
            continue;
        }
        const auto key = std::make_pair(row.family, row.n);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache
                     .emplace(key,
                              analyze(martingale_difference(fe->second->f, row.n),
                                      sw, ctx.cfg.j_max, ctx.cfg.min_gap))
                     .first;
        const double want =
            b_quasinorm(it->second, row.idx.p, row.idx.r, row.idx.s);
        const double gap =
            std::abs(want - row.num) / std::max({1.0, want, row.num});
        worst_gap = std::max(worst_gap, gap);
        ++rows;
    }
    ok = ok && rows > 0 && worst_gap <= pins::kTnOnesMatch;
    return {ok, fmt("in-region slope max %+.4f (cap %+.2f); %d unit-weight "
                    "rows match difference rows to %.1e (tol %.0e)",
                    worst_slope, pins::kTnSlopeMax, rows, worst_gap,
                    pins::kTnOnesMatch)};
}

// Levelwise multipliers obey the weight-norm bound with a flat observed
// constant, and random sign weights make the worst ratio climb with the
// number of active levels.
Outcome crit_mult(Context& ctx) {
    const SweepResult& r = ctx.sweep(SweepKind::mult);
    const ReportOutcome rep = build_report(ctx.dir);
    bool ok = r.pass;
    for (const char* name : {"mult[ones]", "mult[bv_bounded]", "mult[alternating]"})
        ok = ok &&
             rep.doc.at("experiments").at(name).at("violations").get<int>() == 0;

    double worst_slope = -1e300;
    for (const auto& v : rep.doc.at("verdicts")) {
        const std::string exp = v.at("experiment").get<std::string>();
        if (exp.rfind("mult[", 0) != 0 || exp == "mult[random_signs]") continue;
        if (!v.at("in_region").get<bool>()) continue;
        if (!v.contains("slope"))
            ok = false;
        else
            worst_slope = std::max(worst_slope, v.at("slope").get<double>());
    }
    ok = ok && worst_slope <= pins::kMultSlopeMax;

    std::map<int, double> bound;
    for (const auto& e : r.summary.at("b_norms").at("bv_bounded"))
        bound[e.at("n").get<int>()] =
            e.at("sup").get<double>() + e.at("bv").get<double>();
    std::map<int, double> c_obs;
    for (const RatioRow& row : r.rows) {
        if (row.experiment != "mult[bv_bounded]" || !row.in_theorem) continue;
        double& c = c_obs[row.n];
        c = std::max(c, row.ratio / bound.at(row.n));
    }
    std::vector<std::pair<int, double>> pts(c_obs.begin(), c_obs.end());
    if (pts.size() > 5) pts.erase(pts.begin(), pts.end() - 5);
    const FitResult fit = fit_growth_exponent(pts);
    ok = ok && fit.slope <= pins::kMultSlopeMax;
    double c_max = 0.0;
    for (const auto& [n, c] : c_obs) c_max = std::max(c_max, c);

    const auto& sg = rep.doc.at("sign_growth");
    double rho = -1.0;
    if (sg.is_object() && sg.contains("spearman_max"))
        rho = sg.at("spearman_max").get<double>();
    ok = ok && rho > pins::kSpearmanMin;
    return {ok, fmt("weight-norm constant %.3f with slope %+.4f (cap %+.2f); "
                    "sign growth spearman %.3f (floor %.2f)",
                    c_max, fit.slope, pins::kMultSlopeMax, rho,
                    pins::kSpearmanMin)};
}

bool same_bytes(const std::string& a, const std::string& b, int& files) {
    std::ifstream fa(a, std::ios::binary);
    std::ifstream fb(b, std::ios::binary);
    if (!fa.good() || !fb.good()) return false;
    std::stringstream sa;
    std::stringstream sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str()) return false;
    ++files;
    return true;
}

// The same configuration and seed produce byte-identical outputs, no
// matter how many worker threads run the sweep.
Outcome crit_determinism(Context& ctx) {
    const ExperimentConfig cfg = reduced_config();
    const std::string a = ctx.dir + "/det_a";
    const std::string b = ctx.dir + "/det_b";
    write_sweep_result(run_sweep(SweepKind::en, cfg, 2), a);
    write_sweep_result(run_sweep(SweepKind::en, cfg, 5), b);
    int files = 0;
    bool ok = true;
    ok = same_bytes(a + "/en.csv", b + "/en.csv", files) && ok;
    ok = same_bytes(a + "/en_summary.json", b + "/en_summary.json", files) && ok;

    write_corpus(cfg, a + "/corpus");
    write_corpus(cfg, b + "/corpus");
    std::vector<std::string> names;
    for (const auto& e :
         std::filesystem::recursive_directory_iterator(a + "/corpus"))
        if (e.is_regular_file())
            names.push_back(
                std::filesystem::relative(e.path(), a + "/corpus").string());
    std::sort(names.begin(), names.end());
    ok = ok && !names.empty();
    for (const std::string& n : names)
        ok = same_bytes(a + "/corpus/" + n, b + "/corpus/" + n, files) && ok;
    return {ok, fmt("%d files byte-identical across thread counts and "
                    "repeat runs",
                    files)};
}

}  // namespace

int main() {
    Context ctx;
    ctx.jobs = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
    ctx.dir = (std::filesystem::current_path() / "acceptance_out").string();
    std::filesystem::remove_all(ctx.dir);
    std::filesystem::create_directories(ctx.dir);

    struct Criterion {
        int id;
        const char* name;
        Outcome (*fn)(Context&);
        double budget_s;
    };
    const Criterion table[] = {
        {1, "filter identities", crit_filters, pins::kBudgetFilters},
        {2, "operator algebra", crit_algebra, pins::kBudgetAlgebra},
        {3, "oracle equivalence", crit_oracle, pins::kBudgetOracle},
        {4, "normalization fidelity", crit_normalization, 0.0},
        {5, "averaging bounded in region", crit_en, pins::kBudgetEnSweep},
        {6, "average minus projection dichotomy", crit_enpn, 0.0},
        {7, "single level multiplier bounds", crit_tn, 0.0},
        {8, "levelwise multiplier dichotomy", crit_mult, 0.0},
        {9, "byte determinism", crit_determinism, 0.0},
    };

    std::printf("results directory: %s (%d worker threads)\n",
                ctx.dir.c_str(), ctx.jobs);
    int failed = 0;
    for (const Criterion& c : table) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn(ctx);
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            out.pass = false;
            out.detail += fmt(" [over %.0f s budget]", c.budget_s);
        }
        if (!out.pass) ++failed;
        std::printf("[%s] %d %-34s %8.2f s  %s\n", out.pass ? "PASS" : "FAIL",
                    c.id, c.name, secs, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
