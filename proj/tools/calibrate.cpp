#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "../src/core/analysis.hpp"
#include "../src/core/config.hpp"
#include "../src/core/corpus.hpp"
#include "../src/core/error.hpp"
#include "../src/core/grid.hpp"
#include "../src/core/report.hpp"
#include "../src/core/sweep.hpp"
#include "../src/core/util.hpp"
#include "../src/core/wavelet.hpp"

using namespace dyadic;

namespace {

// Worst reconstruction defect of analyze(synthesize(delta)) over a
// probe set of single coefficients whose supports fit inside the grid.
double roundtrip_defect(const SampledWavelet& sw, const DyadicGrid& grid,
                        int j_max, int min_gap) {
    const auto lo = static_cast<std::int64_t>(grid.x0);
    const auto hi = static_cast<std::int64_t>(grid.x1);
    double worst = 0.0;
    for (int j = 0; j <= j_max; j = j < 2 ? j + 1 : j + 3) {
        std::pair<std::int64_t, std::int64_t> range;
        try {
            range = interior_translates(sw, j, lo, hi);
        } catch (const Error&) {
            continue;
        }
        const std::int64_t probes[3] = {range.first,
                                        (range.first + range.second) / 2,
                                        range.second};
        for (const std::int64_t nu : probes) {
            CoefficientField c(j_max);
            c.set(j, nu, 1.0);
            const GridFunction f = synthesize(c, sw, grid);
            const CoefficientField back = analyze(f, sw, j_max, min_gap);
            for (int jj = 0; jj <= j_max; ++jj)
                for (const auto& [mu, v] :
                     back.levels[static_cast<std::size_t>(jj)]) {
                    const double want = (jj == j && mu == nu) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(v - want));
                }
        }
    }
    return worst;
}

int run_quad(int grid_j, int depth, int j_max, int min_gap) {
    std::printf("roundtrip defect, grid 2^-%d, cascade depth %d, levels 0..%d\n",
                grid_j, depth, j_max);
    std::printf("%5s %12s %14s\n", "order", "defect", "suggested pin");
    for (int order = 1; order <= 10; ++order) {
        const SampledWavelet sw = cascade_sample(daubechies_filter(order), depth);
        const DyadicGrid grid = make_grid(grid_j, -16.0, 16.0);
        const double d = roundtrip_defect(sw, grid, j_max, min_gap);
        std::printf("%5d %12.3e %14.3e\n", order, d, 4.0 * d);
    }
    return 0;
}

int run_moments(int depth) {
    std::printf("discrete wavelet moments at cascade depth %d\n", depth);
    std::printf("%5s", "order");
    for (int k = 0; k <= 5; ++k) std::printf(" %11s%d", "m", k);
    std::printf("\n");
    for (int order = 1; order <= 10; ++order) {
        const SampledWavelet sw = cascade_sample(daubechies_filter(order), depth);
        std::printf("%5d", order);
        for (int k = 0; k <= 5; ++k)
            std::printf(" %12.3e", std::abs(wavelet_moment(sw, k)));
        std::printf("\n");
    }
    return 0;
}

int run_sweeps(const std::string& config_path, int jobs,
               const std::string& out_dir) {
    ExperimentConfig cfg =
        config_path.empty() ? reduced_config() : load_config(config_path);
    std::filesystem::create_directories(out_dir);
    static const SweepKind kKinds[] = {SweepKind::en, SweepKind::pn,
                                       SweepKind::enpn, SweepKind::tn,
                                       SweepKind::mult};
    for (const SweepKind kind : kKinds) {
        const SweepResult r = run_sweep(kind, cfg, jobs);
        write_sweep_result(r, out_dir);
    }
    const ReportOutcome rep = build_report(out_dir);
    std::fputs(rep.text.c_str(), stdout);

    double max_in_slope = -1e300;
    double min_out_slope = 1e300;
    int out_indices = 0;
    for (const auto& v : rep.doc["verdicts"]) {
        if (!v.contains("slope")) continue;
        if (v["in_region"].get<bool>()) {
            max_in_slope = std::max(max_in_slope, v["slope"].get<double>());
            continue;
        }
        double best_class = -1e300;
        for (const auto& [name, s] : v["class_slopes"].items())
            best_class = std::max(best_class, s.get<double>());
        if (best_class > -1e300) {
            min_out_slope = std::min(min_out_slope, best_class);
            ++out_indices;
        }
    }
    std::printf("\nband summary\n");
    std::printf("  max in-region envelope slope  %+.4f\n", max_in_slope);
    if (out_indices > 0)
        std::printf("  min out-region class slope    %+.4f over %d indices\n",
                    min_out_slope, out_indices);
    if (!rep.doc["sign_growth"].is_null())
        std::printf("  sign spearman (median, max)   %.4f %.4f\n",
                    rep.doc["sign_growth"]["spearman_median"].get<double>(),
                    rep.doc["sign_growth"]["spearman_max"].get<double>());
    return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measure quadrature defects and realized sweep slopes"};
    app.require_subcommand(1);

    CLI::App* quad = app.add_subcommand(
        "quad", "Reconstruction defect of single coefficients per order");
    int grid_j = 12;
    int depth = 13;
    int j_max = 8;
    int min_gap = 4;
    quad->add_option("--grid-j", grid_j, "Grid resolution exponent");
    quad->add_option("--depth", depth, "Cascade depth");
    quad->add_option("--j-max", j_max, "Finest analysis level");
    quad->add_option("--min-gap", min_gap, "Required resolution gap");

    CLI::App* moments =
        app.add_subcommand("moments", "Discrete wavelet moments per order");
    moments->add_option("--depth", depth, "Cascade depth");

    CLI::App* sweeps = app.add_subcommand(
        "sweeps", "Run all experiments on the reduced profile");
    std::string config_path;
    std::string out_dir = "calibration_out";
    int jobs = 4;
    sweeps->add_option("--config", config_path, "Configuration override");
    sweeps->add_option("--jobs", jobs, "Worker threads");
    sweeps->add_option("--out", out_dir, "Results directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (quad->parsed()) return run_quad(grid_j, depth, j_max, min_gap);
        if (moments->parsed()) return run_moments(depth);
        if (sweeps->parsed()) return run_sweeps(config_path, jobs, out_dir);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
