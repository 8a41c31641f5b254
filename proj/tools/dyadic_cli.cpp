#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyadic/dyadic.h"

namespace {

int report_failure(const char* what, dyadic_status st) {
    std::fprintf(stderr, "error: %s: %s (status %d)\n", what,
                 dyadic_last_error(), static_cast<int>(st));
    return 1;
}

// Owns a config handle; loads the default when no path is given and
// applies an optional seed override.
struct ConfigGuard {
    dyadic_config* cfg = nullptr;
    ~ConfigGuard() { dyadic_config_destroy(cfg); }

    int open(const std::string& path, bool with_seed, uint64_t seed) {
        const dyadic_status st =
            path.empty() ? dyadic_config_default(&cfg)
                         : dyadic_config_load(path.c_str(), &cfg);
        if (st != DYADIC_OK) return report_failure("loading configuration", st);
        if (with_seed) {
            const dyadic_status st2 = dyadic_config_set_seed(cfg, seed);
            if (st2 != DYADIC_OK) return report_failure("setting seed", st2);
        }
        return 0;
    }
};

int run_filters_verify(int order, int depth) {
    std::vector<int> orders;
    if (order == 0)
        for (int k = 1; k <= 10; ++k) orders.push_back(k);
    else
        orders.push_back(order);
    std::printf("%5s %12s %12s %12s %12s %10s %6s\n", "order", "sum", "orth",
                "qmf", "moments", "holder", "pass");
    bool all_ok = true;
    for (int k : orders) {
        dyadic_wavelet* w = nullptr;
        dyadic_status st = dyadic_wavelet_create(k, depth, &w);
        if (st != DYADIC_OK) return report_failure("creating wavelet", st);
        double sum_r = 0, orth_r = 0, qmf_r = 0, mom_r = 0, holder = 0;
        int pass = 0;
        st = dyadic_wavelet_verify(w, &sum_r, &orth_r, &qmf_r, &mom_r, &pass);
        if (st == DYADIC_OK)
            st = dyadic_wavelet_smoothness(w, &holder);
        dyadic_wavelet_destroy(w);
        if (st != DYADIC_OK) return report_failure("verifying filters", st);
        std::printf("%5d %12.3e %12.3e %12.3e %12.3e %10.4f %6s\n", k, sum_r,
                    orth_r, qmf_r, mom_r, holder, pass ? "ok" : "FAIL");
        if (!pass) all_ok = false;
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dyadic averaging and wavelet multiplier experiments"};
    app.require_subcommand(1);

    std::string config_path;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out_path;
    int jobs = 1;

    // filters verify
    CLI::App* filters = app.add_subcommand("filters", "Wavelet filter tools");
    filters->require_subcommand(1);
    CLI::App* verify =
        filters->add_subcommand("verify", "Check filter identities");
    int verify_order = 0;
    int verify_depth = 10;
    verify->add_option("--order", verify_order, "Single order (default: all)")
        ->check(CLI::Range(1, 10));
    verify->add_option("--depth", verify_depth, "Sampling depth")
        ->check(CLI::Range(1, 24));

    // config init / show
    CLI::App* config = app.add_subcommand("config", "Configuration tools");
    config->require_subcommand(1);
    CLI::App* config_init =
        config->add_subcommand("init", "Write a built-in configuration");
    std::string profile = "default";
    config_init->add_option("--profile", profile, "default, matched, reduced")
        ->capture_default_str();
    config_init->add_option("--out", out_path, "Output path")->required();
    CLI::App* config_show =
        config->add_subcommand("show", "Print a configuration");
    config_show->add_option("--config", config_path, "Configuration path");

    // corpus make
    CLI::App* corpus = app.add_subcommand("corpus", "Corpus tools");
    corpus->require_subcommand(1);
    CLI::App* corpus_make =
        corpus->add_subcommand("make", "Generate and write the corpus");
    corpus_make->add_option("--config", config_path, "Configuration path");
    CLI::Option* corpus_seed =
        corpus_make->add_option("--seed", seed, "Seed override");
    corpus_make->add_option("--out", out_path, "Output directory")->required();

    // sweep
    CLI::App* sweep =
        app.add_subcommand("sweep", "Run a ratio experiment");
    std::string sweep_kind;
    sweep->add_option("kind", sweep_kind, "en, pn, enpn, tn, or mult")
        ->required();
    sweep->add_option("--config", config_path, "Configuration path");
    CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "Seed override");
    sweep->add_option("--jobs", jobs, "Worker threads")
        ->check(CLI::Range(1, 256));
    sweep->add_option("--out", out_path, "Output directory")->required();

    // fit
    CLI::App* fit = app.add_subcommand("fit", "Fit growth exponents in a CSV");
    std::string fit_csv;
    fit->add_option("csv", fit_csv, "Ratio CSV path")->required();

    // report
    CLI::App* report =
        app.add_subcommand("report", "Aggregate ratio files into a verdict");
    std::string report_dir;
    std::string report_json;
    report->add_option("dir", report_dir, "Results directory")->required();
    report->add_option("--json", report_json, "Also write the JSON document");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) return run_filters_verify(verify_order, verify_depth);

    if (config_init->parsed()) {
        ConfigGuard guard;
        const dyadic_status pst =
            dyadic_config_profile(profile.c_str(), &guard.cfg);
        if (pst != DYADIC_OK) return report_failure("selecting profile", pst);
        const dyadic_status st = dyadic_config_save(guard.cfg, out_path.c_str());
        if (st != DYADIC_OK) return report_failure("saving configuration", st);
        std::printf("wrote %s\n", out_path.c_str());
        return 0;
    }

    if (config_show->parsed()) {
        ConfigGuard guard;
        if (int rc = guard.open(config_path, false, 0)) return rc;
        char* text = nullptr;
        const dyadic_status st = dyadic_config_dump(guard.cfg, &text);
        if (st != DYADIC_OK) return report_failure("printing configuration", st);
        std::fputs(text, stdout);
        dyadic_string_destroy(text);
        return 0;
    }

    if (corpus_make->parsed()) {
        ConfigGuard guard;
        if (int rc = guard.open(config_path, corpus_seed->count() > 0, seed))
            return rc;
        int count = 0;
        const dyadic_status st =
            dyadic_corpus_write(guard.cfg, out_path.c_str(), &count);
        if (st != DYADIC_OK) return report_failure("writing corpus", st);
        std::printf("wrote %d corpus entries to %s\n", count, out_path.c_str());
        return 0;
    }

    if (sweep->parsed()) {
        ConfigGuard guard;
        if (int rc = guard.open(config_path, sweep_seed->count() > 0, seed))
            return rc;
        int structural = 0;
        const dyadic_status st = dyadic_run_sweep(
            guard.cfg, sweep_kind.c_str(), jobs, out_path.c_str(), &structural);
        if (st != DYADIC_OK) return report_failure("running sweep", st);
        std::printf("%s: wrote %s/%s.csv (structural %s)\n", sweep_kind.c_str(),
                    out_path.c_str(), sweep_kind.c_str(),
                    structural ? "ok" : "FAIL");
        return structural ? 0 : 2;
    }

    if (fit->parsed()) {
        char* text = nullptr;
        const dyadic_status st = dyadic_fit_csv(fit_csv.c_str(), &text);
        if (st != DYADIC_OK) return report_failure("fitting", st);
        std::fputs(text, stdout);
        dyadic_string_destroy(text);
        return 0;
    }

    if (report->parsed()) {
        char* text = nullptr;
        int pass = 0;
        const dyadic_status st = dyadic_report(
            report_dir.c_str(),
            report_json.empty() ? nullptr : report_json.c_str(), &text, &pass);
        if (st != DYADIC_OK) return report_failure("building report", st);
        std::fputs(text, stdout);
        dyadic_string_destroy(text);
        return pass ? 0 : 2;
    }

    return 0;
}
