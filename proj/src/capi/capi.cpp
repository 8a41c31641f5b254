#include "dyadic/dyadic.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <string>

#include "analysis.hpp"
#include "config.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "grid.hpp"
#include "norms.hpp"
#include "report.hpp"
#include "sweep.hpp"
#include "wavelet.hpp"

struct dyadic_wavelet {
    dyadic::SampledWavelet sw;
};
struct dyadic_grid_function {
    dyadic::GridFunction f;
};
struct dyadic_coefficients {
    dyadic::CoefficientField c;
};
struct dyadic_config {
    dyadic::ExperimentConfig cfg;
};

namespace {

thread_local std::string t_error;

dyadic_status to_status(dyadic::ErrorCode code) {
    switch (code) {
        case dyadic::ErrorCode::invalid_argument:
            return DYADIC_ERR_INVALID_ARGUMENT;
        case dyadic::ErrorCode::unsupported_order:
            return DYADIC_ERR_UNSUPPORTED_ORDER;
        case dyadic::ErrorCode::construction:
            return DYADIC_ERR_CONSTRUCTION;
        case dyadic::ErrorCode::resolution:
            return DYADIC_ERR_RESOLUTION;
        case dyadic::ErrorCode::alignment:
            return DYADIC_ERR_ALIGNMENT;
        case dyadic::ErrorCode::range:
            return DYADIC_ERR_RANGE;
        case dyadic::ErrorCode::index:
            return DYADIC_ERR_INDEX;
        case dyadic::ErrorCode::insufficient_data:
            return DYADIC_ERR_INSUFFICIENT_DATA;
        case dyadic::ErrorCode::config:
            return DYADIC_ERR_CONFIG;
        case dyadic::ErrorCode::io:
            return DYADIC_ERR_IO;
    }
    return DYADIC_ERR_INTERNAL;
}

template <typename Fn>
dyadic_status guarded(Fn&& fn) {
    try {
        fn();
        t_error.clear();
        return DYADIC_OK;
    } catch (const dyadic::Error& e) {
        t_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        t_error = e.what();
        return DYADIC_ERR_INTERNAL;
    } catch (...) {
        t_error = "unknown failure";
        return DYADIC_ERR_INTERNAL;
    }
}

void need(bool cond, const char* what) {
    dyadic::require(cond, dyadic::ErrorCode::invalid_argument, what);
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* dyadic_last_error(void) { return t_error.c_str(); }

void dyadic_string_destroy(char* s) { delete[] s; }

dyadic_status dyadic_wavelet_create(int order, int depth,
                                    dyadic_wavelet** out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = new dyadic_wavelet{
            dyadic::cascade_sample(dyadic::daubechies_filter(order), depth)};
    });
}

void dyadic_wavelet_destroy(dyadic_wavelet* w) { delete w; }

dyadic_status dyadic_wavelet_order(const dyadic_wavelet* w, int* out) {
    return guarded([&] {
        need(w != nullptr && out != nullptr, "null argument");
        *out = w->sw.order();
    });
}

dyadic_status dyadic_wavelet_depth(const dyadic_wavelet* w, int* out) {
    return guarded([&] {
        need(w != nullptr && out != nullptr, "null argument");
        *out = w->sw.depth;
    });
}

dyadic_status dyadic_wavelet_smoothness(const dyadic_wavelet* w, double* out) {
    return guarded([&] {
        need(w != nullptr && out != nullptr, "null argument");
        *out = w->sw.smoothness;
    });
}

dyadic_status dyadic_wavelet_verify(const dyadic_wavelet* w,
                                    double* sum_residual, double* orth_residual,
                                    double* qmf_residual,
                                    double* moment_residual, int* pass) {
    return guarded([&] {
        need(w != nullptr, "null wavelet");
        const dyadic::IdentityReport rep =
            dyadic::verify_filter_identities(w->sw.filter);
        if (sum_residual) *sum_residual = rep.sum_residual;
        if (orth_residual) *orth_residual = rep.orth_residual;
        if (qmf_residual) *qmf_residual = rep.qmf_residual;
        if (moment_residual) *moment_residual = rep.moment_residual;
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

dyadic_status dyadic_grid_function_create(int j, double x0, double x1,
                                          dyadic_grid_function** out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = new dyadic_grid_function{
            dyadic::zero_function(dyadic::make_grid(j, x0, x1))};
    });
}

void dyadic_grid_function_destroy(dyadic_grid_function* f) { delete f; }

dyadic_status dyadic_grid_function_cells(const dyadic_grid_function* f,
                                         int64_t* out) {
    return guarded([&] {
        need(f != nullptr && out != nullptr, "null argument");
        *out = f->f.grid.cells();
    });
}

dyadic_status dyadic_grid_function_set_values(dyadic_grid_function* f,
                                              const double* values,
                                              int64_t count) {
    return guarded([&] {
        need(f != nullptr && values != nullptr, "null argument");
        need(count == static_cast<int64_t>(f->f.values.size()),
             "value count must match the cell count");
        std::memcpy(f->f.values.data(), values,
                    static_cast<std::size_t>(count) * sizeof(double));
    });
}

dyadic_status dyadic_grid_function_get_values(const dyadic_grid_function* f,
                                              double* values, int64_t count) {
    return guarded([&] {
        need(f != nullptr && values != nullptr, "null argument");
        need(count == static_cast<int64_t>(f->f.values.size()),
             "value count must match the cell count");
        std::memcpy(values, f->f.values.data(),
                    static_cast<std::size_t>(count) * sizeof(double));
    });
}

dyadic_status dyadic_average(const dyadic_grid_function* f, int n,
                             dyadic_grid_function** out) {
    return guarded([&] {
        need(f != nullptr && out != nullptr, "null argument");
        *out =
            new dyadic_grid_function{dyadic::conditional_expectation(f->f, n)};
    });
}

dyadic_status dyadic_difference(const dyadic_grid_function* f, int n,
                                dyadic_grid_function** out) {
    return guarded([&] {
        need(f != nullptr && out != nullptr, "null argument");
        *out =
            new dyadic_grid_function{dyadic::martingale_difference(f->f, n)};
    });
}

dyadic_status dyadic_haar(int j, double x0, double x1, int n, int64_t mu,
                          dyadic_grid_function** out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = new dyadic_grid_function{
            dyadic::haar_function(dyadic::make_grid(j, x0, x1), n, mu)};
    });
}

dyadic_status dyadic_haar_multiply(const dyadic_grid_function* f, int n,
                                   int64_t offset, const double* weights,
                                   int64_t count, dyadic_grid_function** out) {
    return guarded([&] {
        need(f != nullptr && weights != nullptr && out != nullptr,
             "null argument");
        need(count >= 0, "count must be nonnegative");
        dyadic::MultiplierSeq a;
        a.offset = offset;
        a.entries.assign(weights, weights + count);
        *out = new dyadic_grid_function{dyadic::haar_multiplier(f->f, n, a)};
    });
}

dyadic_status dyadic_levelwise_multiply(const dyadic_grid_function* f,
                                        const double* weights, int count,
                                        int n0, dyadic_grid_function** out) {
    return guarded([&] {
        need(f != nullptr && weights != nullptr && out != nullptr,
             "null argument");
        need(count >= 1, "need at least one weight");
        const std::vector<double> b(weights, weights + count);
        *out = new dyadic_grid_function{
            dyadic::levelwise_multiplier(f->f, b, n0)};
    });
}

dyadic_status dyadic_lp_norm(const dyadic_grid_function* f, double p,
                             double* out) {
    return guarded([&] {
        need(f != nullptr && out != nullptr, "null argument");
        *out = dyadic::lp_norm(f->f, p);
    });
}

dyadic_status dyadic_coefficients_create(int j_max, dyadic_coefficients** out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = new dyadic_coefficients{dyadic::CoefficientField(j_max)};
    });
}

void dyadic_coefficients_destroy(dyadic_coefficients* c) { delete c; }

dyadic_status dyadic_coefficients_set(dyadic_coefficients* c, int level,
                                      int64_t nu, double value) {
    return guarded([&] {
        need(c != nullptr, "null coefficients");
        c->c.set(level, nu, value);
    });
}

dyadic_status dyadic_coefficients_get(const dyadic_coefficients* c, int level,
                                      int64_t nu, double* out) {
    return guarded([&] {
        need(c != nullptr && out != nullptr, "null argument");
        *out = c->c.get(level, nu);
    });
}

dyadic_status dyadic_coefficients_count(const dyadic_coefficients* c,
                                        int64_t* out) {
    return guarded([&] {
        need(c != nullptr && out != nullptr, "null argument");
        *out = static_cast<int64_t>(c->c.count());
    });
}

dyadic_status dyadic_coefficients_truncate(const dyadic_coefficients* c,
                                           int n_max,
                                           dyadic_coefficients** out) {
    return guarded([&] {
        need(c != nullptr && out != nullptr, "null argument");
        *out = new dyadic_coefficients{dyadic::truncate_levels(c->c, n_max)};
    });
}

dyadic_status dyadic_analyze(const dyadic_grid_function* f,
                             const dyadic_wavelet* w, int j_max, int min_gap,
                             dyadic_coefficients** out) {
    return guarded([&] {
        need(f != nullptr && w != nullptr && out != nullptr, "null argument");
        *out = new dyadic_coefficients{
            dyadic::analyze(f->f, w->sw, j_max, min_gap)};
    });
}

dyadic_status dyadic_synthesize(const dyadic_coefficients* c,
                                const dyadic_wavelet* w, int j, double x0,
                                double x1, dyadic_grid_function** out) {
    return guarded([&] {
        need(c != nullptr && w != nullptr && out != nullptr, "null argument");
        *out = new dyadic_grid_function{
            dyadic::synthesize(c->c, w->sw, dyadic::make_grid(j, x0, x1))};
    });
}

dyadic_status dyadic_besov_norm(const dyadic_coefficients* c, double p,
                                double q, double s, double* out) {
    return guarded([&] {
        need(c != nullptr && out != nullptr, "null argument");
        *out = dyadic::b_quasinorm(c->c, p, q, s);
    });
}

dyadic_status dyadic_tl_norm(const dyadic_coefficients* c, double p, double q,
                             double s, double* out) {
    return guarded([&] {
        need(c != nullptr && out != nullptr, "null argument");
        *out = dyadic::f_quasinorm(c->c, p, q, s);
    });
}

dyadic_status dyadic_in_theorem_region(double p, double q, double s,
                                       int* out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = dyadic::in_theorem_region({p, q, s, 2.0}) ? 1 : 0;
    });
}

dyadic_status dyadic_in_unconditional_region(double p, double q, double s,
                                             int* out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = dyadic::in_unconditional_region({p, q, s, 2.0}) ? 1 : 0;
    });
}

dyadic_status dyadic_boundary_distance(double p, double q, double s,
                                       double* out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = dyadic::boundary_distance({p, q, s, 2.0});
    });
}

dyadic_status dyadic_wavelet_admissible(const dyadic_wavelet* w, double p,
                                        double q, double s, int* out) {
    return guarded([&] {
        need(w != nullptr && out != nullptr, "null argument");
        *out = dyadic::wavelet_admissible(w->sw, {p, q, s, 2.0}) ? 1 : 0;
    });
}

dyadic_status dyadic_config_default(dyadic_config** out) {
    return guarded([&] {
        need(out != nullptr, "out must not be null");
        *out = new dyadic_config{dyadic::default_config()};
    });
}

dyadic_status dyadic_config_profile(const char* name, dyadic_config** out) {
    return guarded([&] {
        need(name != nullptr && out != nullptr, "null argument");
        const std::string profile(name);
        if (profile == "default")
            *out = new dyadic_config{dyadic::default_config()};
        else if (profile == "matched")
            *out = new dyadic_config{dyadic::matched_config()};
        else if (profile == "reduced")
            *out = new dyadic_config{dyadic::reduced_config()};
        else
            throw dyadic::Error(dyadic::ErrorCode::invalid_argument,
                                "unknown profile: " + profile);
    });
}

dyadic_status dyadic_config_load(const char* path, dyadic_config** out) {
    return guarded([&] {
        need(path != nullptr && out != nullptr, "null argument");
        *out = new dyadic_config{dyadic::load_config(path)};
    });
}

dyadic_status dyadic_config_save(const dyadic_config* cfg, const char* path) {
    return guarded([&] {
        need(cfg != nullptr && path != nullptr, "null argument");
        dyadic::save_config(cfg->cfg, path);
    });
}

void dyadic_config_destroy(dyadic_config* cfg) { delete cfg; }

dyadic_status dyadic_config_set_seed(dyadic_config* cfg, uint64_t seed) {
    return guarded([&] {
        need(cfg != nullptr, "null config");
        cfg->cfg.seed = seed;
    });
}

dyadic_status dyadic_config_get_seed(const dyadic_config* cfg, uint64_t* out) {
    return guarded([&] {
        need(cfg != nullptr && out != nullptr, "null argument");
        *out = cfg->cfg.seed;
    });
}

dyadic_status dyadic_config_dump(const dyadic_config* cfg, char** out) {
    return guarded([&] {
        need(cfg != nullptr && out != nullptr, "null argument");
        *out = copy_string(dyadic::config_to_json(cfg->cfg).dump(2) + "\n");
    });
}

dyadic_status dyadic_corpus_write(const dyadic_config* cfg, const char* dir,
                                  int* count) {
    return guarded([&] {
        need(cfg != nullptr && dir != nullptr, "null argument");
        const int n = dyadic::write_corpus(cfg->cfg, dir);
        if (count) *count = n;
    });
}

dyadic_status dyadic_run_sweep(const dyadic_config* cfg, const char* kind,
                               int jobs, const char* dir,
                               int* structural_pass) {
    return guarded([&] {
        need(cfg != nullptr && kind != nullptr && dir != nullptr,
             "null argument");
        const dyadic::SweepResult res =
            dyadic::run_sweep(dyadic::sweep_kind_from_name(kind), cfg->cfg,
                              jobs);
        dyadic::write_sweep_result(res, dir);
        if (structural_pass) *structural_pass = res.pass ? 1 : 0;
    });
}

dyadic_status dyadic_fit_csv(const char* csv_path, char** text) {
    return guarded([&] {
        need(csv_path != nullptr && text != nullptr, "null argument");
        *text = copy_string(dyadic::fit_table(csv_path));
    });
}

dyadic_status dyadic_report(const char* dir, const char* json_path,
                            char** text, int* pass) {
    return guarded([&] {
        need(dir != nullptr, "null directory");
        const dyadic::ReportOutcome rep = dyadic::build_report(dir);
        if (json_path != nullptr) {
            std::ofstream out(json_path, std::ios::binary);
            dyadic::require(out.good(), dyadic::ErrorCode::io,
                            std::string("cannot write ") + json_path);
            out << rep.doc.dump(2) << "\n";
            dyadic::require(out.good(), dyadic::ErrorCode::io,
                            std::string("write failed for ") + json_path);
        }
        if (text != nullptr) *text = copy_string(rep.text);
        if (pass != nullptr) *pass = rep.pass ? 1 : 0;
    });
}

}  // extern "C"
