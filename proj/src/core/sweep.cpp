#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "error.hpp"
#include "grid.hpp"
#include "util.hpp"
#include "wavelet.hpp"

namespace dyadic {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct IndexMeta {
    SmoothnessIndex idx;
    bool in_theorem = false;
    bool in_uncond = false;
    double bdist = 0.0;
    bool admissible = false;
};

IndexMeta make_meta(const SmoothnessIndex& idx, const SampledWavelet& sw) {
    return IndexMeta{idx, in_theorem_region(idx), in_unconditional_region(idx),
                     boundary_distance(idx), wavelet_admissible(sw, idx)};
}

struct Workspace {
    ExperimentConfig cfg;
    DyadicGrid grid;
    SampledWavelet sw;
    std::vector<CorpusEntry> corpus;
    std::vector<IndexMeta> meta;

    int n_count() const { return cfg.n_end - cfg.n_begin + 1; }
    int n_at(int slot) const { return cfg.n_begin + slot; }
};

Workspace make_workspace(const ExperimentConfig& cfg) {
    validate_config(cfg);
    Workspace w{cfg,
                make_grid(cfg.grid_j, cfg.x0, cfg.x1),
                cascade_sample(daubechies_filter(cfg.wavelet_order),
                               cfg.cascade_depth),
                {},
                {}};
    w.corpus = make_corpus(cfg, w.sw, w.grid);
    for (const auto& idx : cfg.indices) w.meta.push_back(make_meta(idx, w.sw));
    return w;
}

// Runs fn(0..count-1) on up to `jobs` threads. Tasks own disjoint
// output slots, so scheduling order cannot change results.
void parallel_for(int jobs, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
                stop.store(true);
                return;
            }
        }
    };
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// values[entry][n_slot][index]
using NumTable = std::vector<std::vector<std::vector<double>>>;

NumTable alloc_table(std::size_t entries, std::size_t slots,
                     std::size_t indices) {
    return NumTable(entries, std::vector<std::vector<double>>(
                                 slots, std::vector<double>(indices, 0.0)));
}

using DenTable = std::vector<std::vector<double>>;  // [entry][index]

struct Emitter {
    SweepResult& out;
    std::size_t skipped = 0;

    void emit(const std::string& experiment, const IndexMeta& m,
              const std::string& family, int n, double num, double den) {
        if (!(den > 0.0)) {
            ++skipped;
            return;
        }
        out.rows.push_back(RatioRow{experiment, family, m.idx, n, num, den,
                                    num / den, m.in_theorem, m.in_uncond,
                                    m.bdist});
    }

    // Canonical order: index rank, then corpus order, then N.
    void emit_block(const std::string& experiment, const Workspace& w,
                    const DenTable& den, const NumTable& num) {
        for (std::size_t i = 0; i < w.meta.size(); ++i)
            for (std::size_t e = 0; e < w.corpus.size(); ++e)
                for (int t = 0; t < w.n_count(); ++t)
                    emit(experiment, w.meta[i], w.corpus[e].label, w.n_at(t),
                         num[e][static_cast<std::size_t>(t)][i], den[e][i]);
    }
};

DenTable f_denominators(const Workspace& w) {
    DenTable den(w.corpus.size(), std::vector<double>(w.meta.size(), 0.0));
    for (std::size_t e = 0; e < w.corpus.size(); ++e)
        for (std::size_t i = 0; i < w.meta.size(); ++i) {
            const SmoothnessIndex& idx = w.meta[i].idx;
            den[e][i] = f_quasinorm(w.corpus[e].coeffs, idx.p, idx.q, idx.s);
        }
    return den;
}

DenTable b_denominators(const Workspace& w) {
    DenTable den(w.corpus.size(), std::vector<double>(w.meta.size(), 0.0));
    for (std::size_t e = 0; e < w.corpus.size(); ++e)
        for (std::size_t i = 0; i < w.meta.size(); ++i) {
            const SmoothnessIndex& idx = w.meta[i].idx;
            den[e][i] = b_quasinorm(w.corpus[e].coeffs, idx.p, kInf, idx.s);
        }
    return den;
}

void run_en(const Workspace& w, int jobs, Emitter& em) {
    const DenTable den = f_denominators(w);
    NumTable num = alloc_table(w.corpus.size(),
                               static_cast<std::size_t>(w.n_count()),
                               w.meta.size());
    parallel_for(jobs, w.corpus.size(), [&](std::size_t e) {
        const CorpusEntry& entry = w.corpus[e];
        for (int t = 0; t < w.n_count(); ++t) {
            const GridFunction g = conditional_expectation(entry.f, w.n_at(t));
            const CoefficientField c =
                analyze(g, w.sw, w.cfg.j_max, w.cfg.min_gap);
            for (std::size_t i = 0; i < w.meta.size(); ++i) {
                const SmoothnessIndex& idx = w.meta[i].idx;
                num[e][static_cast<std::size_t>(t)][i] =
                    f_quasinorm(c, idx.p, idx.q, idx.s);
            }
        }
    });
    em.emit_block("en", w, den, num);
}

void run_pn(const Workspace& w, int jobs, Emitter& em) {
    const DenTable den = f_denominators(w);
    NumTable num = alloc_table(w.corpus.size(),
                               static_cast<std::size_t>(w.n_count()),
                               w.meta.size());
    parallel_for(jobs, w.corpus.size(), [&](std::size_t e) {
        const CorpusEntry& entry = w.corpus[e];
        for (int t = 0; t < w.n_count(); ++t) {
            const CoefficientField c =
                truncate_levels(entry.coeffs, w.n_at(t));
            for (std::size_t i = 0; i < w.meta.size(); ++i) {
                const SmoothnessIndex& idx = w.meta[i].idx;
                num[e][static_cast<std::size_t>(t)][i] =
                    f_quasinorm(c, idx.p, idx.q, idx.s);
            }
        }
    });
    em.emit_block("pn", w, den, num);
}

void run_enpn(const Workspace& w, int jobs, Emitter& em) {
    const DenTable den = b_denominators(w);
    NumTable num = alloc_table(w.corpus.size(),
                               static_cast<std::size_t>(w.n_count()),
                               w.meta.size());
    parallel_for(jobs, w.corpus.size(), [&](std::size_t e) {
        const CorpusEntry& entry = w.corpus[e];
        GridFunction partial = zero_function(w.grid);
        int built = -1;
        for (int t = 0; t < w.n_count(); ++t) {
            const int n = w.n_at(t);
            while (built < n) {
                ++built;
                synthesize_level_into(partial, entry.coeffs, built, w.sw);
            }
            GridFunction diff = conditional_expectation(entry.f, n);
            add_scaled(diff, -1.0, partial);
            const CoefficientField c =
                analyze(diff, w.sw, w.cfg.j_max, w.cfg.min_gap);
            for (std::size_t i = 0; i < w.meta.size(); ++i) {
                const SmoothnessIndex& idx = w.meta[i].idx;
                num[e][static_cast<std::size_t>(t)][i] =
                    b_quasinorm(c, idx.p, idx.r, idx.s);
            }
        }
    });
    em.emit_block("enpn", w, den, num);
}

// Streams for weight sequences; disjoint from the corpus family tags
// (small ordinals) and the sign-corpus tag 9999.
constexpr std::uint64_t kPositionWeightTag = 7777;
constexpr std::uint64_t kLevelWeightTag = 8888;

MultiplierSeq make_position_weights(const std::string& name, int n,
                                    const Workspace& w, SplitMix64 rng) {
    const std::int64_t scale = std::int64_t{1} << n;
    MultiplierSeq a;
    a.offset = static_cast<std::int64_t>(std::llround(w.grid.x0)) * scale;
    const std::int64_t blocks =
        static_cast<std::int64_t>(std::llround(w.grid.x1 - w.grid.x0)) * scale;
    a.entries.assign(static_cast<std::size_t>(blocks), 0.0);
    if (name == "ones") {
        std::fill(a.entries.begin(), a.entries.end(), 1.0);
        return a;
    }
    if (name == "random_signs") {
        for (auto& v : a.entries) v = rng.next_sign();
        return a;
    }
    if (name == "single_spike") {
        const std::int64_t lo =
            static_cast<std::int64_t>(std::llround(w.cfg.support_lo)) * scale;
        const std::int64_t hi =
            static_cast<std::int64_t>(std::llround(w.cfg.support_hi)) * scale;
        const std::int64_t pos = rng.next_int(lo, hi - 1);
        a.entries[static_cast<std::size_t>(pos - a.offset)] = 1.0;
        return a;
    }
    fail(ErrorCode::config, "unknown position-weight family " + name);
}

std::vector<double> make_level_weights(const std::string& name, int n) {
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        if (name == "ones")
            b[static_cast<std::size_t>(k)] = 1.0;
        else if (name == "bv_bounded")
            b[static_cast<std::size_t>(k)] =
                static_cast<double>(n - k) / static_cast<double>(n);
        else if (name == "alternating")
            b[static_cast<std::size_t>(k)] = (k % 2 == 0) ? 1.0 : -1.0;
        else
            fail(ErrorCode::config, "unknown level-weight family " + name);
    }
    return b;
}

void run_tn(const Workspace& w, int jobs, Emitter& em, json& extra) {
    const DenTable den = b_denominators(w);
    const SplitMix64 master(w.cfg.seed);
    const std::size_t n_fam = w.cfg.a_families.size();
    const std::size_t slots = static_cast<std::size_t>(w.n_count());

    std::vector<std::vector<MultiplierSeq>> weights(n_fam);
    for (std::size_t af = 0; af < n_fam; ++af) {
        const SplitMix64 fam = master.child(kPositionWeightTag).child(af);
        for (int t = 0; t < w.n_count(); ++t) {
            const int n = w.n_at(t);
            weights[af].push_back(make_position_weights(
                w.cfg.a_families[af], n, w,
                fam.child(static_cast<std::uint64_t>(n))));
        }
    }

    std::vector<NumTable> num(n_fam);
    for (auto& table : num)
        table = alloc_table(w.corpus.size(), slots, w.meta.size());

    parallel_for(jobs, n_fam * w.corpus.size(), [&](std::size_t task) {
        const std::size_t af = task / w.corpus.size();
        const std::size_t e = task % w.corpus.size();
        const CorpusEntry& entry = w.corpus[e];
        for (int t = 0; t < w.n_count(); ++t) {
            const GridFunction g = haar_multiplier(
                entry.f, w.n_at(t), weights[af][static_cast<std::size_t>(t)]);
            const CoefficientField c =
                analyze(g, w.sw, w.cfg.j_max, w.cfg.min_gap);
            for (std::size_t i = 0; i < w.meta.size(); ++i) {
                const SmoothnessIndex& idx = w.meta[i].idx;
                num[af][e][static_cast<std::size_t>(t)][i] =
                    b_quasinorm(c, idx.p, idx.r, idx.s);
            }
        }
    });

    json spike = json::object();
    for (std::size_t af = 0; af < n_fam; ++af) {
        em.emit_block("tn[" + w.cfg.a_families[af] + "]", w, den, num[af]);
        if (w.cfg.a_families[af] == "single_spike") {
            json positions = json::array();
            for (int t = 0; t < w.n_count(); ++t) {
                const MultiplierSeq& a =
                    weights[af][static_cast<std::size_t>(t)];
                std::int64_t pos = a.offset;
                for (std::size_t k = 0; k < a.entries.size(); ++k)
                    if (a.entries[k] != 0.0)
                        pos = a.offset + static_cast<std::int64_t>(k);
                positions.push_back(
                    json::array({w.n_at(t), pos}));
            }
            spike["spike_positions"] = std::move(positions);
        }
    }
    extra.update(spike);
}

void run_mult(const Workspace& w, int jobs, Emitter& em, json& extra) {
    const DenTable den = f_denominators(w);
    const SplitMix64 master(w.cfg.seed);
    const std::size_t slots = static_cast<std::size_t>(w.n_count());

    std::vector<std::string> det_fams;
    bool sign_study = false;
    for (const auto& name : w.cfg.b_families) {
        if (name == "random_signs")
            sign_study = true;
        else
            det_fams.push_back(name);
    }

    std::vector<NumTable> num(det_fams.size());
    for (auto& table : num)
        table = alloc_table(w.corpus.size(), slots, w.meta.size());

    parallel_for(jobs, det_fams.size() * w.corpus.size(), [&](std::size_t task) {
        const std::size_t bf = task / w.corpus.size();
        const std::size_t e = task % w.corpus.size();
        const CorpusEntry& entry = w.corpus[e];
        for (int t = 0; t < w.n_count(); ++t) {
            const int n = w.n_at(t);
            GridFunction op = conditional_expectation(entry.f, 0);
            if (n >= 1) {
                const std::vector<double> b =
                    make_level_weights(det_fams[bf], n);
                add_scaled(op, 1.0, levelwise_multiplier(entry.f, b, 0));
            }
            const CoefficientField c =
                analyze(op, w.sw, w.cfg.j_max, w.cfg.min_gap);
            for (std::size_t i = 0; i < w.meta.size(); ++i) {
                const SmoothnessIndex& idx = w.meta[i].idx;
                num[bf][e][static_cast<std::size_t>(t)][i] =
                    f_quasinorm(c, idx.p, idx.q, idx.s);
            }
        }
    });

    // Sign sequences get their own corpus matched to the study index and
    // one row block per seed.
    std::vector<CorpusEntry> sign_corpus;
    IndexMeta study_meta = make_meta(w.cfg.sign_study.index, w.sw);
    std::vector<double> sign_den;
    std::vector<std::vector<std::vector<double>>> sign_num;
    if (sign_study) {
        sign_corpus = make_sign_corpus(w.cfg, w.sw, w.grid);
        for (const auto& entry : sign_corpus)
            sign_den.push_back(f_quasinorm(entry.coeffs, study_meta.idx.p,
                                           study_meta.idx.q,
                                           study_meta.idx.s));
        const std::size_t seeds =
            static_cast<std::size_t>(w.cfg.sign_study.seeds);
        sign_num.assign(seeds, std::vector<std::vector<double>>(
                                   sign_corpus.size(),
                                   std::vector<double>(slots, 0.0)));
        parallel_for(jobs, seeds, [&](std::size_t seed) {
            const SplitMix64 stream =
                master.child(kLevelWeightTag).child(seed);
            for (std::size_t e = 0; e < sign_corpus.size(); ++e) {
                const CorpusEntry& entry = sign_corpus[e];
                for (int t = 0; t < w.n_count(); ++t) {
                    const int n = w.n_at(t);
                    GridFunction op = conditional_expectation(entry.f, 0);
                    if (n >= 1) {
                        SplitMix64 bs =
                            stream.child(static_cast<std::uint64_t>(n));
                        std::vector<double> b(static_cast<std::size_t>(n));
                        for (auto& v : b) v = bs.next_sign();
                        add_scaled(op, 1.0,
                                   levelwise_multiplier(entry.f, b, 0));
                    }
                    const CoefficientField c =
                        analyze(op, w.sw, w.cfg.j_max, w.cfg.min_gap);
                    sign_num[seed][e][static_cast<std::size_t>(t)] =
                        f_quasinorm(c, study_meta.idx.p, study_meta.idx.q,
                                    study_meta.idx.s);
                }
            }
        });
    }

    json b_norms = json::object();
    std::size_t det_at = 0;
    for (const auto& name : w.cfg.b_families) {
        if (name != "random_signs") {
            em.emit_block("mult[" + name + "]", w, den, num[det_at]);
            json per_n = json::array();
            for (int t = 0; t < w.n_count(); ++t) {
                const int n = w.n_at(t);
                const SeqNorms sn = seq_norms(make_level_weights(name, n));
                per_n.push_back(json{{"n", n}, {"sup", sn.sup}, {"bv", sn.bv}});
            }
            b_norms[name] = std::move(per_n);
            ++det_at;
            continue;
        }
        for (std::size_t e = 0; e < sign_corpus.size(); ++e)
            for (int seed = 0; seed < w.cfg.sign_study.seeds; ++seed) {
                char tag[16];
                std::snprintf(tag, sizeof tag, "#s%02d", seed);
                const std::string family = sign_corpus[e].label + tag;
                for (int t = 0; t < w.n_count(); ++t)
                    em.emit("mult[random_signs]", study_meta, family,
                            w.n_at(t),
                            sign_num[static_cast<std::size_t>(seed)][e]
                                    [static_cast<std::size_t>(t)],
                            sign_den[e]);
            }
    }
    extra["b_norms"] = std::move(b_norms);
    if (sign_study) {
        extra["sign_study"] =
            json{{"seeds", w.cfg.sign_study.seeds},
                 {"count", w.cfg.sign_study.count},
                 {"index", json{{"p", json_number(study_meta.idx.p)},
                                {"q", json_number(study_meta.idx.q)},
                                {"s", study_meta.idx.s},
                                {"r", json_number(study_meta.idx.r)}}},
                 {"in_uncond", study_meta.in_uncond},
                 {"in_theorem", study_meta.in_theorem}};
    }
}

json summarize(const Workspace& w, const SweepResult& r, std::size_t skipped,
               const json& extra) {
    json indices = json::array();
    for (const auto& m : w.meta)
        indices.push_back(json{{"p", json_number(m.idx.p)},
                               {"q", json_number(m.idx.q)},
                               {"s", m.idx.s},
                               {"r", json_number(m.idx.r)},
                               {"in_theorem", m.in_theorem},
                               {"in_uncond", m.in_uncond},
                               {"bdist", m.bdist},
                               {"admissible", m.admissible}});
    json families = json::array();
    for (const auto& e : w.corpus) families.push_back(e.label);

    // Largest observed ratio per experiment label and index rank. Rows
    // at an index outside the configured list (the sign study) land in
    // the extra trailing slot.
    std::map<std::string, std::vector<double>> max_ratio;
    for (const auto& row : r.rows) {
        auto& slot = max_ratio[row.experiment];
        if (slot.empty()) slot.assign(w.meta.size() + 1, -1.0);
        std::size_t rank = w.meta.size();
        for (std::size_t i = 0; i < w.meta.size(); ++i) {
            const SmoothnessIndex& idx = w.meta[i].idx;
            if (idx.p == row.idx.p && idx.q == row.idx.q &&
                idx.s == row.idx.s && idx.r == row.idx.r) {
                rank = i;
                break;
            }
        }
        slot[rank] = std::max(slot[rank], row.ratio);
    }
    json max_out = json::object();
    for (const auto& [name, slots] : max_ratio) {
        json arr = json::array();
        for (double v : slots) {
            if (v < 0.0)
                arr.push_back(nullptr);
            else
                arr.push_back(v);
        }
        max_out[name] = std::move(arr);
    }

    json doc{
        {"kind", sweep_kind_name(r.kind)},
        {"config",
         json{{"wavelet_order", w.cfg.wavelet_order},
              {"cascade_depth", w.cfg.cascade_depth},
              {"grid_j", w.cfg.grid_j},
              {"x0", w.cfg.x0},
              {"x1", w.cfg.x1},
              {"j_max", w.cfg.j_max},
              {"min_gap", w.cfg.min_gap},
              {"support", json::array({w.cfg.support_lo, w.cfg.support_hi})},
              {"n_range", json::array({w.cfg.n_begin, w.cfg.n_end})},
              {"seed", w.cfg.seed}}},
        {"indices", std::move(indices)},
        {"families", std::move(families)},
        {"row_count", r.rows.size()},
        {"skipped_zero_den", skipped},
        {"max_ratio", std::move(max_out)},
        {"structural_pass", r.pass}};
    doc.update(extra);
    return doc;
}

bool structural_ok(const SweepResult& r) {
    for (const auto& row : r.rows) {
        if (!(row.num >= 0.0) || !std::isfinite(row.num)) return false;
        if (!(row.den > 0.0) || !std::isfinite(row.den)) return false;
        if (!std::isfinite(row.ratio) || row.ratio < 0.0) return false;
        if (r.kind == SweepKind::pn && row.ratio > 1.0 + 1e-12) return false;
    }
    return true;
}

}  // namespace

SweepKind sweep_kind_from_name(const std::string& name) {
    if (name == "en") return SweepKind::en;
    if (name == "pn") return SweepKind::pn;
    if (name == "enpn") return SweepKind::enpn;
    if (name == "tn") return SweepKind::tn;
    if (name == "mult") return SweepKind::mult;
    fail(ErrorCode::invalid_argument, "unknown sweep kind " + name);
}

std::string sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::en: return "en";
        case SweepKind::pn: return "pn";
        case SweepKind::enpn: return "enpn";
        case SweepKind::tn: return "tn";
        case SweepKind::mult: return "mult";
    }
    fail(ErrorCode::invalid_argument, "unknown sweep kind");
}

SweepResult run_sweep(SweepKind kind, const ExperimentConfig& cfg, int jobs) {
    require(jobs >= 1 && jobs <= 256, ErrorCode::invalid_argument,
            "jobs must be in [1, 256]");
    const auto start = std::chrono::steady_clock::now();
    const Workspace w = make_workspace(cfg);
    SweepResult result;
    result.kind = kind;
    Emitter em{result};
    json extra = json::object();
    switch (kind) {
        case SweepKind::en: run_en(w, jobs, em); break;
        case SweepKind::pn: run_pn(w, jobs, em); break;
        case SweepKind::enpn: run_enpn(w, jobs, em); break;
        case SweepKind::tn: run_tn(w, jobs, em, extra); break;
        case SweepKind::mult: run_mult(w, jobs, em, extra); break;
    }
    result.pass = structural_ok(result);
    result.summary = summarize(w, result, em.skipped, extra);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::cerr << "[sweep " << sweep_kind_name(kind) << "] " << result.rows.size()
              << " rows in " << static_cast<double>(elapsed) / 1000.0
              << " s\n";
    return result;
}

std::string ratio_csv_header() {
    return "experiment,family,p,q,s,r,N,num,den,ratio,in_theorem,in_uncond,"
           "bdist";
}

std::string rows_to_csv(const std::vector<RatioRow>& rows) {
    std::string out = ratio_csv_header();
    out += '\n';
    for (const auto& r : rows) {
        out += r.experiment;
        out += ',';
        out += r.family;
        out += ',';
        out += format_double(r.idx.p);
        out += ',';
        out += format_double(r.idx.q);
        out += ',';
        out += format_double(r.idx.s);
        out += ',';
        out += format_double(r.idx.r);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += format_double(r.num);
        out += ',';
        out += format_double(r.den);
        out += ',';
        out += format_double(r.ratio);
        out += ',';
        out += r.in_theorem ? '1' : '0';
        out += ',';
        out += r.in_uncond ? '1' : '0';
        out += ',';
        out += format_double(r.bdist);
        out += '\n';
    }
    return out;
}

std::vector<RatioRow> read_ratio_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io, "cannot open " + path);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::io,
            "empty ratio file " + path);
    require(line == ratio_csv_header(), ErrorCode::io,
            "unexpected ratio header in " + path);
    std::vector<RatioRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t at = 0;
        while (true) {
            const std::size_t comma = line.find(',', at);
            if (comma == std::string::npos) {
                f.push_back(line.substr(at));
                break;
            }
            f.push_back(line.substr(at, comma - at));
            at = comma + 1;
        }
        require(f.size() == 13, ErrorCode::io,
                "ratio row needs 13 fields: " + line);
        RatioRow r;
        r.experiment = f[0];
        r.family = f[1];
        r.idx.p = parse_double(f[2]);
        r.idx.q = parse_double(f[3]);
        r.idx.s = parse_double(f[4]);
        r.idx.r = parse_double(f[5]);
        r.n = static_cast<int>(std::stol(f[6]));
        r.num = parse_double(f[7]);
        r.den = parse_double(f[8]);
        r.ratio = parse_double(f[9]);
        require(f[10] == "0" || f[10] == "1", ErrorCode::io,
                "in_theorem must be 0 or 1");
        require(f[11] == "0" || f[11] == "1", ErrorCode::io,
                "in_uncond must be 0 or 1");
        r.in_theorem = f[10] == "1";
        r.in_uncond = f[11] == "1";
        r.bdist = parse_double(f[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_sweep_result(const SweepResult& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::string name = sweep_kind_name(r.kind);
    {
        std::ofstream out(dir + "/" + name + ".csv", std::ios::binary);
        require(out.good(), ErrorCode::io, "cannot write " + name + ".csv");
        out << rows_to_csv(r.rows);
        require(out.good(), ErrorCode::io, "write failed for " + name + ".csv");
    }
    {
        std::ofstream out(dir + "/" + name + "_summary.json",
                          std::ios::binary);
        require(out.good(), ErrorCode::io,
                "cannot write " + name + "_summary.json");
        out << r.summary.dump(2) << "\n";
        require(out.good(), ErrorCode::io,
                "write failed for " + name + "_summary.json");
    }
}

}  // namespace dyadic
