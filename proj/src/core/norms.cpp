#include "norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"
#include "util.hpp"

namespace dyadic {

namespace {

void check_exponent(double v, const char* name) {
    require(v > 0.0 && !std::isnan(v), ErrorCode::invalid_argument,
            std::string(name) + " must be in (0, inf]");
}

}  // namespace

double b_quasinorm(const CoefficientField& c, double p, double q, double s) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    std::vector<double> level_terms;
    double sup = 0.0;
    std::vector<double> buf;
    for (int j = 0; j <= c.j_max; ++j) {
        const auto& lvl = c.levels[static_cast<std::size_t>(j)];
        if (lvl.empty()) continue;
        double mass;
        if (std::isinf(p)) {
            mass = 0.0;
            for (const auto& [nu, lambda] : lvl)
                mass = std::max(mass, std::abs(lambda));
        } else {
            buf.clear();
            for (const auto& [nu, lambda] : lvl)
                buf.push_back(apow(std::abs(lambda), p));
            double total = std::ldexp(
                pairwise_sum(buf.data(), static_cast<std::int64_t>(buf.size())),
                -j);
            mass = apow(total, 1.0 / p);
        }
        double weighted = std::exp2(static_cast<double>(j) * s) * mass;
        if (std::isinf(q))
            sup = std::max(sup, weighted);
        else
            level_terms.push_back(apow(weighted, q));
    }
    if (std::isinf(q)) return sup;
    if (level_terms.empty()) return 0.0;
    double total = pairwise_sum(level_terms.data(),
                                static_cast<std::int64_t>(level_terms.size()));
    return apow(total, 1.0 / q);
}

double f_quasinorm(const CoefficientField& c, double p, double q, double s) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    require(!std::isinf(p), ErrorCode::invalid_argument,
            "f_quasinorm requires finite p");

    // Lattice span of the stored indicator intervals at resolution
    // 2^-j_max. Level-j index nu covers fine cells
    // [nu 2^{j_max-j}, (nu+1) 2^{j_max-j}).
    const int jm = c.j_max;
    std::int64_t lo = 0, hi = 0;
    bool any = false;
    for (int j = 0; j <= jm; ++j) {
        const auto& lvl = c.levels[static_cast<std::size_t>(j)];
        if (lvl.empty()) continue;
        const std::int64_t scale = std::int64_t{1} << (jm - j);
        std::int64_t a = lvl.begin()->first * scale;
        std::int64_t b = (lvl.rbegin()->first + 1) * scale;
        if (!any) {
            lo = a;
            hi = b;
            any = true;
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    if (!any) return 0.0;
    require(hi - lo <= (std::int64_t{1} << 26), ErrorCode::range,
            "f_quasinorm: coefficient span too large");

    // acc holds per fine cell the l^q-th power sum (or the sup for
    // q = inf) of the weighted coefficients covering that cell.
    std::vector<double> acc(static_cast<std::size_t>(hi - lo), 0.0);
    const bool sup_form = std::isinf(q);
    for (int j = 0; j <= jm; ++j) {
        const double weight = std::exp2(static_cast<double>(j) * s);
        const std::int64_t width = std::int64_t{1} << (jm - j);
        for (const auto& [nu, lambda] : c.levels[static_cast<std::size_t>(j)]) {
            if (lambda == 0.0) continue;
            double w = std::abs(weight * lambda);
            double term = sup_form ? w : apow(w, q);
            std::int64_t start = nu * width - lo;
            for (std::int64_t k = 0; k < width; ++k) {
                if (sup_form)
                    acc[start + k] = std::max(acc[start + k], term);
                else
                    acc[start + k] += term;
            }
        }
    }

    // Integrate acc^{p/q} (acc already holds the q-th powers, or the sup
    // when q = inf, in which case the exponent is p).
    const double e = sup_form ? p : p / q;
    std::vector<double> terms;
    terms.reserve(acc.size());
    for (double a : acc) {
        if (a == 0.0) continue;
        terms.push_back(e == 1.0 ? a : apow(a, e));
    }
    if (terms.empty()) return 0.0;
    double total = std::ldexp(
        pairwise_sum(terms.data(), static_cast<std::int64_t>(terms.size())),
        -jm);
    return apow(total, 1.0 / p);
}

bool in_theorem_region(const SmoothnessIndex& idx) {
    if (!(idx.p > 0.5) || std::isinf(idx.p)) return false;
    if (!(idx.q > 0.0)) return false;
    double inv_p = 1.0 / idx.p;
    return idx.s > inv_p - 1.0 && idx.s < std::min(inv_p, 1.0);
}

bool in_unconditional_region(const SmoothnessIndex& idx) {
    if (!in_theorem_region(idx)) return false;
    double inv_q = std::isinf(idx.q) ? 0.0 : 1.0 / idx.q;
    return idx.s > inv_q - 1.0 && idx.s < inv_q;
}

double boundary_distance(const SmoothnessIndex& idx) {
    double inv_p = 1.0 / idx.p;
    double lower = inv_p - 1.0;
    double upper = std::min(inv_p, 1.0);
    return std::min(idx.s - lower, upper - idx.s);
}

bool wavelet_admissible(const SampledWavelet& sw, const SmoothnessIndex& idx) {
    double need_smooth = std::max(idx.s, 0.0) + 1.0;
    double need_moments =
        std::max(1.0 / std::min(idx.p, 1.0) - 1.0 - idx.s, 0.0) + 1.0;
    return sw.smoothness > need_smooth &&
           static_cast<double>(sw.order()) > need_moments;
}

}  // namespace dyadic
