#include "fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "error.hpp"

namespace dyadic {

FitResult fit_growth_exponent(const std::vector<std::pair<int, double>>& pts) {
    std::vector<double> xs, ys;
    for (const auto& [n, ratio] : pts) {
        if (!(ratio > 0.0) || !std::isfinite(ratio)) continue;
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log2(ratio));
    }
    require(xs.size() >= 4, ErrorCode::insufficient_data,
            "growth fit needs at least four positive ratios");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    require(sxx > 0.0, ErrorCode::insufficient_data,
            "growth fit needs at least two distinct N");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.n_used = static_cast<int>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        r.max_residual = std::max(
            r.max_residual, std::abs(ys[i] - (r.intercept + r.slope * xs[i])));
    return r;
}

namespace {

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman_rho(const std::vector<double>& x,
                    const std::vector<double>& y) {
    require(x.size() == y.size(), ErrorCode::invalid_argument,
            "rank correlation needs equal lengths");
    require(x.size() >= 2, ErrorCode::insufficient_data,
            "rank correlation needs at least two points");
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
        sxy += (rx[i] - mx) * (ry[i] - my);
    }
    require(sxx > 0.0 && syy > 0.0, ErrorCode::insufficient_data,
            "rank correlation undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace dyadic
