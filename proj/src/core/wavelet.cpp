#include "wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "util.hpp"

namespace dyadic {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSumTol = 1e-12;
constexpr double kOrthTol = 1e-12;
constexpr double kMomentTol = 1e-10;

// Hoelder regularity of the order-L scaling function, L = 1..10.
// Order 1 is discontinuous; the remaining values are the standard
// Sobolev/Hoelder exponents of the minimum-phase family.
constexpr double kHolder[11] = {
    0.0,     0.0,    0.5500, 1.0878, 1.6179, 1.9690,
    2.1891,  2.4604, 2.7608, 3.0736, 3.3614,
};

}  // namespace

FilterPair daubechies_filter(int order) {
    const double* h = daubechies_table(order);
    require(h != nullptr, ErrorCode::unsupported_order,
            "filter order " + std::to_string(order) +
                " not tabulated (supported: 1..10)");
    FilterPair fp;
    fp.order = order;
    fp.lowpass.assign(h, h + 2 * order);
    fp.highpass.resize(2 * order);
    for (int k = 0; k < 2 * order; ++k) {
        double v = fp.lowpass[2 * order - 1 - k];
        fp.highpass[k] = (k % 2 == 0) ? v : -v;
    }
    return fp;
}

double holder_regularity(int order) {
    require(order >= 1 && order <= 10, ErrorCode::unsupported_order,
            "regularity table covers orders 1..10");
    return kHolder[order];
}

IdentityReport verify_filter_identities(const FilterPair& fp) {
    require(fp.order >= 1, ErrorCode::invalid_argument, "empty filter");
    const int n = fp.taps();
    require(static_cast<int>(fp.lowpass.size()) == n &&
                static_cast<int>(fp.highpass.size()) == n,
            ErrorCode::invalid_argument, "filter tap count mismatch");

    IdentityReport rep;
    double sum = 0.0;
    for (double v : fp.lowpass) sum += v;
    rep.sum_residual = std::abs(sum - kSqrt2);

    for (int m = 0; m < fp.order; ++m) {
        double dot = 0.0;
        for (int k = 0; k + 2 * m < n; ++k) dot += fp.lowpass[k] * fp.lowpass[k + 2 * m];
        rep.orth_residual =
            std::max(rep.orth_residual, std::abs(dot - (m == 0 ? 1.0 : 0.0)));
    }

    for (int k = 0; k < n; ++k) {
        double expect = fp.lowpass[n - 1 - k];
        if (k % 2 != 0) expect = -expect;
        rep.qmf_residual =
            std::max(rep.qmf_residual, std::abs(fp.highpass[k] - expect));
    }

    // Discrete vanishing moments on nodes scaled into [0, 1]. The scaling
    // keeps the m-th power sums of comparable size across orders, so a
    // single absolute tolerance is meaningful for every order.
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (int m = 0; m < fp.order; ++m) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            double t = static_cast<double>(k) * scale;
            acc += std::pow(t, m) * fp.highpass[k];
        }
        rep.moment_residual = std::max(rep.moment_residual, std::abs(acc));
    }

    rep.pass = rep.sum_residual <= kSumTol && rep.orth_residual <= kOrthTol &&
               rep.qmf_residual == 0.0 && rep.moment_residual <= kMomentTol;
    return rep;
}

namespace {

// Values of phi at the interior integers 1..2L-2, solved as the fixed
// point of the refinement matrix T[i][j] = sqrt(2) h_{2i-j}. The matrix
// is column stochastic with simple dominant eigenvalue 1 and spectral
// gap 1/2, so normalized power iteration converges linearly.
std::vector<double> integer_values(const FilterPair& fp) {
    const int L = fp.order;
    if (L == 1) return {};  // no interior integers; phi = 1 on [0,1)
    const int dim = 2 * L - 2;
    std::vector<double> v(dim, 1.0 / dim), w(dim);
    for (int iter = 0; iter < 20000; ++iter) {
        double total = 0.0;
        for (int i = 1; i <= dim; ++i) {
            double acc = 0.0;
            for (int j = 1; j <= dim; ++j) {
                int k = 2 * i - j;
                if (k >= 0 && k < 2 * L) acc += fp.lowpass[k] * v[j - 1];
            }
            acc *= kSqrt2;
            w[i - 1] = acc;
            total += acc;
        }
        double diff = 0.0;
        for (int i = 0; i < dim; ++i) {
            w[i] /= total;
            diff = std::max(diff, std::abs(w[i] - v[i]));
        }
        v.swap(w);
        if (diff <= 1e-15) return v;
    }
    fail(ErrorCode::construction, "refinement fixed point did not converge");
}

}  // namespace

SampledWavelet cascade_sample(const FilterPair& fp, int depth) {
    require(depth >= 1 && depth <= 28, ErrorCode::invalid_argument,
            "cascade depth must be in 1..28");
    const int L = fp.order;
    const std::int64_t width = 2 * L - 1;

    // phi on the integer lattice (depth 0): zero at both support ends.
    std::vector<double> phi(width + 1, 0.0);
    if (L == 1) {
        phi[0] = 1.0;
    } else {
        std::vector<double> interior = integer_values(fp);
        for (int i = 1; i <= 2 * L - 2; ++i) phi[i] = interior[i - 1];
    }

    // Each refinement doubles the lattice. Even positions are copied
    // verbatim from the previous level; odd positions come from the
    // refinement relation phi(x) = sqrt(2) sum_k h_k phi(2x - k).
    std::vector<double> prev;
    for (int d = 0; d < depth; ++d) {
        const std::int64_t n_prev = width << d;
        const std::int64_t step = std::int64_t{1} << d;  // 2x-k offset in prev
        prev.swap(phi);
        phi.assign((n_prev << 1) + 1, 0.0);
        for (std::int64_t i = 0; i <= n_prev; ++i) phi[2 * i] = prev[i];
        for (std::int64_t i = 1; i < 2 * n_prev; i += 2) {
            double acc = 0.0;
            for (int k = 0; k < 2 * L; ++k) {
                std::int64_t idx = i - k * step;
                if (idx >= 0 && idx <= n_prev) acc += fp.lowpass[k] * prev[idx];
            }
            phi[i] = kSqrt2 * acc;
        }
    }

    // psi at depth m from phi at depth m-1 via the wavelet relation.
    // The stored array is indexed from the left support point 1-L, so
    // entry i holds psi(1-L + i 2^-m) = psi_raw(i 2^-m).
    const std::int64_t n_half = width << (depth - 1);
    const std::int64_t n_full = width << depth;
    const std::int64_t half_step = std::int64_t{1} << (depth - 1);
    std::vector<double> half(n_half + 1);
    for (std::int64_t i = 0; i <= n_half; ++i) half[i] = phi[2 * i];
    std::vector<double> psi(n_full + 1, 0.0);
    for (std::int64_t i = 0; i <= n_full; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 2 * L; ++k) {
            std::int64_t idx = i - k * half_step;
            if (idx >= 0 && idx <= n_half) acc += fp.highpass[k] * half[idx];
        }
        psi[i] = kSqrt2 * acc;
    }

    SampledWavelet sw;
    sw.filter = fp;
    sw.depth = depth;
    sw.phi = std::move(phi);
    sw.psi = std::move(psi);
    sw.smoothness = holder_regularity(L);
    return sw;
}

double wavelet_moment(const SampledWavelet& sw, int k) {
    require(k >= 0 && k <= 64, ErrorCode::invalid_argument,
            "moment degree out of range");
    const std::int64_t n = static_cast<std::int64_t>(sw.psi.size()) - 1;
    const double h = std::ldexp(1.0, -sw.depth);
    const double left = static_cast<double>(sw.psi_left());
    std::vector<double> terms(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double x = left + static_cast<double>(i) * h;
        terms[i] = std::pow(x, k) * sw.psi[i];
    }
    return pairwise_sum(terms.data(), n) * h;
}

}  // namespace dyadic
