#ifndef DYADIC_WAVELET_HPP
#define DYADIC_WAVELET_HPP

#include <cstdint>
#include <vector>

namespace dyadic {

// Orthonormal compactly supported filter pair with `order` vanishing
// moments and 2*order taps. The highpass filter is the standard mirror
// g_k = (-1)^k h_{2L-1-k}.
struct FilterPair {
    int order = 0;
    std::vector<double> lowpass;
    std::vector<double> highpass;

    int taps() const { return 2 * order; }
};

// Residuals of the defining filter identities, each of which should sit
// at rounding level for a valid filter pair.
struct IdentityReport {
    double sum_residual = 0.0;     // |sum_k h_k - sqrt(2)|
    double orth_residual = 0.0;    // max_m |sum_k h_k h_{k+2m} - [m==0]|
    double qmf_residual = 0.0;     // max_k |g_k - (-1)^k h_{2L-1-k}|
    double moment_residual = 0.0;  // max_{m<L} |sum_k (k/(2L-1))^m g_k|
    bool pass = false;
};

// Scaling and wavelet functions sampled on the dyadic lattice 2^-depth.
// phi lives on [0, 2L-1], psi on [1-L, L]; both arrays hold
// (2L-1)*2^depth + 1 samples including the right endpoint.
struct SampledWavelet {
    FilterPair filter;
    int depth = 0;
    std::vector<double> phi;
    std::vector<double> psi;
    double smoothness = 0.0;  // Hoelder regularity of phi

    int order() const { return filter.order; }
    int support_width() const { return 2 * filter.order - 1; }
    // Left endpoint of the psi support as an integer.
    int psi_left() const { return 1 - filter.order; }
    std::int64_t samples_per_unit() const { return std::int64_t{1} << depth; }
};

// Raw tabulated lowpass coefficients (2*order doubles) for orders 1..10,
// nullptr outside that range.
const double* daubechies_table(int order);

// Filter pair for the given order; throws unsupported_order outside 1..10.
FilterPair daubechies_filter(int order);

// Hoelder regularity of the order-L scaling function (tabulated).
double holder_regularity(int order);

IdentityReport verify_filter_identities(const FilterPair& fp);

// Exact dyadic samples of phi and psi via integer-point eigenvector plus
// repeated refinement. depth must be >= 1; psi needs phi one level up.
SampledWavelet cascade_sample(const FilterPair& fp, int depth);

// Left-endpoint Riemann sum of x^k psi(x) over the support lattice.
// Exact for polynomial moments of piecewise constant psi (order 1) and
// accurate to the sampling resolution otherwise.
double wavelet_moment(const SampledWavelet& sw, int k);

}  // namespace dyadic

#endif
