#ifndef DYADIC_NORMS_HPP
#define DYADIC_NORMS_HPP

#include "analysis.hpp"
#include "wavelet.hpp"

namespace dyadic {

// Smoothness/integrability triple (p, q, s) plus the aggregate exponent
// r used when ratios are folded across levels. Infinite p or q selects
// the sup form.
struct SmoothnessIndex {
    double p = 2.0;
    double q = 2.0;
    double s = 0.0;
    double r = 2.0;
};

// Besov-type quasi-norm: per level the normalized l^p mass
// (sum_nu |lambda|^p 2^-j)^{1/p}, weighted by 2^{js} and combined in l^q
// across levels. p and q may be infinite.
double b_quasinorm(const CoefficientField& c, double p, double q, double s);

// Triebel-Lizorkin-type quasi-norm: the l^q aggregate of
// |2^{js} lambda_{j,nu}| over the indicator intervals
// [2^-j nu, 2^-j (nu+1)) is evaluated exactly on the 2^-j_max lattice
// spanned by the stored coefficients, then integrated in L^p. p must be
// finite; q may be infinite.
double f_quasinorm(const CoefficientField& c, double p, double q, double s);

// Open parameter region of the uniform boundedness results:
// 1/2 < p < inf and 1/p - 1 < s < min(1/p, 1).
bool in_theorem_region(const SmoothnessIndex& idx);

// Subregion where sign multipliers stay uniformly bounded: additionally
// 1/q - 1 < s < 1/q.
bool in_unconditional_region(const SmoothnessIndex& idx);

// Signed distance from s to the nearer edge of the theorem region's
// s-interval at this p (positive inside, negative outside).
double boundary_distance(const SmoothnessIndex& idx);

// Whether the wavelet has one full unit of regularity and vanishing
// moments to spare at this index: smoothness > max(s,0) + 1 and
// order > max(1/min(p,1) - 1 - s, 0) + 1.
bool wavelet_admissible(const SampledWavelet& sw, const SmoothnessIndex& idx);

}  // namespace dyadic

#endif
