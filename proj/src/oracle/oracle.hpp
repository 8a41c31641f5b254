#ifndef DYADIC_ORACLE_HPP
#define DYADIC_ORACLE_HPP

#include <vector>

#include "analysis.hpp"
#include "grid.hpp"
#include "wavelet.hpp"

// Reference implementations used only by tests. Everything here favors
// the most literal formula over speed and deliberately shares no index
// arithmetic, summation order, or scaling shortcuts with the fast
// library paths: indices come from double arithmetic, sums run left to
// right, and powers of two go through std::pow.
namespace dyadic::oracle {

// Dense matrix of the averaging operator at scale 2^-N: row-major
// cells x cells with entries 2^{N-J} inside each lattice block.
std::vector<double> dense_expectation_matrix(const DyadicGrid& grid, int N);

GridFunction apply_dense(const std::vector<double>& m, const GridFunction& f);

// Haar multiplier assembled translate by translate from the definition
// sum_mu a_mu 2^N <f, h_mu> h_mu.
GridFunction naive_haar_multiplier(const GridFunction& f, int N,
                                   const MultiplierSeq& a);

// Coefficients 2^j <f, psi_{j,nu}> with per-cell evaluation of the
// basis functions and running left-to-right accumulation.
CoefficientField naive_inner_products(const GridFunction& f,
                                      const SampledWavelet& sw, int j_max);

// Synthesis with per-cell basis evaluation.
GridFunction naive_synthesize(const CoefficientField& c,
                              const SampledWavelet& sw,
                              const DyadicGrid& grid);

// Quasi-norms evaluated from the definitions: per-level sums and, for
// the Triebel-Lizorkin form, a midpoint containment test of every
// stored indicator interval at every lattice cell.
double brute_norm_b(const CoefficientField& c, double p, double q, double s);
double brute_norm_f(const CoefficientField& c, double p, double q, double s);

}  // namespace dyadic::oracle

#endif
