#ifndef DYADIC_ANALYSIS_HPP
#define DYADIC_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grid.hpp"
#include "wavelet.hpp"

namespace dyadic {

// Sparse wavelet coefficients lambda_{j,nu} for levels 0..j_max. Level 0
// indexes scaling-function translates; level j >= 1 indexes wavelets at
// scale 2^{1-j}. Absent entries are zero.
struct CoefficientField {
    int j_max = 0;
    std::vector<std::map<std::int64_t, double>> levels;

    explicit CoefficientField(int j_max_ = 0)
        : j_max(j_max_), levels(static_cast<std::size_t>(j_max_) + 1) {}

    void set(int j, std::int64_t nu, double v);
    double get(int j, std::int64_t nu) const;
    std::int64_t count() const;
};

// Basis function on the grid, sampled at cell left endpoints:
//   j == 0:  phi(x - nu)
//   j >= 1:  2^{-1/2} psi(2^{j-1} x - nu)
// Cells outside the basis function's support stay zero, and the support
// may extend past the grid (the overhang is simply not materialized).
// Sampling depth must satisfy depth >= J for j <= 1 and
// depth >= J - j + 1 for finer levels, so samples land on stored points.
GridFunction wavelet_at(const SampledWavelet& sw, const DyadicGrid& grid,
                        int j, std::int64_t nu);

// Coefficients lambda_{j,nu} = 2^j <f, psi_{j,nu}> for all translates
// whose support meets the nonzero cells of f, treating f as zero beyond
// its grid. Inner products are left-endpoint quadrature at resolution
// 2^-J accumulated pairwise; min_gap <= J - j_max guards the levels
// where that quadrature is too coarse to trust.
CoefficientField analyze(const GridFunction& f, const SampledWavelet& sw,
                         int j_max, int min_gap = 4);

// Keeps levels j <= n_max (and at most j_max).
CoefficientField truncate_levels(const CoefficientField& c, int n_max);

// Sum of lambda_{j,nu} times the sampled basis functions.
GridFunction synthesize(const CoefficientField& c, const SampledWavelet& sw,
                        const DyadicGrid& grid);

// Adds the synthesis of a single level into an existing function, so
// partial sums can grow one level at a time.
void synthesize_level_into(GridFunction& acc, const CoefficientField& c,
                           int j, const SampledWavelet& sw);

// Synthesis of the levels j <= n_max only.
GridFunction partial_sum(const CoefficientField& c, int n_max,
                         const SampledWavelet& sw, const DyadicGrid& grid);

// JSON round trip; values use shortest round-trip decimals.
void write_coefficients(const CoefficientField& c, const std::string& path);
CoefficientField read_coefficients(const std::string& path);

}  // namespace dyadic

#endif
