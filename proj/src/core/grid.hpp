#ifndef DYADIC_GRID_HPP
#define DYADIC_GRID_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dyadic {

// Uniform grid of width-2^-J cells covering [x0, x1). Both endpoints
// must lie on the 2^-J lattice.
struct DyadicGrid {
    int J = 0;
    double x0 = 0.0;
    double x1 = 1.0;

    std::int64_t cells() const;
    double cell_left(std::int64_t i) const;
    // Index of the cell containing x (x1 maps past the end).
    std::int64_t locate(double x) const;
    // True when both endpoints lie on the 2^-N lattice.
    bool aligned_at(int N) const;
    bool operator==(const DyadicGrid& o) const {
        return J == o.J && x0 == o.x0 && x1 == o.x1;
    }
};

DyadicGrid make_grid(int J, double x0, double x1);

// Piecewise constant function: one value per grid cell.
struct GridFunction {
    DyadicGrid grid;
    std::vector<double> values;
};

GridFunction zero_function(const DyadicGrid& grid);

// Averaging operator at scale 2^-N: replaces f on each lattice interval
// of length 2^-N by its mean. Block sums use a strict halving tree, so
// the mean over an interval recombines the two half-interval sums with
// one float addition. Requires 0 <= N <= J and endpoint alignment at N.
GridFunction conditional_expectation(const GridFunction& f, int N);

// Difference between consecutive averaging levels. Computed from the
// same half-block sums the averaging operator uses, so the result
// matches conditional_expectation(f, N+1) - conditional_expectation(f, N)
// bit for bit. Requires N + 1 <= J.
GridFunction martingale_difference(const GridFunction& f, int N);

// L^inf-normalized Haar function on the lattice interval
// [mu 2^-N, (mu+1) 2^-N): +1 on the left half, -1 on the right, 0
// elsewhere. mu is an absolute lattice index; the interval must lie
// inside the grid domain and N + 1 <= J.
GridFunction haar_function(const DyadicGrid& grid, int N, std::int64_t mu);

// Real sequence indexed from an absolute starting index.
struct MultiplierSeq {
    std::int64_t offset = 0;
    std::vector<double> entries;
};

struct SeqNorms {
    double sup = 0.0;
    double bv = 0.0;  // total variation sum |b_{i+1} - b_i|
};

SeqNorms seq_norms(const std::vector<double>& b);

// Haar multiplier at a single scale: scales the Haar component of f on
// interval mu by a_mu. The entries must cover exactly the lattice
// intervals of the grid at level N. With all weights equal to one the
// output equals martingale_difference(f, N) bit for bit.
GridFunction haar_multiplier(const GridFunction& f, int N,
                             const MultiplierSeq& a);

// Sum of weighted martingale differences b[i] * D_{n0+i} f.
GridFunction levelwise_multiplier(const GridFunction& f,
                                  const std::vector<double>& b, int n0);

// Normalized L^p norm (cell measure 2^-J), p in (0, inf]; p = inf gives
// the max of |f|.
double lp_norm(const GridFunction& f, double p);

// acc += c * g (same grid required).
void add_scaled(GridFunction& acc, double c, const GridFunction& g);

// Writes the cell values as CSV (header cell_index,value) plus a JSON
// sidecar describing the grid. Values use shortest round-trip decimals.
void write_grid_function(const GridFunction& f, const std::string& csv_path,
                         const std::string& json_path);
GridFunction read_grid_function(const std::string& csv_path,
                                const std::string& json_path);

}  // namespace dyadic

#endif
