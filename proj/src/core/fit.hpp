#pragma once

#include <utility>
#include <vector>

namespace dyadic {

// Least-squares line through (N, log2 ratio).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    int n_used = 0;
};

// Fits log2(ratio) against N over the points with positive finite
// ratio. Needs at least four such points.
FitResult fit_growth_exponent(const std::vector<std::pair<int, double>>& pts);

// Spearman rank correlation with average ranks for ties. Both inputs
// must have the same length, at least two entries, and nonzero rank
// variance.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dyadic
