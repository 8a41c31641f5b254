#ifndef DYADIC_TEST_UTIL_HPP
#define DYADIC_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>

// Relative comparison with an absolute floor of one, so values near zero
// are compared absolutely.
inline bool close(double a, double b, double tol) {
    return std::abs(a - b) <=
           tol * std::max({1.0, std::abs(a), std::abs(b)});
}

#endif
