#ifndef DYADIC_UTIL_HPP
#define DYADIC_UTIL_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "error.hpp"

namespace dyadic {

// Sums values[0..n) by splitting at the largest power of two below n.
// Power-of-two blocks therefore split exactly in half, so the sum of a
// 2^k block equals the float combination of the sums of its two halves.
// Block averaging at different levels reuses identical partial sums,
// which keeps nested averaging operators consistent bit for bit.
inline double pairwise_sum(const double* values, std::int64_t n) {
    if (n <= 0) return 0.0;
    if (n == 1) return values[0];
    if (n == 2) return values[0] + values[1];
    std::int64_t half = 1;
    while (half * 2 < n) half *= 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

inline bool is_power_of_two(std::int64_t v) {
    return v > 0 && (v & (v - 1)) == 0;
}

// Floor division and modulus that stay correct for negative numerators.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    return a - floor_div(a, b) * b;
}

// Converts x*2^k to an integer, failing unless the result is exact.
// Callers hit this in tight loops, so the messages are only built on
// the failure path.
inline std::int64_t exact_scaled_int(double x, int k, const char* what) {
    double scaled = std::ldexp(x, k);
    if (!(std::abs(scaled) < 9.0e15))
        fail(ErrorCode::range, std::string(what) + ": scaled value too large");
    double rounded = std::nearbyint(scaled);
    if (rounded != scaled)
        fail(ErrorCode::alignment,
             std::string(what) + ": value is not on the 2^-" +
                 std::to_string(k) + " lattice");
    return static_cast<std::int64_t>(rounded);
}

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc() && res.ptr == s.data() + s.size(),
            ErrorCode::io, "cannot parse number: " + s);
    return v;
}

// pow with fast paths for the exponents that dominate norm evaluation.
inline double apow(double x, double e) {
    if (e == 1.0) return x;
    if (e == 2.0) return x * x;
    if (e == 0.5) return std::sqrt(x);
    return std::pow(x, e);
}

}  // namespace dyadic

#endif
