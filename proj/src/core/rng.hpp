#ifndef DYADIC_RNG_HPP
#define DYADIC_RNG_HPP

#include <cstdint>

namespace dyadic {

// SplitMix64 with deterministic child streams. Every random draw in the
// experiment layer comes from a stream derived as
//   master(seed).child(family_ordinal).child(instance)...
// so adding instances or reordering the sweep loops never perturbs the
// values another instance sees.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Independent stream addressed by an integer tag.
    SplitMix64 child(std::uint64_t tag) const {
        return SplitMix64(mix(state_ ^ mix(tag + 0x9E3779B97F4A7C15ULL)));
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // +1 or -1 with equal probability.
    double next_sign() {
        return (next_u64() >> 63) ? -1.0 : 1.0;
    }

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace dyadic

#endif
