#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "test_util.hpp"
#include "wavelet.hpp"

using namespace dyadic;

TEST_CASE("filter identities hold for every tabulated order") {
    for (int order = 1; order <= 10; ++order) {
        CAPTURE(order);
        FilterPair fp = daubechies_filter(order);
        REQUIRE(fp.taps() == 2 * order);
        IdentityReport rep = verify_filter_identities(fp);
        CHECK(rep.sum_residual <= 1e-12);
        CHECK(rep.orth_residual <= 1e-12);
        CHECK(rep.qmf_residual == 0.0);
        CHECK(rep.moment_residual <= 1e-10);
        CHECK(rep.pass);
    }
}

TEST_CASE("unsupported orders are rejected") {
    CHECK(daubechies_table(0) == nullptr);
    CHECK(daubechies_table(11) == nullptr);
    CHECK_THROWS_AS(daubechies_filter(0), Error);
    CHECK_THROWS_AS(daubechies_filter(11), Error);
    try {
        daubechies_filter(42);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unsupported_order);
    }
}

TEST_CASE("order 1 and 2 filters match their closed forms") {
    FilterPair h1 = daubechies_filter(1);
    CHECK(h1.lowpass[0] == 0.7071067811865476);
    CHECK(h1.lowpass[1] == 0.7071067811865476);
    CHECK(h1.highpass[0] == 0.7071067811865476);
    CHECK(h1.highpass[1] == -0.7071067811865476);

    FilterPair h2 = daubechies_filter(2);
    const double r3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    CHECK(close(h2.lowpass[0], (1.0 + r3) / d, 1e-15));
    CHECK(close(h2.lowpass[1], (3.0 + r3) / d, 1e-15));
    CHECK(close(h2.lowpass[2], (3.0 - r3) / d, 1e-15));
    CHECK(close(h2.lowpass[3], (1.0 - r3) / d, 1e-15));
}

TEST_CASE("cascade reproduces the known integer values of order 2") {
    SampledWavelet sw = cascade_sample(daubechies_filter(2), 4);
    const double r3 = std::sqrt(3.0);
    const std::int64_t step = 1 << 4;
    CHECK(close(sw.phi[0 * step], 0.0, 1e-14));
    CHECK(close(sw.phi[1 * step], (1.0 + r3) / 2.0, 1e-13));
    CHECK(close(sw.phi[2 * step], (1.0 - r3) / 2.0, 1e-13));
    CHECK(close(sw.phi[3 * step], 0.0, 1e-14));
}

TEST_CASE("deepening the cascade keeps coarser samples bit for bit") {
    for (int order : {1, 3, 7}) {
        CAPTURE(order);
        FilterPair fp = daubechies_filter(order);
        SampledWavelet a = cascade_sample(fp, 5);
        SampledWavelet b = cascade_sample(fp, 7);
        for (std::size_t i = 0; i < a.phi.size(); ++i)
            REQUIRE(a.phi[i] == b.phi[4 * i]);
    }
}

TEST_CASE("scaling translates form a partition of unity") {
    for (int order = 1; order <= 10; ++order) {
        CAPTURE(order);
        SampledWavelet sw = cascade_sample(daubechies_filter(order), 6);
        const std::int64_t per_unit = 1 << 6;
        double worst = 0.0;
        for (std::int64_t off = 0; off < per_unit; ++off) {
            double total = 0.0;
            for (int k = 0; k < sw.support_width(); ++k)
                total += sw.phi[off + k * per_unit];
            worst = std::max(worst, std::abs(total - 1.0));
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("sampled arrays have the documented shape") {
    SampledWavelet sw = cascade_sample(daubechies_filter(3), 5);
    const std::size_t n = static_cast<std::size_t>(5 * (1 << 5)) + 1;
    CHECK(sw.phi.size() == n);
    CHECK(sw.psi.size() == n);
    CHECK(sw.support_width() == 5);
    CHECK(sw.psi_left() == -2);
    CHECK(sw.phi.front() == 0.0);
    CHECK(sw.phi.back() == 0.0);
    CHECK(sw.psi.back() == 0.0);
    CHECK_THROWS_AS(cascade_sample(daubechies_filter(3), 0), Error);
}

TEST_CASE("order 1 wavelet is the unit step pair") {
    SampledWavelet sw = cascade_sample(daubechies_filter(1), 8);
    const std::int64_t n = 1 << 8;
    // psi lives on [0, 1]: +1 on the left half, -1 on the right.
    for (std::int64_t i = 0; i < n / 2; ++i)
        REQUIRE(close(sw.psi[i], 1.0, 1e-15));
    for (std::int64_t i = n / 2; i < n; ++i)
        REQUIRE(close(sw.psi[i], -1.0, 1e-15));
    CHECK(sw.psi_left() == 0);

    CHECK(std::abs(wavelet_moment(sw, 0)) <= 1e-13);
    CHECK(close(wavelet_moment(sw, 1), -0.25, 1e-13));
}

TEST_CASE("wavelet moments vanish through the advertised order") {
    // The sampled moments are Riemann sums, so away from the piecewise
    // constant order-1 case they carry quadrature error of order
    // 2^-depth; the bound here checks the vanishing trend, not zero.
    for (int order : {2, 4, 6}) {
        CAPTURE(order);
        SampledWavelet sw = cascade_sample(daubechies_filter(order), 12);
        for (int k = 0; k < order; ++k) {
            CAPTURE(k);
            CHECK(std::abs(wavelet_moment(sw, k)) <= 2e-2);
        }
    }
}

TEST_CASE("regularity table is monotone and anchored") {
    CHECK(holder_regularity(1) == 0.0);
    CHECK(close(holder_regularity(4), 1.6179, 1e-12));
    for (int order = 2; order <= 10; ++order)
        CHECK(holder_regularity(order) > holder_regularity(order - 1));
}
