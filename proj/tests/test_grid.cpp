#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "error.hpp"
#include "grid.hpp"
#include "rng.hpp"
#include "test_util.hpp"
#include "util.hpp"

using namespace dyadic;

namespace {

GridFunction random_function(const DyadicGrid& grid, std::uint64_t seed) {
    GridFunction f = zero_function(grid);
    SplitMix64 rng(seed);
    for (auto& v : f.values) v = rng.next_double(-1.0, 1.0);
    return f;
}

// Values quantized to the 2^-20 lattice: block means and their
// differences then stay exactly representable at every level.
GridFunction random_lattice_function(const DyadicGrid& grid,
                                     std::uint64_t seed) {
    GridFunction f = zero_function(grid);
    SplitMix64 rng(seed);
    for (auto& v : f.values)
        v = std::ldexp(static_cast<double>(rng.next_int(-(1 << 20), 1 << 20)),
                       -20);
    return f;
}

}  // namespace

TEST_CASE("grid construction validates its inputs") {
    CHECK_THROWS_AS(make_grid(-1, 0.0, 1.0), Error);
    CHECK_THROWS_AS(make_grid(3, 0.3, 1.0), Error);   // off the lattice
    CHECK_THROWS_AS(make_grid(3, 1.0, 0.0), Error);   // empty
    DyadicGrid g = make_grid(3, -0.5, 2.0);
    CHECK(g.cells() == 20);
    CHECK(g.cell_left(0) == -0.5);
    CHECK(g.cell_left(4) == 0.0);
    CHECK(g.locate(0.0) == 4);
    CHECK(g.aligned_at(1));
    CHECK(!g.aligned_at(0));  // -0.5 is not an integer
}

TEST_CASE("averaging reproduces hand-computed block means") {
    DyadicGrid g = make_grid(3, 0.0, 1.0);
    GridFunction f = zero_function(g);
    for (int i = 0; i < 8; ++i) f.values[i] = i + 1;
    GridFunction e1 = conditional_expectation(f, 1);
    for (int i = 0; i < 4; ++i) REQUIRE(e1.values[i] == 2.5);
    for (int i = 4; i < 8; ++i) REQUIRE(e1.values[i] == 6.5);
    GridFunction e0 = conditional_expectation(f, 0);
    for (int i = 0; i < 8; ++i) REQUIRE(e0.values[i] == 4.5);
    GridFunction e3 = conditional_expectation(f, 3);
    REQUIRE(e3.values == f.values);
}

TEST_CASE("averaging operators nest exactly") {
    DyadicGrid g = make_grid(10, -2.0, 2.0);
    GridFunction f = random_function(g, 41);
    for (int n : {0, 2, 5, 9}) {
        CAPTURE(n);
        GridFunction en = conditional_expectation(f, n);
        // idempotence
        REQUIRE(conditional_expectation(en, n).values == en.values);
        // coarser after finer collapses to the coarser level
        for (int m : {0, 3, 7}) {
            GridFunction em = conditional_expectation(f, m);
            GridFunction nested =
                conditional_expectation(m <= n ? en : em, std::min(m, n));
            GridFunction direct = conditional_expectation(f, std::min(m, n));
            REQUIRE(nested.values == direct.values);
        }
    }
}

TEST_CASE("averaging preserves constants and the total mass") {
    DyadicGrid g = make_grid(9, 0.0, 2.0);
    GridFunction f = random_function(g, 7);
    double mass = 0.0;
    for (double v : f.values) mass += v;
    GridFunction c = zero_function(g);
    for (auto& v : c.values) v = 0.375;
    for (int n : {0, 4, 9}) {
        CAPTURE(n);
        GridFunction ec = conditional_expectation(c, n);
        for (double v : ec.values) REQUIRE(v == 0.375);
        GridFunction ef = conditional_expectation(f, n);
        double em = 0.0;
        for (double v : ef.values) em += v;
        CHECK(close(em, mass, 1e-12));
        CHECK(lp_norm(ef, 1.0) <= lp_norm(f, 1.0) + 1e-12);
    }
}

TEST_CASE("martingale difference equals the two-level difference bit for bit") {
    DyadicGrid g = make_grid(11, -4.0, 4.0);
    GridFunction f = random_function(g, 99);
    for (int n : {0, 1, 6, 10}) {
        CAPTURE(n);
        GridFunction d = martingale_difference(f, n);
        GridFunction up = conditional_expectation(f, n + 1);
        GridFunction lo = conditional_expectation(f, n);
        for (std::int64_t c = 0; c < g.cells(); ++c)
            REQUIRE(d.values[c] == up.values[c] - lo.values[c]);
    }
}

TEST_CASE("differences telescope exactly on lattice data") {
    DyadicGrid g = make_grid(10, 0.0, 1.0);
    GridFunction f = random_lattice_function(g, 1234);
    const int N = 7;
    GridFunction acc = conditional_expectation(f, 0);
    for (int n = 0; n < N; ++n) {
        GridFunction d = martingale_difference(f, n);
        for (std::int64_t c = 0; c < g.cells(); ++c)
            acc.values[c] += d.values[c];
    }
    GridFunction eN = conditional_expectation(f, N);
    REQUIRE(acc.values == eN.values);
}

TEST_CASE("haar functions take the expected values") {
    DyadicGrid g = make_grid(4, -1.0, 1.0);
    GridFunction h = haar_function(g, 1, -2);  // interval [-1, -0.5)
    for (int i = 0; i < 4; ++i) REQUIRE(h.values[i] == 1.0);
    for (int i = 4; i < 8; ++i) REQUIRE(h.values[i] == -1.0);
    for (int i = 8; i < 16; ++i) REQUIRE(h.values[i] == 0.0);
    CHECK_THROWS_AS(haar_function(g, 1, 2), Error);    // [1, 1.5) outside
    CHECK_THROWS_AS(haar_function(g, 4, 0), Error);    // cannot split cells
    CHECK(lp_norm(haar_function(g, 2, 1), INFINITY) == 1.0);
}

TEST_CASE("unit weights turn the haar multiplier into the difference") {
    DyadicGrid g = make_grid(10, -2.0, 2.0);
    GridFunction f = random_function(g, 5150);
    for (int n : {0, 3, 8}) {
        CAPTURE(n);
        MultiplierSeq ones;
        ones.offset = exact_scaled_int(g.x0, n, "x0");
        ones.entries.assign(static_cast<std::size_t>(g.cells() >> (g.J - n)),
                            1.0);
        GridFunction t = haar_multiplier(f, n, ones);
        GridFunction d = martingale_difference(f, n);
        REQUIRE(t.values == d.values);
    }
}

TEST_CASE("a spike weight isolates a single haar component") {
    DyadicGrid g = make_grid(8, 0.0, 1.0);
    GridFunction f = random_function(g, 31);
    const int n = 3;
    MultiplierSeq spike;
    spike.offset = 0;
    spike.entries.assign(8, 0.0);
    spike.entries[5] = 1.0;
    GridFunction t = haar_multiplier(f, n, spike);
    GridFunction d = martingale_difference(f, n);
    const std::int64_t bs = g.cells() >> n;
    for (std::int64_t c = 0; c < g.cells(); ++c) {
        if (c / bs == 5)
            REQUIRE(t.values[c] == d.values[c]);
        else
            REQUIRE(t.values[c] == 0.0);
    }
    MultiplierSeq bad = spike;
    bad.entries.pop_back();
    CHECK_THROWS_AS(haar_multiplier(f, n, bad), Error);
}

TEST_CASE("levelwise multiplier with unit weights telescopes") {
    DyadicGrid g = make_grid(9, 0.0, 1.0);
    GridFunction f = random_lattice_function(g, 77);
    std::vector<double> ones(5, 1.0);
    GridFunction out = levelwise_multiplier(f, ones, 2);  // levels 2..6
    GridFunction hi = conditional_expectation(f, 7);
    GridFunction lo = conditional_expectation(f, 2);
    for (std::int64_t c = 0; c < g.cells(); ++c)
        REQUIRE(out.values[c] == hi.values[c] - lo.values[c]);
    CHECK_THROWS_AS(levelwise_multiplier(f, std::vector<double>(9, 1.0), 1),
                    Error);
}

TEST_CASE("sequence norms") {
    SeqNorms n = seq_norms({1.0, -1.0, 1.0});
    CHECK(n.sup == 1.0);
    CHECK(n.bv == 4.0);
    SeqNorms ramp = seq_norms({1.0, 0.75, 0.5, 0.25});
    CHECK(ramp.sup == 1.0);
    CHECK(close(ramp.bv, 0.75, 1e-15));
}

TEST_CASE("lp norms match closed forms") {
    DyadicGrid g = make_grid(3, 0.0, 1.0);
    GridFunction f = zero_function(g);
    for (int i = 0; i < 4; ++i) f.values[i] = 1.0;  // indicator of [0, 1/2)
    CHECK(close(lp_norm(f, 2.0), std::sqrt(0.5), 1e-15));
    CHECK(close(lp_norm(f, 1.0), 0.5, 1e-15));
    CHECK(close(lp_norm(f, 0.5), 0.25, 1e-15));
    CHECK(lp_norm(f, INFINITY) == 1.0);
    CHECK_THROWS_AS(lp_norm(f, 0.0), Error);
}

TEST_CASE("grid functions survive a file round trip bit for bit") {
    DyadicGrid g = make_grid(6, -0.5, 1.5);
    GridFunction f = random_function(g, 2024);
    f.values[3] = 1e-300;
    f.values[4] = -0.1;
    const char* csv = "test_grid_io.csv";
    const char* hdr = "test_grid_io.json";
    write_grid_function(f, csv, hdr);
    GridFunction back = read_grid_function(csv, hdr);
    REQUIRE(back.grid == f.grid);
    REQUIRE(back.values == f.values);
    CHECK_THROWS_AS(read_grid_function("missing.csv", hdr), Error);
    std::remove(csv);
    std::remove(hdr);
}
