#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "error.hpp"
#include "util.hpp"

namespace dyadic {

namespace {

constexpr std::int64_t kMaxCells = std::int64_t{1} << 26;

void check_alignment(const GridFunction& f, int N, const char* op) {
    require(N >= 0, ErrorCode::invalid_argument,
            std::string(op) + ": level must be nonnegative");
    require(f.grid.aligned_at(N), ErrorCode::alignment,
            std::string(op) + ": grid endpoints off the 2^-" +
                std::to_string(N) + " lattice");
    require(f.values.size() == static_cast<std::size_t>(f.grid.cells()),
            ErrorCode::invalid_argument,
            std::string(op) + ": value count does not match grid");
}

}  // namespace

std::int64_t DyadicGrid::cells() const {
    return exact_scaled_int(x1, J, "grid.x1") - exact_scaled_int(x0, J, "grid.x0");
}

double DyadicGrid::cell_left(std::int64_t i) const {
    return x0 + std::ldexp(static_cast<double>(i), -J);
}

std::int64_t DyadicGrid::locate(double x) const {
    double rel = std::ldexp(x - x0, J);
    return static_cast<std::int64_t>(std::floor(rel));
}

bool DyadicGrid::aligned_at(int N) const {
    if (N < 0 || N > J) return false;
    double a = std::ldexp(x0, N);
    double b = std::ldexp(x1, N);
    return a == std::nearbyint(a) && b == std::nearbyint(b);
}

DyadicGrid make_grid(int J, double x0, double x1) {
    require(J >= 0 && J <= 26, ErrorCode::invalid_argument,
            "grid resolution must be in 0..26");
    require(x0 < x1, ErrorCode::invalid_argument,
            "grid needs a nonempty domain");
    DyadicGrid g{J, x0, x1};
    std::int64_t n = g.cells();  // validates lattice alignment
    require(n > 0 && n <= kMaxCells, ErrorCode::range, "grid too large");
    return g;
}

GridFunction zero_function(const DyadicGrid& grid) {
    GridFunction f;
    f.grid = grid;
    f.values.assign(grid.cells(), 0.0);
    return f;
}

GridFunction conditional_expectation(const GridFunction& f, int N) {
    check_alignment(f, N, "conditional_expectation");
    require(N <= f.grid.J, ErrorCode::resolution,
            "conditional_expectation: level finer than the grid");
    const int shift = f.grid.J - N;
    const std::int64_t bs = std::int64_t{1} << shift;
    GridFunction out = zero_function(f.grid);
    const std::int64_t blocks = f.grid.cells() >> shift;
    for (std::int64_t b = 0; b < blocks; ++b) {
        const double* block = f.values.data() + b * bs;
        double mean = std::ldexp(pairwise_sum(block, bs), -shift);
        std::fill_n(out.values.begin() + b * bs, bs, mean);
    }
    return out;
}

GridFunction martingale_difference(const GridFunction& f, int N) {
    check_alignment(f, N, "martingale_difference");
    require(N + 1 <= f.grid.J, ErrorCode::resolution,
            "martingale_difference: needs one level below the grid");
    const int shift = f.grid.J - N;
    const std::int64_t bs = std::int64_t{1} << shift;
    const std::int64_t half = bs >> 1;
    GridFunction out = zero_function(f.grid);
    const std::int64_t blocks = f.grid.cells() >> shift;
    for (std::int64_t b = 0; b < blocks; ++b) {
        const double* block = f.values.data() + b * bs;
        double sl = pairwise_sum(block, half);
        double sr = pairwise_sum(block + half, half);
        double m = std::ldexp(sl + sr, -shift);
        double ml = std::ldexp(sl, -(shift - 1));
        double mr = std::ldexp(sr, -(shift - 1));
        std::fill_n(out.values.begin() + b * bs, half, ml - m);
        std::fill_n(out.values.begin() + b * bs + half, half, mr - m);
    }
    return out;
}

GridFunction haar_function(const DyadicGrid& grid, int N, std::int64_t mu) {
    require(N >= 0 && N + 1 <= grid.J, ErrorCode::resolution,
            "haar_function: needs one level below the grid");
    require(grid.aligned_at(N), ErrorCode::alignment,
            "haar_function: grid endpoints off the lattice");
    const std::int64_t base = exact_scaled_int(grid.x0, N, "grid.x0");
    const std::int64_t blocks = grid.cells() >> (grid.J - N);
    require(mu >= base && mu < base + blocks, ErrorCode::range,
            "haar_function: interval outside the grid domain");
    const int shift = grid.J - N;
    const std::int64_t bs = std::int64_t{1} << shift;
    const std::int64_t start = (mu - base) * bs;
    GridFunction out = zero_function(grid);
    std::fill_n(out.values.begin() + start, bs >> 1, 1.0);
    std::fill_n(out.values.begin() + start + (bs >> 1), bs >> 1, -1.0);
    return out;
}

SeqNorms seq_norms(const std::vector<double>& b) {
    SeqNorms n;
    for (double v : b) n.sup = std::max(n.sup, std::abs(v));
    for (std::size_t i = 1; i < b.size(); ++i)
        n.bv += std::abs(b[i] - b[i - 1]);
    return n;
}

GridFunction haar_multiplier(const GridFunction& f, int N,
                             const MultiplierSeq& a) {
    check_alignment(f, N, "haar_multiplier");
    require(N + 1 <= f.grid.J, ErrorCode::resolution,
            "haar_multiplier: needs one level below the grid");
    const std::int64_t base = exact_scaled_int(f.grid.x0, N, "grid.x0");
    const int shift = f.grid.J - N;
    const std::int64_t bs = std::int64_t{1} << shift;
    const std::int64_t half = bs >> 1;
    const std::int64_t blocks = f.grid.cells() >> shift;
    require(a.offset == base &&
                a.entries.size() == static_cast<std::size_t>(blocks),
            ErrorCode::index,
            "haar_multiplier: weights must cover every lattice interval");
    GridFunction out = zero_function(f.grid);
    for (std::int64_t b = 0; b < blocks; ++b) {
        const double* block = f.values.data() + b * bs;
        double sl = pairwise_sum(block, half);
        double sr = pairwise_sum(block + half, half);
        double m = std::ldexp(sl + sr, -shift);
        double ml = std::ldexp(sl, -(shift - 1));
        double mr = std::ldexp(sr, -(shift - 1));
        double w = a.entries[b];
        std::fill_n(out.values.begin() + b * bs, half, w * (ml - m));
        std::fill_n(out.values.begin() + b * bs + half, half, w * (mr - m));
    }
    return out;
}

GridFunction levelwise_multiplier(const GridFunction& f,
                                  const std::vector<double>& b, int n0) {
    require(!b.empty(), ErrorCode::invalid_argument,
            "levelwise_multiplier: empty weight sequence");
    const int n1 = n0 + static_cast<int>(b.size()) - 1;
    require(n0 >= 0 && n1 + 1 <= f.grid.J, ErrorCode::resolution,
            "levelwise_multiplier: levels exceed the grid resolution");
    GridFunction out = zero_function(f.grid);
    GridFunction lower = conditional_expectation(f, n0);
    const std::int64_t cells = f.grid.cells();
    for (int n = n0; n <= n1; ++n) {
        GridFunction upper = conditional_expectation(f, n + 1);
        double w = b[n - n0];
        for (std::int64_t c = 0; c < cells; ++c)
            out.values[c] += w * (upper.values[c] - lower.values[c]);
        lower = std::move(upper);
    }
    return out;
}

double lp_norm(const GridFunction& f, double p) {
    require(p > 0.0, ErrorCode::invalid_argument, "lp_norm: p must be > 0");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<double> terms(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        terms[i] = apow(std::abs(f.values[i]), p);
    double total = std::ldexp(
        pairwise_sum(terms.data(), static_cast<std::int64_t>(terms.size())),
        -f.grid.J);
    return apow(total, 1.0 / p);
}

void add_scaled(GridFunction& acc, double c, const GridFunction& g) {
    require(acc.grid == g.grid, ErrorCode::invalid_argument,
            "add_scaled: grid mismatch");
    for (std::size_t i = 0; i < acc.values.size(); ++i)
        acc.values[i] += c * g.values[i];
}

void write_grid_function(const GridFunction& f, const std::string& csv_path,
                         const std::string& json_path) {
    nlohmann::json header{{"J", f.grid.J},
                          {"x0", f.grid.x0},
                          {"x1", f.grid.x1},
                          {"cells", f.grid.cells()}};
    std::ofstream js(json_path);
    require(js.good(), ErrorCode::io, "cannot open " + json_path);
    js << header.dump(2) << "\n";
    require(js.good(), ErrorCode::io, "cannot write " + json_path);

    std::ofstream cs(csv_path);
    require(cs.good(), ErrorCode::io, "cannot open " + csv_path);
    cs << "cell_index,value\n";
    const std::int64_t cells = f.grid.cells();
    for (std::int64_t i = 0; i < cells; ++i)
        cs << i << "," << format_double(f.values[i]) << "\n";
    require(cs.good(), ErrorCode::io, "cannot write " + csv_path);
}

GridFunction read_grid_function(const std::string& csv_path,
                                const std::string& json_path) {
    std::ifstream js(json_path);
    require(js.good(), ErrorCode::io, "cannot open " + json_path);
    nlohmann::json header;
    try {
        js >> header;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io, "bad grid header: " + std::string(e.what()));
    }
    require(header.contains("J") && header.contains("x0") &&
                header.contains("x1"),
            ErrorCode::io, "grid header missing fields");
    GridFunction f;
    f.grid = make_grid(header["J"].get<int>(), header["x0"].get<double>(),
                       header["x1"].get<double>());
    const std::int64_t n = f.grid.cells();
    require(!header.contains("cells") ||
                header["cells"].get<std::int64_t>() == n,
            ErrorCode::io, "grid header cell count mismatch");
    f.values.assign(n, 0.0);

    std::ifstream cs(csv_path);
    require(cs.good(), ErrorCode::io, "cannot open " + csv_path);
    std::string line;
    require(static_cast<bool>(std::getline(cs, line)) &&
                line == "cell_index,value",
            ErrorCode::io, "bad grid CSV header");
    std::int64_t expect = 0;
    while (std::getline(cs, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        require(comma != std::string::npos, ErrorCode::io,
                "bad grid CSV row: " + line);
        std::int64_t idx = 0;
        auto res = std::from_chars(line.data(), line.data() + comma, idx);
        require(res.ec == std::errc() && idx == expect && idx < n,
                ErrorCode::io, "bad grid CSV index: " + line);
        f.values[idx] = parse_double(line.substr(comma + 1));
        ++expect;
    }
    require(expect == n, ErrorCode::io, "grid CSV row count mismatch");
    return f;
}

}  // namespace dyadic
