#include "analysis.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "error.hpp"
#include "util.hpp"

namespace dyadic {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Affine sampling data for one basis translate on one grid: grid cell c
// maps to sample index idx0 + (c - cell_lo) * step of *samples.
struct Stencil {
    std::int64_t cell_lo = 0;  // first grid cell of the support (unclamped)
    std::int64_t cell_hi = 0;  // one past the last support cell (unclamped)
    std::int64_t idx0 = 0;
    std::int64_t step = 0;
    double amp = 1.0;
    const std::vector<double>* samples = nullptr;
};

Stencil make_stencil(const SampledWavelet& sw, const DyadicGrid& grid, int j,
                     std::int64_t nu) {
    const int J = grid.J;
    const int m = sw.depth;
    const int L = sw.order();
    const std::int64_t base = exact_scaled_int(grid.x0, J, "grid.x0");
    Stencil st;
    if (j == 0) {
        require(m >= J, ErrorCode::resolution,
                "wavelet sampling depth below the grid resolution");
        const std::int64_t Q = std::int64_t{1} << J;
        st.cell_lo = nu * Q - base;
        st.cell_hi = (nu + sw.support_width()) * Q - base;
        st.step = std::int64_t{1} << (m - J);
        st.idx0 = (base + st.cell_lo) * st.step - (nu << m);
        st.amp = 1.0;
        st.samples = &sw.phi;
    } else {
        require(j <= J, ErrorCode::resolution,
                "basis level finer than the grid");
        require(m >= J + 1 - j, ErrorCode::resolution,
                "wavelet sampling depth below the grid resolution");
        const std::int64_t Q = std::int64_t{1} << (J + 1 - j);
        st.cell_lo = (nu + 1 - L) * Q - base;
        st.cell_hi = (nu + L) * Q - base;
        st.step = std::int64_t{1} << (m - (J + 1 - j));
        st.idx0 =
            (base + st.cell_lo) * st.step + ((L - 1 - nu) * (std::int64_t{1} << m));
        st.amp = kInvSqrt2;
        st.samples = &sw.psi;
    }
    return st;
}

}  // namespace

void CoefficientField::set(int j, std::int64_t nu, double v) {
    require(j >= 0 && j <= j_max, ErrorCode::index,
            "coefficient level out of range");
    levels[static_cast<std::size_t>(j)][nu] = v;
}

double CoefficientField::get(int j, std::int64_t nu) const {
    require(j >= 0 && j <= j_max, ErrorCode::index,
            "coefficient level out of range");
    const auto& lvl = levels[static_cast<std::size_t>(j)];
    auto it = lvl.find(nu);
    return it == lvl.end() ? 0.0 : it->second;
}

std::int64_t CoefficientField::count() const {
    std::int64_t n = 0;
    for (const auto& lvl : levels) n += static_cast<std::int64_t>(lvl.size());
    return n;
}

GridFunction wavelet_at(const SampledWavelet& sw, const DyadicGrid& grid,
                        int j, std::int64_t nu) {
    require(j >= 0, ErrorCode::invalid_argument, "basis level must be >= 0");
    Stencil st = make_stencil(sw, grid, j, nu);
    GridFunction out = zero_function(grid);
    const std::int64_t clo = std::max<std::int64_t>(st.cell_lo, 0);
    const std::int64_t chi = std::min(st.cell_hi, grid.cells());
    std::int64_t idx = st.idx0 + (clo - st.cell_lo) * st.step;
    for (std::int64_t c = clo; c < chi; ++c, idx += st.step)
        out.values[c] = st.amp * (*st.samples)[idx];
    return out;
}

CoefficientField analyze(const GridFunction& f, const SampledWavelet& sw,
                         int j_max, int min_gap) {
    const int J = f.grid.J;
    require(j_max >= 0, ErrorCode::invalid_argument, "j_max must be >= 0");
    require(min_gap >= 0 && j_max + min_gap <= J, ErrorCode::resolution,
            "analyze: levels too close to the grid resolution");
    require(sw.depth >= J, ErrorCode::resolution,
            "analyze: wavelet sampling depth below the grid resolution");
    require(f.values.size() == static_cast<std::size_t>(f.grid.cells()),
            ErrorCode::invalid_argument, "analyze: value count mismatch");

    CoefficientField out(j_max);
    std::int64_t c0 = 0, c1 = f.grid.cells();
    while (c0 < c1 && f.values[c0] == 0.0) ++c0;
    while (c1 > c0 && f.values[c1 - 1] == 0.0) --c1;
    if (c0 == c1) return out;  // identically zero

    const std::int64_t base = exact_scaled_int(f.grid.x0, J, "grid.x0");
    const std::int64_t A = base + c0;
    const std::int64_t B = base + c1;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(c1 - c0));

    for (int j = 0; j <= j_max; ++j) {
        std::int64_t numin, numax;
        if (j == 0) {
            const std::int64_t Q = std::int64_t{1} << J;
            numin = floor_div(A, Q) + 1 - sw.support_width();
            numax = floor_div(B - 1, Q);
        } else {
            const std::int64_t Q = std::int64_t{1} << (J + 1 - j);
            numin = floor_div(A, Q) + 1 - sw.order();
            numax = floor_div(B - 1, Q) + sw.order() - 1;
        }
        for (std::int64_t nu = numin; nu <= numax; ++nu) {
            Stencil st = make_stencil(sw, f.grid, j, nu);
            const std::int64_t clo = std::max(st.cell_lo, c0);
            const std::int64_t chi = std::min(st.cell_hi, c1);
            if (clo >= chi) continue;
            terms.clear();
            std::int64_t idx = st.idx0 + (clo - st.cell_lo) * st.step;
            for (std::int64_t c = clo; c < chi; ++c, idx += st.step)
                terms.push_back(f.values[c] * (*st.samples)[idx]);
            double s = pairwise_sum(terms.data(),
                                    static_cast<std::int64_t>(terms.size()));
            out.set(j, nu, st.amp * std::ldexp(s, j - J));
        }
    }
    return out;
}

CoefficientField truncate_levels(const CoefficientField& c, int n_max) {
    CoefficientField out(c.j_max);
    for (int j = 0; j <= std::min(n_max, c.j_max); ++j)
        out.levels[static_cast<std::size_t>(j)] =
            c.levels[static_cast<std::size_t>(j)];
    return out;
}

void synthesize_level_into(GridFunction& acc, const CoefficientField& c,
                           int j, const SampledWavelet& sw) {
    require(j >= 0 && j <= c.j_max, ErrorCode::index, "level out of range");
    const DyadicGrid& grid = acc.grid;
    for (const auto& [nu, lambda] : c.levels[static_cast<std::size_t>(j)]) {
        if (lambda == 0.0) continue;
        Stencil st = make_stencil(sw, grid, j, nu);
        const std::int64_t clo = std::max<std::int64_t>(st.cell_lo, 0);
        const std::int64_t chi = std::min(st.cell_hi, grid.cells());
        std::int64_t idx = st.idx0 + (clo - st.cell_lo) * st.step;
        const double w = lambda * st.amp;
        for (std::int64_t cell = clo; cell < chi; ++cell, idx += st.step)
            acc.values[cell] += w * (*st.samples)[idx];
    }
}

GridFunction synthesize(const CoefficientField& c, const SampledWavelet& sw,
                        const DyadicGrid& grid) {
    GridFunction out = zero_function(grid);
    for (int j = 0; j <= c.j_max; ++j) synthesize_level_into(out, c, j, sw);
    return out;
}

GridFunction partial_sum(const CoefficientField& c, int n_max,
                         const SampledWavelet& sw, const DyadicGrid& grid) {
    return synthesize(truncate_levels(c, n_max), sw, grid);
}

void write_coefficients(const CoefficientField& c, const std::string& path) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lvl : c.levels) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [nu, lambda] : lvl)
            entries.push_back(nlohmann::json::array({nu, lambda}));
        levels.push_back(std::move(entries));
    }
    nlohmann::json doc{{"j_max", c.j_max}, {"levels", std::move(levels)}};
    std::ofstream out(path);
    require(out.good(), ErrorCode::io, "cannot open " + path);
    out << doc.dump(2) << "\n";
    require(out.good(), ErrorCode::io, "cannot write " + path);
}

CoefficientField read_coefficients(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io, "bad coefficient file: " + std::string(e.what()));
    }
    require(doc.contains("j_max") && doc.contains("levels"), ErrorCode::io,
            "coefficient file missing fields");
    const int j_max = doc["j_max"].get<int>();
    require(j_max >= 0 && j_max <= 40, ErrorCode::io,
            "coefficient file j_max out of range");
    const auto& levels = doc["levels"];
    require(levels.is_array() &&
                levels.size() == static_cast<std::size_t>(j_max) + 1,
            ErrorCode::io, "coefficient file level count mismatch");
    CoefficientField c(j_max);
    for (int j = 0; j <= j_max; ++j) {
        for (const auto& entry : levels[static_cast<std::size_t>(j)]) {
            require(entry.is_array() && entry.size() == 2, ErrorCode::io,
                    "coefficient file entry must be [nu, lambda]");
            c.set(j, entry[0].get<std::int64_t>(), entry[1].get<double>());
        }
    }
    return c;
}

}  // namespace dyadic
