#include "oracle.hpp"

#include <cmath>

#include "error.hpp"

namespace dyadic::oracle {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Basis function value at a point, straight from the stored samples.
// j == 0 is phi(x - nu); j >= 1 is 2^{-1/2} psi(2^{j-1} x - nu). Points
// on the dyadic lattice land exactly on stored samples; anything else
// trips the exactness check.
double basis_value(const SampledWavelet& sw, int j, std::int64_t nu,
                   double x) {
    double u, lo, hi;
    if (j == 0) {
        u = x - static_cast<double>(nu);
        lo = 0.0;
        hi = static_cast<double>(sw.support_width());
    } else {
        u = std::pow(2.0, j - 1) * x - static_cast<double>(nu);
        lo = static_cast<double>(sw.psi_left());
        hi = lo + static_cast<double>(sw.support_width());
    }
    if (u < lo || u >= hi) return 0.0;
    double t = (u - lo) * std::pow(2.0, sw.depth);
    auto idx = static_cast<std::int64_t>(std::llround(t));
    require(std::abs(t - static_cast<double>(idx)) == 0.0,
            ErrorCode::alignment, "oracle: point off the sample lattice");
    double v = (j == 0) ? sw.phi[idx] : kInvSqrt2 * sw.psi[idx];
    return v;
}

}  // namespace

std::vector<double> dense_expectation_matrix(const DyadicGrid& grid, int N) {
    const std::int64_t n = grid.cells();
    require(n <= 4096, ErrorCode::range,
            "oracle: dense matrix limited to 4096 cells");
    require(grid.aligned_at(N), ErrorCode::alignment,
            "oracle: grid endpoints off the lattice");
    std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
    const double entry = std::pow(2.0, N - grid.J);
    const double blocks_per_cell = std::pow(2.0, N - grid.J);
    for (std::int64_t r = 0; r < n; ++r) {
        auto rb = std::floor(static_cast<double>(r) * blocks_per_cell);
        for (std::int64_t c = 0; c < n; ++c) {
            auto cb = std::floor(static_cast<double>(c) * blocks_per_cell);
            if (rb == cb) m[static_cast<std::size_t>(r * n + c)] = entry;
        }
    }
    return m;
}

GridFunction apply_dense(const std::vector<double>& m, const GridFunction& f) {
    const std::int64_t n = f.grid.cells();
    require(m.size() == static_cast<std::size_t>(n * n),
            ErrorCode::invalid_argument, "oracle: matrix size mismatch");
    GridFunction out = zero_function(f.grid);
    for (std::int64_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::int64_t c = 0; c < n; ++c)
            acc += m[static_cast<std::size_t>(r * n + c)] * f.values[c];
        out.values[r] = acc;
    }
    return out;
}

GridFunction naive_haar_multiplier(const GridFunction& f, int N,
                                   const MultiplierSeq& a) {
    GridFunction out = zero_function(f.grid);
    const double cell = std::pow(2.0, -f.grid.J);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        std::int64_t mu = a.offset + static_cast<std::int64_t>(i);
        GridFunction h = haar_function(f.grid, N, mu);
        double ip = 0.0;
        for (std::int64_t c = 0; c < f.grid.cells(); ++c)
            ip += f.values[c] * h.values[c] * cell;
        double w = a.entries[i] * std::pow(2.0, N) * ip;
        for (std::int64_t c = 0; c < f.grid.cells(); ++c)
            out.values[c] += w * h.values[c];
    }
    return out;
}

CoefficientField naive_inner_products(const GridFunction& f,
                                      const SampledWavelet& sw, int j_max) {
    CoefficientField out(j_max);
    const double cell = std::pow(2.0, -f.grid.J);
    for (int j = 0; j <= j_max; ++j) {
        double scale = (j == 0) ? 1.0 : std::pow(2.0, j - 1);
        double lo = (j == 0) ? 0.0 : static_cast<double>(sw.psi_left());
        double hi = lo + sw.support_width();
        // Translates whose support [lo+nu, hi+nu] / scale meets the domain.
        auto numin = static_cast<std::int64_t>(
            std::ceil(scale * f.grid.x0 - hi));
        auto numax = static_cast<std::int64_t>(
            std::floor(scale * f.grid.x1 - lo));
        for (std::int64_t nu = numin; nu <= numax; ++nu) {
            double acc = 0.0;
            for (std::int64_t c = 0; c < f.grid.cells(); ++c) {
                if (f.values[c] == 0.0) continue;
                acc += f.values[c] * basis_value(sw, j, nu, f.grid.cell_left(c));
            }
            out.set(j, nu, std::pow(2.0, j) * acc * cell);
        }
    }
    return out;
}

GridFunction naive_synthesize(const CoefficientField& c,
                              const SampledWavelet& sw,
                              const DyadicGrid& grid) {
    GridFunction out = zero_function(grid);
    for (int j = 0; j <= c.j_max; ++j) {
        for (const auto& [nu, lambda] : c.levels[static_cast<std::size_t>(j)]) {
            for (std::int64_t cell = 0; cell < grid.cells(); ++cell)
                out.values[cell] +=
                    lambda * basis_value(sw, j, nu, grid.cell_left(cell));
        }
    }
    return out;
}

double brute_norm_b(const CoefficientField& c, double p, double q, double s) {
    double acc_q = 0.0;
    double sup_q = 0.0;
    for (int j = 0; j <= c.j_max; ++j) {
        const auto& lvl = c.levels[static_cast<std::size_t>(j)];
        if (lvl.empty()) continue;
        double mass;
        if (std::isinf(p)) {
            mass = 0.0;
            for (const auto& [nu, lambda] : lvl)
                mass = std::max(mass, std::abs(lambda));
        } else {
            double total = 0.0;
            for (const auto& [nu, lambda] : lvl)
                total += std::pow(std::abs(lambda), p) * std::pow(2.0, -j);
            mass = std::pow(total, 1.0 / p);
        }
        double w = std::pow(2.0, j * s) * mass;
        if (std::isinf(q))
            sup_q = std::max(sup_q, w);
        else
            acc_q += std::pow(w, q);
    }
    return std::isinf(q) ? sup_q : std::pow(acc_q, 1.0 / q);
}

double brute_norm_f(const CoefficientField& c, double p, double q, double s) {
    require(!std::isinf(p), ErrorCode::invalid_argument,
            "brute_norm_f requires finite p");
    double xlo = 0.0, xhi = 0.0;
    bool any = false;
    for (int j = 0; j <= c.j_max; ++j) {
        for (const auto& [nu, lambda] : c.levels[static_cast<std::size_t>(j)]) {
            double a = static_cast<double>(nu) * std::pow(2.0, -j);
            double b = static_cast<double>(nu + 1) * std::pow(2.0, -j);
            if (!any) {
                xlo = a;
                xhi = b;
                any = true;
            }
            xlo = std::min(xlo, a);
            xhi = std::max(xhi, b);
        }
    }
    if (!any) return 0.0;

    const double h = std::pow(2.0, -c.j_max);
    auto cells = static_cast<std::int64_t>(std::llround((xhi - xlo) / h));
    require(cells <= (std::int64_t{1} << 22), ErrorCode::range,
            "brute_norm_f: span too large for the oracle");
    double integral = 0.0;
    for (std::int64_t k = 0; k < cells; ++k) {
        double x = xlo + (static_cast<double>(k) + 0.5) * h;
        double local_q = 0.0;
        double local_sup = 0.0;
        for (int j = 0; j <= c.j_max; ++j) {
            for (const auto& [nu, lambda] :
                 c.levels[static_cast<std::size_t>(j)]) {
                double a = static_cast<double>(nu) * std::pow(2.0, -j);
                double b = static_cast<double>(nu + 1) * std::pow(2.0, -j);
                if (x < a || x >= b) continue;
                double w = std::abs(std::pow(2.0, j * s) * lambda);
                if (std::isinf(q))
                    local_sup = std::max(local_sup, w);
                else
                    local_q += std::pow(w, q);
            }
        }
        double cell_val = std::isinf(q) ? std::pow(local_sup, p)
                                        : std::pow(local_q, p / q);
        integral += cell_val * h;
    }
    return std::pow(integral, 1.0 / p);
}

}  // namespace dyadic::oracle
