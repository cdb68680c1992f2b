#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "lbc/errors.hpp"
#include "lbc/graph_codec.hpp"
#include "lbc/word.hpp"

namespace lbc {

/// Subgraph of the order-ell de Bruijn graph induced by the balanced ell-bit
/// words: u -> v iff the last ell-1 bits of u equal the first ell-1 bits of v.
/// Expressed as a ConstraintGraph whose class-compatibility table is the
/// identity relation on (ell-1)-bit overlaps.
inline ConstraintGraph build_debruijn_subgraph(ConstraintParams p) {
    std::vector<std::uint32_t> verts;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << p.ell); ++code) {
        const unsigned w = static_cast<unsigned>(std::popcount(code));
        if (w >= p.low() && w <= p.high()) verts.push_back(static_cast<std::uint32_t>(code));
    }
    const std::size_t classes = std::size_t{1} << (p.ell - 1);
    const std::size_t row_words = (classes + 63) / 64;
    std::vector<std::uint64_t> compat(classes * row_words, 0);
    for (std::size_t c = 0; c < classes; ++c) {
        compat[c * row_words + c / 64] |= std::uint64_t{1} << (c % 64);
    }
    return ConstraintGraph(p.ell, p, std::move(verts), std::move(compat));
}

struct SpectralResult {
    double lambda = 0.0;
    double capacity = 0.0;     // log2(lambda)
    unsigned iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Dominant eigenvalue of a nonnegative adjacency by power iteration with
/// max-norm rescaling, all-ones start vector. The iteration runs on A + I,
/// which has the same Perron vector but stays aperiodic, so bipartite graphs
/// (where plain iteration oscillates) still converge; the reported lambda is
/// shifted back. Converged once both the eigenvalue step and the fixpoint
/// residual drop below tol.
inline SpectralResult spectral_radius(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                      double tol = 1e-9, unsigned max_iter = 100000) {
    const std::size_t n = adjacency.size();
    SpectralResult result;
    if (n == 0) return result;

    std::vector<double> x(n, 1.0), y(n, 0.0);
    double lambda_shifted = 0.0;
    for (unsigned it = 1; it <= max_iter; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = x[i];
            for (auto j : adjacency[i]) sum += x[j];
            y[i] = sum;
            norm = std::max(norm, sum);
        }
        result.iterations = it;
        if (norm == 0.0) {
            result.lambda = 0.0;
            result.converged = true;
            return result;
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            residual = std::max(residual, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        const double step = std::abs(norm - lambda_shifted);
        lambda_shifted = norm;
        result.lambda = lambda_shifted - 1.0;
        result.capacity = result.lambda > 0 ? std::log2(result.lambda) : -std::numeric_limits<double>::infinity();
        result.residual = residual;
        if (residual < tol && step < tol) {
            result.converged = true;
            return result;
        }
    }
    return result;
}

inline SpectralResult spectral_radius(const ConstraintGraph& g, double tol = 1e-9,
                                      unsigned max_iter = 100000) {
    return spectral_radius(g.adjacency_lists(), tol, max_iter);
}

/// C(ell, delta) = log2 of the spectral radius of the induced de Bruijn
/// subgraph; throws ConvergenceError if the iteration does not settle.
inline double capacity_lb(ConstraintParams p) {
    const auto g = build_debruijn_subgraph(p);
    const auto r = spectral_radius(g, 1e-9, 100000);
    if (!r.converged) {
        throw ConvergenceError("capacity_lb: power iteration did not converge (residual " +
                               std::to_string(r.residual) + ")");
    }
    return r.capacity;
}

/// Capacity of words with dis <= delta: the running sum walks a path graph on
/// delta + 1 levels, whose spectral radius is 2 cos(pi / (delta + 2)).
inline double capacity_rds(unsigned delta) {
    if (delta < 1) throw std::invalid_argument("capacity_rds: delta must be >= 1");
    return std::log2(2.0 * std::cos(std::numbers::pi / (delta + 2)));
}

} // namespace lbc
