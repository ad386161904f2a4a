#pragma once
// Shared test fixtures and reference implementations. The reference routes
// here are deliberately independent of the library code they check: walk
// counting by dense per-relation matrix products, and ridge fitting by
// steepest descent on the raw objective.

#include "dcpath/kg.hpp"
#include "dcpath/path_eval.hpp"
#include "dcpath/reasoning.hpp"
#include "dcpath/rng.hpp"

#include <cstdint>
#include <vector>

namespace dcpath::testutil {

// Walk counts via dense matrix-vector products: row vector starts as the
// head indicator and is multiplied by one per-relation adjacency count
// matrix per hop. Entry t of the result is the number of walks head -> t.
inline std::vector<std::uint64_t> matrix_walk_counts(const MaskedView& view, EntityId head,
                                                     const PathFeature& path) {
    const std::size_t n = view.graph().entity_count();
    std::vector<std::uint64_t> row(n, 0);
    if (head < n) row[head] = 1;
    for (RelationId r : path.relations) {
        std::vector<std::uint64_t> next(n, 0);
        for (EntityId e = 0; e < n; ++e) {
            if (row[e] == 0) continue;
            for (EntityId t = 0; t < n; ++t)
                if (view.has_triple(e, r, t)) next[t] += row[e];
        }
        row = std::move(next);
    }
    return row;
}

inline std::uint64_t matrix_support(const MaskedView& view, EntityId head, EntityId tail,
                                    const PathFeature& path) {
    auto row = matrix_walk_counts(view, head, path);
    return tail < row.size() ? row[tail] : 0;
}

inline std::uint64_t matrix_count(const MaskedView& view, EntityId head,
                                  const PathFeature& path) {
    std::uint64_t total = 0;
    for (std::uint64_t v : matrix_walk_counts(view, head, path)) total += v;
    return total;
}

// Steepest descent with exact line search on
//   (1/n) * sum_i (w.x_i + b - y_i)^2 + lambda * |w|^2,
// the objective the closed-form trainer solves. Returns weights then bias.
inline std::vector<double> iterative_ridge(const std::vector<std::vector<double>>& features,
                                           const std::vector<int>& labels, double lambda,
                                           std::size_t max_iters = 200000) {
    const std::size_t rows = features.size();
    const std::size_t p = features.empty() ? 0 : features.front().size();
    std::vector<double> beta(p + 1, 0.0);  // weights.., bias

    auto predict = [&](const std::vector<double>& x) {
        double acc = beta[p];
        for (std::size_t a = 0; a < p; ++a) acc += beta[a] * x[a];
        return acc;
    };
    auto gradient = [&]() {
        std::vector<double> g(p + 1, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            double err = predict(features[i]) - labels[i];
            for (std::size_t a = 0; a < p; ++a) g[a] += 2.0 * err * features[i][a] / rows;
            g[p] += 2.0 * err / rows;
        }
        for (std::size_t a = 0; a < p; ++a) g[a] += 2.0 * lambda * beta[a];
        return g;
    };
    // H.d where H is the (constant) Hessian, computed through the data.
    auto hessian_product = [&](const std::vector<double>& d) {
        std::vector<double> hd(p + 1, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            double dot = d[p];
            for (std::size_t a = 0; a < p; ++a) dot += d[a] * features[i][a];
            for (std::size_t a = 0; a < p; ++a) hd[a] += 2.0 * dot * features[i][a] / rows;
            hd[p] += 2.0 * dot / rows;
        }
        for (std::size_t a = 0; a < p; ++a) hd[a] += 2.0 * lambda * d[a];
        return hd;
    };

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        std::vector<double> g = gradient();
        double gg = 0.0;
        for (double v : g) gg += v * v;
        if (gg < 1e-24) break;
        std::vector<double> hg = hessian_product(g);
        double ghg = 0.0;
        for (std::size_t a = 0; a <= p; ++a) ghg += g[a] * hg[a];
        double step = gg / ghg;
        for (std::size_t a = 0; a <= p; ++a) beta[a] -= step * g[a];
    }
    return beta;
}

}  // namespace dcpath::testutil
