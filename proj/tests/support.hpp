#ifndef RAAG_TESTS_SUPPORT_HPP
#define RAAG_TESTS_SUPPORT_HPP

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "raag/graph.hpp"

namespace raag::test {

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng)) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Graph::from_edges(n, edges);
}

inline Graph complete(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

/// Disjoint union; vertices of `b` are shifted past those of `a`.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const Edge& e : a.edges()) {
        edges.emplace_back(e.u, e.v);
    }
    for (const Edge& e : b.edges()) {
        edges.emplace_back(e.u + a.vertex_count(), e.v + a.vertex_count());
    }
    return Graph::from_edges(a.vertex_count() + b.vertex_count(), edges);
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace raag::test

#endif  // RAAG_TESTS_SUPPORT_HPP
