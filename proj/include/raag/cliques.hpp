#ifndef RAAG_CLIQUES_HPP
#define RAAG_CLIQUES_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "raag/graph.hpp"

namespace raag {

/// Strictly increasing vertex tuple, pairwise adjacent in its host graph.
using Clique = std::vector<Vertex>;

/// All k-cliques of a graph in lexicographic order, which is the order of
/// nested i<j<k<l loops. Positions are 0-based.
class CliqueIndex {
public:
    CliqueIndex() = default;
    CliqueIndex(std::size_t k, std::vector<Clique> cliques) : k_(k), cliques_(std::move(cliques)) {
        for (std::size_t i = 0; i < cliques_.size(); ++i) {
            position_.emplace(cliques_[i], i);
        }
    }

    std::size_t k() const { return k_; }
    std::size_t size() const { return cliques_.size(); }
    bool empty() const { return cliques_.empty(); }
    const Clique& operator[](std::size_t i) const { return cliques_[i]; }
    const std::vector<Clique>& cliques() const { return cliques_; }
    auto begin() const { return cliques_.begin(); }
    auto end() const { return cliques_.end(); }

    /// 0-based position of a sorted vertex tuple.
    std::optional<std::size_t> position(const Clique& c) const {
        auto it = position_.find(c);
        if (it == position_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

private:
    std::size_t k_ = 0;
    std::vector<Clique> cliques_;
    std::map<Clique, std::size_t> position_;
};

namespace detail {

/// Depth-first extension of `current` by candidates greater than its last
/// vertex. Visits cliques in lexicographic order; `visit(clique)` returns false
/// to stop descending below that clique.
inline void extend_cliques(const Graph& g, Clique& current, const BitVector& candidates,
                           const std::function<bool(const Clique&)>& visit) {
    for (std::size_t v = candidates.find_first(); v < candidates.size(); v = candidates.find_next(v + 1)) {
        current.push_back(static_cast<Vertex>(v));
        if (visit(current)) {
            BitVector next = candidates & g.neighbors(v);
            // only vertices after v keep the tuple increasing
            for (std::size_t w = next.find_first(); w <= v && w < next.size(); w = next.find_next(w + 1)) {
                next.reset(w);
            }
            if (next.any()) {
                extend_cliques(g, current, next, visit);
            }
        }
        current.pop_back();
    }
}

}  // namespace detail

/// All k-cliques, lexicographically ordered. k > n yields an empty index.
inline CliqueIndex enumerate_cliques(const Graph& g, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("enumerate_cliques: k must be positive");
    }
    std::vector<Clique> out;
    BitVector all(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        all.set(v);
    }
    Clique current;
    detail::extend_cliques(g, current, all, [&](const Clique& c) {
        if (c.size() == k) {
            out.push_back(c);
            return false;
        }
        return true;
    });
    return CliqueIndex(k, std::move(out));
}

/// Cliques not contained in a larger clique, lexicographically ordered.
/// Isolated vertices are maximal 1-cliques.
inline std::vector<Clique> maximal_cliques(const Graph& g) {
    std::vector<Clique> out;
    BitVector all(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        all.set(v);
    }
    Clique current;
    detail::extend_cliques(g, current, all, [&](const Clique& c) {
        BitVector common = all;
        for (Vertex v : c) {
            common &= g.neighbors(v);
        }
        if (common.none()) {
            out.push_back(c);
        }
        return true;
    });
    return out;
}

/// Number of k-cliques for every k from 1 up to the clique number.
inline std::vector<std::size_t> clique_counts(const Graph& g) {
    std::vector<std::size_t> counts(1, 0);
    BitVector all(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        all.set(v);
    }
    Clique current;
    detail::extend_cliques(g, current, all, [&](const Clique& c) {
        if (counts.size() <= c.size()) {
            counts.resize(c.size() + 1, 0);
        }
        ++counts[c.size()];
        return true;
    });
    return counts;
}

}  // namespace raag

#endif  // RAAG_CLIQUES_HPP
