#ifndef RAAG_STRUCTURE_HPP
#define RAAG_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "raag/cliques.hpp"
#include "raag/graph.hpp"

namespace raag {

/// A subgraph together with the parent vertex behind each of its vertices.
struct Subgraph {
    Graph graph;
    std::vector<std::size_t> vertices;  // vertices[i] = parent index of vertex i
};

/// Components in order of their smallest vertex; each keeps induced adjacency.
inline std::vector<Subgraph> connected_components(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<Subgraph> out;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) {
            continue;
        }
        std::vector<std::size_t> members{root};
        seen[root] = true;
        for (std::size_t head = 0; head < members.size(); ++head) {
            const BitVector& nb = g.neighbors(members[head]);
            for (std::size_t w = nb.find_first(); w < n; w = nb.find_next(w + 1)) {
                if (!seen[w]) {
                    seen[w] = true;
                    members.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        Graph sub = g.induced(members);
        out.push_back({std::move(sub), std::move(members)});
    }
    return out;
}

inline std::size_t component_count(const Graph& g) { return connected_components(g).size(); }

namespace detail {

/// Hopcroft-Tarjan lowpoint search; records cut vertices and the vertex sets of
/// biconnected blocks (blocks are collected from an edge stack).
class BlockFinder {
public:
    explicit BlockFinder(const Graph& g)
        : g_(g), depth_(g.vertex_count(), kUnvisited), low_(g.vertex_count(), 0), cut_(g.vertex_count(), false) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            if (depth_[v] == kUnvisited) {
                std::size_t children = 0;
                depth_[v] = 0;
                low_[v] = 0;
                const BitVector& nb = g_.neighbors(v);
                for (std::size_t w = nb.find_first(); w < nb.size(); w = nb.find_next(w + 1)) {
                    if (depth_[w] == kUnvisited) {
                        ++children;
                        edge_stack_.push_back({v, w});
                        visit(w, v, 1);
                        pop_block(v, w);
                    }
                }
                cut_[v] = children > 1;
            }
        }
    }

    std::vector<Vertex> cut_vertices() const {
        std::vector<Vertex> out;
        for (std::size_t v = 0; v < cut_.size(); ++v) {
            if (cut_[v]) {
                out.push_back(static_cast<Vertex>(v));
            }
        }
        return out;
    }

    /// Vertex sets of blocks with at least one edge, each sorted, ordered by smallest vertex.
    std::vector<std::vector<std::size_t>> blocks() const {
        auto out = blocks_;
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

    void visit(std::size_t v, std::size_t parent, std::size_t depth) {
        depth_[v] = depth;
        low_[v] = depth;
        const BitVector& nb = g_.neighbors(v);
        for (std::size_t w = nb.find_first(); w < nb.size(); w = nb.find_next(w + 1)) {
            if (w == parent) {
                continue;
            }
            if (depth_[w] == kUnvisited) {
                edge_stack_.push_back({v, w});
                visit(w, v, depth + 1);
                low_[v] = std::min(low_[v], low_[w]);
                if (low_[w] >= depth_[v]) {
                    cut_[v] = true;
                    pop_block(v, w);
                }
            } else if (depth_[w] < depth_[v]) {
                edge_stack_.push_back({v, w});
                low_[v] = std::min(low_[v], depth_[w]);
            }
        }
    }

    void pop_block(std::size_t v, std::size_t w) {
        std::vector<std::size_t> members;
        while (!edge_stack_.empty()) {
            auto [a, b] = edge_stack_.back();
            edge_stack_.pop_back();
            members.push_back(a);
            members.push_back(b);
            if (a == v && b == w) {
                break;
            }
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        blocks_.push_back(std::move(members));
    }

    const Graph& g_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> low_;
    std::vector<bool> cut_;
    std::vector<std::pair<std::size_t, std::size_t>> edge_stack_;
    std::vector<std::vector<std::size_t>> blocks_;
};

}  // namespace detail

/// Cut vertices of every component, ascending.
inline std::vector<Vertex> articulation_points(const Graph& g) { return detail::BlockFinder(g).cut_vertices(); }

/// Biconnected blocks (vertex sets of maximal 2-connected pieces or bridges),
/// plus a singleton for every isolated vertex. Blocks meet only at cut vertices.
inline std::vector<Subgraph> biconnected_blocks(const Graph& g) {
    auto sets = detail::BlockFinder(g).blocks();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) {
            sets.push_back({v});
        }
    }
    std::sort(sets.begin(), sets.end());
    std::vector<Subgraph> out;
    out.reserve(sets.size());
    for (auto& s : sets) {
        Graph sub = g.induced(s);
        out.push_back({std::move(sub), std::move(s)});
    }
    return out;
}

/// Partition of the edge set by membership in at least one 4-clique.
struct EdgeClassification {
    std::vector<Edge> in_4clique;
    std::vector<Edge> free;
};

/// An edge uv lies in a 4-clique iff two adjacent vertices are common neighbours of u and v.
inline bool edge_in_4clique(const Graph& g, const Edge& e) {
    const BitVector common = g.neighbors(e.u) & g.neighbors(e.v);
    for (std::size_t w = common.find_first(); w < common.size(); w = common.find_next(w + 1)) {
        if ((common & g.neighbors(w)).any()) {
            return true;
        }
    }
    return false;
}

inline EdgeClassification classify_edges(const Graph& g) {
    EdgeClassification out;
    for (const Edge& e : g.edges()) {
        (edge_in_4clique(g, e) ? out.in_4clique : out.free).push_back(e);
    }
    return out;
}

/// Betti numbers b_0..b_d: b_0 is the number of components, b_k the number of k-cliques.
inline std::vector<std::size_t> betti(const Graph& g) {
    std::vector<std::size_t> b = clique_counts(g);
    b[0] = component_count(g);
    return b;
}

}  // namespace raag

#endif  // RAAG_STRUCTURE_HPP
