#ifndef RAAG_GRAPH_HPP
#define RAAG_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raag/bits.hpp"
#include "raag/certificate.hpp"

namespace raag {

using Vertex = std::uint32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
public:
    enum class Kind { SelfLoop, DuplicateEdge, OutOfRange, LabelCount };

    GraphError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Finite simple graph presenting a right-angled Artin group: one generator per
/// vertex, one commutator relation per edge. Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Edgeless graph on n vertices.
    explicit Graph(std::size_t n) : n_(n), adj_(n, BitVector(n)) {}

    /// Throws GraphError on self-loops, repeated edges (in either orientation) and
    /// endpoints outside [0, n).
    static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
        Graph g(n);
        for (const auto& [a, b] : edges) {
            if (a >= n || b >= n) {
                throw GraphError(GraphError::Kind::OutOfRange, "edge (" + std::to_string(a) + "," +
                                                                   std::to_string(b) + ") outside vertex range 0.." +
                                                                   std::to_string(n == 0 ? 0 : n - 1));
            }
            if (a == b) {
                throw GraphError(GraphError::Kind::SelfLoop, "self-loop at vertex " + std::to_string(a));
            }
            if (g.adj_[a].test(b)) {
                throw GraphError(GraphError::Kind::DuplicateEdge,
                                 "duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
            g.adj_[a].set(b);
            g.adj_[b].set(a);
        }
        g.rebuild_edges();
        return g;
    }

    static Graph from_edges(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
        return from_edges(n, std::span<const std::pair<std::size_t, std::size_t>>(edges.begin(), edges.size()));
    }

    /// Builds from a 0/1 adjacency matrix that is already known to be symmetric
    /// with an empty diagonal.
    static Graph from_adjacency(const std::vector<BitVector>& rows) {
        Graph g(rows.size());
        g.adj_ = rows;
        g.rebuild_edges();
        return g;
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool adjacent(std::size_t a, std::size_t b) const { return adj_[a].test(b); }
    const BitVector& neighbors(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return adj_[v].count(); }

    /// Edges in lexicographic order of (u, v) with u < v.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Position of edge {a,b} in edges(), if present.
    std::optional<std::size_t> edge_index(std::size_t a, std::size_t b) const {
        if (a > b) {
            std::swap(a, b);
        }
        const Edge key{static_cast<Vertex>(a), static_cast<Vertex>(b)};
        auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it == edges_.end() || *it != key) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - edges_.begin());
    }

    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

    /// Display name of a vertex: its label, or the 1-based index "s<i+1>".
    std::string display_name(std::size_t v) const {
        return has_labels() ? labels_[v] : "s" + std::to_string(v + 1);
    }

    const std::optional<FamilyCertificate>& certificate() const { return certificate_; }

    Graph with_labels(std::vector<std::string> labels) const {
        if (!labels.empty() && labels.size() != n_) {
            throw GraphError(GraphError::Kind::LabelCount, "expected " + std::to_string(n_) + " labels, got " +
                                                               std::to_string(labels.size()));
        }
        Graph g = *this;
        g.labels_ = std::move(labels);
        return g;
    }

    Graph with_certificate(std::optional<FamilyCertificate> cert) const {
        Graph g = *this;
        g.certificate_ = std::move(cert);
        return g;
    }

    /// Subgraph induced on `vertices`; vertex i of the result is vertices[i].
    /// Labels carry over, the certificate does not.
    Graph induced(std::span<const std::size_t> vertices) const {
        Graph g(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) {
                if (adjacent(vertices[i], vertices[j])) {
                    g.adj_[i].set(j);
                    g.adj_[j].set(i);
                }
            }
        }
        g.rebuild_edges();
        if (has_labels()) {
            for (std::size_t v : vertices) {
                g.labels_.push_back(labels_[v]);
            }
        }
        return g;
    }

    /// Same vertices with `removed` edges deleted. Labels carry over.
    Graph without_edges(std::span<const Edge> removed) const {
        Graph g = *this;
        for (const Edge& e : removed) {
            g.adj_[e.u].reset(e.v);
            g.adj_[e.v].reset(e.u);
        }
        g.rebuild_edges();
        g.certificate_.reset();
        return g;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_ && a.certificate_ == b.certificate_;
    }

    /// Structural equality: same vertex count and edge set, ignoring labels and certificate.
    bool same_structure(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    void rebuild_edges() {
        edges_.clear();
        for (std::size_t u = 0; u < n_; ++u) {
            for (std::size_t v = adj_[u].find_next(u + 1); v < n_; v = adj_[u].find_next(v + 1)) {
                edges_.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            }
        }
    }

    std::size_t n_ = 0;
    std::vector<BitVector> adj_;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::optional<FamilyCertificate> certificate_;
};

}  // namespace raag

#endif  // RAAG_GRAPH_HPP
