#ifndef RAAG_FAMILIES_HPP
#define RAAG_FAMILIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raag/certificate.hpp"
#include "raag/graph.hpp"

namespace raag {

class FamilyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

using EdgePairs = std::vector<std::pair<std::size_t, std::size_t>>;

inline void add_clique(EdgePairs& edges, const std::vector<std::size_t>& vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            edges.emplace_back(vertices[i], vertices[j]);
        }
    }
}

/// Union of edge lists with repeats removed.
inline Graph graph_from_union(std::size_t n, EdgePairs edges) {
    for (auto& e : edges) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(n, edges);
}

inline Graph make_clique_string(int size, int count) {
    if (size < 4 || size > 7) {
        throw FamilyError("clique-string: clique size must be 4..7, got " + std::to_string(size));
    }
    if (count < 1) {
        throw FamilyError("clique-string: count must be at least 1");
    }
    const std::size_t step = static_cast<std::size_t>(size - 2);
    const std::size_t n = step * static_cast<std::size_t>(count) + 2;
    EdgePairs edges;
    for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
        std::vector<std::size_t> members;
        for (std::size_t v = 0; v < static_cast<std::size_t>(size); ++v) {
            members.push_back(step * i + v);
        }
        add_clique(edges, members);
    }
    return graph_from_union(n, std::move(edges));
}

/// Vertices 0..count+2 with i~j whenever |i-j| <= 3; the 4-cliques are the windows {i..i+3}.
inline Graph make_face_string(int count) {
    if (count < 1) {
        throw FamilyError("face-string: count must be at least 1");
    }
    const std::size_t n = static_cast<std::size_t>(count) + 3;
    EdgePairs edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n && j <= i + 3; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

/// Lattice points are the corners of the cells, numbered in (y, x) order.
inline Graph make_grid(const std::vector<family::Cell>& cells) {
    if (cells.empty()) {
        throw FamilyError("grid: at least one cell is required");
    }
    std::map<std::pair<int, int>, std::size_t> index;  // (y, x) -> vertex
    for (const auto& c : cells) {
        for (int dy = 0; dy <= 1; ++dy) {
            for (int dx = 0; dx <= 1; ++dx) {
                index.emplace(std::make_pair(c.y + dy, c.x + dx), 0);
            }
        }
    }
    std::size_t next = 0;
    for (auto& [point, id] : index) {
        id = next++;
    }
    EdgePairs edges;
    for (const auto& c : cells) {
        add_clique(edges, {index.at({c.y, c.x}), index.at({c.y, c.x + 1}), index.at({c.y + 1, c.x}),
                           index.at({c.y + 1, c.x + 1})});
    }
    return graph_from_union(index.size(), std::move(edges));
}

/// Points (j, r) of the triangular lattice with r = 0..side and j = 0..side-r, numbered
/// row by row. Unit neighbours and second neighbours (distance sqrt 3) are joined.
inline Graph make_hex_triangle(int side) {
    if (side < 1) {
        throw FamilyError("hex: side must be at least 1");
    }
    std::map<std::pair<int, int>, std::size_t> index;  // (r, j) -> vertex
    std::size_t next = 0;
    for (int r = 0; r <= side; ++r) {
        for (int j = 0; j <= side - r; ++j) {
            index.emplace(std::make_pair(r, j), next++);
        }
    }
    static constexpr int kSteps[12][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1},
                                          {1, 1}, {-1, -1}, {2, -1}, {-2, 1}, {1, -2}, {-1, 2}};
    EdgePairs edges;
    for (const auto& [point, id] : index) {
        const auto [r, j] = point;
        for (const auto& step : kSteps) {
            auto it = index.find({r + step[1], j + step[0]});
            if (it != index.end() && id < it->second) {
                edges.emplace_back(id, it->second);
            }
        }
    }
    return Graph::from_edges(index.size(), edges);
}

inline Graph make_five_four_edge() {
    EdgePairs edges;
    add_clique(edges, {0, 1, 2, 3, 4});
    add_clique(edges, {3, 4, 5, 6});
    return graph_from_union(7, std::move(edges));
}

}  // namespace detail

/// Builds the catalog graph described by `cert` and attaches the certificate.
/// Vertex numbering:
///   clique-string size s: clique i holds vertices (s-2)i .. (s-2)i+s-1;
///   face-string: path cube on count+3 vertices;
///   grid: cell corners in (y, x) order;
///   hex: lattice rows bottom to top;
///   five-four-edge: 5-clique {0..4}, 4-clique {3,4,5,6}.
inline Graph generate_family(const FamilyCertificate& cert) {
    using namespace family;
    Graph g = std::visit(
        [](const auto& c) -> Graph {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Edgeless>) {
                return Graph(c.n);
            } else if constexpr (std::is_same_v<T, Complete>) {
                detail::EdgePairs edges;
                std::vector<std::size_t> all(c.n);
                for (std::size_t v = 0; v < c.n; ++v) {
                    all[v] = v;
                }
                detail::add_clique(edges, all);
                return Graph::from_edges(c.n, edges);
            } else if constexpr (std::is_same_v<T, CliqueEdgeString>) {
                return detail::make_clique_string(c.clique_size, c.count);
            } else if constexpr (std::is_same_v<T, FaceString>) {
                return detail::make_face_string(c.count);
            } else if constexpr (std::is_same_v<T, Grid>) {
                return detail::make_grid(c.cells);
            } else if constexpr (std::is_same_v<T, HexThickTriangle>) {
                return detail::make_hex_triangle(c.side);
            } else {
                return detail::make_five_four_edge();
            }
        },
        cert);
    return g.with_certificate(cert);
}

namespace detail {

/// Joint colour refinement of two graphs; colour ids are shared so classes are comparable.
class JointRefiner {
public:
    JointRefiner(const Graph& a, const Graph& b) : a_(a), b_(b) {}

    /// Refines to a stable partition. Returns false if the colour histograms diverge.
    bool refine(std::vector<std::size_t>& ca, std::vector<std::size_t>& cb) const {
        std::size_t classes = count_classes(ca, cb);
        while (true) {
            using Signature = std::pair<std::size_t, std::vector<std::size_t>>;
            auto signatures = [](const Graph& g, const std::vector<std::size_t>& c) {
                std::vector<Signature> out(g.vertex_count());
                for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                    out[v].first = c[v];
                    const BitVector& nb = g.neighbors(v);
                    for (std::size_t w = nb.find_first(); w < nb.size(); w = nb.find_next(w + 1)) {
                        out[v].second.push_back(c[w]);
                    }
                    std::sort(out[v].second.begin(), out[v].second.end());
                }
                return out;
            };
            const auto sa = signatures(a_, ca);
            const auto sb = signatures(b_, cb);
            std::vector<Signature> all(sa);
            all.insert(all.end(), sb.begin(), sb.end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            auto id = [&](const Signature& s) {
                return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), s) - all.begin());
            };
            for (std::size_t v = 0; v < ca.size(); ++v) {
                ca[v] = id(sa[v]);
            }
            for (std::size_t v = 0; v < cb.size(); ++v) {
                cb[v] = id(sb[v]);
            }
            std::vector<std::size_t> ha(all.size(), 0);
            std::vector<std::size_t> hb(all.size(), 0);
            for (auto c : ca) {
                ++ha[c];
            }
            for (auto c : cb) {
                ++hb[c];
            }
            if (ha != hb) {
                return false;
            }
            if (all.size() == classes) {
                return true;
            }
            classes = all.size();
        }
    }

private:
    static std::size_t count_classes(const std::vector<std::size_t>& ca, const std::vector<std::size_t>& cb) {
        std::vector<std::size_t> all(ca);
        all.insert(all.end(), cb.begin(), cb.end());
        std::sort(all.begin(), all.end());
        return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
    }

    const Graph& a_;
    const Graph& b_;
};

class IsomorphismSearch {
public:
    IsomorphismSearch(const Graph& a, const Graph& b, std::size_t budget) : a_(a), b_(b), refiner_(a, b), budget_(budget) {}

    std::optional<std::vector<std::size_t>> run() {
        std::vector<std::size_t> ca(a_.vertex_count(), 0);
        std::vector<std::size_t> cb(b_.vertex_count(), 0);
        return search(ca, cb);
    }

private:
    std::optional<std::vector<std::size_t>> search(std::vector<std::size_t> ca, std::vector<std::size_t> cb) {
        if (budget_ == 0) {
            return std::nullopt;
        }
        --budget_;
        if (!refiner_.refine(ca, cb)) {
            return std::nullopt;
        }
        // smallest colour class with more than one member in a
        std::map<std::size_t, std::size_t> size;
        for (auto c : ca) {
            ++size[c];
        }
        std::optional<std::size_t> target;
        for (const auto& [c, s] : size) {
            if (s > 1 && (!target || s < size[*target])) {
                target = c;
            }
        }
        if (!target) {
            std::vector<std::size_t> map(ca.size());
            std::vector<std::size_t> by_colour(cb.size());
            for (std::size_t w = 0; w < cb.size(); ++w) {
                by_colour[cb[w]] = w;
            }
            for (std::size_t v = 0; v < ca.size(); ++v) {
                map[v] = by_colour[ca[v]];
            }
            for (const Edge& e : a_.edges()) {
                if (!b_.adjacent(map[e.u], map[e.v])) {
                    return std::nullopt;
                }
            }
            return map;
        }
        const std::size_t fresh = ca.size() + cb.size();
        const auto v = static_cast<std::size_t>(std::find(ca.begin(), ca.end(), *target) - ca.begin());
        for (std::size_t w = 0; w < cb.size(); ++w) {
            if (cb[w] != *target) {
                continue;
            }
            auto na = ca;
            auto nb = cb;
            na[v] = fresh;
            nb[w] = fresh;
            if (auto found = search(std::move(na), std::move(nb))) {
                return found;
            }
            if (budget_ == 0) {
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    const Graph& a_;
    const Graph& b_;
    JointRefiner refiner_;
    std::size_t budget_;
};

}  // namespace detail

/// Vertex map a -> b preserving adjacency, found by colour refinement with
/// individualisation. Gives up (nullopt) after `budget` search nodes.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& a, const Graph& b,
                                                                std::size_t budget = 200000) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
        return std::nullopt;
    }
    return detail::IsomorphismSearch(a, b, budget).run();
}

inline bool are_isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

/// Structural recognition of the parametric catalog (edgeless, complete, clique
/// strings of 4..7-cliques, face strings, five-four-edge). Candidates are chosen
/// from vertex and edge counts, regenerated, and confirmed by isomorphism.
/// Grid and hex graphs are not recognised. The result is normalized.
inline std::optional<FamilyCertificate> recognize_family(const Graph& g) {
    using namespace family;
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    if (m == 0) {
        return normalize(Edgeless{n});
    }
    if (m == n * (n - 1) / 2) {
        return normalize(Complete{n});
    }
    std::vector<FamilyCertificate> candidates;
    for (int s = 4; s <= 7; ++s) {
        const std::size_t step = static_cast<std::size_t>(s - 2);
        if (n < 2 || (n - 2) % step != 0) {
            continue;
        }
        const std::size_t k = (n - 2) / step;
        const std::size_t per = static_cast<std::size_t>(s * (s - 1) / 2 - 1);
        if (k >= 2 && m == per * k + 1) {
            candidates.push_back(CliqueEdgeString{s, static_cast<int>(k)});
        }
    }
    if (n >= 5 && m == 3 * (n - 3) + 3) {
        candidates.push_back(FaceString{static_cast<int>(n - 3)});
    }
    if (n == 7 && m == 15) {
        candidates.push_back(FiveFourEdge{});
    }
    for (const auto& c : candidates) {
        if (are_isomorphic(g, generate_family(c))) {
            return normalize(c);
        }
    }
    return std::nullopt;
}

}  // namespace raag

#endif  // RAAG_FAMILIES_HPP
