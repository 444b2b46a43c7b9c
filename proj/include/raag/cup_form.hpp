#ifndef RAAG_CUP_FORM_HPP
#define RAAG_CUP_FORM_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "raag/bits.hpp"
#include "raag/cliques.hpp"
#include "raag/gf2.hpp"
#include "raag/graph.hpp"

namespace raag {

/// Coefficients over the 4-cliques: bit p is the coefficient of clique p.
using AlphaVector = BitVector;

class FormError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One nonzero template cell: the 4-clique pairing two edges, with its sign.
struct FormEntry {
    std::size_t clique = 0;
    int sign = 1;
    friend bool operator==(const FormEntry&, const FormEntry&) = default;
};

/// Edge pair (row < col) completed to a 4-clique.
struct CliquePairing {
    std::size_t row = 0;
    std::size_t col = 0;
    int sign = 1;
};

/// Symbolic cup-product pairing on degree-2 classes: entry (r, c) names the
/// 4-clique spanned by edges r and c, if any. Symmetric, zero diagonal.
class CupFormTemplate {
public:
    CupFormTemplate() = default;

    std::size_t dim() const { return edges_.size(); }
    const CliqueIndex& edge_index() const { return edges_; }
    const CliqueIndex& clique_index() const { return cliques_; }
    std::size_t clique_count() const { return cliques_.size(); }

    std::optional<FormEntry> entry(std::size_t r, std::size_t c) const {
        const int v = cells_[r * dim() + c];
        if (v == 0) {
            return std::nullopt;
        }
        return FormEntry{static_cast<std::size_t>(std::abs(v)) - 1, v > 0 ? 1 : -1};
    }

    /// The three complementary edge pairs of clique p, in template order.
    const std::array<CliquePairing, 3>& pairings(std::size_t p) const { return pairings_[p]; }

    friend CupFormTemplate build_cup_form(const Graph& g);

private:
    CliqueIndex edges_;
    CliqueIndex cliques_;
    std::vector<int> cells_;  // row-major, 0 absent, else sign * (clique + 1)
    std::vector<std::array<CliquePairing, 3>> pairings_;
};

/// For each 4-clique i<j<k<l: (ij,kl) -> +p, (ik,jl) -> -p, (il,jk) -> +p, symmetrised.
inline CupFormTemplate build_cup_form(const Graph& g) {
    CupFormTemplate t;
    std::vector<Clique> edge_tuples;
    edge_tuples.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        edge_tuples.push_back({e.u, e.v});
    }
    t.edges_ = CliqueIndex(2, std::move(edge_tuples));
    t.cliques_ = enumerate_cliques(g, 4);
    const std::size_t d = t.dim();
    t.cells_.assign(d * d, 0);
    t.pairings_.reserve(t.cliques_.size());
    for (std::size_t p = 0; p < t.cliques_.size(); ++p) {
        const Clique& c = t.cliques_[p];
        auto idx = [&](Vertex a, Vertex b) { return *g.edge_index(a, b); };
        const std::array<CliquePairing, 3> pairs{{
            {idx(c[0], c[1]), idx(c[2], c[3]), +1},
            {idx(c[0], c[2]), idx(c[1], c[3]), -1},
            {idx(c[0], c[3]), idx(c[1], c[2]), +1},
        }};
        const int id = static_cast<int>(p) + 1;
        for (const auto& pr : pairs) {
            t.cells_[pr.row * d + pr.col] = pr.sign * id;
            t.cells_[pr.col * d + pr.row] = pr.sign * id;
        }
        t.pairings_.push_back(pairs);
    }
    return t;
}

inline void check_alpha(const CupFormTemplate& t, const AlphaVector& alpha) {
    if (alpha.size() != t.clique_count()) {
        throw FormError("alpha has length " + std::to_string(alpha.size()) + ", the graph has " +
                        std::to_string(t.clique_count()) + " 4-cliques");
    }
}

/// GF(2) form for one alpha: entry (r, c) is alpha's coefficient on the clique
/// named there. Signs vanish mod 2.
inline Gf2Matrix substitute(const CupFormTemplate& t, const AlphaVector& alpha) {
    check_alpha(t, alpha);
    Gf2Matrix m(t.dim(), t.dim());
    for (std::size_t p = alpha.find_first(); p < alpha.size(); p = alpha.find_next(p + 1)) {
        for (const auto& pr : t.pairings(p)) {
            m.set(pr.row, pr.col);
            m.set(pr.col, pr.row);
        }
    }
    return m;
}

/// Parses a little-endian bit string: character p is the coefficient of clique p.
inline AlphaVector alpha_from_bits(const std::string& bits, std::size_t clique_count) {
    if (bits.size() != clique_count) {
        throw FormError("alpha '" + bits + "' has " + std::to_string(bits.size()) + " bits, expected " +
                        std::to_string(clique_count));
    }
    if (bits.find_first_not_of("01") != std::string::npos) {
        throw FormError("alpha '" + bits + "' must contain only 0 and 1");
    }
    return AlphaVector::from_string(bits);
}

/// Alpha whose bit p is bit p of `code`.
inline AlphaVector alpha_from_code(std::uint64_t code, std::size_t clique_count) {
    AlphaVector a(clique_count);
    for (std::size_t p = 0; p < clique_count && p < 64; ++p) {
        if ((code >> p) & 1U) {
            a.set(p);
        }
    }
    return a;
}

inline AlphaVector all_ones_alpha(std::size_t clique_count) {
    AlphaVector a(clique_count);
    for (std::size_t p = 0; p < clique_count; ++p) {
        a.set(p);
    }
    return a;
}

/// Integer encoding of an alpha of length at most 64.
inline std::uint64_t alpha_code(const AlphaVector& alpha) {
    if (alpha.size() > 64) {
        throw FormError("alpha_code: more than 64 cliques");
    }
    return alpha.size() == 0 ? 0 : alpha.words()[0];
}

/// Edge name in the style z12 / s12; falls back to z{10,11} when single digits
/// are ambiguous or labels exist.
inline std::string edge_name(const Graph& g, const Edge& e, const std::string& prefix = "z") {
    if (!g.has_labels() && g.vertex_count() <= 9) {
        return prefix + std::to_string(e.u + 1) + std::to_string(e.v + 1);
    }
    auto name = [&](Vertex v) { return g.has_labels() ? g.labels()[v] : std::to_string(v + 1); };
    return prefix + "{" + name(e.u) + "," + name(e.v) + "}";
}

/// Sum of edge names over the set bits, e.g. "z12 + z56"; "0" for the zero vector.
inline std::string pretty_vector(const Graph& g, const BitVector& v, const std::string& prefix = "z") {
    std::string out;
    for (std::size_t i = v.find_first(); i < v.size(); i = v.find_next(i + 1)) {
        out += (out.empty() ? "" : " + ") + edge_name(g, g.edges()[i], prefix);
    }
    return out.empty() ? "0" : out;
}

/// Template as text: "0", "+p" or "-p" with 1-based clique numbers, columns
/// right-aligned. With `labels`, a header row and column of edge names.
inline std::string template_to_string(const CupFormTemplate& t, const Graph* labels = nullptr) {
    const std::size_t d = t.dim();
    std::vector<std::string> cells(d * d);
    std::size_t width = 1;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const auto e = t.entry(r, c);
            cells[r * d + c] = e ? (e->sign > 0 ? "+" : "-") + std::to_string(e->clique + 1) : "0";
            width = std::max(width, cells[r * d + c].size());
        }
    }
    std::vector<std::string> names;
    std::size_t name_width = 0;
    if (labels != nullptr) {
        for (const Edge& e : labels->edges()) {
            names.push_back(edge_name(*labels, e, "s"));
            name_width = std::max(name_width, names.back().size());
            width = std::max(width, names.back().size());
        }
    }
    auto pad = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
    std::ostringstream os;
    if (labels != nullptr) {
        os << std::string(name_width, ' ');
        for (std::size_t c = 0; c < d; ++c) {
            os << ' ' << pad(names[c], width);
        }
        os << '\n';
    }
    for (std::size_t r = 0; r < d; ++r) {
        if (labels != nullptr) {
            os << pad(names[r], name_width) << ' ';
        }
        for (std::size_t c = 0; c < d; ++c) {
            os << (c != 0 ? " " : "") << pad(cells[r * d + c], width);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace raag

#endif  // RAAG_CUP_FORM_HPP
