#ifndef RAAG_H_ENGINE_HPP
#define RAAG_H_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "raag/certificate.hpp"
#include "raag/cup_form.hpp"
#include "raag/families.hpp"
#include "raag/graph.hpp"
#include "raag/m2_solver.hpp"
#include "raag/structure.hpp"

namespace raag {

/// Where an exact h value comes from. Everything except ConjecturalMinimal is a theorem.
enum class Provenance {
    TrivialH4,
    FreeAbelian,
    GridThm,
    StringThm,
    HexThm,
    CliqueString5,
    CliqueString6,
    CliqueString7,
    FiveFourEdgeExample,
    DecompositionAggregate,
    ConjecturalMinimal,
};

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::TrivialH4: return "TrivialH4";
        case Provenance::FreeAbelian: return "FreeAbelian";
        case Provenance::GridThm: return "GridThm";
        case Provenance::StringThm: return "StringThm";
        case Provenance::HexThm: return "HexThm";
        case Provenance::CliqueString5: return "CliqueString5";
        case Provenance::CliqueString6: return "CliqueString6";
        case Provenance::CliqueString7: return "CliqueString7";
        case Provenance::FiveFourEdgeExample: return "FiveFourEdgeExample";
        case Provenance::DecompositionAggregate: return "DecompositionAggregate";
        case Provenance::ConjecturalMinimal: return "ConjecturalMinimal";
    }
    return "ConjecturalMinimal";
}

inline Provenance provenance_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(Provenance::ConjecturalMinimal); ++i) {
        const auto p = static_cast<Provenance>(i);
        if (to_string(p) == s) {
            return p;
        }
    }
    throw std::invalid_argument("unknown provenance '" + s + "'");
}

struct ExactValue {
    std::size_t value = 0;
    Provenance provenance = Provenance::ConjecturalMinimal;

    bool theorem_grade() const { return provenance != Provenance::ConjecturalMinimal; }
    friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

/// Bounds and exact value for one graph, without a decomposition.
struct HBounds {
    std::vector<std::size_t> betti;
    std::size_t b1 = 0;
    std::size_t b2 = 0;
    std::size_t b4 = 0;
    M2Result m2;
    std::size_t lower_trivial = 0;
    /// 2 b2 - m2 when m2 is exact; 2 b2 - ceiling otherwise, which stays sound.
    std::size_t lower_cohomological = 0;
    /// 2 b2 - (best rank found) when m2 is not exact. Not a proven bound.
    std::optional<std::size_t> cohomological_estimate;
    std::size_t upper = 0;
    std::optional<ExactValue> exact;
    std::optional<FamilyCertificate> family;
    std::vector<std::string> notes;

    friend bool operator==(const HBounds&, const HBounds&) = default;
};

struct DecompositionPiece {
    Graph graph;
    std::vector<std::size_t> vertices;  // parent vertex of each piece vertex
    HBounds report;

    friend bool operator==(const DecompositionPiece&, const DecompositionPiece&) = default;
};

struct DecompositionReport {
    std::vector<Edge> free_edges;
    std::vector<DecompositionPiece> pieces;
    /// Sum of piece exacts plus 2r, when every piece is theorem-grade.
    std::optional<std::size_t> aggregate_exact;
    /// Sum of piece lower bounds plus 2r; equals the whole graph's cohomological bound.
    std::size_t aggregate_lower = 0;
    std::size_t aggregate_upper = 0;

    std::size_t removed_free_edges() const { return free_edges.size(); }
    friend bool operator==(const DecompositionReport&, const DecompositionReport&) = default;
};

struct HReport : HBounds {
    std::optional<DecompositionReport> decomposition;

    friend bool operator==(const HReport&, const HReport&) = default;
};

struct HOptions {
    /// Raise CapExceeded instead of falling back to heuristic search.
    bool strict = false;
    bool force_heuristic = false;
};

/// h of the free abelian group of rank n: C(n,2) plus its parity, except 6 for n = 3 and 14 for n = 5.
inline std::size_t h_free_abelian(std::size_t n) {
    if (n == 3) {
        return 6;
    }
    if (n == 5) {
        return 14;
    }
    const std::size_t c = n * (n == 0 ? 0 : n - 1) / 2;
    return c + (c % 2);
}

/// Closed form for a string of `count` cliques of `size` vertices sharing edges.
inline ExactValue clique_string_h(int size, int count) {
    const auto k = static_cast<std::size_t>(count);
    switch (size) {
        case 4: return {5 * k + 1 + (k % 2 == 0 ? 1 : 0), Provenance::GridThm};
        case 5: return {12 * k + 2, Provenance::CliqueString5};
        case 6: return {14 * k + 2, Provenance::CliqueString6};
        case 7: return {20 * k + 2, Provenance::CliqueString7};
        default: throw FamilyError("clique-string: clique size must be 4..7, got " + std::to_string(size));
    }
}

/// Closed form for `count` >= 2 4-cliques attached along triangles.
inline ExactValue face_string_h(int count) {
    const auto k = static_cast<std::size_t>(count);
    return {k % 2 == 0 ? 3 * k + 6 : 3 * k + 5, Provenance::StringThm};
}

/// Exact h for a catalog certificate. Grid and hex values come from the solver;
/// grid falls back to the all-ones alpha beyond the cap, hex returns nothing
/// unless the search is certified.
inline std::optional<ExactValue> h_family(const FamilyCertificate& cert, const SolverConfig& cfg = {}) {
    using namespace family;
    const FamilyCertificate c = normalize(cert);
    if (std::holds_alternative<Edgeless>(c)) {
        return ExactValue{0, Provenance::TrivialH4};
    }
    if (const auto* k = std::get_if<Complete>(&c)) {
        return ExactValue{h_free_abelian(k->n), Provenance::FreeAbelian};
    }
    if (const auto* s = std::get_if<CliqueEdgeString>(&c)) {
        return clique_string_h(s->clique_size, s->count);
    }
    if (const auto* f = std::get_if<FaceString>(&c)) {
        return face_string_h(f->count);
    }
    if (std::holds_alternative<FiveFourEdge>(c)) {
        return ExactValue{18, Provenance::FiveFourEdgeExample};
    }
    const Graph g = generate_family(c);
    const CupFormTemplate t = build_cup_form(g);
    if (std::holds_alternative<Grid>(c)) {
        std::size_t m2 = 0;
        if (t.clique_count() <= cfg.cap && t.clique_count() <= 62) {
            m2 = compute_m2(t, cfg).m2;
        } else {
            m2 = RankEvaluator(t).rank(all_ones_alpha(t.clique_count()));
        }
        return ExactValue{2 * t.dim() - m2, Provenance::GridThm};
    }
    const M2Result r = solve_m2(g, t, cfg);
    if (!r.exhaustive) {
        return std::nullopt;
    }
    return ExactValue{2 * t.dim() - r.m2, Provenance::HexThm};
}

/// (b2, 2 b2 - m2). Beyond the cap the second entry uses the rank ceiling
/// unless `strict`, which raises CapExceeded.
inline std::pair<std::size_t, std::size_t> lower_bound(const Graph& g, const SolverConfig& cfg = {},
                                                       bool strict = false) {
    const CupFormTemplate t = build_cup_form(g);
    const M2Result r = strict ? compute_m2(t, cfg) : solve_m2(g, t, cfg);
    const std::size_t b2 = g.edge_count();
    return {b2, 2 * b2 - (r.exhaustive ? r.m2 : r.ceiling)};
}

inline std::size_t upper_bound(const Graph& g) { return 2 * g.edge_count(); }

namespace detail {

inline HBounds bounds_from(const Graph& g, std::size_t b4, M2Result m2) {
    HBounds b;
    b.betti = betti(g);
    b.b1 = g.vertex_count();
    b.b2 = g.edge_count();
    b.b4 = b4;
    b.m2 = std::move(m2);
    b.lower_trivial = b.b2;
    b.upper = 2 * b.b2;
    if (b.m2.exhaustive) {
        b.lower_cohomological = 2 * b.b2 - b.m2.m2;
    } else {
        b.lower_cohomological = 2 * b.b2 - b.m2.ceiling;
        b.cohomological_estimate = 2 * b.b2 - b.m2.m2;
        b.notes.push_back("m2 is a heuristic lower bound; the cohomological bound uses the rank ceiling");
    }
    return b;
}

inline HBounds bounds_only(const Graph& g, const SolverConfig& cfg, const HOptions& opt) {
    const CupFormTemplate t = build_cup_form(g);
    M2Result m2 = opt.strict && !opt.force_heuristic ? compute_m2(t, cfg) : solve_m2(g, t, cfg, opt.force_heuristic);
    return bounds_from(g, t.clique_count(), std::move(m2));
}

/// Certificate attached to the graph when it matches the structure, else the recognised family.
inline std::optional<FamilyCertificate> catalog_match(const Graph& g, std::vector<std::string>& notes) {
    if (g.certificate()) {
        const Graph expected = generate_family(*g.certificate());
        if (expected.same_structure(g) || are_isomorphic(expected, g)) {
            return normalize(*g.certificate());
        }
        notes.push_back("attached certificate '" + to_string(*g.certificate()) + "' does not match the graph");
    }
    return recognize_family(g);
}

/// Bounds plus exact value from the trivial-H4 rule, the catalog, or the conjecture.
inline HBounds evaluate_piece(const Graph& g, const SolverConfig& cfg, const HOptions& opt) {
    HBounds b = bounds_only(g, cfg, opt);
    if (b.b4 == 0) {
        b.exact = ExactValue{2 * b.b2, Provenance::TrivialH4};
        return b;
    }
    b.family = catalog_match(g, b.notes);
    if (b.family) {
        b.exact = h_family(*b.family, cfg);
    }
    if (!b.exact && b.m2.exhaustive) {
        b.exact = ExactValue{b.lower_cohomological, Provenance::ConjecturalMinimal};
    }
    return b;
}

}  // namespace detail

/// Removes edges lying in no 4-clique, splits what is left at cut vertices into
/// biconnected blocks (isolated vertices become single-vertex pieces) and
/// evaluates every piece on its own.
inline DecompositionReport decompose_h(const Graph& g, const SolverConfig& cfg = {}, const HOptions& opt = {}) {
    DecompositionReport d;
    d.free_edges = classify_edges(g).free;
    const Graph core = g.without_edges(d.free_edges);
    std::vector<Subgraph> blocks = biconnected_blocks(core);
    d.pieces.resize(blocks.size());

    const std::size_t workers = std::min(cfg.resolved_workers(), blocks.size());
    auto eval = [&](std::size_t i, const SolverConfig& c) {
        d.pieces[i].report = detail::evaluate_piece(blocks[i].graph, c, opt);
        d.pieces[i].graph = std::move(blocks[i].graph);
        d.pieces[i].vertices = std::move(blocks[i].vertices);
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            eval(i, cfg);
        }
    } else {
        SolverConfig inner = cfg;
        inner.workers = 1;
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < blocks.size(); i = next.fetch_add(1)) {
                    eval(i, inner);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    const std::size_t r = d.free_edges.size();
    bool all_theorem = true;
    std::size_t sum = 0;
    d.aggregate_lower = 2 * r;
    d.aggregate_upper = 2 * r;
    for (const auto& p : d.pieces) {
        d.aggregate_lower += p.report.lower_cohomological;
        d.aggregate_upper += p.report.upper;
        if (p.report.exact && p.report.exact->theorem_grade()) {
            sum += p.report.exact->value;
        } else {
            all_theorem = false;
        }
    }
    if (all_theorem) {
        d.aggregate_exact = sum + 2 * r;
    }
    return d;
}

/// m2 of the whole graph from its decomposition. Every 4-clique and every
/// edge in a 4-clique lies in exactly one piece, so the form is a direct sum
/// over pieces: ranks add, and the smallest maximising code is the union of
/// the pieces' smallest maximising codes.
inline M2Result assemble_m2(const CupFormTemplate& t, const DecompositionReport& d) {
    M2Result r;
    r.b2 = t.dim();
    r.b4 = t.clique_count();
    r.ceiling = RankEvaluator(t).ceiling();
    r.witness = AlphaVector(r.b4);
    r.exhaustive = true;
    r.mode = SolverMode::Exhaustive;
    for (const auto& p : d.pieces) {
        const M2Result& pm = p.report.m2;
        r.m2 += pm.m2;
        r.evaluations += pm.evaluations;
        r.exhaustive = r.exhaustive && pm.exhaustive;
        if (pm.mode == SolverMode::Heuristic) {
            r.mode = SolverMode::Heuristic;
        }
        if (pm.b4 == 0) {
            continue;
        }
        const CliqueIndex local = enumerate_cliques(p.graph, 4);
        for (std::size_t q = pm.witness.find_first(); q < pm.witness.size(); q = pm.witness.find_next(q + 1)) {
            Clique mapped;
            for (Vertex v : local[q]) {
                mapped.push_back(static_cast<Vertex>(p.vertices[v]));
            }
            std::sort(mapped.begin(), mapped.end());
            r.witness.set(*t.clique_index().position(mapped));
        }
    }
    r.radical_dim = r.b2 - r.m2;
    return r;
}

/// Full report. Exact value, in order of preference: 2 b2 when there are no
/// 4-cliques, the catalog value, the decomposition aggregate, and finally the
/// conjectured 2 b2 - m2 (flagged ConjecturalMinimal) when m2 is exact.
/// A graph with free edges or several blocks takes m2 from its pieces.
inline HReport compute_h(const Graph& g, const SolverConfig& cfg = {}, const HOptions& opt = {}) {
    HReport report;
    const CupFormTemplate t = build_cup_form(g);
    const bool split = t.clique_count() > 0 && (!classify_edges(g).free.empty() || biconnected_blocks(g).size() > 1);
    if (split) {
        report.decomposition = decompose_h(g, cfg, opt);
        static_cast<HBounds&>(report) =
            detail::bounds_from(g, t.clique_count(), assemble_m2(t, *report.decomposition));
        if (report.decomposition->aggregate_lower > report.lower_cohomological) {
            report.lower_cohomological = report.decomposition->aggregate_lower;
            report.notes.push_back("cohomological bound raised to the sum over decomposition pieces");
        }
    } else {
        static_cast<HBounds&>(report) = detail::bounds_only(g, cfg, opt);
    }
    if (report.b4 == 0) {
        report.exact = ExactValue{2 * report.b2, Provenance::TrivialH4};
    } else {
        report.family = detail::catalog_match(g, report.notes);
        if (report.family) {
            report.exact = h_family(*report.family, cfg);
        }
    }
    if (!report.exact && report.decomposition && report.decomposition->aggregate_exact) {
        report.exact = ExactValue{*report.decomposition->aggregate_exact, Provenance::DecompositionAggregate};
    }
    if (!report.exact && report.m2.exhaustive) {
        report.exact = ExactValue{report.lower_cohomological, Provenance::ConjecturalMinimal};
    }
    return report;
}

}  // namespace raag

#endif  // RAAG_H_ENGINE_HPP
