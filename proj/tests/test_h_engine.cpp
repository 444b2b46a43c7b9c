#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "raag/families.hpp"
#include "raag/h_engine.hpp"
#include "raag/structure.hpp"
#include "raag/testing/corpus.hpp"
#include "support.hpp"

using namespace raag;

namespace {

void check_sandwich(const HBounds& b) {
    CHECK(b.lower_trivial <= b.lower_cohomological);
    CHECK(b.lower_cohomological <= b.upper);
    if (b.exact) {
        CHECK(b.lower_cohomological <= b.exact->value);
        CHECK(b.exact->value <= b.upper);
    }
    if (b.cohomological_estimate) {
        CHECK(b.lower_cohomological <= *b.cohomological_estimate);
    }
}

std::vector<FamilyCertificate> small_catalog() {
    std::vector<FamilyCertificate> out;
    for (std::size_t n = 0; n <= 6; ++n) {
        out.push_back(family::Complete{n});
    }
    for (int k = 1; k <= 10; ++k) {
        out.push_back(family::CliqueEdgeString{4, k});
        out.push_back(family::FaceString{k});
    }
    for (int k = 1; k <= 3; ++k) {
        out.push_back(family::CliqueEdgeString{5, k});
    }
    out.push_back(family::CliqueEdgeString{6, 1});
    out.push_back(family::FiveFourEdge{});
    out.push_back(family::Grid{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}});
    out.push_back(family::Grid{{{0, 0}, {1, 0}, {2, 0}, {1, 1}}});
    out.push_back(family::Grid{{{0, 0}, {1, 1}}});
    out.push_back(family::HexThickTriangle{2});
    out.push_back(family::HexThickTriangle{3});
    return out;
}

}  // namespace

TEST_CASE("lower bound examples", "[h]") {
    using P = std::pair<std::size_t, std::size_t>;
    CHECK(lower_bound(corpus::two_cliques_sharing_triangle()) == P{9, 12});
    CHECK(lower_bound(corpus::two_cliques_sharing_edge()) == P{11, 12});
    CHECK(lower_bound(corpus::boxes()) == P{24, 26});
    SolverConfig small;
    small.cap = 1;
    CHECK_THROWS_AS(lower_bound(corpus::two_cliques_sharing_triangle(), small, true), CapExceeded);
    CHECK(lower_bound(corpus::two_cliques_sharing_triangle(), small).second <= 12);
}

TEST_CASE("upper bound examples", "[h]") {
    CHECK(upper_bound(test::complete(3)) == 6);
    CHECK(upper_bound(corpus::two_cliques_sharing_triangle()) == 18);
    CHECK(upper_bound(Graph(5)) == 0);
}

TEST_CASE("free abelian values", "[h]") {
    CHECK(h_free_abelian(0) == 0);
    CHECK(h_free_abelian(1) == 0);
    CHECK(h_free_abelian(3) == 6);
    CHECK(h_free_abelian(4) == 6);
    CHECK(h_free_abelian(5) == 14);
    for (std::size_t n = 6; n <= 10; ++n) {
        const std::size_t c = test::binomial(n, 2);
        CHECK(h_free_abelian(n) == c + c % 2);
    }
}

TEST_CASE("catalog closed forms", "[h]") {
    CHECK(h_family(family::FaceString{4}) == std::optional<ExactValue>{{18, Provenance::StringThm}});
    CHECK(h_family(family::FaceString{3}) == std::optional<ExactValue>{{14, Provenance::StringThm}});
    CHECK(h_family(family::CliqueEdgeString{5, 3}) == std::optional<ExactValue>{{38, Provenance::CliqueString5}});
    CHECK(h_family(family::CliqueEdgeString{6, 1})->value == 16);
    CHECK(clique_string_h(6, 1).value == 16);
    CHECK(clique_string_h(6, 3) == ExactValue{44, Provenance::CliqueString6});
    CHECK(clique_string_h(7, 2) == ExactValue{42, Provenance::CliqueString7});
    CHECK(h_family(family::Edgeless{4}) == std::optional<ExactValue>{{0, Provenance::TrivialH4}});
    CHECK(h_family(family::Complete{4}) == std::optional<ExactValue>{{6, Provenance::FreeAbelian}});
    CHECK(h_family(family::FiveFourEdge{})->value == 18);
    CHECK_THROWS_AS(clique_string_h(8, 1), FamilyError);
}

TEST_CASE("closed forms agree with the exhaustive solver", "[h][property]") {
    for (const auto& cert : small_catalog()) {
        INFO(to_string(cert));
        const Graph g = generate_family(cert);
        const M2Result r = compute_m2(g, SolverConfig{});
        REQUIRE(r.b4 <= 16);
        const auto h = h_family(cert);
        REQUIRE(h.has_value());
        CHECK(h->value == 2 * g.edge_count() - r.m2);
        CHECK(h->theorem_grade());
    }
}

TEST_CASE("decomposition examples", "[h][decomposition]") {
    SECTION("the four-piece example") {
        const DecompositionReport d = decompose_h(corpus::breakdown_example());
        CHECK(d.removed_free_edges() == 16);
        CHECK(d.aggregate_exact == std::optional<std::size_t>{62});
        std::size_t b2 = d.removed_free_edges();
        for (const auto& p : d.pieces) {
            b2 += p.report.b2;
        }
        CHECK(b2 == corpus::breakdown_example().edge_count());
    }
    SECTION("two disjoint K4") {
        const Graph g = test::disjoint_union(test::complete(4), test::complete(4));
        const DecompositionReport d = decompose_h(g);
        CHECK(d.removed_free_edges() == 0);
        CHECK(d.pieces.size() == 2);
        CHECK(d.aggregate_exact == std::optional<std::size_t>{12});
        const HReport h = compute_h(g);
        CHECK(h.exact == std::optional<ExactValue>{{12, Provenance::DecompositionAggregate}});
    }
    SECTION("a triangle falls apart into vertices") {
        const DecompositionReport d = decompose_h(test::complete(3));
        CHECK(d.removed_free_edges() == 3);
        CHECK(d.pieces.size() == 3);
        CHECK(d.aggregate_exact == std::optional<std::size_t>{6});
    }
    SECTION("a piece without an exact value leaves only bounds") {
        SolverConfig cfg;
        cfg.cap = 8;
        const Graph g = test::disjoint_union(corpus::boxes(), test::complete(4));
        const DecompositionReport d = decompose_h(g, cfg);
        CHECK_FALSE(d.aggregate_exact.has_value());
        CHECK(d.aggregate_lower <= d.aggregate_upper);
    }
}

TEST_CASE("compute_h examples", "[h]") {
    const HReport path = compute_h(Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(path.exact == std::optional<ExactValue>{{6, Provenance::TrivialH4}});
    CHECK_FALSE(path.decomposition.has_value());

    const HReport k4 = compute_h(test::complete(4));
    CHECK(k4.exact == std::optional<ExactValue>{{6, Provenance::FreeAbelian}});

    const HReport face = compute_h(corpus::two_cliques_sharing_triangle());
    CHECK(face.lower_trivial == 9);
    CHECK(face.lower_cohomological == 12);
    CHECK(face.upper == 18);
    REQUIRE(face.exact.has_value());
    CHECK(face.exact->value == 12);

    const HReport boxes = compute_h(corpus::boxes());
    REQUIRE(boxes.exact.has_value());
    CHECK(boxes.exact->value == 26);
    CHECK(boxes.exact->provenance == Provenance::ConjecturalMinimal);
    CHECK_FALSE(boxes.exact->theorem_grade());

    const HReport breakdown = compute_h(corpus::breakdown_example());
    CHECK(breakdown.exact == std::optional<ExactValue>{{62, Provenance::DecompositionAggregate}});
}

TEST_CASE("beyond the cap the report degrades to bounds", "[h]") {
    SolverConfig cfg;
    cfg.cap = 8;
    cfg.random_samples = 16;
    const HReport r = compute_h(corpus::boxes(), cfg);
    CHECK_FALSE(r.m2.exhaustive);
    CHECK(r.lower_cohomological == 2 * 24 - r.m2.ceiling);
    REQUIRE(r.cohomological_estimate.has_value());
    CHECK(*r.cohomological_estimate == 48 - r.m2.m2);
    CHECK_FALSE(r.exact.has_value());
    CHECK_FALSE(r.notes.empty());
    check_sandwich(r);

    HOptions strict;
    strict.strict = true;
    CHECK_THROWS_AS(compute_h(corpus::boxes(), cfg, strict), CapExceeded);
}

TEST_CASE("certificates are checked before use", "[h]") {
    const Graph wrong = corpus::boxes().with_certificate(family::Complete{8});
    const HReport r = compute_h(wrong);
    CHECK_FALSE(r.family.has_value());
    CHECK(r.exact->provenance == Provenance::ConjecturalMinimal);
    REQUIRE_FALSE(r.notes.empty());
    CHECK(r.notes.front().find("does not match") != std::string::npos);

    const Graph grid = generate_family(family::Grid{{{0, 0}, {1, 0}, {1, 1}}});
    const HReport g = compute_h(grid);
    REQUIRE(g.exact.has_value());
    CHECK(g.exact->provenance == Provenance::GridThm);
}

TEST_CASE("graphs without 4-cliques have h = 2 b2", "[h][property]") {
    std::mt19937_64 rng(71);
    int checked = 0;
    while (checked < 100) {
        const Graph g = test::random_graph(rng, 1 + rng() % 12, 0.3);
        if (!enumerate_cliques(g, 4).empty()) {
            continue;
        }
        ++checked;
        const HReport r = compute_h(g);
        CHECK(r.m2.m2 == 0);
        CHECK(r.lower_cohomological == 2 * g.edge_count());
        CHECK(r.exact == std::optional<ExactValue>{{2 * g.edge_count(), Provenance::TrivialH4}});
    }
}

TEST_CASE("bounds are nested on random graphs", "[h][property]") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 80; ++trial) {
        const Graph g = test::random_graph(rng, 4 + rng() % 9, 0.3 + 0.1 * static_cast<double>(rng() % 5));
        SolverConfig cfg;
        cfg.cap = 12;
        cfg.random_samples = 16;
        const HReport r = compute_h(g, cfg);
        check_sandwich(r);
        if (r.decomposition) {
            CHECK(r.decomposition->aggregate_lower <= r.decomposition->aggregate_upper);
            CHECK(r.decomposition->aggregate_upper == r.upper);
            for (const auto& p : r.decomposition->pieces) {
                check_sandwich(p.report);
            }
        }
    }
}

TEST_CASE("h is additive over disjoint unions of catalog graphs", "[h][property]") {
    const auto catalog = small_catalog();
    for (std::size_t i = 0; i < catalog.size(); i += 3) {
        for (std::size_t j = i + 1; j < catalog.size(); j += 4) {
            const Graph a = generate_family(catalog[i]);
            const Graph b = generate_family(catalog[j]);
            const auto ha = compute_h(a).exact;
            const auto hb = compute_h(b).exact;
            REQUIRE(ha.has_value());
            REQUIRE(hb.has_value());
            const HReport u = compute_h(test::disjoint_union(a, b));
            INFO(to_string(catalog[i]) << " + " << to_string(catalog[j]));
            REQUIRE(u.exact.has_value());
            CHECK(u.exact->value == ha->value + hb->value);
        }
    }
}

TEST_CASE("one more free edge raises the aggregate by two", "[h][property]") {
    std::mt19937_64 rng(79);
    // pieces lose their certificates, so only families the recognizer covers
    std::vector<FamilyCertificate> catalog;
    for (const auto& c : small_catalog()) {
        if (!std::holds_alternative<family::Grid>(c) && !std::holds_alternative<family::HexThickTriangle>(c)) {
            catalog.push_back(c);
        }
    }
    int checked = 0;
    while (checked < 60) {
        Graph g = test::disjoint_union(generate_family(catalog[rng() % catalog.size()]),
                                       generate_family(catalog[rng() % catalog.size()]));
        g = test::disjoint_union(g, test::random_graph(rng, 1 + rng() % 4, 0.4));
        const std::size_t n = g.vertex_count();
        if (n < 2) {
            continue;
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const Edge& e : g.edges()) {
            edges.emplace_back(e.u, e.v);
        }
        const std::size_t u = rng() % n;
        const std::size_t v = rng() % n;
        if (u == v || g.adjacent(u, v)) {
            continue;
        }
        edges.emplace_back(u, v);
        const Graph bigger = Graph::from_edges(n, edges);
        if (edge_in_4clique(bigger, Edge{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))})) {
            continue;
        }
        const auto before = decompose_h(g).aggregate_exact;
        const auto after = decompose_h(bigger).aggregate_exact;
        REQUIRE(before.has_value());
        REQUIRE(after.has_value());
        CHECK(*after == *before + 2);
        ++checked;
    }
}

TEST_CASE("m2 assembled from pieces matches the whole-graph solver", "[h][property]") {
    std::mt19937_64 rng(83);
    int checked = 0;
    while (checked < 80) {
        const Graph g = test::random_graph(rng, 5 + rng() % 10, 0.25 + 0.1 * static_cast<double>(rng() % 4));
        const CupFormTemplate t = build_cup_form(g);
        if (t.clique_count() == 0 || t.clique_count() > 16) {
            continue;
        }
        const HReport r = compute_h(g);
        if (!r.decomposition) {
            continue;
        }
        ++checked;
        const M2Result whole = compute_m2(t, SolverConfig{});
        CHECK(r.m2.m2 == whole.m2);
        CHECK(r.m2.witness == whole.witness);
        CHECK(r.m2.exhaustive);
        CHECK(r.lower_cohomological == 2 * g.edge_count() - whole.m2);
        CHECK(r.lower_cohomological == r.decomposition->aggregate_lower);
    }
}

TEST_CASE("provenance names round-trip", "[h]") {
    for (auto p : {Provenance::TrivialH4, Provenance::FreeAbelian, Provenance::GridThm, Provenance::StringThm,
                   Provenance::HexThm, Provenance::CliqueString5, Provenance::CliqueString6,
                   Provenance::CliqueString7, Provenance::FiveFourEdgeExample, Provenance::DecompositionAggregate,
                   Provenance::ConjecturalMinimal}) {
        CHECK(provenance_from_string(to_string(p)) == p);
    }
    CHECK_THROWS(provenance_from_string("nope"));
}
