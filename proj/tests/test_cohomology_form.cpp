#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "raag/bits.hpp"
#include "raag/cliques.hpp"
#include "raag/cup_form.hpp"
#include "raag/families.hpp"
#include "raag/gf2.hpp"
#include "raag/m2_solver.hpp"
#include "raag/testing/corpus.hpp"
#include "raag/testing/reference.hpp"
#include "support.hpp"

using namespace raag;

namespace {

std::size_t span_rank(const std::vector<BitVector>& vs, std::size_t dim) {
    Gf2Matrix m(vs.size(), dim);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j : vs[i].indices()) {
            m.set(i, j);
        }
    }
    return rank_gf2(m);
}

reference::IntMatrix to_int(const Gf2Matrix& m) {
    reference::IntMatrix out(m.rows(), std::vector<long>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[r][c] = m.get(r, c) ? 1 : 0;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("bit vectors", "[bits]") {
    BitVector v = BitVector::from_string("0110");
    CHECK(v.size() == 4);
    CHECK(v.count() == 2);
    CHECK(v.test(1));
    CHECK_FALSE(v.test(0));
    CHECK(v.to_string() == "0110");
    CHECK(v.find_first() == 1);
    CHECK(v.find_next(2) == 2);
    CHECK(v.find_next(3) == 4);
    CHECK(v.indices() == std::vector<std::size_t>{1, 2});
    BitVector w = BitVector::unit(4, 2);
    CHECK(v.dot(w));
    v ^= w;
    CHECK(v.to_string() == "0100");
    BitVector big(130);
    big.set(129);
    big.set(64);
    CHECK(big.count() == 2);
    CHECK(big.find_first() == 64);
    CHECK(big.find_next(65) == 129);
}

TEST_CASE("template of two cliques sharing a triangle", "[form]") {
    const Graph g = corpus::two_cliques_sharing_triangle();
    const CupFormTemplate t = build_cup_form(g);
    REQUIRE(t.dim() == 9);
    REQUIRE(t.clique_count() == 2);
    auto at = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return t.entry(*g.edge_index(a, b), *g.edge_index(c, d));
    };
    for (auto [a, b, c, d] : {std::array<std::size_t, 4>{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}) {
        REQUIRE(at(a, b, c, d).has_value());
        CHECK(at(a, b, c, d)->clique == 0);
        CHECK(at(c, d, a, b)->clique == 0);
    }
    for (auto [a, b, c, d] : {std::array<std::size_t, 4>{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}}) {
        REQUIRE(at(a, b, c, d).has_value());
        CHECK(at(a, b, c, d)->clique == 1);
    }
    CHECK(at(0, 1, 0, 2) == std::nullopt);
    CHECK(at(0, 2, 1, 3)->sign == -1);
    CHECK(at(0, 1, 2, 3)->sign == 1);
    const std::string text = template_to_string(t);
    CHECK(text.substr(0, text.find('\n')) == " 0  0  0  0  0  0 +1  0  0");
}

TEST_CASE("template shapes of small graphs", "[form]") {
    const CupFormTemplate tri = build_cup_form(test::complete(3));
    CHECK(tri.dim() == 3);
    CHECK(tri.clique_count() == 0);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK_FALSE(tri.entry(r, c).has_value());
        }
    }
    const Graph k4 = test::complete(4);
    const CupFormTemplate t = build_cup_form(k4);
    CHECK(t.dim() == 6);
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 6; ++c) {
            if (auto e = t.entry(r, c)) {
                ++nonzero;
                CHECK(e->clique == 0);
                const Edge x = k4.edges()[r];
                const Edge y = k4.edges()[c];
                CHECK(std::set<Vertex>{x.u, x.v, y.u, y.v}.size() == 4);
            }
        }
    }
    CHECK(nonzero == 6);
}

TEST_CASE("substitute examples", "[form]") {
    const Graph g = corpus::two_cliques_sharing_triangle();
    const CupFormTemplate t = build_cup_form(g);
    const Gf2Matrix first = substitute(t, alpha_from_bits("10", 2));
    CHECK(rank_gf2(first) == 6);
    CHECK(kernel_basis(first).size() == 3);
    CHECK(substitute(t, alpha_from_bits("00", 2)).is_zero());
    const CupFormTemplate t45 = build_cup_form(corpus::two_cliques_sharing_edge());
    CHECK(kernel_basis(substitute(t45, alpha_from_bits("11", 2))).size() == 1);
    CHECK_THROWS_AS(substitute(t, alpha_from_bits("1", 1)), FormError);
    CHECK_THROWS_AS(alpha_from_bits("101", 2), FormError);
    CHECK_THROWS_AS(alpha_from_bits("1x", 2), FormError);
}

TEST_CASE("rank examples", "[gf2]") {
    CHECK(rank_gf2(Gf2Matrix(9, 9)) == 0);
    const Graph g = corpus::two_cliques_sharing_triangle();
    CHECK(rank_gf2(substitute(build_cup_form(g), alpha_from_bits("11", 2))) == 6);
    CHECK(rank_gf2(substitute(build_cup_form(test::complete(4)), alpha_from_bits("1", 1))) == 6);
    CHECK(rank_gf2(Gf2Matrix::identity(5)) == 5);
    CHECK(rank_gf2(Gf2Matrix::from_rows({"110", "011", "101"})) == 2);
    CHECK_THROWS_AS(Gf2Matrix::from_rows({"11", "1"}), Gf2Error);
}

TEST_CASE("kernel examples", "[gf2]") {
    const Graph g = corpus::two_cliques_sharing_triangle();
    const auto k = kernel_basis(substitute(build_cup_form(g), alpha_from_bits("11", 2)));
    REQUIRE(k.size() == 3);
    std::vector<BitVector> published = {BitVector::from_string("001000001"), BitVector::from_string("010000010"),
                                        BitVector::from_string("100001000")};
    std::vector<BitVector> both = k;
    both.insert(both.end(), published.begin(), published.end());
    CHECK(span_rank(published, 9) == 3);
    CHECK(span_rank(both, 9) == 3);

    const Radical r = radical_at(corpus::two_cliques_sharing_edge(), alpha_from_bits("11", 2));
    CHECK(r.pretty == std::vector<std::string>{"z12 + z56"});

    const auto zero = kernel_basis(Gf2Matrix(4, 4));
    REQUIRE(zero.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(zero[i] == BitVector::unit(4, i));
    }
}

TEST_CASE("symplectic reduction examples", "[gf2]") {
    const auto k4 = symplectic_reduce(substitute(build_cup_form(test::complete(4)), alpha_from_bits("1", 1)));
    CHECK(k4.hyperbolic_pairs.size() == 3);
    CHECK(k4.radical.empty());
    const auto ex = symplectic_reduce(
        substitute(build_cup_form(corpus::two_cliques_sharing_triangle()), alpha_from_bits("11", 2)));
    CHECK(ex.hyperbolic_pairs.size() == 3);
    CHECK(ex.radical.size() == 3);
    CHECK(ex.rank() == 6);
    const auto z = symplectic_reduce(Gf2Matrix(3, 3));
    CHECK(z.hyperbolic_pairs.empty());
    CHECK(z.radical.size() == 3);
    CHECK_THROWS_AS(symplectic_reduce(Gf2Matrix::identity(2)), Gf2Error);
    CHECK_THROWS_AS(symplectic_reduce(Gf2Matrix::from_rows({"01", "00"})), Gf2Error);
}

TEST_CASE("maximal isotropic examples", "[gf2]") {
    const Graph k4 = test::complete(4);
    const Gf2Matrix m = substitute(build_cup_form(k4), alpha_from_bits("1", 1));
    const auto iso = max_isotropic(m);
    CHECK(iso.size() == 3);
    for (const auto& x : iso) {
        for (const auto& y : iso) {
            CHECK_FALSE(m.bilinear(x, y));
        }
    }
    const Graph face = generate_family(family::FaceString{2});
    const M2Result r = compute_m2(face, SolverConfig{});
    CHECK(max_isotropic(substitute(build_cup_form(face), r.witness)).size() == 6);
    CHECK(max_isotropic(Gf2Matrix(5, 5)).size() == 5);
}

TEST_CASE("edge and vector naming", "[form]") {
    const Graph g = corpus::two_cliques_sharing_edge();
    CHECK(edge_name(g, g.edges()[0]) == "z12");
    CHECK(pretty_vector(g, BitVector(g.edge_count())) == "0");
    const Graph big = Graph::from_edges(11, {{9, 10}});
    CHECK(edge_name(big, big.edges()[0]) == "z{10,11}");
    const Graph labelled = g.with_labels({"a", "b", "c", "d", "e", "f"});
    CHECK(edge_name(labelled, labelled.edges()[0], "s") == "s{a,b}");
}

TEST_CASE("template entries name exactly one 4-clique", "[form][property]") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = test::random_graph(rng, 4 + rng() % 9, 0.6);
        const CupFormTemplate t = build_cup_form(g);
        const auto quads = reference::brute_force_cliques(g, 4);
        REQUIRE(t.clique_count() == quads.size());
        std::size_t nonzero = 0;
        for (std::size_t r = 0; r < t.dim(); ++r) {
            for (std::size_t c = 0; c < t.dim(); ++c) {
                const auto e = t.entry(r, c);
                const auto mirror = t.entry(c, r);
                REQUIRE(e.has_value() == mirror.has_value());
                if (!e) {
                    continue;
                }
                ++nonzero;
                CHECK(e->clique == mirror->clique);
                const Edge x = g.edges()[r];
                const Edge y = g.edges()[c];
                std::vector<std::size_t> quad = {x.u, x.v, y.u, y.v};
                std::sort(quad.begin(), quad.end());
                CHECK(std::count(quads.begin(), quads.end(), quad) == 1);
                CHECK(quads[e->clique] == quad);
            }
        }
        CHECK(nonzero == 6 * quads.size());
    }
}

TEST_CASE("signed template agrees with the reference construction", "[form][property]") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = test::random_graph(rng, 4 + rng() % 8, 0.6);
        const CupFormTemplate t = build_cup_form(g);
        const auto ref = reference::create_matrix(reference::adjacency(g));
        for (std::size_t r = 0; r < t.dim(); ++r) {
            for (std::size_t c = 0; c < t.dim(); ++c) {
                const auto e = t.entry(r, c);
                const long v = e ? e->sign * static_cast<long>(e->clique + 1) : 0;
                REQUIRE(v == ref[r][c]);
            }
        }
    }
}

TEST_CASE("substituted forms: rank, kernel and isotropic subspaces", "[form][gf2][property]") {
    std::mt19937_64 rng(41);
    std::size_t pairs = 0;
    while (pairs < 300) {
        const Graph g = test::random_graph(rng, 4 + rng() % 9, 0.65);
        const CupFormTemplate t = build_cup_form(g);
        if (t.clique_count() == 0 || t.clique_count() > 40) {
            continue;
        }
        for (int s = 0; s < 4; ++s, ++pairs) {
            AlphaVector alpha(t.clique_count());
            for (std::size_t p = 0; p < alpha.size(); ++p) {
                alpha.assign(p, rng() & 1U);
            }
            const Gf2Matrix m = substitute(t, alpha);
            REQUIRE(m.is_alternating());
            const std::size_t rank = rank_gf2(m);
            CHECK(rank % 2 == 0);
            const auto kernel = kernel_basis(m);
            CHECK(rank + kernel.size() == g.edge_count());
            CHECK(span_rank(kernel, g.edge_count()) == kernel.size());
            for (const auto& v : kernel) {
                CHECK(m.apply(v).none());
            }
            const auto sym = symplectic_reduce(m);
            CHECK(sym.rank() == rank);
            for (std::size_t i = 0; i < sym.hyperbolic_pairs.size(); ++i) {
                const auto& [x, y] = sym.hyperbolic_pairs[i];
                CHECK(m.bilinear(x, y));
                for (std::size_t j = i + 1; j < sym.hyperbolic_pairs.size(); ++j) {
                    const auto& [u, w] = sym.hyperbolic_pairs[j];
                    CHECK_FALSE(m.bilinear(x, u));
                    CHECK_FALSE(m.bilinear(x, w));
                    CHECK_FALSE(m.bilinear(y, u));
                    CHECK_FALSE(m.bilinear(y, w));
                }
            }
            const auto iso = max_isotropic(m);
            CHECK(iso.size() == g.edge_count() - rank / 2);
            CHECK(span_rank(iso, g.edge_count()) == iso.size());
            for (const auto& x : iso) {
                for (const auto& y : iso) {
                    CHECK_FALSE(m.bilinear(x, y));
                }
            }
        }
    }
}

TEST_CASE("rank agrees with a naive elimination oracle", "[gf2][property]") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t rows = rng() % 21;
        const std::size_t cols = rng() % 21;
        const double density = static_cast<double>(rng() % 100) / 100.0;
        std::bernoulli_distribution coin(density);
        Gf2Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (coin(rng)) {
                    m.set(r, c);
                }
            }
        }
        CHECK(rank_gf2(m) == reference::rank_mod2(to_int(m)));
        CHECK(rank_gf2(m) == rank_gf2(m.transposed()));
    }
}
