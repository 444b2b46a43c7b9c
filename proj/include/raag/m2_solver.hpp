#ifndef RAAG_M2_SOLVER_HPP
#define RAAG_M2_SOLVER_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "raag/bits.hpp"
#include "raag/cliques.hpp"
#include "raag/cup_form.hpp"
#include "raag/gf2.hpp"
#include "raag/graph.hpp"

namespace raag {

struct SolverConfig {
    /// Largest clique count searched exhaustively.
    std::size_t cap = 28;
    /// Worker threads for exhaustive search; 0 means one per hardware thread.
    std::size_t workers = 0;
    /// Extra alphas tried after the built-in patterns in heuristic mode.
    std::vector<AlphaVector> seeds;
    std::size_t random_samples = 256;
    /// Rank evaluations allowed for single-bit-flip improvement.
    std::size_t local_search_budget = 20000;
    std::uint64_t rng_seed = 0x52414147u;

    std::size_t resolved_workers() const {
        if (workers != 0) {
            return workers;
        }
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
};

enum class SolverMode { Exhaustive, Heuristic };

inline std::string to_string(SolverMode m) { return m == SolverMode::Exhaustive ? "exhaustive" : "heuristic"; }

struct M2Result {
    std::size_t m2 = 0;
    AlphaVector witness;
    std::size_t radical_dim = 0;
    /// True when the whole alpha space is covered, by enumeration or by reaching the ceiling.
    bool exhaustive = false;
    SolverMode mode = SolverMode::Exhaustive;
    std::size_t b2 = 0;
    std::size_t b4 = 0;
    /// Even upper bound on any rank: edges lying in some 4-clique, rounded down to even.
    std::size_t ceiling = 0;
    std::uint64_t evaluations = 0;

    friend bool operator==(const M2Result&, const M2Result&) = default;
};

class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::size_t b4, std::size_t cap)
        : std::runtime_error("exhaustive search needs 2^" + std::to_string(b4) + " ranks, above the cap of 2^" +
                             std::to_string(cap)),
          b4_(b4),
          cap_(cap) {}

    std::size_t b4() const { return b4_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t b4_;
    std::size_t cap_;
};

/// Rank of the substituted form restricted to edges that lie in a 4-clique.
/// Other edges give zero rows and columns, so the rank is unchanged.
class RankEvaluator {
public:
    using Word = BitVector::Word;

    explicit RankEvaluator(const CupFormTemplate& t) : clique_count_(t.clique_count()) {
        std::vector<std::size_t> active(t.dim(), kNone);
        for (std::size_t p = 0; p < t.clique_count(); ++p) {
            for (const auto& pr : t.pairings(p)) {
                active[pr.row] = 0;
                active[pr.col] = 0;
            }
        }
        for (auto& a : active) {
            if (a != kNone) {
                a = active_++;
            }
        }
        words_ = std::max<std::size_t>(1, BitVector::word_count(active_));
        pairs_.reserve(3 * t.clique_count());
        for (std::size_t p = 0; p < t.clique_count(); ++p) {
            for (const auto& pr : t.pairings(p)) {
                pairs_.push_back({static_cast<std::uint32_t>(active[pr.row]), static_cast<std::uint32_t>(active[pr.col])});
            }
        }
    }

    std::size_t active_edges() const { return active_; }
    std::size_t ceiling() const { return active_ & ~std::size_t{1}; }
    std::size_t clique_count() const { return clique_count_; }

    std::size_t rank(const AlphaVector& alpha) const {
        return dispatch([&](auto&& visit) {
            for (std::size_t p = alpha.find_first(); p < alpha.size(); p = alpha.find_next(p + 1)) {
                visit(p);
            }
        });
    }

    /// Rank for the alpha whose bit p is bit p of `code` (at most 64 cliques).
    std::size_t rank_code(std::uint64_t code) const {
        return dispatch([code](auto&& visit) {
            for (std::uint64_t c = code; c != 0; c &= c - 1) {
                visit(static_cast<std::size_t>(std::countr_zero(c)));
            }
        });
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Pair {
        std::uint32_t row;
        std::uint32_t col;
    };

    template <class Cliques>
    std::size_t dispatch(const Cliques& cliques) const {
        switch (words_) {
            case 1: return rank_fixed<1>(cliques);
            case 2: return rank_fixed<2>(cliques);
            case 3: return rank_fixed<3>(cliques);
            case 4: return rank_fixed<4>(cliques);
            default: return rank_dynamic(cliques);
        }
    }

    template <std::size_t W, class Cliques>
    std::size_t rank_fixed(const Cliques& cliques) const {
        thread_local std::vector<std::array<Word, W>> rows;
        thread_local std::vector<std::array<Word, W>> basis;
        thread_local std::vector<unsigned char> has;
        rows.assign(active_, std::array<Word, W>{});
        cliques([&](std::size_t p) {
            for (std::size_t k = 3 * p; k < 3 * p + 3; ++k) {
                const Pair pr = pairs_[k];
                rows[pr.row][pr.col / 64] ^= Word{1} << (pr.col % 64);
                rows[pr.col][pr.row / 64] ^= Word{1} << (pr.row % 64);
            }
        });
        basis.resize(active_);
        has.assign(active_, 0);
        std::size_t rank = 0;
        for (std::size_t r = 0; r < active_; ++r) {
            std::array<Word, W> v = rows[r];
            while (true) {
                std::size_t w = 0;
                while (w < W && v[w] == 0) {
                    ++w;
                }
                if (w == W) {
                    break;
                }
                const std::size_t lead = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
                if (!has[lead]) {
                    basis[lead] = v;
                    has[lead] = 1;
                    ++rank;
                    break;
                }
                for (std::size_t i = w; i < W; ++i) {
                    v[i] ^= basis[lead][i];
                }
            }
        }
        return rank;
    }

    template <class Cliques>
    std::size_t rank_dynamic(const Cliques& cliques) const {
        Gf2Matrix m(active_, active_);
        cliques([&](std::size_t p) {
            for (std::size_t k = 3 * p; k < 3 * p + 3; ++k) {
                m.flip(pairs_[k].row, pairs_[k].col);
                m.flip(pairs_[k].col, pairs_[k].row);
            }
        });
        return rank_gf2(std::move(m));
    }

    std::size_t clique_count_ = 0;
    std::size_t active_ = 0;
    std::size_t words_ = 1;
    std::vector<Pair> pairs_;  // 3 per clique, in clique order
};

namespace detail {

inline M2Result make_result(const CupFormTemplate& t, const RankEvaluator& eval, SolverMode mode) {
    M2Result r;
    r.mode = mode;
    r.b2 = t.dim();
    r.b4 = t.clique_count();
    r.ceiling = eval.ceiling();
    r.witness = AlphaVector(t.clique_count());
    return r;
}

inline void finish(M2Result& r) { r.radical_dim = r.b2 - r.m2; }

}  // namespace detail

/// Exact m2 by enumerating alphas in increasing integer order. The witness is
/// the smallest code reaching the maximum, independent of worker count.
/// Stops once the ceiling is reached, since no rank can exceed it.
inline M2Result compute_m2(const CupFormTemplate& t, const SolverConfig& cfg) {
    const std::size_t b4 = t.clique_count();
    if (b4 > cfg.cap || b4 > 62) {
        throw CapExceeded(b4, std::min<std::size_t>(cfg.cap, 62));
    }
    const RankEvaluator eval(t);
    M2Result result = detail::make_result(t, eval, SolverMode::Exhaustive);
    result.exhaustive = true;

    const std::uint64_t total = std::uint64_t{1} << b4;
    const std::size_t workers = cfg.resolved_workers();
    const std::uint64_t chunk =
        std::clamp<std::uint64_t>(total / (64 * static_cast<std::uint64_t>(workers)), 1, std::uint64_t{1} << 14);
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    const std::size_t ceiling = eval.ceiling();

    struct ChunkResult {
        std::size_t rank = 0;
        std::uint64_t code = 0;
        std::uint64_t evaluations = 0;
    };
    std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> first_hit{chunks};

    auto work = [&] {
        while (true) {
            const std::uint64_t c = next.fetch_add(1);
            // chunks are claimed in increasing order, so everything later is past the hit too
            if (c >= chunks || c > first_hit.load()) {
                return;
            }
            ChunkResult best;
            best.code = c * chunk;
            best.rank = 0;
            bool have = false;
            const std::uint64_t end = std::min(total, (c + 1) * chunk);
            for (std::uint64_t code = c * chunk; code < end; ++code) {
                const std::size_t r = eval.rank_code(code);
                ++best.evaluations;
                if (!have || r > best.rank) {
                    best.rank = r;
                    best.code = code;
                    have = true;
                }
                if (r == ceiling) {
                    std::uint64_t seen = first_hit.load();
                    while (c < seen && !first_hit.compare_exchange_weak(seen, c)) {
                    }
                    break;
                }
            }
            results[static_cast<std::size_t>(c)] = best;
        }
    };

    if (workers <= 1 || chunks == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(workers, chunks));
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    const std::uint64_t last = std::min(first_hit.load(), chunks - 1);
    std::uint64_t best_code = 0;
    bool have = false;
    for (std::uint64_t c = 0; c <= last; ++c) {
        const ChunkResult& cr = results[static_cast<std::size_t>(c)];
        result.evaluations += cr.evaluations;
        if (!have || cr.rank > result.m2) {
            result.m2 = cr.rank;
            best_code = cr.code;
            have = true;
        }
    }
    result.witness = alpha_from_code(best_code, b4);
    detail::finish(result);
    return result;
}

inline M2Result compute_m2(const Graph& g, const SolverConfig& cfg) { return compute_m2(build_cup_form(g), cfg); }

/// Alpha with, for every maximal clique of four or more vertices, its
/// lexicographically first and last 4-subsets switched on.
inline AlphaVector clique_end_pattern(const Graph& g, const CupFormTemplate& t) {
    AlphaVector a(t.clique_count());
    for (const Clique& m : maximal_cliques(g)) {
        if (m.size() < 4) {
            continue;
        }
        const Clique first(m.begin(), m.begin() + 4);
        const Clique last(m.end() - 4, m.end());
        a.set(*t.clique_index().position(first));
        a.set(*t.clique_index().position(last));
    }
    return a;
}

/// Best rank over a fixed sequence of alphas: all-ones, the clique-end pattern,
/// configured seeds, seeded pseudorandom alphas, then single-bit-flip ascent
/// from the best so far. A lower bound on m2 unless the ceiling is reached,
/// in which case the result is exact.
inline M2Result m2_heuristic(const Graph& g, const CupFormTemplate& t, const SolverConfig& cfg) {
    const RankEvaluator eval(t);
    M2Result result = detail::make_result(t, eval, SolverMode::Heuristic);
    const std::size_t b4 = t.clique_count();
    const std::size_t ceiling = eval.ceiling();
    bool have = false;

    auto consider = [&](const AlphaVector& a) {
        const std::size_t r = eval.rank(a);
        ++result.evaluations;
        if (!have || r > result.m2) {
            result.m2 = r;
            result.witness = a;
            have = true;
        }
        return r == ceiling;
    };

    auto done = [&] {
        result.exhaustive = true;
        detail::finish(result);
        return result;
    };

    if (consider(all_ones_alpha(b4))) {
        return done();
    }
    if (consider(clique_end_pattern(g, t))) {
        return done();
    }
    for (const auto& s : cfg.seeds) {
        check_alpha(t, s);
        if (consider(s)) {
            return done();
        }
    }
    std::mt19937_64 rng(cfg.rng_seed);
    for (std::size_t i = 0; i < cfg.random_samples && b4 > 0; ++i) {
        AlphaVector a(b4);
        for (std::size_t p = 0; p < b4; ++p) {
            if (rng() & 1U) {
                a.set(p);
            }
        }
        if (consider(a)) {
            return done();
        }
    }
    std::size_t budget = cfg.local_search_budget;
    bool improved = true;
    while (improved && budget > 0) {
        improved = false;
        for (std::size_t p = 0; p < b4 && budget > 0; ++p, --budget) {
            AlphaVector a = result.witness;
            a.flip(p);
            const std::size_t before = result.m2;
            if (consider(a)) {
                return done();
            }
            improved = improved || result.m2 > before;
        }
    }
    detail::finish(result);
    return result;
}

inline M2Result m2_heuristic(const Graph& g, const SolverConfig& cfg) {
    return m2_heuristic(g, build_cup_form(g), cfg);
}

/// Exhaustive when b4 is within the cap, heuristic otherwise.
inline M2Result solve_m2(const Graph& g, const CupFormTemplate& t, const SolverConfig& cfg, bool force_heuristic = false) {
    if (force_heuristic || t.clique_count() > cfg.cap || t.clique_count() > 62) {
        return m2_heuristic(g, t, cfg);
    }
    return compute_m2(t, cfg);
}

struct Radical {
    std::vector<BitVector> basis;
    /// Each basis vector as a sum of edge classes, e.g. "z12 + z56".
    std::vector<std::string> pretty;
};

/// Kernel of the substituted form at `alpha`, with edge-labelled renderings.
inline Radical radical_at(const Graph& g, const AlphaVector& alpha) {
    const CupFormTemplate t = build_cup_form(g);
    Radical out;
    out.basis = kernel_basis(substitute(t, alpha));
    for (const auto& v : out.basis) {
        out.pretty.push_back(pretty_vector(g, v));
    }
    return out;
}

}  // namespace raag

#endif  // RAAG_M2_SOLVER_HPP
