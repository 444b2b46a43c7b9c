#ifndef RAAG_REPORT_HPP
#define RAAG_REPORT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "raag/certificate.hpp"
#include "raag/graph.hpp"
#include "raag/h_engine.hpp"
#include "raag/m2_solver.hpp"

namespace raag {

inline constexpr const char* kReportSchemaVersion = "1.0";

/// FNV-1a over the canonical text "n\nu v\n..." of the graph structure.
inline std::string graph_hash(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    feed(std::to_string(g.vertex_count()) + "\n");
    for (const Edge& e : g.edges()) {
        feed(std::to_string(e.u) + " " + std::to_string(e.v) + "\n");
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct GraphSummary {
    std::size_t n = 0;
    std::size_t edges = 0;
    std::string hash;
    friend bool operator==(const GraphSummary&, const GraphSummary&) = default;
};

inline GraphSummary summarize(const Graph& g) { return {g.vertex_count(), g.edge_count(), graph_hash(g)}; }

struct SolverMeta {
    std::size_t cap = 28;
    std::string mode = "auto";  // auto | heuristic | strict
    std::size_t workers = 1;
    friend bool operator==(const SolverMeta&, const SolverMeta&) = default;
};

struct ReportDocument {
    std::string schema_version = kReportSchemaVersion;
    GraphSummary input;
    HReport h;
    /// Stage name and wall-clock milliseconds, in execution order.
    std::optional<std::vector<std::pair<std::string, double>>> timings;
    SolverMeta solver;
    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson edges_to_json(const std::vector<Edge>& edges) {
    auto arr = ojson::array();
    for (const Edge& e : edges) {
        arr.push_back({e.u, e.v});
    }
    return arr;
}

inline std::vector<Edge> edges_from_json(const nlohmann::ordered_json& j) {
    std::vector<Edge> out;
    for (const auto& e : j) {
        out.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
    }
    return out;
}

inline ojson m2_to_json(const M2Result& r) {
    ojson j;
    j["value"] = r.m2;
    j["exhaustive"] = r.exhaustive;
    j["mode"] = to_string(r.mode);
    j["witness"] = r.witness.to_string();
    j["radicalDim"] = r.radical_dim;
    j["b2"] = r.b2;
    j["b4"] = r.b4;
    j["ceiling"] = r.ceiling;
    j["evaluations"] = r.evaluations;
    return j;
}

inline M2Result m2_from_json(const nlohmann::ordered_json& j) {
    M2Result r;
    r.m2 = j.at("value").get<std::size_t>();
    r.exhaustive = j.at("exhaustive").get<bool>();
    r.mode = j.at("mode").get<std::string>() == "exhaustive" ? SolverMode::Exhaustive : SolverMode::Heuristic;
    r.witness = BitVector::from_string(j.at("witness").get<std::string>());
    r.radical_dim = j.at("radicalDim").get<std::size_t>();
    r.b2 = j.at("b2").get<std::size_t>();
    r.b4 = j.at("b4").get<std::size_t>();
    r.ceiling = j.at("ceiling").get<std::size_t>();
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    return r;
}

inline ojson bounds_to_json(const HBounds& b) {
    ojson j;
    j["betti"] = b.betti;
    j["b1"] = b.b1;
    j["b2"] = b.b2;
    j["b4"] = b.b4;
    j["m2"] = m2_to_json(b.m2);
    j["lowerTrivial"] = b.lower_trivial;
    j["lowerCohomological"] = b.lower_cohomological;
    j["cohomologicalEstimate"] = b.cohomological_estimate ? ojson(*b.cohomological_estimate) : ojson(nullptr);
    j["upper"] = b.upper;
    if (b.exact) {
        j["exact"] = {{"value", b.exact->value},
                      {"provenance", to_string(b.exact->provenance)},
                      {"theoremGrade", b.exact->theorem_grade()}};
    } else {
        j["exact"] = nullptr;
    }
    j["family"] = b.family ? ojson(to_string(*b.family)) : ojson(nullptr);
    j["notes"] = b.notes;
    return j;
}

inline HBounds bounds_from_json(const nlohmann::ordered_json& j) {
    HBounds b;
    b.betti = j.at("betti").get<std::vector<std::size_t>>();
    b.b1 = j.at("b1").get<std::size_t>();
    b.b2 = j.at("b2").get<std::size_t>();
    b.b4 = j.at("b4").get<std::size_t>();
    b.m2 = m2_from_json(j.at("m2"));
    b.lower_trivial = j.at("lowerTrivial").get<std::size_t>();
    b.lower_cohomological = j.at("lowerCohomological").get<std::size_t>();
    if (!j.at("cohomologicalEstimate").is_null()) {
        b.cohomological_estimate = j.at("cohomologicalEstimate").get<std::size_t>();
    }
    b.upper = j.at("upper").get<std::size_t>();
    if (!j.at("exact").is_null()) {
        b.exact = ExactValue{j.at("exact").at("value").get<std::size_t>(),
                             provenance_from_string(j.at("exact").at("provenance").get<std::string>())};
    }
    if (!j.at("family").is_null()) {
        b.family = certificate_from_string(j.at("family").get<std::string>());
    }
    b.notes = j.at("notes").get<std::vector<std::string>>();
    return b;
}

inline ojson decomposition_to_json(const DecompositionReport& d) {
    ojson j;
    j["removedFreeEdges"] = d.removed_free_edges();
    j["freeEdges"] = edges_to_json(d.free_edges);
    auto pieces = ojson::array();
    for (const auto& p : d.pieces) {
        ojson pj;
        pj["vertices"] = p.vertices;
        pj["edges"] = edges_to_json(p.graph.edges());
        if (p.graph.has_labels()) {
            pj["labels"] = p.graph.labels();
        }
        pj["report"] = bounds_to_json(p.report);
        pieces.push_back(std::move(pj));
    }
    j["pieces"] = std::move(pieces);
    j["aggregateExact"] = d.aggregate_exact ? ojson(*d.aggregate_exact) : ojson(nullptr);
    j["aggregateLower"] = d.aggregate_lower;
    j["aggregateUpper"] = d.aggregate_upper;
    return j;
}

inline DecompositionReport decomposition_from_json(const nlohmann::ordered_json& j) {
    DecompositionReport d;
    d.free_edges = edges_from_json(j.at("freeEdges"));
    for (const auto& pj : j.at("pieces")) {
        DecompositionPiece p;
        p.vertices = pj.at("vertices").get<std::vector<std::size_t>>();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const Edge& e : edges_from_json(pj.at("edges"))) {
            pairs.emplace_back(e.u, e.v);
        }
        p.graph = Graph::from_edges(p.vertices.size(), pairs);
        if (pj.contains("labels")) {
            p.graph = p.graph.with_labels(pj.at("labels").get<std::vector<std::string>>());
        }
        p.report = bounds_from_json(pj.at("report"));
        d.pieces.push_back(std::move(p));
    }
    if (!j.at("aggregateExact").is_null()) {
        d.aggregate_exact = j.at("aggregateExact").get<std::size_t>();
    }
    d.aggregate_lower = j.at("aggregateLower").get<std::size_t>();
    d.aggregate_upper = j.at("aggregateUpper").get<std::size_t>();
    return d;
}

}  // namespace detail

/// Structured report with a fixed key order.
inline nlohmann::ordered_json report_to_json(const ReportDocument& doc) {
    detail::ojson j;
    j["schemaVersion"] = doc.schema_version;
    j["input"] = {{"n", doc.input.n}, {"edges", doc.input.edges}, {"hash", doc.input.hash}};
    detail::ojson h = detail::bounds_to_json(doc.h);
    h["decomposition"] = doc.h.decomposition ? detail::decomposition_to_json(*doc.h.decomposition) : detail::ojson(nullptr);
    j["hReport"] = std::move(h);
    if (doc.timings) {
        detail::ojson t = detail::ojson::object();
        for (const auto& [stage, ms] : *doc.timings) {
            t[stage] = ms;
        }
        j["timings"] = std::move(t);
    }
    j["solverMeta"] = {{"cap", doc.solver.cap}, {"mode", doc.solver.mode}, {"workers", doc.solver.workers}};
    return j;
}

inline ReportDocument report_from_json(const nlohmann::ordered_json& j) {
    ReportDocument doc;
    doc.schema_version = j.at("schemaVersion").get<std::string>();
    doc.input.n = j.at("input").at("n").get<std::size_t>();
    doc.input.edges = j.at("input").at("edges").get<std::size_t>();
    doc.input.hash = j.at("input").at("hash").get<std::string>();
    const auto& h = j.at("hReport");
    static_cast<HBounds&>(doc.h) = detail::bounds_from_json(h);
    if (!h.at("decomposition").is_null()) {
        doc.h.decomposition = detail::decomposition_from_json(h.at("decomposition"));
    }
    if (j.contains("timings")) {
        std::vector<std::pair<std::string, double>> t;
        for (const auto& [stage, ms] : j.at("timings").items()) {
            t.emplace_back(stage, ms.get<double>());
        }
        doc.timings = std::move(t);
    }
    const auto& s = j.at("solverMeta");
    doc.solver.cap = s.at("cap").get<std::size_t>();
    doc.solver.mode = s.at("mode").get<std::string>();
    doc.solver.workers = s.at("workers").get<std::size_t>();
    return doc;
}

namespace detail {

inline void bounds_to_text(std::ostringstream& os, const HBounds& b, const std::string& indent) {
    os << indent << "betti:";
    for (auto x : b.betti) {
        os << ' ' << x;
    }
    os << '\n';
    os << indent << "b1 = " << b.b1 << ", b2 = " << b.b2 << ", b4 = " << b.b4 << '\n';
    os << indent << "m2 = " << b.m2.m2 << " (" << to_string(b.m2.mode) << ", "
       << (b.m2.exhaustive ? "certified" : "lower bound only") << "), witness alpha = "
       << (b.m2.witness.empty() ? "-" : b.m2.witness.to_string()) << ", radical dim = " << b.m2.radical_dim << '\n';
    os << indent << "lower bound (trivial)       = " << b.lower_trivial << '\n';
    os << indent << "lower bound (cohomological) = " << b.lower_cohomological << '\n';
    if (b.cohomological_estimate) {
        os << indent << "cohomological estimate      = " << *b.cohomological_estimate << " (unproven)\n";
    }
    os << indent << "upper bound                 = " << b.upper << '\n';
    if (b.family) {
        os << indent << "family: " << to_string(*b.family) << '\n';
    }
    if (b.exact) {
        os << indent << "h = " << b.exact->value << " [" << to_string(b.exact->provenance)
           << (b.exact->theorem_grade() ? "" : ", conjecture only") << "]\n";
    } else {
        os << indent << "h: no exact value\n";
    }
    for (const auto& n : b.notes) {
        os << indent << "note: " << n << '\n';
    }
}

}  // namespace detail

/// Human-readable rendering of a report.
inline std::string report_to_text(const ReportDocument& doc) {
    std::ostringstream os;
    os << "graph: " << doc.input.n << " vertices, " << doc.input.edges << " edges (" << doc.input.hash << ")\n";
    detail::bounds_to_text(os, doc.h, "");
    if (doc.h.decomposition) {
        const auto& d = *doc.h.decomposition;
        os << "decomposition: " << d.removed_free_edges() << " free edges removed, " << d.pieces.size() << " pieces\n";
        for (std::size_t i = 0; i < d.pieces.size(); ++i) {
            const auto& p = d.pieces[i];
            if (p.graph.edge_count() == 0) {
                continue;
            }
            os << "  piece " << i + 1 << " on vertices";
            for (auto v : p.vertices) {
                os << ' ' << v;
            }
            os << ":\n";
            detail::bounds_to_text(os, p.report, "    ");
        }
        const std::size_t isolated = static_cast<std::size_t>(std::count_if(
            d.pieces.begin(), d.pieces.end(), [](const DecompositionPiece& p) { return p.graph.edge_count() == 0; }));
        if (isolated > 0) {
            os << "  " << isolated << " single-vertex pieces (h = 0 each)\n";
        }
        os << "  aggregate: ";
        if (d.aggregate_exact) {
            os << "h = " << *d.aggregate_exact;
        } else {
            os << d.aggregate_lower << " <= h <= " << d.aggregate_upper;
        }
        os << '\n';
    }
    if (doc.timings) {
        os << "timings (ms):";
        for (const auto& [stage, ms] : *doc.timings) {
            os << ' ' << stage << '=' << std::fixed << std::setprecision(3) << ms;
        }
        os << '\n';
    }
    os << "solver: cap " << doc.solver.cap << ", mode " << doc.solver.mode << ", workers " << doc.solver.workers
       << '\n';
    return os.str();
}

}  // namespace raag

#endif  // RAAG_REPORT_HPP
