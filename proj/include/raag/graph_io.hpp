#ifndef RAAG_GRAPH_IO_HPP
#define RAAG_GRAPH_IO_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "raag/certificate.hpp"
#include "raag/graph.hpp"

namespace raag {

enum class GraphFormat { EdgeList, AdjacencyCsv, Json };

inline std::string to_string(GraphFormat f) {
    switch (f) {
        case GraphFormat::EdgeList: return "edges";
        case GraphFormat::AdjacencyCsv: return "csv";
        case GraphFormat::Json: return "json";
    }
    return "edges";
}

inline GraphFormat graph_format_from_string(const std::string& s) {
    if (s == "edges") return GraphFormat::EdgeList;
    if (s == "csv") return GraphFormat::AdjacencyCsv;
    if (s == "json") return GraphFormat::Json;
    throw std::invalid_argument("unknown graph format '" + s + "' (expected edges, csv or json)");
}

/// Guesses the format from a file extension; anything unrecognised is an edge list.
inline GraphFormat detect_format(const std::string& path) {
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".csv")) return GraphFormat::AdjacencyCsv;
    if (ends_with(".json")) return GraphFormat::Json;
    return GraphFormat::EdgeList;
}

class ParseError : public std::runtime_error {
public:
    enum class Kind { Io, Syntax, SelfLoop, DuplicateEdge, AsymmetricMatrix, NonzeroDiagonal, OutOfRange };

    ParseError(Kind kind, std::size_t line, std::size_t position, const std::string& message)
        : std::runtime_error(format(kind, line, position, message)), kind_(kind), line_(line), position_(position) {}

    Kind kind() const { return kind_; }
    /// 1-based line, 0 when not tied to a line.
    std::size_t line() const { return line_; }
    /// 1-based field/column within the line, 0 when not applicable.
    std::size_t position() const { return position_; }

    static std::string kind_name(Kind k) {
        switch (k) {
            case Kind::Io: return "i/o error";
            case Kind::Syntax: return "syntax error";
            case Kind::SelfLoop: return "self-loop";
            case Kind::DuplicateEdge: return "duplicate edge";
            case Kind::AsymmetricMatrix: return "asymmetric matrix";
            case Kind::NonzeroDiagonal: return "nonzero diagonal";
            case Kind::OutOfRange: return "out-of-range index";
        }
        return "error";
    }

private:
    static std::string format(Kind kind, std::size_t line, std::size_t position, const std::string& message) {
        std::string out;
        if (line != 0) {
            out += "line " + std::to_string(line);
            if (position != 0) {
                out += ", position " + std::to_string(position);
            }
            out += ": ";
        }
        out += kind_name(kind);
        if (!message.empty()) {
            out += ": " + message;
        }
        return out;
    }

    Kind kind_;
    std::size_t line_;
    std::size_t position_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        lines.push_back(line);
    }
    return lines;
}

inline std::optional<long long> parse_integer(std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

/// Accumulates edges, reporting loops and repeats against the line they came from.
class EdgeCollector {
public:
    void add(long long a, long long b, std::size_t line) {
        if (a < 0 || b < 0) {
            throw ParseError(ParseError::Kind::OutOfRange, line, a < 0 ? 1 : 2, "negative vertex index");
        }
        if (a == b) {
            throw ParseError(ParseError::Kind::SelfLoop, line, 0, "vertex " + std::to_string(a));
        }
        auto key = std::minmax(a, b);
        auto [it, inserted] = seen_.emplace(key, line);
        if (!inserted) {
            throw ParseError(ParseError::Kind::DuplicateEdge, line, 0,
                             std::to_string(a) + " " + std::to_string(b) + " (first given on line " +
                                 std::to_string(it->second) + ")");
        }
        edges_.push_back({a, b, line});
    }

    struct Item {
        long long a;
        long long b;
        std::size_t line;
    };
    const std::vector<Item>& items() const { return edges_; }

private:
    std::map<std::pair<long long, long long>, std::size_t> seen_;
    std::vector<Item> edges_;
};

inline Graph parse_edge_list(const std::string& text) {
    EdgeCollector edges;
    std::optional<std::size_t> declared_n;
    std::map<std::size_t, std::string> labels;
    std::optional<FamilyCertificate> cert;

    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t lineno = li + 1;
        std::string_view line = trim(lines[li]);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::string_view body = trim(line.substr(1));
            if (body.rfind("@", 0) != 0) {
                continue;
            }
            std::istringstream is{std::string(body.substr(1))};
            std::string directive;
            is >> directive;
            if (directive == "vertices") {
                long long n = -1;
                if (!(is >> n) || n < 0) {
                    throw ParseError(ParseError::Kind::Syntax, lineno, 0, "@vertices needs a non-negative count");
                }
                declared_n = static_cast<std::size_t>(n);
            } else if (directive == "label") {
                long long v = -1;
                std::string name;
                if (!(is >> v >> name) || v < 0) {
                    throw ParseError(ParseError::Kind::Syntax, lineno, 0, "@label needs an index and a name");
                }
                labels[static_cast<std::size_t>(v)] = name;
            } else if (directive == "certificate") {
                std::string rest;
                std::getline(is, rest);
                try {
                    cert = certificate_from_string(std::string(trim(rest)));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(ParseError::Kind::Syntax, lineno, 0, e.what());
                }
            }
            continue;
        }
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = trim(line.substr(0, hash));
        }
        std::istringstream is{std::string(line)};
        std::string a_text;
        std::string b_text;
        std::string extra;
        if (!(is >> a_text >> b_text) || (is >> extra)) {
            throw ParseError(ParseError::Kind::Syntax, lineno, 0, "expected \"u v\", got \"" + std::string(line) + "\"");
        }
        const auto a = parse_integer(a_text);
        const auto b = parse_integer(b_text);
        if (!a || !b) {
            throw ParseError(ParseError::Kind::Syntax, lineno, !a ? 1 : 2, "vertex indices must be integers");
        }
        edges.add(*a, *b, lineno);
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t n = 0;
    if (declared_n) {
        n = *declared_n;
        for (const auto& e : edges.items()) {
            if (static_cast<std::size_t>(e.a) >= n || static_cast<std::size_t>(e.b) >= n) {
                throw ParseError(ParseError::Kind::OutOfRange, e.line, static_cast<std::size_t>(e.a) >= n ? 1 : 2,
                                 "index beyond declared vertex count " + std::to_string(n));
            }
            pairs.emplace_back(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b));
        }
    } else {
        std::vector<long long> ids;
        for (const auto& e : edges.items()) {
            ids.push_back(e.a);
            ids.push_back(e.b);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        auto compact = [&](long long x) {
            return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
        };
        n = ids.size();
        for (const auto& e : edges.items()) {
            pairs.emplace_back(compact(e.a), compact(e.b));
        }
    }

    Graph g = Graph::from_edges(n, pairs);
    if (!labels.empty()) {
        std::vector<std::string> names(n);
        for (std::size_t v = 0; v < n; ++v) {
            auto it = labels.find(v);
            names[v] = it != labels.end() ? it->second : "s" + std::to_string(v + 1);
        }
        g = g.with_labels(std::move(names));
    }
    return g.with_certificate(cert);
}

inline Graph parse_adjacency_csv(const std::string& text) {
    std::vector<std::vector<int>> rows;
    std::vector<std::size_t> row_lines;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string_view line = trim(lines[li]);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<int> row;
        std::size_t field = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            std::string_view cell = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
            ++field;
            if (cell != "0" && cell != "1") {
                throw ParseError(ParseError::Kind::Syntax, li + 1, field,
                                 "expected 0 or 1, got \"" + std::string(cell) + "\"");
            }
            row.push_back(cell == "1" ? 1 : 0);
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        rows.push_back(std::move(row));
        row_lines.push_back(li + 1);
    }
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw ParseError(ParseError::Kind::Syntax, row_lines[i], 0,
                             "row has " + std::to_string(rows[i].size()) + " entries, matrix needs " +
                                 std::to_string(n));
        }
    }
    std::vector<BitVector> adj(n, BitVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i][i] != 0) {
            throw ParseError(ParseError::Kind::NonzeroDiagonal, row_lines[i], i + 1, "entry (" + std::to_string(i) +
                                                                                          "," + std::to_string(i) + ")");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (rows[i][j] != rows[j][i]) {
                throw ParseError(ParseError::Kind::AsymmetricMatrix, row_lines[i], j + 1,
                                 "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from (" +
                                     std::to_string(j) + "," + std::to_string(i) + ")");
            }
            if (rows[i][j] != 0) {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    return Graph::from_adjacency(adj);
}

/// 1-based line of the i-th element of the top-level "edges" array, or 0.
inline std::vector<std::size_t> json_edge_lines(const std::string& text) {
    std::vector<std::size_t> out;
    const auto key = text.find("\"edges\"");
    if (key == std::string::npos) {
        return out;
    }
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(key), '\n'));
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = key + 7; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
        }
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '[') {
            if (++depth == 2) {
                out.push_back(line);
            }
        } else if (c == ']') {
            if (--depth == 0) {
                break;
            }
        }
    }
    return out;
}

inline Graph parse_json_graph(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const std::size_t line =
            1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
        throw ParseError(ParseError::Kind::Syntax, line, 0, e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_number_integer()) {
        throw ParseError(ParseError::Kind::Syntax, 1, 0, "expected an object with integer \"vertices\"");
    }
    const long long n_signed = doc["vertices"].get<long long>();
    if (n_signed < 0) {
        throw ParseError(ParseError::Kind::OutOfRange, 1, 0, "negative vertex count");
    }
    const auto n = static_cast<std::size_t>(n_signed);
    const auto lines = json_edge_lines(text);
    auto line_of = [&](std::size_t i) { return i < lines.size() ? lines[i] : 0; };

    EdgeCollector edges;
    if (doc.contains("edges")) {
        const auto& arr = doc["edges"];
        if (!arr.is_array()) {
            throw ParseError(ParseError::Kind::Syntax, 1, 0, "\"edges\" must be an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& e = arr[i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw ParseError(ParseError::Kind::Syntax, line_of(i), i + 1, "edge must be [u, v]");
            }
            const long long a = e[0].get<long long>();
            const long long b = e[1].get<long long>();
            edges.add(a, b, line_of(i));
            if (static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
                throw ParseError(ParseError::Kind::OutOfRange, line_of(i), i + 1,
                                 "edge [" + std::to_string(a) + "," + std::to_string(b) + "] with " +
                                     std::to_string(n) + " vertices");
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : edges.items()) {
        pairs.emplace_back(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b));
    }
    Graph g = Graph::from_edges(n, pairs);
    if (doc.contains("labels")) {
        try {
            g = g.with_labels(doc["labels"].get<std::vector<std::string>>());
        } catch (const std::exception& e) {
            throw ParseError(ParseError::Kind::Syntax, 0, 0, std::string("labels: ") + e.what());
        }
    }
    if (doc.contains("certificate") && !doc["certificate"].is_null()) {
        try {
            g = g.with_certificate(certificate_from_string(doc["certificate"].get<std::string>()));
        } catch (const std::exception& e) {
            throw ParseError(ParseError::Kind::Syntax, 0, 0, std::string("certificate: ") + e.what());
        }
    }
    return g;
}

}  // namespace detail

/// Parses a graph in the given format. Violations raise ParseError naming the line.
inline Graph parse_graph(const std::string& source, GraphFormat format) {
    switch (format) {
        case GraphFormat::EdgeList: return detail::parse_edge_list(source);
        case GraphFormat::AdjacencyCsv: return detail::parse_adjacency_csv(source);
        case GraphFormat::Json: return detail::parse_json_graph(source);
    }
    throw std::logic_error("unreachable");
}

inline Graph read_graph_file(const std::string& path, std::optional<GraphFormat> format = std::nullopt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(ParseError::Kind::Io, 0, 0, "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), format.value_or(detect_format(path)));
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    os << "# @vertices " << g.vertex_count() << '\n';
    if (g.has_labels()) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            os << "# @label " << v << ' ' << g.labels()[v] << '\n';
        }
    }
    if (g.certificate()) {
        os << "# @certificate " << to_string(*g.certificate()) << '\n';
    }
    for (const Edge& e : g.edges()) {
        os << e.u << ' ' << e.v << '\n';
    }
    return os.str();
}

inline std::string to_adjacency_csv(const Graph& g) {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = 0; j < g.vertex_count(); ++j) {
            os << (j != 0 ? "," : "") << (g.adjacent(i, j) ? '1' : '0');
        }
        os << '\n';
    }
    return os.str();
}

inline nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = g.vertex_count();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back({e.u, e.v});
    }
    j["edges"] = std::move(edges);
    if (g.has_labels()) {
        j["labels"] = g.labels();
    }
    if (g.certificate()) {
        j["certificate"] = to_string(*g.certificate());
    }
    return j;
}

inline std::string serialize_graph(const Graph& g, GraphFormat format) {
    switch (format) {
        case GraphFormat::EdgeList: return to_edge_list(g);
        case GraphFormat::AdjacencyCsv: return to_adjacency_csv(g);
        case GraphFormat::Json: {
            // one line per top-level key keeps long edge arrays readable
            const auto j = graph_to_json(g);
            std::string out = "{\n";
            std::size_t i = 0;
            for (const auto& [key, value] : j.items()) {
                out += "  " + nlohmann::ordered_json(key).dump() + ": " + value.dump() + (++i < j.size() ? ",\n" : "\n");
            }
            return out + "}\n";
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace raag

#endif  // RAAG_GRAPH_IO_HPP
