#ifndef RAAG_CERTIFICATE_HPP
#define RAAG_CERTIFICATE_HPP

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace raag {

/// Catalog families with a known h value. A certificate is attached to a graph
/// by the generators and carries the hypotheses of the matching family theorem.
namespace family {

struct Edgeless {
    std::size_t n = 0;
    friend bool operator==(const Edgeless&, const Edgeless&) = default;
};

struct Complete {
    std::size_t n = 0;
    friend bool operator==(const Complete&, const Complete&) = default;
};

/// `count` cliques of `clique_size` vertices, consecutive cliques sharing one edge.
struct CliqueEdgeString {
    int clique_size = 4;
    int count = 1;
    friend bool operator==(const CliqueEdgeString&, const CliqueEdgeString&) = default;
};

/// `count` 4-cliques, consecutive cliques sharing a triangle.
struct FaceString {
    int count = 1;
    friend bool operator==(const FaceString&, const FaceString&) = default;
};

struct Cell {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// 4-cliques on unit lattice squares; cells sharing a side share an edge.
struct Grid {
    std::vector<Cell> cells;
    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Side-`side` triangle of the triangular lattice with all unit and
/// second-neighbour edges.
struct HexThickTriangle {
    int side = 1;
    friend bool operator==(const HexThickTriangle&, const HexThickTriangle&) = default;
};

/// A 5-clique and a 4-clique sharing one edge.
struct FiveFourEdge {
    friend bool operator==(const FiveFourEdge&, const FiveFourEdge&) = default;
};

}  // namespace family

using FamilyCertificate = std::variant<family::Edgeless, family::Complete, family::CliqueEdgeString,
                                       family::FaceString, family::Grid, family::HexThickTriangle,
                                       family::FiveFourEdge>;

/// Maps certificates that describe the same graph to one representative:
/// a single clique of a string is a complete graph, as is a one-clique face string,
/// and the smallest complete graphs are edgeless.
inline FamilyCertificate normalize(const FamilyCertificate& cert) {
    using namespace family;
    if (const auto* c = std::get_if<CliqueEdgeString>(&cert); c != nullptr && c->count == 1) {
        return Complete{static_cast<std::size_t>(c->clique_size)};
    }
    if (const auto* f = std::get_if<FaceString>(&cert); f != nullptr && f->count == 1) {
        return Complete{4};
    }
    if (const auto* c = std::get_if<Complete>(&cert); c != nullptr && c->n <= 1) {
        return Edgeless{c->n};
    }
    if (const auto* g = std::get_if<Grid>(&cert)) {
        Grid sorted = *g;
        std::sort(sorted.cells.begin(), sorted.cells.end());
        sorted.cells.erase(std::unique(sorted.cells.begin(), sorted.cells.end()), sorted.cells.end());
        if (sorted.cells.size() == 1) {
            return Complete{4};
        }
        return sorted;
    }
    if (const auto* h = std::get_if<HexThickTriangle>(&cert); h != nullptr && h->side == 1) {
        return Complete{3};
    }
    return cert;
}

inline bool equivalent(const FamilyCertificate& a, const FamilyCertificate& b) {
    return normalize(a) == normalize(b);
}

/// Text form used in files and on the command line, e.g. "clique-string size=5 count=2".
inline std::string to_string(const FamilyCertificate& cert) {
    using namespace family;
    std::ostringstream os;
    std::visit(
        [&os](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Edgeless>) {
                os << "edgeless n=" << c.n;
            } else if constexpr (std::is_same_v<T, Complete>) {
                os << "complete n=" << c.n;
            } else if constexpr (std::is_same_v<T, CliqueEdgeString>) {
                os << "clique-string size=" << c.clique_size << " count=" << c.count;
            } else if constexpr (std::is_same_v<T, FaceString>) {
                os << "face-string count=" << c.count;
            } else if constexpr (std::is_same_v<T, Grid>) {
                os << "grid cells=";
                for (std::size_t i = 0; i < c.cells.size(); ++i) {
                    os << (i != 0 ? ";" : "") << c.cells[i].x << ',' << c.cells[i].y;
                }
            } else if constexpr (std::is_same_v<T, HexThickTriangle>) {
                os << "hex side=" << c.side;
            } else {
                os << "five-four-edge";
            }
        },
        cert);
    return os.str();
}

namespace detail {

inline long parse_long(const std::string& text, const std::string& what) {
    long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("certificate: bad integer for " + what + ": '" + text + "'");
    }
    return value;
}

inline std::vector<family::Cell> parse_cells(const std::string& text) {
    std::vector<family::Cell> cells;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ';')) {
        if (item.empty()) {
            continue;
        }
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("certificate: cell '" + item + "' is not x,y");
        }
        cells.push_back({static_cast<int>(parse_long(item.substr(0, comma), "cell x")),
                         static_cast<int>(parse_long(item.substr(comma + 1), "cell y"))});
    }
    return cells;
}

}  // namespace detail

/// Inverse of to_string. Throws std::invalid_argument on malformed text.
inline FamilyCertificate certificate_from_string(const std::string& text) {
    using namespace family;
    std::istringstream is(text);
    std::string name;
    is >> name;
    std::map<std::string, std::string> params;
    std::string token;
    while (is >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("certificate: expected key=value, got '" + token + "'");
        }
        params[token.substr(0, eq)] = token.substr(eq + 1);
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = params.find(key);
        if (it == params.end()) {
            throw std::invalid_argument("certificate: '" + name + "' needs " + key);
        }
        return it->second;
    };
    auto need_int = [&](const std::string& key) { return detail::parse_long(need(key), key); };

    if (name == "edgeless") {
        return Edgeless{static_cast<std::size_t>(need_int("n"))};
    }
    if (name == "complete") {
        return Complete{static_cast<std::size_t>(need_int("n"))};
    }
    if (name == "clique-string") {
        return CliqueEdgeString{static_cast<int>(need_int("size")), static_cast<int>(need_int("count"))};
    }
    if (name == "face-string") {
        return FaceString{static_cast<int>(need_int("count"))};
    }
    if (name == "grid") {
        return Grid{detail::parse_cells(need("cells"))};
    }
    if (name == "hex") {
        return HexThickTriangle{static_cast<int>(need_int("side"))};
    }
    if (name == "five-four-edge") {
        return FiveFourEdge{};
    }
    throw std::invalid_argument("certificate: unknown family '" + name + "'");
}

}  // namespace raag

#endif  // RAAG_CERTIFICATE_HPP
