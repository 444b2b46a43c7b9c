#ifndef RAAG_DOT_HPP
#define RAAG_DOT_HPP

#include <sstream>
#include <string>

#include "raag/certificate.hpp"
#include "raag/graph.hpp"

namespace raag {

/// Graphviz description: one labelled node per vertex, plain undirected edges.
inline std::string to_dot(const Graph& g, const std::string& name = "G") {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') {
                out += '\\';
            }
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "graph " << quote(name) << " {\n";
    if (g.certificate()) {
        os << "  label=" << quote(to_string(*g.certificate())) << ";\n";
    }
    os << "  node [shape=circle];\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        os << "  " << v << " [label=" << quote(g.display_name(v)) << "];\n";
    }
    for (const Edge& e : g.edges()) {
        os << "  " << e.u << " -- " << e.v << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace raag

#endif  // RAAG_DOT_HPP
