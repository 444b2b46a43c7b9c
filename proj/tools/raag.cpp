// raag: bounds and exact values of h for right-angled Artin groups.
//
// Exit codes: 0 success, 1 usage or invalid argument, 2 unreadable or
// malformed graph file, 3 clique cap exceeded in strict mode, 4 a
// verify-paper criterion failed.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raag/cup_form.hpp"
#include "raag/dot.hpp"
#include "raag/families.hpp"
#include "raag/graph_io.hpp"
#include "raag/h_engine.hpp"
#include "raag/m2_solver.hpp"
#include "raag/report.hpp"
#include "raag/testing/acceptance.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kCap = 3, kCriterionFailed = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<std::size_t> env_size(const char* name) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') {
        return std::nullopt;
    }
    std::size_t out = 0;
    const std::string text(value);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(std::string(name) + " must be a non-negative integer, got '" + text + "'");
    }
    return out;
}

struct SolverFlags {
    std::optional<std::size_t> cap;
    std::optional<std::size_t> workers;
    bool heuristic = false;
    bool strict = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--cap", cap, "Largest clique count searched exhaustively (env RAAG_CAP, default 28)");
        cmd.add_option("--workers", workers, "Solver threads, 0 = all hardware threads (env RAAG_WORKERS)");
        cmd.add_flag("--heuristic", heuristic, "Use heuristic search for m2 even below the cap");
        cmd.add_flag("--strict", strict, "Fail with exit 3 instead of falling back to heuristics beyond the cap");
    }

    raag::SolverConfig config() const {
        raag::SolverConfig cfg;
        if (auto c = cap ? cap : env_size("RAAG_CAP")) {
            cfg.cap = *c;
        }
        if (auto w = workers ? workers : env_size("RAAG_WORKERS")) {
            cfg.workers = *w;
        }
        return cfg;
    }

    std::string mode() const { return heuristic ? "heuristic" : strict ? "strict" : "auto"; }
};

struct InputFlags {
    std::string path;
    std::string format;

    void add_to(CLI::App& cmd) {
        cmd.add_option("graph", path, "Graph file (.edges, .csv or .json)")->required();
        cmd.add_option("--format", format, "Input format: edges, csv or json (default: by extension)")
            ->check(CLI::IsMember({"edges", "csv", "json"}));
    }

    raag::Graph read() const {
        std::optional<raag::GraphFormat> fmt;
        if (!format.empty()) {
            fmt = raag::graph_format_from_string(format);
        }
        return raag::read_graph_file(path, fmt);
    }
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os || !(os << text)) {
        throw UsageError("cannot write '" + out_path + "'");
    }
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int run_compute(const InputFlags& in, const SolverFlags& solver, bool json, bool timings, const std::string& out) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    const raag::Graph g = in.read();
    const double parse_ms = ms_since(t0);

    const raag::SolverConfig cfg = solver.config();
    raag::HOptions opt;
    opt.strict = solver.strict;
    opt.force_heuristic = solver.heuristic;
    t0 = clock::now();
    raag::ReportDocument doc;
    doc.h = raag::compute_h(g, cfg, opt);
    const double compute_ms = ms_since(t0);

    doc.input = raag::summarize(g);
    doc.solver = {cfg.cap, solver.mode(), cfg.resolved_workers()};
    if (timings) {
        doc.timings = std::vector<std::pair<std::string, double>>{{"parse", parse_ms}, {"compute", compute_ms}};
    }
    emit(json ? raag::report_to_json(doc).dump(2) + "\n" : raag::report_to_text(doc), out);
    return kOk;
}

struct FamilyFlags {
    std::string name;
    int size = 4;
    int count = 1;
    std::size_t n = 0;
    std::string cells;
    int side = 1;
    std::string format = "edges";

    raag::FamilyCertificate certificate() const {
        using namespace raag::family;
        if (name == "edgeless") {
            return Edgeless{n};
        }
        if (name == "complete") {
            return Complete{n};
        }
        if (name == "clique-string") {
            return CliqueEdgeString{size, count};
        }
        if (name == "face-string") {
            return FaceString{count};
        }
        if (name == "grid") {
            return raag::certificate_from_string("grid cells=" + cells);
        }
        if (name == "hex") {
            return HexThickTriangle{side};
        }
        return FiveFourEdge{};
    }
};

int run_generate(const FamilyFlags& f, const std::string& out) {
    const raag::Graph g = raag::generate_family(f.certificate());
    emit(raag::serialize_graph(g, raag::graph_format_from_string(f.format)), out);
    return kOk;
}

int run_form(const InputFlags& in, const std::string& alpha_bits, const std::string& out) {
    const raag::Graph g = in.read();
    const raag::CupFormTemplate t = raag::build_cup_form(g);
    if (alpha_bits.empty()) {
        emit(raag::template_to_string(t, &g), out);
        return kOk;
    }
    raag::AlphaVector alpha;
    try {
        alpha = raag::alpha_from_bits(alpha_bits, t.clique_count());
    } catch (const raag::FormError& e) {
        throw UsageError(e.what());
    }
    const raag::Gf2Matrix m = raag::substitute(t, alpha);
    const raag::Radical radical = raag::radical_at(g, alpha);
    std::string text = m.to_string();
    if (!text.empty() && text.back() != '\n') {
        text += '\n';
    }
    text += "rank " + std::to_string(raag::rank_gf2(m)) + ", radical dimension " +
            std::to_string(radical.basis.size()) + "\n";
    for (const auto& v : radical.pretty) {
        text += "radical: " + v + "\n";
    }
    emit(text, out);
    return kOk;
}

int run_export(const InputFlags& in, bool dot, const std::string& to_format, const std::string& out) {
    const raag::Graph g = in.read();
    if (dot) {
        emit(raag::to_dot(g), out);
    } else {
        emit(raag::serialize_graph(g, raag::graph_format_from_string(to_format)), out);
    }
    return kOk;
}

int run_verify(const SolverFlags& solver) {
    const raag::SolverConfig cfg = solver.config();
    std::size_t passed = 0;
    const auto criteria = raag::acceptance::criteria();
    for (const auto& c : criteria) {
        const auto r = raag::acceptance::run(c, cfg);
        std::cout << raag::acceptance::format(r) << std::endl;
        passed += r.pass ? 1 : 0;
    }
    std::cout << passed << "/" << criteria.size() << " criteria passed\n";
    return passed == criteria.size() ? kOk : kCriterionFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds and exact values of h for right-angled Artin groups"};
    app.require_subcommand(1);

    InputFlags input;
    SolverFlags solver;
    std::string out;

    auto* compute = app.add_subcommand("compute", "Bounds, m2 and exact h for a graph");
    bool json = false;
    bool timings = false;
    input.add_to(*compute);
    solver.add_to(*compute);
    compute->add_flag("--json", json, "Structured report instead of text");
    compute->add_flag("--timings", timings, "Include per-stage wall-clock times");
    compute->add_option("--out", out, "Write to this file instead of standard output");

    auto* generate = app.add_subcommand("generate", "Write a catalog graph");
    FamilyFlags family;
    generate->add_option("family", family.name, "Family name")
        ->required()
        ->check(CLI::IsMember(
            {"edgeless", "complete", "clique-string", "face-string", "grid", "hex", "five-four-edge"}));
    generate->add_option("--size", family.size, "Clique size for clique-string (4..7)");
    generate->add_option("--count", family.count, "Number of cliques for clique-string and face-string");
    generate->add_option("--n", family.n, "Vertex count for edgeless and complete");
    generate->add_option("--cells", family.cells, "Grid cells as x,y;x,y;...");
    generate->add_option("--side", family.side, "Side length for hex");
    generate->add_option("--format", family.format, "Output format")->check(CLI::IsMember({"edges", "csv", "json"}));
    generate->add_option("--out", out, "Write to this file instead of standard output");

    auto* form = app.add_subcommand("form", "Print the cup-product template, or the 0/1 form at an alpha");
    InputFlags form_input;
    std::string alpha;
    form_input.add_to(*form);
    form->add_option("--alpha", alpha, "Bit string, character i is the coefficient of clique i+1");
    form->add_option("--out", out, "Write to this file instead of standard output");

    auto* exporter = app.add_subcommand("export", "Convert a graph to another format or to Graphviz");
    InputFlags export_input;
    bool dot = false;
    std::string to_format = "edges";
    export_input.add_to(*exporter);
    exporter->add_flag("--dot", dot, "Graphviz output");
    exporter->add_option("--to", to_format, "Output graph format")->check(CLI::IsMember({"edges", "csv", "json"}));
    exporter->add_option("--out", out, "Write to this file instead of standard output");

    auto* verify = app.add_subcommand("verify-paper", "Run the acceptance corpus and print one line per criterion");
    SolverFlags verify_solver;
    verify->add_option("--workers", verify_solver.workers, "Solver threads, 0 = all hardware threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*compute) {
            return run_compute(input, solver, json, timings, out);
        }
        if (*generate) {
            return run_generate(family, out);
        }
        if (*form) {
            return run_form(form_input, alpha, out);
        }
        if (*exporter) {
            return run_export(export_input, dot, to_format, out);
        }
        if (*verify) {
            return run_verify(verify_solver);
        }
    } catch (const raag::ParseError& e) {
        std::cerr << "raag: " << e.what() << '\n';
        return kParse;
    } catch (const raag::CapExceeded& e) {
        std::cerr << "raag: " << e.what() << '\n';
        return kCap;
    } catch (const UsageError& e) {
        std::cerr << "raag: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "raag: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
