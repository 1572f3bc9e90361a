#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "latdom/bounds.hpp"
#include "latdom/constructions.hpp"
#include "latdom/graph.hpp"
#include "latdom/latin.hpp"
#include "latdom/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerify = 4;

latdom::LatinSquare load_square(const std::string& path) {
    if (path == "-")
        return latdom::read_square(std::cin);
    std::ifstream in(path);
    if (!in)
        throw latdom::ParseError("cannot open '" + path + "'");
    return latdom::read_square(in);
}

void emit_square(const latdom::LatinSquare& square, const std::string& path) {
    if (path.empty() || path == "-") {
        latdom::write_square(std::cout, square);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw latdom::ParseError("cannot open '" + path + "' for writing");
    latdom::write_square(out, square);
}

void emit_certificate(const latdom::DominationCertificate& cert, const std::string& path) {
    if (path.empty())
        return;
    if (path == "-") {
        latdom::write_certificate(std::cout, cert);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw latdom::ParseError("cannot open '" + path + "' for writing");
    latdom::write_certificate(out, cert);
}

std::string render_cells(const latdom::DominationCertificate& cert) {
    std::string out;
    for (const latdom::CellTriple& t : cert.set.cells(cert.square)) {
        if (!out.empty())
            out += ' ';
        out += latdom::to_string(t);
    }
    return out;
}

std::string mode_name(latdom::DominationMode mode) {
    if (!mode.total())
        return "dom";
    return "ktt k=" + std::to_string(mode.k);
}

std::string structure_name(const latdom::StructureInfo& st) {
    switch (st.kind) {
    case latdom::SquareStructure::Cyclic:
        return "cyclic";
    case latdom::SquareStructure::QStep:
        return "qstep q=" + std::to_string(st.q) + " m=" + std::to_string(st.m);
    default:
        return "general";
    }
}

struct GenArgs {
    std::string kind;
    int n = 0;
    int q = 0;
    int m = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_gen(const GenArgs& args) {
    std::optional<latdom::LatinSquare> square;
    if (args.kind == "cyclic") {
        if (args.n < 1) {
            std::cerr << "gen --kind cyclic needs --n\n";
            return kExitUsage;
        }
        square = latdom::LatinSquare::cyclic(args.n);
    } else if (args.kind == "qstep") {
        if (args.q < 1 || args.m < 1) {
            std::cerr << "gen --kind qstep needs --q and --m\n";
            return kExitUsage;
        }
        square = latdom::LatinSquare::q_step(args.q, args.m);
    } else {
        latdom::LatinSquare base = (args.q >= 1 && args.m >= 1)
                                       ? latdom::LatinSquare::q_step(args.q, args.m)
                                       : (args.n >= 1 ? latdom::LatinSquare::cyclic(args.n)
                                                      : throw latdom::ParseError(
                                                            "gen --kind random needs --n, or --q and --m"));
        square = latdom::random_isotopy_square(base, args.seed).square;
    }
    emit_square(*square, args.out);
    if (!args.out.empty() && args.out != "-")
        std::cout << "wrote order-" << square->order() << " " << args.kind << " square to "
                  << args.out << "\n";
    return kExitOk;
}

struct SolveArgs {
    std::string input = "-";
    std::string mode = "dom";
    int k = 1;
    std::uint64_t budget = 0;
    int threads = 1;
    bool deterministic = true;
    std::string out;
};

int run_solve(const SolveArgs& args) {
    if (args.mode == "dom" && args.k != 1) {
        std::cerr << "--k applies only to --mode ktt\n";
        return kExitUsage;
    }
    const latdom::LatinSquare square = load_square(args.input);
    const latdom::LatinSquareGraph graph(square);
    const latdom::DominationMode mode = (args.mode == "dom")
                                            ? latdom::DominationMode::dominating()
                                            : latdom::DominationMode::ktuple_total(args.k);
    latdom::SolveOptions options;
    if (args.budget > 0)
        options.node_budget = args.budget;
    options.deterministic = args.deterministic;
    options.threads = args.threads;

    latdom::SolveStats stats;
    const latdom::DominationCertificate cert = latdom::solve_exact(graph, mode, options, &stats);
    std::cout << cert.size << "\n";
    std::cout << "optimal " << (cert.optimal ? "true" : "false") << "\n";
    std::cout << "set " << render_cells(cert) << "\n";
    std::cerr << "nodes " << stats.nodes << "\n";
    emit_certificate(cert, args.out);
    return cert.optimal ? kExitOk : kExitBudget;
}

struct ConstructArgs {
    std::string input;
    std::string method;
    int k = 1;
    int q = 0;
    int m = 0;
    int n = 0;
    std::string out;
};

int run_construct(const ConstructArgs& args) {
    std::optional<latdom::LatinSquare> square;
    latdom::DominationMode mode = latdom::DominationMode::dominating();
    latdom::VertexSet set;

    if (args.method == "ktds") {
        if (args.input.empty()) {
            std::cerr << "construct --method ktds needs an input square\n";
            return kExitUsage;
        }
        square = load_square(args.input);
        mode = latdom::DominationMode::ktuple_total(args.k);
        set = latdom::ktds_construction(*square, args.k);
    } else if (args.method == "qstep") {
        if (args.q < 1 || args.m < 1) {
            std::cerr << "construct --method qstep needs --q and --m\n";
            return kExitUsage;
        }
        square = args.input.empty() ? latdom::LatinSquare::q_step(args.q, args.m)
                                    : load_square(args.input);
        mode = latdom::DominationMode::ktuple_total(1);
        set = latdom::qstep_1tds_construction(args.q, args.m, *square);
    } else if (args.method == "cyclic") {
        if (args.input.empty()) {
            if (args.n < 3) {
                std::cerr << "construct --method cyclic needs an input square or --n\n";
                return kExitUsage;
            }
            square = latdom::LatinSquare::cyclic(args.n);
        } else {
            square = load_square(args.input);
            if (*square != latdom::LatinSquare::cyclic(square->order())) {
                std::cerr << "construct --method cyclic needs the canonical cyclic square\n";
                return kExitUsage;
            }
        }
        set = latdom::cyclic_domination_construction(square->order());
    } else if (args.method == "general") {
        if (args.input.empty()) {
            std::cerr << "construct --method general needs an input square\n";
            return kExitUsage;
        }
        square = load_square(args.input);
        set = latdom::general_domination_construction(*square).set;
    } else {
        std::cerr << "unknown method '" << args.method << "'\n";
        return kExitUsage;
    }

    const latdom::LatinSquareGraph graph(*square);
    const latdom::VerifyResult check = latdom::verify(graph, set, mode);
    latdom::DominationCertificate cert{*square, mode, set, set.count(), false, args.method};
    if (!check.ok()) {
        std::cerr << "constructed set fails verification:\n";
        for (const latdom::Violation& v : check.violations)
            std::cerr << "  " << latdom::to_string(v.vertex) << " short by " << v.shortfall << "\n";
        return kExitVerify;
    }
    std::cout << cert.size << "\n";
    std::cout << "set " << render_cells(cert) << "\n";
    emit_certificate(cert, args.out);
    return kExitOk;
}

struct VerifyArgs {
    std::string input;
};

int run_verify(const VerifyArgs& args) {
    std::ifstream in(args.input);
    if (!in) {
        std::cerr << "cannot open '" << args.input << "'\n";
        return kExitUsage;
    }
    const latdom::DominationCertificate cert = latdom::read_certificate(in);
    const latdom::LatinSquareGraph graph(cert.square);
    const latdom::VerifyResult check = latdom::verify(graph, cert.set, cert.mode);
    if (!check.ok()) {
        std::cout << "FAIL: " << check.violations.size() << " vertices below demand\n";
        for (const latdom::Violation& v : check.violations)
            std::cout << "  " << latdom::to_string(v.vertex) << " short by " << v.shortfall << "\n";
        return kExitVerify;
    }
    const latdom::StructureInfo st = latdom::detect_structure(cert.square);
    const latdom::BoundsReport report =
        cert.mode.total() ? latdom::ktds_bounds(cert.square.order(), cert.mode.k, st)
                          : latdom::gamma_bounds(cert.square.order(), st);
    const latdom::ConsistencyResult cc = latdom::consistency_check(report, cert);
    if (!cc.ok) {
        std::cout << "FAIL: " << cc.message << "\n";
        return kExitVerify;
    }
    std::cout << "ok: size " << cert.size << " " << mode_name(cert.mode) << " set on an order-"
              << cert.square.order() << " square (" << structure_name(st) << "), bounds ["
              << report.lower.value << ", " << report.upper.value << "]\n";
    return kExitOk;
}

struct BoundsArgs {
    int n = 0;
    int n_to = 0;
    int k = 0; // 0 means plain domination
    std::string structure = "general";
    int q = 0;
    int m = 0;
    std::string csv;
};

latdom::StructureInfo parse_structure(const BoundsArgs& args, int n) {
    if (args.structure == "general")
        return latdom::StructureInfo::general();
    if (args.structure == "cyclic")
        return latdom::StructureInfo::cyclic();
    if (args.structure == "qstep") {
        if (args.q < 1 || args.m < 1 || args.q * args.m != n)
            throw latdom::ParseError("--structure qstep needs --q and --m with q*m = n");
        return latdom::StructureInfo::q_step(args.q, args.m);
    }
    throw latdom::ParseError("unknown structure '" + args.structure + "'");
}

latdom::BoundsReport report_for(const BoundsArgs& args, int n) {
    const latdom::StructureInfo st = parse_structure(args, n);
    return args.k >= 1 ? latdom::ktds_bounds(n, args.k, st) : latdom::gamma_bounds(n, st);
}

int run_bounds(const BoundsArgs& args) {
    if (args.n < 2) {
        std::cerr << "bounds needs --n at least 2\n";
        return kExitUsage;
    }
    const int n_to = args.n_to > 0 ? args.n_to : args.n;
    if (n_to < args.n) {
        std::cerr << "--n-to must not be below --n\n";
        return kExitUsage;
    }
    if (n_to != args.n && args.structure == "qstep") {
        std::cerr << "ranges support --structure general or cyclic\n";
        return kExitUsage;
    }

    if (!args.csv.empty()) {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (args.csv != "-") {
            file.open(args.csv);
            if (!file) {
                std::cerr << "cannot open '" << args.csv << "' for writing\n";
                return kExitUsage;
            }
            out = &file;
        }
        *out << "n,mode,k,structure,lower,upper,exact,lower_source,upper_source\n";
        for (int n = args.n; n <= n_to; ++n) {
            const latdom::BoundsReport rep = report_for(args, n);
            *out << n << "," << (rep.mode.total() ? "ktt" : "dom") << ","
                 << (rep.mode.total() ? rep.mode.k : 1) << "," << args.structure << ","
                 << rep.lower.value << "," << rep.upper.value << ","
                 << (rep.exact ? std::to_string(rep.exact->value) : "") << ",\""
                 << rep.lower.source << "\",\"" << rep.upper.source << "\"\n";
        }
        return kExitOk;
    }

    for (int n = args.n; n <= n_to; ++n) {
        const latdom::BoundsReport rep = report_for(args, n);
        std::cout << "n " << n << "  mode " << mode_name(rep.mode) << "  structure "
                  << args.structure << "\n";
        std::cout << "lower " << rep.lower.value << "  [" << rep.lower.source << "]\n";
        std::cout << "upper " << rep.upper.value << "  [" << rep.upper.source << "]\n";
        if (rep.exact)
            std::cout << "exact " << rep.exact->value << "  [" << rep.exact->source << "]\n";
        else
            std::cout << "exact -\n";
        std::cout << "sources\n";
        for (const latdom::TheoremSource& src : rep.sources)
            std::cout << "  " << src.label << ": " << src.formula << "\n";
    }
    return kExitOk;
}

struct GraphArgs {
    std::string input = "-";
    std::string edges;
};

int run_graph(const GraphArgs& args) {
    const latdom::LatinSquare square = load_square(args.input);
    const latdom::LatinSquareGraph graph(square);
    std::cout << "order " << graph.order() << "\n";
    std::cout << "vertices " << graph.vertex_count() << "\n";
    std::cout << "edges " << graph.edge_count() << "\n";
    std::cout << "degree " << graph.degree() << "\n";
    if (!args.edges.empty()) {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (args.edges != "-") {
            file.open(args.edges);
            if (!file) {
                std::cerr << "cannot open '" << args.edges << "' for writing\n";
                return kExitUsage;
            }
            out = &file;
        }
        for (int u = 0; u < graph.vertex_count(); ++u) {
            const latdom::CellTriple tu = graph.triple_of(u);
            for (int v : graph.neighbors(u).indices()) {
                if (v <= u)
                    continue;
                const latdom::CellTriple tv = graph.triple_of(v);
                *out << tu.r << " " << tu.c << " " << tv.r << " " << tv.c << "\n";
            }
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latin square graph domination toolkit"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a latin square");
    gen->add_option("--kind", gen_args.kind, "cyclic, qstep or random")
        ->required()
        ->check(CLI::IsMember({"cyclic", "qstep", "random"}));
    gen->add_option("--n", gen_args.n, "order for cyclic or random");
    gen->add_option("--q", gen_args.q, "block size for qstep");
    gen->add_option("--m", gen_args.m, "block count for qstep");
    gen->add_option("--seed", gen_args.seed, "seed for random");
    gen->add_option("--out", gen_args.out, "output file (default stdout)");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "exact minimum dominating set");
    solve->add_option("input", solve_args.input, "square file, - for stdin");
    solve->add_option("--mode", solve_args.mode, "dom or ktt")
        ->check(CLI::IsMember({"dom", "ktt"}));
    solve->add_option("--k", solve_args.k, "demand for ktt mode");
    solve->add_option("--budget", solve_args.budget, "node budget, 0 = unlimited");
    solve->add_option("--threads", solve_args.threads, "worker threads");
    solve->add_flag("--deterministic,!--no-deterministic", solve_args.deterministic,
                    "lexicographic tie-breaking (default on)");
    solve->add_option("--out", solve_args.out, "write a certificate here");

    ConstructArgs construct_args;
    CLI::App* construct = app.add_subcommand("construct", "run a closed-form builder");
    construct->add_option("input", construct_args.input, "square file, - for stdin");
    construct->add_option("--method", construct_args.method, "ktds, qstep, cyclic or general")
        ->required()
        ->check(CLI::IsMember({"ktds", "qstep", "cyclic", "general"}));
    construct->add_option("--k", construct_args.k, "demand for ktds");
    construct->add_option("--q", construct_args.q, "block size for qstep");
    construct->add_option("--m", construct_args.m, "block count for qstep");
    construct->add_option("--n", construct_args.n, "order for cyclic without an input file");
    construct->add_option("--out", construct_args.out, "write a certificate here");

    VerifyArgs verify_args;
    CLI::App* vrfy = app.add_subcommand("verify", "recheck a certificate");
    vrfy->add_option("input", verify_args.input, "certificate file")->required();

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "closed-form bound report");
    bounds->add_option("--n", bounds_args.n, "order")->required();
    bounds->add_option("--n-to", bounds_args.n_to, "report a range of orders");
    bounds->add_option("--k", bounds_args.k, "demand; omit for plain domination");
    bounds->add_option("--structure", bounds_args.structure, "general, cyclic or qstep")
        ->check(CLI::IsMember({"general", "cyclic", "qstep"}));
    bounds->add_option("--q", bounds_args.q, "q for qstep structure");
    bounds->add_option("--m", bounds_args.m, "m for qstep structure");
    bounds->add_option("--csv", bounds_args.csv, "emit CSV to a file, - for stdout");

    GraphArgs graph_args;
    CLI::App* graphc = app.add_subcommand("graph", "graph stats and edge export");
    graphc->add_option("input", graph_args.input, "square file, - for stdin");
    graphc->add_option("--edges", graph_args.edges, "edge list file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return run_gen(gen_args);
        if (solve->parsed())
            return run_solve(solve_args);
        if (construct->parsed())
            return run_construct(construct_args);
        if (vrfy->parsed())
            return run_verify(verify_args);
        if (bounds->parsed())
            return run_bounds(bounds_args);
        if (graphc->parsed())
            return run_graph(graph_args);
    } catch (const latdom::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const latdom::ConstructionFailedError& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return kExitVerify;
    } catch (const latdom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
