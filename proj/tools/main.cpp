// chordalpart: build the recursive counterexample families, check chordality /
// perfection / tree-decompositions, and exhaustively certify the partition
// lemmas on desk-scale instances.
//
// Exit codes: 0 success/certified, 1 verification failures or property false,
// 2 resource cap refused, 3 usage or input errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "chp/construct.hpp"
#include "chp/graph_io.hpp"
#include "chp/recognition.hpp"
#include "chp/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;
constexpr int kExitCap = 2;
constexpr int kExitUsage = 3;

struct ConstructArgs {
    std::string family;
    int k = 1, r = 1, t = 1;
    std::string formats = "g6,json";
    std::string output_dir = ".";
    std::string prefix;
    long long vertex_cap = chp::kDefaultVertexCap;
    bool force_size = false;
};

struct VerifyArgs {
    std::string lemma;
    std::string graph_path;
    std::string family;
    int k = 1, r = 1, t = 1;
    int workers = 1;
    int enum_cap = chp::kDefaultEnumCap;
    long long vertex_cap = chp::kDefaultVertexCap;
    std::string report_path;
    std::string ndjson_path;
    bool stream_all = false;
};

struct CheckArgs {
    std::string graph_path;
    std::string property;
    std::string decomp_path;
    std::string cert_path;
    int perfect_cap = chp::kDefaultPerfectCap;
};

struct SearchArgs {
    std::string graph_path;
    std::string quotient = "chordal";
    std::string predicate = "bipartite";
    int arg = 0;
    int enum_cap = chp::kDefaultEnumCap;
};

chp::FamilyKind family_kind(const std::string& name) {
    if (name == "chordal") return chp::FamilyKind::chordal;
    if (name == "perfect") return chp::FamilyKind::perfect;
    if (name == "general") return chp::FamilyKind::general;
    throw chp::GraphError("unknown family: " + name);
}

chp::ConstructionResult build_family(const std::string& family, int k, int r, int t,
                                     const chp::BuildOptions& opts) {
    switch (family_kind(family)) {
        case chp::FamilyKind::chordal:
            return chp::build_chordal(k, r, opts);
        case chp::FamilyKind::perfect:
            return chp::build_perfect(k, r, opts);
        case chp::FamilyKind::general:
            return chp::build_general(k, t, r, opts);
    }
    throw chp::GraphError("unreachable");
}

json attachment_log_json(const chp::ConstructionResult& result) {
    json log = json::array();
    for (const auto& a : result.attachment_log) {
        json entry;
        entry["kind"] = a.kind == chp::Attachment::Kind::gadget ? "gadget" : "copy";
        entry["family"] = a.family_cliques;
        entry["attached"] = a.attached_vertices;
        log.push_back(std::move(entry));
    }
    return log;
}

int run_construct(const ConstructArgs& args) {
    chp::BuildOptions opts;
    opts.vertex_cap = args.vertex_cap;
    opts.force = args.force_size;

    chp::ConstructionResult result;
    try {
        result = build_family(args.family, args.k, args.r, args.t, opts);
    } catch (const chp::CapExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        std::cerr << "  family=" << args.family << " k=" << args.k << " r=" << args.r;
        if (args.family == "general") std::cerr << " t=" << args.t;
        std::cerr << "  predicted_vertices=" << e.requested()
                  << " cap=" << e.limit() << " (use --force-size to build anyway)\n";
        return kExitCap;
    }

    std::filesystem::create_directories(args.output_dir);
    std::string prefix = args.prefix;
    if (prefix.empty()) {
        prefix = args.family + "_k" + std::to_string(args.k) + "_r" + std::to_string(args.r);
        if (args.family == "general") prefix += "_t" + std::to_string(args.t);
    }
    std::string base = (std::filesystem::path(args.output_dir) / prefix).string();

    std::vector<std::string> written;
    for (size_t start = 0; start < args.formats.size();) {
        size_t comma = args.formats.find(',', start);
        std::string fmt = args.formats.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        start = comma == std::string::npos ? args.formats.size() : comma + 1;
        if (fmt == "g6") {
            chp::write_text_file(base + ".g6", chp::to_graph6(result.graph) + "\n");
            written.push_back(base + ".g6");
        } else if (fmt == "json") {
            chp::write_text_file(base + ".json", chp::graph_to_json(result.graph));
            written.push_back(base + ".json");
        } else if (fmt == "dot") {
            chp::write_text_file(base + ".dot", chp::to_dot(result.graph));
            written.push_back(base + ".dot");
        } else if (!fmt.empty()) {
            std::cerr << "unknown format: " << fmt << " (expected g6, json, dot)\n";
            return kExitUsage;
        }
    }

    if (result.decomposition) {
        chp::write_text_file(base + ".decomp.json",
                             chp::decomposition_to_json(*result.decomposition));
        written.push_back(base + ".decomp.json");
    }
    chp::write_text_file(base + ".attach.json", attachment_log_json(result).dump(2));
    written.push_back(base + ".attach.json");

    long long bound = 0;
    if (args.family == "chordal") bound = chp::s_bound(args.k, args.r);
    if (args.family == "perfect") bound = chp::t_bound(args.k, args.r);

    std::cout << args.family << " k=" << args.k << " r=" << args.r;
    if (args.family == "general") std::cout << " t=" << args.t;
    std::cout << ": n=" << result.graph.num_vertices() << " m=" << result.graph.num_edges()
              << " predicted=" << result.predicted_size;
    if (result.decomposition) {
        std::cout << " bag_bound=" << bound << " width=" << chp::width(*result.decomposition)
                  << " (bound " << bound - 1 << ")";
    }
    std::cout << "\n";
    for (const auto& path : written) std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int run_verify(const VerifyArgs& args) {
    chp::Graph graph;
    if (!args.graph_path.empty()) {
        graph = chp::read_graph_file(args.graph_path);
    } else if (!args.family.empty()) {
        chp::BuildOptions build_opts;
        build_opts.vertex_cap = args.vertex_cap;
        graph = build_family(args.family, args.k, args.r, args.t, build_opts).graph;
    } else {
        std::cerr << "verify: need --graph or --family\n";
        return kExitUsage;
    }

    chp::VerifyOptions opts;
    opts.enum_cap = args.enum_cap;
    opts.workers = args.workers;
    opts.stream_all = args.stream_all;
    std::ofstream ndjson_file;
    if (!args.ndjson_path.empty()) {
        ndjson_file.open(args.ndjson_path);
        if (!ndjson_file) {
            std::cerr << "cannot write " << args.ndjson_path << "\n";
            return kExitUsage;
        }
        opts.ndjson = &ndjson_file;
    }

    chp::VerificationReport report;
    if (args.lemma == "chordal-lemma") {
        report = chp::verify_chordal_lemma(graph, args.k, args.r, opts);
    } else if (args.lemma == "perfect-lemma") {
        report = chp::verify_perfect_lemma(graph, args.k, args.r, opts);
    } else if (args.lemma == "general-lemma") {
        report = chp::verify_general_lemma(graph, args.k, args.t, args.r, opts);
    } else {
        std::cerr << "unknown lemma: " << args.lemma
                  << " (expected chordal-lemma, perfect-lemma, general-lemma)\n";
        return kExitUsage;
    }

    if (!args.report_path.empty()) {
        chp::write_text_file(args.report_path, chp::report_to_json(report));
        std::cerr << "report: " << args.report_path << "\n";
    }
    if (!args.ndjson_path.empty()) std::cerr << "failure stream: " << args.ndjson_path << "\n";

    std::cout << report.lemma << "-lemma on n=" << report.graph_n << " m=" << report.graph_m
              << " (k=" << report.k << " r=" << report.r;
    if (report.lemma == "general") std::cout << " t=" << report.t;
    std::cout << "): connected_partitions=" << report.partition_count
              << " filtered=" << report.filtered_count << " failures=" << report.failures.size()
              << " -> " << (report.certified() ? "certified" : "FAILED") << " ("
              << report.wall_seconds << "s, " << report.workers << " worker"
              << (report.workers == 1 ? "" : "s") << ")\n";
    if (!report.certified()) {
        constexpr size_t kMaxPrinted = 10;
        for (size_t i = 0; i < report.failures.size() && i < kMaxPrinted; ++i)
            std::cout << "failure: " << chp::failure_to_ndjson(report.failures[i], report.lemma)
                      << "\n";
        if (report.failures.size() > kMaxPrinted)
            std::cout << "... and " << report.failures.size() - kMaxPrinted
                      << " more failures (use --ndjson/--report for the full set)\n";
    }
    return report.certified() ? kExitOk : kExitFailures;
}

int run_check(const CheckArgs& args) {
    chp::Graph graph = chp::read_graph_file(args.graph_path);
    json cert;

    int exit_code = kExitOk;
    if (args.property == "chordal") {
        auto res = chp::is_chordal(graph);
        cert["property"] = "chordal";
        cert["holds"] = res.chordal;
        if (res.chordal) {
            cert["elimination_order"] = res.elimination_order;
            std::cout << "chordal: true (perfect elimination ordering of "
                      << res.elimination_order.size() << " vertices)\n";
        } else {
            cert["hole"] = res.hole;
            std::cout << "chordal: false (induced cycle of length " << res.hole.size() << ")\n";
            exit_code = kExitFailures;
        }
    } else if (args.property == "perfect") {
        auto res = chp::is_perfect_small(graph, args.perfect_cap);
        cert["property"] = "perfect";
        cert["holds"] = res.perfect;
        if (res.perfect) {
            std::cout << "perfect: true (no odd hole in the graph or its complement)\n";
        } else {
            cert["hole"] = res.hole;
            cert["in_complement"] = res.certificate_in_complement;
            std::cout << "perfect: false (odd "
                      << (res.certificate_in_complement ? "antihole" : "hole") << " of length "
                      << res.hole.size() << ")\n";
            exit_code = kExitFailures;
        }
    } else if (args.property == "treewidth-cert") {
        if (args.decomp_path.empty()) {
            std::cerr << "treewidth-cert needs --decomp\n";
            return kExitUsage;
        }
        chp::TreeDecomposition td =
            chp::decomposition_from_json(chp::read_text_file(args.decomp_path));
        auto violations = chp::validate(graph, td);
        cert["property"] = "treewidth-cert";
        cert["holds"] = violations.empty();
        cert["violations"] = json::array();
        for (const auto& v : violations) cert["violations"].push_back(v.message);
        if (violations.empty()) {
            cert["width"] = chp::width(td);
            std::cout << "treewidth-cert: ok, width " << chp::width(td) << "\n";
        } else {
            std::cout << "treewidth-cert: invalid (" << violations.size() << " violations)\n";
            for (const auto& v : violations) std::cerr << "  " << v.message << "\n";
            exit_code = kExitFailures;
        }
    } else {
        std::cerr << "unknown property: " << args.property
                  << " (expected chordal, perfect, treewidth-cert)\n";
        return kExitUsage;
    }

    if (!args.cert_path.empty()) {
        chp::write_text_file(args.cert_path, cert.dump(2));
        std::cerr << "certificate: " << args.cert_path << "\n";
    }
    return exit_code;
}

int run_search(const SearchArgs& args) {
    chp::Graph graph = chp::read_graph_file(args.graph_path);

    chp::QuotientFilter filter;
    if (args.quotient == "chordal") filter = chp::QuotientFilter::chordal;
    else if (args.quotient == "perfect") filter = chp::QuotientFilter::perfect;
    else if (args.quotient == "any") filter = chp::QuotientFilter::any;
    else {
        std::cerr << "unknown quotient class: " << args.quotient << "\n";
        return kExitUsage;
    }

    chp::PartPredicate predicate;
    if (args.predicate == "bipartite") predicate = chp::PartPredicate::bipartite;
    else if (args.predicate == "clique-free") predicate = chp::PartPredicate::clique_free;
    else if (args.predicate == "max-size") predicate = chp::PartPredicate::max_size;
    else {
        std::cerr << "unknown predicate: " << args.predicate
                  << " (expected bipartite, clique-free, max-size)\n";
        return kExitUsage;
    }

    auto result = chp::search_partition(graph, filter, predicate, args.arg, args.enum_cap);
    if (result.found) {
        std::cout << "found after " << result.examined
                  << " candidates: " << chp::partition_to_json(*result.found) << "\n";
        return kExitOk;
    }
    std::cout << "exhausted: no " << args.quotient << " partition with " << args.predicate
              << " parts among " << result.examined << " connected partitions\n";
    return kExitFailures;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chordal/perfect partition counterexample constructions and verification"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success/certified, 1 verification failures or property false,\n"
               "2 resource cap refused, 3 usage or input errors.");
    app.set_config("--config", "", "INI config file (sections per subcommand)")
        ->envname("CHORDALPART_CONFIG");

    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "Build a counterexample family instance");
    construct->add_option("family", cargs.family, "chordal | perfect | general")->required();
    construct->add_option("-k", cargs.k, "clique parameter")->required();
    construct->add_option("-r", cargs.r, "round parameter")->required();
    construct->add_option("-t", cargs.t, "target-graph size (general family)");
    construct->add_option("--formats", cargs.formats, "comma list of g6,json,dot");
    construct->add_option("-o,--output-dir", cargs.output_dir, "output directory");
    construct->add_option("--prefix", cargs.prefix, "output file prefix");
    construct->add_option("--vertex-cap", cargs.vertex_cap, "size refusal threshold");
    construct->add_flag("--force-size", cargs.force_size, "build past the vertex cap");

    VerifyArgs vargs;
    auto* verify = app.add_subcommand("verify", "Exhaustively certify a lemma on an instance");
    verify->add_option("lemma", vargs.lemma, "chordal-lemma | perfect-lemma | general-lemma")
        ->required();
    verify->add_option("--graph", vargs.graph_path, "graph file (.g6/.json)");
    verify->add_option("--family", vargs.family, "build chordal|perfect|general instead");
    verify->add_option("-k", vargs.k, "lemma parameter k")->required();
    verify->add_option("-r", vargs.r, "lemma parameter r")->required();
    verify->add_option("-t", vargs.t, "lemma parameter t (general)");
    verify->add_option("--workers", vargs.workers, "worker threads");
    verify->add_option("--enum-cap", vargs.enum_cap, "max vertices for enumeration");
    verify->add_option("--vertex-cap", vargs.vertex_cap, "construction size cap");
    verify->add_option("--report", vargs.report_path, "write the JSON report here");
    verify->add_option("--ndjson", vargs.ndjson_path, "stream failure records here");
    verify->add_flag("--stream-all", vargs.stream_all, "stream every partition record");

    CheckArgs kargs;
    auto* check = app.add_subcommand("check", "Check a property of a graph file");
    check->add_option("graph", kargs.graph_path, "graph file (.g6/.json)")->required();
    check->add_option("property", kargs.property, "chordal | perfect | treewidth-cert")
        ->required();
    check->add_option("--decomp", kargs.decomp_path, "decomposition JSON (treewidth-cert)");
    check->add_option("--cert", kargs.cert_path, "write the certificate JSON here");
    check->add_option("--perfect-cap", kargs.perfect_cap, "vertex cap for the perfection test");

    SearchArgs sargs;
    auto* search = app.add_subcommand("search", "Search for a partition with given properties");
    search->add_option("graph", sargs.graph_path, "graph file (.g6/.json)")->required();
    search->add_option("--quotient", sargs.quotient, "chordal | perfect | any");
    search->add_option("--parts", sargs.predicate, "bipartite | clique-free | max-size");
    search->add_option("--arg", sargs.arg, "predicate argument (k or m)");
    search->add_option("--enum-cap", sargs.enum_cap, "max vertices for enumeration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (construct->parsed()) return run_construct(cargs);
        if (verify->parsed()) return run_verify(vargs);
        if (check->parsed()) return run_check(kargs);
        if (search->parsed()) return run_search(sargs);
    } catch (const chp::CapExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitCap;
    } catch (const chp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const chp::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
