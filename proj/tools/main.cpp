#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eblocks/blocks.hpp"
#include "eblocks/corpus.hpp"
#include "eblocks/error.hpp"
#include "eblocks/format.hpp"
#include "eblocks/fp.hpp"
#include "eblocks/laplacian.hpp"
#include "eblocks/matrix.hpp"
#include "eblocks/report.hpp"
#include "eblocks/torus_system.hpp"

namespace {

using namespace eblocks;
using ordered = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::malformed_text, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const Report& r, bool json) {
    std::cout << (json ? report_json(r) : report_text(r));
}

// Prime precedence: an explicit flag must agree with the file when both are
// present; otherwise whichever exists wins.
int64_t pick_prime(const GraphFile& f, std::optional<int64_t> flag) {
    if (f.prime && flag && *f.prime != *flag)
        throw error(errc::bad_argument, "--prime " + std::to_string(*flag) +
                                            " disagrees with the file's prime " +
                                            std::to_string(*f.prime));
    if (flag) return *flag;
    if (f.prime) return *f.prime;
    throw error(errc::bad_argument, "no prime: pass --prime or put one in the file");
}

ModularLabeling total_labeling(const GraphFile& f, int64_t p) {
    if (!f.torus_values.empty())
        throw error(errc::bad_value, "expected integer lambdas, found rational pairs");
    return ModularLabeling::create(f.graph, p, f.mod_values);
}

// A block file is a graph file plus boundary data; commands that only need
// the graph and labeling accept either kind.
struct LoadedGraph {
    GraphFile file;
    std::optional<BlockCandidate> block;
};

LoadedGraph load_graphish(const std::string& text) {
    const auto probe = nlohmann::json::parse(text, nullptr, false);
    if (probe.is_object() && probe.contains("boundary_edge")) {
        BlockCandidate c = parse_block(text);
        GraphFile f{c.labeling.p, c.graph, c.labeling.values, {}};
        return {std::move(f), std::move(c)};
    }
    return {parse_graph(text), std::nullopt};
}

Edge parse_site(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == s.size())
        throw error(errc::bad_argument, "--site wants 'u,v', got '" + s + "'");
    return Edge(s.substr(0, comma), s.substr(comma + 1));
}

BuildingBlock load_block(const std::string& name_or_path) {
    if (corpus_blocks().count(name_or_path)) return corpus_block(name_or_path);
    return BuildingBlock::create(parse_block(slurp(name_or_path)));
}

uint64_t seed_value(std::optional<uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ELLIPTIC_BLOCKS_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw error(errc::bad_argument,
                        std::string("ELLIPTIC_BLOCKS_SEED is not an integer: '") + env + "'");
        }
    }
    return 0;
}

ordered branch_outcome_json(const BranchOutcome& o) {
    ordered j;
    j["special_vertices"] = o.special_vertices;
    j["finite"] = o.finite;
    if (o.finite)
        j["count"] = o.count.get_str();
    else
        j["dimension"] = o.dimension;
    return j;
}

std::string branch_outcome_text(const BranchOutcome& o) {
    std::ostringstream out;
    out << "specials {";
    for (size_t i = 0; i < o.special_vertices.size(); ++i)
        out << (i ? ", " : "") << o.special_vertices[i];
    out << "}: ";
    if (o.finite)
        out << "FINITE " << o.count.get_str();
    else
        out << "INFINITE dim " << o.dimension;
    return out.str();
}

int run_check(const std::string& path, std::optional<int64_t> prime, bool json) {
    const std::string text = slurp(path);
    const LoadedGraph loaded = load_graphish(text);
    const GraphFile& f = loaded.file;
    const int64_t p = pick_prime(f, prime);
    const ModularLabeling lam = total_labeling(f, p);
    const WeightedGraph& g = f.graph;

    Report r;
    r.command = "check";
    r.input_digest = fnv1a_hex(text);

    const bool cap = g.max_degree() <= 3;
    r.add("degree_cap", cap, cap ? "" : "max degree " + std::to_string(g.max_degree()));

    std::string bad;
    for (const auto& v : g.vertices()) {
        const int64_t res = eigen_residual(g, lam, v);
        if (res != 0) {
            bad = "residual " + std::to_string(res) + " at vertex '" + v + "'";
            break;
        }
    }
    r.add("eigenvector", bad.empty(), bad);

    const auto d2 = check_distance2_distinct(g, lam);
    r.add("distance2_distinct", d2.empty(),
          d2.empty() ? ""
                     : "vertices '" + d2.front().v + "' and '" + d2.front().w + "' share value " +
                           std::to_string(d2.front().value));

    if (cap) {
        const auto w = check_strong_irreducibility(g, lam);
        r.add("strongly_irreducible", !w,
              w ? "vertex '" + w->vertex + "' has a null neighbor subset" : "");
        r.add("degree3_nonadjacent", no_adjacent_degree3(g));
    } else {
        r.add("strongly_irreducible", false, "degree cap exceeded, not evaluated");
        r.add("degree3_nonadjacent", false, "degree cap exceeded, not evaluated");
    }

    r.add("rationally_trivial", rational_triviality(g));

    if (loaded.block) {
        const BlockReport br = validate_block(*loaded.block);
        r.add("boundary", br.boundary_ok, br.boundary_message);
    }

    emit(r, json);
    return r.ok ? 0 : 1;
}

int run_solve(const std::string& path, std::optional<int64_t> prime, bool json) {
    const std::string text = slurp(path);
    const GraphFile f = load_graphish(text).file;
    const int64_t p = pick_prime(f, prime);
    fp::require_prime(p);

    const auto basis = nullspace_mod_p(eigen_matrix(f.graph), p);
    const auto& vs = f.graph.vertices();

    Report r;
    r.command = "solve";
    r.input_digest = fnv1a_hex(text);
    r.add("nontrivial_kernel", !basis.empty(),
          "dimension " + std::to_string(basis.size()));
    ordered payload;
    payload["prime"] = p;
    payload["dimension"] = basis.size();
    ordered vecs = ordered::array();
    for (const auto& vec : basis) {
        ordered one;
        for (size_t i = 0; i < vs.size(); ++i) one[vs[i]] = vec[i];
        vecs.push_back(std::move(one));
    }
    payload["basis"] = std::move(vecs);
    r.payload = std::move(payload);

    emit(r, json);
    return r.ok ? 0 : 1;
}

int run_rational_check(const std::string& path, bool json) {
    const std::string text = slurp(path);
    const GraphFile f = load_graphish(text).file;

    Report r;
    r.command = "rational-check";
    r.input_digest = fnv1a_hex(text);
    r.add("rationally_trivial", rational_triviality(f.graph));
    emit(r, json);
    return r.ok ? 0 : 1;
}

int run_finiteness(const std::string& path, const std::string& branches_path, bool json) {
    const std::string text = slurp(path);
    const DecoratedBipartiteGraph d = parse_decorated(text);

    std::vector<BranchOutcome> outcomes;
    if (!branches_path.empty()) {
        const auto choice = parse_branches(slurp(branches_path));
        outcomes.push_back(finiteness_for(d, BranchAssignment::create(d, choice)));
    } else {
        outcomes = finiteness(d);
    }

    Report r;
    r.command = "finiteness";
    r.input_digest = fnv1a_hex(text);
    ordered payload;
    ordered arr = ordered::array();
    for (const auto& o : outcomes) {
        arr.push_back(branch_outcome_json(o));
        r.add(branch_outcome_text(o), true);
    }
    payload["branches"] = std::move(arr);
    r.payload = std::move(payload);
    emit(r, json);
    return 0;
}

int run_reduce(const std::string& path) {
    const DecoratedBipartiteGraph d = parse_decorated(slurp(path));
    const WeightedGraph g = reduce_chains(d);
    std::cout << serialize_graph(GraphFile{std::nullopt, g, {}, {}});
    return 0;
}

int run_make_h(const std::string& block) {
    const BuildingBlock blk = load_block(block);
    std::cout << serialize_open_block(make_h(blk));
    return 0;
}

int run_insert(const std::string& host_path, const std::string& site, const std::string& h_path) {
    const GraphFile hf = load_graphish(slurp(host_path)).file;
    const int64_t p = pick_prime(hf, std::nullopt);
    const LabeledGraph host{hf.graph, total_labeling(hf, p)};
    const OpenBlock h = parse_open_block(slurp(h_path));
    const LabeledGraph merged = insert_block(host, parse_site(site), h);
    std::cout << serialize_labeled_graph(merged);
    return 0;
}

int run_plan(int64_t degree, int64_t genus) {
    const auto p = plan(degree, genus);
    if (!p) {
        std::cerr << "UNREACHABLE: degree " << degree << " at genus " << genus
                  << " has no decomposition 11a + 18b + 43(genus-1) with a + b >= 1\n";
        return 1;
    }
    std::cout << serialize_plan(*p);
    return 0;
}

int run_search(int64_t prime, int max_vertices, std::optional<uint64_t> seed, bool cycles_only,
               int max_results, int trials, bool json) {
    SearchOptions opts;
    opts.max_vertices = max_vertices;
    opts.cycles_only = cycles_only;
    opts.max_results = max_results;
    opts.random_trials = trials;
    const uint64_t s = seed_value(seed);
    const auto found = search_blocks(prime, opts, s);

    Report r;
    r.command = "search";
    r.add("found_blocks", !found.empty(), std::to_string(found.size()) + " candidate(s)");
    ordered payload;
    payload["prime"] = prime;
    payload["seed"] = s;
    ordered arr = ordered::array();
    for (const auto& b : found) {
        r.add("block " + std::to_string(arr.size()), true,
              std::to_string(b.graph().vertex_count()) + " vertices, " +
                  std::to_string(b.edge_count()) + " edges, betti " + std::to_string(b.betti()));
        arr.push_back(ordered::parse(serialize_block(b)));
    }
    payload["blocks"] = std::move(arr);
    r.payload = std::move(payload);
    emit(r, json);
    return r.ok ? 0 : 1;
}

int run_appendix_verify(bool json) {
    const Report r = verify_corpus();
    emit(r, json);
    return r.ok ? 0 : 1;
}

int run_appendix_export(const std::string& dir) {
    for (const auto& f : corpus_fixtures()) {
        const std::string path = dir + "/" + f.name + ".json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw error(errc::malformed_text, "cannot write '" + path + "'");
        out << f.text;
        std::cout << path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for eigen-labeled graphs, torus systems, and block surgery"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "emit reports as JSON");

    int rc = 0;

    auto* appendix = app.add_subcommand("appendix", "built-in reference inputs");
    appendix->require_subcommand(1);
    auto* verify = appendix->add_subcommand("verify", "re-derive every corpus property");
    verify->callback([&] { rc = run_appendix_verify(json); });
    auto* exp = appendix->add_subcommand("export", "write the corpus entries as files");
    static std::string export_dir = ".";
    exp->add_option("--dir", export_dir, "output directory")->capture_default_str();
    exp->callback([&] { rc = run_appendix_export(export_dir); });

    static std::string graph_path, branches_path, block_name, host_path, site, h_path;
    static std::optional<int64_t> prime_flag;
    static int64_t prime_req = 0, degree = 0, genus = 0;
    static int max_vertices = 16, max_results = 16, trials = 200;
    static bool cycles_only = false;
    static std::optional<uint64_t> seed;

    auto* check = app.add_subcommand("check", "verify every labeling property of a graph file");
    check->add_option("--graph", graph_path, "graph file with lambdas")->required();
    check->add_option("--prime", prime_flag, "characteristic when absent from the file");
    check->callback([&] { rc = run_check(graph_path, prime_flag, json); });

    auto* solve = app.add_subcommand("solve", "eigenvector space of a graph mod p");
    solve->add_option("--graph", graph_path, "graph file")->required();
    solve->add_option("--prime", prime_flag, "characteristic when absent from the file");
    solve->callback([&] { rc = run_solve(graph_path, prime_flag, json); });

    auto* rat = app.add_subcommand("rational-check",
                                   "decide whether only the trivial rational eigenvector exists");
    rat->add_option("--graph", graph_path, "graph file")->required();
    rat->callback([&] { rc = run_rational_check(graph_path, json); });

    auto* fin = app.add_subcommand("finiteness", "branch-by-branch torus solution count");
    fin->add_option("--decorated", graph_path, "decorated bipartite graph file")->required();
    fin->add_option("--branches", branches_path, "explicit branch assignment file");
    fin->callback([&] { rc = run_finiteness(graph_path, branches_path, json); });

    auto* red = app.add_subcommand("reduce", "suppress chain-form red vertices");
    red->add_option("--decorated", graph_path, "decorated bipartite graph file")->required();
    red->callback([&] { rc = run_reduce(graph_path); });

    auto* mh = app.add_subcommand("make-h", "cut a block open along its boundary edge");
    mh->add_option("--block", block_name, "corpus name (G1, G2, G3) or block file")->required();
    mh->callback([&] { rc = run_make_h(block_name); });

    auto* ins = app.add_subcommand("insert", "splice an open block into a host site");
    ins->set_help_flag("--help", "print help"); // frees -h so --h can name the open block
    ins->add_option("--host", host_path, "labeled graph file")->required();
    ins->add_option("--site", site, "site edge as 'u,v'")->required();
    ins->add_option("--h", h_path, "open-block file")->required();
    ins->callback([&] { rc = run_insert(host_path, site, h_path); });

    auto* pl = app.add_subcommand("plan", "schedule block insertions for a degree and genus");
    pl->add_option("--degree", degree, "target edge count")->required();
    pl->add_option("--genus", genus, "target first betti number")->required();
    pl->callback([&] { rc = run_plan(degree, genus); });

    auto* se = app.add_subcommand("search", "discover blocks over F_p");
    se->add_option("--prime", prime_req, "characteristic")->required();
    se->add_option("--max-vertices", max_vertices, "largest block size")->capture_default_str();
    se->add_option("--seed", seed, "RNG seed (default: ELLIPTIC_BLOCKS_SEED or 0)");
    se->add_flag("--cycles-only", cycles_only, "skip the randomized phase");
    se->add_option("--max-results", max_results, "cap on returned blocks")->capture_default_str();
    se->add_option("--trials", trials, "random candidates to try")->capture_default_str();
    se->callback([&] {
        rc = run_search(prime_req, max_vertices, seed, cycles_only, max_results, trials, json);
    });

    // Let --json appear after the subcommand name as well as before it.
    auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
        for (CLI::App* s : a->get_subcommands({})) {
            s->fallthrough();
            self(self, s);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const eblocks::error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return 2;
    }
    return rc;
}
