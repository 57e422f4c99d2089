#include "eblocks/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "eblocks/error.hpp"
#include "eblocks/format.hpp"
#include "eblocks/laplacian.hpp"
#include "eblocks/matrix.hpp"

namespace eblocks {
namespace {

// Frozen FNV-1a hashes of each entry's canonical file form. Any deliberate
// edit to the embedded data must update the matching constant.
constexpr uint64_t g1_checksum = 0xf5c091160ba954cdULL;
constexpr uint64_t g2_checksum = 0x95f035be9c18c083ULL;
constexpr uint64_t g3_checksum = 0x98e2dc24f158f770ULL;
constexpr uint64_t singular_checksum = 0x0918aa7838c202e3ULL;

BlockCandidate make_g1() {
    const int64_t vals[11] = {1, 2, 4, 8, 16, 9, 18, 13, 3, 6, 12};
    std::vector<std::string> ids;
    std::vector<EdgeSpec> edges;
    std::map<std::string, int64_t> values;
    for (int i = 0; i < 11; ++i) {
        ids.push_back("v" + std::to_string(i));
        values[ids.back()] = vals[i];
    }
    for (int i = 0; i < 11; ++i)
        edges.push_back(EdgeSpec{ids[i], ids[(i + 1) % 11], 1, i == 0});
    auto g = WeightedGraph::create(ids, edges);
    auto lam = ModularLabeling::create(g, corpus_prime, values);
    return BlockCandidate{std::move(g), std::move(lam), Edge("v0", "v1"), 1, 2};
}

BlockCandidate make_g2() {
    const int64_t cycle_vals[15] = {1, 2, 4, 8, 15, 18, 7, 11, 9, 19, 4, 14, 8, 6, 12};
    std::vector<std::string> ids;
    std::vector<EdgeSpec> edges;
    std::map<std::string, int64_t> values;
    for (int i = 0; i < 15; ++i) {
        ids.push_back("c" + std::to_string(i));
        values[ids.back()] = cycle_vals[i];
    }
    for (int i = 0; i < 15; ++i)
        edges.push_back(EdgeSpec{ids[i], ids[(i + 1) % 15], 1, i == 0});
    const std::pair<int, int64_t> pendants[3] = {{3, 11}, {8, 21}, {13, 14}};
    for (auto [at, val] : pendants) {
        const std::string id = "b" + std::to_string(at);
        ids.push_back(id);
        values[id] = val;
        edges.push_back(EdgeSpec{"c" + std::to_string(at), id});
    }
    auto g = WeightedGraph::create(ids, edges);
    auto lam = ModularLabeling::create(g, corpus_prime, values);
    return BlockCandidate{std::move(g), std::move(lam), Edge("c0", "c1"), 1, 2};
}

BlockCandidate make_g3() {
    std::vector<std::string> ids = {"h9", "h7"};
    std::vector<EdgeSpec> edges;
    std::map<std::string, int64_t> values = {{"h9", 9}, {"h7", 7}};

    auto path = [&](const std::string& stem, const std::vector<int64_t>& vals) {
        std::string prev = "h9";
        for (size_t i = 0; i < vals.size(); ++i) {
            const std::string id = stem + std::to_string(i + 1);
            ids.push_back(id);
            values[id] = vals[i];
            edges.push_back(EdgeSpec{prev, id});
            prev = id;
        }
        edges.push_back(EdgeSpec{prev, "h7"});
    };
    auto pendant = [&](const std::string& host, const std::string& id, int64_t val) {
        ids.push_back(id);
        values[id] = val;
        edges.push_back(EdgeSpec{host, id});
    };

    path("a", {15, 17, 16, 21, 2, 7, 4, 3, 6, 12, 1, 2, 4, 19, 9, 15, 17, 16, 21, 2});
    pendant("a3", "pa3", 22);
    pendant("a8", "pa8", 7);
    pendant("a13", "pa13", 17);
    pendant("a18", "pa18", 22);
    path("b", {16, 8, 3, 11, 13, 10, 5, 14});
    pendant("b2", "pb2", 11);
    pendant("b6", "pb6", 8);
    path("c", {20, 18, 2, 10, 16});
    pendant("c4", "pc4", 8);

    for (auto& e : edges)
        if (Edge(e.u, e.v) == Edge("a11", "a12")) e.distinguished = true;

    auto g = WeightedGraph::create(ids, edges);
    auto lam = ModularLabeling::create(g, corpus_prime, values);
    return BlockCandidate{std::move(g), std::move(lam), Edge("a11", "a12"), 1, 2};
}

DecoratedBipartiteGraph make_singular() {
    auto g = WeightedGraph::create({"G", "R1", "R2"},
                                   {EdgeSpec{"G", "R1", 5}, EdgeSpec{"G", "R2", 5}});
    return DecoratedBipartiteGraph::create(
        std::move(g),
        {{"G", Color::green}, {"R1", Color::red}, {"R2", Color::red}},
        {{"R1", 2}, {"R2", 2}}, {{"R1", 1}, {"R2", 1}}, {{"G", 10}});
}

struct Entry {
    std::string name;
    std::string note;
    BlockCandidate candidate;
    int64_t edge_count;
    int64_t betti;
    uint64_t checksum;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {"G1", "cycle of length 11 over F_23; values are the powers of 2", make_g1(), 11, 1,
         g1_checksum},
        {"G2", "cycle of length 15 with three labeled pendants", make_g2(), 18, 1, g2_checksum},
        {"G3", "two degree-3 hubs joined by three pendant-decorated paths", make_g3(), 43, 2,
         g3_checksum},
    };
    return e;
}

std::string hex64(uint64_t h) {
    std::ostringstream out;
    out << "0x" << std::hex << h;
    return out.str();
}

void require_checksum(const std::string& name, const std::string& text, uint64_t expected) {
    const uint64_t actual = fnv1a(text);
    if (actual != expected)
        throw error(errc::checksum_mismatch, "corpus entry '" + name + "' hashes to " +
                                                 hex64(actual) + ", expected " + hex64(expected));
}

} // namespace

const std::map<std::string, BuildingBlock>& corpus_blocks() {
    static const std::map<std::string, BuildingBlock> blocks = [] {
        std::map<std::string, BuildingBlock> out;
        for (const auto& e : entries()) {
            require_checksum(e.name, serialize_block(e.candidate), e.checksum);
            out.emplace(e.name, BuildingBlock::create(e.candidate));
        }
        return out;
    }();
    return blocks;
}

const BuildingBlock& corpus_block(const std::string& name) {
    const auto& blocks = corpus_blocks();
    auto it = blocks.find(name);
    if (it == blocks.end())
        throw error(errc::bad_argument, "unknown corpus block '" + name + "' (have G1, G2, G3)");
    return it->second;
}

const DecoratedBipartiteGraph& corpus_singular_example() {
    static const DecoratedBipartiteGraph d = [] {
        auto built = make_singular();
        require_checksum("singular_example", serialize_decorated(built), singular_checksum);
        return built;
    }();
    return d;
}

std::vector<CorpusFixture> corpus_fixtures() {
    std::vector<CorpusFixture> out;
    for (const auto& e : entries())
        out.push_back({e.name, e.note, serialize_block(e.candidate)});
    out.push_back({"singular_example",
                   "two weight-5 edges from one green vertex; the every-equation system is "
                   "singular",
                   serialize_decorated(corpus_singular_example())});
    return out;
}

namespace {

std::string describe(const ValuePairViolation& v) {
    std::ostringstream out;
    out << "vertices '" << v.v << "' and '" << v.w << "' at distance " << v.dist
        << " share value " << v.value;
    return out.str();
}

std::string describe(const IrreducibilityWitness& w) {
    std::ostringstream out;
    out << "vertex '" << w.vertex << "' with neighbor subset {";
    for (size_t i = 0; i < w.subset.size(); ++i) out << (i ? ", " : "") << w.subset[i];
    out << "} satisfies its own eigen-equation";
    return out.str();
}

std::string first_bad_residual(const WeightedGraph& g, const ModularLabeling& lam) {
    for (const auto& v : g.vertices()) {
        const int64_t r = eigen_residual(g, lam, v);
        if (r != 0) return "residual " + std::to_string(r) + " at vertex '" + v + "'";
    }
    return "";
}

// The degree-3 vertices of the 15-cycle block and the values of their
// pendant neighbors, as unordered (vertex value, pendant value) pairs.
bool g2_pendant_profile_ok(const BlockCandidate& c, std::string& detail) {
    std::vector<std::pair<int64_t, int64_t>> got;
    for (const auto& v : c.graph.vertices()) {
        if (c.graph.degree(v) != 3) continue;
        for (const auto& w : c.graph.neighbors(v))
            if (c.graph.degree(w) == 1) got.emplace_back(c.labeling.at(v), c.labeling.at(w));
    }
    std::vector<std::pair<int64_t, int64_t>> want = {{8, 11}, {9, 21}, {6, 14}};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got == want) return true;
    std::ostringstream out;
    out << "found pairs";
    for (auto [a, b] : got) out << " (" << a << "," << b << ")";
    detail = out.str();
    return false;
}

} // namespace

Report verify_corpus() {
    Report r;
    r.command = "appendix verify";

    for (const auto& e : entries()) {
        const std::string text = serialize_block(e.candidate);
        const uint64_t actual = fnv1a(text);
        r.add(e.name + " checksum", actual == e.checksum,
              actual == e.checksum ? hex64(actual)
                                   : hex64(actual) + " != " + hex64(e.checksum));

        const BlockReport br = validate_block(e.candidate);
        r.add(e.name + " degree_cap", br.degree_cap);
        r.add(e.name + " eigenvector", br.eigenvector,
              br.eigenvector ? "" : first_bad_residual(e.candidate.graph, e.candidate.labeling));
        r.add(e.name + " distance2_distinct", br.distance2,
              br.distance2_violations.empty() ? "" : describe(br.distance2_violations.front()));
        r.add(e.name + " strongly_irreducible", br.strongly_irreducible,
              br.irreducibility_witness ? describe(*br.irreducibility_witness) : "");
        r.add(e.name + " degree3_nonadjacent", br.degree3_nonadjacent);
        r.add(e.name + " rationally_trivial", br.rationally_trivial);
        r.add(e.name + " boundary", br.boundary_ok, br.boundary_message);
        r.add(e.name + " boundary_values",
              e.candidate.a == 1 && e.candidate.b == 2,
              "(" + std::to_string(e.candidate.a) + ", " + std::to_string(e.candidate.b) + ")");

        const int64_t edges = e.candidate.graph.edge_count();
        const int64_t betti = e.candidate.graph.first_betti();
        r.add(e.name + " edge_count", edges == e.edge_count,
              std::to_string(edges) + (edges == e.edge_count ? "" : " != " + std::to_string(e.edge_count)));
        r.add(e.name + " betti", betti == e.betti,
              std::to_string(betti) + (betti == e.betti ? "" : " != " + std::to_string(e.betti)));
    }

    {
        const int64_t e1 = entries()[0].candidate.graph.edge_count();
        const int64_t e2 = entries()[1].candidate.graph.edge_count();
        const int64_t g = std::gcd(e1, e2);
        r.add("coprime_edge_counts", g == 1,
              "gcd(" + std::to_string(e1) + ", " + std::to_string(e2) + ") = " + std::to_string(g));
    }

    {
        std::string detail;
        const bool ok = g2_pendant_profile_ok(entries()[1].candidate, detail);
        r.add("G2 pendant_profile", ok, detail);
    }

    {
        const auto& d = corpus_singular_example();
        const auto violations = validate_decorations(d);
        r.add("singular_example decorations", violations.empty(),
              violations.empty() ? ""
                                 : "'" + violations.front().vertex + "': " + violations.front().message);

        const auto b = BranchAssignment::all_equation(d);
        const TorusSystem sys = build_system(d, b);
        const int n = sys.matrix.rows();
        const int rank = rank_over_rationals(sys.matrix);
        r.add("singular_example equation_rank", rank < n,
              "rank " + std::to_string(rank) + " of " + std::to_string(n));

        const BranchOutcome out = finiteness_for(d, b);
        r.add("singular_example infinite_solutions", !out.finite && out.dimension == 2,
              out.finite ? "finite" : "dimension " + std::to_string(out.dimension));
    }

    return r;
}

} // namespace eblocks
