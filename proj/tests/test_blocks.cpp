#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eblocks/blocks.hpp"
#include "eblocks/corpus.hpp"
#include "eblocks/error.hpp"
#include "eblocks/format.hpp"
#include "eblocks/fp.hpp"
#include "eblocks/graph.hpp"
#include "eblocks/laplacian.hpp"

using namespace eblocks;

namespace {

// Path on four vertices over F_7 labeled (1, 4, 3, 6): a valid block whose
// boundary edge is a bridge.
BlockCandidate path_block_p7() {
    auto g = WeightedGraph::create(
        {"n1", "n2", "n3", "n4"},
        {EdgeSpec{"n1", "n2"}, EdgeSpec{"n2", "n3", 1, true}, EdgeSpec{"n3", "n4"}});
    auto lam = ModularLabeling::create(g, 7, {{"n1", 1}, {"n2", 4}, {"n3", 3}, {"n4", 6}});
    return BlockCandidate{std::move(g), std::move(lam), Edge("n2", "n3"), 4, 3};
}

// Six-cycle over F_7 labeled (0, 1, 1, 0, 6, 6) with a zero-valued pendant:
// satisfies the vertex equations everywhere yet is reducible.
std::pair<WeightedGraph, ModularLabeling> reducible_p7() {
    auto g = WeightedGraph::create(
        {"c0", "c1", "c2", "c3", "c4", "c5", "q"},
        {EdgeSpec{"c0", "c1"}, EdgeSpec{"c1", "c2"}, EdgeSpec{"c2", "c3"},
         EdgeSpec{"c3", "c4"}, EdgeSpec{"c4", "c5"}, EdgeSpec{"c5", "c0"},
         EdgeSpec{"c0", "q"}});
    auto lam = ModularLabeling::create(
        g, 7, {{"c0", 0}, {"c1", 1}, {"c2", 1}, {"c3", 0}, {"c4", 6}, {"c5", 6}, {"q", 0}});
    return {std::move(g), std::move(lam)};
}

LabeledGraph as_host(const BuildingBlock& b) { return LabeledGraph{b.graph(), b.labeling()}; }

} // namespace

TEST_CASE("distance-2 distinctness finds all close repeats") {
    const auto [g, lam] = reducible_p7();
    CHECK(is_eigenvector(g, lam));
    const auto violations = check_distance2_distinct(g, lam);
    CHECK(violations.size() == 3);
    for (const auto& v : violations) {
        CHECK(lam.at(v.v) == lam.at(v.w));
        CHECK(v.value == lam.at(v.v));
        CHECK(v.dist == g.distance(v.v, v.w));
        CHECK(v.dist <= 2);
    }

    const auto& g1 = corpus_block("G1");
    CHECK(check_distance2_distinct(g1.graph(), g1.labeling()).empty());
}

TEST_CASE("strong irreducibility witnesses") {
    const auto& g1 = corpus_block("G1");
    CHECK_FALSE(check_strong_irreducibility(g1.graph(), g1.labeling()).has_value());

    const auto [g, lam] = reducible_p7();
    const auto w = check_strong_irreducibility(g, lam);
    REQUIRE(w.has_value());
    CHECK(w->vertex == "c0");
    REQUIRE(!w->subset.empty());
    CHECK(w->subset.size() < size_t(g.degree(w->vertex)));
    // The returned subset really does satisfy its own equation.
    int64_t acc = 0;
    for (const auto& s : w->subset) acc = fp::add(acc, lam.at(s), 7);
    acc = fp::mul(3, acc, 7);
    acc = fp::add(acc, fp::mul(2 * int64_t(w->subset.size()) % 7, lam.at(w->vertex), 7), 7);
    CHECK(acc == 0);
    CHECK(w->residual == 0);
}

TEST_CASE("irreducibility checker enforces its preconditions") {
    auto star = WeightedGraph::create(
        {"c", "l1", "l2", "l3", "l4"},
        {EdgeSpec{"c", "l1"}, EdgeSpec{"c", "l2"}, EdgeSpec{"c", "l3"}, EdgeSpec{"c", "l4"}});
    auto lam = ModularLabeling::create(
        star, 7, {{"c", 1}, {"l1", 2}, {"l2", 3}, {"l3", 4}, {"l4", 5}});
    try {
        check_strong_irreducibility(star, lam);
        FAIL("degree-4 vertex accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::degree_cap_exceeded);
    }

    auto weighted = WeightedGraph::create({"a", "b"}, {EdgeSpec{"a", "b", 2}});
    auto wl = ModularLabeling::create(weighted, 7, {{"a", 1}, {"b", 2}});
    try {
        check_strong_irreducibility(weighted, wl);
        FAIL("non-unit weight accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::weight_not_unit);
    }
}

TEST_CASE("block validation reports each property") {
    const auto ok = validate_block(path_block_p7());
    CHECK(ok.ok);
    CHECK(ok.degree_cap);
    CHECK(ok.eigenvector);
    CHECK(ok.rationally_trivial);
    CHECK(ok.distance2);
    CHECK(ok.strongly_irreducible);
    CHECK(ok.boundary_ok);
    CHECK(ok.degree3_nonadjacent);

    // Wrong boundary values.
    auto c = path_block_p7();
    c.a = 1;
    const auto r1 = validate_block(c);
    CHECK_FALSE(r1.boundary_ok);
    CHECK_FALSE(r1.ok);
    CHECK(r1.eigenvector);

    // Boundary endpoints must have degree 2.
    c = path_block_p7();
    c.boundary_edge = Edge("n1", "n2");
    c.a = 1;
    c.b = 4;
    const auto r2 = validate_block(c);
    CHECK_FALSE(r2.boundary_ok);

    // Absent boundary edge.
    c = path_block_p7();
    c.boundary_edge = Edge("n1", "n4");
    const auto r3 = validate_block(c);
    CHECK_FALSE(r3.boundary_ok);

    // A broken vertex equation.
    c = path_block_p7();
    auto vals = c.labeling.values;
    vals["n4"] = 5;
    c.labeling = ModularLabeling::create(c.graph, 7, vals);
    const auto r4 = validate_block(c);
    CHECK_FALSE(r4.eigenvector);
    CHECK_FALSE(r4.ok);

    // Non-unit weights are a structural misuse, not a reported property.
    auto g = WeightedGraph::create({"a", "b", "c"},
                                   {EdgeSpec{"a", "b", 2}, EdgeSpec{"b", "c"}});
    auto lam = ModularLabeling::create(g, 7, {{"a", 1}, {"b", 2}, {"c", 3}});
    try {
        validate_block(BlockCandidate{g, lam, Edge("a", "b"), 1, 2});
        FAIL("weighted candidate accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::weight_not_unit);
    }
}

TEST_CASE("building blocks validate on construction") {
    auto blk = BuildingBlock::create(path_block_p7());
    CHECK(blk.edge_count() == 3);
    CHECK(blk.betti() == 0);
    CHECK(blk.a() == 4);
    CHECK(blk.b() == 3);
    CHECK(blk.graph().is_distinguished("n2", "n3"));

    auto c = path_block_p7();
    c.b = 6;
    try {
        BuildingBlock::create(c);
        FAIL("invalid candidate accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::block_invalid);
    }
}

TEST_CASE("cutting a block open") {
    const auto h = make_h(corpus_block("G1"));
    CHECK(h.graph.vertex_count() == 13);
    CHECK(h.graph.edge_count() == 12);
    CHECK(h.graph.first_betti() == 0);
    CHECK(h.a == 1);
    CHECK(h.b == 2);
    CHECK(h.graph.degree(h.a_end) == 1);
    CHECK(h.graph.degree(h.b_end) == 1);
    CHECK(h.labeling.at(h.a_end) == 1);
    CHECK(h.labeling.at(h.b_end) == 2);
    CHECK(h.closed_edge_count == 11);
    CHECK(h.closed_betti == 1);
    CHECK(h.graph.is_distinguished(h.entry_edge.u, h.entry_edge.v));
    CHECK(h.graph.is_distinguished(h.exit_edge.u, h.exit_edge.v));
    // Cutting breaks the vertex equations exactly at the two dangling ends;
    // everywhere else the labeling still solves its equation.
    CHECK_FALSE(is_eigenvector(h.graph, h.labeling));
    for (const auto& v : h.graph.vertices()) {
        const bool dangling = v == h.a_end || v == h.b_end;
        CHECK((eigen_residual(h.graph, h.labeling, v) != 0) == dangling);
    }

    // A bridge boundary cannot be cut.
    try {
        make_h(BuildingBlock::create(path_block_p7()));
        FAIL("bridge boundary cut");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_on_cycle);
    }
}

TEST_CASE("re-closing a cut block restores it") {
    for (const auto& name : {"G1", "G2", "G3"}) {
        const auto& blk = corpus_block(name);
        const auto h = make_h(blk);
        // Identify the two copies again: map u' back to u and v' back to v,
        // collapsing the added copy of the boundary edge.
        const std::string up =
            h.exit_edge.u == h.b_end ? h.exit_edge.v : h.exit_edge.u;
        const std::string u = h.a_end;
        const std::string vp = h.b_end;
        const std::string v = h.entry_edge.u == u ? h.entry_edge.v : h.entry_edge.u;
        auto rename = [&](const std::string& id) {
            if (id == up) return u;
            if (id == vp) return v;
            return id;
        };
        std::vector<std::string> ids;
        for (const auto& id : h.graph.vertices())
            if (id != up && id != vp) ids.push_back(id);
        std::map<Edge, EdgeSpec> edges;
        for (const auto& e : h.graph.edges()) {
            EdgeSpec spec{rename(e.u), rename(e.v), h.graph.mu(e.u, e.v),
                          h.graph.is_distinguished(e.u, e.v)};
            edges.emplace(Edge(spec.u, spec.v), spec);
        }
        std::vector<EdgeSpec> specs;
        for (const auto& [k, spec] : edges) specs.push_back(spec);
        const auto closed = WeightedGraph::create(ids, specs);
        CHECK(closed == blk.graph());
    }
}

TEST_CASE("insertion bookkeeping") {
    const auto& g1 = corpus_block("G1");
    const auto host = as_host(g1);
    const auto h2 = make_h(corpus_block("G2"));

    const auto merged = insert_block(host, g1.boundary_edge(), h2);
    CHECK(merged.graph.edge_count() == host.graph.edge_count() + h2.closed_edge_count);
    CHECK(merged.graph.first_betti() == host.graph.first_betti() + h2.closed_betti - 1);
    CHECK(merged.graph.distinguished_edges().size() == 2);
    CHECK(is_eigenvector(merged.graph, merged.labeling));
    CHECK(check_distance2_distinct(merged.graph, merged.labeling).empty());
    CHECK_FALSE(check_strong_irreducibility(merged.graph, merged.labeling).has_value());

    // The freed sites admit another round.
    const auto sites = merged.graph.distinguished_edges();
    const auto h3 = make_h(corpus_block("G3"));
    CHECK(h3.closed_betti == 2); // two hubs joined by three paths
    const auto again = insert_block(merged, sites[0], h3);
    CHECK(again.graph.edge_count() == 29 + 43);
    CHECK(again.graph.first_betti() == merged.graph.first_betti() + h3.closed_betti - 1);
    CHECK(again.graph.first_betti() == 2);
    CHECK(again.graph.distinguished_edges().size() == 3);
}

TEST_CASE("insertion flips orientation when the site is reversed") {
    // An 11-cycle labeled with the shifted powers (2^(i+1)), so the edge
    // [A0, A10] reads (2, 1) instead of (1, 2).
    std::vector<std::string> ids;
    std::vector<EdgeSpec> edges;
    std::map<std::string, int64_t> vals;
    int64_t v = 2;
    for (int i = 0; i < 11; ++i) {
        ids.push_back("A" + std::to_string(i));
        vals[ids.back()] = v;
        v = v * 2 % 23;
    }
    for (int i = 0; i < 11; ++i) edges.push_back(EdgeSpec{ids[i], ids[(i + 1) % 11]});
    auto g = WeightedGraph::create(ids, edges);
    auto lam = ModularLabeling::create(g, 23, vals);
    REQUIRE(is_eigenvector(g, lam));
    REQUIRE(lam.at("A0") == 2);
    REQUIRE(lam.at("A10") == 1);

    const auto h2 = make_h(corpus_block("G2"));
    const auto merged = insert_block(LabeledGraph{g, lam}, Edge("A0", "A10"), h2);
    CHECK(merged.graph.edge_count() == 29);
    CHECK(merged.graph.first_betti() == 1);
    CHECK(is_eigenvector(merged.graph, merged.labeling));
}

TEST_CASE("insertion rejects bad sites") {
    const auto& g1 = corpus_block("G1");
    const auto host = as_host(g1);
    const auto h2 = make_h(corpus_block("G2"));

    try {
        insert_block(host, Edge("v0", "v2"), h2);
        FAIL("absent site accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_boundary);
    }
    try {
        insert_block(host, Edge("v1", "v2"), h2);
        FAIL("site with wrong values accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::insert_mismatch);
    }

    const auto& g2 = corpus_block("G2");
    try {
        insert_block(as_host(g2), Edge("b3", "c3"), h2);
        FAIL("degree-3 site endpoint accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_boundary);
    }

    // Mismatched characteristics.
    const auto p7 = BuildingBlock::create(path_block_p7());
    try {
        insert_block(as_host(p7), p7.boundary_edge(), h2);
        FAIL("prime mismatch accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::insert_mismatch);
    }
}

TEST_CASE("planner composes the stock blocks") {
    auto p = plan(29, 1);
    REQUIRE(p.has_value());
    CHECK(p->base == "G1");
    REQUIRE(p->steps.size() == 1);
    CHECK(p->steps[0].block == "G2");
    const auto lg = replay(*p, corpus_blocks());
    CHECK(lg.graph.edge_count() == 29);
    CHECK(lg.graph.first_betti() == 1);

    p = plan(11, 1);
    REQUIRE(p.has_value());
    CHECK(p->base == "G1");
    CHECK(p->steps.empty());

    p = plan(18, 1);
    REQUIRE(p.has_value());
    CHECK(p->base == "G2");
    CHECK(p->steps.empty());

    p = plan(72, 2);
    REQUIRE(p.has_value());
    const auto lg2 = replay(*p, corpus_blocks());
    CHECK(lg2.graph.edge_count() == 72);
    CHECK(lg2.graph.first_betti() == 2);

    // The planner prefers as few 18-edge blocks as possible.
    p = plan(198, 1);
    REQUIRE(p.has_value());
    CHECK(p->base == "G1");
    CHECK(p->steps.size() == 17);
    for (const auto& s : p->steps) CHECK(s.block == "G1");
}

TEST_CASE("planner failure modes") {
    CHECK_FALSE(plan(169, 1).has_value());
    CHECK_FALSE(plan(10, 1).has_value());
    CHECK_FALSE(plan(43, 2).has_value()); // remainder 0 needs a + b >= 1
    try {
        plan(0, 1);
        FAIL("degree zero accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_argument);
    }
    try {
        plan(29, 0);
        FAIL("genus zero accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_argument);
    }
}

TEST_CASE("replay checks its result") {
    auto p = plan(29, 1);
    REQUIRE(p.has_value());

    // Substituting a wrong block must be caught by the final count check.
    std::map<std::string, BuildingBlock> forged;
    forged.emplace("G1", corpus_block("G1"));
    forged.emplace("G2", corpus_block("G1"));
    try {
        replay(*p, forged);
        FAIL("forged table accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::postcheck_failed);
    }

    // A missing table entry is an argument error.
    std::map<std::string, BuildingBlock> partial;
    partial.emplace("G1", corpus_block("G1"));
    try {
        replay(*p, partial);
        FAIL("missing block accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_argument);
    }

    // An out-of-range site index is rejected.
    ConstructionPlan crooked = *p;
    crooked.steps[0].site_index = 5;
    try {
        replay(crooked, corpus_blocks());
        FAIL("site index out of range accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_argument);
    }
}

TEST_CASE("cycle search finds the canonical cycles") {
    SearchOptions opts;
    opts.cycles_only = true;

    const auto at23 = search_blocks(23, opts, 1);
    REQUIRE(at23.size() == 1);
    CHECK(at23[0].graph().vertex_count() == 11);
    CHECK(at23[0].graph().edge_count() == 11);
    CHECK(at23[0].a() == 1);
    for (const auto& v : at23[0].graph().vertices())
        CHECK(at23[0].graph().degree(v) == 2);

    const auto at7 = search_blocks(7, opts, 1);
    REQUIRE(at7.size() == 1);
    CHECK(at7[0].graph().vertex_count() == 6);

    // x^2 has no root producing a cycle at p = 11: 3r^2 + 4r + 3 has
    // discriminant -20, a non-residue there.
    CHECK(search_blocks(11, opts, 1).empty());
}

TEST_CASE("search is deterministic under a fixed seed") {
    SearchOptions opts;
    opts.random_trials = 60;
    const auto a = search_blocks(23, opts, 99);
    const auto b = search_blocks(23, opts, 99);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(serialize_block(a[i]) == serialize_block(b[i]));
    for (const auto& blk : a) {
        const BlockCandidate c{blk.graph(), blk.labeling(), blk.boundary_edge(), blk.a(),
                               blk.b()};
        CHECK(validate_block(c).ok);
    }
}

TEST_CASE("search validates its characteristic") {
    SearchOptions opts;
    try {
        search_blocks(15, opts, 1);
        FAIL("composite characteristic accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_prime);
    }
    try {
        search_blocks(5, opts, 1);
        FAIL("tiny characteristic accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_value);
    }
}
