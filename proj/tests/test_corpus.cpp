#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "eblocks/corpus.hpp"
#include "eblocks/error.hpp"
#include "eblocks/format.hpp"
#include "eblocks/laplacian.hpp"
#include "eblocks/report.hpp"

using namespace eblocks;

TEST_CASE("every corpus property re-derives") {
    const Report r = verify_corpus();
    for (const auto& c : r.checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.ok);
    }
    CHECK(r.ok);
}

TEST_CASE("the stock blocks have the advertised shapes") {
    const auto& blocks = corpus_blocks();
    REQUIRE(blocks.size() == 3);
    CHECK(blocks.at("G1").edge_count() == 11);
    CHECK(blocks.at("G2").edge_count() == 18);
    CHECK(blocks.at("G3").edge_count() == 43);
    CHECK(blocks.at("G1").betti() == 1);
    CHECK(blocks.at("G2").betti() == 1);
    CHECK(blocks.at("G3").betti() == 2);
    CHECK(std::gcd(blocks.at("G1").edge_count(), blocks.at("G2").edge_count()) == 1);
    for (const auto& [name, blk] : blocks) {
        CHECK(blk.a() == 1);
        CHECK(blk.b() == 2);
        CHECK(blk.labeling().p == corpus_prime);
        CHECK(blk.graph().max_degree() <= 3);
        CHECK(is_eigenvector(blk.graph(), blk.labeling()));
    }
    try {
        corpus_block("G9");
        FAIL("unknown name accepted");
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_argument);
    }
}

TEST_CASE("the 11-cycle carries the powers of 2") {
    const auto& g1 = corpus_block("G1");
    int64_t v = 1;
    for (int i = 0; i < 11; ++i) {
        CHECK(g1.labeling().at("v" + std::to_string(i)) == v);
        v = v * 2 % 23;
    }
}

TEST_CASE("the degree-3 vertices of the 15-cycle block") {
    const auto& g2 = corpus_block("G2");
    std::set<std::pair<int64_t, int64_t>> got;
    for (const auto& v : g2.graph().vertices()) {
        if (g2.graph().degree(v) != 3) continue;
        for (const auto& w : g2.graph().neighbors(v))
            if (g2.graph().degree(w) == 1)
                got.insert({g2.labeling().at(v), g2.labeling().at(w)});
    }
    CHECK(got == std::set<std::pair<int64_t, int64_t>>{{8, 11}, {9, 21}, {6, 14}});
}

TEST_CASE("the two-hub block splits into three paths") {
    const auto& g3 = corpus_block("G3");
    const auto& g = g3.graph();
    CHECK(g.vertex_count() == 42);
    CHECK(g.degree("h9") == 3);
    CHECK(g.degree("h7") == 3);
    CHECK(g3.labeling().at("h9") == 9);
    CHECK(g3.labeling().at("h7") == 7);
    // The boundary edge sits mid-path with fresh values (1, 2).
    CHECK(g3.boundary_edge() == Edge("a11", "a12"));
    CHECK(g3.labeling().at("a11") == 1);
    CHECK(g3.labeling().at("a12") == 2);
}

TEST_CASE("fixtures round trip and hash stably") {
    const auto fixtures = corpus_fixtures();
    REQUIRE(fixtures.size() == 4);
    std::set<std::string> names;
    for (const auto& f : fixtures) {
        names.insert(f.name);
        CHECK_FALSE(f.note.empty());
        CHECK_FALSE(f.text.empty());
    }
    CHECK(names == std::set<std::string>{"G1", "G2", "G3", "singular_example"});

    for (const auto& f : fixtures) {
        if (f.name == "singular_example") {
            CHECK(serialize_decorated(parse_decorated(f.text)) == f.text);
        } else {
            CHECK(serialize_block(parse_block(f.text)) == f.text);
        }
    }
}

TEST_CASE("the singular example") {
    const auto& d = corpus_singular_example();
    CHECK(d.graph().vertex_count() == 3);
    CHECK(d.k_l("G") == 10);
    CHECK(d.k_f("R1") == 2);
    CHECK(d.k_inf("R1") == 1);
    CHECK(d.graph().mu("G", "R1") == 5);
    CHECK(validate_decorations(d).empty());
}
