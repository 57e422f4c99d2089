#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "eblocks/blocks.hpp"
#include "eblocks/corpus.hpp"
#include "eblocks/error.hpp"
#include "eblocks/format.hpp"

using namespace eblocks;

namespace {

errc code_of(const std::string& text, void (*parse)(const std::string&)) {
    try {
        parse(text);
    } catch (const error& e) {
        return e.code();
    }
    return errc::malformed_text; // sentinel: parse unexpectedly succeeded
}

void parse_graph_v(const std::string& t) { parse_graph(t); }
void parse_decorated_v(const std::string& t) { parse_decorated(t); }
void parse_block_v(const std::string& t) { parse_block(t); }
void parse_open_block_v(const std::string& t) { parse_open_block(t); }

} // namespace

TEST_CASE("graph files round trip through the canonical form") {
    const std::string text = R"({
  "prime": 23,
  "vertices": [{"id": "a", "lambda": 3}, {"id": "b", "lambda": 5}],
  "edges": [{"u": "a", "v": "b", "mu": 2, "distinguished": true}]
})";
    const GraphFile f = parse_graph(text);
    CHECK(f.prime == 23);
    CHECK(f.graph.mu("a", "b") == 2);
    CHECK(f.graph.is_distinguished("a", "b"));
    CHECK(f.mod_values.at("a") == 3);
    CHECK(f.torus_values.empty());

    const std::string canon = serialize_graph(f);
    CHECK(parse_graph(canon).graph == f.graph);
    CHECK(serialize_graph(parse_graph(canon)) == canon);
}

TEST_CASE("defaults are omitted when serializing") {
    auto g = WeightedGraph::create({"a", "b"}, {EdgeSpec{"a", "b"}});
    const std::string canon = serialize_graph(GraphFile{std::nullopt, g, {}, {}});
    CHECK(canon.find("mu") == std::string::npos);
    CHECK(canon.find("distinguished") == std::string::npos);
    CHECK(canon.find("prime") == std::string::npos);
    CHECK(canon.find("lambda") == std::string::npos);
}

TEST_CASE("torus lambdas parse as exact rational pairs") {
    const std::string text = R"({
  "vertices": [
    {"id": "a", "lambda": ["1/2", "-1/3"]},
    {"id": "b", "lambda": ["0", "7/5"]}
  ],
  "edges": [{"u": "a", "v": "b"}]
})";
    const GraphFile f = parse_graph(text);
    CHECK(f.mod_values.empty());
    CHECK(f.torus_values.at("a") == TorusPoint{mpq_class(1, 2), mpq_class(2, 3)});
    CHECK(f.torus_values.at("b") == TorusPoint{0, mpq_class(2, 5)});

    const std::string canon = serialize_graph(f);
    CHECK(parse_graph(canon).torus_values == f.torus_values);
}

TEST_CASE("parsers reject malformed input with distinct codes") {
    CHECK(code_of("not json", parse_graph_v) == errc::malformed_text);
    CHECK(code_of("[]", parse_graph_v) == errc::malformed_text);
    CHECK(code_of(R"({"vertices": [], "edges": [], "mystery": 1})", parse_graph_v) ==
          errc::unknown_field);
    CHECK(code_of(R"({"vertices": [{"id": "a", "x": 1}], "edges": []})", parse_graph_v) ==
          errc::unknown_field);
    CHECK(code_of(R"({"vertices": [{"id": 3}], "edges": []})", parse_graph_v) ==
          errc::malformed_text);
    CHECK(code_of(R"({"vertices": [], "edges": []})", parse_graph_v) == errc::empty_graph);
    CHECK(code_of(R"({"vertices": [{"id": "a"}, {"id": "a"}], "edges": []})",
                  parse_graph_v) == errc::duplicate_vertex);
    CHECK(code_of(
              R"({"vertices": [{"id": "a"}, {"id": "b"}], "edges": [{"u": "a", "v": "a"}]})",
              parse_graph_v) == errc::loop_edge);
    CHECK(code_of(
              R"({"vertices": [{"id": "a"}, {"id": "b"}], "edges": [{"u": "a", "v": "b", "mu": 0}]})",
              parse_graph_v) == errc::bad_weight);

    // Mod values out of range for the declared prime.
    CHECK(code_of(
              R"({"prime": 7, "vertices": [{"id": "a", "lambda": 7}, {"id": "b", "lambda": 1}], "edges": [{"u": "a", "v": "b"}]})",
              parse_graph_v) == errc::bad_value);

    // Mixing integer and rational lambdas.
    CHECK(code_of(
              R"({"vertices": [{"id": "a", "lambda": 1}, {"id": "b", "lambda": ["1/2", "0"]}], "edges": [{"u": "a", "v": "b"}]})",
              parse_graph_v) == errc::malformed_text);

    // Zero denominators are values errors, not crashes.
    CHECK(code_of(
              R"({"vertices": [{"id": "a", "lambda": ["1/0", "0"]}, {"id": "b", "lambda": ["0", "0"]}], "edges": [{"u": "a", "v": "b"}]})",
              parse_graph_v) == errc::bad_value);
}

TEST_CASE("decorated files round trip") {
    const auto& d = corpus_singular_example();
    const std::string canon = serialize_decorated(d);
    const auto back = parse_decorated(canon);
    CHECK(back == d);
    CHECK(serialize_decorated(back) == canon);

    CHECK(code_of(R"({"vertices": [{"id": "a", "color": "blue"}], "edges": []})",
                  parse_decorated_v) == errc::malformed_text);
    // Red decorations on a green vertex are rejected.
    CHECK(code_of(
              R"({"vertices": [{"id": "a", "color": "green", "k_f": 1, "k_l": 1}, {"id": "b", "color": "red", "k_f": 1, "k_inf": 0}], "edges": [{"u": "a", "v": "b"}]})",
              parse_decorated_v) == errc::decoration_violation);
}

TEST_CASE("block files round trip") {
    const auto& blk = corpus_block("G2");
    const std::string canon = serialize_block(blk);
    const BlockCandidate c = parse_block(canon);
    CHECK(c.graph == blk.graph());
    CHECK(c.labeling.values == blk.labeling().values);
    CHECK(c.boundary_edge == blk.boundary_edge());
    CHECK(c.a == blk.a());
    CHECK(c.b == blk.b());
    CHECK(serialize_block(c) == canon);

    // The boundary edge must exist and lambdas must be total.
    CHECK(code_of(
              R"({"prime": 23, "vertices": [{"id": "a", "lambda": 1}, {"id": "b", "lambda": 2}], "edges": [{"u": "a", "v": "b"}], "boundary_edge": {"u": "a", "v": "x"}, "a": 1, "b": 2})",
              parse_block_v) == errc::unknown_vertex);
    CHECK(code_of(
              R"({"prime": 23, "vertices": [{"id": "a", "lambda": 1}, {"id": "b"}], "edges": [{"u": "a", "v": "b"}], "boundary_edge": {"u": "a", "v": "b"}, "a": 1, "b": 2})",
              parse_block_v) == errc::bad_value);
    // A block file requires its prime.
    CHECK(code_of(
              R"({"vertices": [{"id": "a", "lambda": 1}, {"id": "b", "lambda": 2}], "edges": [{"u": "a", "v": "b"}], "boundary_edge": {"u": "a", "v": "b"}, "a": 1, "b": 2})",
              parse_block_v) == errc::malformed_text);
}

TEST_CASE("open-block files derive their closed counts") {
    const auto h = make_h(corpus_block("G1"));
    const std::string canon = serialize_open_block(h);
    const OpenBlock back = parse_open_block(canon);
    CHECK(back.graph == h.graph);
    CHECK(back.a_end == h.a_end);
    CHECK(back.b_end == h.b_end);
    CHECK(back.a == h.a);
    CHECK(back.b == h.b);
    CHECK(back.entry_edge == h.entry_edge);
    CHECK(back.exit_edge == h.exit_edge);
    CHECK(back.closed_edge_count == h.closed_edge_count);
    CHECK(back.closed_betti == h.closed_betti);
    CHECK(serialize_open_block(back) == canon);

    // Ends must have degree 1.
    CHECK(code_of(
              R"({"prime": 7, "vertices": [{"id": "a", "lambda": 1}, {"id": "b", "lambda": 2}, {"id": "c", "lambda": 3}], "edges": [{"u": "a", "v": "b"}, {"u": "b", "v": "c"}], "a_end": "b", "b_end": "c"})",
              parse_open_block_v) == errc::bad_boundary);
    CHECK(code_of(
              R"({"prime": 7, "vertices": [{"id": "a", "lambda": 1}, {"id": "b", "lambda": 2}], "edges": [{"u": "a", "v": "b"}], "a_end": "a", "b_end": "a"})",
              parse_open_block_v) == errc::bad_boundary);
}

TEST_CASE("branch files map vertices to choices") {
    const auto b = parse_branches(R"({"x": "equation", "y": 3})");
    CHECK(b.at("x") == 0);
    CHECK(b.at("y") == 3);
    CHECK_THROWS_AS(parse_branches(R"({"x": "sometimes"})"), error);
    CHECK_THROWS_AS(parse_branches(R"([1, 2])"), error);
}

TEST_CASE("plans serialize with their note") {
    const auto p = plan(29, 1);
    REQUIRE(p.has_value());
    const std::string text = serialize_plan(*p);
    CHECK(text.find("\"base\": \"G1\"") != std::string::npos);
    CHECK(text.find("\"degree\": 29") != std::string::npos);
    CHECK(text.find("\"site_index\": 0") != std::string::npos);
}

TEST_CASE("labeled graphs serialize with prime and values") {
    const auto& g1 = corpus_block("G1");
    const std::string text = serialize_labeled_graph(LabeledGraph{g1.graph(), g1.labeling()});
    const GraphFile f = parse_graph(text);
    CHECK(f.prime == 23);
    CHECK(f.graph == g1.graph());
    CHECK(f.mod_values == g1.labeling().values);
}
