#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "eblocks/blocks.hpp"
#include "eblocks/graph.hpp"
#include "eblocks/laplacian.hpp"
#include "eblocks/torus_system.hpp"

// Strict JSON file formats. Every parser whitelists its fields (unknown keys
// are rejected), demands exact integer/string types, and surfaces
// violations with distinct error codes. Serializers emit a canonical form:
// fixed key order, sorted vertices and edges, defaults omitted.

namespace eblocks {

// Plain graph file: {prime?, vertices: [{id, lambda?}], edges: [{u, v,
// mu?, distinguished?}]}. lambda is either an integer in [0, prime) or a
// pair of exact rationals written "a/b" (a torus point); kinds cannot mix.
struct GraphFile {
    std::optional<int64_t> prime;
    WeightedGraph graph;
    std::map<std::string, int64_t> mod_values; // integer lambdas, possibly partial
    TorusLabeling torus_values;                // rational-pair lambdas
};

GraphFile parse_graph(const std::string& text);
std::string serialize_graph(const GraphFile& f);

// Decorated file: vertices additionally carry color ("red" with k_f, k_inf
// or "green" with k_l); no lambdas.
DecoratedBipartiteGraph parse_decorated(const std::string& text);
std::string serialize_decorated(const DecoratedBipartiteGraph& d);

// Block file: graph file with mandatory prime and total integer lambdas,
// plus boundary_edge: {u, v} and boundary values a, b.
BlockCandidate parse_block(const std::string& text);
std::string serialize_block(const BlockCandidate& c);
std::string serialize_block(const BuildingBlock& blk);

// Open-block file: graph file with mandatory prime and total lambdas plus
// the two degree-1 ends a_end, b_end; boundary copies, values, and closed
// edge/betti counts are derived.
OpenBlock parse_open_block(const std::string& text);
std::string serialize_open_block(const OpenBlock& h);

// Branch file: object mapping green vertex ids to "equation" or an integer
// special-point index.
std::map<std::string, int> parse_branches(const std::string& text);

std::string serialize_plan(const ConstructionPlan& p);

// Graph file carrying the labeling's prime and values.
std::string serialize_labeled_graph(const LabeledGraph& lg);

} // namespace eblocks
