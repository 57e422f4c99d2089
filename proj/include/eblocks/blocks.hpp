#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eblocks/graph.hpp"
#include "eblocks/laplacian.hpp"

namespace eblocks {

// Unvalidated block data: a graph with unit weights, an F_p labeling, and a
// designated boundary edge whose endpoint values are (a, b).
struct BlockCandidate {
    WeightedGraph graph;
    ModularLabeling labeling;
    Edge boundary_edge;
    int64_t a = 0, b = 0;
};

// Graph plus labeling; the composite state surgery operates on. Insertion
// sites are its distinguished edges.
struct LabeledGraph {
    WeightedGraph graph;
    ModularLabeling labeling;
};

struct ValuePairViolation {
    std::string v, w;
    int64_t dist = 0;  // 1 or 2
    int64_t value = 0; // the shared value
};

// All vertex pairs at distance 1 or 2 carrying equal values; empty means the
// labeling separates every such pair.
std::vector<ValuePairViolation> check_distance2_distinct(const WeightedGraph& g,
                                                         const ModularLabeling& lam);

struct IrreducibilityWitness {
    std::string vertex;
    std::vector<std::string> subset; // proper nonempty subset of the
                                     // vertex's neighbors, sorted
    int64_t residual = 0;            // always 0 for a returned witness
};

// A labeling is strongly irreducible when no vertex has a proper nonempty
// neighbor subset S with 3 * sum_{w in S} lam(w) + 2 |S| lam(v) == 0 mod p;
// such an S would let a sub-neighborhood satisfy its own eigen-equation.
// Returns the first witness in canonical order, or nothing when irreducible.
// Requires unit weights and degrees <= 3.
std::optional<IrreducibilityWitness> check_strong_irreducibility(const WeightedGraph& g,
                                                                 const ModularLabeling& lam);

struct BlockReport {
    bool degree_cap = false;          // max degree <= 3
    bool eigenvector = false;         // cleared eigen-equation holds everywhere
    bool rationally_trivial = false;  // only the trivial real/rational solution
    bool distance2 = false;           // no equal values at distance 1..2
    bool strongly_irreducible = false;
    bool boundary_ok = false;         // edge exists, degree-2 endpoints, values (a, b)
    // Advisory only: the fast sufficient condition (no two adjacent degree-3
    // vertices). Sufficient but not necessary for rational triviality, so it
    // does not gate ok.
    bool degree3_nonadjacent = false;

    std::vector<ValuePairViolation> distance2_violations;
    std::optional<IrreducibilityWitness> irreducibility_witness;
    std::string boundary_message;

    bool ok = false; // every non-advisory check passed
};

BlockReport validate_block(const BlockCandidate& c);

// A candidate that passed validate_block, with cached edge/betti counts.
class BuildingBlock {
  public:
    // Throws block_invalid naming the first failing check.
    static BuildingBlock create(BlockCandidate c);

    const WeightedGraph& graph() const { return graph_; }
    const ModularLabeling& labeling() const { return labeling_; }
    const Edge& boundary_edge() const { return boundary_; }
    int64_t a() const { return a_; }
    int64_t b() const { return b_; }
    int64_t edge_count() const { return edge_count_; }
    int64_t betti() const { return betti_; }

  private:
    BuildingBlock(WeightedGraph g, ModularLabeling lam, Edge boundary, int64_t a, int64_t b);

    WeightedGraph graph_;
    ModularLabeling labeling_;
    Edge boundary_;
    int64_t a_, b_;
    int64_t edge_count_, betti_;
};

// A block cut open along its boundary edge: the cycle through [u, v] is
// severed by duplicating u, v into u', v', reattaching u's non-boundary
// edge to u', and adding [u', v']. The result begins and ends with a copy
// of the boundary edge and has one more edge and one less betti than the
// closed block. Ends: a_end (degree 1, value a) and b_end (degree 1, value b).
struct OpenBlock {
    WeightedGraph graph;
    ModularLabeling labeling;
    std::string a_end, b_end;
    Edge entry_edge, exit_edge;
    int64_t a = 0, b = 0;
    int64_t closed_edge_count = 0; // |E| of the block this was cut from
    int64_t closed_betti = 0;      // betti of the block this was cut from
};

// Errors with not_on_cycle when the boundary edge is a bridge.
OpenBlock make_h(const BuildingBlock& blk);

// Splices an open block into the host: removes the site edge (degree-2
// endpoints valued (a, b) in either orientation), identifies its a-endpoint
// with the open block's a_end and its b-endpoint with b_end, renaming the
// inserted copy with a fresh prefix. The consumed site is replaced by the
// copy's entry and exit edges (both distinguished), so the number of sites
// grows by one. Net edge change +closed_edge_count; net betti change
// +closed_betti - 1. Re-verifies the eigenvector property, distance-2
// distinctness, strong irreducibility, and the degree-3 non-adjacency
// condition on the result; a failure there throws postcheck_failed.
LabeledGraph insert_block(const LabeledGraph& host, const Edge& site, const OpenBlock& h);

struct PlanStep {
    std::string block;  // block name to cut open and insert
    int site_index = 0; // index into the composite's sorted site list
};

struct ConstructionPlan {
    std::string base;
    std::vector<PlanStep> steps;
    int64_t degree = 0; // target edge count
    int64_t genus = 0;  // target betti
    std::string note;
};

// Edge counts of the stock blocks the planner composes.
inline constexpr int64_t plan_edges_g1 = 11;
inline constexpr int64_t plan_edges_g2 = 18;
inline constexpr int64_t plan_edges_g3 = 43;

// Decides d = 11a + 18b + 43(genus-1) with a + b >= 1 and emits the
// insertion schedule: base block, then open copies of G1/G2 to make up the
// remainder and one open G3 per extra betti. Returns nothing when no such
// representation exists. Guaranteed to succeed for d >= 43 genus + 170.
std::optional<ConstructionPlan> plan(int64_t degree, int64_t genus);

// Replays a plan against a table of blocks; checks the final edge and betti
// counts against the plan targets (postcheck_failed on mismatch).
LabeledGraph replay(const ConstructionPlan& p, const std::map<std::string, BuildingBlock>& table);

struct SearchOptions {
    int max_vertices = 16;
    bool cycles_only = false;
    int max_results = 16;
    int random_trials = 200; // random candidates when not cycles_only
};

// Deterministic-under-seed block discovery. Cycle fast path: roots r of
// 3r^2 + 4r + 3 mod p give the cycle of length ord(r) labeled r^i; inverse
// root pairs describe the same cycle reversed and are deduplicated. The
// randomized phase samples connected max-degree-3 graphs, solves for
// eigenvectors mod p, and keeps candidates that validate.
std::vector<BuildingBlock> search_blocks(int64_t p, const SearchOptions& opts, uint64_t seed);

} // namespace eblocks
