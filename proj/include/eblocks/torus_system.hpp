#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "eblocks/graph.hpp"
#include "eblocks/matrix.hpp"
#include "eblocks/torus.hpp"

namespace eblocks {

enum class Color { red, green };

// Number of special positions a green vertex may be pinned to.
inline constexpr int special_point_count = 25;

// Bipartite red/green graph with per-vertex decorations. Construction
// enforces structure (bipartiteness, totality and non-negativity of the
// decorations); the numeric weight constraints relating decorations to
// weighted degrees are checked separately by validate_decorations, so
// deliberately violating fixtures can be represented and reported on.
class DecoratedBipartiteGraph {
  public:
    static DecoratedBipartiteGraph create(WeightedGraph g, std::map<std::string, Color> color,
                                          std::map<std::string, int64_t> k_f,
                                          std::map<std::string, int64_t> k_inf,
                                          std::map<std::string, int64_t> k_l);

    const WeightedGraph& graph() const { return graph_; }
    Color color(const std::string& v) const;
    int64_t k_f(const std::string& v) const;   // red vertices only
    int64_t k_inf(const std::string& v) const; // red vertices only
    int64_t k_l(const std::string& v) const;   // green vertices only

    // Sorted id lists per color.
    const std::vector<std::string>& red_vertices() const { return reds_; }
    const std::vector<std::string>& green_vertices() const { return greens_; }

    bool operator==(const DecoratedBipartiteGraph&) const = default;

  private:
    explicit DecoratedBipartiteGraph(WeightedGraph g) : graph_(std::move(g)) {}

    WeightedGraph graph_;
    std::map<std::string, Color> color_;
    std::map<std::string, int64_t> k_f_, k_inf_, k_l_;
    std::vector<std::string> reds_, greens_;
};

struct DecorationViolation {
    std::string vertex;
    std::string message;
};

// Weight constraints: red deg_mu = 2 k_f + k_inf, green deg_mu = k_l.
// Violations are data, not errors; empty result means all constraints hold.
std::vector<DecorationViolation> validate_decorations(const DecoratedBipartiteGraph& d);

// Per-green-vertex branch choice: 0 = the vertex satisfies its linear
// equation; 1..special_point_count = pinned to that special position.
struct BranchAssignment {
    static constexpr int equation = 0;

    std::map<std::string, int> choice;

    static BranchAssignment all_equation(const DecoratedBipartiteGraph& d);
    static BranchAssignment create(const DecoratedBipartiteGraph& d,
                                   std::map<std::string, int> choice);

    int at(const std::string& green) const;
};

// One formal multiple of a special position appearing on a right-hand side.
struct SymbolicTerm {
    mpz_class coefficient;
    int special_index = 0;

    bool operator==(const SymbolicTerm&) const = default;
};

// The linear system over the unpinned vertices: row i is the equation at
// variables[i]; pinned green vertices contribute symbolic right-hand sides.
struct TorusSystem {
    std::vector<std::string> variables; // sorted unpinned vertex ids
    IntMatrix matrix;                   // square, |variables| x |variables|
    std::vector<std::vector<SymbolicTerm>> rhs; // per row
    std::map<std::string, int> pinned;  // green vertex -> special index
};

// Rows: red v gets diagonal (k_f - 2 k_inf) and -mu([vw]) per neighbor;
// green v on the equation branch gets diagonal k_l and -3 mu([vw]) per
// neighbor; pinned greens are eliminated into the right-hand side.
// Requires validate_decorations to pass.
TorusSystem build_system(const DecoratedBipartiteGraph& d, const BranchAssignment& b);

// Finiteness of the solution set on the 2-torus power, per branch shape.
struct BranchOutcome {
    std::vector<std::string> special_vertices; // sorted pinned greens
    bool finite = false;
    mpz_class count;   // when finite; for nonempty special set this counts
                       // solutions per choice of the special positions
    int dimension = 0; // when infinite
};

// Analyzes every equation/special shape over the green vertices (which
// special index is chosen never affects finiteness, so shapes suffice),
// in lexicographic order over the sorted green ids with equation < special.
// Errors when 2^|greens| would exceed the enumeration cap.
std::vector<BranchOutcome> finiteness(const DecoratedBipartiteGraph& d);

inline constexpr int64_t branch_enumeration_cap = int64_t{1} << 16;

// Single-branch analysis for an explicit assignment.
BranchOutcome finiteness_for(const DecoratedBipartiteGraph& d, const BranchAssignment& b);

struct TorusResidual {
    std::string vertex;
    TorusPoint residual;
};

// Evaluates every vertex equation exactly on torus points; a pinned green's
// residual is lambda(v) - (its special position). All-zero iff lam solves
// the system for the given concrete special positions.
std::vector<TorusResidual> check_torus_solution(const DecoratedBipartiteGraph& d,
                                                const BranchAssignment& b,
                                                const TorusLabeling& lam,
                                                const std::map<int, TorusPoint>& specials);

// Chain reduction: requires every red vertex to have k_f = 1, k_inf = 0 and
// unit edge weights (hence degree 2); suppresses the reds, replacing each
// green-red-green chain with a single green-green edge. The reduced edge is
// distinguished iff either chain edge was. Two parallel chains between the
// same green pair cannot be represented in a simple graph and error out.
WeightedGraph reduce_chains(const DecoratedBipartiteGraph& d);

// Inverse of reduce_chains: subdivides every edge [u,v] with a fresh red
// vertex "r:u:v" decorated k_f = 1, k_inf = 0, and decorates each original
// vertex green with k_l = its degree. Both chain edges inherit the
// distinguished flag. reduce_chains(expand_chains(g)) == g.
DecoratedBipartiteGraph expand_chains(const WeightedGraph& g);

// Extends green-vertex torus values across chains by lambda(red) = sum of
// its two neighbor values; requires the chain-reduction preconditions.
TorusLabeling extend_to_reds(const DecoratedBipartiteGraph& d, const TorusLabeling& green_values);

} // namespace eblocks
