#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "eblocks/graph.hpp"
#include "eblocks/matrix.hpp"
#include "eblocks/torus.hpp"

namespace eblocks {

// Smallest characteristic the eigen-machinery supports: the cleared equation
// has coefficients 2, 3, 5, all of which must stay units.
inline constexpr int64_t min_labeling_prime = 7;

// Vertex labeling into F_p, total on a fixed graph's vertex set.
struct ModularLabeling {
    int64_t p = 0;
    std::map<std::string, int64_t> values;

    // Validates: p prime and >= min_labeling_prime, values total on the
    // graph's vertices, every value in [0, p), no labels for unknown ids.
    static ModularLabeling create(const WeightedGraph& g, int64_t p,
                                  std::map<std::string, int64_t> values);

    int64_t at(const std::string& v) const; // throws bad_value when missing
};

using RationalLabeling = std::map<std::string, mpq_class>;

// Weighted unnormalized Laplacian sum_{w ~ v} mu([vw]) (f(v) - f(w)), one
// overload per value group.
int64_t laplacian_unnormalized_mod(const WeightedGraph& g, const ModularLabeling& f,
                                   const std::string& v);
mpq_class laplacian_unnormalized_rat(const WeightedGraph& g, const RationalLabeling& f,
                                     const std::string& v);
TorusPoint laplacian_unnormalized_torus(const WeightedGraph& g, const TorusLabeling& f,
                                        const std::string& v);

// Unnormalized Laplacian divided by the weighted degree; errors (never
// silently guesses) when the degree is not invertible in the value field.
int64_t laplacian_normalized_mod(const WeightedGraph& g, const ModularLabeling& f,
                                 const std::string& v);
mpq_class laplacian_normalized_rat(const WeightedGraph& g, const RationalLabeling& f,
                                   const std::string& v);

// Residual of the denominators-cleared eigen-equation for eigenvalue 5/3:
//   r(v) = 3 * sum_{w in N(v)} f(w) + 2 * deg(v) * f(v)  (mod p).
// f is an eigenvector iff r vanishes at every vertex. Requires mu == 1.
int64_t eigen_residual(const WeightedGraph& g, const ModularLabeling& f, const std::string& v);

bool is_eigenvector(const WeightedGraph& g, const ModularLabeling& f);

// Integer matrix of the cleared eigen-equation: B[v][v] = 2 deg(v) and
// B[v][w] = 3 per edge, rows/columns in canonical vertex order. Its mod-p
// nullspace is the eigenvector space; full rational rank means the real
// system has only the trivial solution. Requires mu == 1.
IntMatrix eigen_matrix(const WeightedGraph& g);

// True iff the eigen-system has only the trivial solution over Q (hence R):
// rank_over_rationals(eigen_matrix) == |V|. Uses a mod-q full-rank
// certificate with an exact fallback; the answer is always exact.
bool rational_triviality(const WeightedGraph& g);

// Fast sufficient condition for rational_triviality: all degrees <= 3 and no
// edge joins two degree-3 vertices. Errors when some degree exceeds 3.
bool no_adjacent_degree3(const WeightedGraph& g);

} // namespace eblocks
