#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "eblocks/error.hpp"

namespace eblocks {

// Dense matrix of arbitrary-precision integers. All linear algebra in this
// project is exact; there is no floating point anywhere.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw error(errc::bad_argument, "negative matrix dimension");
    }
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<int64_t>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }
    const mpz_class& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }

    bool operator==(const IntMatrix&) const = default;

  private:
    int rows_, cols_;
    std::vector<mpz_class> e_;
};

// Exact rank via fraction-free (Bareiss) elimination.
int rank_over_rationals(const IntMatrix& m);

// Exact determinant; throws non_square.
mpz_class determinant(const IntMatrix& m);

// Rank of m reduced mod p. Cheap certificate: rank_mod_p(m, p) <= rank over Q.
int rank_mod_p(const IntMatrix& m, int64_t p);

struct SmithResult {
    // Invariant factors d_1 | d_2 | ... (non-negative), padded with zeros up
    // to min(rows, cols); rank = number of nonzero factors.
    std::vector<mpz_class> factors;
    int rank = 0;
    // Unimodular column transform: diag(factors) = U * m * V for some
    // unimodular U. Needed to read off kernel generators.
    IntMatrix v;
};

SmithResult smith_normal_form(const IntMatrix& m);

// Basis of {x : m x = 0 mod p}, reduced-echelon convention, deterministic.
// Empty result means only the trivial solution.
std::vector<std::vector<int64_t>> nullspace_mod_p(const IntMatrix& m, int64_t p);

struct TorusKernelResult {
    bool finite = false;
    mpz_class count;   // |det|^torus_dim when finite
    int dimension = 0; // torus_dim * (n - rank) when infinite
    // Generators of the kernel in a single torus coordinate, as exact
    // rationals in [0,1) per entry; the full kernel is the product of one
    // copy per coordinate. Torsion generators only (finite case exhaustive).
    std::vector<std::vector<mpq_class>> generators;
};

// Kernel of the coordinate-wise action of a square integer matrix on
// ((R/Z)^torus_dim)^n.
TorusKernelResult torus_kernel(const IntMatrix& m, int torus_dim = 2);

} // namespace eblocks
