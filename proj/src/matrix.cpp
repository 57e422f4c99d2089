#include "eblocks/matrix.hpp"

#include <algorithm>

#include "eblocks/fp.hpp"

namespace eblocks {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int64_t>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw error(errc::bad_argument, "ragged row list");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

namespace {

// Fraction-free elimination; returns rank and, for square full-rank input,
// the determinant in det_out (0 otherwise).
int bareiss(IntMatrix work, mpz_class* det_out) {
    int rows = work.rows(), cols = work.cols();
    int rank = 0;
    int sign = 1;
    mpz_class prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (work.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int c = 0; c < cols; ++c) std::swap(work.at(pivot, c), work.at(rank, c));
            sign = -sign;
        }
        const mpz_class piv = work.at(rank, col);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                mpz_class t = piv * work.at(r, c) - work.at(r, col) * work.at(rank, c);
                mpz_divexact(work.at(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            work.at(r, col) = 0;
        }
        prev = piv;
        ++rank;
    }
    if (det_out) {
        if (rank == rows && rows == cols)
            *det_out = sign > 0 ? prev : mpz_class(-prev);
        else
            *det_out = 0;
    }
    return rank;
}

} // namespace

int rank_over_rationals(const IntMatrix& m) { return bareiss(m, nullptr); }

mpz_class determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw error(errc::non_square, "determinant of non-square matrix");
    if (m.rows() == 0) return 1;
    mpz_class det;
    bareiss(m, &det);
    return det;
}

int rank_mod_p(const IntMatrix& m, int64_t p) {
    fp::require_prime(p);
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<int64_t>> a(rows, std::vector<int64_t>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a[r][c] = static_cast<int64_t>(mpz_class(m.at(r, c) % p).get_si() + p) % p;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        int64_t inv = fp::inv(a[rank][col], p);
        for (int c = col; c < cols; ++c) a[rank][c] = fp::mul(a[rank][c], inv, p);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            int64_t f = a[r][col];
            for (int c = col; c < cols; ++c)
                a[r][c] = fp::sub(a[r][c], fp::mul(f, a[rank][c], p), p);
        }
        ++rank;
    }
    return rank;
}

SmithResult smith_normal_form(const IntMatrix& input) {
    IntMatrix m = input;
    int rows = m.rows(), cols = m.cols();
    IntMatrix v = IntMatrix::identity(cols);

    auto swap_rows = [&](int a, int b) {
        for (int c = 0; c < cols; ++c) std::swap(m.at(a, c), m.at(b, c));
    };
    auto swap_cols = [&](int a, int b) {
        for (int r = 0; r < rows; ++r) std::swap(m.at(r, a), m.at(r, b));
        for (int r = 0; r < cols; ++r) std::swap(v.at(r, a), v.at(r, b));
    };
    auto add_row = [&](int dst, int src, const mpz_class& f) {
        for (int c = 0; c < cols; ++c) m.at(dst, c) += f * m.at(src, c);
    };
    auto add_col = [&](int dst, int src, const mpz_class& f) {
        for (int r = 0; r < rows; ++r) m.at(r, dst) += f * m.at(r, src);
        for (int r = 0; r < cols; ++r) v.at(r, dst) += f * v.at(r, src);
    };
    auto negate_col = [&](int c) {
        for (int r = 0; r < rows; ++r) m.at(r, c) = -m.at(r, c);
        for (int r = 0; r < cols; ++r) v.at(r, c) = -v.at(r, c);
    };

    int n = std::min(rows, cols);
    int t = 0;
    for (; t < n; ++t) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        int pr = -1, pc = -1;
        mpz_class best;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c) {
                if (m.at(r, c) == 0) continue;
                mpz_class a = abs(m.at(r, c));
                if (pr < 0 || a < best) {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m.at(r, t) == 0) continue;
                mpz_class q = m.at(r, t) / m.at(t, t);
                add_row(r, t, -q);
                if (m.at(r, t) != 0) {
                    swap_rows(t, r); // remainder is strictly smaller; iterate
                    clean = false;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m.at(t, c) == 0) continue;
                mpz_class q = m.at(t, c) / m.at(t, t);
                add_col(c, t, -q);
                if (m.at(t, c) != 0) {
                    swap_cols(t, c);
                    clean = false;
                }
            }
        }
        if (m.at(t, t) < 0) negate_col(t);
    }

    // Enforce the divisibility chain d_i | d_{i+1}.
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
            if (m.at(i, i) == 0) continue;
            if (m.at(j, j) % m.at(i, i) == 0) continue;
            // Fold column j into column i, then re-diagonalize the 2x2 block.
            add_col(i, j, 1);
            bool clean = false;
            while (!clean) {
                clean = true;
                if (m.at(j, i) != 0) {
                    mpz_class q = m.at(j, i) / m.at(i, i);
                    add_row(j, i, -q);
                    if (m.at(j, i) != 0) {
                        swap_rows(i, j);
                        clean = false;
                        continue;
                    }
                }
                if (m.at(i, j) != 0) {
                    mpz_class q = m.at(i, j) / m.at(i, i);
                    add_col(j, i, -q);
                    if (m.at(i, j) != 0) {
                        swap_cols(i, j);
                        clean = false;
                    }
                }
            }
            if (m.at(i, i) < 0) negate_col(i);
            if (m.at(j, j) < 0) negate_col(j);
        }
    }

    SmithResult out;
    out.rank = t;
    out.factors.resize(n);
    for (int i = 0; i < n; ++i) out.factors[i] = i < t ? m.at(i, i) : 0;
    out.v = std::move(v);
    return out;
}

std::vector<std::vector<int64_t>> nullspace_mod_p(const IntMatrix& m, int64_t p) {
    fp::require_prime(p);
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<int64_t>> a(rows, std::vector<int64_t>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            mpz_class red = m.at(r, c) % p;
            a[r][c] = fp::normalize(red.get_si(), p);
        }

    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        int64_t inv = fp::inv(a[rank][col], p);
        for (int c = col; c < cols; ++c) a[rank][c] = fp::mul(a[rank][c], inv, p);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            int64_t f = a[r][col];
            for (int c = col; c < cols; ++c)
                a[r][c] = fp::sub(a[r][c], fp::mul(f, a[rank][c], p), p);
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<int64_t>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int64_t> vec(cols, 0);
        vec[free] = 1;
        for (int r = 0; r < rank; ++r)
            vec[pivot_col[r]] = fp::sub(0, a[r][free], p);
        basis.push_back(std::move(vec));
    }
    return basis;
}

TorusKernelResult torus_kernel(const IntMatrix& m, int torus_dim) {
    if (m.rows() != m.cols())
        throw error(errc::non_square, "torus kernel expects a square matrix");
    if (torus_dim < 1) throw error(errc::bad_argument, "torus dimension must be >= 1");
    int n = m.rows();
    SmithResult snf = smith_normal_form(m);

    TorusKernelResult out;
    if (snf.rank == n) {
        out.finite = true;
        mpz_class det_abs = 1;
        for (const mpz_class& d : snf.factors) det_abs *= d;
        mpz_class count = 1;
        for (int i = 0; i < torus_dim; ++i) count *= det_abs;
        out.count = count;
    } else {
        out.finite = false;
        out.dimension = torus_dim * (n - snf.rank);
        out.count = 0;
    }

    // Torsion generators: column i of V divided by d_i, taken mod 1.
    for (int i = 0; i < snf.rank; ++i) {
        if (snf.factors[i] == 1) continue; // trivial generator
        std::vector<mpq_class> gen(n);
        for (int r = 0; r < n; ++r) {
            mpq_class q(snf.v.at(r, i), snf.factors[i]);
            q.canonicalize();
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            q -= fl;
            gen[r] = q;
        }
        out.generators.push_back(std::move(gen));
    }
    return out;
}

} // namespace eblocks
