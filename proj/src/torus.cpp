#include "eblocks/torus.hpp"

#include "eblocks/fp.hpp"

namespace eblocks {

mpq_class frac_mod1(const mpq_class& q) {
    mpq_class r = q;
    r.canonicalize();
    mpz_class fl;
    // floor division of num by den; mpq denominators are positive after canonicalize.
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    r -= fl;
    r.canonicalize();
    return r;
}

std::string TorusPoint::str() const {
    return "(" + x.get_str() + ", " + y.get_str() + ")";
}

TorusPoint scale(const mpz_class& k, const TorusPoint& t) {
    return TorusPoint(k * t.x, k * t.y);
}

TorusPoint embed_fp_diagonally(int64_t value, int64_t p) {
    fp::require_prime(p);
    if (value < 0 || value >= p)
        throw error(errc::bad_value, "field element out of range [0, p)");
    mpq_class c(value, p);
    c.canonicalize();
    return TorusPoint(c, c);
}

} // namespace eblocks
