#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "eblocks/error.hpp"

namespace eblocks {

// Reduce an exact rational into [0, 1).
mpq_class frac_mod1(const mpq_class& q);

// Element of (R^2/Z^2, +) with exact rational coordinates, kept canonical.
struct TorusPoint {
    mpq_class x, y;

    TorusPoint() : x(0), y(0) {}
    TorusPoint(const mpq_class& px, const mpq_class& py) : x(frac_mod1(px)), y(frac_mod1(py)) {}

    TorusPoint operator+(const TorusPoint& o) const { return TorusPoint(x + o.x, y + o.y); }
    TorusPoint operator-(const TorusPoint& o) const { return TorusPoint(x - o.x, y - o.y); }
    TorusPoint operator-() const { return TorusPoint(-x, -y); }

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const TorusPoint&) const = default;

    std::string str() const;
};

// Integer scaling k * t on the torus.
TorusPoint scale(const mpz_class& k, const TorusPoint& t);

// Diagonal embedding F_p -> torus: value |-> (value/p, value/p). Injective
// group homomorphism; the image is the diagonal p-torsion.
TorusPoint embed_fp_diagonally(int64_t value, int64_t p);

// Torus-valued vertex labeling, total on a graph's vertex set by convention.
using TorusLabeling = std::map<std::string, TorusPoint>;

} // namespace eblocks
