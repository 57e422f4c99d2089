#include "eblocks/laplacian.hpp"

#include "eblocks/fp.hpp"

namespace eblocks {

namespace {

template <typename Map>
const typename Map::mapped_type& labeling_at(const Map& f, const std::string& v) {
    auto it = f.find(v);
    if (it == f.end()) throw error(errc::bad_value, "labeling has no value for vertex '" + v + "'");
    return it->second;
}

void require_unit_weights(const WeightedGraph& g) {
    if (!g.mu_all_one())
        throw error(errc::weight_not_unit, "operation requires all edge weights equal to 1");
}

int64_t first_prime_at_least(int64_t n) {
    while (!fp::is_prime(n)) ++n;
    return n;
}

} // namespace

ModularLabeling ModularLabeling::create(const WeightedGraph& g, int64_t p,
                                        std::map<std::string, int64_t> values) {
    fp::require_prime(p);
    if (p < min_labeling_prime)
        throw error(errc::bad_value, "characteristic must be at least 7");
    for (const auto& [id, value] : values) {
        if (!g.has_vertex(id))
            throw error(errc::unknown_vertex, "labeling mentions unknown vertex '" + id + "'");
        if (value < 0 || value >= p)
            throw error(errc::bad_value, "value for vertex '" + id + "' outside [0, p)");
    }
    for (const auto& id : g.vertices())
        if (!values.count(id))
            throw error(errc::bad_value, "no value for vertex '" + id + "'");
    ModularLabeling lam;
    lam.p = p;
    lam.values = std::move(values);
    return lam;
}

int64_t ModularLabeling::at(const std::string& v) const { return labeling_at(values, v); }

int64_t laplacian_unnormalized_mod(const WeightedGraph& g, const ModularLabeling& f,
                                   const std::string& v) {
    const int64_t fv = f.at(v);
    int64_t acc = 0;
    for (const auto& w : g.neighbors(v)) {
        const int64_t m = fp::normalize(g.mu(v, w), f.p);
        acc = fp::add(acc, fp::mul(m, fp::sub(fv, f.at(w), f.p), f.p), f.p);
    }
    return acc;
}

mpq_class laplacian_unnormalized_rat(const WeightedGraph& g, const RationalLabeling& f,
                                     const std::string& v) {
    const mpq_class& fv = labeling_at(f, v);
    mpq_class acc = 0;
    for (const auto& w : g.neighbors(v)) acc += g.mu(v, w) * (fv - labeling_at(f, w));
    return acc;
}

TorusPoint laplacian_unnormalized_torus(const WeightedGraph& g, const TorusLabeling& f,
                                        const std::string& v) {
    const TorusPoint& fv = labeling_at(f, v);
    TorusPoint acc;
    for (const auto& w : g.neighbors(v)) acc = acc + scale(g.mu(v, w), fv - labeling_at(f, w));
    return acc;
}

int64_t laplacian_normalized_mod(const WeightedGraph& g, const ModularLabeling& f,
                                 const std::string& v) {
    const int64_t d = fp::normalize(g.weighted_degree(v), f.p);
    if (d == 0)
        throw error(errc::degree_not_invertible,
                    "weighted degree of '" + v + "' is not invertible mod p");
    return fp::mul(laplacian_unnormalized_mod(g, f, v), fp::inv(d, f.p), f.p);
}

mpq_class laplacian_normalized_rat(const WeightedGraph& g, const RationalLabeling& f,
                                   const std::string& v) {
    const int64_t d = g.weighted_degree(v);
    if (d == 0)
        throw error(errc::degree_not_invertible, "weighted degree of '" + v + "' is zero");
    return laplacian_unnormalized_rat(g, f, v) / mpq_class(d);
}

int64_t eigen_residual(const WeightedGraph& g, const ModularLabeling& f, const std::string& v) {
    require_unit_weights(g);
    int64_t acc = 0;
    for (const auto& w : g.neighbors(v)) acc = fp::add(acc, f.at(w), f.p);
    acc = fp::mul(3 % f.p, acc, f.p);
    const int64_t diag = fp::normalize(2 * g.degree(v), f.p);
    return fp::add(acc, fp::mul(diag, f.at(v), f.p), f.p);
}

bool is_eigenvector(const WeightedGraph& g, const ModularLabeling& f) {
    for (const auto& v : g.vertices())
        if (eigen_residual(g, f, v) != 0) return false;
    return true;
}

IntMatrix eigen_matrix(const WeightedGraph& g) {
    require_unit_weights(g);
    const auto& ids = g.vertices();
    const int n = static_cast<int>(ids.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[ids[i]] = i;
    IntMatrix b(n, n);
    for (int i = 0; i < n; ++i) b.at(i, i) = 2 * g.degree(ids[i]);
    for (const auto& e : g.edges()) {
        const int i = index[e.u], j = index[e.v];
        b.at(i, j) = 3;
        b.at(j, i) = 3;
    }
    return b;
}

bool rational_triviality(const WeightedGraph& g) {
    const IntMatrix b = eigen_matrix(g);
    const int n = b.rows();
    // Full rank mod q certifies full rank over Q (reduction cannot raise
    // rank); the exact elimination fallback settles the remaining cases.
    static const int64_t q = first_prime_at_least(1'000'003);
    if (rank_mod_p(b, q) == n) return true;
    return rank_over_rationals(b) == n;
}

bool no_adjacent_degree3(const WeightedGraph& g) {
    require_unit_weights(g);
    if (g.max_degree() > 3)
        throw error(errc::degree_cap_exceeded, "graph has a vertex of degree > 3");
    for (const auto& e : g.edges())
        if (g.degree(e.u) == 3 && g.degree(e.v) == 3) return false;
    return true;
}

} // namespace eblocks
