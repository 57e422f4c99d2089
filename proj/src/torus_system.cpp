#include "eblocks/torus_system.hpp"

#include <algorithm>
#include <cassert>

namespace eblocks {

namespace {

int64_t map_at(const std::map<std::string, int64_t>& m, const std::string& v, const char* what) {
    auto it = m.find(v);
    if (it == m.end()) throw error(errc::bad_value, std::string(what) + " undefined for '" + v + "'");
    return it->second;
}

void require_valid(const DecoratedBipartiteGraph& d) {
    auto violations = validate_decorations(d);
    if (violations.empty()) return;
    std::string msg = "decoration constraints violated:";
    for (const auto& v : violations) msg += " [" + v.vertex + ": " + v.message + "]";
    throw error(errc::decoration_violation, msg);
}

} // namespace

DecoratedBipartiteGraph DecoratedBipartiteGraph::create(WeightedGraph g,
                                                        std::map<std::string, Color> color,
                                                        std::map<std::string, int64_t> k_f,
                                                        std::map<std::string, int64_t> k_inf,
                                                        std::map<std::string, int64_t> k_l) {
    for (const auto& [id, c] : color) {
        (void)c;
        if (!g.has_vertex(id))
            throw error(errc::unknown_vertex, "color given for unknown vertex '" + id + "'");
    }
    for (const auto& id : g.vertices())
        if (!color.count(id))
            throw error(errc::decoration_violation, "vertex '" + id + "' has no color");
    for (const auto& e : g.edges())
        if (color.at(e.u) == color.at(e.v))
            throw error(errc::not_bipartite,
                        "edge [" + e.u + "," + e.v + "] joins two same-colored vertices");

    auto check_side = [&](const std::map<std::string, int64_t>& m, Color side, const char* name) {
        for (const auto& [id, value] : m) {
            auto it = color.find(id);
            if (it == color.end())
                throw error(errc::unknown_vertex,
                            std::string(name) + " given for unknown vertex '" + id + "'");
            if (it->second != side)
                throw error(errc::decoration_violation,
                            std::string(name) + " given for wrong-colored vertex '" + id + "'");
            if (value < 0)
                throw error(errc::decoration_violation,
                            std::string(name) + " negative at vertex '" + id + "'");
        }
        for (const auto& [id, c] : color)
            if (c == side && !m.count(id))
                throw error(errc::decoration_violation,
                            std::string(name) + " missing at vertex '" + id + "'");
    };
    check_side(k_f, Color::red, "k_f");
    check_side(k_inf, Color::red, "k_inf");
    check_side(k_l, Color::green, "k_l");

    DecoratedBipartiteGraph d(std::move(g));
    d.color_ = std::move(color);
    d.k_f_ = std::move(k_f);
    d.k_inf_ = std::move(k_inf);
    d.k_l_ = std::move(k_l);
    for (const auto& id : d.graph_.vertices())
        (d.color_.at(id) == Color::red ? d.reds_ : d.greens_).push_back(id);
    return d;
}

Color DecoratedBipartiteGraph::color(const std::string& v) const {
    auto it = color_.find(v);
    if (it == color_.end()) throw error(errc::unknown_vertex, "unknown vertex '" + v + "'");
    return it->second;
}

int64_t DecoratedBipartiteGraph::k_f(const std::string& v) const { return map_at(k_f_, v, "k_f"); }
int64_t DecoratedBipartiteGraph::k_inf(const std::string& v) const {
    return map_at(k_inf_, v, "k_inf");
}
int64_t DecoratedBipartiteGraph::k_l(const std::string& v) const { return map_at(k_l_, v, "k_l"); }

std::vector<DecorationViolation> validate_decorations(const DecoratedBipartiteGraph& d) {
    std::vector<DecorationViolation> out;
    for (const auto& v : d.red_vertices()) {
        const int64_t want = 2 * d.k_f(v) + d.k_inf(v);
        const int64_t have = d.graph().weighted_degree(v);
        if (have != want)
            out.push_back({v, "weighted degree " + std::to_string(have) + " != 2 k_f + k_inf = " +
                                  std::to_string(want)});
    }
    for (const auto& v : d.green_vertices()) {
        const int64_t want = d.k_l(v);
        const int64_t have = d.graph().weighted_degree(v);
        if (have != want)
            out.push_back({v, "weighted degree " + std::to_string(have) +
                                  " != k_l = " + std::to_string(want)});
    }
    return out;
}

BranchAssignment BranchAssignment::all_equation(const DecoratedBipartiteGraph& d) {
    BranchAssignment b;
    for (const auto& v : d.green_vertices()) b.choice[v] = equation;
    return b;
}

BranchAssignment BranchAssignment::create(const DecoratedBipartiteGraph& d,
                                          std::map<std::string, int> choice) {
    for (const auto& [id, c] : choice) {
        if (!d.graph().has_vertex(id) || d.color(id) != Color::green)
            throw error(errc::bad_branch, "branch choice for non-green vertex '" + id + "'");
        if (c < 0 || c > special_point_count)
            throw error(errc::bad_branch, "branch index for '" + id + "' outside 0.." +
                                              std::to_string(special_point_count));
    }
    for (const auto& v : d.green_vertices())
        if (!choice.count(v))
            throw error(errc::bad_branch, "no branch choice for green vertex '" + v + "'");
    BranchAssignment b;
    b.choice = std::move(choice);
    return b;
}

int BranchAssignment::at(const std::string& green) const {
    auto it = choice.find(green);
    if (it == choice.end())
        throw error(errc::bad_branch, "no branch choice for vertex '" + green + "'");
    return it->second;
}

TorusSystem build_system(const DecoratedBipartiteGraph& d, const BranchAssignment& b) {
    require_valid(d);
    const WeightedGraph& g = d.graph();

    TorusSystem sys;
    for (const auto& v : g.vertices()) {
        if (d.color(v) == Color::green && b.at(v) != BranchAssignment::equation) {
            sys.pinned[v] = b.at(v);
        } else {
            sys.variables.push_back(v);
        }
    }
    std::map<std::string, int> index;
    for (size_t i = 0; i < sys.variables.size(); ++i) index[sys.variables[i]] = int(i);

    const int n = int(sys.variables.size());
    sys.matrix = IntMatrix(n, n);
    sys.rhs.resize(n);

    for (int i = 0; i < n; ++i) {
        const std::string& v = sys.variables[i];
        mpz_class diagonal;
        mpz_class neighbor_scale; // row entry for neighbor w is -neighbor_scale * mu([vw])
        if (d.color(v) == Color::red) {
            diagonal = d.k_f(v) - 2 * d.k_inf(v);
            neighbor_scale = 1;
            // Same row via the Laplacian form: (5 k_f - 2 deg_mu) on the
            // diagonal. The decoration constraint makes the forms identical.
            assert(diagonal == 5 * d.k_f(v) - 2 * g.weighted_degree(v));
        } else {
            diagonal = d.k_l(v);
            neighbor_scale = 3;
        }
        sys.matrix.at(i, i) = diagonal;
        for (const auto& w : g.neighbors(v)) {
            const mpz_class coefficient = -neighbor_scale * g.mu(v, w);
            auto pin = sys.pinned.find(w);
            if (pin == sys.pinned.end()) {
                sys.matrix.at(i, index.at(w)) += coefficient;
            } else {
                // Moving c * lambda(w) across the equation negates it.
                sys.rhs[i].push_back({-coefficient, pin->second});
            }
        }
    }
    return sys;
}

namespace {

BranchOutcome analyze(const DecoratedBipartiteGraph& d, const BranchAssignment& b) {
    TorusSystem sys = build_system(d, b);
    BranchOutcome out;
    for (const auto& [v, idx] : sys.pinned) {
        (void)idx;
        out.special_vertices.push_back(v);
    }
    TorusKernelResult k = torus_kernel(sys.matrix, 2);
    out.finite = k.finite;
    out.count = k.count;
    out.dimension = k.dimension;
    return out;
}

} // namespace

BranchOutcome finiteness_for(const DecoratedBipartiteGraph& d, const BranchAssignment& b) {
    return analyze(d, b);
}

std::vector<BranchOutcome> finiteness(const DecoratedBipartiteGraph& d) {
    require_valid(d);
    const auto& greens = d.green_vertices();
    const size_t n_green = greens.size();
    if (n_green >= 63 || (int64_t{1} << n_green) > branch_enumeration_cap)
        throw error(errc::enumeration_cap,
                    "too many green vertices for exhaustive branch enumeration; "
                    "select branches explicitly");

    std::vector<BranchOutcome> out;
    const uint64_t shapes = uint64_t{1} << n_green;
    for (uint64_t mask = 0; mask < shapes; ++mask) {
        BranchAssignment b;
        for (size_t i = 0; i < n_green; ++i) {
            // Bit for greens[i] sits at the high end so ascending masks give
            // lexicographic order (equation < special) over sorted greens.
            const bool special = (mask >> (n_green - 1 - i)) & 1;
            b.choice[greens[i]] = special ? 1 : BranchAssignment::equation;
        }
        out.push_back(analyze(d, b));
    }
    return out;
}

std::vector<TorusResidual> check_torus_solution(const DecoratedBipartiteGraph& d,
                                                const BranchAssignment& b,
                                                const TorusLabeling& lam,
                                                const std::map<int, TorusPoint>& specials) {
    require_valid(d);
    const WeightedGraph& g = d.graph();
    auto value = [&](const std::string& v) -> const TorusPoint& {
        auto it = lam.find(v);
        if (it == lam.end())
            throw error(errc::bad_value, "labeling has no value for vertex '" + v + "'");
        return it->second;
    };

    std::vector<TorusResidual> out;
    for (const auto& v : g.vertices()) {
        TorusPoint residual;
        if (d.color(v) == Color::green && b.at(v) != BranchAssignment::equation) {
            const int idx = b.at(v);
            auto it = specials.find(idx);
            if (it == specials.end())
                throw error(errc::missing_special,
                            "no position given for special point " + std::to_string(idx));
            residual = value(v) - it->second;
        } else {
            mpz_class diagonal;
            mpz_class neighbor_scale;
            if (d.color(v) == Color::red) {
                diagonal = d.k_f(v) - 2 * d.k_inf(v);
                neighbor_scale = 1;
            } else {
                diagonal = d.k_l(v);
                neighbor_scale = 3;
            }
            residual = scale(diagonal, value(v));
            for (const auto& w : g.neighbors(v))
                residual = residual - scale(neighbor_scale * g.mu(v, w), value(w));
        }
        out.push_back({v, residual});
    }
    return out;
}

namespace {

void require_chain_form(const DecoratedBipartiteGraph& d) {
    require_valid(d);
    std::string msg;
    if (!d.graph().mu_all_one()) msg += " [edge weights must all equal 1]";
    for (const auto& v : d.red_vertices()) {
        if (d.k_f(v) != 1 || d.k_inf(v) != 0)
            msg += " [" + v + ": needs k_f = 1, k_inf = 0, has k_f = " + std::to_string(d.k_f(v)) +
                   ", k_inf = " + std::to_string(d.k_inf(v)) + "]";
    }
    if (!msg.empty()) throw error(errc::decoration_violation, "not in chain form:" + msg);
}

} // namespace

WeightedGraph reduce_chains(const DecoratedBipartiteGraph& d) {
    require_chain_form(d);
    const WeightedGraph& g = d.graph();

    std::vector<EdgeSpec> edges;
    std::map<Edge, bool> seen;
    for (const auto& r : d.red_vertices()) {
        const auto& nb = g.neighbors(r);
        assert(nb.size() == 2); // degree 2 follows from chain form
        Edge e(nb[0], nb[1]);
        if (seen.count(e))
            throw error(errc::duplicate_edge, "parallel chains between '" + e.u + "' and '" + e.v +
                                                  "' cannot reduce to a simple graph");
        seen[e] = true;
        const bool dist = g.is_distinguished(r, nb[0]) || g.is_distinguished(r, nb[1]);
        edges.push_back({e.u, e.v, 1, dist});
    }
    return WeightedGraph::create(d.green_vertices(), edges);
}

DecoratedBipartiteGraph expand_chains(const WeightedGraph& g) {
    if (!g.mu_all_one())
        throw error(errc::weight_not_unit, "chain expansion requires unit edge weights");

    std::vector<std::string> vertices = g.vertices();
    std::map<std::string, Color> color;
    std::map<std::string, int64_t> k_f, k_inf, k_l;
    for (const auto& v : g.vertices()) {
        color[v] = Color::green;
        k_l[v] = g.degree(v);
    }
    std::vector<EdgeSpec> edges;
    for (const auto& e : g.edges()) {
        const std::string r = "r:" + e.u + ":" + e.v;
        if (g.has_vertex(r))
            throw error(errc::duplicate_vertex, "vertex id '" + r + "' collides with chain vertex");
        vertices.push_back(r);
        color[r] = Color::red;
        k_f[r] = 1;
        k_inf[r] = 0;
        const bool dist = g.is_distinguished(e.u, e.v);
        edges.push_back({e.u, r, 1, dist});
        edges.push_back({r, e.v, 1, dist});
    }
    return DecoratedBipartiteGraph::create(WeightedGraph::create(std::move(vertices), edges),
                                           std::move(color), std::move(k_f), std::move(k_inf),
                                           std::move(k_l));
}

TorusLabeling extend_to_reds(const DecoratedBipartiteGraph& d, const TorusLabeling& green_values) {
    require_chain_form(d);
    TorusLabeling out;
    for (const auto& v : d.green_vertices()) {
        auto it = green_values.find(v);
        if (it == green_values.end())
            throw error(errc::bad_value, "no value for green vertex '" + v + "'");
        out[v] = it->second;
    }
    for (const auto& r : d.red_vertices()) {
        const auto& nb = d.graph().neighbors(r);
        assert(nb.size() == 2);
        out[r] = out.at(nb[0]) + out.at(nb[1]);
    }
    return out;
}

} // namespace eblocks
