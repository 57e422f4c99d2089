#include "eblocks/blocks.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>

#include "eblocks/fp.hpp"
#include "eblocks/matrix.hpp"

namespace eblocks {

namespace {

void require_unit_weights(const WeightedGraph& g) {
    if (!g.mu_all_one())
        throw error(errc::weight_not_unit, "blocks require all edge weights equal to 1");
}

} // namespace

std::vector<ValuePairViolation> check_distance2_distinct(const WeightedGraph& g,
                                                         const ModularLabeling& lam) {
    std::vector<ValuePairViolation> out;
    for (const auto& v : g.vertices()) {
        // Everything within two steps of v, with the shorter distance kept.
        std::map<std::string, int64_t> near;
        for (const auto& w : g.neighbors(v)) near[w] = 1;
        for (const auto& w : g.neighbors(v))
            for (const auto& z : g.neighbors(w))
                if (z != v && !near.count(z)) near[z] = 2;
        for (const auto& [w, dist] : near)
            if (v < w && lam.at(v) == lam.at(w)) out.push_back({v, w, dist, lam.at(v)});
    }
    return out;
}

std::optional<IrreducibilityWitness> check_strong_irreducibility(const WeightedGraph& g,
                                                                 const ModularLabeling& lam) {
    require_unit_weights(g);
    if (g.max_degree() > 3)
        throw error(errc::degree_cap_exceeded, "graph has a vertex of degree > 3");
    const int64_t p = lam.p;
    for (const auto& v : g.vertices()) {
        const auto& nb = g.neighbors(v);
        const int d = int(nb.size());
        for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
            int64_t sum = 0;
            int size = 0;
            for (int i = 0; i < d; ++i)
                if (mask & (1u << i)) {
                    sum = fp::add(sum, lam.at(nb[i]), p);
                    ++size;
                }
            const int64_t residual = fp::add(fp::mul(3 % p, sum, p),
                                             fp::mul(fp::normalize(2 * size, p), lam.at(v), p), p);
            if (residual == 0) {
                IrreducibilityWitness w;
                w.vertex = v;
                for (int i = 0; i < d; ++i)
                    if (mask & (1u << i)) w.subset.push_back(nb[i]);
                w.residual = 0;
                return w;
            }
        }
    }
    return std::nullopt;
}

BlockReport validate_block(const BlockCandidate& c) {
    require_unit_weights(c.graph);
    BlockReport r;
    r.degree_cap = c.graph.max_degree() <= 3;
    r.eigenvector = is_eigenvector(c.graph, c.labeling);
    r.rationally_trivial = rational_triviality(c.graph);
    r.distance2_violations = check_distance2_distinct(c.graph, c.labeling);
    r.distance2 = r.distance2_violations.empty();
    if (r.degree_cap) {
        r.irreducibility_witness = check_strong_irreducibility(c.graph, c.labeling);
        r.strongly_irreducible = !r.irreducibility_witness.has_value();
        r.degree3_nonadjacent = no_adjacent_degree3(c.graph);
    }

    const Edge& e = c.boundary_edge;
    if (!c.graph.has_edge(e.u, e.v)) {
        r.boundary_message = "boundary edge [" + e.u + "," + e.v + "] not in the graph";
    } else if (c.graph.degree(e.u) != 2 || c.graph.degree(e.v) != 2) {
        r.boundary_message = "boundary endpoints must both have degree 2";
    } else if (c.labeling.at(e.u) != c.a || c.labeling.at(e.v) != c.b) {
        r.boundary_message = "boundary values are (" + std::to_string(c.labeling.at(e.u)) + "," +
                             std::to_string(c.labeling.at(e.v)) + "), expected (" +
                             std::to_string(c.a) + "," + std::to_string(c.b) + ")";
    } else {
        r.boundary_ok = true;
    }

    r.ok = r.degree_cap && r.eigenvector && r.rationally_trivial && r.distance2 &&
           r.strongly_irreducible && r.boundary_ok;
    return r;
}

BuildingBlock::BuildingBlock(WeightedGraph g, ModularLabeling lam, Edge boundary, int64_t a,
                             int64_t b)
    : graph_(std::move(g)),
      labeling_(std::move(lam)),
      boundary_(std::move(boundary)),
      a_(a),
      b_(b),
      edge_count_(graph_.edge_count()),
      betti_(graph_.first_betti()) {}

BuildingBlock BuildingBlock::create(BlockCandidate c) {
    BlockReport r = validate_block(c);
    if (!r.ok) {
        std::string why;
        if (!r.degree_cap) why = "a vertex exceeds degree 3";
        else if (!r.eigenvector) why = "labeling is not an eigenvector";
        else if (!r.rationally_trivial) why = "eigen-system is not rationally trivial";
        else if (!r.distance2)
            why = "equal values at distance <= 2: [" + r.distance2_violations[0].v + "," +
                  r.distance2_violations[0].w + "]";
        else if (!r.strongly_irreducible)
            why = "reducible at vertex '" + r.irreducibility_witness->vertex + "'";
        else why = r.boundary_message;
        throw error(errc::block_invalid, "block validation failed: " + why);
    }
    WeightedGraph g = std::move(c.graph);
    if (!g.is_distinguished(c.boundary_edge.u, c.boundary_edge.v)) {
        auto marks = g.distinguished_edges();
        marks.push_back(c.boundary_edge);
        g = g.with_distinguished(marks);
    }
    return BuildingBlock(std::move(g), std::move(c.labeling), std::move(c.boundary_edge), c.a,
                         c.b);
}

namespace {

std::string fresh_id(const WeightedGraph& g, std::string base, const std::set<std::string>& taken) {
    while (g.has_vertex(base) || taken.count(base)) base += "'";
    return base;
}

} // namespace

OpenBlock make_h(const BuildingBlock& blk) {
    const WeightedGraph& g = blk.graph();
    const Edge e = blk.boundary_edge();
    const std::string& u = e.u;
    const std::string& v = e.v;

    const auto& nu = g.neighbors(u);
    assert(nu.size() == 2);
    const std::string x = nu[0] == v ? nu[1] : nu[0];

    std::set<std::string> taken;
    const std::string up = fresh_id(g, u + "'", taken);
    taken.insert(up);
    const std::string vp = fresh_id(g, v + "'", taken);

    std::vector<std::string> vertices = g.vertices();
    vertices.push_back(up);
    vertices.push_back(vp);

    const Edge rerouted(u, x);
    std::vector<EdgeSpec> edges;
    for (const auto& f : g.edges()) {
        const bool dist = g.is_distinguished(f.u, f.v);
        if (f == rerouted) {
            edges.push_back({up, x, 1, dist});
        } else {
            edges.push_back({f.u, f.v, 1, dist});
        }
    }
    edges.push_back({up, vp, 1, true});

    WeightedGraph cut = [&] {
        try {
            return WeightedGraph::create(std::move(vertices), edges);
        } catch (const error& err) {
            if (err.code() == errc::disconnected)
                throw error(errc::not_on_cycle,
                            "boundary edge [" + u + "," + v + "] is a bridge, not on a cycle");
            throw;
        }
    }();

    auto values = blk.labeling().values;
    values[up] = blk.a();
    values[vp] = blk.b();
    ModularLabeling lam = ModularLabeling::create(cut, blk.labeling().p, std::move(values));

    return OpenBlock{std::move(cut), std::move(lam),     u,       vp,
                     e,              Edge(up, vp),       blk.a(), blk.b(),
                     blk.edge_count(), blk.betti()};
}

LabeledGraph insert_block(const LabeledGraph& host, const Edge& site, const OpenBlock& h) {
    const WeightedGraph& g = host.graph;
    if (!g.has_edge(site.u, site.v))
        throw error(errc::bad_boundary, "site edge [" + site.u + "," + site.v + "] not in host");
    if (g.degree(site.u) != 2 || g.degree(site.v) != 2)
        throw error(errc::bad_boundary, "site endpoints must both have degree 2");
    if (host.labeling.p != h.labeling.p)
        throw error(errc::insert_mismatch, "host and inserted block use different primes");

    const int64_t lu = host.labeling.at(site.u);
    const int64_t lv = host.labeling.at(site.v);
    std::string a_host, b_host;
    if (lu == h.a && lv == h.b) {
        a_host = site.u;
        b_host = site.v;
    } else if (lu == h.b && lv == h.a) {
        a_host = site.v;
        b_host = site.u;
    } else {
        throw error(errc::insert_mismatch,
                    "site values (" + std::to_string(lu) + "," + std::to_string(lv) +
                        ") do not match boundary values (" + std::to_string(h.a) + "," +
                        std::to_string(h.b) + ")");
    }

    int k = 1;
    auto prefix_taken = [&](const std::string& prefix) {
        for (const auto& id : g.vertices())
            if (id.rfind(prefix, 0) == 0) return true;
        return false;
    };
    while (prefix_taken("i" + std::to_string(k) + ":")) ++k;
    const std::string prefix = "i" + std::to_string(k) + ":";

    auto rename = [&](const std::string& z) -> std::string {
        if (z == h.a_end) return a_host;
        if (z == h.b_end) return b_host;
        return prefix + z;
    };

    std::vector<std::string> vertices = g.vertices();
    for (const auto& z : h.graph.vertices())
        if (z != h.a_end && z != h.b_end) vertices.push_back(rename(z));

    std::vector<EdgeSpec> edges;
    for (const auto& f : g.edges())
        if (f != site) edges.push_back({f.u, f.v, 1, g.is_distinguished(f.u, f.v)});
    for (const auto& f : h.graph.edges())
        edges.push_back({rename(f.u), rename(f.v), 1, h.graph.is_distinguished(f.u, f.v)});

    WeightedGraph composite = WeightedGraph::create(std::move(vertices), edges);

    auto values = host.labeling.values;
    for (const auto& z : h.graph.vertices()) {
        const std::string id = rename(z);
        const int64_t value = h.labeling.at(z);
        auto it = values.find(id);
        if (it != values.end()) {
            assert(it->second == value); // identified ends carry matching values
        } else {
            values[id] = value;
        }
    }
    LabeledGraph out{composite, ModularLabeling::create(composite, host.labeling.p, values)};

    // Exact bookkeeping plus the preservation claims, all re-verified; any
    // failure here is a bug, not bad input.
    const int64_t edge_delta = out.graph.edge_count() - g.edge_count();
    const int64_t betti_delta = out.graph.first_betti() - g.first_betti();
    if (edge_delta != h.closed_edge_count)
        throw error(errc::postcheck_failed, "edge delta " + std::to_string(edge_delta) +
                                                " != " + std::to_string(h.closed_edge_count));
    if (betti_delta != h.closed_betti - 1)
        throw error(errc::postcheck_failed, "betti delta " + std::to_string(betti_delta) +
                                                " != " + std::to_string(h.closed_betti - 1));
    if (!is_eigenvector(out.graph, out.labeling))
        throw error(errc::postcheck_failed, "composite labeling is not an eigenvector");
    if (!check_distance2_distinct(out.graph, out.labeling).empty())
        throw error(errc::postcheck_failed, "composite has equal values at distance <= 2");
    if (check_strong_irreducibility(out.graph, out.labeling).has_value())
        throw error(errc::postcheck_failed, "composite is not strongly irreducible");
    if (!no_adjacent_degree3(out.graph))
        throw error(errc::postcheck_failed, "composite has adjacent degree-3 vertices");
    return out;
}

std::optional<ConstructionPlan> plan(int64_t degree, int64_t genus) {
    if (degree < 1) throw error(errc::bad_argument, "degree must be positive");
    if (genus < 1) throw error(errc::bad_argument, "genus must be positive");

    const int64_t m = degree - plan_edges_g3 * (genus - 1);
    int64_t alpha = -1, beta = -1;
    for (int64_t try_beta = 0; plan_edges_g2 * try_beta <= m; ++try_beta) {
        const int64_t rest = m - plan_edges_g2 * try_beta;
        if (rest % plan_edges_g1 != 0) continue;
        const int64_t try_alpha = rest / plan_edges_g1;
        if (try_alpha + try_beta < 1) continue;
        alpha = try_alpha;
        beta = try_beta;
        break;
    }
    if (alpha < 0) return std::nullopt;

    ConstructionPlan p;
    p.base = alpha >= 1 ? "G1" : "G2";
    int64_t remaining_g1 = alpha - (p.base == "G1" ? 1 : 0);
    int64_t remaining_g2 = beta - (p.base == "G2" ? 1 : 0);
    for (int64_t i = 0; i < remaining_g1; ++i) p.steps.push_back({"G1", 0});
    for (int64_t i = 0; i < remaining_g2; ++i) p.steps.push_back({"G2", 0});
    for (int64_t i = 0; i < genus - 1; ++i) p.steps.push_back({"G3", 0});
    p.degree = degree;
    p.genus = genus;
    std::ostringstream note;
    note << "edges = " << plan_edges_g1 << "*" << alpha << " + " << plan_edges_g2 << "*" << beta
         << " + " << plan_edges_g3 << "*" << (genus - 1)
         << "; every degree >= " << (plan_edges_g3 * genus + 170)
         << " is reachable, and representable smaller degrees are planned too";
    p.note = note.str();
    return p;
}

LabeledGraph replay(const ConstructionPlan& p, const std::map<std::string, BuildingBlock>& table) {
    auto block = [&](const std::string& name) -> const BuildingBlock& {
        auto it = table.find(name);
        if (it == table.end()) throw error(errc::bad_argument, "unknown block '" + name + "'");
        return it->second;
    };

    const BuildingBlock& base = block(p.base);
    LabeledGraph state{base.graph(), base.labeling()};
    for (const auto& step : p.steps) {
        const auto sites = state.graph.distinguished_edges();
        if (step.site_index < 0 || size_t(step.site_index) >= sites.size())
            throw error(errc::bad_argument,
                        "site index " + std::to_string(step.site_index) + " out of range");
        state = insert_block(state, sites[step.site_index], make_h(block(step.block)));
    }
    if (state.graph.edge_count() != p.degree)
        throw error(errc::postcheck_failed,
                    "replay produced " + std::to_string(state.graph.edge_count()) +
                        " edges, planned " + std::to_string(p.degree));
    if (state.graph.first_betti() != p.genus)
        throw error(errc::postcheck_failed,
                    "replay produced betti " + std::to_string(state.graph.first_betti()) +
                        ", planned " + std::to_string(p.genus));
    return state;
}

namespace {

// Uniform draw in [0, n) from the standard-specified mt19937_64 stream;
// avoids std::uniform_int_distribution, whose mapping is
// implementation-defined and would break cross-platform determinism.
uint64_t bounded(std::mt19937_64& rng, uint64_t n) {
    assert(n > 0);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Isomorphism-insensitive fingerprint used to deduplicate search results:
// degree sequence plus the sorted multiset of (value, sorted neighbor
// values) stars. Collisions only cost a dropped candidate.
std::string dedupe_key(const WeightedGraph& g, const ModularLabeling& lam) {
    std::vector<std::string> stars;
    std::vector<int64_t> degrees;
    for (const auto& v : g.vertices()) {
        degrees.push_back(g.degree(v));
        std::vector<int64_t> around;
        for (const auto& w : g.neighbors(v)) around.push_back(lam.at(w));
        std::sort(around.begin(), around.end());
        std::string s = std::to_string(lam.at(v)) + "(";
        for (int64_t x : around) s += std::to_string(x) + ",";
        stars.push_back(s + ")");
    }
    std::sort(degrees.begin(), degrees.end());
    std::sort(stars.begin(), stars.end());
    std::string key = std::to_string(g.vertex_count()) + "|" + std::to_string(g.edge_count()) + "|";
    for (int64_t d : degrees) key += std::to_string(d);
    key += "|";
    for (const auto& s : stars) key += s;
    return key;
}

// True when [u, v] lies on a cycle, i.e. is not a bridge.
bool edge_on_cycle(const WeightedGraph& g, const Edge& e) {
    // BFS from e.u avoiding the edge itself; reachable e.v means a second
    // path exists.
    std::set<std::string> seen{e.u};
    std::vector<std::string> queue{e.u};
    while (!queue.empty()) {
        const std::string v = queue.back();
        queue.pop_back();
        for (const auto& w : g.neighbors(v)) {
            if (v == e.u && w == e.v) continue;
            if (v == e.v && w == e.u) continue;
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return seen.count(e.v) > 0;
}

std::optional<BuildingBlock> candidate_to_block(const WeightedGraph& g,
                                                const ModularLabeling& lam) {
    for (const auto& e : g.edges()) {
        if (g.degree(e.u) != 2 || g.degree(e.v) != 2) continue;
        if (!edge_on_cycle(g, e)) continue;
        BlockCandidate c{g, lam, e, lam.at(e.u), lam.at(e.v)};
        if (validate_block(c).ok) return BuildingBlock::create(std::move(c));
    }
    return std::nullopt;
}

std::optional<WeightedGraph> random_degree3_graph(std::mt19937_64& rng, int n, int extra_edges) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));

    std::vector<int> degree(n, 0);
    std::vector<EdgeSpec> edges;
    // Random spanning tree respecting the degree cap.
    for (int i = 1; i < n; ++i) {
        std::vector<int> open;
        for (int j = 0; j < i; ++j)
            if (degree[j] < 3) open.push_back(j);
        if (open.empty()) return std::nullopt;
        const int j = open[bounded(rng, open.size())];
        edges.push_back({ids[j], ids[i], 1, false});
        ++degree[j];
        ++degree[i];
    }
    // Extra edges close cycles.
    for (int t = 0; t < extra_edges; ++t) {
        std::vector<std::pair<int, int>> open;
        std::set<std::pair<int, int>> present;
        for (const auto& e : edges) {
            int a = std::stoi(e.u.substr(1)), b = std::stoi(e.v.substr(1));
            present.insert({std::min(a, b), std::max(a, b)});
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (degree[a] < 3 && degree[b] < 3 && !present.count({a, b}))
                    open.push_back({a, b});
        if (open.empty()) return std::nullopt;
        const auto [a, b] = open[bounded(rng, open.size())];
        edges.push_back({ids[a], ids[b], 1, false});
        ++degree[a];
        ++degree[b];
    }
    return WeightedGraph::create(std::move(ids), edges);
}

} // namespace

std::vector<BuildingBlock> search_blocks(int64_t p, const SearchOptions& opts, uint64_t seed) {
    fp::require_prime(p);
    if (p < min_labeling_prime)
        throw error(errc::bad_value, "characteristic must be at least 7");

    std::vector<BuildingBlock> out;
    std::set<std::string> seen;
    auto push = [&](BuildingBlock blk) {
        if (int(out.size()) >= opts.max_results) return;
        const std::string key = dedupe_key(blk.graph(), blk.labeling());
        if (seen.insert(key).second) out.push_back(std::move(blk));
    };

    // Cycle fast path: lambda(i) = r^i on an m-cycle solves the eigen-
    // equation iff 3r^2 + 4r + 3 == 0 and r^m == 1; the minimal such m is
    // the multiplicative order of r. The two roots are inverse to each
    // other (their product is 3/3 = 1) and give the same cycle reversed.
    {
        const int64_t disc = fp::normalize(-20, p); // 4^2 - 4*3*3
        const int64_t s = fp::sqrt_mod(disc, p);
        if (s >= 0) {
            const int64_t inv6 = fp::inv(6 % p, p);
            const int64_t r1 = fp::mul(fp::normalize(s - 4, p), inv6, p);
            const int64_t r2 = fp::mul(fp::normalize(-s - 4, p), inv6, p);
            const int64_t r = std::min(r1, r2);
            const int64_t m = fp::mult_order(r, p);
            if (m >= 3 && m <= opts.max_vertices) {
                std::vector<std::string> ids;
                std::map<std::string, int64_t> values;
                std::vector<EdgeSpec> edges;
                int64_t power = 1;
                for (int64_t i = 0; i < m; ++i) {
                    ids.push_back("c" + std::to_string(i));
                    values[ids.back()] = power;
                    power = fp::mul(power, r, p);
                }
                for (int64_t i = 0; i < m; ++i)
                    edges.push_back({ids[i], ids[(i + 1) % m], 1, i == 0});
                WeightedGraph cycle = WeightedGraph::create(ids, edges);
                ModularLabeling lam = ModularLabeling::create(cycle, p, values);
                BlockCandidate c{cycle, lam, Edge(ids[0], ids[1]), 1, r};
                if (validate_block(c).ok) push(BuildingBlock::create(std::move(c)));
            }
        }
    }

    if (!opts.cycles_only) {
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial < opts.random_trials && int(out.size()) < opts.max_results;
             ++trial) {
            const int span = std::max(1, opts.max_vertices - 4);
            const int n = 5 + int(bounded(rng, span));
            const int extra = 1 + int(bounded(rng, 2));
            auto maybe_graph = random_degree3_graph(rng, n, extra);
            if (!maybe_graph) continue;
            const WeightedGraph& g = *maybe_graph;

            const auto basis = nullspace_mod_p(eigen_matrix(g), p);
            if (basis.empty()) continue;

            const auto& ids = g.vertices();
            for (size_t attempt = 0; attempt < basis.size() + 4; ++attempt) {
                std::vector<int64_t> lambda(ids.size(), 0);
                if (attempt < basis.size()) {
                    lambda = basis[attempt];
                } else {
                    for (const auto& vec : basis) {
                        const int64_t coefficient = bounded(rng, uint64_t(p));
                        for (size_t i = 0; i < lambda.size(); ++i)
                            lambda[i] = fp::add(lambda[i], fp::mul(coefficient, vec[i], p), p);
                    }
                }
                std::map<std::string, int64_t> values;
                for (size_t i = 0; i < ids.size(); ++i) values[ids[i]] = lambda[i];
                ModularLabeling lam = ModularLabeling::create(g, p, std::move(values));
                if (auto blk = candidate_to_block(g, lam)) {
                    push(std::move(*blk));
                    break;
                }
            }
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const BuildingBlock& x, const BuildingBlock& y) {
        if (x.graph().vertex_count() != y.graph().vertex_count())
            return x.graph().vertex_count() < y.graph().vertex_count();
        if (x.edge_count() != y.edge_count()) return x.edge_count() < y.edge_count();
        return dedupe_key(x.graph(), x.labeling()) < dedupe_key(y.graph(), y.labeling());
    });
    return out;
}

} // namespace eblocks
