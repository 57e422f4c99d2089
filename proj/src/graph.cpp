#include "eblocks/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace eblocks {

Edge::Edge(std::string a, std::string b) {
    if (a <= b) {
        u = std::move(a);
        v = std::move(b);
    } else {
        u = std::move(b);
        v = std::move(a);
    }
}

WeightedGraph WeightedGraph::create(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
    WeightedGraph g;
    if (vertices.empty()) throw error(errc::empty_graph, "graph has no vertices");
    std::sort(vertices.begin(), vertices.end());
    for (size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i] == vertices[i - 1])
            throw error(errc::duplicate_vertex, "duplicate vertex id '" + vertices[i] + "'");
    }
    g.ids_ = std::move(vertices);
    for (size_t i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = static_cast<int>(i);
    g.adjacency_.resize(g.ids_.size());

    for (const EdgeSpec& spec : edges) {
        if (spec.u == spec.v)
            throw error(errc::loop_edge, "loop edge at vertex '" + spec.u + "'");
        if (!g.index_.count(spec.u) || !g.index_.count(spec.v))
            throw error(errc::unknown_vertex,
                        "edge [" + spec.u + "," + spec.v + "] references unknown vertex");
        if (spec.mu < 1)
            throw error(errc::bad_weight, "edge [" + spec.u + "," + spec.v + "] has weight < 1");
        Edge e(spec.u, spec.v);
        if (g.mu_.count(e))
            throw error(errc::duplicate_edge, "duplicate edge [" + e.u + "," + e.v + "]");
        g.mu_[e] = spec.mu;
        g.distinguished_[e] = spec.distinguished;
        g.adjacency_[g.index_[e.u]].push_back(e.v);
        g.adjacency_[g.index_[e.v]].push_back(e.u);
    }
    for (auto& [e, m] : g.mu_) g.edges_.push_back(e);
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());

    for (size_t i = 0; i < g.ids_.size(); ++i) {
        if (g.adjacency_[i].empty())
            throw error(errc::isolated_vertex, "vertex '" + g.ids_[i] + "' is isolated");
    }

    // Connectivity by BFS from vertex 0.
    std::vector<bool> seen(g.ids_.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    size_t reached = 1;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const std::string& w : g.adjacency_[cur]) {
            int wi = g.index_.at(w);
            if (!seen[wi]) {
                seen[wi] = true;
                ++reached;
                queue.push_back(wi);
            }
        }
    }
    if (reached != g.ids_.size())
        throw error(errc::disconnected, "graph is not connected");
    return g;
}

int WeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw error(errc::unknown_vertex, "unknown vertex '" + id + "'");
    return it->second;
}

bool WeightedGraph::has_vertex(const std::string& id) const { return index_.count(id) > 0; }

bool WeightedGraph::has_edge(const std::string& u, const std::string& v) const {
    return mu_.count(Edge(u, v)) > 0;
}

int64_t WeightedGraph::mu(const std::string& u, const std::string& v) const {
    auto it = mu_.find(Edge(u, v));
    if (it == mu_.end())
        throw error(errc::unknown_vertex, "no edge [" + u + "," + v + "]");
    return it->second;
}

bool WeightedGraph::is_distinguished(const std::string& u, const std::string& v) const {
    auto it = distinguished_.find(Edge(u, v));
    if (it == distinguished_.end())
        throw error(errc::unknown_vertex, "no edge [" + u + "," + v + "]");
    return it->second;
}

std::vector<Edge> WeightedGraph::distinguished_edges() const {
    std::vector<Edge> out;
    for (const auto& [e, flag] : distinguished_)
        if (flag) out.push_back(e);
    return out;
}

bool WeightedGraph::mu_all_one() const {
    for (const auto& [e, m] : mu_)
        if (m != 1) return false;
    return true;
}

const std::vector<std::string>& WeightedGraph::neighbors(const std::string& v) const {
    return adjacency_[index_of(v)];
}

int64_t WeightedGraph::degree(const std::string& v) const {
    return static_cast<int64_t>(adjacency_[index_of(v)].size());
}

int64_t WeightedGraph::max_degree() const {
    size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return static_cast<int64_t>(d);
}

int64_t WeightedGraph::weighted_degree(const std::string& v) const {
    int64_t total = 0;
    for (const std::string& w : adjacency_[index_of(v)]) total += mu_.at(Edge(v, w));
    return total;
}

int64_t WeightedGraph::distance(const std::string& v, const std::string& w) const {
    int from = index_of(v), to = index_of(w);
    if (from == to) return 0;
    std::vector<int64_t> dist(ids_.size(), -1);
    std::deque<int> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const std::string& n : adjacency_[cur]) {
            int ni = index_.at(n);
            if (dist[ni] < 0) {
                dist[ni] = dist[cur] + 1;
                if (ni == to) return dist[ni];
                queue.push_back(ni);
            }
        }
    }
    throw error(errc::disconnected, "vertices in different components"); // unreachable under invariants
}

bool WeightedGraph::operator==(const WeightedGraph& o) const {
    return ids_ == o.ids_ && mu_ == o.mu_ && distinguished_ == o.distinguished_;
}

WeightedGraph WeightedGraph::with_distinguished(const std::vector<Edge>& marks) const {
    std::set<Edge> mark_set(marks.begin(), marks.end());
    for (const Edge& e : marks) {
        if (!mu_.count(e))
            throw error(errc::unknown_vertex, "no edge [" + e.u + "," + e.v + "]");
    }
    std::vector<EdgeSpec> specs;
    for (const Edge& e : edges_)
        specs.push_back({e.u, e.v, mu_.at(e), mark_set.count(e) > 0});
    return create(ids_, specs);
}

int64_t weighted_degree(const WeightedGraph& g, const std::string& v) { return g.weighted_degree(v); }
int64_t first_betti(const WeightedGraph& g) { return g.first_betti(); }
int64_t distance(const WeightedGraph& g, const std::string& v, const std::string& w) {
    return g.distance(v, w);
}

} // namespace eblocks
