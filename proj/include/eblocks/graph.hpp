#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eblocks/error.hpp"

namespace eblocks {

// Unordered edge, stored with u <= v in id order.
struct Edge {
    std::string u, v;

    Edge() = default;
    Edge(std::string a, std::string b);

    bool operator==(const Edge&) const = default;
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

struct EdgeSpec {
    std::string u, v;
    int64_t mu = 1;
    bool distinguished = false;
};

// Simple connected graph with positive integer edge weights and a set of
// distinguished (gluing-site) edges. Immutable after construction; surgery
// returns new graphs.
class WeightedGraph {
  public:
    static WeightedGraph create(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

    int64_t vertex_count() const { return static_cast<int64_t>(ids_.size()); }
    int64_t edge_count() const { return static_cast<int64_t>(edges_.size()); }

    // Sorted vertex ids; the canonical order used everywhere.
    const std::vector<std::string>& vertices() const { return ids_; }
    bool has_vertex(const std::string& id) const;

    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(const std::string& u, const std::string& v) const;
    int64_t mu(const std::string& u, const std::string& v) const;
    bool is_distinguished(const std::string& u, const std::string& v) const;
    std::vector<Edge> distinguished_edges() const;
    bool mu_all_one() const;

    // Sorted neighbor ids.
    const std::vector<std::string>& neighbors(const std::string& v) const;
    int64_t degree(const std::string& v) const;
    int64_t max_degree() const;
    int64_t weighted_degree(const std::string& v) const;

    int64_t first_betti() const { return edge_count() - vertex_count() + 1; }

    // Unweighted shortest-path edge count.
    int64_t distance(const std::string& v, const std::string& w) const;

    bool operator==(const WeightedGraph& o) const;

    // Copy with the distinguished flag replaced by exactly the given edges.
    WeightedGraph with_distinguished(const std::vector<Edge>& marks) const;

  private:
    WeightedGraph() = default;
    int index_of(const std::string& id) const; // throws unknown_vertex

    std::vector<std::string> ids_;
    std::map<std::string, int> index_;
    std::vector<std::vector<std::string>> adjacency_;
    std::vector<Edge> edges_;
    std::map<Edge, int64_t> mu_;
    std::map<Edge, bool> distinguished_;
};

int64_t weighted_degree(const WeightedGraph& g, const std::string& v);
int64_t first_betti(const WeightedGraph& g);
int64_t distance(const WeightedGraph& g, const std::string& v, const std::string& w);

} // namespace eblocks
