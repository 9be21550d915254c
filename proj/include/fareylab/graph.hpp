#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fareylab {

// Vertex ids are strings with their natural total order; every container
// below iterates in sorted order so that all operations are deterministic.
using Vertex = std::string;
using Edge = std::pair<Vertex, Vertex>;  // normalized: first < second

inline Edge make_edge(const Vertex& a, const Vertex& b) {
    if (a == b) throw std::invalid_argument("loop edge at vertex '" + a + "'");
    return a < b ? Edge{a, b} : Edge{b, a};
}

// Finite simple undirected graph.
class Graph {
public:
    Graph() = default;

    void add_vertex(const Vertex& v) { vertices_.insert(v); }

    // Inserts both endpoints as vertices.
    void add_edge(const Vertex& a, const Vertex& b) {
        Edge e = make_edge(a, b);
        vertices_.insert(e.first);
        vertices_.insert(e.second);
        edges_.insert(e);
    }

    bool has_vertex(const Vertex& v) const { return vertices_.count(v) > 0; }
    bool has_edge(const Vertex& a, const Vertex& b) const {
        return a != b && edges_.count(make_edge(a, b)) > 0;
    }

    const std::set<Vertex>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Sorted neighbour list.
    std::vector<Vertex> neighbors(const Vertex& v) const;
    std::size_t degree(const Vertex& v) const { return neighbors(v).size(); }

    void remove_vertex(const Vertex& v);
    void remove_edge(const Vertex& a, const Vertex& b) { edges_.erase(make_edge(a, b)); }

    bool operator==(const Graph& o) const = default;

private:
    std::set<Vertex> vertices_;
    std::set<Edge> edges_;
};

// Simple path given by its vertex sequence; no repeated vertices.
struct Path {
    std::vector<Vertex> vertices;

    Path() = default;
    explicit Path(std::vector<Vertex> vs) : vertices(std::move(vs)) {}

    const Vertex& from() const { return vertices.front(); }
    const Vertex& to() const { return vertices.back(); }
    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    bool trivial() const { return length() == 0; }

    std::vector<Edge> edges() const;
    std::set<Edge> edge_set() const;
    bool contains_vertex(const Vertex& v) const;

    // Subpath from u to v; both must occur on the path, u before v or after.
    Path subpath(const Vertex& u, const Vertex& v) const;
    Path reversed() const;

    // Checks the Path invariants against a host graph; throws on violation.
    void validate(const Graph& host) const;

    bool operator==(const Path& o) const = default;
};

// A vertex bipartition with its crossing edge set.
struct Cut {
    std::set<Vertex> a, b;
    std::set<Edge> cross_edges;
};

// --- graph_core operations ---

Graph induced_subgraph(const Graph& g, const std::set<Vertex>& x);

struct EdgeConnectivityResult {
    std::size_t lambda = 0;
    std::vector<Path> paths;  // exactly lambda pairwise edge-disjoint u-v paths
};

// Menger: maximum number of pairwise edge-disjoint u-v paths, with a witness
// packing. Deterministic given the vertex ordering.
EdgeConnectivityResult edge_connectivity(const Graph& g, const Vertex& u, const Vertex& v);

// Convenience: just the value.
std::size_t edge_connectivity_value(const Graph& g, const Vertex& u, const Vertex& v);

// Dual of edge_connectivity: a minimum u-v edge cut, u on side a.
Cut min_edge_cut(const Graph& g, const Vertex& u, const Vertex& v);

// Length of a shortest cycle; nullopt if acyclic.
std::optional<std::size_t> girth(const Graph& g);

// Greedily combines a u-w path system and an a-w path system into pairwise
// edge-disjoint u-a paths through w, erasing loops. Guarantees at least
// floor(min(|p|,|q|)/2) outputs.
std::vector<Path> combine_path_systems(const std::vector<Path>& p, const std::vector<Path>& q);

// First-visit loop erasure: turns a walk into a simple path using a subset of
// the walk's edges.
std::vector<Vertex> loop_erase(const std::vector<Vertex>& walk);

// Union of a path family, as a graph.
Graph union_graph(const std::vector<Path>& paths);

bool is_connected(const Graph& g);

// Vertices reachable from `start` in g.
std::set<Vertex> reachable_from(const Graph& g, const Vertex& start);

}  // namespace fareylab
