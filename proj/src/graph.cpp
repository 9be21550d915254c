#include "fareylab/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "flow.hpp"

namespace fareylab {

std::vector<Vertex> Graph::neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (const auto& [a, b] : edges_) {
        if (a == v) out.push_back(b);
        else if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Graph::remove_vertex(const Vertex& v) {
    vertices_.erase(v);
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (it->first == v || it->second == v)
            it = edges_.erase(it);
        else
            ++it;
    }
}

std::vector<Edge> Path::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        out.push_back(make_edge(vertices[i], vertices[i + 1]));
    return out;
}

std::set<Edge> Path::edge_set() const {
    auto es = edges();
    return {es.begin(), es.end()};
}

bool Path::contains_vertex(const Vertex& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

Path Path::subpath(const Vertex& u, const Vertex& v) const {
    auto iu = std::find(vertices.begin(), vertices.end(), u);
    auto iv = std::find(vertices.begin(), vertices.end(), v);
    if (iu == vertices.end() || iv == vertices.end())
        throw std::invalid_argument("subpath endpoint not on path");
    if (iu <= iv) return Path({iu, iv + 1});
    Path rev({iv, iu + 1});
    return rev.reversed();
}

Path Path::reversed() const {
    return Path({vertices.rbegin(), vertices.rend()});
}

void Path::validate(const Graph& host) const {
    if (vertices.empty()) throw std::invalid_argument("empty path");
    std::set<Vertex> seen;
    for (const auto& v : vertices) {
        if (!host.has_vertex(v))
            throw std::invalid_argument("path vertex '" + v + "' not in host");
        if (!seen.insert(v).second)
            throw std::invalid_argument("path repeats vertex '" + v + "'");
    }
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (!host.has_edge(vertices[i], vertices[i + 1]))
            throw std::invalid_argument("path uses non-edge " + vertices[i] + "-" + vertices[i + 1]);
}

Graph induced_subgraph(const Graph& g, const std::set<Vertex>& x) {
    Graph out;
    for (const auto& v : x) {
        if (!g.has_vertex(v))
            throw std::invalid_argument("induced_subgraph: unknown vertex '" + v + "'");
        out.add_vertex(v);
    }
    for (const auto& [a, b] : g.edges())
        if (x.count(a) && x.count(b)) out.add_edge(a, b);
    return out;
}

namespace {

void check_pair(const Graph& g, const Vertex& u, const Vertex& v) {
    if (u == v) throw std::invalid_argument("endpoints coincide: '" + u + "'");
    if (!g.has_vertex(u)) throw std::invalid_argument("unknown vertex '" + u + "'");
    if (!g.has_vertex(v)) throw std::invalid_argument("unknown vertex '" + v + "'");
}

detail::FlowNetwork unit_network(const Graph& g) {
    detail::FlowNetwork net;
    for (const auto& v : g.vertices()) net.node(v);
    for (const auto& [a, b] : g.edges()) net.add_undirected(a, b, 1);
    return net;
}

}  // namespace

EdgeConnectivityResult edge_connectivity(const Graph& g, const Vertex& u, const Vertex& v) {
    check_pair(g, u, v);
    auto net = unit_network(g);
    EdgeConnectivityResult result;
    result.lambda = static_cast<std::size_t>(net.max_flow(u, v));
    for (auto& walk : net.unit_flow_paths())
        result.paths.emplace_back(std::move(walk));
    return result;
}

std::size_t edge_connectivity_value(const Graph& g, const Vertex& u, const Vertex& v) {
    check_pair(g, u, v);
    auto net = unit_network(g);
    return static_cast<std::size_t>(net.max_flow(u, v));
}

Cut min_edge_cut(const Graph& g, const Vertex& u, const Vertex& v) {
    check_pair(g, u, v);
    auto net = unit_network(g);
    net.max_flow(u, v);
    Cut cut;
    auto side = net.min_cut_source_side();
    for (const auto& w : g.vertices())
        (side.count(w) ? cut.a : cut.b).insert(w);
    for (const auto& e : g.edges())
        if (cut.a.count(e.first) != cut.a.count(e.second)) cut.cross_edges.insert(e);
    return cut;
}

std::optional<std::size_t> girth(const Graph& g) {
    // BFS from every vertex; a non-tree edge closing at depth d gives a cycle
    // of length dist[a]+dist[b]+1, and scanning all roots makes this exact.
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& root : g.vertices()) {
        std::map<Vertex, std::size_t> dist;
        std::map<Vertex, Vertex> parent;
        std::deque<Vertex> queue{root};
        dist[root] = 0;
        while (!queue.empty()) {
            Vertex cur = queue.front();
            queue.pop_front();
            if (2 * dist[cur] >= best) continue;
            for (const auto& nb : g.neighbors(cur)) {
                auto it = dist.find(nb);
                if (it == dist.end()) {
                    dist[nb] = dist[cur] + 1;
                    parent[nb] = cur;
                    queue.push_back(nb);
                } else if (parent.count(cur) == 0 || parent[cur] != nb) {
                    best = std::min(best, dist[cur] + it->second + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return best;
}

std::vector<Vertex> loop_erase(const std::vector<Vertex>& walk) {
    std::vector<Vertex> path;
    std::map<Vertex, std::size_t> pos;
    for (const auto& v : walk) {
        auto it = pos.find(v);
        if (it != pos.end()) {
            while (path.size() > it->second + 1) {
                pos.erase(path.back());
                path.pop_back();
            }
        } else {
            pos.emplace(v, path.size());
            path.push_back(v);
        }
    }
    return path;
}

namespace {

bool edge_disjoint_from(const Path& candidate, const std::set<Edge>& used) {
    for (const auto& e : candidate.edges())
        if (used.count(e)) return false;
    return true;
}

// Backtracking search for the largest set of pairwise edge-disjoint combined
// paths over pairings (i, j) with distinct i's and j's.
void best_pairing(const std::vector<std::vector<Path>>& combined, std::size_t i,
                  std::vector<bool>& q_used, std::set<Edge>& used,
                  std::vector<Path>& current, std::vector<Path>& best) {
    if (current.size() + (combined.size() - i) <= best.size()) return;
    if (i == combined.size()) {
        if (current.size() > best.size()) best = current;
        return;
    }
    for (std::size_t j = 0; j < combined[i].size(); ++j) {
        if (q_used[j]) continue;
        const Path& cand = combined[i][j];
        if (!edge_disjoint_from(cand, used)) continue;
        q_used[j] = true;
        auto es = cand.edges();
        used.insert(es.begin(), es.end());
        current.push_back(cand);
        best_pairing(combined, i + 1, q_used, used, current, best);
        current.pop_back();
        for (const auto& e : es) used.erase(e);
        q_used[j] = false;
    }
    best_pairing(combined, i + 1, q_used, used, current, best);  // skip P_i
}

}  // namespace

std::vector<Path> combine_path_systems(const std::vector<Path>& p, const std::vector<Path>& q) {
    if (p.empty() || q.empty()) return {};
    const Vertex u = p.front().from();
    const Vertex a = q.front().from();
    const Vertex w = p.front().to();
    if (u == a) throw std::invalid_argument("combine_path_systems: degenerate, u == a");
    for (const auto& path : p)
        if (path.from() != u || path.to() != w)
            throw std::invalid_argument("combine_path_systems: inconsistent p-system endpoints");
    for (const auto& path : q)
        if (path.from() != a || path.to() != w)
            throw std::invalid_argument("combine_path_systems: inconsistent q-system endpoints");

    // All loop-erased concatenations P_i + reverse(Q_j).
    std::vector<std::vector<Path>> combined(p.size(), std::vector<Path>(q.size()));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
            std::vector<Vertex> walk = p[i].vertices;
            const auto& qv = q[j].vertices;
            walk.insert(walk.end(), qv.rbegin() + 1, qv.rend());
            combined[i][j] = Path(loop_erase(walk));
        }

    // Greedy first pass.
    std::vector<Path> selected;
    {
        std::vector<bool> q_used(q.size(), false);
        std::set<Edge> used;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) {
                if (q_used[j]) continue;
                if (!edge_disjoint_from(combined[i][j], used)) continue;
                auto es = combined[i][j].edges();
                used.insert(es.begin(), es.end());
                selected.push_back(combined[i][j]);
                q_used[j] = true;
                break;
            }
    }
    const std::size_t target = std::min(p.size(), q.size()) / 2;
    if (selected.size() < target) {
        std::vector<bool> q_used(q.size(), false);
        std::set<Edge> used;
        std::vector<Path> current, best;
        best_pairing(combined, 0, q_used, used, current, best);
        selected = best;
        if (selected.size() < target)
            throw std::logic_error("combine_path_systems: could not reach guaranteed bound");
    }
    return selected;
}

Graph union_graph(const std::vector<Path>& paths) {
    Graph g;
    for (const auto& p : paths) {
        for (const auto& v : p.vertices) g.add_vertex(v);
        for (const auto& [a, b] : p.edges()) g.add_edge(a, b);
    }
    return g;
}

std::set<Vertex> reachable_from(const Graph& g, const Vertex& start) {
    std::set<Vertex> seen{start};
    std::deque<Vertex> queue{start};
    while (!queue.empty()) {
        Vertex cur = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(cur))
            if (seen.insert(nb).second) queue.push_back(nb);
    }
    return seen;
}

bool is_connected(const Graph& g) {
    if (g.vertices().empty()) return true;
    return reachable_from(g, *g.vertices().begin()).size() == g.vertex_count();
}

}  // namespace fareylab
