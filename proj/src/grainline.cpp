#include "fareylab/grainline.hpp"

#include <algorithm>
#include <map>

namespace fareylab {

bool GrainLine::in_order(const Vertex& v) const {
    return std::find(order.begin(), order.end(), v) != order.end();
}

std::size_t GrainLine::rank(const Vertex& v) const {
    auto it = std::find(order.begin(), order.end(), v);
    if (it == order.end()) throw std::invalid_argument("vertex '" + v + "' not in order");
    return static_cast<std::size_t>(it - order.begin());
}

namespace {

std::map<Vertex, std::size_t> depth_map(const GrainLine& gl) {
    std::map<Vertex, std::size_t> depth;
    for (std::size_t n = 0; n < gl.paths.size(); ++n)
        for (const auto& v : gl.paths[n].vertices)
            depth.emplace(v, n);  // first emplace wins: minimal index
    return depth;
}

std::map<Vertex, std::size_t> rank_map(const GrainLine& gl) {
    std::map<Vertex, std::size_t> rank;
    for (std::size_t i = 0; i < gl.order.size(); ++i) rank.emplace(gl.order[i], i);
    return rank;
}

}  // namespace

GrainLineReport check_grain_line(const GrainLine& gl) {
    GrainLineReport report;
    auto flag = [&](const std::string& s) { report.violations.push_back(s); };

    if (gl.paths.empty()) {
        flag("basics: no paths");
        return report;
    }
    if (gl.order.empty() || gl.order.front() != gl.x || gl.order.back() != gl.y)
        flag("basics: order must run from x to y");
    {
        std::set<Vertex> seen;
        for (const auto& v : gl.order)
            if (!seen.insert(v).second) flag("basics: order repeats '" + v + "'");
    }
    for (std::size_t n = 0; n < gl.paths.size(); ++n) {
        try {
            gl.paths[n].validate(gl.host);
        } catch (const std::exception& e) {
            flag("basics: P_" + std::to_string(n) + ": " + e.what());
            continue;
        }
        if (gl.paths[n].from() != gl.x || gl.paths[n].to() != gl.y)
            flag("basics: P_" + std::to_string(n) + " is not an x-y path");
    }
    {
        std::set<Edge> used;
        for (std::size_t n = 0; n < gl.paths.size(); ++n)
            for (const auto& e : gl.paths[n].edges())
                if (!used.insert(e).second)
                    flag("basics: edge " + e.first + "-" + e.second + " reused by P_" +
                         std::to_string(n));
    }
    if (!report.violations.empty()) return report;

    const auto depth = depth_map(gl);
    const auto rank = rank_map(gl);
    const std::size_t m = gl.horizon();

    std::vector<std::set<Vertex>> on_path(gl.paths.size());
    for (std::size_t n = 0; n <= m; ++n)
        on_path[n] = {gl.paths[n].vertices.begin(), gl.paths[n].vertices.end()};

    // GL1: order vertices persist from their depth to the horizon.
    for (const auto& v : gl.order) {
        auto it = depth.find(v);
        if (it == depth.end()) {
            flag("GL1: '" + v + "' lies on no path");
            continue;
        }
        for (std::size_t n = it->second; n <= m; ++n)
            if (!on_path[n].count(v))
                flag("GL1: '" + v + "' missing from P_" + std::to_string(n));
    }
    // GL2: non-order vertices lie on exactly one path.
    for (const auto& [v, d] : depth) {
        if (rank.count(v)) continue;
        std::size_t count = 0;
        for (std::size_t n = 0; n <= m; ++n) count += on_path[n].count(v);
        if (count != 1)
            flag("GL2: '" + v + "' lies on " + std::to_string(count) + " paths");
    }
    // GL3: each P_n visits L_{<n} in order.
    for (std::size_t n = 1; n <= m; ++n) {
        std::vector<std::size_t> ranks;
        for (const auto& v : gl.paths[n].vertices) {
            auto rit = rank.find(v);
            if (rit == rank.end()) continue;
            auto dit = depth.find(v);
            if (dit == depth.end() || dit->second >= n) continue;
            ranks.push_back(rit->second);
        }
        for (std::size_t i = 0; i + 1 < ranks.size(); ++i)
            if (ranks[i] >= ranks[i + 1]) {
                flag("GL3: P_" + std::to_string(n) + " disagrees with order at '" +
                     gl.order[ranks[i + 1]] + "'");
                break;
            }
    }

    report.dense_at_horizon = true;
    {
        std::vector<std::size_t> prefix_ranks;
        for (const auto& v : gl.order) {
            auto dit = depth.find(v);
            if (dit != depth.end() && dit->second < m) prefix_ranks.push_back(rank.at(v));
        }
        std::sort(prefix_ranks.begin(), prefix_ranks.end());
        for (std::size_t i = 0; i + 1 < prefix_ranks.size(); ++i)
            if (prefix_ranks[i + 1] - prefix_ranks[i] < 2) report.dense_at_horizon = false;
    }
    return report;
}

std::pair<bool, bool> check_prime_axioms(const GrainLine& gl) {
    auto report = check_grain_line(gl);
    if (!report.valid())
        throw std::invalid_argument("not a grain line: " + report.violations.front());

    const auto rank = rank_map(gl);
    bool gl2p = true;
    for (const auto& p : gl.paths)
        for (const auto& v : p.vertices)
            if (!rank.count(v)) gl2p = false;

    const std::size_t n = gl.order.size();
    std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
    for (const auto& p : gl.paths) {
        std::vector<std::size_t> ranks;
        for (const auto& v : p.vertices) {
            auto it = rank.find(v);
            if (it != rank.end()) ranks.push_back(it->second);
        }
        for (std::size_t i = 0; i < ranks.size(); ++i)
            for (std::size_t j = i + 1; j < ranks.size(); ++j)
                before[ranks[i]][ranks[j]] = true;
    }
    bool gl3p = true;
    for (std::size_t i = 0; i < n && gl3p; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!before[i][j] || before[j][i]) {
                gl3p = false;
                break;
            }
    return {gl2p, gl3p};
}

namespace {

// Derives L from the selected paths (endpoints plus vertices shared by at
// least two of them), ordered along the last path.
std::optional<GrainLine> derive_candidate(const std::vector<Path>& selected) {
    const Vertex x = selected.front().from();
    const Vertex y = selected.front().to();
    std::map<Vertex, std::size_t> multiplicity;
    for (const auto& p : selected) {
        std::set<Vertex> vs(p.vertices.begin(), p.vertices.end());
        for (const auto& v : vs) ++multiplicity[v];
    }
    std::set<Vertex> limit{x, y};
    for (const auto& [v, c] : multiplicity)
        if (c >= 2) limit.insert(v);

    GrainLine gl;
    gl.host = union_graph(selected);
    gl.x = x;
    gl.y = y;
    gl.paths = selected;
    for (const auto& v : selected.back().vertices)
        if (limit.count(v)) gl.order.push_back(v);
    if (gl.order.size() != limit.size()) return std::nullopt;  // limit vertex off last path
    if (!check_grain_line(gl).valid()) return std::nullopt;
    return gl;
}

void subsets_of_size(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                     std::size_t from, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        subsets_of_size(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

}  // namespace

GrainLine extract_grain_line(const std::vector<Path>& paths) {
    if (paths.size() < 2) throw std::invalid_argument("need at least 2 paths");
    const Vertex x = paths.front().from();
    const Vertex y = paths.front().to();
    if (x == y) throw std::invalid_argument("degenerate endpoints");
    for (const auto& p : paths)
        if (p.from() != x || p.to() != y)
            throw std::invalid_argument("paths do not share endpoints");
    {
        std::set<Edge> used;
        for (const auto& p : paths)
            for (const auto& e : p.edges())
                if (!used.insert(e).second)
                    throw std::invalid_argument("input paths are not pairwise edge-disjoint");
    }

    if (paths.size() <= 8) {
        for (std::size_t k = paths.size(); k >= 2; --k) {
            std::vector<std::vector<std::size_t>> subsets;
            std::vector<std::size_t> cur;
            subsets_of_size(paths.size(), k, cur, 0, subsets);
            for (const auto& idx : subsets) {
                std::vector<Path> selected;
                for (auto i : idx) selected.push_back(paths[i]);
                if (auto gl = derive_candidate(selected)) return *gl;
            }
        }
    } else {
        std::vector<Path> selected{paths[0]};
        for (std::size_t i = 1; i < paths.size(); ++i) {
            std::vector<Path> trial = selected;
            trial.push_back(paths[i]);
            if (derive_candidate(trial)) selected = std::move(trial);
        }
        if (selected.size() >= 2)
            if (auto gl = derive_candidate(selected)) return *gl;
    }

    // Last resort: the first pair with the bare order {x, y}.
    GrainLine trivial;
    trivial.host = union_graph({paths[0], paths[1]});
    trivial.x = x;
    trivial.y = y;
    trivial.order = {x, y};
    trivial.paths = {paths[0], paths[1]};
    if (check_grain_line(trivial).valid()) return trivial;
    throw std::invalid_argument("no grain-line subsequence of size >= 2 exists");
}

std::size_t vertex_depth(const GrainLine& gl, const Vertex& v) {
    for (std::size_t n = 0; n < gl.paths.size(); ++n)
        if (gl.paths[n].contains_vertex(v)) return n;
    throw std::invalid_argument("vertex '" + v + "' lies on no path");
}

std::size_t edge_depth(const GrainLine& gl, const Edge& e) {
    for (std::size_t n = 0; n < gl.paths.size(); ++n)
        for (const auto& pe : gl.paths[n].edges())
            if (pe == e) return n;
    throw std::invalid_argument("edge " + e.first + "-" + e.second + " lies on no path");
}

std::vector<Vertex> order_prefix(const GrainLine& gl, std::size_t d) {
    const auto depth = depth_map(gl);
    std::vector<Vertex> prefix;
    for (const auto& v : gl.order) {
        auto it = depth.find(v);
        if (it != depth.end() && it->second < d) prefix.push_back(v);
    }
    return prefix;
}

std::vector<Segment> p_segments(const GrainLine& gl, std::size_t d) {
    if (d < 1 || d > gl.horizon())
        throw std::invalid_argument("segment depth out of range: " + std::to_string(d));
    auto prefix = order_prefix(gl, d);
    std::set<Vertex> anchors(prefix.begin(), prefix.end());

    std::vector<Segment> segments;
    const auto& pd = gl.paths[d].vertices;
    std::size_t last = pd.size();  // index of the previous anchor
    for (std::size_t i = 0; i < pd.size(); ++i) {
        if (!anchors.count(pd[i])) continue;
        if (last != pd.size()) {
            Segment s;
            s.depth = d;
            s.u = pd[last];
            s.v = pd[i];
            s.sub = Path({pd.begin() + last, pd.begin() + i + 1});
            segments.push_back(std::move(s));
        }
        last = i;
    }
    return segments;
}

bool is_well_structured(const GrainLine& gl) {
    const auto rank = rank_map(gl);
    for (std::size_t d = 1; d <= gl.horizon(); ++d)
        for (const auto& seg : p_segments(gl, d)) {
            auto lo = rank.at(seg.u), hi = rank.at(seg.v);
            if (lo > hi) std::swap(lo, hi);
            for (const auto& v : seg.sub.vertices) {
                auto it = rank.find(v);
                if (it != rank.end() && (it->second < lo || it->second > hi)) return false;
            }
        }
    return true;
}

bool is_free(const GrainLine& gl) {
    std::set<Vertex> on_paths;
    for (const auto& p : gl.paths)
        on_paths.insert(p.vertices.begin(), p.vertices.end());
    return on_paths == std::set<Vertex>(gl.order.begin(), gl.order.end());
}

std::optional<Vertex> wild_witness(const GrainLine& gl, std::size_t n, const Vertex& u,
                                   const Vertex& v) {
    if (n >= gl.paths.size()) return std::nullopt;
    const Path& pn = gl.paths[n];
    if (!pn.contains_vertex(u) || !pn.contains_vertex(v)) return std::nullopt;
    const auto rank = rank_map(gl);
    auto ru = rank.find(u), rv = rank.find(v);
    if (ru == rank.end() || rv == rank.end()) return std::nullopt;
    auto lo = ru->second, hi = rv->second;
    if (lo > hi) std::swap(lo, hi);

    Path sub = pn.subpath(u, v);
    std::optional<Vertex> best;
    std::size_t best_rank = 0;
    for (std::size_t i = 1; i + 1 < sub.vertices.size(); ++i) {
        auto it = rank.find(sub.vertices[i]);
        if (it == rank.end() || it->second <= lo || it->second >= hi) continue;
        if (!best || it->second < best_rank) {
            best = sub.vertices[i];
            best_rank = it->second;
        }
    }
    return best;
}

bool is_wildly_presented(const GrainLine& gl) {
    for (std::size_t n = 1; n <= gl.horizon(); ++n) {
        auto prefix = order_prefix(gl, n);
        for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
            if (!wild_witness(gl, n, prefix[i], prefix[i + 1])) return false;
    }
    return true;
}

VertexSeparation separation_at_vertex(const GrainLine& gl, const Vertex& v) {
    if (!is_well_structured(gl))
        throw std::invalid_argument("grain line is not well-structured");
    if (!gl.in_order(v) || v == gl.x || v == gl.y)
        throw std::invalid_argument("vertex '" + v + "' is not an interior order vertex");

    VertexSeparation sep;
    sep.v = v;
    sep.depth = vertex_depth(gl, v);

    Graph residue = union_graph(gl.paths);
    for (std::size_t n = 0; n <= sep.depth; ++n)
        for (const auto& e : gl.paths[n].edges()) sep.removed_edges.insert(e);
    for (const auto& e : sep.removed_edges) residue.remove_edge(e.first, e.second);
    residue.remove_vertex(v);

    const std::size_t rv = gl.rank(v);
    std::set<Vertex> left, right;
    for (std::size_t i = 0; i < gl.order.size(); ++i) {
        if (i < rv) left.insert(gl.order[i]);
        if (i > rv) right.insert(gl.order[i]);
    }
    sep.separates = true;
    std::set<Vertex> visited;
    for (const auto& u : left) {
        if (visited.count(u)) continue;
        auto reach = reachable_from(residue, u);
        for (const auto& w : reach)
            if (right.count(w)) sep.separates = false;
        visited.insert(reach.begin(), reach.end());
    }
    return sep;
}

GrainLine grain_line_of(const LeveledFareyGraph& g) {
    GrainLine gl;
    gl.host = g.graph;
    gl.x = g.x;
    gl.y = g.y;
    gl.order = g.order;
    gl.paths = g.paths;
    return gl;
}

}  // namespace fareylab
