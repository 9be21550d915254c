#include "fareylab/minors.hpp"

#include <algorithm>

namespace fareylab {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::None: return "none";
        default: return "unknown";
    }
}

std::vector<std::string> verify_subdivision(const SubdivisionModel& model) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& s) { violations.push_back(s); };

    std::set<Vertex> images;
    for (const auto& [pv, hv] : model.branch) {
        if (!model.pattern.has_vertex(pv)) flag("branch key '" + pv + "' not a pattern vertex");
        if (!model.host.has_vertex(hv)) flag("branch image '" + hv + "' not a host vertex");
        if (!images.insert(hv).second) flag("branch map not injective at '" + hv + "'");
    }
    for (const auto& pv : model.pattern.vertices())
        if (!model.branch.count(pv)) flag("pattern vertex '" + pv + "' unmapped");

    std::set<Vertex> internals;
    std::set<Edge> route_edges;
    for (const auto& [pe, route] : model.routes) {
        std::string label = pe.first + "-" + pe.second;
        if (!model.pattern.has_edge(pe.first, pe.second)) {
            flag("route key " + label + " not a pattern edge");
            continue;
        }
        try {
            route.validate(model.host);
        } catch (const std::exception& e) {
            flag("route " + label + ": " + e.what());
            continue;
        }
        auto ia = model.branch.find(pe.first);
        auto ib = model.branch.find(pe.second);
        if (ia == model.branch.end() || ib == model.branch.end()) continue;
        std::set<Vertex> ends{route.from(), route.to()};
        if (ends != std::set<Vertex>{ia->second, ib->second})
            flag("route " + label + " does not connect the branch images");
        for (std::size_t i = 1; i + 1 < route.vertices.size(); ++i) {
            const Vertex& v = route.vertices[i];
            if (images.count(v)) flag("route " + label + " passes branch vertex '" + v + "'");
            if (!internals.insert(v).second)
                flag("routes share internal vertex '" + v + "'");
        }
        for (const auto& e : route.edges())
            if (!route_edges.insert(e).second)
                flag("routes share edge " + e.first + "-" + e.second);
    }
    for (const auto& pe : model.pattern.edges())
        if (!model.routes.count(pe)) flag("pattern edge " + pe.first + "-" + pe.second + " unrouted");
    return violations;
}

namespace {

struct SubdivisionSearch {
    const Graph& pattern;
    const Graph& host;
    std::size_t budget;
    std::size_t nodes = 0;
    bool out_of_budget = false;

    std::vector<Vertex> pattern_order;  // decreasing degree, then id
    std::vector<Edge> pattern_edges;
    std::map<Vertex, Vertex> branch;
    std::set<Vertex> reserved;  // branch images plus route internals
    std::set<Edge> used_edges;
    std::map<Edge, Path> routes;
    std::optional<SubdivisionModel> found;

    bool tick() {
        if (nodes >= budget) {
            out_of_budget = true;
            return false;
        }
        ++nodes;
        return true;
    }

    bool assign(std::size_t i) {
        if (!tick()) return false;
        if (i == pattern_order.size()) return route(0);
        const Vertex& pv = pattern_order[i];
        for (const auto& hv : host.vertices()) {
            if (reserved.count(hv)) continue;
            if (host.degree(hv) < pattern.degree(pv)) continue;
            branch[pv] = hv;
            reserved.insert(hv);
            if (assign(i + 1)) return true;
            reserved.erase(hv);
            branch.erase(pv);
            if (out_of_budget) return false;
        }
        return false;
    }

    bool route(std::size_t ei) {
        if (!tick()) return false;
        if (ei == pattern_edges.size()) {
            found = SubdivisionModel{pattern, host, branch, routes};
            return true;
        }
        const Vertex& s = branch.at(pattern_edges[ei].first);
        const Vertex& t = branch.at(pattern_edges[ei].second);
        std::vector<Vertex> cur{s};
        std::set<Vertex> on_cur{s};
        return extend(ei, t, cur, on_cur);
    }

    bool extend(std::size_t ei, const Vertex& t, std::vector<Vertex>& cur,
                std::set<Vertex>& on_cur) {
        if (!tick()) return false;
        const Vertex last = cur.back();
        for (const auto& nb : host.neighbors(last)) {
            Edge e = make_edge(last, nb);
            if (used_edges.count(e)) continue;
            if (nb == t) {
                cur.push_back(nb);
                Path p(cur);
                auto es = p.edges();
                used_edges.insert(es.begin(), es.end());
                for (std::size_t i = 1; i + 1 < cur.size(); ++i) reserved.insert(cur[i]);
                routes[pattern_edges[ei]] = p;
                if (route(ei + 1)) return true;
                routes.erase(pattern_edges[ei]);
                for (std::size_t i = 1; i + 1 < cur.size(); ++i) reserved.erase(cur[i]);
                for (const auto& re : es) used_edges.erase(re);
                cur.pop_back();
                if (out_of_budget) return false;
                continue;
            }
            if (reserved.count(nb) || on_cur.count(nb)) continue;
            cur.push_back(nb);
            on_cur.insert(nb);
            if (extend(ei, t, cur, on_cur)) return true;
            cur.pop_back();
            on_cur.erase(nb);
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

SubdivisionResult find_subdivision(const Graph& pattern, const Graph& host, std::size_t budget) {
    SubdivisionSearch search{pattern, host, budget, 0, false, {}, {}, {}, {}, {}, {}, {}};
    search.pattern_order.assign(pattern.vertices().begin(), pattern.vertices().end());
    std::stable_sort(search.pattern_order.begin(), search.pattern_order.end(),
                     [&](const Vertex& a, const Vertex& b) {
                         return pattern.degree(a) > pattern.degree(b);
                     });
    search.pattern_edges.assign(pattern.edges().begin(), pattern.edges().end());

    SubdivisionResult result;
    bool ok = search.assign(0);
    result.nodes_used = search.nodes;
    if (ok) {
        result.status = SearchStatus::Found;
        result.model = search.found;
    } else if (search.out_of_budget) {
        result.status = SearchStatus::Unknown;
    } else {
        result.status = SearchStatus::None;
    }
    return result;
}

namespace {

std::map<Edge, std::size_t> edge_depth_map(const GrainLine& gl) {
    std::map<Edge, std::size_t> depth;
    for (std::size_t n = 0; n < gl.paths.size(); ++n)
        for (const auto& e : gl.paths[n].edges()) depth.emplace(e, n);
    return depth;
}

std::map<Vertex, std::size_t> vertex_depth_map(const GrainLine& gl) {
    std::map<Vertex, std::size_t> depth;
    for (std::size_t n = 0; n < gl.paths.size(); ++n)
        for (const auto& v : gl.paths[n].vertices) depth.emplace(v, n);
    return depth;
}

}  // namespace

Segment first_dive(const GrainLine& gl, const Path& p) {
    if (p.trivial()) throw std::invalid_argument("trivial path has no deep edge");
    const auto edepth = edge_depth_map(gl);
    const auto vdepth = vertex_depth_map(gl);

    std::size_t d = 0;
    for (const auto& e : p.edges()) {
        auto it = edepth.find(e);
        if (it == edepth.end())
            throw std::invalid_argument("path leaves the grain-line union at " + e.first + "-" +
                                        e.second);
        d = std::max(d, it->second);
    }
    auto du = vdepth.find(p.from());
    auto dv = vdepth.find(p.to());
    if (du == vdepth.end() || dv == vdepth.end() || du->second >= d || dv->second >= d)
        throw std::invalid_argument("path endpoints are not shallower than its deepest edge");

    const auto& vs = p.vertices;
    std::size_t first = vs.size();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        if (edepth.at(make_edge(vs[i], vs[i + 1])) == d) {
            first = i;
            break;
        }
    std::size_t lo = first, hi = first + 1;
    while (lo > 0 && vdepth.at(vs[lo]) >= d) --lo;
    while (hi + 1 < vs.size() && vdepth.at(vs[hi]) >= d) ++hi;

    Path sub({vs.begin() + lo, vs.begin() + hi + 1});
    Path rev = sub.reversed();
    for (const auto& seg : p_segments(gl, d))
        if (seg.sub == sub || seg.sub == rev) return seg;
    throw std::logic_error("deep run is not a segment; grain line malformed");
}

IntervalProjection interval_projection(const GrainLine& outer, const GrainLine& inner) {
    IntervalProjection proj;
    auto flag = [&](const std::string& s) { proj.violations.push_back(s); };

    std::map<Vertex, std::size_t> rank;
    for (std::size_t i = 0; i < outer.order.size(); ++i) rank.emplace(outer.order[i], i);

    std::vector<std::size_t> ranks;
    for (const auto& v : inner.order) {
        auto it = rank.find(v);
        if (it == rank.end()) {
            flag("inner order vertex '" + v + "' is not an outer order vertex");
            continue;
        }
        ranks.push_back(it->second);
    }
    if (!proj.violations.empty() || ranks.size() < 2) {
        if (ranks.size() < 2) flag("inner order too small to orient");
        return proj;
    }

    bool increasing = true, decreasing = true;
    for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
        if (ranks[i] >= ranks[i + 1]) increasing = false;
        if (ranks[i] <= ranks[i + 1]) decreasing = false;
    }
    if (!increasing && !decreasing)
        flag("inner order is not monotone in the outer order");
    proj.reversed = !increasing && decreasing;

    // Interval convexity is a limit statement; finitely we only report the
    // spanned interval and the orientation.
    auto sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    proj.lo = outer.order[sorted.front()];
    proj.hi = outer.order[sorted.back()];
    return proj;
}

DiveTrace dive(const GrainLine& outer, const GrainLine& inner, std::size_t k_max) {
    auto primes = check_prime_axioms(outer);
    if (!primes.first || !primes.second)
        throw std::invalid_argument("outer grain line must satisfy the prime axioms");
    if (!check_grain_line(inner).valid())
        throw std::invalid_argument("inner candidate is not a grain line");

    const auto edepth = edge_depth_map(outer);
    const auto vdepth = vertex_depth_map(outer);
    std::map<Vertex, std::size_t> rank;
    for (std::size_t i = 0; i < outer.order.size(); ++i) rank.emplace(outer.order[i], i);

    GrainLine inn = inner;
    for (const auto& p : inn.paths)
        for (const auto& e : p.edges())
            if (!edepth.count(e))
                throw std::invalid_argument("inner path leaves the outer union at " + e.first +
                                            "-" + e.second);
    if (!rank.count(inn.x) || !rank.count(inn.y))
        throw std::invalid_argument("inner endpoints are not outer order vertices");
    if (rank.at(inn.x) > rank.at(inn.y)) {
        std::swap(inn.x, inn.y);
        std::reverse(inn.order.begin(), inn.order.end());
        for (auto& p : inn.paths) p = p.reversed();
    }

    auto max_edge_depth = [&](const Path& p) {
        std::size_t d = 0;
        for (const auto& e : p.edges()) d = std::max(d, edepth.at(e));
        return d;
    };

    DiveTrace trace;
    const std::size_t shallow = std::max(vdepth.at(inn.x), vdepth.at(inn.y));
    std::size_t q = inn.paths.size();
    for (std::size_t i = 0; i < inn.paths.size(); ++i)
        if (!inn.paths[i].trivial() && max_edge_depth(inn.paths[i]) > shallow) {
            q = i;
            break;
        }
    if (q == inn.paths.size()) {
        trace.truncated = true;
        trace.reason = "no inner path has an edge deeper than the endpoints";
        return trace;
    }
    trace.q = q;

    Vertex cu = inn.x, cv = inn.y;
    for (std::size_t k = 0; k < k_max; ++k) {
        const std::size_t qi = q + k;
        if (qi >= inn.paths.size()) {
            trace.truncated = true;
            trace.reason = "inner horizon exhausted at step " + std::to_string(k);
            return trace;
        }

        Path candidate;
        if (k == 0) {
            candidate = inn.paths[qi];
        } else {
            const std::size_t p_prev = trace.steps.back().p;
            const Path& seg_prev = trace.steps.back().segment;
            // Order-least internal segment vertex strictly between the
            // current interval endpoints.
            std::optional<Vertex> witness;
            std::size_t best = 0;
            const std::size_t rlo = std::min(rank.at(cu), rank.at(cv));
            const std::size_t rhi = std::max(rank.at(cu), rank.at(cv));
            for (std::size_t i = 1; i + 1 < seg_prev.vertices.size(); ++i) {
                auto it = rank.find(seg_prev.vertices[i]);
                if (it == rank.end() || it->second <= rlo || it->second >= rhi) continue;
                if (!witness || it->second < best) {
                    witness = seg_prev.vertices[i];
                    best = it->second;
                }
            }
            if (!witness) {
                trace.truncated = true;
                trace.reason = "no interval witness inside the depth-" + std::to_string(p_prev) +
                               " segment";
                return trace;
            }
            const Path& qpath = inn.paths[qi];
            if (!qpath.contains_vertex(cu) || !qpath.contains_vertex(cv) ||
                !qpath.contains_vertex(*witness)) {
                trace.truncated = true;
                trace.reason = "inner path " + std::to_string(qi) +
                               " misses the interval or its witness";
                return trace;
            }
            const auto& vs = qpath.vertices;
            std::size_t wi = 0;
            while (vs[wi] != *witness) ++wi;
            std::size_t estart = vs.size();
            if (wi > 0 && edepth.at(make_edge(vs[wi - 1], vs[wi])) > p_prev)
                estart = wi - 1;
            else if (wi + 1 < vs.size() && edepth.at(make_edge(vs[wi], vs[wi + 1])) > p_prev)
                estart = wi;
            if (estart == vs.size()) {
                trace.truncated = true;
                trace.reason = "witness '" + *witness + "' has no edge deeper than " +
                               std::to_string(p_prev) + " on inner path " + std::to_string(qi);
                return trace;
            }
            std::size_t lo = estart, hi = estart + 1;
            while (lo > 0 && vdepth.at(vs[lo]) > p_prev) --lo;
            while (hi + 1 < vs.size() && vdepth.at(vs[hi]) > p_prev) ++hi;
            candidate = Path({vs.begin() + lo, vs.begin() + hi + 1});
        }

        Segment seg;
        try {
            seg = first_dive(outer, candidate);
        } catch (const std::exception& e) {
            trace.truncated = true;
            trace.reason = std::string("dive step ") + std::to_string(k) + ": " + e.what();
            return trace;
        }
        if (!trace.steps.empty() && seg.depth <= trace.steps.back().p) {
            trace.truncated = true;
            trace.reason = "segment depth did not increase at step " + std::to_string(k);
            return trace;
        }
        const std::size_t rlo = std::min(rank.at(cu), rank.at(cv));
        const std::size_t rhi = std::max(rank.at(cu), rank.at(cv));
        if (rank.at(seg.u) < rlo || rank.at(seg.u) > rhi || rank.at(seg.v) < rlo ||
            rank.at(seg.v) > rhi) {
            trace.truncated = true;
            trace.reason = "segment left the interval at step " + std::to_string(k);
            return trace;
        }

        DiveStep step;
        step.p = seg.depth;
        step.u = seg.u;
        step.v = seg.v;
        step.segment = seg.sub;
        step.q_index = qi;
        trace.steps.push_back(std::move(step));
        cu = seg.u;
        cv = seg.v;
    }
    return trace;
}

std::vector<std::string> validate_dive_trace(const GrainLine& outer, const DiveTrace& trace) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& s) { violations.push_back(s); };

    std::map<Vertex, std::size_t> rank;
    for (std::size_t i = 0; i < outer.order.size(); ++i) rank.emplace(outer.order[i], i);

    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        if (k > 0 && step.p <= trace.steps[k - 1].p)
            flag("depth not strictly increasing at step " + std::to_string(k));
        if (k > 0) {
            const auto& prev = trace.steps[k - 1];
            auto lo = std::min(rank.at(prev.u), rank.at(prev.v));
            auto hi = std::max(rank.at(prev.u), rank.at(prev.v));
            if (rank.at(step.u) < lo || rank.at(step.u) > hi || rank.at(step.v) < lo ||
                rank.at(step.v) > hi)
                flag("interval not nested at step " + std::to_string(k));
        }
        bool matched = false;
        Path rev = step.segment.reversed();
        for (const auto& seg : p_segments(outer, step.p))
            if (seg.sub == step.segment || seg.sub == rev) matched = true;
        if (!matched) flag("step " + std::to_string(k) + " is not a segment");
    }
    return violations;
}

AlmostSubgraphReport almost_subgraph_depth(const GrainLine& outer, const GrainLine& inner,
                                           const SubdivisionModel& model) {
    auto violations = verify_subdivision(model);
    if (!violations.empty())
        throw std::invalid_argument("model does not verify: " + violations.front());
    (void)outer;

    AlmostSubgraphReport report;
    bool any = false;
    std::size_t deepest = 0;
    for (const auto& [pe, route] : model.routes) {
        if (route.length() <= 1) continue;
        any = true;
        deepest = std::max(deepest, edge_depth(inner, pe));
    }
    report.d = any ? deepest + 1 : 0;
    report.within_horizon = report.d <= inner.horizon();
    report.note = report.within_horizon
                      ? "all deeper edges map to single host edges"
                      : "subdivision reaches the horizon; limit behaviour not visible";
    return report;
}

ExclusionExperimentReport subdivision_exclusion_experiment(const std::vector<GrainLine>& families,
                                                           std::size_t horizon,
                                                           std::size_t budget) {
    ExclusionExperimentReport report;
    report.lengths = adversarial_length_function(families, horizon);
    LeveledFareyGraph host = generalised_halved_farey(report.lengths, horizon);
    for (const auto& family : families) {
        auto result = find_subdivision(union_graph(family.paths), host.graph, budget);
        report.results.push_back(result.status);
        report.nodes_used.push_back(result.nodes_used);
    }
    report.note = "finite-truncation evidence only; not conclusive for the limit objects";
    return report;
}

}  // namespace fareylab
