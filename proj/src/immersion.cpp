#include "fareylab/immersion.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "fareylab/separations.hpp"

namespace fareylab {

std::vector<std::string> verify_immersion(const ImmersionModel& model) {
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

    std::set<Edge> used;
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
        for (const auto& e : route.edges())
            if (!used.insert(e).second)
                flag("routes share edge " + e.first + "-" + e.second);
        if (model.strong)
            for (std::size_t i = 1; i + 1 < route.vertices.size(); ++i)
                if (images.count(route.vertices[i]))
                    flag("route " + label + " passes branch vertex '" + route.vertices[i] + "'");
    }
    for (const auto& pe : model.pattern.edges())
        if (!model.routes.count(pe)) flag("pattern edge " + pe.first + "-" + pe.second + " unrouted");
    return violations;
}

namespace {

struct ImmersionSearch {
    const Graph& pattern;
    const Graph& host;
    bool strong;
    std::size_t budget;
    const std::set<Vertex>* allowed;  // optional branch image pool
    std::size_t nodes = 0;
    bool out_of_budget = false;

    std::vector<Vertex> pattern_order;
    std::vector<Edge> pattern_edges;
    std::map<Vertex, Vertex> branch;
    std::set<Vertex> images;
    std::set<Edge> used_edges;
    std::map<Edge, Path> routes;
    std::optional<ImmersionModel> found;

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
            if (images.count(hv)) continue;
            if (allowed && !allowed->count(hv)) continue;
            if (host.degree(hv) < pattern.degree(pv)) continue;
            branch[pv] = hv;
            images.insert(hv);
            if (assign(i + 1)) return true;
            images.erase(hv);
            branch.erase(pv);
            if (out_of_budget) return false;
        }
        return false;
    }

    bool route(std::size_t ei) {
        if (!tick()) return false;
        if (ei == pattern_edges.size()) {
            found = ImmersionModel{pattern, host, branch, routes, strong};
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
                routes[pattern_edges[ei]] = p;
                if (route(ei + 1)) return true;
                routes.erase(pattern_edges[ei]);
                for (const auto& re : es) used_edges.erase(re);
                cur.pop_back();
                if (out_of_budget) return false;
                continue;
            }
            if (on_cur.count(nb)) continue;
            if (strong && images.count(nb)) continue;
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

ImmersionSearchResult run_immersion_search(const Graph& pattern, const Graph& host, bool strong,
                                           std::size_t budget, const std::set<Vertex>* allowed) {
    ImmersionSearch search{pattern, host, strong, budget, allowed, 0, false, {}, {}, {}, {},
                           {}, {}, {}};
    search.pattern_order.assign(pattern.vertices().begin(), pattern.vertices().end());
    std::stable_sort(search.pattern_order.begin(), search.pattern_order.end(),
                     [&](const Vertex& a, const Vertex& b) {
                         return pattern.degree(a) > pattern.degree(b);
                     });
    search.pattern_edges.assign(pattern.edges().begin(), pattern.edges().end());

    ImmersionSearchResult result;
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

}  // namespace

ImmersionSearchResult find_immersion_bruteforce(const Graph& pattern, const Graph& host,
                                                bool strong, std::size_t budget) {
    return run_immersion_search(pattern, host, strong, budget, nullptr);
}

ImmersionSearchResult find_immersion_bruteforce(const Graph& pattern, const Graph& host,
                                                bool strong, std::size_t budget,
                                                const std::set<Vertex>& allowed_branch) {
    return run_immersion_search(pattern, host, strong, budget, &allowed_branch);
}

ImmersionModel immerse_halved_farey(const GrainLine& gl, std::size_t m) {
    if (!check_grain_line(gl).valid())
        throw std::invalid_argument("input is not a grain line");
    if (!is_wildly_presented(gl))
        throw std::invalid_argument("grain line is not wildly presented");
    if (m > gl.horizon())
        throw std::invalid_argument("pattern order " + std::to_string(m) +
                                    " exceeds the horizon " + std::to_string(gl.horizon()));

    std::map<Vertex, std::size_t> rank, depth;
    for (std::size_t i = 0; i < gl.order.size(); ++i) rank.emplace(gl.order[i], i);
    for (std::size_t n = 0; n < gl.paths.size(); ++n)
        for (const auto& v : gl.paths[n].vertices) depth.emplace(v, n);

    // Branch sets U_0 c U_1 c ... c U_m, one new vertex per order gap.
    std::vector<Vertex> u{gl.x, gl.y};
    for (std::size_t n = 0; n < m; ++n) {
        std::vector<Vertex> grown{u.front()};
        for (std::size_t k = 1; k < u.size(); ++k) {
            const Vertex& lo = u[k - 1];
            const Vertex& hi = u[k];
            // First vertex of depth <= n after lo; everything order-between lo
            // and it is strictly deeper, keeping later levels off P_0..P_n.
            Vertex anchor = hi;
            for (std::size_t r = rank.at(lo) + 1; r <= rank.at(hi); ++r)
                if (depth.at(gl.order[r]) <= n) {
                    anchor = gl.order[r];
                    break;
                }
            auto witness = wild_witness(gl, n + 1, lo, anchor);
            if (!witness)
                throw std::invalid_argument("insufficient order density at level " +
                                            std::to_string(n + 1));
            grown.push_back(*witness);
            grown.push_back(hi);
        }
        u = std::move(grown);
    }

    LeveledFareyGraph pattern = halved_farey(m);
    if (pattern.order.size() != u.size())
        throw std::logic_error("branch set size mismatch");

    ImmersionModel model;
    model.pattern = pattern.graph;
    model.host = union_graph(gl.paths);
    model.strong = true;
    for (std::size_t i = 0; i < u.size(); ++i) model.branch[pattern.order[i]] = u[i];
    for (const auto& pe : pattern.graph.edges()) {
        std::size_t lvl = pattern.edge_level.at(pe);
        model.routes[pe] =
            gl.paths[lvl].subpath(model.branch.at(pe.first), model.branch.at(pe.second));
    }
    auto violations = verify_immersion(model);
    if (!violations.empty())
        throw std::logic_error("construction failed verification: " + violations.front());
    return model;
}

WildGrainLineResult wild_separations_to_grainline(const Graph& g,
                                                  const std::vector<CompoundSeparation>& seps,
                                                  const Vertex& x, const Vertex& y) {
    if (!g.has_vertex(x) || !g.has_vertex(y) || x == y)
        throw std::invalid_argument("invalid endpoints");

    std::vector<Vertex> separators;
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < seps.size(); ++i) {
        if (!validate_separation(g, seps[i]).empty())
            throw std::invalid_argument("separation " + std::to_string(i) + " invalid");
        if (!seps[i].unitary())
            throw std::invalid_argument("separation " + std::to_string(i) + " not unitary");
        Vertex w = *seps[i].separator().begin();
        if (!seen.insert(w).second)
            throw std::invalid_argument("duplicate separator '" + w + "'");
        separators.push_back(w);
        if (!seps[i].a.count(x) || seps[i].b.count(x) || !seps[i].b.count(y) ||
            seps[i].a.count(y))
            throw std::invalid_argument("endpoints not strictly separated by separation " +
                                        std::to_string(i));
        if (i > 0 && !(std::includes(seps[i].a.begin(), seps[i].a.end(), seps[i - 1].a.begin(),
                                     seps[i - 1].a.end()) &&
                       std::includes(seps[i - 1].b.begin(), seps[i - 1].b.end(),
                                     seps[i].b.begin(), seps[i].b.end())))
            throw std::invalid_argument("separations are not a chain at index " +
                                        std::to_string(i));
    }

    std::vector<Vertex> limit{x};
    limit.insert(limit.end(), separators.begin(), separators.end());
    limit.push_back(y);
    std::map<Vertex, std::size_t> lrank;
    for (std::size_t i = 0; i < limit.size(); ++i)
        if (!lrank.emplace(limit[i], i).second)
            throw std::invalid_argument("endpoint coincides with a separator");

    auto flow = edge_connectivity(g, x, y);
    // Per-path trace through the limit vertices; unusable paths (hitting them
    // out of order) are dropped.
    std::vector<std::vector<Vertex>> traces;
    std::vector<const Path*> carriers;
    for (const auto& p : flow.paths) {
        std::vector<Vertex> trace;
        bool monotone = true;
        for (const auto& v : p.vertices) {
            auto it = lrank.find(v);
            if (it == lrank.end()) continue;
            if (!trace.empty() && lrank.at(trace.back()) >= it->second) monotone = false;
            trace.push_back(v);
        }
        if (monotone) {
            traces.push_back(std::move(trace));
            carriers.push_back(&p);
        }
    }

    // A chain of paths with strictly refining traces, every gap gaining a new
    // vertex, ending at the full limit set.
    std::vector<std::size_t> chain, best;
    std::function<void(const std::vector<Vertex>&)> grow = [&](const std::vector<Vertex>& cur) {
        if (!best.empty()) return;
        if (cur.size() == limit.size()) {
            best = chain;
            return;
        }
        for (std::size_t i = 0; i < traces.size() && best.empty(); ++i) {
            if (std::find(chain.begin(), chain.end(), i) != chain.end()) continue;
            const auto& next = traces[i];
            if (next.size() <= cur.size()) continue;
            if (!std::includes(next.begin(), next.end(), cur.begin(), cur.end(),
                               [&](const Vertex& a, const Vertex& b) {
                                   return lrank.at(a) < lrank.at(b);
                               }))
                continue;
            bool gains = true;  // every consecutive gap of cur must refine
            for (std::size_t k = 0; k + 1 < cur.size() && gains; ++k) {
                bool gained = false;
                for (const auto& v : next)
                    if (lrank.at(v) > lrank.at(cur[k]) && lrank.at(v) < lrank.at(cur[k + 1]))
                        gained = true;
                gains = gained;
            }
            if (!gains) continue;
            chain.push_back(i);
            grow(next);
            if (best.empty()) chain.pop_back();
        }
    };
    for (std::size_t i = 0; i < traces.size() && best.empty(); ++i) {
        chain = {i};
        grow(traces[i]);
    }
    if (best.empty())
        throw std::invalid_argument(
            "no refining path chain reaches all separators; connectivity " +
            std::to_string(flow.lambda) + " with " + std::to_string(traces.size()) +
            " monotone traces");

    WildGrainLineResult result;
    result.line.x = x;
    result.line.y = y;
    result.line.order = limit;
    result.model.host = g;
    result.model.strong = true;
    for (auto idx : best) {
        const Path& carrier = *carriers[idx];
        const auto& trace = traces[idx];
        result.line.paths.emplace_back(trace);
        for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
            Edge e = make_edge(trace[k], trace[k + 1]);
            result.line.host.add_edge(e.first, e.second);
            if (result.model.routes.count(e))
                throw std::logic_error("suppression produced a parallel edge at " + e.first +
                                       "-" + e.second);
            result.model.routes[e] = carrier.subpath(trace[k], trace[k + 1]);
        }
    }
    result.model.pattern = result.line.host;
    for (const auto& v : limit) result.model.branch[v] = v;

    auto report = check_grain_line(result.line);
    if (!report.valid())
        throw std::logic_error("suppressed line invalid: " + report.violations.front());
    auto violations = verify_immersion(result.model);
    if (!violations.empty())
        throw std::logic_error("suppression model invalid: " + violations.front());
    return result;
}

CutBoundReport cut_bound_complete(const FareyGraph& host, const std::set<Vertex>& branch) {
    CutBoundReport report;
    if (branch.size() < 4) {
        report.vacuous = true;
        return report;
    }
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < host.cycle.size(); ++i) pos.emplace(host.cycle[i], i);
    for (const auto& v : branch)
        if (!pos.count(v)) throw std::invalid_argument("branch vertex '" + v + "' off the cycle");

    const std::size_t n = host.cycle.size();
    std::vector<Vertex> bs(branch.begin(), branch.end());
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j) {
            const std::size_t pu = pos.at(bs[i]), pv = pos.at(bs[j]);
            // arc 1: strictly between u and v walking forward; arc 2: the rest
            std::set<Vertex> arc1, arc2;
            for (std::size_t r = (pu + 1) % n; r != pv; r = (r + 1) % n)
                arc1.insert(host.cycle[r]);
            for (std::size_t r = (pv + 1) % n; r != pu; r = (r + 1) % n)
                arc2.insert(host.cycle[r]);
            std::size_t n1 = 0, n2 = 0;
            for (const auto& w : branch) {
                n1 += arc1.count(w);
                n2 += arc2.count(w);
            }
            if (n1 == 0 || n2 == 0) continue;
            CutBoundEntry entry;
            entry.u = bs[i];
            entry.v = bs[j];
            entry.demand = n1 * n2;
            for (const auto& e : host.graph.edges())
                if ((arc1.count(e.first) && arc2.count(e.second)) ||
                    (arc2.count(e.first) && arc1.count(e.second)))
                    ++entry.available;
            entry.slack = static_cast<long>(entry.available) - static_cast<long>(entry.demand);
            report.entries.push_back(std::move(entry));
        }
    report.vacuous = report.entries.empty();
    return report;
}

CutBoundReport cut_bound_farey_in_halved(const LeveledFareyGraph& host,
                                         const std::set<Vertex>& branch) {
    CutBoundReport report;
    std::size_t r = 0;
    while ((std::size_t{2} << r) < branch.size()) ++r;
    if (branch.size() < 4 || (std::size_t{2} << r) != branch.size()) {
        report.vacuous = true;
        return report;
    }
    // branch.size() == 2^(r+1): the candidate pattern is the order-r Farey graph
    FareyGraph pattern = farey(r);
    std::vector<Vertex> pvs(pattern.graph.vertices().begin(), pattern.graph.vertices().end());

    std::map<Vertex, std::size_t> rank;
    for (std::size_t i = 0; i < host.order.size(); ++i) rank.emplace(host.order[i], i);
    for (const auto& v : branch)
        if (!rank.count(v)) throw std::invalid_argument("branch vertex '" + v + "' off the order");

    for (const auto& w : branch) {
        const std::size_t rw = rank.at(w);
        std::size_t n1 = 0, n2 = 0;
        for (const auto& v : branch) {
            if (rank.at(v) < rw) ++n1;
            if (rank.at(v) > rw) ++n2;
        }
        if (n1 == 0 || n2 == 0) continue;

        CutBoundEntry entry;
        entry.u = w;
        for (const auto& e : host.graph.edges()) {
            auto ra = rank.at(e.first), rb = rank.at(e.second);
            if ((ra < rw && rb > rw) || (rb < rw && ra > rw)) ++entry.available;
        }
        // Demand: fewest pattern edges any placement must route across w.
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const auto& pw : pvs) {
            std::vector<Vertex> rest;
            for (const auto& pv : pvs)
                if (pv != pw) rest.push_back(pv);
            std::vector<Vertex> part;
            std::function<void(std::size_t)> choose = [&](std::size_t from) {
                if (part.size() == n1) {
                    std::set<Vertex> side(part.begin(), part.end());
                    std::size_t crossing = 0;
                    for (const auto& e : pattern.graph.edges()) {
                        if (e.first == pw || e.second == pw) continue;
                        if (side.count(e.first) != side.count(e.second)) ++crossing;
                    }
                    best = std::min(best, crossing);
                    return;
                }
                for (std::size_t i = from; i + (n1 - part.size()) <= rest.size(); ++i) {
                    part.push_back(rest[i]);
                    choose(i + 1);
                    part.pop_back();
                }
            };
            choose(0);
        }
        entry.demand = best;
        entry.slack = static_cast<long>(entry.available) - static_cast<long>(entry.demand);
        report.entries.push_back(std::move(entry));
    }
    report.vacuous = report.entries.empty();
    return report;
}

}  // namespace fareylab
