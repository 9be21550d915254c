#include "fareylab/separations.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "flow.hpp"

namespace fareylab {

std::set<Vertex> CompoundSeparation::separator() const {
    std::set<Vertex> s;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(s, s.begin()));
    return s;
}

std::vector<std::string> validate_separation(const Graph& g, const CompoundSeparation& sep) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& s) { violations.push_back(s); };

    std::set<Vertex> cover;
    for (const auto& v : sep.a) {
        if (!g.has_vertex(v)) flag("side A contains unknown vertex '" + v + "'");
        cover.insert(v);
    }
    for (const auto& v : sep.b) {
        if (!g.has_vertex(v)) flag("side B contains unknown vertex '" + v + "'");
        cover.insert(v);
    }
    if (cover != g.vertices()) flag("sides do not cover the vertex set");

    auto s = sep.separator();
    bool a_strict = false, b_strict = false;
    for (const auto& v : sep.a)
        if (!s.count(v)) a_strict = true;
    for (const auto& v : sep.b)
        if (!s.count(v)) b_strict = true;
    if (!a_strict || !b_strict) flag("separation is not proper");

    std::set<Edge> expected;
    for (const auto& e : g.edges()) {
        bool ea = sep.a.count(e.first) && !sep.b.count(e.first);
        bool eb = sep.b.count(e.first) && !sep.a.count(e.first);
        bool fa = sep.a.count(e.second) && !sep.b.count(e.second);
        bool fb = sep.b.count(e.second) && !sep.a.count(e.second);
        if ((ea && fb) || (eb && fa)) expected.insert(e);
    }
    if (expected != sep.cross) flag("cross edges are not exactly E(A\\B, B\\A)");
    return violations;
}

std::vector<std::set<Vertex>> edge_blocks(const Graph& g, std::size_t c) {
    if (c < 1) throw std::invalid_argument("block threshold must be at least 1");
    std::vector<std::set<Vertex>> blocks;
    std::vector<Vertex> reps;
    for (const auto& v : g.vertices()) {
        bool placed = false;
        for (std::size_t i = 0; i < blocks.size() && !placed; ++i)
            if (edge_connectivity_value(g, v, reps[i]) >= c) {
                blocks[i].insert(v);
                placed = true;
            }
        if (!placed) {
            blocks.push_back({v});
            reps.push_back(v);
        }
    }
    return blocks;
}

TreeCutDecomposition tree_cut_decomposition(const Graph& g, std::size_t c) {
    if (!is_connected(g)) throw std::invalid_argument("graph must be connected");
    auto blocks = edge_blocks(g, c);
    std::map<Vertex, std::size_t> block_of;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (const auto& v : blocks[i]) block_of[v] = i;

    std::vector<std::set<Vertex>> nodes{g.vertices()};
    std::vector<std::set<std::size_t>> adj{{}};

    auto subtree_nodes = [&](std::size_t from, std::size_t avoid) {
        std::set<std::size_t> seen{from};
        std::vector<std::size_t> stack{from};
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            for (auto nb : adj[cur])
                if (nb != avoid && seen.insert(nb).second) stack.push_back(nb);
        }
        return seen;
    };

    for (;;) {
        // A node still holding two different blocks gets split along a
        // minimum cut, with the rest of the tree contracted to supernodes.
        std::size_t target = nodes.size();
        Vertex u, v;
        for (std::size_t i = 0; i < nodes.size() && target == nodes.size(); ++i) {
            if (nodes[i].size() < 2) continue;
            const Vertex& first = *nodes[i].begin();
            for (const auto& w : nodes[i])
                if (block_of.at(w) != block_of.at(first)) {
                    target = i;
                    u = first;
                    v = w;
                    break;
                }
        }
        if (target == nodes.size()) break;

        std::map<Vertex, std::string> alias;
        for (const auto& w : nodes[target]) alias[w] = w;
        std::vector<std::size_t> neighbors(adj[target].begin(), adj[target].end());
        for (auto nb : neighbors) {
            std::string super = "#s/" + std::to_string(nb);
            for (auto ni : subtree_nodes(nb, target))
                for (const auto& w : nodes[ni]) alias[w] = super;
        }

        detail::FlowNetwork net;
        net.node(u);
        net.node(v);
        for (const auto& e : g.edges()) {
            const std::string& na = alias.at(e.first);
            const std::string& nb = alias.at(e.second);
            if (na != nb) net.add_undirected(na, nb, 1);
        }
        net.max_flow(u, v);
        auto side = net.min_cut_source_side();

        std::set<Vertex> keep, moved;
        for (const auto& w : nodes[target])
            (side.count(w) ? keep : moved).insert(w);
        nodes[target] = keep;
        std::size_t fresh = nodes.size();
        nodes.push_back(moved);
        adj.emplace_back();
        for (auto nb : neighbors) {
            if (side.count("#s/" + std::to_string(nb))) continue;
            adj[target].erase(nb);
            adj[nb].erase(target);
            adj[fresh].insert(nb);
            adj[nb].insert(fresh);
        }
        adj[target].insert(fresh);
        adj[fresh].insert(target);
    }

    TreeCutDecomposition tcd;
    tcd.parts = nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (auto j : adj[i])
            if (i < j) tcd.tree_edges.emplace_back(i, j);
    for (const auto& [i, j] : tcd.tree_edges) {
        std::set<Vertex> side1;
        std::set<std::size_t> side_nodes;
        {
            // side of i with the j-edge removed
            std::set<std::size_t> seen{i};
            std::vector<std::size_t> stack{i};
            while (!stack.empty()) {
                std::size_t cur = stack.back();
                stack.pop_back();
                for (auto nb : adj[cur])
                    if (!(cur == i && nb == j) && !(cur == j && nb == i) &&
                        seen.insert(nb).second)
                        stack.push_back(nb);
            }
            side_nodes = seen;
        }
        for (auto ni : side_nodes) side1.insert(nodes[ni].begin(), nodes[ni].end());
        std::set<Edge> adh;
        for (const auto& e : g.edges())
            if (side1.count(e.first) != side1.count(e.second)) adh.insert(e);
        tcd.adhesion.push_back(std::move(adh));
    }
    return tcd;
}

namespace {

void enumerate_subsets(const std::vector<Vertex>& pool, std::size_t size, std::size_t from,
                       std::vector<Vertex>& cur,
                       const std::function<bool(const std::vector<Vertex>&)>& visit, bool& done) {
    if (done) return;
    if (cur.size() == size) {
        done = visit(cur);
        return;
    }
    for (std::size_t i = from; i + (size - cur.size()) <= pool.size() && !done; ++i) {
        cur.push_back(pool[i]);
        enumerate_subsets(pool, size, i + 1, cur, visit, done);
        cur.pop_back();
    }
}

}  // namespace

std::optional<CompoundSeparation> find_compound_separation(const Graph& g, const Vertex& u,
                                                           const Vertex& v, std::size_t s,
                                                           std::size_t f) {
    if (u == v) throw std::invalid_argument("endpoints coincide");
    if (!g.has_vertex(u)) throw std::invalid_argument("unknown vertex '" + u + "'");
    if (!g.has_vertex(v)) throw std::invalid_argument("unknown vertex '" + v + "'");

    std::vector<Vertex> pool;
    for (const auto& w : g.vertices())
        if (w != u && w != v) pool.push_back(w);

    std::optional<CompoundSeparation> result;
    for (std::size_t size = 0; size <= std::min(s, pool.size()) && !result; ++size) {
        std::vector<Vertex> cur;
        bool done = false;
        enumerate_subsets(pool, size, 0, cur, [&](const std::vector<Vertex>& sep_set) {
            Graph h = g;
            for (const auto& w : sep_set) h.remove_vertex(w);
            if (edge_connectivity_value(h, u, v) > f) return false;
            Cut cut = min_edge_cut(h, u, v);
            CompoundSeparation sep;
            sep.a = cut.a;
            sep.b = cut.b;
            sep.a.insert(sep_set.begin(), sep_set.end());
            sep.b.insert(sep_set.begin(), sep_set.end());
            sep.cross = cut.cross_edges;
            result = sep;
            return true;
        }, done);
    }
    return result;
}

bool is_k_compound_connected(const Graph& g, std::size_t k, std::size_t f) {
    if (k < 1) throw std::invalid_argument("connectivity order must be at least 1");
    for (auto it = g.vertices().begin(); it != g.vertices().end(); ++it)
        for (auto jt = std::next(it); jt != g.vertices().end(); ++jt)
            if (find_compound_separation(g, *it, *jt, k - 1, f)) return false;
    return true;
}

namespace {

std::optional<std::size_t> min_pairwise_lambda(const Graph& g) {
    if (g.vertex_count() < 2) return std::nullopt;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (auto it = g.vertices().begin(); it != g.vertices().end(); ++it)
        for (auto jt = std::next(it); jt != g.vertices().end(); ++jt)
            best = std::min(best, edge_connectivity_value(g, *it, *jt));
    return best;
}

}  // namespace

SplitResult split(const Graph& g, const CompoundSeparation& sep) {
    auto violations = validate_separation(g, sep);
    if (!violations.empty()) throw std::invalid_argument(violations.front());
    SplitResult result;
    result.side_a = induced_subgraph(g, sep.a);
    result.side_b = induced_subgraph(g, sep.b);
    result.min_lambda_a = min_pairwise_lambda(result.side_a);
    result.min_lambda_b = min_pairwise_lambda(result.side_b);
    return result;
}

FanResult u_to_separator_fan(const Graph& g, const CompoundSeparation& sep, const Vertex& u,
                             std::size_t quota) {
    auto violations = validate_separation(g, sep);
    if (!violations.empty()) throw std::invalid_argument(violations.front());
    const auto s = sep.separator();
    if (!sep.a.count(u) || s.count(u))
        throw std::invalid_argument("fan source must lie strictly in side A");

    // Minimality: no nonempty proper separator subset separates a witnessed
    // pair within the same cross budget.
    bool minimal = false;
    for (const auto& q : sep.b) {
        if (s.count(q)) continue;
        bool ok = true;
        std::vector<Vertex> pool(s.begin(), s.end());
        for (std::size_t size = 1; size < s.size() && ok; ++size) {
            std::vector<Vertex> cur;
            bool done = false;
            enumerate_subsets(pool, size, 0, cur, [&](const std::vector<Vertex>& sub) {
                Graph h = g;
                for (const auto& w : sub) h.remove_vertex(w);
                if (edge_connectivity_value(h, u, q) <= sep.cross.size()) {
                    ok = false;
                    return true;
                }
                return false;
            }, done);
        }
        if (ok) {
            minimal = true;
            break;
        }
    }
    if (!minimal) throw std::invalid_argument("separation is not minimally separating");

    const std::string sink = "#sink";
    detail::FlowNetwork net;
    net.node(u);
    Graph side = induced_subgraph(g, sep.a);
    for (const auto& e : side.edges()) {
        bool fs = s.count(e.first) > 0, ss = s.count(e.second) > 0;
        if (fs && ss) continue;  // separator-internal edges carry nothing
        if (fs)
            net.add_directed(e.second, e.first, 1);
        else if (ss)
            net.add_directed(e.first, e.second, 1);
        else
            net.add_undirected(e.first, e.second, 1);
    }
    for (const auto& w : s) net.add_directed(w, sink, static_cast<long>(quota));

    FanResult fan;
    for (const auto& w : s) fan.arrivals[w] = 0;
    if (quota > 0) {
        net.max_flow(u, sink);
        for (auto& walk : net.unit_flow_paths()) {
            walk.pop_back();  // drop the artificial sink
            fan.paths.emplace_back(std::move(walk));
            ++fan.arrivals[fan.paths.back().to()];
        }
    }
    fan.quota_met = true;
    for (const auto& w : s)
        if (fan.arrivals[w] != quota) fan.quota_met = false;
    return fan;
}

namespace {

bool leq(const CompoundSeparation& p, const CompoundSeparation& q) {
    return std::includes(q.a.begin(), q.a.end(), p.a.begin(), p.a.end()) &&
           std::includes(p.b.begin(), p.b.end(), q.b.begin(), q.b.end());
}

}  // namespace

bool nested(const CompoundSeparation& s1, const CompoundSeparation& s2) {
    for (const auto& o1 : {s1, s1.flipped()})
        for (const auto& o2 : {s2, s2.flipped()})
            if (leq(o1, o2)) return true;
    return false;
}

std::optional<std::vector<bool>> star_orientation(const std::vector<CompoundSeparation>& seps) {
    const std::size_t n = seps.size();
    std::vector<bool> flips(n, false);
    // Oriented members must point away from one another:
    // (A_i, B_i) <= (B_j, A_j) for all i != j.
    auto away = [&](std::size_t i, std::size_t j) {
        CompoundSeparation oi = flips[i] ? seps[i].flipped() : seps[i];
        CompoundSeparation oj = flips[j] ? seps[j].flipped() : seps[j];
        return leq(oi, oj.flipped());
    };
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == n) return true;
        for (bool flip : {false, true}) {
            flips[i] = flip;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = away(i, j);
            if (ok && place(i + 1)) return true;
        }
        return false;
    };
    if (place(0)) return flips;
    return std::nullopt;
}

std::vector<CompoundSeparation> faithful_set(const Graph& g, const Vertex& w, std::size_t c) {
    if (!g.has_vertex(w)) throw std::invalid_argument("unknown vertex '" + w + "'");
    Graph rest = g;
    rest.remove_vertex(w);
    if (rest.vertex_count() == 0) return {};
    auto blocks = edge_blocks(rest, c);
    if (blocks.size() <= 1) return {};

    std::vector<CompoundSeparation> seps;
    for (const auto& block : blocks) {
        CompoundSeparation sep;
        sep.a = block;
        sep.a.insert(w);
        for (const auto& v : g.vertices())
            if (!block.count(v)) sep.b.insert(v);
        for (const auto& e : g.edges()) {
            bool fa = block.count(e.first) > 0, sa = block.count(e.second) > 0;
            if (fa != sa && e.first != w && e.second != w) sep.cross.insert(e);
        }
        seps.push_back(std::move(sep));
    }
    return seps;
}

BlockImmersionResult complete_immersion_from_blocks(const Graph& g, const std::set<Vertex>& x,
                                                    std::size_t t, std::size_t c) {
    if (t < 2) throw std::invalid_argument("clique size must be at least 2");
    BlockImmersionResult result;
    Graph rest = g;
    for (const auto& v : x) {
        if (!g.has_vertex(v)) throw std::invalid_argument("unknown hub vertex '" + v + "'");
        rest.remove_vertex(v);
    }
    if (rest.vertex_count() == 0) {
        result.diagnostic = "nothing left outside the hub set";
        return result;
    }
    auto blocks = edge_blocks(rest, c);
    if (blocks.size() < t) {
        result.diagnostic = "only " + std::to_string(blocks.size()) + " blocks, need " +
                            std::to_string(t);
        return result;
    }

    Graph pattern;
    std::vector<Vertex> pattern_vertices;
    for (std::size_t i = 0; i < t; ++i) pattern_vertices.push_back("k" + std::to_string(i));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            pattern.add_edge(pattern_vertices[i], pattern_vertices[j]);

    const std::string source = "#source";
    for (const auto& hub : x) {
        std::vector<std::size_t> chosen;
        bool done = false;
        std::function<bool(std::size_t)> pick = [&](std::size_t from) -> bool {
            if (chosen.size() == t) {
                // Branch vertices are flow sources that nothing may traverse;
                // every edge at a branch vertex points outward.
                std::vector<Vertex> branch;
                std::set<Vertex> branch_set;
                for (auto bi : chosen) {
                    branch.push_back(*blocks[bi].begin());
                    branch_set.insert(branch.back());
                }
                detail::FlowNetwork net;
                net.node(source);
                for (const auto& e : g.edges()) {
                    bool fb = branch_set.count(e.first) > 0, sb = branch_set.count(e.second) > 0;
                    if (fb && sb) continue;
                    if (e.first == hub || e.second == hub) {
                        // All hub edges point inward so no spoke passes
                        // through the hub before ending there.
                        net.add_directed(e.first == hub ? e.second : e.first, hub, 1);
                    } else if (fb) {
                        net.add_directed(e.first, e.second, 1);
                    } else if (sb) {
                        net.add_directed(e.second, e.first, 1);
                    } else {
                        net.add_undirected(e.first, e.second, 1);
                    }
                }
                for (const auto& b : branch)
                    net.add_directed(source, b, static_cast<long>(t - 1));
                long flow = net.max_flow(source, hub);
                if (flow != static_cast<long>(t * (t - 1))) return false;

                std::map<Vertex, std::vector<Path>> spokes;
                for (auto& walk : net.unit_flow_paths()) {
                    walk.erase(walk.begin());  // drop the artificial source
                    spokes[walk.front()].emplace_back(walk);
                }
                for (const auto& b : branch)
                    if (spokes[b].size() != t - 1) return false;

                ImmersionModel model;
                model.pattern = pattern;
                model.host = g;
                model.strong = true;
                std::map<Vertex, std::size_t> next;
                for (std::size_t i = 0; i < t; ++i) model.branch[pattern_vertices[i]] = branch[i];
                for (std::size_t i = 0; i < t; ++i)
                    for (std::size_t j = i + 1; j < t; ++j) {
                        const Path& pi = spokes[branch[i]][next[branch[i]]++];
                        const Path& pj = spokes[branch[j]][next[branch[j]]++];
                        std::vector<Vertex> walk = pi.vertices;
                        walk.insert(walk.end(), pj.vertices.rbegin() + 1, pj.vertices.rend());
                        model.routes[make_edge(pattern_vertices[i], pattern_vertices[j])] =
                            Path(loop_erase(walk));
                    }
                if (!verify_immersion(model).empty()) return false;
                result.model = model;
                return true;
            }
            for (std::size_t i = from; i + (t - chosen.size()) <= blocks.size(); ++i) {
                chosen.push_back(i);
                if (pick(i + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        done = pick(0);
        if (done) return result;
    }
    result.diagnostic = "no hub admits " + std::to_string(t * (t - 1)) +
                        " edge-disjoint branch spokes";
    return result;
}

IteratedSplitResult iterated_split(const Graph& g, std::size_t f, std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("need at least one step");
    IteratedSplitResult result;
    result.rest = g;
    Vertex prev_w;

    for (std::size_t n = 1; n <= steps; ++n) {
        const Graph& h = result.rest;
        std::optional<CompoundSeparation> found;
        Vertex found_w;
        for (const auto& w : h.vertices()) {
            Graph hw = h;
            hw.remove_vertex(w);
            if (hw.vertex_count() < 2) continue;
            const Vertex& p = *hw.vertices().begin();
            for (const auto& q : hw.vertices()) {
                if (q == p) continue;
                if (edge_connectivity_value(hw, p, q) > f) continue;
                Cut cut = min_edge_cut(hw, p, q);
                CompoundSeparation sep;
                sep.a = cut.a;
                sep.b = cut.b;
                sep.a.insert(w);
                sep.b.insert(w);
                sep.cross = cut.cross_edges;
                found = sep;
                found_w = w;
                break;
            }
            if (found) break;
        }
        if (!found) {
            result.stopped_early = true;
            result.reason = "no unitary compound-separation within budget at step " +
                            std::to_string(n);
            break;
        }
        for (const auto& line : validate_separation(h, *found))
            result.property_violations.push_back("step " + std::to_string(n) + ": " + line);
        if (n >= 2 && !found->a.count(prev_w) && found->b.count(prev_w))
            *found = found->flipped();

        result.parts.push_back(induced_subgraph(h, found->a));
        Graph next = induced_subgraph(h, found->b);
        result.separations.push_back(*found);
        result.rest = next;
        prev_w = found_w;
        ++result.completed;
    }

    // Peeled parts and the remainder must be pairwise edge-disjoint and form
    // a connected intersection pattern over their vertex sets.
    std::vector<const Graph*> pieces;
    for (const auto& part : result.parts) pieces.push_back(&part);
    pieces.push_back(&result.rest);
    std::set<Edge> seen;
    for (const auto* piece : pieces)
        for (const auto& e : piece->edges())
            if (!seen.insert(e).second)
                result.property_violations.push_back("edge " + e.first + "-" + e.second +
                                                     " appears in two pieces");
    if (pieces.size() > 1) {
        std::vector<std::set<std::size_t>> meet(pieces.size());
        for (std::size_t i = 0; i < pieces.size(); ++i)
            for (std::size_t j = i + 1; j < pieces.size(); ++j)
                for (const auto& v : pieces[i]->vertices())
                    if (pieces[j]->has_vertex(v)) {
                        meet[i].insert(j);
                        meet[j].insert(i);
                        break;
                    }
        std::set<std::size_t> reach{0};
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            for (auto nb : meet[cur])
                if (reach.insert(nb).second) stack.push_back(nb);
        }
        if (reach.size() != pieces.size())
            result.property_violations.push_back("intersection graph of the pieces disconnected");
    }
    return result;
}

}  // namespace fareylab
