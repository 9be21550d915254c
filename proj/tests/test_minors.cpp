#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fareylab/generators.hpp"
#include "fareylab/grainline.hpp"
#include "fareylab/minors.hpp"
#include "helpers.hpp"

using namespace fareylab;
using namespace fareylab::testing;

namespace {

// Routes the remaining demands with internally disjoint paths avoiding
// `blocked`; endpoints are allowed to touch their own demand only.
bool route(const Graph& host, const std::vector<std::pair<Vertex, Vertex>>& demands,
           std::size_t i, std::set<Vertex>& blocked) {
    if (i == demands.size()) return true;
    const auto [a, b] = demands[i];
    std::vector<Vertex> cur{a};
    std::set<Vertex> on_cur;
    auto rec = [&](auto&& self) -> bool {
        for (const auto& nb : host.neighbors(cur.back())) {
            if (nb == b) {
                std::vector<Vertex> internals(cur.begin() + 1, cur.end());
                for (const auto& v : internals) blocked.insert(v);
                if (route(host, demands, i + 1, blocked)) return true;
                for (const auto& v : internals) blocked.erase(v);
                continue;
            }
            if (nb == a || blocked.count(nb) || on_cur.count(nb)) continue;
            cur.push_back(nb);
            on_cur.insert(nb);
            if (self(self)) return true;
            cur.pop_back();
            on_cur.erase(nb);
        }
        return false;
    };
    return rec(rec);
}

// Exhaustive subdivision test: every injective branch placement, every
// internally disjoint routing.
bool subdivision_oracle(const Graph& pattern, const Graph& host) {
    std::vector<Vertex> pv(pattern.vertices().begin(), pattern.vertices().end());
    std::vector<Vertex> hv(host.vertices().begin(), host.vertices().end());
    if (pv.size() > hv.size()) return false;
    std::map<Vertex, Vertex> branch;
    std::set<Vertex> used;
    auto assign = [&](auto&& self, std::size_t i) -> bool {
        if (i == pv.size()) {
            std::vector<std::pair<Vertex, Vertex>> demands;
            for (const auto& e : pattern.edges())
                demands.emplace_back(branch.at(e.first), branch.at(e.second));
            std::set<Vertex> blocked = used;
            return route(host, demands, 0, blocked);
        }
        for (const auto& h : hv) {
            if (used.count(h) || host.degree(h) < pattern.degree(pv[i])) continue;
            branch[pv[i]] = h;
            used.insert(h);
            if (self(self, i + 1)) return true;
            used.erase(h);
        }
        return false;
    };
    return assign(assign, 0);
}

Graph cycle_graph(std::size_t n) {
    Graph g;
    for (std::size_t i = 0; i < n; ++i)
        g.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % n));
    return g;
}

GrainLine thin_line(const LeveledFareyGraph& g, std::size_t stride) {
    GrainLine inner;
    inner.x = g.x;
    inner.y = g.y;
    for (std::size_t k = 0; k < g.paths.size(); k += stride) inner.paths.push_back(g.paths[k]);
    // Limit vertices of the thinned family: everything on the next-to-top
    // selected path, in construction order.
    inner.order = inner.paths.size() >= 2 ? inner.paths[inner.paths.size() - 2].vertices
                                          : std::vector<Vertex>{g.x, g.y};
    inner.host = union_graph(inner.paths);
    return inner;
}

}  // namespace

TEST_CASE("find_subdivision examples") {
    auto tri = complete(3, "t");

    auto found = find_subdivision(tri, halved_farey(1).graph, 100000);
    REQUIRE(found.status == SearchStatus::Found);
    REQUIRE(found.model.has_value());
    CHECK(verify_subdivision(*found.model).empty());

    // Only three vertices of degree >= 3 in the order-2 graph.
    CHECK(find_subdivision(complete(4), halved_farey(2).graph, 10000000).status ==
          SearchStatus::None);

    auto g = generalised_halved_farey(LengthFunction({1, 3, 3}), 2);
    auto stretched = find_subdivision(tri, g.graph, 10000000);
    REQUIRE(stretched.status == SearchStatus::Found);
    CHECK(verify_subdivision(*stretched.model).empty());
    bool long_route = std::any_of(stretched.model->routes.begin(), stretched.model->routes.end(),
                                  [](const auto& kv) { return kv.second.length() > 1; });
    CHECK(long_route);  // girth exceeds 3, so some route is subdivided

    CHECK(find_subdivision(complete(4), halved_farey(3).graph, 1).status ==
          SearchStatus::Unknown);
}

TEST_CASE("verify_subdivision rejects tampered models") {
    auto found = find_subdivision(complete(3, "t"), halved_farey(1).graph, 100000);
    REQUIRE(found.model.has_value());

    auto clash = *found.model;
    clash.branch["t0"] = clash.branch["t1"];
    CHECK_FALSE(verify_subdivision(clash).empty());

    auto detached = *found.model;
    auto it = detached.routes.begin();
    it->second = Path({detached.branch["t0"], detached.branch["t1"], detached.branch["t2"]});
    CHECK_FALSE(verify_subdivision(detached).empty());
}

TEST_CASE("find_subdivision agrees with the exhaustive oracle") {
    std::mt19937 rng(5);
    std::vector<Graph> patterns = {complete(3, "t"), complete(4, "q"), cycle_graph(4),
                                   union_graph({path({"p0", "p1", "p2", "p3"})})};
    std::uniform_int_distribution<std::size_t> pick(0, patterns.size() - 1);
    for (int trial = 0; trial < 150; ++trial) {
        Graph host = random_graph(rng, 4, 8, 0.4);
        const Graph& pattern = patterns[pick(rng)];
        auto res = find_subdivision(pattern, host, 20000000);
        REQUIRE(res.status != SearchStatus::Unknown);
        CHECK((res.status == SearchStatus::Found) == subdivision_oracle(pattern, host));
        if (res.model) CHECK(verify_subdivision(*res.model).empty());
        if (pattern.vertex_count() == 3)
            CHECK((res.status == SearchStatus::Found) == girth(host).has_value());
    }
}

TEST_CASE("first dive") {
    auto gl = grain_line_of(halved_farey(3));

    auto top = first_dive(gl, gl.paths[3]);
    CHECK(top.depth == 3);
    CHECK(top.sub.length() == 2);
    CHECK(top.sub == p_segments(gl, 3)[0].sub);

    // A mixed-depth admissible path dives at its deepest edge run.
    auto seg = first_dive(gl, path({"x", "1/0/1", "2/1/1", "y"}));
    CHECK(seg.depth == 2);
    CHECK(seg.sub.vertices == std::vector<Vertex>{"1/0/1", "2/1/1", "y"});

    CHECK_THROWS_AS(first_dive(gl, path({"x", "y"})), std::invalid_argument);
}

TEST_CASE("interval projection") {
    auto outer = grain_line_of(halved_farey(4));

    auto inner = outer;
    inner.order.clear();
    for (std::size_t i = 0; i < outer.order.size(); i += 2) inner.order.push_back(outer.order[i]);
    auto proj = interval_projection(outer, inner);
    CHECK(proj.valid());
    CHECK_FALSE(proj.reversed);
    CHECK(proj.lo == outer.x);
    CHECK(proj.hi == outer.y);

    // The bare pair spans the whole interval in the same orientation.
    auto pairline = outer;
    pairline.order = {outer.x, outer.y};
    auto pp = interval_projection(outer, pairline);
    CHECK(pp.valid());
    CHECK_FALSE(pp.reversed);
    CHECK(pp.lo == outer.x);
    CHECK(pp.hi == outer.y);

    auto flipped = inner;
    std::reverse(flipped.order.begin(), flipped.order.end());
    auto fp = interval_projection(outer, flipped);
    CHECK(fp.valid());
    CHECK(fp.reversed);

    auto foreign = inner;
    foreign.order.insert(foreign.order.begin() + 1, "zz");
    CHECK_FALSE(interval_projection(outer, foreign).valid());
}

TEST_CASE("dive") {
    auto outer = grain_line_of(halved_farey(6));
    auto inner = thin_line(halved_farey(6), 2);  // P_0, P_2, P_4, P_6

    auto trace = dive(outer, inner, 2);
    CHECK(trace.q == 1);
    CHECK_FALSE(trace.truncated);
    REQUIRE(trace.steps.size() == 2);
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        CHECK(step.segment.from() == step.u);
        CHECK(step.segment.to() == step.v);
        if (k > 0) CHECK(step.p > trace.steps[k - 1].p);
    }
    CHECK(validate_dive_trace(outer, trace).empty());

    auto probe = dive(outer, inner, 0);
    CHECK(probe.q == 1);
    CHECK(probe.steps.empty());

    auto shallow = inner;
    shallow.paths.resize(2);
    shallow.order = {outer.x, outer.y};
    shallow.host = union_graph(shallow.paths);
    auto cut = dive(outer, shallow, 5);
    CHECK(cut.truncated);
    CHECK_FALSE(cut.reason.empty());
}

TEST_CASE("almost subgraph depth") {
    auto line = grain_line_of(halved_farey(3));
    SubdivisionModel identity;
    identity.pattern = union_graph(line.paths);
    identity.host = identity.pattern;
    for (const auto& v : identity.pattern.vertices()) identity.branch[v] = v;
    for (const auto& e : identity.pattern.edges())
        identity.routes[e] = Path({e.first, e.second});
    REQUIRE(verify_subdivision(identity).empty());
    auto rep = almost_subgraph_depth(line, line, identity);
    CHECK(rep.d == 0);
    CHECK(rep.within_horizon);

    // Subdividing only the depth-0 edge pushes d to 1.
    auto small = grain_line_of(halved_farey(1));
    SubdivisionModel stretched;
    stretched.pattern = union_graph(small.paths);
    stretched.host = stretched.pattern;
    stretched.host.remove_edge("x", "y");
    stretched.host.add_edge("x", "s");
    stretched.host.add_edge("s", "y");
    for (const auto& v : stretched.pattern.vertices()) stretched.branch[v] = v;
    for (const auto& e : stretched.pattern.edges())
        stretched.routes[e] = e == make_edge("x", "y") ? path({"x", "s", "y"})
                                                       : Path({e.first, e.second});
    REQUIRE(verify_subdivision(stretched).empty());
    auto srep = almost_subgraph_depth(small, small, stretched);
    CHECK(srep.d == 1);
    CHECK(srep.within_horizon);

    // A searched embedding of the triangle family into a longer-girth host.
    auto host = generalised_halved_farey(LengthFunction({1, 3, 3}), 2);
    auto found = find_subdivision(stretched.pattern, host.graph, 10000000);
    REQUIRE(found.status == SearchStatus::Found);
    auto frep = almost_subgraph_depth(small, small, *found.model);
    std::size_t expect = 0;
    for (const auto& [e, r] : found.model->routes)
        if (r.length() > 1) expect = std::max(expect, edge_depth(small, e) + 1);
    CHECK(frep.d == expect);
}

TEST_CASE("subdivision exclusion experiment") {
    auto report = subdivision_exclusion_experiment({grain_line_of(halved_farey(4))}, 2, 10000000);
    CHECK(report.lengths.values == std::vector<std::size_t>{2, 5, 17});
    REQUIRE(report.results.size() == 1);
    CHECK(report.results[0] == SearchStatus::None);
    CHECK_FALSE(report.note.empty());

    CHECK_THROWS_AS(subdivision_exclusion_experiment({}, 2, 1000), std::invalid_argument);

    // A single-edge family embeds into any truncation.
    GrainLine k2;
    k2.x = "x";
    k2.y = "y";
    k2.order = {"x", "y"};
    k2.paths = {path({"x", "y"})};
    k2.host = union_graph(k2.paths);
    auto easy = subdivision_exclusion_experiment({k2}, 0, 1000000);
    REQUIRE(easy.results.size() == 1);
    CHECK(easy.results[0] == SearchStatus::Found);
}
