#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fareylab/generators.hpp"
#include "fareylab/grainline.hpp"
#include "helpers.hpp"

using namespace fareylab;
using namespace fareylab::testing;

namespace {

GrainLine fan_line(std::size_t count, std::size_t length) {
    GrainLine gl;
    gl.x = "x";
    gl.y = "y";
    gl.order = {"x", "y"};
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Vertex> vs{"x"};
        for (std::size_t j = 1; j < length; ++j)
            vs.push_back("m" + std::to_string(i) + "/" + std::to_string(j));
        vs.push_back("y");
        gl.paths.emplace_back(vs);
    }
    gl.host = union_graph(gl.paths);
    return gl;
}

}  // namespace

TEST_CASE("halved Farey counts") {
    auto g0 = halved_farey(0);
    CHECK(g0.graph.vertex_count() == 2);
    CHECK(g0.graph.edge_count() == 1);

    auto g1 = halved_farey(1);
    CHECK(g1.graph.vertex_count() == 3);
    CHECK(g1.graph.edge_count() == 3);
    CHECK(girth(g1.graph) == 3);

    auto g3 = halved_farey(3);
    CHECK(g3.graph.vertex_count() == 9);
    CHECK(g3.graph.edge_count() == 15);
}

TEST_CASE("Farey counts") {
    auto f0 = farey(0);
    CHECK(f0.graph.vertex_count() == 2);
    CHECK(f0.graph.edge_count() == 1);

    auto f1 = farey(1);
    CHECK(f1.graph.vertex_count() == 4);
    CHECK(f1.graph.edge_count() == 5);

    auto f2 = farey(2);
    CHECK(f2.graph.vertex_count() == 8);
    CHECK(f2.graph.edge_count() == 13);
}

TEST_CASE("Farey cycle is a circular layout of all vertices") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto f = farey(n);
        CHECK(f.cycle.size() == f.graph.vertex_count());
        std::set<Vertex> seen(f.cycle.begin(), f.cycle.end());
        CHECK(seen == f.graph.vertices());
        for (std::size_t i = 0; i < f.cycle.size(); ++i)
            CHECK(f.graph.has_edge(f.cycle[i], f.cycle[(i + 1) % f.cycle.size()]));
    }
}

TEST_CASE("generalised construction") {
    CHECK(generalised_halved_farey(LengthFunction({1, 2, 2}), 2).graph ==
          halved_farey(2).graph);

    auto g = generalised_halved_farey(LengthFunction({1, 2, 3}), 2);
    CHECK(g.graph.vertex_count() == 7);
    CHECK(g.graph.edge_count() == 9);

    auto girthy = generalised_halved_farey(LengthFunction({1, 6, 6}), 2);
    CHECK(girth(girthy.graph).value() >= 7);

    CHECK_THROWS_AS(generalised_halved_farey(LengthFunction({1, 2}), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(generalised_halved_farey(LengthFunction({0, 2}), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generalised_halved_farey(LengthFunction({1, 1}), 1),
                    std::invalid_argument);
}

TEST_CASE("construction paths") {
    auto g2 = halved_farey(2);
    auto paths = blue_hamilton_paths(g2);
    REQUIRE(paths.size() == 3);
    CHECK(paths[2].length() == 4);

    CHECK(blue_hamilton_paths(halved_farey(0))[0].length() == 1);

    auto g = generalised_halved_farey(LengthFunction({1, 2, 3}), 2);
    CHECK(g.paths[0].length() == 1);
    CHECK(g.paths[1].length() == 2);
    CHECK(g.paths[2].length() == 6);
}

TEST_CASE("construction invariants") {
    auto g = generalised_halved_farey(LengthFunction({1, 3, 2, 4}), 3);

    // Blue edge counts multiply level by level.
    std::size_t expected_blue = 1;
    for (std::size_t k = 0; k <= 3; ++k) {
        expected_blue = k == 0 ? g.lengths(0) : expected_blue * g.lengths(k);
        std::size_t level_edges = 0;
        for (const auto& [e, lvl] : g.edge_level)
            if (lvl == k) ++level_edges;
        CHECK(level_edges == expected_blue);
        // P_k uses exactly the level-k edges.
        std::set<Edge> pk_edges = g.paths[k].edge_set();
        CHECK(pk_edges.size() == level_edges);
        for (const auto& e : pk_edges) CHECK(g.edge_level.at(e) == k);
    }
    // Only the top level is blue.
    CHECK(g.blue == g.paths.back().edge_set());
    // Paths pairwise edge-disjoint, all from x to y.
    std::set<Edge> used;
    for (const auto& p : g.paths) {
        p.validate(g.graph);
        CHECK(p.from() == g.x);
        CHECK(p.to() == g.y);
        for (const auto& e : p.edges()) CHECK(used.insert(e).second);
    }
    // The order is the top path and covers every vertex exactly once.
    CHECK(g.order == g.paths.back().vertices);
    CHECK(std::set<Vertex>(g.order.begin(), g.order.end()) == g.graph.vertices());
}

TEST_CASE("length function domain") {
    LengthFunction lf({1, 2, 3});
    CHECK(lf(2) == 3);
    CHECK(lf.levels() == 3);
    CHECK_THROWS_AS(lf(3), std::invalid_argument);
}

TEST_CASE("adversarial length function") {
    // One family, all paths length 2.
    auto lf = adversarial_length_function({fan_line(5, 2)}, 2);
    CHECK(lf.values == std::vector<std::size_t>{3, 3, 3});

    // Two families with max lengths 2 and 5; the second family only counts
    // from level 1 onward (family index bounded by 2k).
    auto lf2 = adversarial_length_function({fan_line(5, 2), fan_line(5, 5)}, 2);
    CHECK(lf2.values == std::vector<std::size_t>{3, 6, 6});

    for (std::size_t k = 1; k < lf2.values.size(); ++k)
        CHECK(lf2.values[k] >= lf2.values[k - 1]);

    CHECK_THROWS_AS(adversarial_length_function({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_length_function({fan_line(3, 2)}, 2), std::invalid_argument);
}
