#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fareylab/generators.hpp"
#include "fareylab/grainline.hpp"
#include "helpers.hpp"

using namespace fareylab;
using namespace fareylab::testing;

namespace {

GrainLine two_disjoint(std::size_t length) {
    GrainLine gl;
    gl.x = "x";
    gl.y = "y";
    gl.order = {"x", "y"};
    for (std::size_t i = 0; i < 2; ++i) {
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

TEST_CASE("axioms hold on generated lines") {
    auto gl = grain_line_of(halved_farey(3));
    auto report = check_grain_line(gl);
    CHECK(report.valid());
    CHECK(report.dense_at_horizon);
}

TEST_CASE("two internally disjoint paths with bare order are a grain line") {
    CHECK(check_grain_line(two_disjoint(2)).valid());
}

TEST_CASE("order perturbation is caught as a GL3 violation") {
    auto gl = grain_line_of(halved_farey(3));
    REQUIRE(gl.order.size() == 9);
    // Swapping two depth-2 vertices inverts their visit order on P_3.
    std::swap(gl.order[2], gl.order[6]);
    auto report = check_grain_line(gl);
    CHECK_FALSE(report.valid());
    bool gl3 = std::any_of(report.violations.begin(), report.violations.end(),
                           [](const std::string& v) { return v.find("GL3") == 0; });
    CHECK(gl3);
}

TEST_CASE("basic violations are reported with witnesses") {
    GrainLine gl = two_disjoint(2);
    gl.paths.push_back(gl.paths[0]);  // reuses every edge
    auto report = check_grain_line(gl);
    CHECK_FALSE(report.valid());
    CHECK(report.violations.front().find("basics") == 0);
}

TEST_CASE("prime axioms") {
    auto [gl2p, gl3p] = check_prime_axioms(grain_line_of(halved_farey(3)));
    CHECK(gl2p);
    CHECK(gl3p);

    // Dropping a mid-path vertex from the order loses GL2'.
    auto partial = grain_line_of(generalised_halved_farey(LengthFunction({1, 3}), 1));
    REQUIRE(partial.order.size() == 4);
    partial.order.erase(partial.order.begin() + 1);
    auto [p2, p3] = check_prime_axioms(partial);
    CHECK_FALSE(p2);
    CHECK(p3);

    // Bare order with interior path vertices.
    GrainLine fan = two_disjoint(2);
    fan.paths.emplace_back(std::vector<Vertex>{"x", "m2/1", "y"});
    fan.host = union_graph(fan.paths);
    auto [f2, f3] = check_prime_axioms(fan);
    CHECK_FALSE(f2);
    CHECK(f3);

    GrainLine bad = two_disjoint(2);
    bad.order = {"y", "x"};
    CHECK_THROWS_AS(check_prime_axioms(bad), std::invalid_argument);
}

TEST_CASE("extraction") {
    auto source = halved_farey(5);
    auto gl = extract_grain_line(source.paths);
    CHECK(gl.paths.size() == 6);
    CHECK(check_grain_line(gl).valid());
    // Derived limit vertices are those shared by at least two paths, ordered
    // along the top path; that is the next-to-top path's vertex sequence.
    CHECK(gl.order == source.paths[4].vertices);

    // Internally disjoint paths keep the bare order.
    std::vector<Path> fan;
    for (int i = 0; i < 4; ++i)
        fan.push_back(path({"x", ("m" + std::to_string(i)).c_str(), "y"}));
    auto bare = extract_grain_line(fan);
    CHECK(bare.paths.size() == 4);
    CHECK(bare.order == std::vector<Vertex>{"x", "y"});

    // A path reversing the shared-vertex order of the others is dropped.
    std::vector<Path> mixed = {path({"x", "a", "b", "y"}),
                               path({"x", "p", "a", "q", "b", "r", "y"}),
                               path({"x", "u", "b", "v", "a", "w", "y"})};
    auto extracted = extract_grain_line(mixed);
    CHECK(extracted.paths.size() == 2);
    CHECK(check_grain_line(extracted).valid());

    CHECK_THROWS_AS(extract_grain_line({path({"x", "y"})}), std::invalid_argument);
}

TEST_CASE("depth") {
    auto gl = grain_line_of(halved_farey(3));
    CHECK(vertex_depth(gl, gl.x) == 0);
    CHECK(vertex_depth(gl, "1/0/1") == 1);
    CHECK(edge_depth(gl, make_edge(gl.x, gl.y)) == 0);
    CHECK(edge_depth(gl, make_edge(gl.x, "1/0/1")) == 1);
    CHECK_THROWS_AS(vertex_depth(gl, "nope"), std::invalid_argument);

    CHECK(order_prefix(gl, 1) == std::vector<Vertex>{"x", "y"});
    CHECK(order_prefix(gl, 2) == std::vector<Vertex>{"x", "1/0/1", "y"});
}

TEST_CASE("segments") {
    auto g2 = grain_line_of(halved_farey(2));
    auto segs = p_segments(g2, 2);
    REQUIRE(segs.size() == 2);
    for (const auto& s : segs) {
        CHECK(s.depth == 2);
        CHECK(s.sub.length() == 2);
        CHECK(s.sub.from() == s.u);
        CHECK(s.sub.to() == s.v);
    }

    auto cubic = grain_line_of(generalised_halved_farey(LengthFunction({1, 2, 3}), 2));
    for (const auto& s : p_segments(cubic, 2)) CHECK(s.sub.length() == 3);

    CHECK(p_segments(g2, 1).size() == 1);
    CHECK_THROWS_AS(p_segments(g2, 0), std::invalid_argument);
    CHECK_THROWS_AS(p_segments(g2, 9), std::invalid_argument);
}

TEST_CASE("structure predicates") {
    for (std::size_t n = 0; n <= 6; ++n) {
        auto gl = grain_line_of(halved_farey(n));
        CHECK(is_well_structured(gl));
        CHECK(is_free(gl));
        CHECK(is_wildly_presented(gl));
    }

    auto bare = two_disjoint(3);
    CHECK(is_well_structured(bare));
    CHECK_FALSE(is_free(bare));
    CHECK_FALSE(is_wildly_presented(bare));
}

TEST_CASE("wild witness") {
    auto gl = grain_line_of(halved_farey(2));
    CHECK(wild_witness(gl, 1, gl.x, gl.y) == Vertex("1/0/1"));
    CHECK(wild_witness(gl, 2, gl.x, "1/0/1") == Vertex("2/0/1"));
    CHECK_FALSE(wild_witness(two_disjoint(3), 1, "x", "y").has_value());
}

TEST_CASE("separation at a vertex") {
    auto g2 = grain_line_of(halved_farey(2));
    auto sep = separation_at_vertex(g2, "1/0/1");
    CHECK(sep.depth == 1);
    CHECK(sep.removed_edges.size() == 3);  // one level-0 and two level-1 edges
    CHECK(sep.separates);

    auto g1 = grain_line_of(halved_farey(1));
    auto apex = separation_at_vertex(g1, "1/0/1");
    CHECK(apex.separates);
    CHECK(apex.removed_edges.count(make_edge("x", "y")) == 1);

    CHECK_THROWS_AS(separation_at_vertex(g2, g2.x), std::invalid_argument);
    CHECK_THROWS_AS(separation_at_vertex(two_disjoint(2), "m0/1"), std::invalid_argument);
}

TEST_CASE("dense-at-horizon diagnostic") {
    CHECK(check_grain_line(grain_line_of(halved_farey(4))).dense_at_horizon);
    // The bare two-path line never fills the x,y gap.
    CHECK_FALSE(check_grain_line(two_disjoint(2)).dense_at_horizon);
}
