#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fareylab/generators.hpp"
#include "fareylab/graph.hpp"

namespace fareylab {

// A linear order over "limit" vertices together with a sequence of pairwise
// edge-disjoint x-y paths, subject to the finite axioms below.
struct GrainLine {
    Graph host;
    Vertex x, y;
    std::vector<Vertex> order;  // L listed from x to y
    std::vector<Path> paths;    // P_0 .. P_m

    std::size_t horizon() const { return paths.empty() ? 0 : paths.size() - 1; }
    bool in_order(const Vertex& v) const;
    // Position of v in `order`; throws if absent.
    std::size_t rank(const Vertex& v) const;
};

struct GrainLineReport {
    std::vector<std::string> violations;  // one line per violation, with witness
    // Every gap between order-consecutive vertices of L_{<m} contains a later
    // L-vertex. Diagnostic only; not part of validity.
    bool dense_at_horizon = false;

    bool valid() const { return violations.empty(); }
};

// Axioms checked, with witnesses reported:
//   basics: paths are valid x-y paths, pairwise edge-disjoint; order starts at
//           x, ends at y, no duplicates
//   GL1: each order vertex lies on every path from its depth onward
//   GL2: each path vertex outside the order lies on exactly one path
//   GL3: each P_n orders L_{<n} the same way the order does
GrainLineReport check_grain_line(const GrainLine& gl);

// (GL2', GL3'): order contains every path vertex; order relation equals the
// union of the path orders. Throws if check_grain_line fails.
std::pair<bool, bool> check_prime_axioms(const GrainLine& gl);

// Selects a subsequence of the input that forms a valid grain line, deriving
// the order from the selected paths. Exhaustive for <= 8 input paths, greedy
// beyond. Throws if no valid subsequence of size >= 2 exists.
GrainLine extract_grain_line(const std::vector<Path>& paths);

// Minimal path index containing the item; throws if off all paths.
std::size_t vertex_depth(const GrainLine& gl, const Vertex& v);
std::size_t edge_depth(const GrainLine& gl, const Edge& e);

// L_{<d} = order vertices of depth < d, in order.
std::vector<Vertex> order_prefix(const GrainLine& gl, std::size_t d);

// Subpath of P_d between order-consecutive vertices of L_{<d}.
struct Segment {
    std::size_t depth = 0;
    Vertex u, v;  // endpoints, v the successor of u within L_{<depth}
    Path sub;
};

std::vector<Segment> p_segments(const GrainLine& gl, std::size_t d);

// Segment vertices stay inside their order interval [u,v].
bool is_well_structured(const GrainLine& gl);
// Every vertex of the path union is an order vertex.
bool is_free(const GrainLine& gl);
// Each P_n places an internal vertex strictly between any order-consecutive
// pair of L_{<n} (equivalent to the all-pairs form under GL3).
bool is_wildly_presented(const GrainLine& gl);

// Order-least internal vertex w of the subpath of P_n from u to v with
// u < w < v in the order; nullopt if none.
std::optional<Vertex> wild_witness(const GrainLine& gl, std::size_t n, const Vertex& u,
                                   const Vertex& v);

struct VertexSeparation {
    Vertex v;
    std::size_t depth = 0;
    std::set<Edge> removed_edges;  // all path-union edges of depth <= depth(v)
    bool separates = false;        // verified by reachability in the residue
};

// Deleting v and all edges of depth <= depth(v) from the path union must
// disconnect the order interval before v from the one after. Requires a
// well-structured grain line and v strictly between x and y.
VertexSeparation separation_at_vertex(const GrainLine& gl, const Vertex& v);

// The grain line a generator output carries.
GrainLine grain_line_of(const LeveledFareyGraph& g);

}  // namespace fareylab
