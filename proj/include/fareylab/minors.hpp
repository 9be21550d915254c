#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fareylab/generators.hpp"
#include "fareylab/grainline.hpp"
#include "fareylab/graph.hpp"

namespace fareylab {

enum class SearchStatus { Found, None, Unknown };

std::string to_string(SearchStatus s);

// Subdivision (topological minor) witness: injective branch map plus
// internally disjoint routes avoiding all branch images.
struct SubdivisionModel {
    Graph pattern, host;
    std::map<Vertex, Vertex> branch;
    std::map<Edge, Path> routes;  // keyed by pattern edge
};

// Empty iff the model is a valid subdivision embedding.
std::vector<std::string> verify_subdivision(const SubdivisionModel& model);

struct SubdivisionResult {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<SubdivisionModel> model;
    std::size_t nodes_used = 0;
};

// Backtracking search; None only when the search space was exhausted within
// the node budget, otherwise Unknown.
SubdivisionResult find_subdivision(const Graph& pattern, const Graph& host, std::size_t budget);

// The segment of the path's maximum edge depth contained in p. Requires both
// endpoints of p strictly shallower than that maximum.
Segment first_dive(const GrainLine& gl, const Path& p);

struct IntervalProjection {
    Vertex lo, hi;          // interval endpoints in the outer order
    bool reversed = false;  // inner order runs against the outer order
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

// Checks that the inner order embeds into the outer one as an interval, in
// either orientation. Violations are reported, not thrown: finite truncations
// may fail the limit statement.
IntervalProjection interval_projection(const GrainLine& outer, const GrainLine& inner);

struct DiveStep {
    std::size_t p = 0;      // segment depth p_k
    Vertex u, v;            // segment endpoints, the k-th interval
    Path segment;           // u P_{p_k} v
    std::size_t q_index = 0;  // inner path the segment was found on
};

struct DiveTrace {
    std::size_t q = 0;  // first inner path with an edge deeper than x, y
    std::vector<DiveStep> steps;
    bool truncated = false;
    std::string reason;
};

// Produces strictly deeper segments on successive inner paths, each nested in
// the previous interval. Requires GL2'/GL3' on the outer line and inner paths
// routed inside the outer path union. Horizon shortfalls set `truncated`.
DiveTrace dive(const GrainLine& outer, const GrainLine& inner, std::size_t k_max);

// Structural invariants of a trace against its outer line; empty iff clean.
std::vector<std::string> validate_dive_trace(const GrainLine& outer, const DiveTrace& trace);

struct AlmostSubgraphReport {
    std::size_t d = 0;           // least depth from which no edge is subdivided
    bool within_horizon = false;
    std::string note;
};

// Least d such that every inner edge of depth >= d maps to a single host
// edge under the model. Model must verify.
AlmostSubgraphReport almost_subgraph_depth(const GrainLine& outer, const GrainLine& inner,
                                           const SubdivisionModel& model);

struct ExclusionExperimentReport {
    LengthFunction lengths;
    std::vector<SearchStatus> results;   // one per family
    std::vector<std::size_t> nodes_used;
    std::string note;  // finite evidence only, never conclusive for the limit
};

// Builds the adversarial length function, generates its truncation at order =
// horizon, and searches for a subdivision of each family's path union in it.
ExclusionExperimentReport subdivision_exclusion_experiment(const std::vector<GrainLine>& families,
                                                           std::size_t horizon,
                                                           std::size_t budget);

}  // namespace fareylab
