#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fareylab/grainline.hpp"
#include "fareylab/graph.hpp"
#include "fareylab/minors.hpp"

namespace fareylab {

struct CompoundSeparation;

// Injective branch map plus pairwise edge-disjoint routes; strong models also
// keep route interiors clear of all branch images.
struct ImmersionModel {
    Graph pattern, host;
    std::map<Vertex, Vertex> branch;
    std::map<Edge, Path> routes;  // keyed by pattern edge
    bool strong = true;
};

// Empty iff the model is a valid (strong, if flagged) immersion.
std::vector<std::string> verify_immersion(const ImmersionModel& model);

struct ImmersionSearchResult {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<ImmersionModel> model;
    std::size_t nodes_used = 0;
};

// Backtracking over branch assignments and edge-disjoint routes; None only
// when exhaustive within the node budget.
ImmersionSearchResult find_immersion_bruteforce(const Graph& pattern, const Graph& host,
                                                bool strong, std::size_t budget);

// Same, but branch images must come from the given host vertex set.
ImmersionSearchResult find_immersion_bruteforce(const Graph& pattern, const Graph& host,
                                                bool strong, std::size_t budget,
                                                const std::set<Vertex>& allowed_branch);

// Builds a strong immersion of the order-m halved Farey graph into the path
// union of a wildly presented grain line, doubling the branch set per level.
// Throws (naming the failing level) when the horizon or order density is too
// small.
ImmersionModel immerse_halved_farey(const GrainLine& gl, std::size_t m);

struct WildGrainLineResult {
    GrainLine line;        // suppressed grain line over the separator order
    ImmersionModel model;  // its path union strongly immersed in the host
};

// Turns a chain of unitary compound-separations into a grain line whose order
// is (x, separators in chain order, y); paths are host flow paths whose
// separator traces refine one another, suppressed to their trace vertices.
WildGrainLineResult wild_separations_to_grainline(const Graph& g,
                                                  const std::vector<CompoundSeparation>& seps,
                                                  const Vertex& x, const Vertex& y);

struct CutBoundEntry {
    Vertex u, v;  // v empty for single-pivot entries
    std::size_t demand = 0;     // crossing routes the pattern forces
    std::size_t available = 0;  // host edges able to carry them
    long slack = 0;             // available - demand
};

struct CutBoundReport {
    std::vector<CutBoundEntry> entries;
    bool vacuous = false;

    // Some placement is impossible; a sound non-immersion certificate.
    bool excludes() const {
        for (const auto& e : entries)
            if (e.slack < 0) return true;
        return false;
    }
};

// For each branch pair splitting the cyclic layout, compares the number of
// forced crossing routes of the complete graph on `branch` with the host
// edges between the two open arcs. Vacuous for |branch| < 4.
CutBoundReport cut_bound_complete(const FareyGraph& host, const std::set<Vertex>& branch);

// For each branch vertex splitting the host order, compares the crossing
// demand of a Farey pattern on `branch` (minimised over placements) with the
// host edges between the two open intervals. Vacuous unless |branch| = 2^(r+1)
// for some r >= 1.
CutBoundReport cut_bound_farey_in_halved(const LeveledFareyGraph& host,
                                         const std::set<Vertex>& branch);

}  // namespace fareylab
