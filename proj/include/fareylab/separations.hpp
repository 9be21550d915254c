#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fareylab/graph.hpp"
#include "fareylab/immersion.hpp"

namespace fareylab {

// Proper vertex separation {A, B} with budgeted cross edges between the
// strict sides.
struct CompoundSeparation {
    std::set<Vertex> a, b;
    std::set<Edge> cross;  // E(A \ B, B \ A)

    std::set<Vertex> separator() const;
    std::size_t order() const { return separator().size(); }
    bool unitary() const { return order() == 1; }
    CompoundSeparation flipped() const { return {b, a, cross}; }
};

// Properness, coverage of V, and cross-edge exactness; empty iff valid.
std::vector<std::string> validate_separation(const Graph& g, const CompoundSeparation& sep);

// Classes of u ~ v iff at least c pairwise edge-disjoint u-v paths exist.
std::vector<std::set<Vertex>> edge_blocks(const Graph& g, std::size_t c);

struct TreeCutDecomposition {
    std::vector<std::set<Vertex>> parts;  // one per tree node
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    std::vector<std::set<Edge>> adhesion;  // parallel to tree_edges
};

// Tree over the edge-blocks at threshold c; every adhesion set has < c edges.
TreeCutDecomposition tree_cut_decomposition(const Graph& g, std::size_t c);

// Smallest separator subset (size <= s, then lexicographic) behind which u
// and v are separated by at most f cross edges; exhaustive.
std::optional<CompoundSeparation> find_compound_separation(const Graph& g, const Vertex& u,
                                                           const Vertex& v, std::size_t s,
                                                           std::size_t f);

// No pair admits a compound-separation of order < k within edge budget f.
bool is_k_compound_connected(const Graph& g, std::size_t k, std::size_t f);

struct SplitResult {
    Graph side_a, side_b;
    // Minimum pairwise edge-connectivity inside each side; empty on sides
    // with fewer than two vertices.
    std::optional<std::size_t> min_lambda_a, min_lambda_b;
};

SplitResult split(const Graph& g, const CompoundSeparation& sep);

struct FanResult {
    std::vector<Path> paths;  // pairwise edge-disjoint, internally separator-free
    std::map<Vertex, std::size_t> arrivals;  // paths ending at each separator vertex
    bool quota_met = false;
};

// Edge-disjoint u-separator paths inside G[A], at most `quota` per separator
// vertex; quota_met when every separator vertex receives exactly quota.
// Requires a minimally-separating sep with u in A \ B.
FanResult u_to_separator_fan(const Graph& g, const CompoundSeparation& sep, const Vertex& u,
                             std::size_t quota);

bool nested(const CompoundSeparation& s1, const CompoundSeparation& s2);

// Per-member flip flags making every oriented member point away from every
// other, or nullopt.
std::optional<std::vector<bool>> star_orientation(const std::vector<CompoundSeparation>& seps);

// One unitary separation {X + w, V \ X} per edge-block X of G - w; empty when
// G - w has at most one block.
std::vector<CompoundSeparation> faithful_set(const Graph& g, const Vertex& w, std::size_t c);

struct BlockImmersionResult {
    std::optional<ImmersionModel> model;
    std::string diagnostic;
};

// Strong immersion of the complete graph on t vertices with one branch vertex
// per edge-block of G - X, routed through a common hub in X.
BlockImmersionResult complete_immersion_from_blocks(const Graph& g, const std::set<Vertex>& x,
                                                    std::size_t t, std::size_t c);

struct IteratedSplitResult {
    std::vector<Graph> parts;  // G_1 .. G_k, peeled in order
    Graph rest;                // H_k
    std::vector<CompoundSeparation> separations;
    std::size_t completed = 0;
    bool stopped_early = false;
    std::string reason;
    std::vector<std::string> property_violations;  // edge-disjointness etc.
};

// Repeatedly peels a side of a unitary compound-separation (cross budget f)
// off the remainder, keeping each new separator side adjacent to the
// previously peeled part.
IteratedSplitResult iterated_split(const Graph& g, std::size_t f, std::size_t steps);

}  // namespace fareylab
