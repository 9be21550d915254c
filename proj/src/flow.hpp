#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fareylab/graph.hpp"

namespace fareylab::detail {

// Integer-capacity max-flow network over string-named nodes. Undirected
// capacities are modelled as paired arcs whose residuals absorb cancellation.
// Augmenting paths are found by BFS with neighbours scanned in insertion
// order; nodes are registered in sorted order by the callers, which makes the
// whole computation deterministic.
class FlowNetwork {
public:
    int node(const std::string& name);

    // Undirected capacity between a and b (accumulates on repeat calls).
    void add_undirected(const std::string& a, const std::string& b, long cap);

    // One-way capacity from a to b.
    void add_directed(const std::string& a, const std::string& b, long cap);

    long max_flow(const std::string& source, const std::string& sink);

    // After max_flow: nodes reachable from the source in the residual graph.
    std::set<std::string> min_cut_source_side() const;

    // After max_flow: decomposes the flow into source-sink walks using each
    // arc as often as its net flow, loop-erased into simple paths. Paths are
    // edge-disjoint when all host capacities are 1.
    std::vector<std::vector<std::string>> unit_flow_paths() const;

private:
    struct Arc {
        int to;
        long cap;   // residual capacity
        long init;  // initial capacity
    };

    std::map<std::string, int> index_;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> adj_;  // arc indices per node
    std::vector<Arc> arcs_;
    int source_ = -1, sink_ = -1;
};

}  // namespace fareylab::detail
