#pragma once

#include <map>
#include <vector>

#include "fareylab/graph.hpp"

namespace fareylab {

// Lengths of the blue replacement paths, one entry per level.
struct LengthFunction {
    std::vector<std::size_t> values;

    LengthFunction() = default;
    explicit LengthFunction(std::vector<std::size_t> vs) : values(std::move(vs)) {}

    std::size_t operator()(std::size_t k) const {
        if (k >= values.size())
            throw std::invalid_argument("length function undefined at level " + std::to_string(k));
        return values[k];
    }
    std::size_t levels() const { return values.size(); }

    // values[0] >= 1 and values[k] >= 2 for k >= 1; throws otherwise.
    void validate() const;
};

// A halved-Farey-type graph together with its construction metadata.
struct LeveledFareyGraph {
    Graph graph;
    std::map<Vertex, std::size_t> vertex_level;  // level of introduction
    std::map<Edge, std::size_t> edge_level;
    std::set<Edge> blue;         // edges blue at the top level
    std::vector<Vertex> order;   // the linear order (vertex sequence of P_n)
    std::vector<Path> paths;     // P_0 .. P_n
    Vertex x, y;
    LengthFunction lengths;

    std::size_t top_level() const { return paths.empty() ? 0 : paths.size() - 1; }
};

// Farey graph: two halved copies glued on the level-0 edge. `cycle` is the
// circular layout obtained from the two linear orders.
struct FareyGraph {
    Graph graph;
    std::vector<Vertex> cycle;
    Vertex x, y;
};

// Replaces every blue edge at each level by a blue path of length lengths(k),
// recolouring the replaced edge black. Order-n truncation.
LeveledFareyGraph generalised_halved_farey(const LengthFunction& lengths, std::size_t n);

// The classic halved Farey graph: lengths = (1, 2, 2, ...).
LeveledFareyGraph halved_farey(std::size_t n);

FareyGraph farey(std::size_t n);

// P_0 .. P_n of a generated graph.
std::vector<Path> blue_hamilton_paths(const LeveledFareyGraph& g);

struct GrainLine;

// lengths(k) = 1 + max path length over family indices i <= 2k and path
// indices j <= 2k; each family must supply at least 2*horizon+1 paths.
LengthFunction adversarial_length_function(const std::vector<GrainLine>& families,
                                           std::size_t horizon);

}  // namespace fareylab
