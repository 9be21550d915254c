#include "fareylab/generators.hpp"

#include <algorithm>

#include "fareylab/grainline.hpp"

namespace fareylab {

void LengthFunction::validate() const {
    if (values.empty() || values[0] < 1)
        throw std::invalid_argument("length function needs value >= 1 at level 0");
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] < 2)
            throw std::invalid_argument("length function needs value >= 2 at level " +
                                        std::to_string(k));
}

LeveledFareyGraph generalised_halved_farey(const LengthFunction& lengths, std::size_t n) {
    if (lengths.levels() < n + 1)
        throw std::invalid_argument("length function too short for order " + std::to_string(n));
    lengths.validate();

    LeveledFareyGraph g;
    g.x = "x";
    g.y = "y";
    g.lengths = lengths;

    // Level 0: a blue x-y path of length lengths(0).
    std::vector<Vertex> p0{g.x};
    for (std::size_t i = 1; i < lengths(0); ++i) p0.push_back("0/" + std::to_string(i));
    p0.push_back(g.y);
    for (const auto& v : p0) {
        g.graph.add_vertex(v);
        g.vertex_level[v] = 0;
    }
    for (std::size_t i = 0; i + 1 < p0.size(); ++i) {
        g.graph.add_edge(p0[i], p0[i + 1]);
        g.edge_level[make_edge(p0[i], p0[i + 1])] = 0;
    }
    g.paths.emplace_back(p0);

    // Level k: each blue edge of P_{k-1} grows a blue path of length
    // lengths(k) and itself turns black.
    for (std::size_t k = 1; k <= n; ++k) {
        const auto& prev = g.paths.back().vertices;
        std::vector<Vertex> pk{prev.front()};
        for (std::size_t m = 0; m + 1 < prev.size(); ++m) {
            const Vertex& a = prev[m];
            const Vertex& b = prev[m + 1];
            std::vector<Vertex> piece{a};
            for (std::size_t i = 1; i < lengths(k); ++i)
                piece.push_back(std::to_string(k) + "/" + std::to_string(m) + "/" +
                                std::to_string(i));
            piece.push_back(b);
            for (std::size_t i = 1; i + 1 < piece.size(); ++i) {
                g.graph.add_vertex(piece[i]);
                g.vertex_level[piece[i]] = k;
            }
            for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
                g.graph.add_edge(piece[i], piece[i + 1]);
                g.edge_level[make_edge(piece[i], piece[i + 1])] = k;
            }
            pk.insert(pk.end(), piece.begin() + 1, piece.end());
        }
        g.paths.emplace_back(pk);
    }

    g.order = g.paths.back().vertices;
    for (const auto& e : g.paths.back().edges()) g.blue.insert(e);
    return g;
}

LeveledFareyGraph halved_farey(std::size_t n) {
    std::vector<std::size_t> vs(n + 1, 2);
    vs[0] = 1;
    return generalised_halved_farey(LengthFunction(vs), n);
}

FareyGraph farey(std::size_t n) {
    LeveledFareyGraph half = halved_farey(n);
    auto rename = [&](const Vertex& v) -> Vertex {
        return (v == half.x || v == half.y) ? v : "b/" + v;
    };

    FareyGraph f;
    f.x = half.x;
    f.y = half.y;
    f.graph = half.graph;
    for (const auto& [a, b] : half.graph.edges()) f.graph.add_edge(rename(a), rename(b));

    f.cycle = half.order;
    for (std::size_t i = half.order.size() - 1; i-- > 1;) f.cycle.push_back(rename(half.order[i]));
    return f;
}

std::vector<Path> blue_hamilton_paths(const LeveledFareyGraph& g) {
    if (g.paths.empty()) throw std::invalid_argument("graph lacks construction metadata");
    return g.paths;
}

LengthFunction adversarial_length_function(const std::vector<GrainLine>& families,
                                           std::size_t horizon) {
    if (families.empty()) throw std::invalid_argument("no grain line families given");
    for (std::size_t i = 0; i < families.size(); ++i)
        if (families[i].paths.size() < 2 * horizon + 1)
            throw std::invalid_argument("family " + std::to_string(i) + " has fewer than " +
                                        std::to_string(2 * horizon + 1) + " paths");

    std::vector<std::size_t> values(horizon + 1, 0);
    for (std::size_t k = 0; k <= horizon; ++k) {
        std::size_t longest = 0;
        for (std::size_t i = 0; i < families.size() && i <= 2 * k; ++i)
            for (std::size_t j = 0; j <= 2 * k; ++j)
                longest = std::max(longest, families[i].paths[j].length());
        values[k] = longest + 1;
    }
    if (values.size() > 1) values[1] = std::max<std::size_t>(values[1], 2);
    LengthFunction lf(values);
    lf.validate();
    return lf;
}

}  // namespace fareylab
