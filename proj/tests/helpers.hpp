#pragma once

#include <random>
#include <string>
#include <vector>

#include "fareylab/graph.hpp"

namespace fareylab::testing {

inline Path path(std::initializer_list<const char*> vs) {
    std::vector<Vertex> vertices;
    for (const char* v : vs) vertices.emplace_back(v);
    return Path(vertices);
}

inline Graph complete(std::size_t t, const std::string& prefix = "k") {
    Graph g;
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < t; ++i) vs.push_back(prefix + std::to_string(i));
    for (std::size_t i = 0; i < t; ++i) {
        g.add_vertex(vs[i]);
        for (std::size_t j = i + 1; j < t; ++j) g.add_edge(vs[i], vs[j]);
    }
    return g;
}

inline Graph random_graph(std::mt19937& rng, std::size_t min_n, std::size_t max_n, double p) {
    std::uniform_int_distribution<std::size_t> nd(min_n, max_n);
    std::uniform_real_distribution<double> pd(0.0, 1.0);
    const std::size_t n = nd(rng);
    Graph g;
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) {
        vs.push_back("v" + std::to_string(i));
        g.add_vertex(vs.back());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (pd(rng) < p) g.add_edge(vs[i], vs[j]);
    return g;
}

// All simple paths between a and b, ordered by the enumeration.
inline std::vector<Path> all_simple_paths(const Graph& g, const Vertex& a, const Vertex& b) {
    std::vector<Path> out;
    std::vector<Vertex> cur{a};
    std::set<Vertex> on_cur{a};
    auto rec = [&](auto&& self) -> void {
        if (cur.back() == b) {
            out.emplace_back(cur);
            return;
        }
        for (const auto& nb : g.neighbors(cur.back())) {
            if (on_cur.count(nb)) continue;
            cur.push_back(nb);
            on_cur.insert(nb);
            self(self);
            cur.pop_back();
            on_cur.erase(nb);
        }
    };
    rec(rec);
    return out;
}

}  // namespace fareylab::testing
