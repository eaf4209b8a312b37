#pragma once

#include "degedit/instance.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace degedit::build {

inline auto graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) -> Graph
{
    Graph g;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        g.add_vertex(v);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

inline auto cycle(std::size_t n) -> Graph
{
    Graph g;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        g.add_vertex(v);
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        g.add_edge(v, v % static_cast<Vertex>(n) + 1);
    return g;
}

inline auto path(std::size_t n) -> Graph
{
    Graph g;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        g.add_vertex(v);
    for (Vertex v = 1; v < static_cast<Vertex>(n); ++v)
        g.add_edge(v, v + 1);
    return g;
}

inline auto complete(std::size_t n) -> Graph
{
    Graph g;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        g.add_vertex(v);
    for (Vertex a = 1; a <= static_cast<Vertex>(n); ++a)
        for (Vertex b = a + 1; b <= static_cast<Vertex>(n); ++b)
            g.add_edge(a, b);
    return g;
}

inline auto complete_bipartite(std::size_t p, std::size_t q) -> Graph
{
    Graph g;
    for (Vertex v = 1; v <= static_cast<Vertex>(p + q); ++v)
        g.add_vertex(v);
    for (Vertex a = 1; a <= static_cast<Vertex>(p); ++a)
        for (Vertex b = 1; b <= static_cast<Vertex>(q); ++b)
            g.add_edge(a, static_cast<Vertex>(p) + b);
    return g;
}

/// Every vertex gets the same target, weight and cost; every edge the same weight and cost.
inline auto uniform(const Graph& g, std::int64_t delta, std::int64_t k_v, std::int64_t k_e, std::int64_t budget,
    Variant variant = Variant::plain, std::int64_t weight = 1, std::int64_t cost = 1) -> Instance
{
    Instance inst;
    for (auto v : g.vertices())
        inst.add_vertex(v, delta, weight, cost);
    for (auto e : g.edges())
        inst.add_edge(e.u, e.v, weight, cost);
    inst.k_v = k_v;
    inst.k_e = k_e;
    inst.cost_budget = budget;
    inst.variant = variant;
    return inst;
}

inline auto edges(std::initializer_list<std::pair<Vertex, Vertex>> list) -> EdgeSet
{
    EdgeSet out;
    for (auto [a, b] : list)
        out.insert(make_edge(a, b));
    return out;
}

} // namespace degedit::build
