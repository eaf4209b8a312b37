#pragma once

#include "degedit/graph.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace degedit {

enum class Variant
{
    plain,     ///< every surviving vertex has its target degree
    connected, ///< ... and the surviving graph is connected
};

auto to_string(Variant variant) -> std::string;

/// A weighted degree-constrained deletion instance.
///
/// `delta` is the target degree, `weight_*` are charged against the budgets
/// `k_v` / `k_e`, `cost_*` against `cost_budget`. Budgets are signed so that
/// rules can detect exhaustion; a well-formed input has all of them >= 0.
struct Instance
{
    Graph graph;
    std::map<Vertex, std::int64_t> delta;
    std::map<Vertex, std::int64_t> weight_v;
    std::map<Vertex, std::int64_t> cost_v;
    std::map<Edge, std::int64_t> weight_e;
    std::map<Edge, std::int64_t> cost_e;
    std::int64_t k_v = 0;
    std::int64_t k_e = 0;
    std::int64_t cost_budget = 0;
    Variant variant = Variant::plain;

    auto add_vertex(Vertex v, std::int64_t target, std::int64_t weight, std::int64_t cost) -> void;
    auto add_edge(Vertex a, Vertex b, std::int64_t weight, std::int64_t cost) -> void;
    /// Removes `v`, its incident edges and all their attributes.
    auto remove_vertex(Vertex v) -> void;
    auto remove_edge(const Edge& e) -> void;

    auto degree(Vertex v) const -> std::int64_t { return graph.degree(v); }
    /// d(v) - delta(v); positive means the vertex still has to lose edges.
    auto surplus(Vertex v) const -> std::int64_t { return graph.degree(v) - delta.at(v); }

    auto vertex_weight(const VertexSet& xs) const -> std::int64_t;
    auto vertex_cost(const VertexSet& xs) const -> std::int64_t;
    auto edge_weight(const EdgeSet& es) const -> std::int64_t;
    auto edge_cost(const EdgeSet& es) const -> std::int64_t;

    auto operator==(const Instance&) const -> bool = default;
};

/// Attribute maps consistent with the graph, weights >= 1, costs >= 0,
/// targets >= 0, budgets >= 0. Returns a list of problems, empty when fine.
/// Planarity is checked separately (`is_planar`) since it is the expensive part.
auto instance_problems(const Instance& inst) -> std::vector<std::string>;

/// A pair (U, D) of deleted vertices and deleted edges.
struct Solution
{
    VertexSet vertices;
    EdgeSet edges;
    std::int64_t cost = 0;

    auto operator==(const Solution&) const -> bool = default;
};

/// Order on sets of a sorted range type: `a` comes first iff the smallest element
/// of the symmetric difference lies in `a` (lexicographic on characteristic
/// vectors). Unlike sequence comparison it is preserved by adding the same
/// disjoint elements to both sides, which the dynamic programs rely on.
template <typename Range>
auto precedes(const Range& a, const Range& b) -> bool
{
    auto i = a.begin();
    auto j = b.begin();
    for (; i != a.end() && j != b.end(); ++i, ++j)
        if (*i != *j)
            return *i < *j;
    return i != a.end() && j == b.end();
}

/// Total order used for deterministic tie-breaking: cost, then U, then D (each by `precedes`).
auto solution_less(const Solution& a, const Solution& b) -> bool;

auto solution_cost(const Instance& inst, const Solution& sol) -> std::int64_t;

struct SolutionVerdict
{
    bool valid = true;
    std::vector<std::string> violations;
};

/// Checks budgets, degrees in G - U - D and (connected variant) connectivity.
auto check_solution(const Instance& inst, const Solution& sol) -> SolutionVerdict;

/// True iff no deleted edge touches a deleted vertex.
auto is_efficient(const Instance& inst, const Solution& sol) -> bool;

/// G - U - D.
auto remaining_graph(const Graph& g, const Solution& sol) -> Graph;

} // namespace degedit
