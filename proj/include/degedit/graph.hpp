#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace degedit {

/// Opaque vertex identifier. Identifiers are never reused within one graph lifetime.
using Vertex = std::int64_t;

/// Undirected edge, stored with `u < v`.
struct Edge
{
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge&) const = default;

    auto has(Vertex x) const -> bool { return u == x || v == x; }
    auto other(Vertex x) const -> Vertex { return x == u ? v : u; }
};

inline auto make_edge(Vertex a, Vertex b) -> Edge
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

auto to_string(const Edge& e) -> std::string;

using VertexSet = std::set<Vertex>;
using EdgeSet = std::set<Edge>;

/// Simple undirected graph (no loops, no multi-edges) with stable vertex ids.
///
/// Iteration over vertices and neighbourhoods is in ascending id order, which
/// every algorithm in the library relies on for deterministic output.
class Graph
{
public:
    using Adjacency = std::map<Vertex, VertexSet>;

    Graph() = default;

    /// Builds a graph on `vertices` with `edges`; throws on loops, duplicates or unknown endpoints.
    static auto from_edges(std::span<const Vertex> vertices, std::span<const Edge> edges) -> Graph;

    auto add_vertex(Vertex v) -> void;
    /// Adds a vertex with a fresh identifier (one past the largest ever used) and returns it.
    auto mint_vertex() -> Vertex;
    auto add_edge(Vertex a, Vertex b) -> void;
    auto remove_vertex(Vertex v) -> void;
    auto remove_edge(const Edge& e) -> void;

    auto has_vertex(Vertex v) const -> bool { return adj_.contains(v); }
    auto has_edge(const Edge& e) const -> bool;
    auto adjacent(Vertex a, Vertex b) const -> bool { return has_edge(make_edge(a, b)); }

    auto order() const -> std::size_t { return adj_.size(); }
    auto size() const -> std::size_t { return edge_count_; }
    auto empty() const -> bool { return adj_.empty(); }

    auto neighbors(Vertex v) const -> const VertexSet&;
    auto degree(Vertex v) const -> std::int64_t { return static_cast<std::int64_t>(neighbors(v).size()); }

    auto adjacency() const -> const Adjacency& { return adj_; }
    auto vertices() const -> std::vector<Vertex>;
    auto vertex_set() const -> VertexSet;
    auto edges() const -> std::vector<Edge>;
    auto incident_edges(Vertex v) const -> std::vector<Edge>;

    /// Smallest identifier that `mint_vertex` could hand out.
    auto next_id() const -> Vertex { return next_id_; }

    /// Structural equality (vertex ids and edges); the id counter is not compared.
    auto operator==(const Graph& other) const -> bool { return adj_ == other.adj_; }

private:
    Adjacency adj_;
    std::size_t edge_count_ = 0;
    Vertex next_id_ = 1;
};

struct DeleteVertex
{
    Vertex v;
};

struct DeleteEdge
{
    Edge e;
};

/// Contract `e`; the merged vertex receives a freshly minted identifier.
struct ContractEdge
{
    Edge e;
};

struct AddVertex
{
    std::vector<Vertex> neighbors;
};

using Edit = std::variant<DeleteVertex, DeleteEdge, ContractEdge, AddVertex>;

/// Returns a copy of `g` with `edit` applied. Throws PreconditionError on missing vertices/edges.
auto apply_edit(const Graph& g, const Edit& edit) -> Graph;

/// In-place contraction of `e`; returns the new vertex. Parallel edges collapse to one.
auto contract_edge(Graph& g, const Edge& e) -> Vertex;

auto induced_subgraph(const Graph& g, const VertexSet& keep) -> Graph;
auto connected_components(const Graph& g) -> std::vector<VertexSet>;
/// The empty graph counts as connected.
auto is_connected(const Graph& g) -> bool;

/// N(X) = union of neighbourhoods minus X.
auto open_neighborhood(const Graph& g, const VertexSet& xs) -> VertexSet;
auto closed_neighborhood(const Graph& g, const VertexSet& xs) -> VertexSet;
/// Vertices within distance `r` of some vertex in `xs`.
auto ball(const Graph& g, const VertexSet& xs, int r) -> VertexSet;
/// Vertices of `xs` with a neighbour outside `xs`.
auto boundary(const Graph& g, const VertexSet& xs) -> VertexSet;
/// Edges with at least one endpoint in `xs`.
auto incident_edges(const Graph& g, const VertexSet& xs) -> EdgeSet;
/// Edges with both endpoints in `xs`.
auto inner_edges(const Graph& g, const VertexSet& xs) -> EdgeSet;
auto is_r_dominating(const Graph& g, const VertexSet& xs, int r) -> bool;

auto is_planar(const Graph& g) -> bool;

/// Checks |V2| <= 2|V1| - 4 for a planar bipartite graph whose V2 side has
/// minimum degree 3. Throws PreconditionError naming the violated premise.
auto verify_bipartite_planar_bound(const Graph& g, const VertexSet& v1, const VertexSet& v2) -> bool;

} // namespace degedit
