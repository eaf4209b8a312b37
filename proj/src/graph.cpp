#include "degedit/graph.hpp"

#include "degedit/errors.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <deque>

namespace degedit {

auto to_string(const Edge& e) -> std::string
{
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

auto Graph::from_edges(std::span<const Vertex> vertices, std::span<const Edge> edges) -> Graph
{
    Graph g;
    for (auto v : vertices)
        g.add_vertex(v);
    for (const auto& e : edges)
        g.add_edge(e.u, e.v);
    return g;
}

auto Graph::add_vertex(Vertex v) -> void
{
    if (adj_.contains(v))
        throw PreconditionError("duplicate vertex " + std::to_string(v));
    adj_.emplace(v, VertexSet{});
    next_id_ = std::max(next_id_, v + 1);
}

auto Graph::mint_vertex() -> Vertex
{
    auto v = next_id_;
    add_vertex(v);
    return v;
}

auto Graph::add_edge(Vertex a, Vertex b) -> void
{
    if (a == b)
        throw PreconditionError("loop at vertex " + std::to_string(a));
    auto ia = adj_.find(a);
    auto ib = adj_.find(b);
    if (ia == adj_.end() || ib == adj_.end())
        throw PreconditionError("edge " + to_string(make_edge(a, b)) + " has a missing endpoint");
    if (! ia->second.insert(b).second)
        throw PreconditionError("duplicate edge " + to_string(make_edge(a, b)));
    ib->second.insert(a);
    ++edge_count_;
}

auto Graph::remove_vertex(Vertex v) -> void
{
    auto it = adj_.find(v);
    if (it == adj_.end())
        throw PreconditionError("missing vertex " + std::to_string(v));
    for (auto u : it->second)
        adj_[u].erase(v);
    edge_count_ -= it->second.size();
    adj_.erase(it);
}

auto Graph::remove_edge(const Edge& e) -> void
{
    if (! has_edge(e))
        throw PreconditionError("missing edge " + to_string(e));
    adj_[e.u].erase(e.v);
    adj_[e.v].erase(e.u);
    --edge_count_;
}

auto Graph::has_edge(const Edge& e) const -> bool
{
    auto it = adj_.find(e.u);
    return it != adj_.end() && it->second.contains(e.v);
}

auto Graph::neighbors(Vertex v) const -> const VertexSet&
{
    auto it = adj_.find(v);
    if (it == adj_.end())
        throw PreconditionError("missing vertex " + std::to_string(v));
    return it->second;
}

auto Graph::vertices() const -> std::vector<Vertex>
{
    std::vector<Vertex> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_)
        out.push_back(v);
    return out;
}

auto Graph::vertex_set() const -> VertexSet
{
    VertexSet out;
    for (const auto& [v, _] : adj_)
        out.insert(out.end(), v);
    return out;
}

auto Graph::edges() const -> std::vector<Edge>
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [v, nbrs] : adj_)
        for (auto it = nbrs.upper_bound(v); it != nbrs.end(); ++it)
            out.push_back(Edge{v, *it});
    return out;
}

auto Graph::incident_edges(Vertex v) const -> std::vector<Edge>
{
    std::vector<Edge> out;
    for (auto u : neighbors(v))
        out.push_back(make_edge(u, v));
    std::sort(out.begin(), out.end());
    return out;
}

auto contract_edge(Graph& g, const Edge& e) -> Vertex
{
    if (! g.has_edge(e))
        throw PreconditionError("cannot contract missing edge " + to_string(e));
    VertexSet merged = g.neighbors(e.u);
    merged.insert(g.neighbors(e.v).begin(), g.neighbors(e.v).end());
    merged.erase(e.u);
    merged.erase(e.v);
    g.remove_vertex(e.u);
    g.remove_vertex(e.v);
    auto z = g.mint_vertex();
    for (auto x : merged)
        g.add_edge(z, x);
    return z;
}

auto apply_edit(const Graph& g, const Edit& edit) -> Graph
{
    Graph out = g;
    std::visit(
        [&](const auto& op) {
            using Op = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<Op, DeleteVertex>)
                out.remove_vertex(op.v);
            else if constexpr (std::is_same_v<Op, DeleteEdge>)
                out.remove_edge(op.e);
            else if constexpr (std::is_same_v<Op, ContractEdge>)
                contract_edge(out, op.e);
            else {
                for (auto u : op.neighbors)
                    if (! out.has_vertex(u))
                        throw PreconditionError("missing vertex " + std::to_string(u));
                auto z = out.mint_vertex();
                for (auto u : op.neighbors)
                    out.add_edge(z, u);
            }
        },
        edit);
    return out;
}

auto induced_subgraph(const Graph& g, const VertexSet& keep) -> Graph
{
    Graph out;
    for (auto v : keep)
        if (g.has_vertex(v))
            out.add_vertex(v);
    for (auto v : keep) {
        if (! g.has_vertex(v))
            continue;
        for (auto u : g.neighbors(v))
            if (u > v && keep.contains(u))
                out.add_edge(v, u);
    }
    return out;
}

auto connected_components(const Graph& g) -> std::vector<VertexSet>
{
    std::vector<VertexSet> out;
    VertexSet seen;
    for (const auto& [start, _] : g.adjacency()) {
        if (seen.contains(start))
            continue;
        VertexSet comp{start};
        std::deque<Vertex> queue{start};
        seen.insert(start);
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (auto u : g.neighbors(v))
                if (seen.insert(u).second) {
                    comp.insert(u);
                    queue.push_back(u);
                }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

auto is_connected(const Graph& g) -> bool
{
    return connected_components(g).size() <= 1;
}

auto open_neighborhood(const Graph& g, const VertexSet& xs) -> VertexSet
{
    VertexSet out;
    for (auto v : xs)
        for (auto u : g.neighbors(v))
            if (! xs.contains(u))
                out.insert(u);
    return out;
}

auto closed_neighborhood(const Graph& g, const VertexSet& xs) -> VertexSet
{
    auto out = open_neighborhood(g, xs);
    out.insert(xs.begin(), xs.end());
    return out;
}

auto ball(const Graph& g, const VertexSet& xs, int r) -> VertexSet
{
    VertexSet out = xs;
    VertexSet frontier = xs;
    for (int step = 0; step < r && ! frontier.empty(); ++step) {
        VertexSet next;
        for (auto v : frontier)
            for (auto u : g.neighbors(v))
                if (out.insert(u).second)
                    next.insert(u);
        frontier = std::move(next);
    }
    return out;
}

auto boundary(const Graph& g, const VertexSet& xs) -> VertexSet
{
    VertexSet out;
    for (auto v : xs)
        for (auto u : g.neighbors(v))
            if (! xs.contains(u)) {
                out.insert(v);
                break;
            }
    return out;
}

auto incident_edges(const Graph& g, const VertexSet& xs) -> EdgeSet
{
    EdgeSet out;
    for (auto v : xs)
        for (auto u : g.neighbors(v))
            out.insert(make_edge(u, v));
    return out;
}

auto inner_edges(const Graph& g, const VertexSet& xs) -> EdgeSet
{
    EdgeSet out;
    for (auto v : xs)
        for (auto u : g.neighbors(v))
            if (u > v && xs.contains(u))
                out.insert(Edge{v, u});
    return out;
}

auto is_r_dominating(const Graph& g, const VertexSet& xs, int r) -> bool
{
    return ball(g, xs, r).size() == g.order();
}

auto is_planar(const Graph& g) -> bool
{
    // Euler bound first: also keeps Boost away from obviously dense inputs.
    if (g.order() >= 3 && g.size() > 3 * g.order() - 6)
        return false;

    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    std::map<Vertex, std::size_t> index;
    for (const auto& [v, _] : g.adjacency())
        index.emplace(v, index.size());
    BoostGraph bg(index.size());
    for (const auto& e : g.edges())
        boost::add_edge(index.at(e.u), index.at(e.v), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

auto verify_bipartite_planar_bound(const Graph& g, const VertexSet& v1, const VertexSet& v2) -> bool
{
    if (v2.empty())
        throw PreconditionError("bipartite bound: V2 is empty");
    for (auto v : v1)
        if (v2.contains(v))
            throw PreconditionError("bipartite bound: V1 and V2 intersect");
    bool all_known = std::all_of(v1.begin(), v1.end(), [&](Vertex v) { return g.has_vertex(v); })
        && std::all_of(v2.begin(), v2.end(), [&](Vertex v) { return g.has_vertex(v); });
    if (! all_known || v1.size() + v2.size() != g.order())
        throw PreconditionError("bipartite bound: (V1, V2) does not partition V(G)");
    for (const auto& e : g.edges()) {
        bool cross = (v1.contains(e.u) && v2.contains(e.v)) || (v2.contains(e.u) && v1.contains(e.v));
        if (! cross)
            throw PreconditionError("bipartite bound: edge " + to_string(e) + " is inside a class");
    }
    for (auto v : v2)
        if (g.degree(v) < 3)
            throw PreconditionError("bipartite bound: V2 vertex " + std::to_string(v) + " has degree < 3");
    if (! is_planar(g))
        throw PreconditionError("bipartite bound: graph is not planar");
    return static_cast<std::int64_t>(v2.size()) <= 2 * static_cast<std::int64_t>(v1.size()) - 4;
}

} // namespace degedit
