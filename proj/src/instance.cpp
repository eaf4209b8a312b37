#include "degedit/instance.hpp"

#include "degedit/errors.hpp"

#include <algorithm>

namespace degedit {

auto to_string(Variant variant) -> std::string
{
    return variant == Variant::plain ? "plain" : "connected";
}

auto Instance::add_vertex(Vertex v, std::int64_t target, std::int64_t weight, std::int64_t cost) -> void
{
    graph.add_vertex(v);
    delta[v] = target;
    weight_v[v] = weight;
    cost_v[v] = cost;
}

auto Instance::add_edge(Vertex a, Vertex b, std::int64_t weight, std::int64_t cost) -> void
{
    graph.add_edge(a, b);
    auto e = make_edge(a, b);
    weight_e[e] = weight;
    cost_e[e] = cost;
}

auto Instance::remove_vertex(Vertex v) -> void
{
    for (const auto& e : graph.incident_edges(v)) {
        weight_e.erase(e);
        cost_e.erase(e);
    }
    graph.remove_vertex(v);
    delta.erase(v);
    weight_v.erase(v);
    cost_v.erase(v);
}

auto Instance::remove_edge(const Edge& e) -> void
{
    graph.remove_edge(e);
    weight_e.erase(e);
    cost_e.erase(e);
}

auto Instance::vertex_weight(const VertexSet& xs) const -> std::int64_t
{
    std::int64_t total = 0;
    for (auto v : xs)
        total += weight_v.at(v);
    return total;
}

auto Instance::vertex_cost(const VertexSet& xs) const -> std::int64_t
{
    std::int64_t total = 0;
    for (auto v : xs)
        total += cost_v.at(v);
    return total;
}

auto Instance::edge_weight(const EdgeSet& es) const -> std::int64_t
{
    std::int64_t total = 0;
    for (const auto& e : es)
        total += weight_e.at(e);
    return total;
}

auto Instance::edge_cost(const EdgeSet& es) const -> std::int64_t
{
    std::int64_t total = 0;
    for (const auto& e : es)
        total += cost_e.at(e);
    return total;
}

auto instance_problems(const Instance& inst) -> std::vector<std::string>
{
    std::vector<std::string> out;
    const auto& g = inst.graph;
    auto check_vertex_map = [&](const std::map<Vertex, std::int64_t>& m, const char* name, std::int64_t min) {
        if (m.size() != g.order())
            out.push_back(std::string(name) + ": size does not match vertex count");
        for (const auto& [v, x] : m) {
            if (! g.has_vertex(v))
                out.push_back(std::string(name) + ": unknown vertex " + std::to_string(v));
            else if (x < min)
                out.push_back(std::string(name) + "(" + std::to_string(v) + ") < " + std::to_string(min));
        }
    };
    auto check_edge_map = [&](const std::map<Edge, std::int64_t>& m, const char* name, std::int64_t min) {
        if (m.size() != g.size())
            out.push_back(std::string(name) + ": size does not match edge count");
        for (const auto& [e, x] : m) {
            if (! g.has_edge(e))
                out.push_back(std::string(name) + ": unknown edge " + to_string(e));
            else if (x < min)
                out.push_back(std::string(name) + "(" + to_string(e) + ") < " + std::to_string(min));
        }
    };
    check_vertex_map(inst.delta, "delta", 0);
    check_vertex_map(inst.weight_v, "weight", 1);
    check_vertex_map(inst.cost_v, "cost", 0);
    check_edge_map(inst.weight_e, "weight", 1);
    check_edge_map(inst.cost_e, "cost", 0);
    if (inst.k_v < 0 || inst.k_e < 0 || inst.cost_budget < 0)
        out.push_back("negative budget");
    return out;
}

auto solution_less(const Solution& a, const Solution& b) -> bool
{
    if (a.cost != b.cost)
        return a.cost < b.cost;
    if (a.vertices != b.vertices)
        return precedes(a.vertices, b.vertices);
    return precedes(a.edges, b.edges);
}

auto solution_cost(const Instance& inst, const Solution& sol) -> std::int64_t
{
    return inst.vertex_cost(sol.vertices) + inst.edge_cost(sol.edges);
}

auto remaining_graph(const Graph& g, const Solution& sol) -> Graph
{
    Graph out = g;
    for (const auto& e : sol.edges)
        if (out.has_edge(e))
            out.remove_edge(e);
    for (auto v : sol.vertices)
        if (out.has_vertex(v))
            out.remove_vertex(v);
    return out;
}

auto check_solution(const Instance& inst, const Solution& sol) -> SolutionVerdict
{
    SolutionVerdict verdict;
    auto fail = [&](std::string what) {
        verdict.valid = false;
        verdict.violations.push_back(std::move(what));
    };

    for (auto v : sol.vertices)
        if (! inst.graph.has_vertex(v))
            fail("deleted vertex " + std::to_string(v) + " is not in the graph");
    for (const auto& e : sol.edges)
        if (! inst.graph.has_edge(e))
            fail("deleted edge " + to_string(e) + " is not in the graph");
    if (! verdict.valid)
        return verdict;

    auto wu = inst.vertex_weight(sol.vertices);
    auto wd = inst.edge_weight(sol.edges);
    auto cost = solution_cost(inst, sol);
    if (wu > inst.k_v)
        fail("vertex weight " + std::to_string(wu) + " exceeds k_v=" + std::to_string(inst.k_v));
    if (wd > inst.k_e)
        fail("edge weight " + std::to_string(wd) + " exceeds k_e=" + std::to_string(inst.k_e));
    if (cost > inst.cost_budget)
        fail("cost " + std::to_string(cost) + " exceeds C=" + std::to_string(inst.cost_budget));

    auto rest = remaining_graph(inst.graph, sol);
    for (const auto& [v, nbrs] : rest.adjacency())
        if (static_cast<std::int64_t>(nbrs.size()) != inst.delta.at(v))
            fail("vertex " + std::to_string(v) + " has degree " + std::to_string(nbrs.size()) + ", target "
                + std::to_string(inst.delta.at(v)));
    if (inst.variant == Variant::connected && ! is_connected(rest))
        fail("remaining graph is disconnected");
    return verdict;
}

auto is_efficient(const Instance&, const Solution& sol) -> bool
{
    return std::none_of(sol.edges.begin(), sol.edges.end(),
        [&](const Edge& e) { return sol.vertices.contains(e.u) || sol.vertices.contains(e.v); });
}

} // namespace degedit
