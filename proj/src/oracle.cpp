#include "degedit/oracle.hpp"

#include "degedit/errors.hpp"

#include <algorithm>

namespace degedit {

namespace {

class Search
{
public:
    Search(const Instance& inst, const OracleLimits& limits, OracleReport& report)
        : inst_(inst)
        , limits_(limits)
        , report_(report)
        , vertices_(inst.graph.vertices())
    {
    }

    auto run() -> void
    {
        choose_vertex(0, 0, 0);
        std::sort(report_.optima.begin(), report_.optima.end(), solution_less);
    }

private:
    auto choose_vertex(std::size_t index, std::int64_t weight, std::int64_t cost) -> void
    {
        if (index == vertices_.size()) {
            choose_edges_for_current_u(cost);
            return;
        }
        choose_vertex(index + 1, weight, cost);
        auto v = vertices_[index];
        auto w = weight + inst_.weight_v.at(v);
        auto c = cost + inst_.cost_v.at(v);
        if (w <= inst_.k_v && c <= inst_.cost_budget) {
            current_.vertices.insert(v);
            choose_vertex(index + 1, w, c);
            current_.vertices.erase(v);
        }
    }

    auto choose_edges_for_current_u(std::int64_t cost) -> void
    {
        ++report_.vertex_sets_examined;
        residual_.clear();
        candidate_edges_.clear();
        for (const auto& [v, nbrs] : inst_.graph.adjacency()) {
            if (current_.vertices.contains(v))
                continue;
            std::int64_t kept = 0;
            for (auto u : nbrs)
                if (! current_.vertices.contains(u))
                    ++kept;
            auto r = kept - inst_.delta.at(v);
            if (r < 0)
                return;
            residual_[v] = r;
        }
        for (const auto& e : inst_.graph.edges())
            if (! current_.vertices.contains(e.u) && ! current_.vertices.contains(e.v))
                candidate_edges_.push_back(e);
        choose_edge(0, 0, cost);
    }

    auto choose_edge(std::size_t index, std::int64_t weight, std::int64_t cost) -> void
    {
        if (index == candidate_edges_.size()) {
            ++report_.pairs_examined;
            for (const auto& [v, r] : residual_)
                if (r != 0)
                    return;
            record(cost);
            return;
        }
        choose_edge(index + 1, weight, cost);
        const auto& e = candidate_edges_[index];
        auto w = weight + inst_.weight_e.at(e);
        auto c = cost + inst_.cost_e.at(e);
        if (w <= inst_.k_e && c <= inst_.cost_budget && residual_[e.u] > 0 && residual_[e.v] > 0) {
            --residual_[e.u];
            --residual_[e.v];
            current_.edges.insert(e);
            choose_edge(index + 1, w, c);
            current_.edges.erase(e);
            ++residual_[e.u];
            ++residual_[e.v];
        }
    }

    auto record(std::int64_t cost) -> void
    {
        if (report_.min_cost && cost > *report_.min_cost)
            return;
        if (inst_.variant == Variant::connected && ! is_connected(remaining_graph(inst_.graph, current_)))
            return;
        if (! report_.min_cost || cost < *report_.min_cost) {
            report_.min_cost = cost;
            report_.optima.clear();
            report_.truncated = false;
        }
        report_.feasible = true;
        if (report_.optima.size() >= limits_.max_optima) {
            report_.truncated = true;
            return;
        }
        Solution sol = current_;
        sol.cost = cost;
        report_.optima.push_back(std::move(sol));
    }

    const Instance& inst_;
    const OracleLimits& limits_;
    OracleReport& report_;
    std::vector<Vertex> vertices_;
    Solution current_;
    std::map<Vertex, std::int64_t> residual_;
    std::vector<Edge> candidate_edges_;
};

} // namespace

auto brute_force_min_cost(const Instance& inst, const OracleLimits& limits) -> OracleReport
{
    if (inst.graph.order() > limits.max_vertices || inst.graph.size() > limits.max_edges)
        throw CapacityError("oracle capacity exceeded: " + std::to_string(inst.graph.order()) + " vertices, "
            + std::to_string(inst.graph.size()) + " edges (caps " + std::to_string(limits.max_vertices) + "/"
            + std::to_string(limits.max_edges) + ")");
    OracleReport report;
    if (inst.k_v < 0 || inst.k_e < 0 || inst.cost_budget < 0)
        return report;
    Search(inst, limits, report).run();
    return report;
}

auto equivalence_check(const Instance& a, const Instance& b, const OracleLimits& limits) -> bool
{
    return brute_force_min_cost(a, limits).feasible == brute_force_min_cost(b, limits).feasible;
}

} // namespace degedit
