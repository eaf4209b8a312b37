#include "degedit/protrusion.hpp"

#include "degedit/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace degedit {

auto greedy_2_dominating_set(const Graph& g) -> VertexSet
{
    VertexSet chosen;
    VertexSet uncovered = g.vertex_set();
    std::map<Vertex, VertexSet> balls;
    for (auto v : g.vertices())
        balls[v] = ball(g, {v}, 2);
    while (! uncovered.empty()) {
        Vertex best = 0;
        std::size_t best_gain = 0;
        for (const auto& [v, b] : balls) {
            std::size_t gain = 0;
            for (auto x : b)
                gain += uncovered.contains(x) ? 1 : 0;
            if (gain > best_gain) {
                best = v;
                best_gain = gain;
            }
        }
        chosen.insert(best);
        for (auto x : balls[best])
            uncovered.erase(x);
    }
    return chosen;
}

auto alpha_cap_from_env() -> std::int64_t
{
    if (const char* raw = std::getenv("DEGEDIT_ALPHA_CAP")) {
        try {
            std::size_t used = 0;
            auto value = std::stoll(raw, &used);
            if (used == std::string(raw).size() && value > 0)
                return value;
        } catch (const std::exception&) {
        }
    }
    return default_alpha_cap;
}

auto trivial_decomposition(const Graph& g) -> ProtrusionDecomposition
{
    ProtrusionDecomposition pd;
    pd.r0 = g.vertex_set();
    pd.domset_size = g.order();
    pd.certified = true;
    return pd;
}

namespace {

auto make_part(const Graph& g, VertexSet vertices) -> ProtrusionPart
{
    ProtrusionPart part;
    part.neighbors = open_neighborhood(g, vertices);
    part.vertices = std::move(vertices);
    auto closed = part.vertices;
    closed.insert(part.neighbors.begin(), part.neighbors.end());
    part.td = decompose(induced_subgraph(g, closed));
    part.width = part.td.width();
    return part;
}

// Vertex of `c` with most neighbours inside `c`, ties to the lowest id.
auto densest(const Graph& g, const VertexSet& c) -> Vertex
{
    Vertex best = *c.begin();
    std::size_t best_deg = 0;
    for (auto v : c) {
        std::size_t deg = 0;
        for (auto u : g.neighbors(v))
            deg += c.contains(u) ? 1 : 0;
        if (deg > best_deg) {
            best = v;
            best_deg = deg;
        }
    }
    return best;
}

} // namespace

auto build_protrusion_decomposition(const Graph& g, const VertexSet& domset, int r, const ProtrusionOptions& options)
    -> ProtrusionDecomposition
{
    for (auto v : domset)
        if (! g.has_vertex(v))
            throw PreconditionError("dominating set names unknown vertex " + std::to_string(v));
    if (! is_r_dominating(g, domset, r))
        throw PreconditionError("set is not " + std::to_string(r) + "-dominating");

    const auto cap = options.alpha_cap;
    VertexSet r0 = domset;
    std::vector<ProtrusionPart> parts;
    for (bool grew = true; grew;) {
        grew = false;
        parts.clear();
        auto rest = g.vertex_set();
        for (auto v : r0)
            rest.erase(v);
        for (auto& comp : connected_components(induced_subgraph(g, rest))) {
            auto part = make_part(g, comp);
            if (static_cast<std::int64_t>(part.neighbors.size()) > cap || part.width > cap) {
                r0.insert(densest(g, part.vertices));
                grew = true;
                break;
            }
            parts.push_back(std::move(part));
        }
    }

    // Condition (iii): an R_0 vertex whose whole neighbourhood lies in N[R_i] is not on the
    // boundary of N[R_i]; move it into R_i. Its neighbourhood stays inside N[R_i], so the
    // width certificate is unchanged.
    for (bool moved = true; moved;) {
        moved = false;
        for (auto& part : parts) {
            auto closed = part.vertices;
            closed.insert(part.neighbors.begin(), part.neighbors.end());
            for (auto x : part.neighbors) {
                const auto& nx = g.neighbors(x);
                if (std::all_of(nx.begin(), nx.end(), [&](Vertex y) { return closed.contains(y); })) {
                    r0.erase(x);
                    auto grown = part.vertices;
                    grown.insert(x);
                    part = make_part(g, grown);
                    moved = true;
                    break;
                }
            }
            if (moved)
                break;
        }
    }

    ProtrusionDecomposition pd;
    pd.r0 = std::move(r0);
    pd.parts = std::move(parts);
    pd.domset_size = domset.size();
    pd.alpha = 3;
    for (const auto& part : pd.parts)
        pd.alpha = std::max({pd.alpha, static_cast<std::int64_t>(part.neighbors.size()), part.width});
    pd.certified = pd.alpha <= std::max<std::int64_t>(cap, 3) && pd.parts.size() <= pd.size_bound()
        && pd.r0.size() <= pd.size_bound();
    return pd;
}

auto validate_protrusion_decomposition(const Graph& g, const ProtrusionDecomposition& pd) -> PdVerdict
{
    auto fail = [](std::string why) { return PdVerdict{false, std::move(why)}; };
    std::map<Vertex, int> owner;
    for (auto v : pd.r0)
        owner[v] = 0;
    for (std::size_t i = 0; i < pd.parts.size(); ++i) {
        if (pd.parts[i].vertices.empty())
            return fail("partition: part " + std::to_string(i + 1) + " is empty");
        for (auto v : pd.parts[i].vertices)
            if (! owner.try_emplace(v, static_cast<int>(i + 1)).second)
                return fail("partition: vertex " + std::to_string(v) + " in two sets");
    }
    for (const auto& [v, _] : owner)
        if (! g.has_vertex(v))
            return fail("partition: unknown vertex " + std::to_string(v));
    if (owner.size() != g.order())
        return fail("partition: sets do not cover V(G)");

    for (std::size_t i = 0; i < pd.parts.size(); ++i) {
        const auto& part = pd.parts[i];
        auto name = "part " + std::to_string(i + 1);
        auto nbrs = open_neighborhood(g, part.vertices);
        auto closed = part.vertices;
        closed.insert(nbrs.begin(), nbrs.end());
        auto rim = boundary(g, closed);
        for (auto x : nbrs)
            if (! pd.r0.contains(x) || ! rim.contains(x))
                return fail("(iii) " + name + ": neighbour " + std::to_string(x) + " outside R_0 or off the boundary of N[R_i]");
        if (static_cast<std::int64_t>(rim.size()) > pd.alpha)
            return fail("(ii) " + name + ": boundary " + std::to_string(rim.size()) + " exceeds " + std::to_string(pd.alpha));
        auto verdict = validate(induced_subgraph(g, closed), part.td);
        if (! verdict.valid)
            return fail("(ii) " + name + ": width certificate invalid: " + verdict.violation);
        if (part.td.width() > pd.alpha)
            return fail("(ii) " + name + ": width " + std::to_string(part.td.width()) + " exceeds " + std::to_string(pd.alpha));
    }
    if (pd.certified && (pd.parts.size() > pd.size_bound() || pd.r0.size() > pd.size_bound()))
        return fail("(i) max(p, |R_0|) exceeds " + std::to_string(pd.size_bound()));
    return {};
}

} // namespace degedit
