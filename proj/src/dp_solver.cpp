#include "degedit/dp_solver.hpp"

#include "degedit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace degedit {

namespace {

// Key layout: [label_0..label_t, gamma_0..gamma_t, wu, we, closed, y_lo, y_hi].
// label 0 = deleted; plain mode uses 1 for kept, connected mode canonical block ids.
using Key = std::vector<std::int32_t>;

struct KeyHash
{
    auto operator()(const Key& key) const -> std::size_t
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : key)
            h = (h ^ static_cast<std::uint32_t>(x)) * 1099511628211ull;
        return h;
    }
};

struct Partial
{
    std::int64_t cost = 0;
    std::vector<Vertex> u;
    std::vector<Edge> d;
};

auto better(const Partial& a, const Partial& b) -> bool
{
    if (a.cost != b.cost)
        return a.cost < b.cost;
    if (a.u != b.u)
        return precedes(a.u, b.u);
    return precedes(a.d, b.d);
}

using Table = std::unordered_map<Key, Partial, KeyHash>;

struct State
{
    std::vector<std::int32_t> label;
    std::vector<std::int32_t> gamma;
    std::int32_t wu = 0;
    std::int32_t we = 0;
    bool closed = false;
    std::uint64_t y = 0;
};

auto decode(const Key& key) -> State
{
    State s;
    auto n = (key.size() - 5) / 2;
    s.label.assign(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(n));
    s.gamma.assign(key.begin() + static_cast<std::ptrdiff_t>(n), key.begin() + static_cast<std::ptrdiff_t>(2 * n));
    s.wu = key[2 * n];
    s.we = key[2 * n + 1];
    s.closed = key[2 * n + 2] != 0;
    s.y = static_cast<std::uint64_t>(static_cast<std::uint32_t>(key[2 * n + 3]))
        | (static_cast<std::uint64_t>(static_cast<std::uint32_t>(key[2 * n + 4])) << 32);
    return s;
}

/// Renumbers block labels by first occurrence so equal partitions share a key.
auto canonical(std::vector<std::int32_t>& label) -> void
{
    std::map<std::int32_t, std::int32_t> rename;
    for (auto& l : label) {
        if (l == 0)
            continue;
        auto [it, fresh] = rename.try_emplace(l, static_cast<std::int32_t>(rename.size() + 1));
        l = it->second;
    }
}

auto encode(State s, bool connected) -> Key
{
    if (connected)
        canonical(s.label);
    Key key;
    key.reserve(2 * s.label.size() + 5);
    key.insert(key.end(), s.label.begin(), s.label.end());
    key.insert(key.end(), s.gamma.begin(), s.gamma.end());
    key.push_back(s.wu);
    key.push_back(s.we);
    key.push_back(s.closed ? 1 : 0);
    key.push_back(static_cast<std::int32_t>(static_cast<std::uint32_t>(s.y & 0xffffffffu)));
    key.push_back(static_cast<std::int32_t>(static_cast<std::uint32_t>(s.y >> 32)));
    return key;
}

auto offer(Table& table, Key key, Partial value) -> void
{
    auto [it, fresh] = table.try_emplace(std::move(key), value);
    if (! fresh && better(value, it->second))
        it->second = std::move(value);
}

template <typename T>
auto with(std::vector<T> xs, const T& x) -> std::vector<T>
{
    xs.insert(std::lower_bound(xs.begin(), xs.end(), x), x);
    return xs;
}

template <typename T>
auto merged(const std::vector<T>& a, const std::vector<T>& b) -> std::vector<T>
{
    std::vector<T> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct UnionFind
{
    explicit UnionFind(std::size_t n)
        : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    auto find(std::size_t x) -> std::size_t
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    auto unite(std::size_t a, std::size_t b) -> void
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> parent;
};

class Solver
{
public:
    Solver(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options)
        : inst_(inst)
        , ntd_(ntd)
        , options_(options)
        , connected_(inst.variant == Variant::connected)
        , gamma_cap_(inst.k_v + inst.k_e)
    {
    }

    auto run() -> BudgetProfile
    {
        BudgetProfile profile;
        for (const auto& [key, value] : root_table()) {
            if (value.cost > inst_.cost_budget)
                continue;
            auto s = decode(key);
            Solution sol{{value.u.begin(), value.u.end()}, {value.d.begin(), value.d.end()}, value.cost};
            auto [it, fresh] = profile.try_emplace({s.wu, s.we}, sol);
            if (! fresh && solution_less(sol, it->second))
                it->second = std::move(sol);
        }
        return profile;
    }

    auto boundary() -> BoundaryTable
    {
        auto table = root_table();
        const auto top = info(ntd_.nodes[ntd_.root()].bag);
        BoundaryTable out{top.vertices, top.edges, {}};
        for (const auto& [key, value] : table) {
            auto s = decode(key);
            out.entries.push_back({std::move(s.label), s.y, std::move(s.gamma), s.wu, s.we, s.closed,
                Solution{{value.u.begin(), value.u.end()}, {value.d.begin(), value.d.end()}, value.cost}});
        }
        std::sort(out.entries.begin(), out.entries.end(), [](const BoundaryEntry& a, const BoundaryEntry& b) {
            return std::tie(a.label, a.y, a.gamma, a.wu, a.we, a.closed) < std::tie(b.label, b.y, b.gamma, b.wu, b.we, b.closed);
        });
        return out;
    }

    auto peak() const -> std::size_t { return peak_; }

private:
    auto root_table() -> Table
    {
        std::vector<Table> tables(ntd_.nodes.size());
        for (std::size_t i = 0; i < ntd_.nodes.size(); ++i) {
            const auto& node = ntd_.nodes[i];
            switch (node.kind) {
            case NiceKind::leaf: tables[i] = leaf(); break;
            case NiceKind::introduce: tables[i] = introduce(node, ntd_.nodes[node.children[0]], tables[node.children[0]]); break;
            case NiceKind::forget: tables[i] = forget(node, ntd_.nodes[node.children[0]], tables[node.children[0]]); break;
            case NiceKind::join: tables[i] = join(node, tables[node.children[0]], tables[node.children[1]]); break;
            }
            for (auto c : node.children)
                Table().swap(tables[c]);
            guard(node, tables[i]);
        }
        return std::move(tables[ntd_.root()]);
    }

    struct BagInfo
    {
        std::vector<Vertex> vertices;
        std::vector<Edge> edges;
    };

    auto info(const VertexSet& bag) const -> BagInfo
    {
        BagInfo b{{bag.begin(), bag.end()}, {}};
        for (std::size_t i = 0; i < b.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < b.vertices.size(); ++j)
                if (inst_.graph.adjacent(b.vertices[i], b.vertices[j]))
                    b.edges.push_back(make_edge(b.vertices[i], b.vertices[j]));
        if (b.edges.size() > 64)
            throw CapacityError("bag with " + std::to_string(b.edges.size()) + " edges exceeds the 64-edge key");
        return b;
    }

    static auto index_of(const std::vector<Edge>& edges, const Edge& e) -> std::size_t
    {
        return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
    }

    // Largest admissible gamma for a kept vertex: it can lose at most d(v) - delta(v) edges.
    auto cap(Vertex v) const -> std::int64_t
    {
        return std::min(gamma_cap_, inst_.degree(v) - inst_.delta.at(v));
    }

    auto leaf() const -> Table
    {
        Table t;
        t.emplace(encode(State{}, connected_), Partial{});
        return t;
    }

    auto introduce(const NiceNode& node, const NiceNode& child, const Table& below) const -> Table
    {
        const auto v = *node.vertex;
        const auto now = info(node.bag);
        const auto before = info(child.bag);
        const auto p = static_cast<std::size_t>(std::find(now.vertices.begin(), now.vertices.end(), v) - now.vertices.begin());
        std::vector<std::size_t> edge_map;
        for (const auto& e : before.edges)
            edge_map.push_back(index_of(now.edges, e));
        const auto wv = inst_.weight_v.at(v);
        const auto cv = inst_.cost_v.at(v);
        const bool can_keep = cap(v) >= 0;

        Table out;
        for (const auto& [key, value] : below) {
            auto s = decode(key);
            State base;
            base.wu = s.wu;
            base.we = s.we;
            base.closed = s.closed;
            for (std::size_t i = 0; i < before.edges.size(); ++i)
                if (s.y >> i & 1u)
                    base.y |= std::uint64_t{1} << edge_map[i];
            base.label = s.label;
            base.gamma = s.gamma;
            base.label.insert(base.label.begin() + static_cast<std::ptrdiff_t>(p), 0);
            base.gamma.insert(base.gamma.begin() + static_cast<std::ptrdiff_t>(p), 0);

            if (s.wu + wv <= inst_.k_v) {
                auto del = base;
                del.wu = static_cast<std::int32_t>(s.wu + wv);
                offer(out, encode(del, connected_), {value.cost + cv, with(value.u, v), value.d});
            }
            if (! can_keep || (connected_ && s.closed))
                continue;

            // Edges from v to kept bag vertices; any subset may be deleted.
            std::vector<std::size_t> nbr_pos;
            for (std::size_t i = 0; i < now.vertices.size(); ++i)
                if (i != p && base.label[i] != 0 && inst_.graph.adjacent(v, now.vertices[i]))
                    nbr_pos.push_back(i);
            for (std::uint32_t mask = 0; mask < (1u << nbr_pos.size()); ++mask) {
                auto keep = base;
                auto cost = value.cost;
                auto d = value.d;
                std::int64_t we = s.we;
                for (std::size_t j = 0; j < nbr_pos.size(); ++j) {
                    if (! (mask >> j & 1u))
                        continue;
                    auto e = make_edge(v, now.vertices[nbr_pos[j]]);
                    we += inst_.weight_e.at(e);
                    cost += inst_.cost_e.at(e);
                    keep.y |= std::uint64_t{1} << index_of(now.edges, e);
                    d = with(d, e);
                }
                if (we > inst_.k_e)
                    continue;
                keep.we = static_cast<std::int32_t>(we);
                if (connected_) {
                    std::int32_t fresh = 1 + *std::max_element(keep.label.begin(), keep.label.end());
                    std::int32_t own = fresh;
                    std::vector<std::int32_t> absorbed;
                    for (std::size_t j = 0; j < nbr_pos.size(); ++j)
                        if (! (mask >> j & 1u))
                            absorbed.push_back(keep.label[nbr_pos[j]]);
                    for (auto& l : keep.label)
                        if (l != 0 && std::find(absorbed.begin(), absorbed.end(), l) != absorbed.end())
                            l = own;
                    keep.label[p] = own;
                } else {
                    keep.label[p] = 1;
                }
                offer(out, encode(keep, connected_), {cost, value.u, std::move(d)});
            }
        }
        return out;
    }

    auto forget(const NiceNode& node, const NiceNode& child, const Table& below) const -> Table
    {
        if (! node.vertex)
            return below;
        const auto v = *node.vertex;
        const auto now = info(node.bag);
        const auto before = info(child.bag);
        const auto p = static_cast<std::size_t>(
            std::find(before.vertices.begin(), before.vertices.end(), v) - before.vertices.begin());
        std::vector<std::ptrdiff_t> edge_map; // child edge index -> parent index, -1 when at v
        for (const auto& e : before.edges)
            edge_map.push_back(e.has(v) ? -1 : static_cast<std::ptrdiff_t>(index_of(now.edges, e)));
        const auto dv = inst_.degree(v);
        const auto target = inst_.delta.at(v);

        Table out;
        for (const auto& [key, value] : below) {
            auto s = decode(key);
            State next;
            next.wu = s.wu;
            next.we = s.we;
            next.closed = s.closed;
            for (std::size_t i = 0; i < before.edges.size(); ++i)
                if ((s.y >> i & 1u) && edge_map[i] >= 0)
                    next.y |= std::uint64_t{1} << edge_map[i];
            next.label = s.label;
            next.gamma = s.gamma;
            next.label.erase(next.label.begin() + static_cast<std::ptrdiff_t>(p));
            next.gamma.erase(next.gamma.begin() + static_cast<std::ptrdiff_t>(p));

            auto bump = [&](Vertex u) {
                auto q = static_cast<std::size_t>(std::find(now.vertices.begin(), now.vertices.end(), u) - now.vertices.begin());
                return ++next.gamma[q] <= cap(u);
            };
            bool ok = true;
            if (s.label[p] == 0) {
                for (std::size_t i = 0; i < before.vertices.size() && ok; ++i)
                    if (i != p && s.label[i] != 0 && inst_.graph.adjacent(v, before.vertices[i]))
                        ok = bump(before.vertices[i]);
            } else {
                std::int64_t removed = 0;
                std::int64_t deleted_nbrs = 0;
                for (std::size_t i = 0; i < before.vertices.size(); ++i) {
                    if (i == p || ! inst_.graph.adjacent(v, before.vertices[i]))
                        continue;
                    if (s.label[i] == 0)
                        ++deleted_nbrs;
                    else if (s.y >> index_of(before.edges, make_edge(v, before.vertices[i])) & 1u)
                        ++removed;
                }
                if (target != dv - removed - s.gamma[p] - deleted_nbrs)
                    continue;
                for (std::size_t i = 0; i < before.vertices.size() && ok; ++i)
                    if (i != p && s.label[i] != 0 && inst_.graph.adjacent(v, before.vertices[i])
                        && (s.y >> index_of(before.edges, make_edge(v, before.vertices[i])) & 1u))
                        ok = bump(before.vertices[i]);
                if (ok && connected_) {
                    bool shared = false;
                    bool other_kept = false;
                    for (std::size_t i = 0; i < s.label.size(); ++i) {
                        if (i == p || s.label[i] == 0)
                            continue;
                        other_kept = true;
                        shared = shared || s.label[i] == s.label[p];
                    }
                    if (! shared) {
                        // v's component leaves the bag for good: it must be the only one.
                        if (other_kept || s.closed)
                            ok = false;
                        else
                            next.closed = true;
                    }
                }
            }
            if (ok)
                offer(out, encode(next, connected_), value);
        }
        return out;
    }

    auto join(const NiceNode& node, const Table& left, const Table& right) const -> Table
    {
        const auto now = info(node.bag);
        const auto n = now.vertices.size();
        // Group the right table by deletion pattern and Y.
        auto pattern = [&](const State& s) {
            std::vector<std::int64_t> pat;
            for (auto l : s.label)
                pat.push_back(l == 0 ? 0 : 1);
            pat.push_back(static_cast<std::int64_t>(s.y));
            return pat;
        };
        std::map<std::vector<std::int64_t>, std::vector<std::pair<State, const Partial*>>> groups;
        for (const auto& [key, value] : right) {
            auto s = decode(key);
            auto pat = pattern(s);
            groups[pat].emplace_back(std::move(s), &value);
        }

        Table out;
        for (const auto& [key, value] : left) {
            auto a = decode(key);
            auto it = groups.find(pattern(a));
            if (it == groups.end())
                continue;
            std::int64_t wx = 0, cx = 0, wy = 0, cy = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (a.label[i] == 0) {
                    wx += inst_.weight_v.at(now.vertices[i]);
                    cx += inst_.cost_v.at(now.vertices[i]);
                }
            for (std::size_t i = 0; i < now.edges.size(); ++i)
                if (a.y >> i & 1u) {
                    wy += inst_.weight_e.at(now.edges[i]);
                    cy += inst_.cost_e.at(now.edges[i]);
                }
            for (const auto& [b, other] : it->second) {
                if (connected_ && a.closed && b.closed)
                    continue;
                std::int64_t wu = a.wu + b.wu - wx;
                std::int64_t we = a.we + b.we - wy;
                if (wu > inst_.k_v || we > inst_.k_e)
                    continue;
                State s;
                s.wu = static_cast<std::int32_t>(wu);
                s.we = static_cast<std::int32_t>(we);
                s.closed = a.closed || b.closed;
                s.y = a.y;
                s.gamma.resize(n);
                bool ok = true;
                for (std::size_t i = 0; i < n && ok; ++i) {
                    s.gamma[i] = a.gamma[i] + b.gamma[i];
                    ok = a.label[i] == 0 || s.gamma[i] <= cap(now.vertices[i]);
                }
                if (! ok)
                    continue;
                if (connected_) {
                    UnionFind uf(n);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = i + 1; j < n; ++j)
                            if (a.label[i] != 0 && (a.label[i] == a.label[j] || b.label[i] == b.label[j]))
                                uf.unite(i, j);
                    s.label.resize(n);
                    for (std::size_t i = 0; i < n; ++i)
                        s.label[i] = a.label[i] == 0 ? 0 : static_cast<std::int32_t>(uf.find(i) + 1);
                } else {
                    s.label = a.label;
                }
                offer(out, encode(std::move(s), connected_),
                    {value.cost + other->cost - cx - cy, merged(value.u, other->u), merged(value.d, other->d)});
            }
        }
        return out;
    }

    auto guard(const NiceNode& node, const Table& table) -> void
    {
        peak_ = std::max(peak_, table.size());
        if (table.size() > options_.max_entries)
            throw CapacityError("dynamic programming table grew to " + std::to_string(table.size()) + " keys");
        auto bound = table_bound(node.bag.size(), info(node.bag).edges.size(), inst_.k_v, inst_.k_e, inst_.variant);
        if (static_cast<double>(table.size()) > bound)
            throw std::logic_error("table exceeds its key bound at a " + to_string(node.kind) + " node");
    }

    const Instance& inst_;
    const NiceTreeDecomposition& ntd_;
    const DpOptions& options_;
    bool connected_;
    std::int64_t gamma_cap_;
    std::size_t peak_ = 0;
};

auto check_window(const Instance& inst) -> void
{
    for (const auto& [v, nbrs] : inst.graph.adjacency()) {
        auto d = static_cast<std::int64_t>(nbrs.size());
        auto target = inst.delta.at(v);
        if (d < target || d > target + inst.k_v + inst.k_e)
            throw PreconditionError("vertex " + std::to_string(v) + " violates the degree window (d=" + std::to_string(d)
                + ", delta=" + std::to_string(target) + "); normalize first");
    }
}

auto checked_solve(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options, Variant expected)
    -> DpResult
{
    if (inst.variant != expected)
        throw PreconditionError("instance variant is " + to_string(inst.variant) + ", expected " + to_string(expected));
    if (auto problems = instance_problems(inst); ! problems.empty())
        throw PreconditionError("malformed instance: " + problems.front());
    if (auto verdict = validate(inst.graph, ntd); ! verdict.valid)
        throw PreconditionError("invalid nice tree decomposition: " + verdict.violation);
    check_window(inst);

    Solver solver(inst, ntd, options);
    auto profile = solver.run();
    DpResult result;
    result.width = ntd.width();
    result.peak_table = solver.peak();
    result.solution = best_within(profile, inst.k_v, inst.k_e);
    result.feasible = result.solution.has_value();
    return result;
}

} // namespace

auto table_bound(std::size_t bag_size, std::size_t bag_edges, std::int64_t k_v, std::int64_t k_e, Variant variant)
    -> double
{
    const double n = static_cast<double>(bag_size);
    const double labels = variant == Variant::plain ? 2.0 : n + 1.0;
    const double closed = variant == Variant::plain ? 1.0 : 2.0;
    return std::pow(labels, n) * std::pow(2.0, static_cast<double>(bag_edges))
        * std::pow(static_cast<double>(k_v + k_e + 1), n) * static_cast<double>(k_v + 1)
        * static_cast<double>(k_e + 1) * closed;
}

auto solve_dpggd_tw(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options) -> DpResult
{
    return checked_solve(inst, ntd, options, Variant::plain);
}

auto solve_dcpggd_tw(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options) -> DpResult
{
    return checked_solve(inst, ntd, options, Variant::connected);
}

auto solve_tw_profile(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options)
    -> BudgetProfile
{
    if (inst.k_v < 0 || inst.k_e < 0 || inst.cost_budget < 0)
        return {};
    return Solver(inst, ntd, options).run();
}

auto solve_tw_boundary(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options)
    -> BoundaryTable
{
    return Solver(inst, ntd, options).boundary();
}

auto best_within(const BudgetProfile& profile, std::int64_t h_v, std::int64_t h_e) -> std::optional<Solution>
{
    std::optional<Solution> best;
    for (const auto& [usage, sol] : profile)
        if (usage.first <= h_v && usage.second <= h_e && (! best || solution_less(sol, *best)))
            best = sol;
    return best;
}

auto solve_exact(const Instance& inst, const DpOptions& options) -> DpResult
{
    auto ntd = to_nice(decompose(inst.graph));
    Solver solver(inst, ntd, options);
    DpResult result;
    result.width = ntd.width();
    if (inst.k_v >= 0 && inst.k_e >= 0 && inst.cost_budget >= 0) {
        auto profile = solver.run();
        result.solution = best_within(profile, inst.k_v, inst.k_e);
    }
    result.feasible = result.solution.has_value();
    result.peak_table = solver.peak();
    return result;
}

} // namespace degedit
