#include "degedit/treewidth.hpp"

#include "degedit/errors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace degedit {

auto TreeDecomposition::width() const -> std::int64_t
{
    std::size_t widest = 0;
    for (const auto& bag : bags)
        widest = std::max(widest, bag.size());
    return widest == 0 ? 0 : static_cast<std::int64_t>(widest) - 1;
}

auto to_string(NiceKind kind) -> std::string
{
    switch (kind) {
    case NiceKind::leaf: return "leaf";
    case NiceKind::introduce: return "introduce";
    case NiceKind::forget: return "forget";
    case NiceKind::join: return "join";
    }
    return "?";
}

auto NiceTreeDecomposition::width() const -> std::int64_t
{
    return as_tree_decomposition().width();
}

auto NiceTreeDecomposition::as_tree_decomposition() const -> TreeDecomposition
{
    TreeDecomposition td;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        td.bags.push_back(nodes[i].bag);
        for (auto c : nodes[i].children)
            td.tree_edges.emplace_back(c, i);
    }
    return td;
}

namespace {

using FillGraph = std::map<Vertex, VertexSet>;

auto fill_graph(const Graph& g) -> FillGraph
{
    return {g.adjacency().begin(), g.adjacency().end()};
}

auto eliminate(FillGraph& h, Vertex v) -> void
{
    const auto nbrs = h.at(v);
    for (auto a : nbrs) {
        h[a].erase(v);
        for (auto b : nbrs)
            if (a != b)
                h[a].insert(b);
    }
    h.erase(v);
}

auto fill_in(const FillGraph& h, Vertex v) -> std::size_t
{
    const auto& nbrs = h.at(v);
    std::size_t missing = 0;
    for (auto it = nbrs.begin(); it != nbrs.end(); ++it)
        for (auto jt = std::next(it); jt != nbrs.end(); ++jt)
            if (! h.at(*it).contains(*jt))
                ++missing;
    return missing;
}

template <typename Score>
auto greedy_order(const Graph& g, Score score) -> std::vector<Vertex>
{
    auto h = fill_graph(g);
    std::vector<Vertex> order;
    while (! h.empty()) {
        auto best = h.begin()->first;
        auto best_score = std::numeric_limits<std::size_t>::max();
        for (const auto& [v, _] : h) {
            auto s = score(h, v);
            if (s < best_score) {
                best = v;
                best_score = s;
            }
        }
        order.push_back(best);
        eliminate(h, best);
    }
    return order;
}

} // namespace

auto min_degree_order(const Graph& g) -> std::vector<Vertex>
{
    return greedy_order(g, [](const FillGraph& h, Vertex v) { return h.at(v).size(); });
}

auto min_fill_order(const Graph& g) -> std::vector<Vertex>
{
    return greedy_order(g, fill_in);
}

auto elimination_width(const Graph& g, const std::vector<Vertex>& order) -> std::int64_t
{
    if (order.size() != g.order() || VertexSet(order.begin(), order.end()) != g.vertex_set())
        throw PreconditionError("elimination order is not a permutation of the vertices");
    auto h = fill_graph(g);
    std::int64_t width = 0;
    for (auto v : order) {
        width = std::max(width, static_cast<std::int64_t>(h.at(v).size()));
        eliminate(h, v);
    }
    return width;
}

auto exact_order(const Graph& g, std::size_t cap) -> std::vector<Vertex>
{
    const auto n = g.order();
    if (n > cap || n > 31)
        throw PreconditionError("exact treewidth refused: " + std::to_string(n) + " vertices exceed cap "
            + std::to_string(std::min<std::size_t>(cap, 31)));
    auto heuristic = min_fill_order(g);
    if (n <= 2)
        return heuristic;

    const auto ids = g.vertices();
    std::map<Vertex, int> index;
    for (std::size_t i = 0; i < n; ++i)
        index[ids[i]] = static_cast<int>(i);
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& e : g.edges()) {
        adj[index[e.u]] |= 1u << index[e.v];
        adj[index[e.v]] |= 1u << index[e.u];
    }

    // Degree of v in the filled graph once the set S has been eliminated:
    // vertices outside S reachable from v through S.
    auto q_size = [&](std::uint32_t s, int v) {
        std::uint32_t seen = 1u << v;
        std::uint32_t stack = 1u << v;
        std::uint32_t out = 0;
        while (stack) {
            int u = std::countr_zero(stack);
            stack &= stack - 1;
            auto fresh = adj[u] & ~seen;
            seen |= fresh;
            out |= fresh & ~s;
            stack |= fresh & s;
        }
        return std::popcount(out);
    };

    int upper = static_cast<int>(elimination_width(g, heuristic));
    struct State
    {
        int value;
        int last;
    };
    std::unordered_map<std::uint32_t, State> best;
    best[0] = {0, -1};
    std::vector<std::uint32_t> layer{0};
    std::optional<std::pair<std::uint32_t, int>> finish; // (set, value) completed by the clique bound

    for (std::size_t depth = 0; depth < n && ! layer.empty(); ++depth) {
        std::vector<std::uint32_t> next;
        for (auto s : layer) {
            auto value = best[s].value;
            auto rest = static_cast<int>(n) - std::popcount(s);
            // Eliminating the rest in any order costs at most rest-1.
            if (std::max(value, rest - 1) < upper) {
                upper = std::max(value, rest - 1);
                finish = {s, upper};
            }
            for (int v = 0; v < static_cast<int>(n); ++v) {
                if (s & (1u << v))
                    continue;
                auto val = std::max(value, q_size(s, v));
                if (val >= upper)
                    continue;
                auto t = s | (1u << v);
                auto it = best.find(t);
                if (it == best.end()) {
                    best[t] = {val, v};
                    next.push_back(t);
                } else if (val < it->second.value) {
                    it->second = {val, v};
                }
            }
        }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }
    if (! finish)
        return heuristic;

    std::vector<Vertex> order;
    for (auto s = finish->first; s != 0;) {
        auto v = best[s].last;
        order.push_back(ids[v]);
        s &= ~(1u << v);
    }
    std::reverse(order.begin(), order.end());
    for (std::size_t i = 0; i < n; ++i)
        if (! (finish->first & (1u << i)))
            order.push_back(ids[i]);
    return order;
}

auto decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) -> TreeDecomposition
{
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[order[i]] = i;
    if (pos.size() != g.order() || order.size() != g.order())
        throw PreconditionError("elimination order is not a permutation of the vertices");

    auto h = fill_graph(g);
    TreeDecomposition td;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto v = order[i];
        VertexSet bag = h.at(v);
        if (bag.empty()) {
            roots.push_back(i);
        } else {
            auto parent = pos.at(*std::min_element(bag.begin(), bag.end(),
                [&](Vertex a, Vertex b) { return pos.at(a) < pos.at(b); }));
            td.tree_edges.emplace_back(i, parent);
        }
        bag.insert(v);
        td.bags.push_back(std::move(bag));
        eliminate(h, v);
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.tree_edges.emplace_back(roots[i - 1], roots[i]);
    return td;
}

auto decompose(const Graph& g, DecomposeMode mode, std::size_t exact_cap) -> TreeDecomposition
{
    if (mode == DecomposeMode::exact_small)
        return decomposition_from_order(g, exact_order(g, exact_cap));
    auto by_degree = min_degree_order(g);
    auto by_fill = min_fill_order(g);
    auto pick = elimination_width(g, by_fill) <= elimination_width(g, by_degree) ? by_fill : by_degree;
    return decomposition_from_order(g, pick);
}

auto validate(const Graph& g, const TreeDecomposition& td) -> TdVerdict
{
    auto fail = [](std::string why) { return TdVerdict{false, std::move(why)}; };
    const auto count = td.bags.size();
    if (count == 0)
        return g.empty() ? TdVerdict{} : fail("(i) no bags for a non-empty graph");

    if (td.tree_edges.size() != count - 1)
        return fail("tree: " + std::to_string(td.tree_edges.size()) + " edges for " + std::to_string(count) + " nodes");
    std::vector<std::vector<std::size_t>> tree(count);
    for (auto [a, b] : td.tree_edges) {
        if (a >= count || b >= count || a == b)
            return fail("tree: bad edge " + std::to_string(a) + "-" + std::to_string(b));
        tree[a].push_back(b);
        tree[b].push_back(a);
    }
    std::vector<bool> reached(count, false);
    std::deque<std::size_t> queue{0};
    reached[0] = true;
    std::size_t seen = 1;
    while (! queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (auto y : tree[x])
            if (! reached[y]) {
                reached[y] = true;
                ++seen;
                queue.push_back(y);
            }
    }
    if (seen != count)
        return fail("tree: not connected");

    std::map<Vertex, std::vector<std::size_t>> occurs;
    for (std::size_t i = 0; i < count; ++i)
        for (auto v : td.bags[i]) {
            if (! g.has_vertex(v))
                return fail("(i) bag " + std::to_string(i) + " holds unknown vertex " + std::to_string(v));
            occurs[v].push_back(i);
        }
    for (auto v : g.vertices())
        if (! occurs.contains(v))
            return fail("(i) vertex " + std::to_string(v) + " in no bag");

    for (const auto& e : g.edges()) {
        const auto& a = occurs[e.u];
        const auto& b = occurs[e.v];
        std::vector<std::size_t> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        if (both.empty())
            return fail("(ii) edge " + to_string(e) + " in no bag");
    }

    for (const auto& [v, nodes] : occurs) {
        std::vector<bool> holds(count, false);
        for (auto i : nodes)
            holds[i] = true;
        std::vector<bool> mark(count, false);
        std::deque<std::size_t> q{nodes.front()};
        mark[nodes.front()] = true;
        std::size_t got = 1;
        while (! q.empty()) {
            auto x = q.front();
            q.pop_front();
            for (auto y : tree[x])
                if (holds[y] && ! mark[y]) {
                    mark[y] = true;
                    ++got;
                    q.push_back(y);
                }
        }
        if (got != nodes.size())
            return fail("(iii) bags holding vertex " + std::to_string(v) + " are not connected");
    }
    return {};
}

auto validate(const Graph& g, const NiceTreeDecomposition& ntd) -> TdVerdict
{
    auto fail = [](std::string why) { return TdVerdict{false, std::move(why)}; };
    if (ntd.nodes.empty())
        return fail("nice: no nodes");
    std::vector<int> parents(ntd.nodes.size(), 0);
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& node = ntd.nodes[i];
        auto where = "nice: node " + std::to_string(i) + " (" + to_string(node.kind) + ")";
        for (auto c : node.children) {
            if (c >= i)
                return fail(where + " has child " + std::to_string(c) + " not stored before it");
            ++parents[c];
        }
        const bool root = i == ntd.root();
        switch (node.kind) {
        case NiceKind::leaf:
            if (! node.children.empty() || ! node.bag.empty())
                return fail(where + " must be childless with an empty bag");
            break;
        case NiceKind::introduce:
        case NiceKind::forget: {
            if (node.children.size() != 1)
                return fail(where + " needs exactly one child");
            auto expected = ntd.nodes[node.children[0]].bag;
            if (! node.vertex) {
                if (! (root && node.kind == NiceKind::forget && expected.empty() && node.bag.empty()))
                    return fail(where + " names no vertex");
                break;
            }
            auto v = *node.vertex;
            if (node.kind == NiceKind::introduce ? expected.contains(v) : ! expected.contains(v))
                return fail(where + " vertex " + std::to_string(v) + " inconsistent with child bag");
            if (node.kind == NiceKind::introduce)
                expected.insert(v);
            else
                expected.erase(v);
            if (node.bag != expected)
                return fail(where + " bag differs from child bag by more than its vertex");
            break;
        }
        case NiceKind::join:
            if (node.children.size() != 2)
                return fail(where + " needs exactly two children");
            if (ntd.nodes[node.children[0]].bag != node.bag || ntd.nodes[node.children[1]].bag != node.bag)
                return fail(where + " children bags differ");
            break;
        }
    }
    for (std::size_t i = 0; i + 1 < ntd.nodes.size(); ++i)
        if (parents[i] != 1)
            return fail("nice: node " + std::to_string(i) + " has " + std::to_string(parents[i]) + " parents");
    const auto& root = ntd.nodes[ntd.root()];
    if (root.kind != NiceKind::forget || ! root.bag.empty())
        return fail("nice: root must be a forget node with an empty bag");
    return validate(g, ntd.as_tree_decomposition());
}

auto to_nice(const TreeDecomposition& td) -> NiceTreeDecomposition
{
    // Structural check against the edgeless graph on the bag union: tree shape, (i), (iii).
    Graph support;
    for (const auto& bag : td.bags)
        for (auto v : bag)
            if (! support.has_vertex(v))
                support.add_vertex(v);
    if (auto verdict = validate(support, td); ! verdict.valid)
        throw PreconditionError("to_nice: invalid decomposition: " + verdict.violation);

    NiceTreeDecomposition out;
    auto push = [&](NiceKind kind, VertexSet bag, std::optional<Vertex> v, std::vector<std::size_t> children) {
        out.nodes.push_back({kind, std::move(bag), v, std::move(children)});
        return out.nodes.size() - 1;
    };
    // Walk from node `top` (bag `from`) to bag `to`: forget first, then introduce.
    auto chain = [&](std::size_t top, const VertexSet& from, const VertexSet& to) {
        auto bag = from;
        for (auto v : from)
            if (! to.contains(v)) {
                bag.erase(v);
                top = push(NiceKind::forget, bag, v, {top});
            }
        for (auto v : to)
            if (! from.contains(v)) {
                bag.insert(v);
                top = push(NiceKind::introduce, bag, v, {top});
            }
        return top;
    };

    if (td.bags.empty()) {
        auto leaf = push(NiceKind::leaf, {}, std::nullopt, {});
        push(NiceKind::forget, {}, std::nullopt, {leaf});
        return out;
    }

    const auto count = td.bags.size();
    const auto root = count - 1;
    std::vector<std::vector<std::size_t>> tree(count);
    for (auto [a, b] : td.tree_edges) {
        tree[a].push_back(b);
        tree[b].push_back(a);
    }
    std::vector<std::size_t> order{root};
    std::vector<std::size_t> parent(count, count);
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto x = order[i];
        std::sort(tree[x].begin(), tree[x].end());
        for (auto y : tree[x])
            if (parent[y] == count) {
                parent[y] = x;
                order.push_back(y);
            }
    }

    std::vector<std::size_t> top(count, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto x = *it;
        std::vector<std::size_t> arms;
        for (auto y : tree[x])
            if (parent[y] == x && y != x)
                arms.push_back(chain(top[y], td.bags[y], td.bags[x]));
        if (arms.empty()) {
            auto leaf = push(NiceKind::leaf, {}, std::nullopt, {});
            arms.push_back(chain(leaf, {}, td.bags[x]));
        }
        auto joined = arms.front();
        for (std::size_t i = 1; i < arms.size(); ++i)
            joined = push(NiceKind::join, td.bags[x], std::nullopt, {joined, arms[i]});
        top[x] = joined;
    }
    auto last = chain(top[root], td.bags[root], {});
    if (out.nodes[last].kind != NiceKind::forget || ! out.nodes[last].bag.empty())
        push(NiceKind::forget, {}, std::nullopt, {last});
    return out;
}

auto write_pace_td(const TreeDecomposition& td, std::size_t vertex_count) -> std::string
{
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << vertex_count << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (auto v : td.bags[i])
            out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges)
        out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

auto parse_pace_td(const std::string& text) -> TreeDecomposition
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> bag_count;
    TreeDecomposition td;
    std::vector<bool> defined;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string head;
        if (! (fields >> head) || head == "c")
            continue;
        if (head == "s") {
            std::string kind;
            std::size_t bags = 0, width = 0, n = 0;
            if (bag_count || ! (fields >> kind >> bags >> width >> n) || kind != "td")
                throw ParseError(line_no, "bad solution header");
            bag_count = bags;
            td.bags.assign(bags, {});
            defined.assign(bags, false);
            continue;
        }
        if (! bag_count)
            throw ParseError(line_no, "missing 's td' header");
        if (head == "b") {
            std::size_t i = 0;
            if (! (fields >> i) || i == 0 || i > *bag_count || defined[i - 1])
                throw ParseError(line_no, "bad bag index");
            defined[i - 1] = true;
            Vertex v = 0;
            while (fields >> v)
                td.bags[i - 1].insert(v);
            if (! fields.eof())
                throw ParseError(line_no, "bad bag vertex");
            continue;
        }
        std::size_t a = 0, b = 0;
        std::string extra;
        try {
            a = std::stoul(head);
        } catch (const std::exception&) {
            throw ParseError(line_no, "unknown line type '" + head + "'");
        }
        if (! (fields >> b) || (fields >> extra) || a == 0 || b == 0 || a > *bag_count || b > *bag_count)
            throw ParseError(line_no, "bad tree edge");
        td.tree_edges.emplace_back(a - 1, b - 1);
    }
    if (! bag_count)
        throw ParseError(0, "missing 's td' header");
    return td;
}

} // namespace degedit
