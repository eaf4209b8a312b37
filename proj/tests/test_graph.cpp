#include "degedit/errors.hpp"
#include "degedit/graph.hpp"
#include "degedit/io.hpp"
#include "degedit/oracle.hpp"
#include "support/build.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace degedit;

namespace {

auto random_graph(std::mt19937_64& rng, std::size_t n, int percent) -> Graph
{
    Graph g;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        g.add_vertex(v);
    for (Vertex a = 1; a <= static_cast<Vertex>(n); ++a)
        for (Vertex b = a + 1; b <= static_cast<Vertex>(n); ++b)
            if (static_cast<int>(rng() % 100) < percent)
                g.add_edge(a, b);
    return g;
}

auto simple_and_symmetric(const Graph& g) -> bool
{
    for (const auto& [v, nb] : g.adjacency())
        for (auto u : nb)
            if (u == v || ! g.has_vertex(u) || ! g.neighbors(u).contains(v))
                return false;
    return true;
}

} // namespace

TEST_CASE("apply_edit basics")
{
    SUBCASE("delete the middle of a path")
    {
        auto g = apply_edit(build::path(3), DeleteVertex{2});
        CHECK(g.vertex_set() == VertexSet{1, 3});
        CHECK(g.size() == 0);
    }
    SUBCASE("contract an edge of a triangle")
    {
        auto g = apply_edit(build::complete(3), ContractEdge{make_edge(1, 2)});
        CHECK(g.order() == 2);
        CHECK(g.size() == 1);
        CHECK(g.has_vertex(4));
        CHECK(g.adjacent(4, 3));
    }
    SUBCASE("delete an edge of C4")
    {
        auto g = apply_edit(build::cycle(4), DeleteEdge{make_edge(1, 2)});
        CHECK(g.edges() == std::vector<Edge>{make_edge(1, 4), make_edge(2, 3), make_edge(3, 4)});
    }
    SUBCASE("add a vertex")
    {
        auto g = apply_edit(build::path(2), AddVertex{{1, 2}});
        CHECK(g.order() == 3);
        CHECK(g.adjacent(3, 1));
        CHECK(g.adjacent(3, 2));
    }
    SUBCASE("missing targets are rejected")
    {
        CHECK_THROWS_AS(apply_edit(build::path(2), DeleteVertex{7}), PreconditionError);
        CHECK_THROWS_AS(apply_edit(build::path(3), DeleteEdge{make_edge(1, 3)}), PreconditionError);
    }
}

TEST_CASE("contraction mints fresh identifiers")
{
    auto g = build::path(4);
    auto z = contract_edge(g, make_edge(1, 2));
    CHECK(z == 5);
    g.remove_vertex(z);
    auto y = contract_edge(g, make_edge(3, 4));
    CHECK(y == 6);
}

TEST_CASE("check_solution and is_efficient")
{
    SUBCASE("triangle already matches")
    {
        auto inst = build::uniform(build::complete(3), 2, 0, 0, 0);
        CHECK(check_solution(inst, {}).valid);
    }
    SUBCASE("C4 perfect matching remains")
    {
        auto inst = build::uniform(build::cycle(4), 1, 0, 2, 2);
        Solution sol{{}, build::edges({{1, 2}, {3, 4}}), 2};
        CHECK(check_solution(inst, sol).valid);
        Solution over{{}, build::edges({{1, 2}, {3, 4}, {2, 3}}), 3};
        CHECK_FALSE(check_solution(inst, over).valid);
    }
    SUBCASE("connected variant rejects a split")
    {
        auto inst = build::uniform(build::path(3), 0, 1, 0, 1, Variant::connected);
        auto verdict = check_solution(inst, Solution{{2}, {}, 1});
        CHECK_FALSE(verdict.valid);
        CHECK_FALSE(verdict.violations.empty());
    }
    SUBCASE("efficiency")
    {
        auto inst = build::uniform(build::path(3), 0, 1, 1, 2);
        CHECK(is_efficient(inst, Solution{{1}, build::edges({{2, 3}}), 0}));
        CHECK_FALSE(is_efficient(inst, Solution{{2}, build::edges({{2, 3}}), 0}));
        CHECK(is_efficient(inst, Solution{{}, build::edges({{1, 2}, {2, 3}}), 0}));
    }
    SUBCASE("the empty graph is connected")
    {
        CHECK(is_connected(Graph{}));
        auto inst = build::uniform(build::path(3), 0, 3, 0, 3, Variant::connected);
        CHECK(check_solution(inst, Solution{{1, 2, 3}, {}, 3}).valid);
    }
}

TEST_CASE("check_solution agrees with a recount on oracle solutions")
{
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        for (auto variant : {Variant::plain, Variant::connected}) {
            GeneratorOptions o{1 + seed % 8, 1, 2, 4, variant, seed, false};
            auto inst = generate_random_planar_instance(o);
            auto report = brute_force_min_cost(inst);
            for (const auto& sol : report.optima) {
                auto rest = remaining_graph(inst.graph, sol);
                bool degrees = true;
                for (auto v : rest.vertices())
                    degrees = degrees && static_cast<std::int64_t>(rest.neighbors(v).size()) == inst.delta.at(v);
                bool ok = degrees && inst.vertex_weight(sol.vertices) <= inst.k_v
                    && inst.edge_weight(sol.edges) <= inst.k_e && solution_cost(inst, sol) <= inst.cost_budget
                    && (variant == Variant::plain || connected_components(rest).size() <= 1);
                CHECK(ok == check_solution(inst, sol).valid);
                CHECK(is_efficient(inst, sol));
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("is_planar on small named graphs")
{
    CHECK(is_planar(Graph{}));
    CHECK(is_planar(build::complete(4)));
    CHECK_FALSE(is_planar(build::complete(5)));
    CHECK_FALSE(is_planar(build::complete_bipartite(3, 3)));
    auto k33 = build::complete_bipartite(3, 3);
    k33.remove_edge(make_edge(1, 4));
    CHECK(is_planar(k33));
    CHECK_FALSE(reference::has_kuratowski_minor(k33));

    auto petersen = build::graph(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                                         {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}});
    CHECK_FALSE(is_planar(petersen));
}

TEST_CASE("is_planar agrees with a Kuratowski minor search")
{
    std::mt19937_64 rng(7);
    std::size_t planar = 0, non_planar = 0;
    for (int round = 0; round < 400; ++round) {
        auto n = 5 + rng() % 4;
        auto g = random_graph(rng, n, 25 + static_cast<int>(rng() % 50));
        auto expected = ! reference::has_kuratowski_minor(g);
        CHECK(is_planar(g) == expected);
        (expected ? planar : non_planar) += 1;
    }
    CHECK(planar > 50);
    CHECK(non_planar > 50);
}

TEST_CASE("edits keep graphs simple and planar")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto g = generate_random_planar_instance({12, 0, 0, 0, Variant::plain, seed, false}).graph;
        for (int step = 0; step < 6 && ! g.empty(); ++step) {
            auto vs = g.vertices();
            auto es = g.edges();
            auto kind = rng() % 3;
            if (kind == 0 || es.empty())
                g = apply_edit(g, DeleteVertex{vs[rng() % vs.size()]});
            else if (kind == 1)
                g = apply_edit(g, DeleteEdge{es[rng() % es.size()]});
            else
                g = apply_edit(g, ContractEdge{es[rng() % es.size()]});
            REQUIRE(simple_and_symmetric(g));
            REQUIRE(is_planar(g));
        }
    }
}

TEST_CASE("bipartite planar bound")
{
    SUBCASE("cube")
    {
        auto q3 = build::graph(8, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {5, 6}, {6, 7}, {7, 8}, {8, 5}, {1, 5}, {2, 6}, {3, 7}, {4, 8}});
        CHECK(verify_bipartite_planar_bound(q3, {1, 3, 6, 8}, {2, 4, 5, 7}));
    }
    SUBCASE("one vertex against three")
    {
        auto star = build::graph(4, {{4, 1}, {4, 2}, {4, 3}});
        CHECK(verify_bipartite_planar_bound(star, {1, 2, 3}, {4}));
    }
    SUBCASE("degree two on the small side")
    {
        auto g = build::graph(3, {{3, 1}, {3, 2}});
        CHECK_THROWS_AS(verify_bipartite_planar_bound(g, {1, 2}, {3}), PreconditionError);
    }
    SUBCASE("random planar bipartite graphs never exceed the bound")
    {
        std::mt19937_64 rng(5);
        for (int round = 0; round < 300; ++round) {
            auto a = 2 + rng() % 5;
            auto b = 1 + rng() % 8;
            Graph g;
            for (Vertex v = 1; v <= static_cast<Vertex>(a + b); ++v)
                g.add_vertex(v);
            for (Vertex x = 1; x <= static_cast<Vertex>(a); ++x)
                for (Vertex y = static_cast<Vertex>(a) + 1; y <= static_cast<Vertex>(a + b); ++y)
                    if (rng() % 100 < 70)
                        g.add_edge(x, y);
            VertexSet v1, v2;
            for (Vertex x = 1; x <= static_cast<Vertex>(a); ++x)
                v1.insert(x);
            for (Vertex y = static_cast<Vertex>(a) + 1; y <= static_cast<Vertex>(a + b); ++y)
                v2.insert(y);
            bool premise = is_planar(g)
                && std::all_of(v2.begin(), v2.end(), [&](Vertex y) { return g.degree(y) >= 3; });
            if (premise)
                CHECK(verify_bipartite_planar_bound(g, v1, v2));
        }
    }
}

TEST_CASE("neighbourhood helpers")
{
    auto g = build::path(5);
    CHECK(open_neighborhood(g, {3}) == VertexSet{2, 4});
    CHECK(closed_neighborhood(g, {3}) == VertexSet{2, 3, 4});
    CHECK(ball(g, {3}, 2) == VertexSet{1, 2, 3, 4, 5});
    CHECK(boundary(g, {1, 2}) == VertexSet{2});
    CHECK(inner_edges(g, {1, 2, 3}) == build::edges({{1, 2}, {2, 3}}));
    CHECK(incident_edges(g, {1}) == build::edges({{1, 2}}));
    CHECK(is_r_dominating(g, {3}, 2));
    CHECK_FALSE(is_r_dominating(g, {1}, 2));
    CHECK(connected_components(build::graph(4, {{1, 2}})).size() == 3);
}
