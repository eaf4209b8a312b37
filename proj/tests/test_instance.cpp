#include "degedit/instance.hpp"
#include "support/build.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace degedit;

TEST_CASE("attribute maps follow the graph")
{
    auto inst = build::uniform(build::complete(3), 2, 1, 1, 3);
    CHECK(instance_problems(inst).empty());
    inst.remove_vertex(1);
    CHECK(inst.delta.size() == 2);
    CHECK(inst.weight_e.size() == 1);
    CHECK(instance_problems(inst).empty());
    inst.remove_edge(make_edge(2, 3));
    CHECK(inst.cost_e.empty());
    CHECK(instance_problems(inst).empty());
}

TEST_CASE("instance_problems reports bad attributes")
{
    auto inst = build::uniform(build::path(2), 1, 0, 0, 0);
    inst.weight_v[1] = 0;
    inst.cost_e[make_edge(1, 2)] = -1;
    inst.k_e = -1;
    CHECK(instance_problems(inst).size() == 3);
}

TEST_CASE("surplus and totals")
{
    auto inst = build::uniform(build::cycle(4), 1, 2, 2, 4, Variant::plain, 2, 3);
    CHECK(inst.surplus(1) == 1);
    CHECK(inst.vertex_weight({1, 2}) == 4);
    CHECK(inst.vertex_cost({1, 2, 3}) == 9);
    CHECK(inst.edge_weight(build::edges({{1, 2}})) == 2);
    CHECK(solution_cost(inst, Solution{{1}, build::edges({{2, 3}}), 0}) == 6);
}

TEST_CASE("precedes is lexicographic on characteristic vectors")
{
    CHECK(precedes(VertexSet{1}, VertexSet{2}));
    CHECK(precedes(VertexSet{1, 5}, VertexSet{1}));
    CHECK_FALSE(precedes(VertexSet{1}, VertexSet{1, 5}));
    CHECK_FALSE(precedes(VertexSet{}, VertexSet{}));
    CHECK(precedes(VertexSet{2}, VertexSet{}));
}

TEST_CASE("precedes is a strict total order stable under disjoint additions")
{
    std::mt19937_64 rng(3);
    auto draw = [&] {
        VertexSet s;
        for (Vertex v = 1; v <= 6; ++v)
            if (rng() % 2)
                s.insert(v);
        return s;
    };
    for (int round = 0; round < 2000; ++round) {
        auto a = draw(), b = draw(), c = draw();
        CHECK_FALSE(precedes(a, a));
        if (a != b)
            CHECK(precedes(a, b) != precedes(b, a));
        if (precedes(a, b) && precedes(b, c))
            CHECK(precedes(a, c));
        VertexSet extra;
        for (Vertex v = 7; v <= 9; ++v)
            if (rng() % 2)
                extra.insert(v);
        auto a2 = a, b2 = b;
        a2.insert(extra.begin(), extra.end());
        b2.insert(extra.begin(), extra.end());
        CHECK(precedes(a, b) == precedes(a2, b2));
    }
}

TEST_CASE("solution_less orders by cost first")
{
    Solution cheap{{9}, {}, 1};
    Solution dear{{1}, {}, 2};
    CHECK(solution_less(cheap, dear));
    Solution x{{1}, {}, 2};
    Solution y{{2}, {}, 2};
    CHECK(solution_less(x, y));
    Solution p{{1}, build::edges({{2, 3}}), 2};
    CHECK(solution_less(p, x));
}

TEST_CASE("remaining_graph removes U and D")
{
    auto g = build::cycle(4);
    auto rest = remaining_graph(g, Solution{{1}, build::edges({{2, 3}}), 0});
    CHECK(rest.vertex_set() == VertexSet{2, 3, 4});
    CHECK(rest.edges() == std::vector<Edge>{make_edge(3, 4)});
}
