#include "degedit/errors.hpp"
#include "degedit/io.hpp"
#include "degedit/treewidth.hpp"
#include "support/build.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace degedit;

namespace {

auto random_planar(std::uint64_t seed, std::size_t n) -> Graph
{
    return generate_random_planar_instance({n, 0, 0, 0, Variant::plain, seed, false}).graph;
}

auto count(const NiceTreeDecomposition& ntd, NiceKind kind) -> std::size_t
{
    std::size_t k = 0;
    for (const auto& node : ntd.nodes)
        k += node.kind == kind ? 1 : 0;
    return k;
}

} // namespace

TEST_CASE("decompose small graphs")
{
    auto p3 = decompose(build::path(3));
    CHECK(p3.width() == 1);
    CHECK(validate(build::path(3), p3).valid);
    CHECK(decompose(build::cycle(4), DecomposeMode::exact_small).width() == 2);
    CHECK(decompose(build::complete(4)).width() == 3);
    CHECK(decompose(Graph{}).width() == 0);
    CHECK_THROWS_AS(decompose(build::path(30), DecomposeMode::exact_small), PreconditionError);
    CHECK(decompose(build::path(30)).width() == 1);
}

TEST_CASE("to_nice shapes")
{
    TreeDecomposition k3{{{1, 2, 3}}, {}};
    auto nice = to_nice(k3);
    CHECK(validate(build::complete(3), nice).valid);
    CHECK(nice.nodes.size() == 7);
    CHECK(count(nice, NiceKind::leaf) == 1);
    CHECK(count(nice, NiceKind::introduce) == 3);
    CHECK(count(nice, NiceKind::forget) == 3);
    CHECK(nice.nodes[nice.root()].bag.empty());

    auto p3 = to_nice(decompose(build::path(3)));
    CHECK(p3.width() == 1);
    CHECK(p3.nodes[p3.root()].bag.empty());
    CHECK(validate(build::path(3), p3).valid);

    auto empty = to_nice(decompose(Graph{}));
    CHECK(validate(Graph{}, empty).valid);
    for (const auto& node : empty.nodes)
        CHECK(node.bag.empty());
}

TEST_CASE("validate names the broken condition")
{
    auto p3 = build::path(3);
    TreeDecomposition uncovered{{{1, 2}, {3}}, {{0, 1}}};
    auto v = validate(p3, uncovered);
    CHECK_FALSE(v.valid);
    CHECK(v.violation.rfind("(ii)", 0) == 0);

    TreeDecomposition split{{{1, 2}, {2, 3}, {1}}, {{0, 1}, {1, 2}}};
    auto w = validate(p3, split);
    CHECK_FALSE(w.valid);
    CHECK(w.violation.rfind("(iii)", 0) == 0);

    TreeDecomposition missing{{{1, 2}}, {}};
    CHECK_FALSE(validate(p3, missing).valid);
    CHECK_THROWS_AS(to_nice(split), PreconditionError);
}

TEST_CASE("exact width matches a search over all orders")
{
    std::mt19937_64 rng(2);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto g = random_planar(seed, 1 + rng() % 8);
        auto td = decompose(g, DecomposeMode::exact_small);
        CHECK(validate(g, td).valid);
        CHECK(td.width() == reference::permutation_treewidth(g));
        CHECK(decompose(g).width() >= td.width());
    }
}

TEST_CASE("decompositions are valid and nice conversion keeps the width")
{
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        auto g = random_planar(seed, 1 + seed % 30);
        auto td = decompose(g);
        REQUIRE(validate(g, td).valid);
        auto nice = to_nice(td);
        CHECK(validate(g, nice).valid);
        CHECK(nice.width() == td.width());
        CHECK(nice.nodes[nice.root()].bag.empty());
        CHECK(validate(g, nice.as_tree_decomposition()).valid);
    }
}

TEST_CASE("joins appear on branching decompositions")
{
    std::size_t joins = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        joins += count(to_nice(decompose(random_planar(seed, 15))), NiceKind::join);
    CHECK(joins > 0);
}

TEST_CASE("PACE round trip")
{
    auto g = random_planar(9, 12);
    auto td = decompose(g);
    auto back = parse_pace_td(write_pace_td(td, g.order()));
    CHECK(back.bags == td.bags);
    CHECK(back.tree_edges == td.tree_edges);
}

TEST_CASE("elimination orders")
{
    auto g = build::cycle(6);
    CHECK(elimination_width(g, min_degree_order(g)) == 2);
    CHECK(elimination_width(g, min_fill_order(g)) == 2);
    CHECK_THROWS_AS(elimination_width(g, {1, 2, 3}), PreconditionError);
    auto td = decomposition_from_order(g, exact_order(g));
    CHECK(validate(g, td).valid);
    CHECK(td.width() == 2);
}
