#include "degedit/errors.hpp"
#include "degedit/io.hpp"
#include "degedit/normalize.hpp"
#include "degedit/oracle.hpp"
#include "support/build.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace degedit;

namespace {

auto small_instance(std::uint64_t seed, Variant variant) -> Instance
{
    std::mt19937_64 rng(seed);
    GeneratorOptions o;
    o.n = 1 + rng() % 7;
    o.k_v = static_cast<std::int64_t>(rng() % 3);
    o.k_e = static_cast<std::int64_t>(rng() % 3);
    o.cost_budget = static_cast<std::int64_t>(rng() % 6);
    o.variant = variant;
    o.seed = seed;
    o.raw = rng() % 3 == 0;
    return generate_random_planar_instance(o);
}

auto relabel(const Instance& inst, std::mt19937_64& rng) -> Instance
{
    auto vs = inst.graph.vertices();
    auto image = vs;
    for (auto& v : image)
        v += 100;
    std::shuffle(image.begin(), image.end(), rng);
    std::map<Vertex, Vertex> to;
    for (std::size_t i = 0; i < vs.size(); ++i)
        to[vs[i]] = image[i];
    Instance out;
    for (auto v : vs)
        out.add_vertex(to[v], inst.delta.at(v), inst.weight_v.at(v), inst.cost_v.at(v));
    for (auto e : inst.graph.edges())
        out.add_edge(to[e.u], to[e.v], inst.weight_e.at(e), inst.cost_e.at(e));
    out.k_v = inst.k_v;
    out.k_e = inst.k_e;
    out.cost_budget = inst.cost_budget;
    out.variant = inst.variant;
    return out;
}

} // namespace

TEST_CASE("oracle on fixed instances")
{
    SUBCASE("triangle")
    {
        auto report = brute_force_min_cost(build::uniform(build::complete(3), 2, 0, 0, 0));
        CHECK(report.feasible);
        CHECK(report.min_cost == 0);
        REQUIRE(report.optima.size() == 1);
        CHECK(report.optima[0] == Solution{});
    }
    SUBCASE("C4 matchings")
    {
        auto report = brute_force_min_cost(build::uniform(build::cycle(4), 1, 0, 2, 2));
        CHECK(report.feasible);
        CHECK(report.min_cost == 2);
        REQUIRE(report.optima.size() == 2);
        CHECK(report.optima[0].edges == build::edges({{1, 2}, {3, 4}}));
        CHECK(report.optima[1].edges == build::edges({{1, 4}, {2, 3}}));
    }
    SUBCASE("C4 matchings are disconnected")
    {
        auto report = brute_force_min_cost(build::uniform(build::cycle(4), 1, 0, 2, 2, Variant::connected));
        CHECK_FALSE(report.feasible);
        CHECK_FALSE(report.min_cost.has_value());
        CHECK(report.optima.empty());
    }
    SUBCASE("deleting everything leaves a connected graph")
    {
        auto report = brute_force_min_cost(build::uniform(build::path(3), 0, 3, 0, 0, Variant::connected, 1, 0));
        CHECK(report.feasible);
        CHECK(report.min_cost == 0);
    }
}

TEST_CASE("oracle agrees with naive enumeration")
{
    std::size_t feasible = 0;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
        for (auto variant : {Variant::plain, Variant::connected}) {
            auto inst = small_instance(seed, variant);
            if (inst.graph.size() > 11)
                continue;
            auto report = brute_force_min_cost(inst);
            auto naive = reference::naive_min_cost(inst);
            CHECK(report.feasible == naive.has_value());
            CHECK(report.min_cost == naive);
            feasible += report.feasible ? 1 : 0;
        }
    }
    CHECK(feasible > 100);
}

TEST_CASE("optima are valid, efficient, sorted and distinct")
{
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        auto inst = small_instance(seed, seed % 2 ? Variant::connected : Variant::plain);
        auto report = brute_force_min_cost(inst);
        for (std::size_t i = 0; i < report.optima.size(); ++i) {
            const auto& sol = report.optima[i];
            CHECK(check_solution(inst, sol).valid);
            CHECK(is_efficient(inst, sol));
            CHECK(sol.cost == *report.min_cost);
            if (i > 0)
                CHECK(solution_less(report.optima[i - 1], sol));
        }
    }
}

TEST_CASE("making a solution efficient never costs more")
{
    std::mt19937_64 rng(17);
    std::size_t tried = 0;
    for (std::uint64_t seed = 0; seed < 3000 && tried < 300; ++seed) {
        auto inst = small_instance(seed, seed % 2 ? Variant::connected : Variant::plain);
        auto vs = inst.graph.vertices();
        auto es = inst.graph.edges();
        Solution sol;
        for (auto v : vs)
            if (rng() % 4 == 0)
                sol.vertices.insert(v);
        for (auto e : es)
            if (rng() % 3 == 0)
                sol.edges.insert(e);
        sol.cost = solution_cost(inst, sol);
        if (! check_solution(inst, sol).valid)
            continue;
        ++tried;
        Solution lean{sol.vertices, {}, 0};
        for (auto e : sol.edges)
            if (! sol.vertices.contains(e.u) && ! sol.vertices.contains(e.v))
                lean.edges.insert(e);
        lean.cost = solution_cost(inst, lean);
        CHECK(is_efficient(inst, lean));
        CHECK(check_solution(inst, lean).valid);
        CHECK(lean.cost <= sol.cost);
        CHECK(*brute_force_min_cost(inst).min_cost <= lean.cost);
    }
    CHECK(tried >= 100);
}

TEST_CASE("oracle is invariant under relabeling")
{
    std::mt19937_64 rng(23);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto inst = small_instance(seed, seed % 2 ? Variant::connected : Variant::plain);
        auto a = brute_force_min_cost(inst);
        auto b = brute_force_min_cost(relabel(inst, rng));
        CHECK(a.feasible == b.feasible);
        CHECK(a.min_cost == b.min_cost);
        CHECK(a.optima.size() == b.optima.size());
    }
}

TEST_CASE("limits")
{
    auto big = build::uniform(build::path(13), 1, 0, 0, 0);
    CHECK_THROWS_AS(brute_force_min_cost(big), CapacityError);
    CHECK_NOTHROW(brute_force_min_cost(big, {13, 18, 10}));

    // Isolated vertices with free deletion: every vertex subset is an optimum.
    auto ties = build::uniform(Graph{}, 0, 6, 0, 0, Variant::plain, 1, 0);
    for (Vertex v = 1; v <= 6; ++v)
        ties.add_vertex(v, 0, 1, 0);
    auto all = brute_force_min_cost(ties);
    CHECK(all.optima.size() == 64);
    CHECK_FALSE(all.truncated);
    auto capped = brute_force_min_cost(ties, {12, 18, 10});
    CHECK(capped.optima.size() == 10);
    CHECK(capped.truncated);
    CHECK(capped.min_cost == 0);
}

TEST_CASE("equivalence_check")
{
    std::size_t controls = 0, caught = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        auto inst = small_instance(seed, seed % 2 ? Variant::connected : Variant::plain);
        auto norm = normalize(inst);
        if (norm.kind == NormalizeKind::normalized)
            CHECK(equivalence_check(inst, norm.instance));
        if (! brute_force_min_cost(inst).feasible || inst.graph.empty())
            continue;
        auto corrupted = inst;
        auto v = inst.graph.vertices().front();
        corrupted.delta[v] = inst.degree(v) + 1;
        ++controls;
        caught += equivalence_check(inst, corrupted) ? 0 : 1;
    }
    CHECK(controls > 50);
    CHECK(2 * caught > controls);
}
