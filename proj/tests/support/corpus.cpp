#include "support/corpus.hpp"

#include "degedit/normalize.hpp"

namespace degedit::corpus {

namespace {

auto pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) -> std::int64_t
{
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

auto chance(std::mt19937_64& rng, int percent) -> bool
{
    return static_cast<int>(rng() % 100) < percent;
}

auto hub_attempt(std::mt19937_64& rng) -> Instance
{
    Instance inst;
    inst.variant = Variant::connected;
    inst.k_v = pick(rng, 0, 2);
    inst.k_e = pick(rng, 0, 3 - inst.k_v);
    inst.cost_budget = pick(rng, 0, 6);
    auto hubs = pick(rng, 2, 3);
    auto spokes = pick(rng, 2, 7);
    Vertex id = 1;
    for (std::int64_t i = 0; i < hubs + spokes; ++i)
        inst.add_vertex(id++, 0, pick(rng, 1, 2), pick(rng, 0, 2));
    for (std::int64_t s = 0; s < spokes; ++s) {
        Vertex x = hubs + 1 + s;
        inst.add_edge(1, x, pick(rng, 1, 2), pick(rng, 0, 2));
        if (rng() % 4 != 0)
            inst.add_edge(2, x, pick(rng, 1, 2), pick(rng, 0, 2));
        if (hubs == 3 && s < 2)
            inst.add_edge(3, x, pick(rng, 1, 2), pick(rng, 0, 2));
        if (s > 0 && rng() % 3 == 0)
            inst.add_edge(x - 1, x, pick(rng, 1, 2), pick(rng, 0, 2));
    }
    if (hubs == 3 && rng() % 2)
        inst.add_edge(1, 3, 1, 1);
    auto pendants = pick(rng, 0, 3);
    for (std::int64_t i = 0; i < pendants; ++i) {
        auto p = id++;
        inst.add_vertex(p, 0, pick(rng, 1, 2), pick(rng, 0, 2));
        inst.add_edge(pick(rng, 1, hubs), p, pick(rng, 1, 2), pick(rng, 0, 2));
    }

    VertexSet u;
    EdgeSet d;
    std::int64_t wu = 0, we = 0;
    for (auto v : inst.graph.vertices())
        if (rng() % 4 == 0 && wu + inst.weight_v[v] <= inst.k_v) {
            u.insert(v);
            wu += inst.weight_v[v];
        }
    for (auto e : inst.graph.edges())
        if (! u.contains(e.u) && ! u.contains(e.v) && rng() % 4 == 0 && we + inst.weight_e[e] <= inst.k_e) {
            d.insert(e);
            we += inst.weight_e[e];
        }
    for (auto v : inst.graph.vertices()) {
        std::int64_t kept = 0;
        for (auto x : inst.graph.neighbors(v))
            kept += (u.contains(x) || d.contains(make_edge(x, v))) ? 0 : 1;
        inst.delta[v] = (u.contains(v) || rng() % 6 == 0) ? pick(rng, 0, inst.degree(v)) : kept;
    }
    return inst;
}

} // namespace

auto draw_options(std::mt19937_64& rng, Variant variant, std::size_t n_max, bool raw) -> GeneratorOptions
{
    GeneratorOptions o;
    o.n = 1 + rng() % n_max;
    auto total = pick(rng, 0, 3);
    o.k_v = pick(rng, 0, total);
    o.k_e = total - o.k_v;
    o.cost_budget = pick(rng, 0, 6);
    o.variant = variant;
    o.seed = rng();
    o.raw = raw;
    return o;
}

auto generated_suite(Variant variant, std::size_t count, std::uint64_t base_seed, std::size_t n_max, bool raw)
    -> std::vector<Instance>
{
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(base_seed + i);
        out.push_back(generate_random_planar_instance(draw_options(rng, variant, n_max, raw)));
    }
    return out;
}

auto window_suite(Variant variant, std::size_t count, std::uint64_t base_seed, std::size_t n_max)
    -> std::vector<Instance>
{
    std::vector<Instance> out;
    for (auto seed = base_seed; out.size() < count; ++seed) {
        std::mt19937_64 rng(seed);
        auto norm = normalize(generate_random_planar_instance(draw_options(rng, variant, n_max, false)));
        if (norm.kind == NormalizeKind::normalized)
            out.push_back(std::move(norm.instance));
    }
    return out;
}

auto hub_instance(std::mt19937_64& rng) -> Instance
{
    for (;;) {
        auto inst = hub_attempt(rng);
        if (is_planar(inst.graph))
            return inst;
    }
}

auto sample_candidates(const Instance& inst, std::mt19937_64& rng, int vertex_percent, int edge_percent,
    std::int64_t always_degree) -> CandidateSets
{
    CandidateSets cs;
    auto report = brute_force_min_cost(inst, roomy);
    if (report.feasible) {
        const auto& sol = report.optima[rng() % report.optima.size()];
        cs.w = sol.vertices;
        cs.l = sol.edges;
    }
    for (auto v : inst.graph.vertices())
        if ((always_degree >= 0 && inst.degree(v) >= always_degree) || chance(rng, vertex_percent))
            cs.w.insert(v);
    for (auto e : inst.graph.edges())
        if (chance(rng, edge_percent))
            cs.l.insert(e);
    return cs;
}

} // namespace degedit::corpus
