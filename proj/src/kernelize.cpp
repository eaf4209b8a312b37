#include "degedit/kernelize.hpp"

#include "degedit/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace degedit {

auto CandidateSets::any_skipped() const -> bool
{
    return std::find(skipped.begin(), skipped.end(), true) != skipped.end();
}

namespace {

// Keeps the connected-variant family enumeration bounded; larger boundaries skip the part.
constexpr std::size_t max_cover_families = 4096;

auto closed_part(const ProtrusionPart& part) -> VertexSet
{
    auto closed = part.vertices;
    closed.insert(part.neighbors.begin(), part.neighbors.end());
    return closed;
}

template <typename T>
auto pick(const std::vector<T>& items, std::uint64_t mask) -> std::set<T>
{
    std::set<T> out;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (mask >> i & 1u)
            out.insert(items[i]);
    return out;
}

auto binomial(std::size_t n, std::size_t k) -> double
{
    double r = 1;
    for (std::size_t i = 0; i < k; ++i)
        r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

auto cover_count(std::size_t r) -> double
{
    if (r == 0)
        return 2;
    if (r >= 16)
        return 1e300;
    double total = 0;
    auto subsets = (std::size_t{1} << r) - 1;
    for (std::size_t s = 0; s <= r && s <= subsets; ++s)
        total += binomial(subsets, s);
    return total;
}

// Degree in F plus the number of gadget blocks containing v.
auto gadget_degree(const Graph& f, const std::optional<std::vector<VertexSet>>& cover, Vertex v) -> std::int64_t
{
    auto d = f.degree(v);
    if (cover)
        for (const auto& block : *cover)
            d += block.contains(v) ? 1 : 0;
    return d;
}

auto init_sets(const Instance& inst, const ProtrusionDecomposition& pd) -> CandidateSets
{
    CandidateSets cs;
    cs.w = pd.r0;
    cs.l = inner_edges(inst.graph, pd.r0);
    cs.w_parts.resize(pd.parts.size());
    cs.l_parts.resize(pd.parts.size());
    cs.skipped.assign(pd.parts.size(), false);
    return cs;
}

auto fall_back(CandidateSets& cs, const Instance& inst, const ProtrusionPart& part, std::size_t i) -> void
{
    cs.skipped[i] = true;
    cs.w_parts[i] = part.vertices;
    cs.l_parts[i] = incident_edges(inst.graph, part.vertices);
}

auto finish_sets(CandidateSets& cs) -> void
{
    for (std::size_t i = 0; i < cs.w_parts.size(); ++i) {
        cs.w.insert(cs.w_parts[i].begin(), cs.w_parts[i].end());
        cs.l.insert(cs.l_parts[i].begin(), cs.l_parts[i].end());
    }
}

auto contribute(CandidateSets& cs, std::size_t i, const ProtrusionPart& part, const Solution& sol) -> void
{
    for (auto v : sol.vertices)
        if (part.vertices.contains(v))
            cs.w_parts[i].insert(v);
    for (const auto& e : sol.edges)
        if (part.vertices.contains(e.u) || part.vertices.contains(e.v))
            cs.l_parts[i].insert(e);
}

} // namespace

auto enumerate_covers(const VertexSet& remnant) -> std::vector<std::vector<VertexSet>>
{
    std::vector<Vertex> items(remnant.begin(), remnant.end());
    const auto r = items.size();
    if (r == 0)
        return {{}, {VertexSet{}}};
    if (cover_count(r) > static_cast<double>(max_cover_families))
        throw CapacityError("boundary remnant of " + std::to_string(r) + " vertices has too many families");
    std::vector<VertexSet> subsets;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask)
        subsets.push_back(pick(items, mask));

    std::vector<std::vector<VertexSet>> out;
    std::vector<std::size_t> chosen;
    auto extend = [&](auto&& self, std::size_t from, std::size_t size) -> void {
        if (chosen.size() == size) {
            std::vector<VertexSet> family;
            for (auto i : chosen)
                family.push_back(subsets[i]);
            out.push_back(std::move(family));
            return;
        }
        for (auto i = from; i < subsets.size(); ++i) {
            chosen.push_back(i);
            self(self, i + 1, size);
            chosen.pop_back();
        }
    };
    for (std::size_t size = 0; size <= r; ++size)
        extend(extend, 0, size);
    return out;
}

auto enumerate_configs(const Instance& inst, const ProtrusionPart& part, std::int64_t alpha_cap)
    -> std::optional<std::vector<BoundaryConfig>>
{
    if (static_cast<std::int64_t>(part.neighbors.size()) > alpha_cap)
        return std::nullopt;
    const bool connected = inst.variant == Variant::connected;
    const auto reach = inst.k_v + inst.k_e;
    const auto base = induced_subgraph(inst.graph, closed_part(part));
    const std::vector<Vertex> bnd(part.neighbors.begin(), part.neighbors.end());

    std::vector<BoundaryConfig> out;
    for (std::uint64_t xmask = 0; xmask < (std::uint64_t{1} << bnd.size()); ++xmask) {
        auto x = pick(bnd, xmask);
        VertexSet remnant;
        for (auto v : bnd)
            if (! x.contains(v))
                remnant.insert(v);
        auto redges_set = inner_edges(base, remnant);
        const std::vector<Edge> redges(redges_set.begin(), redges_set.end());

        std::vector<std::optional<std::vector<VertexSet>>> covers;
        if (connected) {
            auto families = enumerate_covers(remnant);
            if (families.empty())
                continue;
            covers.assign(families.begin(), families.end());
        } else {
            covers.emplace_back(std::nullopt);
        }

        for (std::uint64_t ymask = 0; ymask < (std::uint64_t{1} << redges.size()); ++ymask) {
            auto y = pick(redges, ymask);
            auto f = base;
            for (auto v : x)
                f.remove_vertex(v);
            for (const auto& e : y)
                f.remove_edge(e);

            for (const auto& cover : covers) {
                const std::vector<Vertex> kept(remnant.begin(), remnant.end());
                std::vector<std::int64_t> lo, hi;
                for (auto v : kept) {
                    hi.push_back(gadget_degree(f, cover, v));
                    lo.push_back(hi.back() - std::min(reach, f.degree(v)));
                }
                auto target = lo;
                for (;;) {
                    for (std::int64_t h_v = 0; h_v <= inst.k_v; ++h_v)
                        for (std::int64_t h_e = 0; h_e <= inst.k_e; ++h_e) {
                            BoundaryConfig q{h_v, h_e, x, y, {}, cover};
                            for (std::size_t j = 0; j < kept.size(); ++j)
                                q.delta_prime[kept[j]] = target[j];
                            out.push_back(std::move(q));
                        }
                    // Next target vector, last position fastest.
                    auto j = kept.size();
                    while (j > 0 && target[j - 1] == hi[j - 1]) {
                        target[j - 1] = lo[j - 1];
                        --j;
                    }
                    if (j == 0)
                        break;
                    ++target[j - 1];
                }
            }
        }
    }
    return out;
}

auto build_boundary_instance(const Instance& inst, const ProtrusionPart& part, const BoundaryConfig& q)
    -> std::optional<Instance>
{
    const auto& bnd = part.neighbors;
    for (auto v : q.x)
        if (! bnd.contains(v))
            throw PreconditionError("X contains non-boundary vertex " + std::to_string(v));
    for (const auto& e : q.y)
        if (! bnd.contains(e.u) || ! bnd.contains(e.v) || q.x.contains(e.u) || q.x.contains(e.v))
            throw PreconditionError("Y contains edge " + to_string(e) + " outside the kept boundary");

    Instance out;
    out.k_v = q.h_v;
    out.k_e = q.h_e;
    out.cost_budget = inst.cost_budget;
    out.variant = inst.variant;
    const auto closed = closed_part(part);
    for (auto v : closed) {
        if (q.x.contains(v))
            continue;
        if (bnd.contains(v)) {
            auto it = q.delta_prime.find(v);
            if (it == q.delta_prime.end())
                throw PreconditionError("no boundary target for vertex " + std::to_string(v));
            out.add_vertex(v, it->second, inst.k_v + 1, inst.cost_v.at(v));
        } else {
            out.add_vertex(v, inst.delta.at(v), inst.weight_v.at(v), inst.cost_v.at(v));
        }
    }
    for (const auto& e : inner_edges(inst.graph, closed)) {
        if (q.x.contains(e.u) || q.x.contains(e.v) || q.y.contains(e))
            continue;
        bool rim = bnd.contains(e.u) && bnd.contains(e.v);
        out.add_edge(e.u, e.v, rim ? inst.k_e + 1 : inst.weight_e.at(e), inst.cost_e.at(e));
    }
    if (q.cover) {
        auto z = inst.graph.next_id();
        for (const auto& block : *q.cover) {
            out.add_vertex(z, static_cast<std::int64_t>(block.size()), inst.k_v + 1, 0);
            for (auto x : block)
                out.add_edge(z, x, inst.k_e + 1, 0);
            ++z;
        }
        if (! is_planar(out.graph))
            return std::nullopt;
    }
    return out;
}

auto compute_candidate_sets_reference(const Instance& inst, const ProtrusionDecomposition& pd,
    const CandidateOptions& options) -> CandidateSets
{
    auto cs = init_sets(inst, pd);
    for (std::size_t i = 0; i < pd.parts.size(); ++i) {
        const auto& part = pd.parts[i];
        try {
            auto configs = enumerate_configs(inst, part, options.alpha_cap);
            if (! configs) {
                fall_back(cs, inst, part, i);
                continue;
            }
            for (const auto& q : *configs) {
                auto sub = build_boundary_instance(inst, part, q);
                if (! sub)
                    continue;
                auto profile = solve_tw_profile(*sub, to_nice(decompose(sub->graph)), options.dp);
                if (auto best = best_within(profile, q.h_v, q.h_e))
                    contribute(cs, i, part, *best);
            }
        } catch (const CapacityError&) {
            fall_back(cs, inst, part, i);
        }
    }
    finish_sets(cs);
    return cs;
}

namespace {

// G[N[R_i]] with the boundary free: target 0, weight 0 and cost 0 on boundary vertices and
// on edges between them, so weight usage and cost are those of I_q for every X and Y.
auto pinned_instance(const Instance& inst, const ProtrusionPart& part) -> Instance
{
    Instance out;
    out.k_v = inst.k_v;
    out.k_e = inst.k_e;
    out.cost_budget = inst.cost_budget;
    out.variant = inst.variant;
    const auto closed = closed_part(part);
    for (auto v : closed) {
        if (part.neighbors.contains(v))
            out.add_vertex(v, 0, 0, 0);
        else
            out.add_vertex(v, inst.delta.at(v), inst.weight_v.at(v), inst.cost_v.at(v));
    }
    for (const auto& e : inner_edges(inst.graph, closed)) {
        if (part.neighbors.contains(e.u) && part.neighbors.contains(e.v))
            out.add_edge(e.u, e.v, 0, 0);
        else
            out.add_edge(e.u, e.v, inst.weight_e.at(e), inst.cost_e.at(e));
    }
    return out;
}

// Nice decomposition of G[N[R_i]] whose last node has the boundary as its bag.
auto pinned_decomposition(const ProtrusionPart& part) -> NiceTreeDecomposition
{
    auto td = part.td;
    for (auto& bag : td.bags)
        bag.insert(part.neighbors.begin(), part.neighbors.end());
    td.bags.push_back(part.neighbors);
    if (td.bags.size() > 1)
        td.tree_edges.emplace_back(0, td.bags.size() - 1);
    auto ntd = to_nice(td);
    while (ntd.nodes.size() > 1 && ntd.nodes.back().bag != part.neighbors)
        ntd.nodes.pop_back();
    return ntd;
}

// Whether the blocks of the kept boundary plus gadget vertices for `cover` form one component.
auto joins_up(const BoundaryEntry& entry, const std::vector<Vertex>& bag, const std::vector<VertexSet>& cover) -> bool
{
    std::map<std::int32_t, std::size_t> block_index;
    std::map<Vertex, std::size_t> block_of;
    for (std::size_t j = 0; j < bag.size(); ++j)
        if (entry.label[j] != 0) {
            auto [it, _] = block_index.try_emplace(entry.label[j], block_index.size());
            block_of[bag[j]] = it->second;
        }
    if (block_index.empty())
        return entry.closed ? cover.empty() : cover.size() <= 1;
    if (entry.closed)
        return false;
    std::vector<std::size_t> parent(block_index.size());
    for (std::size_t j = 0; j < parent.size(); ++j)
        parent[j] = j;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x];
        return x;
    };
    for (const auto& block : cover) {
        std::optional<std::size_t> first;
        for (auto v : block) {
            auto it = block_of.find(v);
            if (it == block_of.end())
                return false;
            auto r = find(it->second);
            if (! first)
                first = r;
            else if (r != *first)
                parent[r] = *first;
        }
    }
    auto root = find(0);
    for (std::size_t j = 1; j < parent.size(); ++j)
        if (find(j) != root)
            return false;
    return true;
}

auto part_candidates(const Instance& inst, const ProtrusionPart& part, const CandidateOptions& options,
    CandidateSets& cs, std::size_t i) -> void
{
    const bool connected = inst.variant == Variant::connected;
    if (static_cast<std::int64_t>(part.neighbors.size()) > options.alpha_cap
        || (connected && cover_count(part.neighbors.size()) > static_cast<double>(max_cover_families))) {
        fall_back(cs, inst, part, i);
        return;
    }
    const auto pinned = pinned_instance(inst, part);
    const auto table = solve_tw_boundary(pinned, pinned_decomposition(part), options.dp);
    const auto& bag = table.bag;

    // Group entries by configuration: (X mask, Y bits, boundary losses, family index).
    using Group = std::tuple<std::uint64_t, std::uint64_t, std::vector<std::int32_t>, std::size_t>;
    std::map<Group, std::vector<const BoundaryEntry*>> groups;
    std::map<std::uint64_t, std::vector<std::vector<VertexSet>>> families;
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::size_t>, bool> planar;
    const auto base = induced_subgraph(inst.graph, closed_part(part));

    for (const auto& entry : table.entries) {
        if (entry.solution.cost > inst.cost_budget)
            continue;
        std::uint64_t xmask = 0;
        VertexSet remnant;
        auto losses = entry.gamma;
        for (std::size_t j = 0; j < bag.size(); ++j) {
            if (entry.label[j] == 0) {
                xmask |= std::uint64_t{1} << j;
                losses[j] = 0;
            } else {
                remnant.insert(bag[j]);
            }
        }
        if (! connected) {
            groups[{xmask, entry.y, losses, 0}].push_back(&entry);
            continue;
        }
        auto fit = families.find(xmask);
        if (fit == families.end())
            fit = families.emplace(xmask, enumerate_covers(remnant)).first;
        for (std::size_t c = 0; c < fit->second.size(); ++c) {
            const auto& cover = fit->second[c];
            if (! joins_up(entry, bag, cover))
                continue;
            auto key = std::make_tuple(xmask, entry.y, c);
            auto pit = planar.find(key);
            if (pit == planar.end()) {
                auto f = base;
                for (std::size_t j = 0; j < bag.size(); ++j)
                    if (xmask >> j & 1u)
                        f.remove_vertex(bag[j]);
                for (std::size_t j = 0; j < table.edges.size(); ++j)
                    if (entry.y >> j & 1u)
                        f.remove_edge(table.edges[j]);
                for (const auto& block : cover) {
                    auto z = f.mint_vertex();
                    for (auto x : block)
                        f.add_edge(z, x);
                }
                pit = planar.emplace(key, is_planar(f)).first;
            }
            if (pit->second)
                groups[{xmask, entry.y, losses, c}].push_back(&entry);
        }
    }

    for (const auto& [_, members] : groups)
        for (std::int64_t h_v = 0; h_v <= inst.k_v; ++h_v)
            for (std::int64_t h_e = 0; h_e <= inst.k_e; ++h_e) {
                const BoundaryEntry* best = nullptr;
                for (const auto* entry : members)
                    if (entry->wu <= h_v && entry->we <= h_e
                        && (best == nullptr || solution_less(entry->solution, best->solution)))
                        best = entry;
                if (best != nullptr)
                    contribute(cs, i, part, best->solution);
            }
}

} // namespace

auto compute_candidate_sets(const Instance& inst, const ProtrusionDecomposition& pd, const CandidateOptions& options)
    -> CandidateSets
{
    auto cs = init_sets(inst, pd);
    for (std::size_t i = 0; i < pd.parts.size(); ++i) {
        try {
            part_candidates(inst, pd.parts[i], options, cs, i);
        } catch (const CapacityError&) {
            cs.w_parts[i].clear();
            cs.l_parts[i].clear();
            fall_back(cs, inst, pd.parts[i], i);
        }
    }
    finish_sets(cs);
    return cs;
}

auto to_string(KernelRule rule) -> std::string
{
    switch (rule) {
    case KernelRule::set_adjustment: return "set-adjustment";
    case KernelRule::weight_adjustment: return "weight-adjustment";
    case KernelRule::s_reduction: return "s-reduction";
    case KernelRule::t_reduction: return "t-reduction";
    case KernelRule::twin_reduction: return "twin-reduction";
    case KernelRule::set_adjustment_connected: return "set-adjustment-connected";
    case KernelRule::vertex_deletion_connected: return "vertex-deletion-connected";
    case KernelRule::s_neighbour: return "s-neighbour";
    case KernelRule::s_contraction_1: return "s-contraction-1";
    case KernelRule::stopping: return "stopping";
    case KernelRule::weight_adjustment_connected: return "weight-adjustment-connected";
    case KernelRule::s_deletion: return "s-deletion";
    case KernelRule::s_contraction_2: return "s-contraction-2";
    case KernelRule::t_deletion: return "t-deletion";
    case KernelRule::t_contraction: return "t-contraction";
    }
    throw std::logic_error("unknown kernel rule");
}

auto all_kernel_rules() -> std::vector<KernelRule>
{
    return {KernelRule::set_adjustment, KernelRule::weight_adjustment, KernelRule::s_reduction,
        KernelRule::t_reduction, KernelRule::twin_reduction, KernelRule::set_adjustment_connected,
        KernelRule::vertex_deletion_connected, KernelRule::s_neighbour, KernelRule::s_contraction_1,
        KernelRule::stopping, KernelRule::weight_adjustment_connected, KernelRule::s_deletion,
        KernelRule::s_contraction_2, KernelRule::t_deletion, KernelRule::t_contraction};
}

auto rule_variant(KernelRule rule) -> Variant
{
    switch (rule) {
    case KernelRule::set_adjustment:
    case KernelRule::weight_adjustment:
    case KernelRule::s_reduction:
    case KernelRule::t_reduction:
    case KernelRule::twin_reduction: return Variant::plain;
    default: return Variant::connected;
    }
}

auto to_string(KernelKind kind) -> std::string
{
    switch (kind) {
    case KernelKind::decided_yes: return "decided-yes";
    case KernelKind::decided_no: return "decided-no";
    case KernelKind::kernel: return "kernel";
    }
    throw std::logic_error("unknown kernel kind");
}

auto SizeReport::describe() const -> std::string
{
    return "n=" + std::to_string(vertices) + " W'=" + std::to_string(w_prime) + " T'=" + std::to_string(t_prime)
        + " T0=" + std::to_string(t0) + " T1=" + std::to_string(t1) + " T2=" + std::to_string(t2)
        + " T3+=" + std::to_string(t3) + " bound=" + std::to_string(bound) + (lemma_ok ? "" : " lemma-violated")
        + (within ? "" : " exceeded");
}

auto trivial_instance(bool yes, Variant variant) -> Instance
{
    Instance out;
    out.variant = variant;
    if (! yes)
        out.add_vertex(1, 1, 1, 0);
    return out;
}

namespace {

auto ids(const VertexSet& xs) -> std::string
{
    std::string out;
    for (auto v : xs)
        out += (out.empty() ? "" : ",") + std::to_string(v);
    return "{" + out + "}";
}

/// Mutable kernel-phase state; each rule method applies the rule once at its first site.
class Reducer
{
public:
    Reducer(KernelState state, const InstanceObserver& observer)
        : st_(std::move(state))
        , observer_(observer)
    {
    }

    auto apply(KernelRule rule) -> StepKind
    {
        switch (rule) {
        case KernelRule::set_adjustment: return set_adjustment();
        case KernelRule::weight_adjustment:
        case KernelRule::weight_adjustment_connected: return weight_adjustment(rule);
        case KernelRule::s_reduction: return s_reduction();
        case KernelRule::t_reduction: return t_reduction();
        case KernelRule::twin_reduction: return twin_reduction();
        case KernelRule::set_adjustment_connected: return set_adjustment_connected();
        case KernelRule::vertex_deletion_connected: return vertex_deletion_connected();
        case KernelRule::s_neighbour: return s_neighbour();
        case KernelRule::s_contraction_1: return s_contraction_1();
        case KernelRule::stopping: return stopping();
        case KernelRule::s_deletion: return s_deletion();
        case KernelRule::s_contraction_2: return s_contraction_2();
        case KernelRule::t_deletion: return t_deletion();
        case KernelRule::t_contraction: return t_contraction();
        }
        throw std::logic_error("unknown kernel rule");
    }

    auto state() const -> const KernelState& { return st_; }
    auto log() const -> const std::vector<TraceEntry>& { return log_; }
    auto witness() const -> const std::optional<Solution>& { return witness_; }

    auto size_report() const -> SizeReport;

private:
    auto g() const -> const Graph& { return st_.instance.graph; }
    auto inst() -> Instance& { return st_.instance; }

    auto note(KernelRule rule, std::vector<Vertex> site, std::string detail) -> void
    {
        log_.push_back({to_string(rule), std::move(site), std::move(detail)});
        if (observer_)
            observer_(st_.instance, log_.back());
    }

    auto decide_no(KernelRule rule, std::vector<Vertex> site, std::string detail = "") -> StepKind
    {
        note(rule, std::move(site), detail + (detail.empty() ? "" : " ") + "answer=no");
        return StepKind::decided_no;
    }

    auto in_s(Vertex v) const -> bool
    {
        return ! st_.w.contains(v) && g().degree(v) == st_.instance.delta.at(v);
    }

    auto in_t(Vertex v) const -> bool
    {
        return ! st_.w.contains(v) && g().degree(v) > st_.instance.delta.at(v);
    }

    auto l_vertices() const -> VertexSet
    {
        VertexSet out;
        for (const auto& e : st_.l) {
            out.insert(e.u);
            out.insert(e.v);
        }
        return out;
    }

    auto t_prime() const -> VertexSet
    {
        auto vl = l_vertices();
        VertexSet out;
        for (const auto& [v, _] : g().adjacency())
            if (in_t(v) && ! vl.contains(v))
                out.insert(v);
        return out;
    }

    auto drop_vertex(Vertex v) -> void
    {
        for (const auto& e : g().incident_edges(v))
            st_.l.erase(e);
        st_.w.erase(v);
        inst().remove_vertex(v);
    }

    auto drop_edge(const Edge& e) -> void
    {
        st_.l.erase(e);
        inst().remove_edge(e);
    }

    auto clamp_decrement(Vertex x) -> void
    {
        auto& d = inst().delta[x];
        d = std::max<std::int64_t>(0, d - 1);
    }

    // Removes v and lowers the targets of its neighbours; false when one drops below zero.
    auto remove_lowering(Vertex v) -> bool
    {
        auto nbrs = g().neighbors(v);
        drop_vertex(v);
        bool ok = true;
        for (auto x : nbrs)
            ok = --inst().delta[x] >= 0 && ok;
        return ok;
    }

    // Replaces a and b by one new vertex adjacent to their other neighbours. Edges keep the
    // attributes of the edge they came from (the one at `a` when both exist) and L-membership.
    auto merge(Vertex a, Vertex b, bool fresh_edges) -> Vertex
    {
        struct Carried
        {
            std::int64_t weight, cost;
            bool in_l;
        };
        std::map<Vertex, Carried> carried;
        for (auto src : {b, a})
            for (auto x : g().neighbors(src)) {
                if (x == a || x == b)
                    continue;
                auto e = make_edge(src, x);
                carried[x] = {st_.instance.weight_e.at(e), st_.instance.cost_e.at(e), st_.l.contains(e)};
            }
        drop_vertex(a);
        drop_vertex(b);
        auto z = g().next_id();
        inst().add_vertex(z, 0, inst().k_v + 1, 0);
        for (const auto& [x, c] : carried) {
            if (fresh_edges) {
                inst().add_edge(z, x, inst().k_e + 1, 0);
            } else {
                inst().add_edge(z, x, c.weight, c.cost);
                if (c.in_l)
                    st_.l.insert(make_edge(z, x));
            }
        }
        st_.lift.record_contraction(z, a, b);
        return z;
    }

    auto set_adjustment() -> StepKind
    {
        for (const auto& [v, nbrs] : g().adjacency()) {
            if (! in_s(v))
                continue;
            VertexSet out;
            for (auto u : nbrs)
                if (st_.w.contains(u))
                    out.insert(u);
            std::size_t dropped = 0;
            for (const auto& e : g().incident_edges(v))
                dropped += st_.l.erase(e);
            if (out.empty() && dropped == 0)
                continue;
            for (auto u : out)
                st_.w.erase(u);
            note(KernelRule::set_adjustment, {v}, "W-=" + ids(out) + " L-=" + std::to_string(dropped));
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto weight_adjustment(KernelRule rule) -> StepKind
    {
        std::size_t vs = 0, es = 0;
        for (auto& [v, w] : inst().weight_v)
            if (! st_.w.contains(v) && w != inst().k_v + 1) {
                w = inst().k_v + 1;
                ++vs;
            }
        for (auto& [e, w] : inst().weight_e)
            if (! st_.l.contains(e) && w != inst().k_e + 1) {
                w = inst().k_e + 1;
                ++es;
            }
        if (vs + es == 0)
            return StepKind::not_applicable;
        note(rule, {}, "vertices=" + std::to_string(vs) + " edges=" + std::to_string(es));
        return StepKind::changed;
    }

    auto s_reduction() -> StepKind
    {
        for (const auto& [v, _] : g().adjacency()) {
            if (! in_s(v))
                continue;
            if (! remove_lowering(v))
                return decide_no(KernelRule::s_reduction, {v}, "delta<0");
            note(KernelRule::s_reduction, {v}, "");
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto t_reduction() -> StepKind
    {
        auto tp = t_prime();
        for (const auto& e : g().edges()) {
            if (! tp.contains(e.u) || ! tp.contains(e.v))
                continue;
            drop_edge(e);
            auto du = --inst().delta[e.u];
            auto dv = --inst().delta[e.v];
            if (du < 0 || dv < 0)
                return decide_no(KernelRule::t_reduction, {e.u, e.v}, "delta<0");
            note(KernelRule::t_reduction, {e.u, e.v}, "");
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto twin_reduction() -> StepKind
    {
        auto tp = t_prime();
        for (auto u : tp)
            for (auto v : tp) {
                if (v <= u || g().neighbors(u) != g().neighbors(v))
                    continue;
                if (st_.instance.delta.at(u) != st_.instance.delta.at(v))
                    return decide_no(KernelRule::twin_reduction, {u, v}, "delta differs");
                auto nbrs = g().neighbors(u);
                drop_vertex(v);
                for (auto x : nbrs)
                    clamp_decrement(x);
                note(KernelRule::twin_reduction, {u, v}, "");
                return StepKind::changed;
            }
        return StepKind::not_applicable;
    }

    auto set_adjustment_connected() -> StepKind
    {
        for (const auto& [v, nbrs] : g().adjacency()) {
            if (! in_s(v))
                continue;
            VertexSet out;
            for (auto u : nbrs)
                if (st_.w.contains(u))
                    out.insert(u);
            std::size_t dropped = 0;
            for (const auto& e : g().incident_edges(v))
                dropped += st_.l.erase(e);
            if (out.empty() && dropped == 0)
                continue;
            for (auto u : out)
                st_.w.erase(u);
            note(KernelRule::set_adjustment_connected, {v}, "W-=" + ids(out) + " L-=" + std::to_string(dropped));
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto vertex_deletion_connected() -> StepKind
    {
        constexpr auto rule = KernelRule::vertex_deletion_connected;
        for (const auto& [v, nbrs] : g().adjacency()) {
            if (st_.w.contains(v))
                continue;
            auto surplus = st_.instance.surplus(v);
            // A vertex outside W below its target can never be repaired.
            if (surplus < 0)
                return decide_no(rule, {v}, "deficit");
            if (surplus == 0)
                continue;
            bool touches_l = false;
            for (const auto& e : g().incident_edges(v))
                touches_l = touches_l || st_.l.contains(e);
            if (touches_l)
                continue;
            VertexSet avail;
            for (auto u : nbrs)
                if (st_.w.contains(u))
                    avail.insert(u);
            auto have = static_cast<std::int64_t>(avail.size());
            if (have < surplus)
                return decide_no(rule, {v}, "short=" + std::to_string(surplus - have));
            if (have > surplus)
                continue;
            std::vector<Vertex> site{v};
            for (auto u : avail) {
                inst().k_v -= st_.instance.weight_v.at(u);
                inst().cost_budget -= st_.instance.cost_v.at(u);
                drop_vertex(u);
                st_.lift.record_forced_deletion(u);
                site.push_back(u);
            }
            auto detail = "k_v=" + std::to_string(st_.instance.k_v) + " C=" + std::to_string(st_.instance.cost_budget);
            if (st_.instance.k_v < 0 || st_.instance.cost_budget < 0)
                return decide_no(rule, std::move(site), detail);
            note(rule, std::move(site), detail);
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto s_neighbour() -> StepKind
    {
        for (const auto& [v, nbrs] : g().adjacency()) {
            std::int64_t k = 0;
            for (auto u : nbrs)
                k += in_s(u) ? 1 : 0;
            if (st_.instance.delta.at(v) < k)
                return decide_no(KernelRule::s_neighbour, {v}, "k=" + std::to_string(k));
        }
        return StepKind::not_applicable;
    }

    auto s_contraction_1() -> StepKind
    {
        for (const auto& [u, nbrs] : g().adjacency()) {
            if (! in_s(u))
                continue;
            for (auto v : nbrs) {
                if (! in_s(v))
                    continue;
                for (auto x : g().neighbors(u))
                    if (x != v && g().adjacent(x, v))
                        --inst().delta[x];
                auto z = merge(u, v, true);
                inst().delta[z] = g().degree(z);
                note(KernelRule::s_contraction_1, {u, v, z}, "delta=" + std::to_string(st_.instance.delta.at(z)));
                return StepKind::changed;
            }
        }
        return StepKind::not_applicable;
    }

    auto stopping() -> StepKind
    {
        constexpr auto rule = KernelRule::stopping;
        std::size_t holding = 0;
        for (const auto& comp : connected_components(g()))
            if (std::any_of(comp.begin(), comp.end(), [&](Vertex v) { return ! st_.w.contains(v); }))
                ++holding;
        if (holding >= 2)
            return decide_no(rule, {}, "components=" + std::to_string(holding));
        for (const auto& [v, nbrs] : g().adjacency()) {
            if (st_.w.contains(v) || ! nbrs.empty())
                continue;
            auto rest = g().vertex_set();
            rest.erase(v);
            if (st_.instance.delta.at(v) == 0 && st_.instance.vertex_weight(rest) <= st_.instance.k_v
                && st_.instance.vertex_cost(rest) <= st_.instance.cost_budget) {
                witness_ = Solution{rest, {}, st_.instance.vertex_cost(rest)};
                note(rule, {v}, "answer=yes");
                return StepKind::decided_yes;
            }
            return decide_no(rule, {v});
        }
        return StepKind::not_applicable;
    }

    auto s_deletion() -> StepKind
    {
        constexpr auto rule = KernelRule::s_deletion;
        for (const auto& [v, nbrs] : g().adjacency()) {
            if (! in_s(v) || nbrs.empty())
                continue;
            std::string bullet;
            std::vector<Vertex> site{v};
            if (nbrs.size() == 1) {
                bullet = "1";
            } else if (auto e = make_edge(*nbrs.begin(), *nbrs.rbegin());
                       nbrs.size() == 2 && g().has_edge(e) && ! st_.l.contains(e)) {
                bullet = "2";
            } else {
                for (const auto& [u, unbrs] : g().adjacency())
                    if (u != v && in_s(u) && std::includes(unbrs.begin(), unbrs.end(), nbrs.begin(), nbrs.end())) {
                        bullet = "3";
                        site.push_back(u);
                        break;
                    }
            }
            if (bullet.empty())
                continue;
            if (! remove_lowering(v))
                return decide_no(rule, std::move(site), "bullet=" + bullet + " delta<0");
            note(rule, std::move(site), "bullet=" + bullet);
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto s_contraction_2() -> StepKind
    {
        auto vl = l_vertices();
        for (const auto& [v, nbrs] : g().adjacency()) {
            if (! in_s(v) || nbrs.empty())
                continue;
            if (nbrs.size() == 2 && vl.contains(*nbrs.begin()) && vl.contains(*nbrs.rbegin()))
                continue;
            const auto u = *nbrs.begin();
            const auto shift = st_.instance.surplus(u);
            std::vector<Vertex> site{v, u};
            VertexSet common;
            for (auto x : nbrs)
                if (x != u && g().adjacent(u, x))
                    common.insert(x);
            for (auto x : common) {
                drop_edge(make_edge(v, x));
                auto z = g().next_id();
                inst().add_vertex(z, 2, inst().k_v + 1, 0);
                inst().add_edge(z, v, inst().k_e + 1, 0);
                inst().add_edge(z, x, inst().k_e + 1, 0);
                site.push_back(z);
            }
            auto y = merge(u, v, false);
            inst().delta[y] = g().degree(y) - shift;
            site.push_back(y);
            note(KernelRule::s_contraction_2, std::move(site), "delta=" + std::to_string(st_.instance.delta.at(y)));
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto outside(const VertexSet& tp, Vertex v) const -> VertexSet
    {
        VertexSet out;
        for (auto x : g().neighbors(v))
            if (! tp.contains(x))
                out.insert(x);
        return out;
    }

    auto t_deletion() -> StepKind
    {
        auto tp = t_prime();
        for (auto v : tp) {
            const auto& nv = g().neighbors(v);
            if (st_.instance.delta.at(v) == 0
                || std::any_of(nv.begin(), nv.end(), [&](Vertex x) { return tp.contains(x); }))
                continue;
            for (auto u : tp) {
                if (u == v || outside(tp, u) != nv || st_.instance.surplus(u) != st_.instance.surplus(v))
                    continue;
                auto nbrs = nv;
                drop_vertex(v);
                for (auto x : nbrs)
                    clamp_decrement(x);
                note(KernelRule::t_deletion, {v, u}, "");
                return StepKind::changed;
            }
        }
        return StepKind::not_applicable;
    }

    auto t_contraction() -> StepKind
    {
        auto tp = t_prime();
        std::map<Vertex, std::size_t> comp_of;
        {
            auto comps = connected_components(induced_subgraph(g(), tp));
            for (std::size_t c = 0; c < comps.size(); ++c)
                for (auto x : comps[c])
                    comp_of[x] = c;
        }
        for (auto v : tp) {
            auto ov = outside(tp, v);
            for (auto u : tp) {
                if (u == v || comp_of.at(u) != comp_of.at(v) || outside(tp, u) != ov
                    || st_.instance.surplus(u) != st_.instance.surplus(v))
                    continue;
                for (auto x : ov) {
                    drop_edge(make_edge(v, x));
                    clamp_decrement(x);
                }
                const auto y = *g().neighbors(v).begin();
                const auto shift = st_.instance.surplus(y);
                for (auto x : g().neighbors(v))
                    if (x != y && g().adjacent(x, y))
                        clamp_decrement(x);
                auto z = merge(y, v, true);
                inst().delta[z] = g().degree(z) - shift;
                note(KernelRule::t_contraction, {v, u, y, z}, "delta=" + std::to_string(st_.instance.delta.at(z)));
                return StepKind::changed;
            }
        }
        return StepKind::not_applicable;
    }

    KernelState st_;
    const InstanceObserver& observer_;
    std::vector<TraceEntry> log_;
    std::optional<Solution> witness_;
};

auto Reducer::size_report() const -> SizeReport
{
    const auto& inst = st_.instance;
    const bool connected = inst.variant == Variant::connected;
    auto tp = t_prime();
    SizeReport r;
    r.vertices = g().order();
    r.t_prime = tp.size();
    r.w_prime = r.vertices - r.t_prime;
    VertexSet t3;
    for (auto v : tp) {
        auto k = outside(tp, v).size();
        (k == 0 ? r.t0 : k == 1 ? r.t1 : k == 2 ? r.t2 : r.t3) += 1;
        if (k >= 3)
            t3.insert(v);
    }
    const auto w = static_cast<double>(r.w_prime);
    if (! t3.empty()) {
        VertexSet v1;
        Graph h;
        for (auto v : t3) {
            h.add_vertex(v);
            for (auto x : outside(tp, v)) {
                if (! h.has_vertex(x))
                    h.add_vertex(x);
                h.add_edge(v, x);
                v1.insert(x);
            }
        }
        r.lemma_ok = verify_bipartite_planar_bound(h, v1, t3);
    }
    auto pairs = w * (w - 1) / 2;
    if (connected) {
        r.bound = w + pairs * (4 * w + 1) + std::max(0.0, 2 * w - 4);
        r.within = r.t0 == 0 && r.t1 == 0 && static_cast<double>(r.t2) <= pairs * (4 * w + 1)
            && static_cast<double>(r.t3) <= std::max(0.0, 2 * w - 4);
    } else {
        r.bound = w * w / 2 + 3.5 * w;
        r.within = r.t0 == 0 && static_cast<double>(r.t1) <= w && static_cast<double>(r.t2) <= pairs
            && static_cast<double>(r.t3) <= std::max(0.0, 2 * w - 4);
    }
    r.within = r.within && r.lemma_ok && static_cast<double>(r.vertices) <= r.bound;
    return r;
}

auto decided(StepKind k) -> bool
{
    return k == StepKind::decided_yes || k == StepKind::decided_no;
}

auto finish(const Reducer& red, StepKind k, const Instance& input) -> KernelResult
{
    KernelResult out;
    out.log = red.log();
    if (k == StepKind::decided_yes) {
        out.kind = KernelKind::decided_yes;
        out.instance = trivial_instance(true, input.variant);
        out.witness = red.state().lift.lift(*red.witness(), input);
    } else if (k == StepKind::decided_no) {
        out.kind = KernelKind::decided_no;
        out.instance = trivial_instance(false, input.variant);
    } else {
        out.kind = KernelKind::kernel;
        out.instance = red.state().instance;
        out.size = red.size_report();
        out.final_w = red.state().w;
        out.final_l = red.state().l;
    }
    return out;
}

auto exhaust(Reducer& red, KernelRule rule, StepKind& last) -> bool
{
    for (;;) {
        auto k = red.apply(rule);
        if (decided(k)) {
            last = k;
            return true;
        }
        if (k == StepKind::not_applicable)
            return false;
    }
}

auto check_input(const Instance& inst, Variant variant) -> void
{
    if (inst.variant != variant)
        throw PreconditionError("reduction expects the " + to_string(variant) + " variant");
}

} // namespace

auto apply_kernel_rule(const KernelState& state, KernelRule rule) -> KernelStep
{
    if (state.instance.variant != rule_variant(rule))
        throw PreconditionError("rule " + to_string(rule) + " does not apply to the " + to_string(state.instance.variant)
            + " variant");
    InstanceObserver none;
    Reducer red(state, none);
    KernelStep step;
    step.kind = red.apply(rule);
    step.state = red.state();
    if (! red.log().empty())
        step.record = red.log().back();
    if (step.kind == StepKind::decided_yes)
        step.witness = red.state().lift.lift(*red.witness(), state.instance);
    return step;
}

auto reduce_dpggd(const Instance& inst, const CandidateSets& cs, const KernelOptions& options) -> KernelResult
{
    check_input(inst, Variant::plain);
    Reducer red({inst, cs.w, cs.l, {}}, options.observer);
    auto last = StepKind::not_applicable;
    for (bool changed = true; changed;) {
        auto before = red.log().size();
        if (exhaust(red, KernelRule::set_adjustment, last) || exhaust(red, KernelRule::weight_adjustment, last)
            || exhaust(red, KernelRule::s_reduction, last) || exhaust(red, KernelRule::t_reduction, last)
            || exhaust(red, KernelRule::twin_reduction, last))
            return finish(red, last, inst);
        changed = red.log().size() != before;
    }
    return finish(red, last, inst);
}

auto reduce_dcpggd(const Instance& inst, const CandidateSets& cs, const KernelOptions& options) -> KernelResult
{
    check_input(inst, Variant::connected);
    Reducer red({inst, cs.w, cs.l, {}}, options.observer);
    auto last = StepKind::not_applicable;
    auto once = [&](KernelRule rule) {
        auto k = red.apply(rule);
        if (decided(k))
            last = k;
        return k;
    };

    for (;;) {
        if (exhaust(red, KernelRule::set_adjustment_connected, last))
            return finish(red, last, inst);
        auto k = once(KernelRule::vertex_deletion_connected);
        if (decided(k))
            return finish(red, last, inst);
        if (k == StepKind::not_applicable)
            break;
    }
    for (;;) {
        if (decided(once(KernelRule::s_neighbour)))
            return finish(red, last, inst);
        if (once(KernelRule::s_contraction_1) == StepKind::not_applicable)
            break;
    }
    if (decided(once(KernelRule::stopping)))
        return finish(red, last, inst);
    once(KernelRule::weight_adjustment_connected);
    for (;;) {
        if (exhaust(red, KernelRule::s_deletion, last))
            return finish(red, last, inst);
        if (once(KernelRule::s_contraction_2) == StepKind::not_applicable)
            break;
    }
    for (;;) {
        if (exhaust(red, KernelRule::t_deletion, last))
            return finish(red, last, inst);
        if (once(KernelRule::t_contraction) == StepKind::not_applicable)
            break;
    }
    return finish(red, last, inst);
}

auto kernelize(const Instance& inst, const KernelOptions& options) -> KernelResult
{
    auto norm = normalize(inst, {options.observer});
    if (norm.kind != NormalizeKind::normalized) {
        KernelResult out;
        bool yes = norm.kind == NormalizeKind::decided_yes;
        out.kind = yes ? KernelKind::decided_yes : KernelKind::decided_no;
        out.instance = trivial_instance(yes, inst.variant);
        out.witness = norm.witness;
        out.log = norm.log;
        return out;
    }

    const auto& reduced = norm.instance;
    ProtrusionDecomposition pd;
    try {
        pd = build_protrusion_decomposition(reduced.graph, greedy_2_dominating_set(reduced.graph), 2,
            {options.candidates.alpha_cap});
    } catch (const PreconditionError&) {
        pd = trivial_decomposition(reduced.graph);
    }
    auto cs = compute_candidate_sets(reduced, pd, options.candidates);
    auto out = inst.variant == Variant::plain ? reduce_dpggd(reduced, cs, options) : reduce_dcpggd(reduced, cs, options);
    out.log.insert(out.log.begin(), norm.log.begin(), norm.log.end());
    if (out.witness)
        out.witness = norm.lift.lift(*out.witness, inst);
    out.certified = pd.certified && ! cs.any_skipped();
    out.candidates = std::move(cs);
    return out;
}

} // namespace degedit
