#include "degedit/normalize.hpp"

#include "degedit/errors.hpp"

#include <stdexcept>

namespace degedit {

auto to_string(NormalizeRule rule) -> std::string
{
    switch (rule) {
    case NormalizeRule::yes_instance: return "yes-instance";
    case NormalizeRule::vertex_deletion: return "vertex-deletion";
    case NormalizeRule::contraction: return "contraction";
    case NormalizeRule::isolates_removal: return "isolates-removal";
    case NormalizeRule::yes_instance_connected: return "yes-instance-connected";
    case NormalizeRule::isolates_removal_connected: return "isolates-removal-connected";
    }
    throw std::logic_error("unknown normalize rule");
}

auto all_normalize_rules() -> std::vector<NormalizeRule>
{
    return {NormalizeRule::yes_instance, NormalizeRule::vertex_deletion, NormalizeRule::contraction,
        NormalizeRule::isolates_removal, NormalizeRule::yes_instance_connected,
        NormalizeRule::isolates_removal_connected};
}

auto to_string(NormalizeKind kind) -> std::string
{
    switch (kind) {
    case NormalizeKind::decided_yes: return "decided-yes";
    case NormalizeKind::decided_no: return "decided-no";
    case NormalizeKind::normalized: return "normalized";
    }
    throw std::logic_error("unknown normalize kind");
}

auto WitnessLift::record_contraction(Vertex merged, Vertex u, Vertex v) -> void
{
    merged_[merged] = {u, v};
}

auto WitnessLift::record_forced_deletion(Vertex v) -> void
{
    forced_.insert(v);
}

auto WitnessLift::expand(Vertex v) const -> VertexSet
{
    VertexSet out;
    std::vector<Vertex> stack{v};
    while (! stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        auto it = merged_.find(x);
        if (it == merged_.end()) {
            out.insert(x);
        } else {
            stack.push_back(it->second.first);
            stack.push_back(it->second.second);
        }
    }
    return out;
}

auto WitnessLift::lift(const Solution& reduced, const Instance& original) const -> Solution
{
    Solution out;
    for (auto v : reduced.vertices) {
        auto xs = expand(v);
        out.vertices.insert(xs.begin(), xs.end());
    }
    for (auto v : forced_) {
        auto xs = expand(v);
        out.vertices.insert(xs.begin(), xs.end());
    }
    for (const auto& e : reduced.edges) {
        if (merged_.contains(e.u) || merged_.contains(e.v))
            throw std::logic_error("deleted edge " + to_string(e) + " touches a contracted vertex");
        out.edges.insert(e);
    }
    out.cost = solution_cost(original, out);
    return out;
}

namespace {

auto in_s(const Instance& inst, Vertex v) -> bool
{
    return inst.graph.degree(v) == inst.delta.at(v);
}

auto budget_detail(const Instance& inst) -> std::string
{
    return "k_v=" + std::to_string(inst.k_v) + " C=" + std::to_string(inst.cost_budget);
}

/// Mutable normalization state: the current instance plus what is needed to lift witnesses.
class Normalizer
{
public:
    Normalizer(const Instance& inst, const InstanceObserver& observer)
        : inst_(inst)
        , observer_(observer)
    {
    }

    auto apply(NormalizeRule rule) -> StepKind
    {
        switch (rule) {
        case NormalizeRule::yes_instance: return yes_instance(false);
        case NormalizeRule::yes_instance_connected: return yes_instance(true);
        case NormalizeRule::vertex_deletion: return vertex_deletion();
        case NormalizeRule::contraction: return contraction();
        case NormalizeRule::isolates_removal: return isolates_removal();
        case NormalizeRule::isolates_removal_connected: return isolates_removal_connected();
        }
        throw std::logic_error("unknown normalize rule");
    }

    auto instance() const -> const Instance& { return inst_; }
    auto log() const -> const std::vector<TraceEntry>& { return log_; }
    auto lift() const -> const WitnessLift& { return lift_; }
    auto witness() const -> const std::optional<Solution>& { return witness_; }

private:
    auto note(TraceEntry entry) -> void
    {
        log_.push_back(std::move(entry));
        if (observer_)
            observer_(inst_, log_.back());
    }

    auto decide_yes(Solution current, std::string rule, std::vector<Vertex> site) -> StepKind
    {
        current.cost = solution_cost(inst_, current);
        witness_ = std::move(current);
        note({std::move(rule), std::move(site), "answer=yes"});
        return StepKind::decided_yes;
    }

    auto yes_instance(bool connected) -> StepKind
    {
        for (const auto& [v, _] : inst_.graph.adjacency())
            if (! in_s(inst_, v))
                return StepKind::not_applicable;
        if (connected && ! is_connected(inst_.graph))
            return StepKind::not_applicable;
        return decide_yes({}, to_string(connected ? NormalizeRule::yes_instance_connected : NormalizeRule::yes_instance),
            {});
    }

    auto delete_with_budget(Vertex v, const std::string& rule) -> StepKind
    {
        inst_.k_v -= inst_.weight_v.at(v);
        inst_.cost_budget -= inst_.cost_v.at(v);
        inst_.remove_vertex(v);
        lift_.record_forced_deletion(v);
        bool exhausted = inst_.k_v < 0 || inst_.cost_budget < 0;
        note({rule, {v}, budget_detail(inst_) + (exhausted ? " answer=no" : "")});
        return exhausted ? StepKind::decided_no : StepKind::changed;
    }

    auto vertex_deletion() -> StepKind
    {
        for (const auto& [v, nbrs] : inst_.graph.adjacency()) {
            auto d = static_cast<std::int64_t>(nbrs.size());
            auto target = inst_.delta.at(v);
            if (d < target || d > target + inst_.k_v + inst_.k_e)
                return delete_with_budget(v, to_string(NormalizeRule::vertex_deletion));
        }
        return StepKind::not_applicable;
    }

    auto contraction() -> StepKind
    {
        const auto& g = inst_.graph;
        for (const auto& [v, nbrs] : g.adjacency()) {
            if (nbrs.empty() || ! in_s(inst_, v))
                continue;
            bool closed = true;
            for (auto x : nbrs)
                closed = closed && in_s(inst_, x);
            if (! closed)
                continue;
            contract(*nbrs.begin(), v);
            return StepKind::changed;
        }
        return StepKind::not_applicable;
    }

    auto contract(Vertex u, Vertex v) -> void
    {
        VertexSet s_rest;
        for (const auto& [x, _] : inst_.graph.adjacency())
            if (x != u && x != v && in_s(inst_, x))
                s_rest.insert(x);

        auto w = inst_.weight_v.at(u) + inst_.weight_v.at(v);
        auto c = inst_.cost_v.at(u) + inst_.cost_v.at(v);
        VertexSet merged = inst_.graph.neighbors(u);
        merged.insert(inst_.graph.neighbors(v).begin(), inst_.graph.neighbors(v).end());
        merged.erase(u);
        merged.erase(v);
        inst_.remove_vertex(u);
        inst_.remove_vertex(v);
        auto z = inst_.graph.next_id();
        inst_.add_vertex(z, 0, w, c);
        for (auto x : merged)
            inst_.add_edge(z, x, inst_.k_e + 1, 0);
        inst_.delta[z] = inst_.graph.degree(z);
        for (auto x : s_rest)
            inst_.delta[x] = inst_.graph.degree(x);
        lift_.record_contraction(z, u, v);
        note({to_string(NormalizeRule::contraction), {u, v, z}, "delta=" + std::to_string(inst_.delta[z])});
    }

    auto first_isolate() const -> std::optional<Vertex>
    {
        for (const auto& [v, nbrs] : inst_.graph.adjacency())
            if (nbrs.empty() && inst_.delta.at(v) == 0)
                return v;
        return std::nullopt;
    }

    auto isolates_removal() -> StepKind
    {
        auto v = first_isolate();
        if (! v)
            return StepKind::not_applicable;
        inst_.remove_vertex(*v);
        note({to_string(NormalizeRule::isolates_removal), {*v}, ""});
        return StepKind::changed;
    }

    auto isolates_removal_connected() -> StepKind
    {
        auto v = first_isolate();
        if (! v)
            return StepKind::not_applicable;
        auto rest = inst_.graph.vertex_set();
        rest.erase(*v);
        if (inst_.vertex_weight(rest) <= inst_.k_v && inst_.vertex_cost(rest) <= inst_.cost_budget)
            return decide_yes({rest, {}, 0}, to_string(NormalizeRule::isolates_removal_connected), {*v});
        return delete_with_budget(*v, to_string(NormalizeRule::isolates_removal_connected));
    }

    Instance inst_;
    const InstanceObserver& observer_;
    std::vector<TraceEntry> log_;
    WitnessLift lift_;
    std::optional<Solution> witness_;
};

auto check_variant(const Instance& inst, NormalizeRule rule) -> void
{
    bool connected_only = rule == NormalizeRule::yes_instance_connected || rule == NormalizeRule::isolates_removal_connected;
    bool plain_only = rule == NormalizeRule::yes_instance || rule == NormalizeRule::isolates_removal;
    if ((connected_only && inst.variant != Variant::connected) || (plain_only && inst.variant != Variant::plain))
        throw PreconditionError("rule " + to_string(rule) + " does not apply to the " + to_string(inst.variant)
            + " variant");
}

} // namespace

auto apply_rule(const Instance& inst, NormalizeRule rule) -> RuleStep
{
    check_variant(inst, rule);
    InstanceObserver none;
    Normalizer state(inst, none);
    RuleStep step;
    step.kind = state.apply(rule);
    step.instance = state.instance();
    if (! state.log().empty())
        step.record = state.log().back();
    if (step.kind == StepKind::decided_yes)
        step.witness = state.lift().lift(*state.witness(), inst);
    return step;
}

auto normalize(const Instance& inst, const NormalizeOptions& options) -> NormalizeOutcome
{
    const bool connected = inst.variant == Variant::connected;
    const auto yes_rule = connected ? NormalizeRule::yes_instance_connected : NormalizeRule::yes_instance;
    const auto isolates_rule = connected ? NormalizeRule::isolates_removal_connected : NormalizeRule::isolates_removal;

    Normalizer state(inst, options.observer);
    auto finish = [&](NormalizeKind kind) {
        NormalizeOutcome out;
        out.kind = kind;
        out.instance = state.instance();
        out.log = state.log();
        out.lift = state.lift();
        if (kind == NormalizeKind::decided_yes)
            out.witness = state.lift().lift(*state.witness(), inst);
        return out;
    };
    auto decided = [](StepKind k) { return k == StepKind::decided_yes || k == StepKind::decided_no; };
    auto kind_of = [](StepKind k) { return k == StepKind::decided_yes ? NormalizeKind::decided_yes : NormalizeKind::decided_no; };

    if (inst.k_v < 0 || inst.cost_budget < 0)
        return finish(NormalizeKind::decided_no);

    for (bool changed = true; changed;) {
        changed = false;
        for (;;) {
            if (auto k = state.apply(yes_rule); decided(k))
                return finish(kind_of(k));
            auto k = state.apply(NormalizeRule::vertex_deletion);
            if (decided(k))
                return finish(kind_of(k));
            if (k == StepKind::not_applicable)
                break;
            changed = true;
        }
        while (state.apply(NormalizeRule::contraction) == StepKind::changed)
            changed = true;
        for (;;) {
            auto k = state.apply(isolates_rule);
            if (decided(k))
                return finish(kind_of(k));
            if (k == StepKind::not_applicable)
                break;
            changed = true;
        }
    }
    if (auto k = state.apply(yes_rule); decided(k))
        return finish(kind_of(k));
    return finish(NormalizeKind::normalized);
}

auto normalized_violations(const Instance& inst) -> std::vector<std::string>
{
    std::vector<std::string> out;
    const auto& g = inst.graph;
    for (const auto& [v, nbrs] : g.adjacency()) {
        auto d = static_cast<std::int64_t>(nbrs.size());
        auto target = inst.delta.at(v);
        if (d < target || d > target + inst.k_v + inst.k_e)
            out.push_back("(i) degree window fails at vertex " + std::to_string(v));
        if (d == target) {
            bool touches_unsatisfied = false;
            for (auto u : nbrs)
                touches_unsatisfied = touches_unsatisfied || g.degree(u) != inst.delta.at(u);
            if (! touches_unsatisfied)
                out.push_back("(ii) satisfied vertex " + std::to_string(v) + " has no unsatisfied neighbour");
        }
    }
    return out;
}

} // namespace degedit
