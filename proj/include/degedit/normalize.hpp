#pragma once

#include "degedit/instance.hpp"
#include "degedit/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace degedit {

enum class NormalizeRule
{
    yes_instance,
    vertex_deletion,
    contraction,
    isolates_removal,
    yes_instance_connected,
    isolates_removal_connected,
};

auto to_string(NormalizeRule rule) -> std::string;
auto all_normalize_rules() -> std::vector<NormalizeRule>;

/// Maps solutions of a reduced instance back to the instance it was derived from:
/// contracted vertices expand to their originals and vertices deleted by rules
/// are added back to U.
class WitnessLift
{
public:
    auto record_contraction(Vertex merged, Vertex u, Vertex v) -> void;
    auto record_forced_deletion(Vertex v) -> void;

    auto expand(Vertex v) const -> VertexSet;
    /// Lifts `reduced` into the coordinates of `original` and recomputes its cost there.
    auto lift(const Solution& reduced, const Instance& original) const -> Solution;

private:
    std::map<Vertex, std::pair<Vertex, Vertex>> merged_;
    VertexSet forced_;
};

enum class StepKind
{
    changed,
    decided_yes,
    decided_no,
    not_applicable,
};

struct RuleStep
{
    StepKind kind = StepKind::not_applicable;
    Instance instance;                ///< the instance after the step (input copy when not applicable)
    std::optional<Solution> witness;  ///< decided_yes only, in the input's coordinates
    std::optional<TraceEntry> record; ///< absent when not applicable
};

/// Applies one instance of `rule` at its first site in ascending vertex order.
/// Throws PreconditionError when a variant-specific rule is used on the other variant.
auto apply_rule(const Instance& inst, NormalizeRule rule) -> RuleStep;

enum class NormalizeKind
{
    decided_yes,
    decided_no,
    normalized,
};

auto to_string(NormalizeKind kind) -> std::string;

struct NormalizeOutcome
{
    NormalizeKind kind = NormalizeKind::normalized;
    Instance instance;               ///< normalized instance (meaningful when kind == normalized)
    std::optional<Solution> witness; ///< decided_yes: a solution of the input instance
    std::vector<TraceEntry> log;
    WitnessLift lift;                ///< lifts solutions of `instance` back to the input
};

struct NormalizeOptions
{
    InstanceObserver observer;
};

/// Exhaustive application of the normalization rules. A normalized output
/// satisfies delta(v) <= d(v) <= delta(v) + k_v + k_e for every vertex, and
/// every degree-satisfied vertex has a neighbour that is not.
auto normalize(const Instance& inst, const NormalizeOptions& options = {}) -> NormalizeOutcome;

/// Names of the normalized-instance conditions that fail, empty when normalized.
auto normalized_violations(const Instance& inst) -> std::vector<std::string>;

} // namespace degedit
