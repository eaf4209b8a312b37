#pragma once

#include "degedit/dp_solver.hpp"
#include "degedit/instance.hpp"
#include "degedit/normalize.hpp"
#include "degedit/protrusion.hpp"
#include "degedit/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace degedit {

/// One subinstance of a part: budget slice, deleted boundary vertices X and edges Y,
/// boundary degree targets, and (connected variant) the family of outside components.
struct BoundaryConfig
{
    std::int64_t h_v = 0;
    std::int64_t h_e = 0;
    VertexSet x;
    EdgeSet y;
    std::map<Vertex, std::int64_t> delta_prime; ///< kept boundary vertices only; interior keeps delta
    std::optional<std::vector<VertexSet>> cover; ///< connected variant only

    auto operator==(const BoundaryConfig&) const -> bool = default;
};

/// Families of distinct non-empty subsets of `remnant` with at most |remnant| members,
/// ordered by size then by member bitmasks. The family {∅} is added when `remnant` is
/// empty: it stands for outside components that touch no kept boundary vertex.
auto enumerate_covers(const VertexSet& remnant) -> std::vector<std::vector<VertexSet>>;

/// All configurations of `part` in canonical order, or nothing when the boundary
/// exceeds `alpha_cap` (the part is then skipped). Boundary targets are enumerated as
/// d(v) - s for losses s in [0, min(k_v + k_e, d_F(v))], with d taken in F (plus the
/// gadget edges in the connected variant).
auto enumerate_configs(const Instance& inst, const ProtrusionPart& part, std::int64_t alpha_cap)
    -> std::optional<std::vector<BoundaryConfig>>;

/// I_q on F = G[N[R_i]] - X - Y (plus the Z gadget in the connected variant) with budgets
/// (h_v, h_e, C). Kept boundary vertices and boundary edges cost k_v + 1 / k_e + 1 weight.
/// Returns nothing when the gadget graph is not planar.
auto build_boundary_instance(const Instance& inst, const ProtrusionPart& part, const BoundaryConfig& q)
    -> std::optional<Instance>;

struct CandidateSets
{
    VertexSet w;
    EdgeSet l;
    std::vector<VertexSet> w_parts;
    std::vector<EdgeSet> l_parts;
    std::vector<bool> skipped;

    auto any_skipped() const -> bool;
};

struct CandidateOptions
{
    std::int64_t alpha_cap = alpha_cap_from_env();
    DpOptions dp;
};

/// W = R_0 ∪ W_i and L = E(G[R_0]) ∪ L_i, where W_i / L_i collect the minimum-cost
/// solutions of every configuration of part i. All configurations of a part are read
/// from one table of the dynamic program whose root bag is the part's boundary.
auto compute_candidate_sets(const Instance& inst, const ProtrusionDecomposition& pd, const CandidateOptions& options = {})
    -> CandidateSets;

/// Same sets, computed by building and solving every I_q separately. Slow; for tests.
auto compute_candidate_sets_reference(const Instance& inst, const ProtrusionDecomposition& pd,
    const CandidateOptions& options = {}) -> CandidateSets;

enum class KernelRule
{
    set_adjustment,
    weight_adjustment,
    s_reduction,
    t_reduction,
    twin_reduction,
    set_adjustment_connected,
    vertex_deletion_connected,
    s_neighbour,
    s_contraction_1,
    stopping,
    weight_adjustment_connected,
    s_deletion,
    s_contraction_2,
    t_deletion,
    t_contraction,
};

auto to_string(KernelRule rule) -> std::string;
auto all_kernel_rules() -> std::vector<KernelRule>;
auto rule_variant(KernelRule rule) -> Variant;

/// Instance plus the candidate sets the rules consult and a lift for decided-yes witnesses.
struct KernelState
{
    Instance instance;
    VertexSet w;
    EdgeSet l;
    WitnessLift lift;
};

struct KernelStep
{
    StepKind kind = StepKind::not_applicable;
    KernelState state;
    std::optional<Solution> witness; ///< decided_yes only, in the coordinates of the input state
    std::optional<TraceEntry> record;
};

/// One application of `rule` at its first site. Throws PreconditionError on the wrong variant.
auto apply_kernel_rule(const KernelState& state, KernelRule rule) -> KernelStep;

/// Counting behind the size bounds, taken on the final instance.
struct SizeReport
{
    std::size_t vertices = 0;
    std::size_t w_prime = 0;   ///< W ∪ V(L), plus S in the connected variant
    std::size_t t_prime = 0;
    std::size_t t0 = 0;        ///< T' vertices by number of W' neighbours
    std::size_t t1 = 0;
    std::size_t t2 = 0;
    std::size_t t3 = 0;        ///< three or more
    double bound = 0;          ///< the explicit vertex bound for the variant
    bool lemma_ok = true;      ///< bipartite planar bound on T'_{>=3} and its neighbours
    bool within = true;        ///< all of the above counting checks hold

    auto describe() const -> std::string;
};

enum class KernelKind
{
    decided_yes,
    decided_no,
    kernel,
};

auto to_string(KernelKind kind) -> std::string;

struct KernelResult
{
    KernelKind kind = KernelKind::kernel;
    Instance instance;               ///< the kernel, or a trivial instance with the same answer
    std::optional<Solution> witness; ///< decided_yes: a solution of the input
    std::vector<TraceEntry> log;
    bool certified = false;
    std::optional<CandidateSets> candidates;
    std::optional<SizeReport> size;
    VertexSet final_w; ///< kernel only: W and L as the rules left them
    EdgeSet final_l;
};

struct KernelOptions
{
    InstanceObserver observer;
    CandidateOptions candidates;
};

/// Reduction rules of the plain variant, applied exhaustively in order.
auto reduce_dpggd(const Instance& inst, const CandidateSets& cs, const KernelOptions& options = {}) -> KernelResult;

/// Reduction rules of the connected variant, applied exhaustively in order.
auto reduce_dcpggd(const Instance& inst, const CandidateSets& cs, const KernelOptions& options = {}) -> KernelResult;

/// normalize, 2-dominating set, protrusion decomposition, candidate sets, reduction.
auto kernelize(const Instance& inst, const KernelOptions& options = {}) -> KernelResult;

/// A fixed instance whose answer is `yes`: empty graph for yes, one unsatisfiable vertex for no.
auto trivial_instance(bool yes, Variant variant) -> Instance;

} // namespace degedit
