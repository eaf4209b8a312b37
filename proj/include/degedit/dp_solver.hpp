#pragma once

#include "degedit/instance.hpp"
#include "degedit/treewidth.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace degedit {

struct DpOptions
{
    /// Abort with CapacityError when a single table grows past this many keys.
    std::size_t max_entries = 4'000'000;
};

struct DpResult
{
    bool feasible = false;
    std::optional<Solution> solution; ///< minimum cost, ties by `solution_less`
    std::int64_t width = 0;           ///< width of the decomposition that was used
    std::size_t peak_table = 0;       ///< largest table, in keys
};

/// Minimum-cost efficient solution of a plain instance over a nice decomposition of its graph.
/// Throws PreconditionError on the wrong variant, an invalid decomposition, or a vertex
/// outside delta(v) <= d(v) <= delta(v) + k_v + k_e.
auto solve_dpggd_tw(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options = {})
    -> DpResult;

/// Same for the connected variant; the empty remaining graph counts as connected.
auto solve_dcpggd_tw(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options = {})
    -> DpResult;

/// Exact weight usage (w(U), w(D)) -> best solution with that usage and cost <= C.
using BudgetProfile = std::map<std::pair<std::int64_t, std::int64_t>, Solution>;

/// The dynamic program without the degree-window precondition, for either variant
/// (taken from `inst.variant`). Returns the best solution for every exact weight usage
/// within (k_v, k_e). The decomposition is trusted to be valid for `inst.graph`.
auto solve_tw_profile(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options = {})
    -> BudgetProfile;

/// Best entry of a profile whose usage fits within (h_v, h_e).
auto best_within(const BudgetProfile& profile, std::int64_t h_v, std::int64_t h_e) -> std::optional<Solution>;

/// One entry of a table whose bag is kept at the root instead of being forgotten.
struct BoundaryEntry
{
    std::vector<std::int32_t> label; ///< per root-bag position: 0 deleted, else block id (1 in the plain variant)
    std::uint64_t y = 0;             ///< deleted root-bag edges, bit i = BoundaryTable::edges[i]
    std::vector<std::int32_t> gamma; ///< losses of kept root-bag vertices towards forgotten vertices
    std::int64_t wu = 0;
    std::int64_t we = 0;
    bool closed = false;             ///< connected variant: a component was completed below the bag
    Solution solution;
};

struct BoundaryTable
{
    std::vector<Vertex> bag;
    std::vector<Edge> edges;
    std::vector<BoundaryEntry> entries;
};

/// Runs the dynamic program up to the last node of `ntd` and returns its table unforgotten.
/// No degree check is made for vertices of that last bag; cost is not filtered.
auto solve_tw_boundary(const Instance& inst, const NiceTreeDecomposition& ntd, const DpOptions& options = {})
    -> BoundaryTable;

/// Convenience: heuristic decomposition, nice conversion, unchecked DP, best overall.
auto solve_exact(const Instance& inst, const DpOptions& options = {}) -> DpResult;

/// Upper bound on the keys of one table, used as a resource guard:
/// labels^{t+1} * 2^{|E(bag)|} * (k_v+k_e+1)^{t+1} * (k_v+1)(k_e+1), where labels is
/// 2 for the plain variant and t+2 for the connected one (plus a closed flag).
auto table_bound(std::size_t bag_size, std::size_t bag_edges, std::int64_t k_v, std::int64_t k_e, Variant variant)
    -> double;

} // namespace degedit
