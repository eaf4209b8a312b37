#pragma once

#include "degedit/instance.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace degedit {

struct OracleLimits
{
    std::size_t max_vertices = 12;
    std::size_t max_edges = 18;
    std::size_t max_optima = 10'000;
};

struct OracleReport
{
    bool feasible = false;
    std::optional<std::int64_t> min_cost;
    /// All minimum-cost efficient solutions, sorted by `solution_less`, up to `max_optima`.
    std::vector<Solution> optima;
    bool truncated = false;
    std::uint64_t vertex_sets_examined = 0;
    std::uint64_t pairs_examined = 0;
};

/// Exhaustive search over efficient pairs (U, D): every U within the vertex
/// budget, then every D inside G - U within the edge budget. Throws
/// CapacityError beyond the limits.
auto brute_force_min_cost(const Instance& inst, const OracleLimits& limits = {}) -> OracleReport;

/// Same feasibility on both instances.
auto equivalence_check(const Instance& a, const Instance& b, const OracleLimits& limits = {}) -> bool;

} // namespace degedit
