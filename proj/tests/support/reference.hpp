#pragma once

// Small, deliberately naive checkers that share no code with the library beyond its data types.

#include "degedit/instance.hpp"

#include <cstdint>
#include <optional>

namespace degedit::reference {

/// Every U and every D in E(G - U), no pruning. Minimum cost of a valid pair, or nothing.
auto naive_min_cost(const Instance& inst) -> std::optional<std::int64_t>;

/// Contains K5 or K3,3 as a minor, found by searching for branch sets. Use on small graphs.
auto has_kuratowski_minor(const Graph& g) -> bool;

/// Treewidth as the best elimination width over all vertex orders. Use on |V| <= 8.
auto permutation_treewidth(const Graph& g) -> std::int64_t;

/// Every vertex within distance `r` of `xs`, by plain BFS.
auto dominates_within(const Graph& g, const VertexSet& xs, int r) -> bool;

/// delta(v) <= d(v) <= delta(v) + k_v + k_e, and every vertex with d = delta has a neighbour with d > delta.
auto normalized_conditions_hold(const Instance& inst) -> bool;

} // namespace degedit::reference
