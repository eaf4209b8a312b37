#pragma once

#include "degedit/graph.hpp"
#include "degedit/treewidth.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace degedit {

/// Greedy: repeatedly take the vertex whose 2-ball covers most uncovered vertices (ties: lowest id).
auto greedy_2_dominating_set(const Graph& g) -> VertexSet;

struct ProtrusionPart
{
    VertexSet vertices;  ///< R_i
    VertexSet neighbors; ///< N(R_i), a subset of R_0
    TreeDecomposition td; ///< of G[N[R_i]]
    std::int64_t width = 0;
};

struct ProtrusionDecomposition
{
    VertexSet r0;
    std::vector<ProtrusionPart> parts;
    std::int64_t alpha = 3;        ///< s' : bound on part boundaries and widths
    std::size_t domset_size = 0;   ///< size of the dominating set it was built from
    bool certified = false;        ///< max(p, |R_0|) <= alpha * domset_size also holds

    /// s = alpha * domset_size.
    auto size_bound() const -> std::size_t { return static_cast<std::size_t>(alpha) * domset_size; }
};

inline constexpr std::int64_t default_alpha_cap = 3;

/// DEGEDIT_ALPHA_CAP when set to a positive integer, else `default_alpha_cap`.
auto alpha_cap_from_env() -> std::int64_t;

struct ProtrusionOptions
{
    std::int64_t alpha_cap = alpha_cap_from_env();
};

/// R_0 = V(G), no parts.
auto trivial_decomposition(const Graph& g) -> ProtrusionDecomposition;

/// Starts from R_0 = domset, makes every component of G - R_0 a part, and moves vertices
/// of parts whose boundary or width exceeds the cap into R_0 until all parts fit.
/// Throws PreconditionError when `domset` is not r-dominating.
auto build_protrusion_decomposition(const Graph& g, const VertexSet& domset, int r,
    const ProtrusionOptions& options = {}) -> ProtrusionDecomposition;

struct PdVerdict
{
    bool valid = true;
    std::string violation;
};

/// Partition, (ii) every N[R_i] is an alpha-protrusion with a valid width certificate,
/// (iii) N(R_i) lies in R_0 and in the boundary of N[R_i]; (i) only when certified.
auto validate_protrusion_decomposition(const Graph& g, const ProtrusionDecomposition& pd) -> PdVerdict;

} // namespace degedit
