#pragma once

#include "degedit/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace degedit {

/// Unrooted tree decomposition; node ids are indices into `bags`.
struct TreeDecomposition
{
    std::vector<VertexSet> bags;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

    /// max |bag| - 1, clamped at 0.
    auto width() const -> std::int64_t;
};

enum class NiceKind
{
    leaf,
    introduce,
    forget,
    join,
};

auto to_string(NiceKind kind) -> std::string;

struct NiceNode
{
    NiceKind kind = NiceKind::leaf;
    VertexSet bag;
    /// Introduced or forgotten vertex. Only the root of an empty decomposition forgets nothing.
    std::optional<Vertex> vertex;
    std::vector<std::size_t> children;
};

/// Nodes are stored children-first, so a forward sweep is a valid bottom-up order.
/// The root is the last node.
struct NiceTreeDecomposition
{
    std::vector<NiceNode> nodes;

    auto root() const -> std::size_t { return nodes.size() - 1; }
    auto width() const -> std::int64_t;
    auto as_tree_decomposition() const -> TreeDecomposition;
};

enum class DecomposeMode
{
    heuristic,
    exact_small,
};

inline constexpr std::size_t default_exact_cap = 20;

auto min_degree_order(const Graph& g) -> std::vector<Vertex>;
auto min_fill_order(const Graph& g) -> std::vector<Vertex>;
/// Width of the decomposition induced by eliminating in `order`.
auto elimination_width(const Graph& g, const std::vector<Vertex>& order) -> std::int64_t;
/// Optimal elimination order; throws PreconditionError above `cap` vertices.
auto exact_order(const Graph& g, std::size_t cap = default_exact_cap) -> std::vector<Vertex>;
auto decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) -> TreeDecomposition;

/// Heuristic: better of min-degree and min-fill. Exact-small: optimal, refused above `exact_cap`.
auto decompose(const Graph& g, DecomposeMode mode = DecomposeMode::heuristic, std::size_t exact_cap = default_exact_cap)
    -> TreeDecomposition;

/// Throws PreconditionError when `td` is not a valid decomposition of some graph on its bag union.
auto to_nice(const TreeDecomposition& td) -> NiceTreeDecomposition;

struct TdVerdict
{
    bool valid = true;
    std::string violation; ///< first failed condition, empty when valid
};

auto validate(const Graph& g, const TreeDecomposition& td) -> TdVerdict;
auto validate(const Graph& g, const NiceTreeDecomposition& ntd) -> TdVerdict;

/// `s td <bags> <width+1> <n>`, `b <i> <ids...>` per bag (1-based), then `<i> <j>` per tree edge.
auto write_pace_td(const TreeDecomposition& td, std::size_t vertex_count) -> std::string;
auto parse_pace_td(const std::string& text) -> TreeDecomposition;

} // namespace degedit
