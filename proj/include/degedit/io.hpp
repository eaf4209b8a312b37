#pragma once

#include "degedit/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace degedit {

/// Reads the line-oriented instance format:
///   p degedit <n> <m> <k_v> <k_e> <C> <variant 0|1>
///   v <id> <delta> <weight> <cost>     (n lines, ids 1..n)
///   e <u> <v> <weight> <cost>          (m lines, u < v)
/// `#` starts a comment. Throws ParseError with the offending line number; a
/// non-planar graph is rejected with line 0.
auto parse_instance(const std::string& text) -> Instance;

/// Writes `inst` in the same format, renumbering vertices 1..n in ascending id order.
auto write_instance(const Instance& inst) -> std::string;

/// `s yes|no`, then for yes `c <cost>`, `d <ids>`, `r <u>-<v> ...`.
auto format_solution(const std::optional<Solution>& sol) -> std::string;

auto read_file(const std::string& path) -> std::string;
auto write_file(const std::string& path, const std::string& text) -> void;

struct GeneratorOptions
{
    std::size_t n = 0;
    std::int64_t k_v = 0;
    std::int64_t k_e = 0;
    std::int64_t cost_budget = 0;
    Variant variant = Variant::plain;
    std::uint64_t seed = 0;
    bool raw = false; ///< draw delta uniformly from [0, d(v)+1] instead of the degree window
};

/// Stacked triangulation on n vertices (each new vertex goes into a random face), a
/// random subset of its edges, weights in {1,2}, costs in {0,1,2}. Targets are mostly planted
/// from a random pair (U, D) within the budgets. Deterministic per seed.
auto generate_random_planar_instance(const GeneratorOptions& options) -> Instance;

} // namespace degedit
