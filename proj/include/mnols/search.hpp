#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mnols/core.hpp"

namespace mnols {

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  std::uint64_t max_solutions = 1;
  std::chrono::milliseconds time_cap{std::chrono::minutes(10)};

  /// Throws InvalidArgument unless every cap is positive.
  void validate() const;

  /// Caps large enough that only exhaustion ends the search.
  [[nodiscard]] static SearchBudget unlimited();
};

enum class StopReason { Exhausted, NodeCap, SolutionCap, TimeCap };

[[nodiscard]] std::string to_string(StopReason reason);

struct SearchOutcome {
  /// Each solution is a complete column set (base columns first).
  std::vector<std::vector<ColumnVector>> solutions;
  /// Symbol placements made, counting forced mirror placements once.
  std::uint64_t nodes_expanded = 0;
  /// True iff the space was explored to the end without hitting a cap.
  bool exhausted = false;
  StopReason stop_reason = StopReason::Exhausted;
};

/// Backtracks over rows 0..n-1 (or mirror row pairs when require_reflection
/// is set), trying symbols in ascending order, and emits every column that
/// forms a quasi-difference profile with each base column. Each solution is
/// base + the new column. Throws InvalidBase when the base columns are not
/// permutations of Z_n or are not pairwise compatible.
[[nodiscard]] SearchOutcome extend_search(std::span<const ColumnVector> base, Order order,
                                          const SearchBudget& budget,
                                          bool require_reflection = false);

/// Exact number of columns extending base; runs extend_search without caps.
[[nodiscard]] std::uint64_t count_extensions(std::span<const ColumnVector> base, Order order,
                                             bool require_reflection = false);

/// Looks for t columns with pairwise quasi-difference profiles, seeded with
/// the identity column. Columns after the seed are generated in strictly
/// increasing lexicographic order so each set is reported once. Throws
/// InvalidArgument unless 2 <= t <= mnols_bound(order).
[[nodiscard]] SearchOutcome find_cyclic_mnols(Order order, std::uint32_t t,
                                              const SearchBudget& budget,
                                              bool require_reflection = false);

}  // namespace mnols
