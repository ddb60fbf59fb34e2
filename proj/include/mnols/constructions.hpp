#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mnols/core.hpp"

namespace mnols {

/// Rows 0 .. n/2 - 1 of a column whose lower half is fixed by reflection.
class HalfColumn {
 public:
  HalfColumn(Order order, std::vector<Symbol> entries);

  [[nodiscard]] Order order() const noexcept { return order_; }
  [[nodiscard]] std::span<const Symbol> entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] Symbol operator[](std::size_t row) const noexcept { return entries_[row]; }

  bool operator==(const HalfColumn&) const = default;

 private:
  Order order_;
  std::vector<Symbol> entries_;
};

/// Affine progression (base_k*k + base_c) + i*(step_k*k + step_c), i >= 0.
struct AffineProgression {
  std::int64_t base_k;
  std::int64_t base_c;
  std::int64_t step_k;
  std::int64_t step_c;

  [[nodiscard]] std::int64_t base(std::uint64_t k) const noexcept;
  [[nodiscard]] std::int64_t step(std::uint64_t k) const noexcept;
};

/// Formulas for the upper half of column alpha (2 or 3): rows 2i follow
/// `even`, rows 2i+1 follow `odd`, both reduced mod n.
struct HalfColumnFormula {
  AffineProgression even;
  AffineProgression odd;
};

[[nodiscard]] const HalfColumnFormula& half_column_formula(FamilyTag tag, int alpha);

/// Column i -> i. Has the reflection property for every even n.
[[nodiscard]] ColumnVector identity_column(Order order);

/// Upper half of C_alpha for the family, alpha in {2, 3}. Throws
/// InvalidArgument for any other alpha.
[[nodiscard]] HalfColumn half_column(const FamilyId& family, int alpha);

/// Full column with entry(n-1-i) = (n-1) - entry(i); the upper half is copied.
[[nodiscard]] ColumnVector reflect_complete(const HalfColumn& half);

/// [identity, C_2, C_3] for the family. Every column is re-checked and a
/// ConstructionInvariantViolation is thrown if one is not a permutation.
[[nodiscard]] std::array<ColumnVector, 3> build_triple(const FamilyId& family);

/// Cyclic development: cell (i, j) = col[i] + j mod n. Throws NotAPermutation.
[[nodiscard]] LatinSquare develop(const ColumnVector& col);

/// (tag, k) with n = 48k + c, c in {14, 22, 38, 46}; UnsupportedOrder otherwise.
[[nodiscard]] FamilyId family_of(std::uint64_t n);

}  // namespace mnols
