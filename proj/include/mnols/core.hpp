#pragma once

// Domain types shared by every module: orders, residues of Z_n, columns,
// developed squares and the two certificates (difference profile and
// superimposition verdict).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mnols {

/// A residue of Z_n. Orders up to 2^32 - 2 are representable.
using Symbol = std::uint32_t;

/// Even order n >= 2 of a Latin square; half() is n/2.
class Order {
 public:
  explicit Order(std::uint64_t n);

  [[nodiscard]] std::uint32_t n() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t half() const noexcept { return n_ / 2; }

  auto operator<=>(const Order&) const = default;

 private:
  std::uint32_t n_;
};

enum class FamilyTag { F14, F22, F38, F46 };

inline constexpr std::array<FamilyTag, 4> kAllFamilies = {
    FamilyTag::F14, FamilyTag::F22, FamilyTag::F38, FamilyTag::F46};

/// Residue of the family's orders modulo 48 (14, 22, 38 or 46).
[[nodiscard]] std::uint32_t family_residue(FamilyTag tag) noexcept;
[[nodiscard]] std::string to_string(FamilyTag tag);
/// Accepts "f14" / "F14" style names.
[[nodiscard]] std::optional<FamilyTag> parse_family_tag(std::string_view text);

/// One member of an infinite family: order 48k + family_residue(tag).
struct FamilyId {
  FamilyTag tag = FamilyTag::F14;
  std::uint64_t k = 0;

  /// Throws InvalidOrder when 48k + c does not fit a Symbol.
  [[nodiscard]] Order order() const;

  bool operator==(const FamilyId&) const = default;
};

[[nodiscard]] std::string to_string(const FamilyId& family);

/// value mod n, always in [0, n-1].
[[nodiscard]] Symbol mod_reduce(std::int64_t value, Order order) noexcept;

/// A length-n sequence over Z_n. Entry i is the symbol placed in row i of
/// column 0 before cyclic development.
class ColumnVector {
 public:
  /// Throws InvalidArgument on wrong length, SymbolOutOfRange on entries >= n.
  ColumnVector(Order order, std::vector<Symbol> entries);

  [[nodiscard]] Order order() const noexcept { return order_; }
  [[nodiscard]] std::span<const Symbol> entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] Symbol operator[](std::size_t row) const noexcept { return entries_[row]; }

  bool operator==(const ColumnVector&) const = default;

 private:
  Order order_;
  std::vector<Symbol> entries_;
};

/// n x n array of symbols, stored row-major.
class LatinSquare {
 public:
  /// Throws InvalidArgument unless cells.size() == n*n, SymbolOutOfRange on
  /// entries >= n. The Latin property itself is not enforced here; see
  /// is_latin().
  LatinSquare(Order order, std::vector<Symbol> cells);

  [[nodiscard]] Order order() const noexcept { return order_; }
  [[nodiscard]] Symbol at(std::size_t row, std::size_t col) const noexcept {
    return cells_[row * order_.n() + col];
  }
  [[nodiscard]] std::span<const Symbol> row(std::size_t r) const noexcept {
    return std::span<const Symbol>(cells_).subspan(r * order_.n(), order_.n());
  }
  [[nodiscard]] std::span<const Symbol> cells() const noexcept { return cells_; }

  bool operator==(const LatinSquare&) const = default;

 private:
  Order order_;
  std::vector<Symbol> cells_;
};

/// Residue -> count map of row-wise differences a[i] - b[i] (mod n), stored
/// densely over all n residues.
class DifferenceProfile {
 public:
  DifferenceProfile(Order order, std::vector<std::uint32_t> counts);

  [[nodiscard]] Order order() const noexcept { return order_; }
  [[nodiscard]] std::uint32_t count(Symbol residue) const noexcept { return counts_[residue]; }
  [[nodiscard]] std::span<const std::uint32_t> counts() const noexcept { return counts_; }
  [[nodiscard]] std::uint64_t total() const noexcept { return total_; }

  bool operator==(const DifferenceProfile&) const = default;

 private:
  Order order_;
  std::vector<std::uint32_t> counts_;
  std::uint64_t total_ = 0;
};

/// How an ordered pair (x, y) is constrained in a near-orthogonal
/// superimposition.
enum class PairClass {
  Diagonal,  // y == x, must never occur
  Partner,   // y == x + n/2, exactly twice
  Other,     // at least once (exactly once, by counting)
};

[[nodiscard]] PairClass classify_pair(Symbol x, Symbol y, Order order) noexcept;
[[nodiscard]] std::string to_string(PairClass cls);

struct PairViolation {
  Symbol x = 0;
  Symbol y = 0;
  std::uint32_t count = 0;
  PairClass expected = PairClass::Other;

  bool operator==(const PairViolation&) const = default;
};

/// Full pair histogram of a superimposition plus its classification.
struct NearOrthoVerdict {
  static constexpr std::size_t kMaxReportedViolations = 100;

  bool pass = false;
  std::uint32_t n = 0;
  /// Row-major n x n: pair_counts[x * n + y] is the number of cells holding (x, y).
  std::vector<std::uint32_t> pair_counts;
  /// First kMaxReportedViolations offending pairs in (x, y) order.
  std::vector<PairViolation> violations;
  /// Total number of offending pairs, including unreported ones.
  std::uint64_t violation_count = 0;

  [[nodiscard]] std::uint32_t count(Symbol x, Symbol y) const noexcept {
    return pair_counts[static_cast<std::size_t>(x) * n + y];
  }
};

/// True iff every residue of Z_n appears exactly once.
[[nodiscard]] bool is_permutation(const ColumnVector& col);
[[nodiscard]] bool is_permutation(std::span<const Symbol> values, std::uint32_t n);

}  // namespace mnols
