#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mnols/core.hpp"

namespace mnols {

[[nodiscard]] bool is_latin(const LatinSquare& sq);

/// col[i] + col[n-1-i] == n-1 (mod n) for every row of the upper half.
[[nodiscard]] bool has_reflection(const ColumnVector& col);

/// counts[d] = #{ i in 0..n-1 : a[i] - b[i] == d (mod n) }. Throws OrderMismatch.
[[nodiscard]] DifferenceProfile difference_profile(const ColumnVector& a, const ColumnVector& b);

/// n/2 twice, 0 never, every other residue once.
[[nodiscard]] bool is_quasi_difference(const DifferenceProfile& p);

/// Builds the dense pair histogram of the superimposition of l on m and
/// checks it against the near-orthogonality definition. Throws OrderMismatch.
[[nodiscard]] NearOrthoVerdict check_near_orthogonal(const LatinSquare& l, const LatinSquare& m);

/// Upper bound on the size of a set of mutually nearly orthogonal Latin
/// squares of order n: n/2 + 1 when n == 2 (mod 4), n/2 when n == 0 (mod 4).
[[nodiscard]] std::uint32_t mnols_bound(Order order) noexcept;

// ---------------------------------------------------------------------------
// Bezout certificates for the gcd facts the constructions rely on.

/// slope*k + intercept.
struct Linear {
  std::int64_t slope;
  std::int64_t intercept;

  [[nodiscard]] __int128 eval(std::uint64_t k) const noexcept {
    return static_cast<__int128>(slope) * static_cast<__int128>(k) + intercept;
  }
  [[nodiscard]] std::string to_string() const;
};

/// sign * coefficient(k) * operand(k).
struct BezoutTerm {
  int sign;
  Linear coefficient;
  Linear operand;
};

struct GcdCertificate {
  FamilyId family;
  int identity_index = 0;  // 1..4
  /// The claim is gcd(gcd_operands[0](k), gcd_operands[1](k)) == 1.
  std::array<Linear, 2> gcd_operands{};
  /// The printed integer identity, evaluated verbatim.
  std::array<BezoutTerm, 2> terms{};
  std::int64_t lhs_value = 0;
  /// lhs_value == 1.
  bool holds = false;
  /// Euclidean gcd of the two operands, independent of the identity.
  std::uint64_t euclid_gcd = 0;

  [[nodiscard]] std::string lhs_description() const;
  [[nodiscard]] std::string claim_description() const;
};

/// Evaluates the four Bezout identities recorded for the family at its k.
/// Throws InvalidOrder when k is outside the supported range.
[[nodiscard]] std::array<GcdCertificate, 4> gcd_certificates(const FamilyId& family);

// ---------------------------------------------------------------------------
// Whole-triple verification.

enum class VerificationMode { Profile, Full };

[[nodiscard]] std::string to_string(VerificationMode mode);
[[nodiscard]] std::optional<VerificationMode> parse_verification_mode(std::string_view text);

/// Largest order accepted in full mode (16.8M histogram cells per pair).
inline constexpr std::uint32_t kDefaultFullCeiling = 4096;

struct PairCheck {
  std::size_t first = 0;   // 1-based column index
  std::size_t second = 0;  // 1-based column index, > first
  bool profile_ok = false;
  std::optional<bool> full_ok;
};

struct VerificationReport {
  static constexpr std::size_t kMaxDetails = 100;

  std::optional<FamilyId> family;
  std::uint32_t n = 0;
  VerificationMode mode = VerificationMode::Profile;
  bool columns_ok = false;
  bool reflection_ok = false;
  std::optional<bool> latin_ok;  // set in full mode only
  std::vector<PairCheck> pairwise;
  std::chrono::duration<double, std::milli> elapsed{0};
  /// Human-readable failure notes, truncated at kMaxDetails.
  std::vector<std::string> details;

  [[nodiscard]] bool pass() const;
};

/// Checks an arbitrary column set: permutations, reflection, pairwise
/// quasi-difference profiles and, in full mode, Latin squares plus all
/// superimposition histograms. Throws OrderMismatch on mixed orders and
/// FullCheckTooLarge when full mode is asked for n > full_ceiling.
[[nodiscard]] VerificationReport verify_columns(std::span<const ColumnVector> columns,
                                                VerificationMode mode,
                                                std::uint32_t full_ceiling = kDefaultFullCeiling);

/// verify_columns on build_triple(family), with the family recorded.
[[nodiscard]] VerificationReport verify_triple(const FamilyId& family, VerificationMode mode,
                                               std::uint32_t full_ceiling = kDefaultFullCeiling);

}  // namespace mnols
