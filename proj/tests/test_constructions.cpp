#include <random>

#include "doctest.h"
#include "mnols/constructions.hpp"
#include "mnols/errors.hpp"
#include "mnols/verification.hpp"
#include "oracle.hpp"

using namespace mnols;

namespace {

std::vector<Symbol> values(std::span<const Symbol> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("identity_column") {
  CHECK(values(identity_column(Order(4)).entries()) == std::vector<Symbol>{0, 1, 2, 3});
  const auto id14 = identity_column(Order(14));
  for (Symbol i = 0; i < 14; ++i) CHECK(id14[i] == i);
  for (std::uint32_t n = 2; n <= 200; n += 2) CHECK(has_reflection(identity_column(Order(n))));
}

TEST_CASE("half_column examples at k = 0") {
  CHECK(values(half_column({FamilyTag::F14, 0}, 2).entries()) ==
        std::vector<Symbol>{1, 3, 5, 7, 9, 11, 13});
  CHECK(values(half_column({FamilyTag::F14, 0}, 3).entries()) ==
        std::vector<Symbol>{2, 8, 7, 13, 12, 4, 3});
  CHECK(values(half_column({FamilyTag::F22, 0}, 2).entries()) ==
        std::vector<Symbol>{13, 5, 19, 11, 3, 17, 9, 1, 15, 7, 21});
  CHECK_THROWS_AS((void)half_column({FamilyTag::F14, 0}, 1), InvalidArgument);
}

TEST_CASE("reflect_complete examples") {
  const Order n14(14);
  CHECK(values(reflect_complete(HalfColumn(n14, {1, 3, 5, 7, 9, 11, 13})).entries()) ==
        std::vector<Symbol>{1, 3, 5, 7, 9, 11, 13, 0, 2, 4, 6, 8, 10, 12});
  CHECK(values(reflect_complete(HalfColumn(n14, {2, 8, 7, 13, 12, 4, 3})).entries()) ==
        std::vector<Symbol>{2, 8, 7, 13, 12, 4, 3, 10, 9, 1, 0, 6, 5, 11});
  CHECK(values(reflect_complete(HalfColumn(Order(4), {0, 1})).entries()) ==
        std::vector<Symbol>{0, 1, 2, 3});
  CHECK_THROWS_AS(HalfColumn(n14, {1, 2}), InvalidArgument);
}

TEST_CASE("build_triple examples") {
  const auto f14 = build_triple({FamilyTag::F14, 0});
  CHECK(f14[0] == identity_column(Order(14)));
  CHECK(values(f14[1].entries()) ==
        std::vector<Symbol>{1, 3, 5, 7, 9, 11, 13, 0, 2, 4, 6, 8, 10, 12});
  CHECK(values(f14[2].entries()) ==
        std::vector<Symbol>{2, 8, 7, 13, 12, 4, 3, 10, 9, 1, 0, 6, 5, 11});

  const auto f46 = build_triple({FamilyTag::F46, 0});
  CHECK(f46[1][0] == 5);
  CHECK(f46[1][1] == 11);
  CHECK(f46[1][2] == 17);
}

TEST_CASE("half columns match the printed sets evaluated directly") {
  for (FamilyTag tag : kAllFamilies) {
    const int residue = static_cast<int>(family_residue(tag));
    for (std::uint64_t k = 0; k <= 6; ++k) {
      for (int alpha : {2, 3}) {
        const auto expected = oracle::printed_column(residue, static_cast<std::int64_t>(k), alpha);
        const auto actual = reflect_complete(half_column({tag, k}, alpha));
        REQUIRE(expected.size() == actual.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
          CHECK(static_cast<std::int64_t>(actual[i]) == expected[i]);
        }
      }
    }
  }
}

TEST_CASE("large-k half columns agree with direct evaluation at sampled rows") {
  // Widened arithmetic: i * (12k + 13) exceeds 32 bits here.
  for (FamilyTag tag : kAllFamilies) {
    const std::uint64_t k = 2'000'000;
    const auto& formula = half_column_formula(tag, 3);
    const HalfColumn half = half_column({tag, k}, 3);
    const auto n = static_cast<std::int64_t>(48 * k + family_residue(tag));
    for (std::size_t row : {std::size_t{0}, std::size_t{1}, std::size_t{12345},
                            half.size() / 2, half.size() - 2, half.size() - 1}) {
      const auto& prog = row % 2 == 0 ? formula.even : formula.odd;
      const auto i = static_cast<std::int64_t>(row / 2);
      const std::int64_t value =
          prog.base_k * static_cast<std::int64_t>(k) + prog.base_c +
          i * (prog.step_k * static_cast<std::int64_t>(k) + prog.step_c);
      CHECK(half[row] == oracle::mod(value, n));
    }
  }
}

TEST_CASE("every constructed column is a reflective permutation") {
  for (FamilyTag tag : kAllFamilies) {
    for (std::uint64_t k = 0; k <= 40; ++k) {
      const auto triple = build_triple({tag, k});
      for (const auto& col : triple) {
        CHECK(is_permutation(col));
        CHECK(has_reflection(col));
      }
    }
  }
}

TEST_CASE("F14 C_2 splits parity between halves at k = 0") {
  const auto c2 = build_triple({FamilyTag::F14, 0})[1];
  for (std::size_t i = 0; i < 7; ++i) CHECK(c2[i] % 2 == 1);
  for (std::size_t i = 7; i < 14; ++i) CHECK(c2[i] % 2 == 0);
}

TEST_CASE("develop examples") {
  const LatinSquare sq = develop(identity_column(Order(4)));
  const std::vector<Symbol> expected = {0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2};
  CHECK(values(sq.cells()) == expected);
  CHECK(values(develop(ColumnVector(Order(2), {1, 0})).cells()) ==
        std::vector<Symbol>{1, 0, 0, 1});
  CHECK(is_latin(develop(build_triple({FamilyTag::F14, 0})[1])));
  CHECK_THROWS_AS((void)develop(ColumnVector(Order(4), {0, 0, 1, 2})), NotAPermutation);
}

TEST_CASE("develop of a random permutation is Latin") {
  std::mt19937_64 rng(oracle::seed(99));
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t n = 2 * std::uniform_int_distribution<std::uint32_t>(1, 20)(rng);
    const ColumnVector col(Order(n), oracle::random_permutation(n, rng));
    const LatinSquare sq = develop(col);
    CHECK(is_latin(sq));
    const auto reference = oracle::develop(col.entries());
    CHECK(std::equal(reference.begin(), reference.end(), sq.cells().begin()));
  }
}

TEST_CASE("family_of") {
  CHECK(family_of(14) == FamilyId{FamilyTag::F14, 0});
  CHECK(family_of(70) == FamilyId{FamilyTag::F22, 1});
  CHECK(family_of(48 * 5 + 38) == FamilyId{FamilyTag::F38, 5});
  CHECK(family_of(142) == FamilyId{FamilyTag::F46, 2});
  CHECK_THROWS_AS((void)family_of(16), UnsupportedOrder);
  CHECK_THROWS_AS((void)family_of(13), UnsupportedOrder);
  CHECK_THROWS_AS((void)family_of(6), UnsupportedOrder);
}
