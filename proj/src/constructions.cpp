#include "mnols/constructions.hpp"

#include <numeric>
#include <string>

#include "mnols/errors.hpp"

namespace mnols {

namespace {

// Index 0 holds C_2, index 1 holds C_3.
struct FamilyFormulas {
  FamilyTag tag;
  std::array<HalfColumnFormula, 2> columns;
};

// clang-format off
constexpr std::array<FamilyFormulas, 4> kFormulas = {{
    {FamilyTag::F14, {{{{6, 1, 12, 4}, {12, 3, 12, 4}},
                       {{6, 2, 12, 5}, {24, 8, 12, 5}}}}},
    {FamilyTag::F22, {{{{30, 13, 12, 6}, {12, 5, 12, 6}},
                       {{30, 14, 12, 7}, {24, 12, 12, 7}}}}},
    {FamilyTag::F38, {{{{30, 23, 12, 10}, {12, 9, 12, 10}},
                       {{30, 24, 12, 11}, {24, 20, 12, 11}}}}},
    {FamilyTag::F46, {{{{6, 5, 12, 12}, {12, 11, 12, 12}},
                       {{6, 6, 12, 13}, {24, 24, 12, 13}}}}},
}};
// clang-format on

// Fills rows parity, parity + 2, ... of out with base + i*step mod n.
void fill_progression(std::vector<Symbol>& out, std::size_t first_row,
                      const AffineProgression& prog, std::uint64_t k, Order order) {
  const std::uint64_t n = order.n();
  const std::uint64_t step = mod_reduce(prog.step(k), order);
  std::uint64_t value = mod_reduce(prog.base(k), order);
  for (std::size_t row = first_row; row < out.size(); row += 2) {
    out[row] = static_cast<Symbol>(value);
    value += step;
    if (value >= n) value -= n;
  }
}

}  // namespace

HalfColumn::HalfColumn(Order order, std::vector<Symbol> entries)
    : order_(order), entries_(std::move(entries)) {
  if (entries_.size() != order_.half()) {
    throw InvalidArgument("half column has " + std::to_string(entries_.size()) +
                          " entries, expected " + std::to_string(order_.half()));
  }
  for (Symbol s : entries_) {
    if (s >= order_.n()) {
      throw SymbolOutOfRange("half column entry " + std::to_string(s) + " not below n = " +
                             std::to_string(order_.n()));
    }
  }
}

std::int64_t AffineProgression::base(std::uint64_t k) const noexcept {
  return base_k * static_cast<std::int64_t>(k) + base_c;
}

std::int64_t AffineProgression::step(std::uint64_t k) const noexcept {
  return step_k * static_cast<std::int64_t>(k) + step_c;
}

const HalfColumnFormula& half_column_formula(FamilyTag tag, int alpha) {
  if (alpha != 2 && alpha != 3) {
    throw InvalidArgument("alpha must be 2 or 3, got " + std::to_string(alpha));
  }
  for (const auto& f : kFormulas) {
    if (f.tag == tag) return f.columns[static_cast<std::size_t>(alpha - 2)];
  }
  throw InvalidArgument("unknown family tag");
}

ColumnVector identity_column(Order order) {
  std::vector<Symbol> entries(order.n());
  std::iota(entries.begin(), entries.end(), Symbol{0});
  return ColumnVector(order, std::move(entries));
}

HalfColumn half_column(const FamilyId& family, int alpha) {
  const HalfColumnFormula& formula = half_column_formula(family.tag, alpha);
  const Order order = family.order();
  std::vector<Symbol> entries(order.half());
  fill_progression(entries, 0, formula.even, family.k, order);
  fill_progression(entries, 1, formula.odd, family.k, order);
  return HalfColumn(order, std::move(entries));
}

ColumnVector reflect_complete(const HalfColumn& half) {
  const Order order = half.order();
  const std::uint32_t n = order.n();
  std::vector<Symbol> entries(n);
  for (std::size_t i = 0; i < half.size(); ++i) {
    entries[i] = half[i];
    entries[n - 1 - i] = (n - 1) - half[i];
  }
  return ColumnVector(order, std::move(entries));
}

std::array<ColumnVector, 3> build_triple(const FamilyId& family) {
  std::array<ColumnVector, 3> triple = {identity_column(family.order()),
                                        reflect_complete(half_column(family, 2)),
                                        reflect_complete(half_column(family, 3))};
  for (std::size_t s = 0; s < triple.size(); ++s) {
    if (!is_permutation(triple[s])) {
      throw ConstructionInvariantViolation("column C_" + std::to_string(s + 1) + " of " +
                                           to_string(family) + " is not a permutation");
    }
  }
  return triple;
}

LatinSquare develop(const ColumnVector& col) {
  if (!is_permutation(col)) {
    throw NotAPermutation("cannot develop a column that is not a permutation of Z_n");
  }
  const std::uint32_t n = col.order().n();
  std::vector<Symbol> cells(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < n; ++i) {
    Symbol value = col[i];
    Symbol* row = cells.data() + i * n;
    for (std::uint32_t j = 0; j < n; ++j) {
      row[j] = value;
      if (++value == n) value = 0;
    }
  }
  return LatinSquare(col.order(), std::move(cells));
}

FamilyId family_of(std::uint64_t n) {
  if (n >= 14) {
    const std::uint64_t residue = n % 48;
    for (FamilyTag tag : kAllFamilies) {
      if (residue == family_residue(tag) && n >= residue) {
        FamilyId family{tag, (n - residue) / 48};
        (void)family.order();
        return family;
      }
    }
  }
  throw UnsupportedOrder("order " + std::to_string(n) +
                         " is not 14, 22, 38 or 46 mod 48 (with n >= 14)");
}

}  // namespace mnols
