#include "mnols/core.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

#include "mnols/errors.hpp"

namespace mnols {

namespace {

constexpr std::uint64_t kMaxOrder = std::numeric_limits<Symbol>::max() - 1;

}  // namespace

Order::Order(std::uint64_t n) : n_(0) {
  if (n < 2 || n > kMaxOrder) {
    throw InvalidOrder("order " + std::to_string(n) + " outside [2, " +
                       std::to_string(kMaxOrder) + "]");
  }
  if (n % 2 != 0) {
    throw OddOrder("order " + std::to_string(n) + " is odd; near-orthogonality needs even n");
  }
  n_ = static_cast<std::uint32_t>(n);
}

std::uint32_t family_residue(FamilyTag tag) noexcept {
  switch (tag) {
    case FamilyTag::F14: return 14;
    case FamilyTag::F22: return 22;
    case FamilyTag::F38: return 38;
    case FamilyTag::F46: return 46;
  }
  return 0;
}

std::string to_string(FamilyTag tag) { return "f" + std::to_string(family_residue(tag)); }

std::optional<FamilyTag> parse_family_tag(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (FamilyTag tag : kAllFamilies) {
    if (lowered == to_string(tag)) return tag;
  }
  return std::nullopt;
}

Order FamilyId::order() const {
  if (k > (kMaxOrder - family_residue(tag)) / 48) {
    throw InvalidOrder("k = " + std::to_string(k) + " overflows the symbol range");
  }
  return Order(48 * k + family_residue(tag));
}

std::string to_string(const FamilyId& family) {
  return to_string(family.tag) + ",k=" + std::to_string(family.k);
}

Symbol mod_reduce(std::int64_t value, Order order) noexcept {
  const auto n = static_cast<std::int64_t>(order.n());
  std::int64_t r = value % n;
  if (r < 0) r += n;
  return static_cast<Symbol>(r);
}

ColumnVector::ColumnVector(Order order, std::vector<Symbol> entries)
    : order_(order), entries_(std::move(entries)) {
  if (entries_.size() != order_.n()) {
    throw InvalidArgument("column has " + std::to_string(entries_.size()) +
                          " entries, expected " + std::to_string(order_.n()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] >= order_.n()) {
      throw SymbolOutOfRange("column entry " + std::to_string(i) + " = " +
                             std::to_string(entries_[i]) + " not below n = " +
                             std::to_string(order_.n()));
    }
  }
}

LatinSquare::LatinSquare(Order order, std::vector<Symbol> cells)
    : order_(order), cells_(std::move(cells)) {
  const std::uint64_t n = order_.n();
  if (cells_.size() != n * n) {
    throw InvalidArgument("square has " + std::to_string(cells_.size()) +
                          " cells, expected " + std::to_string(n * n));
  }
  if (std::any_of(cells_.begin(), cells_.end(), [n](Symbol s) { return s >= n; })) {
    throw SymbolOutOfRange("square holds a symbol not below n = " + std::to_string(n));
  }
}

DifferenceProfile::DifferenceProfile(Order order, std::vector<std::uint32_t> counts)
    : order_(order), counts_(std::move(counts)) {
  if (counts_.size() != order_.n()) {
    throw InvalidArgument("profile has " + std::to_string(counts_.size()) +
                          " slots, expected " + std::to_string(order_.n()));
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

PairClass classify_pair(Symbol x, Symbol y, Order order) noexcept {
  if (x == y) return PairClass::Diagonal;
  const std::uint64_t partner = (static_cast<std::uint64_t>(x) + order.half()) % order.n();
  return y == partner ? PairClass::Partner : PairClass::Other;
}

std::string to_string(PairClass cls) {
  switch (cls) {
    case PairClass::Diagonal: return "diagonal(0)";
    case PairClass::Partner: return "partner(2)";
    case PairClass::Other: return "other(1)";
  }
  return "?";
}

bool is_permutation(std::span<const Symbol> values, std::uint32_t n) {
  if (values.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Symbol v : values) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_permutation(const ColumnVector& col) {
  return is_permutation(col.entries(), col.order().n());
}

}  // namespace mnols
