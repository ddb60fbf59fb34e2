#include "mnols/verification.hpp"

#include <algorithm>
#include <numeric>

#include "mnols/constructions.hpp"
#include "mnols/errors.hpp"

namespace mnols {

namespace {

void require_same_order(Order a, Order b) {
  if (a != b) {
    throw OrderMismatch("orders differ: " + std::to_string(a.n()) + " vs " +
                        std::to_string(b.n()));
  }
}

std::uint32_t expected_pair_count(PairClass cls) {
  switch (cls) {
    case PairClass::Diagonal: return 0;
    case PairClass::Partner: return 2;
    case PairClass::Other: return 1;
  }
  return 0;
}

std::string signed_term(int sign, const std::string& body, bool leading) {
  if (leading) return sign < 0 ? "-" + body : body;
  return (sign < 0 ? " - " : " + ") + body;
}

void add_detail(VerificationReport& report, std::string text) {
  if (report.details.size() < VerificationReport::kMaxDetails) {
    report.details.push_back(std::move(text));
  }
}

std::string pair_label(std::size_t s, std::size_t t) {
  return "pair (" + std::to_string(s) + "," + std::to_string(t) + ")";
}

struct CertificateRow {
  FamilyTag tag;
  Linear operand_a;
  Linear operand_b;
  BezoutTerm first;
  BezoutTerm second;
};

// The four gcd claims per family (in item order) and the integer identities
// printed as their proofs, transcribed term by term. The F46 item 4 identity
// keeps its printed "+" and therefore does not evaluate to 1.
// clang-format off
constexpr std::array<CertificateRow, 16> kCertificates = {{
    {FamilyTag::F14, {6, 2},   {24, 7},  {+1, {0, 4}, {6, 2}},     {-1, {0, 1}, {24, 7}}},
    {FamilyTag::F14, {12, 5},  {48, 14}, {+1, {8, 3}, {12, 5}},    {-1, {2, 1}, {48, 14}}},
    {FamilyTag::F14, {6, 1},   {24, 7},  {+1, {4, 1}, {24, 7}},    {-1, {16, 6}, {6, 1}}},
    {FamilyTag::F14, {12, 3},  {48, 14}, {+1, {24, 5}, {12, 3}},   {-1, {6, 1}, {48, 14}}},

    {FamilyTag::F22, {6, 3},   {24, 11}, {+1, {0, 4}, {6, 3}},     {-1, {0, 1}, {24, 11}}},
    {FamilyTag::F22, {12, 7},  {48, 22}, {+1, {2, 1}, {48, 22}},   {-1, {8, 3}, {12, 7}}},
    {FamilyTag::F22, {6, 2},   {24, 11}, {+1, {2, 1}, {24, 11}},   {-1, {8, 5}, {6, 2}}},
    {FamilyTag::F22, {12, 5},  {48, 22}, {+1, {24, 9}, {12, 5}},   {-1, {6, 2}, {48, 22}}},

    {FamilyTag::F38, {6, 5},   {24, 19}, {+1, {0, 4}, {6, 5}},     {-1, {0, 1}, {24, 19}}},
    {FamilyTag::F38, {12, 11}, {48, 38}, {+1, {8, 7}, {12, 11}},   {-1, {2, 2}, {48, 38}}},
    {FamilyTag::F38, {6, 4},   {24, 19}, {+1, {8, 5}, {6, 4}},     {-1, {2, 1}, {24, 19}}},
    {FamilyTag::F38, {12, 9},  {48, 38}, {+1, {24, 17}, {12, 9}},  {-1, {6, 4}, {48, 38}}},

    {FamilyTag::F46, {6, 6},   {24, 23}, {+1, {0, 4}, {6, 6}},     {-1, {0, 1}, {24, 23}}},
    {FamilyTag::F46, {12, 13}, {48, 46}, {+1, {-8, -7}, {12, 13}}, {+1, {2, 2}, {48, 46}}},
    {FamilyTag::F46, {6, 5},   {24, 23}, {+1, {-8, -9}, {6, 5}},   {+1, {2, 2}, {24, 23}}},
    {FamilyTag::F46, {12, 11}, {48, 46}, {+1, {24, 21}, {12, 11}}, {+1, {6, 6}, {48, 46}}},
}};
// clang-format on

}  // namespace

bool is_latin(const LatinSquare& sq) {
  const std::uint32_t n = sq.order().n();
  // Generation-stamped marks avoid clearing a seen-array per line.
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  for (std::uint32_t r = 0; r < n; ++r) {
    ++stamp;
    for (std::uint32_t c = 0; c < n; ++c) {
      const Symbol s = sq.at(r, c);
      if (mark[s] == stamp) return false;
      mark[s] = stamp;
    }
  }
  for (std::uint32_t c = 0; c < n; ++c) {
    ++stamp;
    for (std::uint32_t r = 0; r < n; ++r) {
      const Symbol s = sq.at(r, c);
      if (mark[s] == stamp) return false;
      mark[s] = stamp;
    }
  }
  return true;
}

bool has_reflection(const ColumnVector& col) {
  const std::uint32_t n = col.order().n();
  for (std::uint32_t i = 0; i < col.order().half(); ++i) {
    const std::uint64_t sum = static_cast<std::uint64_t>(col[i]) + col[n - 1 - i];
    if (sum % n != n - 1) return false;
  }
  return true;
}

DifferenceProfile difference_profile(const ColumnVector& a, const ColumnVector& b) {
  require_same_order(a.order(), b.order());
  const std::uint32_t n = a.order().n();
  std::vector<std::uint32_t> counts(n, 0);
  const auto lhs = a.entries();
  const auto rhs = b.entries();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t d = lhs[i] >= rhs[i] ? lhs[i] - rhs[i] : lhs[i] + (n - rhs[i]);
    ++counts[d];
  }
  return DifferenceProfile(a.order(), std::move(counts));
}

bool is_quasi_difference(const DifferenceProfile& p) {
  const std::uint32_t n = p.order().n();
  const std::uint32_t half = p.order().half();
  if (p.total() != n) return false;
  for (std::uint32_t d = 0; d < n; ++d) {
    const std::uint32_t expected = d == 0 ? 0 : (d == half ? 2 : 1);
    if (p.count(d) != expected) return false;
  }
  return true;
}

NearOrthoVerdict check_near_orthogonal(const LatinSquare& l, const LatinSquare& m) {
  require_same_order(l.order(), m.order());
  const Order order = l.order();
  const std::uint32_t n = order.n();

  NearOrthoVerdict verdict;
  verdict.n = n;
  verdict.pair_counts.assign(static_cast<std::size_t>(n) * n, 0);
  const auto lc = l.cells();
  const auto mc = m.cells();
  for (std::size_t cell = 0; cell < lc.size(); ++cell) {
    ++verdict.pair_counts[static_cast<std::size_t>(lc[cell]) * n + mc[cell]];
  }

  for (Symbol x = 0; x < n; ++x) {
    for (Symbol y = 0; y < n; ++y) {
      const std::uint32_t count = verdict.count(x, y);
      const PairClass cls = classify_pair(x, y, order);
      const bool ok = cls == PairClass::Other ? count >= 1 : count == expected_pair_count(cls);
      if (ok) continue;
      ++verdict.violation_count;
      if (verdict.violations.size() < NearOrthoVerdict::kMaxReportedViolations) {
        verdict.violations.push_back({x, y, count, cls});
      }
    }
  }
  verdict.pass = verdict.violation_count == 0;
  return verdict;
}

std::uint32_t mnols_bound(Order order) noexcept {
  return order.n() % 4 == 2 ? order.half() + 1 : order.half();
}

std::string Linear::to_string() const {
  std::string out;
  if (slope != 0) {
    out = (slope == -1 ? "-" : slope == 1 ? "" : std::to_string(slope)) + "k";
    if (intercept > 0) out += "+" + std::to_string(intercept);
    if (intercept < 0) out += std::to_string(intercept);
    return out;
  }
  return std::to_string(intercept);
}

std::string GcdCertificate::lhs_description() const {
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const BezoutTerm& term = terms[t];
    std::string body;
    if (term.coefficient.slope == 0 && term.coefficient.intercept == 1) {
      body = "(" + term.operand.to_string() + ")";
    } else if (term.coefficient.slope == 0) {
      body = std::to_string(term.coefficient.intercept) + "(" + term.operand.to_string() + ")";
    } else {
      body = "(" + term.coefficient.to_string() + ")(" + term.operand.to_string() + ")";
    }
    out += signed_term(term.sign, body, t == 0);
  }
  return out;
}

std::string GcdCertificate::claim_description() const {
  return "gcd(" + gcd_operands[0].to_string() + ", " + gcd_operands[1].to_string() + ") = 1";
}

std::array<GcdCertificate, 4> gcd_certificates(const FamilyId& family) {
  (void)family.order();  // bounds k so every product below fits in 64 bits
  std::array<GcdCertificate, 4> out;
  std::size_t filled = 0;
  for (const CertificateRow& row : kCertificates) {
    if (row.tag != family.tag) continue;
    GcdCertificate& cert = out[filled++];
    cert.family = family;
    cert.identity_index = static_cast<int>(filled);
    cert.gcd_operands = {row.operand_a, row.operand_b};
    cert.terms = {row.first, row.second};
    __int128 value = 0;
    for (const BezoutTerm& term : cert.terms) {
      value += term.sign * term.coefficient.eval(family.k) * term.operand.eval(family.k);
    }
    cert.lhs_value = static_cast<std::int64_t>(value);
    cert.holds = value == 1;
    cert.euclid_gcd = std::gcd(static_cast<std::uint64_t>(cert.gcd_operands[0].eval(family.k)),
                               static_cast<std::uint64_t>(cert.gcd_operands[1].eval(family.k)));
  }
  return out;
}

std::string to_string(VerificationMode mode) {
  return mode == VerificationMode::Full ? "full" : "profile";
}

std::optional<VerificationMode> parse_verification_mode(std::string_view text) {
  if (text == "profile") return VerificationMode::Profile;
  if (text == "full") return VerificationMode::Full;
  return std::nullopt;
}

bool VerificationReport::pass() const {
  if (!columns_ok || !reflection_ok) return false;
  if (mode == VerificationMode::Full && latin_ok != true) return false;
  return std::all_of(pairwise.begin(), pairwise.end(), [this](const PairCheck& p) {
    return p.profile_ok && (mode == VerificationMode::Profile || p.full_ok == true);
  });
}

VerificationReport verify_columns(std::span<const ColumnVector> columns, VerificationMode mode,
                                  std::uint32_t full_ceiling) {
  const auto started = std::chrono::steady_clock::now();
  if (columns.empty()) throw InvalidArgument("no columns to verify");
  const Order order = columns.front().order();
  for (const ColumnVector& col : columns) require_same_order(order, col.order());
  if (mode == VerificationMode::Full && order.n() > full_ceiling) {
    throw FullCheckTooLarge("full verification of n = " + std::to_string(order.n()) +
                            " exceeds the ceiling " + std::to_string(full_ceiling));
  }

  VerificationReport report;
  report.n = order.n();
  report.mode = mode;
  report.columns_ok = true;
  report.reflection_ok = true;
  for (std::size_t s = 0; s < columns.size(); ++s) {
    if (!is_permutation(columns[s])) {
      report.columns_ok = false;
      add_detail(report, "C_" + std::to_string(s + 1) + " is not a permutation of Z_n");
    }
    if (!has_reflection(columns[s])) {
      report.reflection_ok = false;
      add_detail(report, "C_" + std::to_string(s + 1) + " lacks the reflection property");
    }
  }

  for (std::size_t s = 0; s < columns.size(); ++s) {
    for (std::size_t t = s + 1; t < columns.size(); ++t) {
      PairCheck check;
      check.first = s + 1;
      check.second = t + 1;
      const DifferenceProfile profile = difference_profile(columns[t], columns[s]);
      check.profile_ok = is_quasi_difference(profile);
      if (!check.profile_ok) {
        for (Symbol d = 0; d < order.n(); ++d) {
          const std::uint32_t expected = d == 0 ? 0 : (d == order.half() ? 2 : 1);
          if (profile.count(d) != expected) {
            add_detail(report, pair_label(s + 1, t + 1) + ": difference " + std::to_string(d) +
                                   " occurs " + std::to_string(profile.count(d)) +
                                   " times, expected " + std::to_string(expected));
          }
        }
      }
      report.pairwise.push_back(check);
    }
  }

  if (mode == VerificationMode::Full) {
    if (!report.columns_ok) {
      report.latin_ok = false;
      for (PairCheck& p : report.pairwise) p.full_ok = false;
      add_detail(report, "full check skipped: columns cannot be developed");
    } else {
      std::vector<LatinSquare> squares;
      squares.reserve(columns.size());
      for (const ColumnVector& col : columns) squares.push_back(develop(col));
      report.latin_ok = std::all_of(squares.begin(), squares.end(),
                                    [](const LatinSquare& sq) { return is_latin(sq); });
      if (report.latin_ok != true) add_detail(report, "a developed square is not Latin");
      for (PairCheck& p : report.pairwise) {
        const NearOrthoVerdict verdict =
            check_near_orthogonal(squares[p.first - 1], squares[p.second - 1]);
        p.full_ok = verdict.pass;
        for (const PairViolation& v : verdict.violations) {
          add_detail(report, pair_label(p.first, p.second) + " superimposition: (" +
                                 std::to_string(v.x) + "," + std::to_string(v.y) + ") occurs " +
                                 std::to_string(v.count) + " times, expected " +
                                 to_string(v.expected));
        }
      }
    }
  }

  report.elapsed = std::chrono::steady_clock::now() - started;
  return report;
}

VerificationReport verify_triple(const FamilyId& family, VerificationMode mode,
                                 std::uint32_t full_ceiling) {
  const auto started = std::chrono::steady_clock::now();
  if (mode == VerificationMode::Full && family.order().n() > full_ceiling) {
    throw FullCheckTooLarge("full verification of n = " + std::to_string(family.order().n()) +
                            " exceeds the ceiling " + std::to_string(full_ceiling));
  }
  const auto triple = build_triple(family);
  VerificationReport report = verify_columns(triple, mode, full_ceiling);
  report.family = family;
  report.elapsed = std::chrono::steady_clock::now() - started;
  return report;
}

}  // namespace mnols
