// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mnols/cli.hpp"
#include "mnols/constructions.hpp"
#include "mnols/io.hpp"
#include "mnols/search.hpp"
#include "mnols/verification.hpp"
#include "oracle.hpp"

using namespace mnols;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  // Records a failed expectation; the first few are kept for the summary.
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) note << "FAILED: ";
    else note << "; ";
    pass = false;
    note << what;
  }
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<void(Outcome&)> body;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// --------------------------------------------------------------------------

void construction_at_scale(Outcome& o) {
  const auto start = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"verify", "--all-families", "--k-range", "0..200", "--mode", "profile"},
                            out, err);
  const double elapsed = seconds_since(start);
  o.expect(code == 0, "verify exit code " + std::to_string(code));
  const auto records = split_lines(out.str());
  o.expect(records.size() == 4 * 201, "expected 804 records, got " + std::to_string(records.size()));
  std::size_t passed = 0;
  for (const auto& line : records) {
    const VerificationReport r = io::report_from_document(io::parse_document(line));
    const bool ok = r.columns_ok && r.reflection_ok && r.pairwise.size() == 3 &&
                    r.pairwise[0].profile_ok && r.pairwise[1].profile_ok && r.pairwise[2].profile_ok;
    passed += ok;
    if (!ok) o.expect(false, "report failed for " + to_string(*r.family));
  }
  o.expect(elapsed < 10.0, "took " + std::to_string(elapsed) + " s (limit 10 s)");
  o.note << passed << "/" << records.size() << " (family,k) triples pass in " << elapsed << " s";
}

void full_small_scale(Outcome& o) {
  std::size_t checked = 0;
  std::uint32_t largest = 0;
  for (FamilyTag tag : kAllFamilies) {
    for (std::uint64_t k = 0; k <= 2; ++k) {
      const FamilyId id{tag, k};
      const VerificationReport report = verify_triple(id, VerificationMode::Full);
      o.expect(report.pass(), "full verification failed for " + to_string(id));
      // Exact histogram shape: 0 on the diagonal, 2 on partners, 1 elsewhere.
      const auto triple = build_triple(id);
      const Order order = id.order();
      largest = std::max(largest, order.n());
      std::vector<LatinSquare> squares;
      for (const auto& col : triple) {
        squares.push_back(develop(col));
        o.expect(is_latin(squares.back()), "not Latin: " + to_string(id));
      }
      for (auto [s, t] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const NearOrthoVerdict v = check_near_orthogonal(squares[s], squares[t]);
        bool exact = v.pass;
        for (Symbol x = 0; x < order.n(); ++x) {
          for (Symbol y = 0; y < order.n(); ++y) {
            const PairClass cls = classify_pair(x, y, order);
            const std::uint32_t want =
                cls == PairClass::Diagonal ? 0 : (cls == PairClass::Partner ? 2 : 1);
            exact = exact && v.count(x, y) == want;
          }
        }
        o.expect(exact, "histogram not exact for " + to_string(id));
        ++checked;
      }
    }
  }
  o.note << checked << " superimpositions exact, n up to " << largest;
}

void exact_regression_n14(Outcome& o) {
  const auto t = build_triple({FamilyTag::F14, 0});
  const std::vector<Symbol> c2 = {1, 3, 5, 7, 9, 11, 13, 0, 2, 4, 6, 8, 10, 12};
  const std::vector<Symbol> c3 = {2, 8, 7, 13, 12, 4, 3, 10, 9, 1, 0, 6, 5, 11};
  o.expect(std::vector<Symbol>(t[1].entries().begin(), t[1].entries().end()) == c2, "C_2 differs");
  o.expect(std::vector<Symbol>(t[2].entries().begin(), t[2].entries().end()) == c3, "C_3 differs");
  for (auto [s, u] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}}) {
    const DifferenceProfile p = difference_profile(t[s], t[u]);
    bool ok = p.count(0) == 0 && p.count(7) == 2;
    for (Symbol d = 1; d <= 13; ++d) {
      if (d != 7) ok = ok && p.count(d) == 1;
    }
    o.expect(ok, "profile of (C_" + std::to_string(s + 1) + ", C_" + std::to_string(u + 1) +
                     ") has the wrong shape");
  }
  o.note << "C_2, C_3 and all three profiles match";
}

void theorem2_equivalence(Outcome& o, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t pairs = 0, positives = 0;
  const auto check = [&](const ColumnVector& a, const ColumnVector& b) {
    const bool by_square = check_near_orthogonal(develop(a), develop(b)).pass;
    const bool by_profile = is_quasi_difference(difference_profile(b, a));
    o.expect(by_square == by_profile, "disagreement at n = " + std::to_string(a.order().n()));
    ++pairs;
    positives += by_profile;
  };
  for (std::uint32_t n : {4u, 6u, 8u, 10u}) {
    const Order order(n);
    for (int trial = 0; trial < 500; ++trial) {
      check(ColumnVector(order, oracle::random_permutation(n, rng)),
            ColumnVector(order, oracle::random_permutation(n, rng)));
    }
    // Compatible pairs are rare among random ones; add known positives,
    // relabelled by a random row permutation and symbol shift.
    const std::vector<ColumnVector> base = {identity_column(order)};
    SearchBudget budget;
    budget.max_solutions = 50;
    for (const auto& set : extend_search(base, order, budget).solutions) {
      const auto rows = oracle::random_permutation(n, rng);
      const Symbol shift = static_cast<Symbol>(rng() % n);
      std::vector<Symbol> a(n), b(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        a[i] = (set[0][rows[i]] + shift) % n;
        b[i] = (set[1][rows[i]] + shift) % n;
      }
      check(ColumnVector(order, a), ColumnVector(order, b));
    }
  }
  o.expect(pairs >= 2000, "too few pairs");
  o.note << pairs << " pairs agree (" << positives << " near-orthogonal), seed " << seed;
}

void bound_function(Outcome& o) {
  o.expect(mnols_bound(Order(6)) == 4, "bound(6)");
  o.expect(mnols_bound(Order(8)) == 4, "bound(8)");
  o.expect(mnols_bound(Order(14)) == 8, "bound(14)");
  for (std::uint64_t k = 0; k <= 10; ++k) {
    o.expect(mnols_bound(Order(48 * k + 14)) == 24 * k + 8, "bound(48k+14), k=" + std::to_string(k));
  }
  o.note << "bound(6)=4, bound(8)=4, bound(14)=8, bound(48k+14)=24k+8 for k<=10";
}

void gcd_certificates_check(Outcome& o) {
  std::vector<std::uint64_t> ks;
  for (std::uint64_t j = 0; j <= 10'000; ++j) ks.push_back(j * 100);  // 0 .. 10^6 inclusive
  std::size_t identities = 0;
  std::int64_t f46_item4_at_zero = 0;
  for (FamilyTag tag : kAllFamilies) {
    for (std::uint64_t k : ks) {
      for (const GcdCertificate& c : gcd_certificates({tag, k})) {
        const auto a = static_cast<std::uint64_t>(c.gcd_operands[0].eval(k));
        const auto b = static_cast<std::uint64_t>(c.gcd_operands[1].eval(k));
        o.expect(oracle::euclid(a, b) == 1, "Euclid gcd != 1: " + c.claim_description() +
                                                " at k=" + std::to_string(k));
        if (tag == FamilyTag::F46 && c.identity_index == 4) {
          if (k == 0) f46_item4_at_zero = c.lhs_value;
          o.expect(!c.holds, "printed F46 identity 4 unexpectedly equals 1");
        } else {
          o.expect(c.holds, to_string(tag) + " identity " + std::to_string(c.identity_index) +
                                " fails at k=" + std::to_string(k));
          ++identities;
        }
      }
    }
  }
  o.note << identities << " printed identities hold over " << ks.size()
         << " k-values in [0, 1e6]; Euclid gcd = 1 for all 16 claims; printed "
         << "(24k+21)(12k+11) + (6k+6)(48k+46) evaluates to " << f46_item4_at_zero
         << " at k=0, not 1 (recorded)";
}

void search_oracle(Outcome& o) {
  std::ostringstream out, err;
  const int code = cli::run({"search", "--n", "14", "--t", "3", "--max-nodes", "100000000"}, out, err);
  o.expect(code == 0, "search exit code " + std::to_string(code));
  std::uint64_t nodes = 0;
  if (code == 0) {
    const auto rec = io::search_from_document(io::parse_document(split_lines(out.str()).at(0)));
    nodes = rec.outcome.nodes_expanded;
    o.expect(!rec.outcome.solutions.empty(), "no triple found");
    if (!rec.outcome.solutions.empty()) {
      const VerificationReport r = verify_columns(rec.outcome.solutions[0], VerificationMode::Full);
      bool ok = r.columns_ok && r.latin_ok == true;
      for (const PairCheck& p : r.pairwise) ok = ok && p.profile_ok && p.full_ok == true;
      o.expect(ok, "found triple fails full verification");
    }
  }

  const auto count = [](std::uint32_t n) {
    const std::vector<ColumnVector> base = {identity_column(Order(n))};
    return count_extensions(base, Order(n));
  };
  const std::uint64_t c4 = count(4), c6 = count(6);
  o.expect(c4 == 4, "count_extensions(identity, 4) = " + std::to_string(c4) + ", pinned 4");
  o.expect(c6 == 24, "count_extensions(identity, 6) = " + std::to_string(c6) + ", pinned 24");

  for (std::uint32_t n : {2u, 4u, 6u}) {
    const std::vector<ColumnVector> base = {identity_column(Order(n))};
    std::vector<std::vector<Symbol>> brute;
    for (const auto& perm : oracle::all_permutations(n)) {
      if (oracle::quasi_difference_by_sorting(perm, base[0].entries())) brute.push_back(perm);
    }
    std::vector<std::vector<Symbol>> searched;
    for (const auto& set : extend_search(base, Order(n), SearchBudget::unlimited()).solutions) {
      searched.emplace_back(set[1].entries().begin(), set[1].entries().end());
    }
    o.expect(brute == searched, "pruned search differs from enumeration at n=" + std::to_string(n));
  }
  o.note << "n=14 triple found in " << nodes << " nodes and fully verified; counts 4 and 24; "
         << "pruning exact at n=2,4,6";
}

void large_order_smoke(Outcome& o) {
  const auto start = Clock::now();
  std::ostringstream per_family;
  for (FamilyTag tag : kAllFamilies) {
    const auto t0 = Clock::now();
    const FamilyId id{tag, 1'000'000};
    const VerificationReport r = verify_triple(id, VerificationMode::Profile);
    o.expect(r.pass(), "profile verification failed for " + to_string(id));
    per_family << to_string(tag) << " n=" << r.n << " " << seconds_since(t0) << "s ";
  }
  const double elapsed = seconds_since(start);
  o.expect(elapsed < 60.0, "took " + std::to_string(elapsed) + " s (limit 60 s)");
  o.note << per_family.str() << "total " << elapsed << " s";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = oracle::seed(0);
  app.add_option("--seed", seed, "Seed for the randomized criterion");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"AC1", "construction correctness, profile mode, k = 0..200", construction_at_scale},
      {"AC2", "full MNOLS verification, k in {0,1,2}", full_small_scale},
      {"AC3", "exact column regression at n = 14", exact_regression_n14},
      {"AC4", "square/profile equivalence on random pairs",
       [seed](Outcome& o) { theorem2_equivalence(o, seed); }},
      {"AC5", "MNOLS size bound", bound_function},
      {"AC6", "gcd certificates", gcd_certificates_check},
      {"AC7", "search oracle", search_oracle},
      {"AC8", "large-order smoke test, k = 10^6", large_order_smoke},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    try {
      c.body(outcome);
    } catch (const std::exception& e) {
      outcome.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << ": "
              << outcome.note.str() << std::endl;
    failures += !outcome.pass;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : "acceptance FAILED") << '\n';
  return failures == 0 ? 0 : 1;
}
