#include "mnols/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "mnols/constructions.hpp"
#include "mnols/errors.hpp"
#include "mnols/io.hpp"
#include "mnols/search.hpp"
#include "mnols/verification.hpp"

namespace mnols::cli {

namespace {

// Thrown for bad flag combinations detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct KRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

KRange parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--k-range expects a..b, got '" + text + "'");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    KRange range{std::stoull(a, &used_a), std::stoull(b, &used_b)};
    if (used_a != a.size() || used_b != b.size() || a.empty() || b.empty() ||
        a.front() == '-' || b.front() == '-') {
      throw UsageError("--k-range expects a..b, got '" + text + "'");
    }
    if (range.first > range.last) throw UsageError("--k-range is empty: '" + text + "'");
    return range;
  } catch (const std::logic_error&) {
    throw UsageError("--k-range expects a..b, got '" + text + "'");
  }
}

FamilyTag require_family_tag(const std::string& text) {
  const auto tag = parse_family_tag(text);
  if (!tag) throw UsageError("unknown family '" + text + "' (expected f14, f22, f38 or f46)");
  return *tag;
}

// Family from either --n or --family/--k.
FamilyId resolve_family(std::optional<std::uint64_t> n, const std::optional<std::string>& family,
                        std::optional<std::uint64_t> k) {
  if (n && family) throw UsageError("give either --n or --family, not both");
  if (n) {
    if (k) throw UsageError("--k applies only with --family");
    return family_of(*n);
  }
  if (!family) throw UsageError("one of --n or --family is required");
  FamilyId id{require_family_tag(*family), k.value_or(0)};
  (void)id.order();
  return id;
}

// Owns the --output stream when one is given.
class OutputSink {
 public:
  OutputSink(const std::optional<std::string>& path, std::ostream& fallback)
      : stream_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::out | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file '" + *path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::optional<std::uint64_t> n;
  std::optional<std::string> family;
  std::optional<std::uint64_t> k;
  std::string format = "json";
  bool squares = false;
  std::optional<std::string> output;
};

int cmd_gen(const GenOptions& opt, std::ostream& out) {
  const FamilyId family = resolve_family(opt.n, opt.family, opt.k);
  const auto triple = build_triple(family);
  OutputSink sink(opt.output, out);
  if (opt.format == "csv") {
    for (std::size_t s = 0; s < triple.size(); ++s) {
      if (s != 0) sink.stream() << '\n';
      io::write_square_csv(sink.stream(), develop(triple[s]));
    }
    return kExitOk;
  }
  io::write_columns_document(sink.stream(), triple, family);
  if (opt.squares) {
    for (const ColumnVector& col : triple) {
      sink.stream() << io::serialize(io::square_document(develop(col), family)) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::optional<std::string> input;
  std::optional<std::string> family;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::optional<std::string> k_range;
  bool all_families = false;
  std::string mode = "profile";
  unsigned jobs = 1;
  std::uint32_t full_ceiling = kDefaultFullCeiling;
  std::optional<std::string> output;
};

// Either a finished report or the error that prevented one.
using JobResult = std::variant<VerificationReport, std::string>;

std::vector<JobResult> run_jobs(const std::vector<FamilyId>& jobs, VerificationMode mode,
                                std::uint32_t ceiling, unsigned workers) {
  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = verify_triple(jobs[i], mode, ceiling);
      } catch (const Error& e) {
        results[i] = to_string(jobs[i]) + ": " + e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return results;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  const auto mode = parse_verification_mode(opt.mode);
  if (!mode) throw UsageError("--mode must be profile or full");
  if (opt.jobs == 0) throw UsageError("--jobs must be positive");

  if (opt.input) {
    if (opt.family || opt.n || opt.k || opt.k_range || opt.all_families) {
      throw UsageError("--input cannot be combined with family selection flags");
    }
    const io::ArtifactDocument doc = io::parse_document(read_file(*opt.input));
    const auto columns = io::columns_from_document(doc);
    VerificationReport report = verify_columns(columns, *mode, opt.full_ceiling);
    if (doc.family) report.family = FamilyId{*doc.family, doc.k.value_or(0)};
    OutputSink sink(opt.output, out);
    sink.stream() << io::serialize(io::report_document(report)) << '\n';
    if (!report.pass()) {
      for (const std::string& d : report.details) err << "violation: " << d << '\n';
      return kExitVerificationFailed;
    }
    return kExitOk;
  }

  if (opt.k && opt.k_range) throw UsageError("give either --k or --k-range, not both");
  std::vector<FamilyTag> tags;
  KRange range{opt.k.value_or(0), opt.k.value_or(0)};
  if (opt.k_range) range = parse_k_range(*opt.k_range);
  if (opt.all_families) {
    if (opt.family || opt.n) throw UsageError("--all-families excludes --family and --n");
    tags.assign(kAllFamilies.begin(), kAllFamilies.end());
  } else if (opt.n) {
    if (opt.family || opt.k || opt.k_range) {
      throw UsageError("--n excludes --family, --k and --k-range");
    }
    const FamilyId id = family_of(*opt.n);
    tags.push_back(id.tag);
    range = {id.k, id.k};
  } else if (opt.family) {
    tags.push_back(require_family_tag(*opt.family));
  } else {
    throw UsageError("verify needs --input, --n, --family or --all-families");
  }

  std::vector<FamilyId> jobs;
  for (FamilyTag tag : tags) {
    for (std::uint64_t k = range.first;; ++k) {
      jobs.push_back({tag, k});
      (void)jobs.back().order();
      if (k == range.last) break;
    }
  }
  if (*mode == VerificationMode::Full) {
    for (const FamilyId& job : jobs) {
      if (job.order().n() > opt.full_ceiling) {
        throw FullCheckTooLarge("full verification of n = " + std::to_string(job.order().n()) +
                                " exceeds --full-ceiling " + std::to_string(opt.full_ceiling));
      }
    }
  }

  const auto results = run_jobs(jobs, *mode, opt.full_ceiling, opt.jobs);
  OutputSink sink(opt.output, out);
  int status = kExitOk;
  for (const JobResult& result : results) {
    if (const auto* report = std::get_if<VerificationReport>(&result)) {
      sink.stream() << io::serialize(io::report_document(*report)) << '\n';
      if (!report->pass()) {
        status = kExitVerificationFailed;
        for (const std::string& d : report->details) {
          err << "violation [" << to_string(*report->family) << "]: " << d << '\n';
        }
      }
    } else {
      err << "error: " << std::get<std::string>(result) << '\n';
      status = kExitVerificationFailed;
    }
  }
  return status;
}

// ---------------------------------------------------------------------------

struct SearchOptions {
  std::uint64_t n = 0;
  std::uint32_t t = 3;
  std::uint64_t max_nodes = 100'000'000;
  std::uint64_t max_solutions = 1;
  double time_cap_seconds = 600.0;
  bool reflection = false;
  std::optional<std::string> output;
};

int cmd_search(const SearchOptions& opt, std::ostream& out) {
  const Order order(opt.n);
  if (!(opt.time_cap_seconds > 0.0)) throw UsageError("--time-cap must be positive");
  SearchBudget budget;
  budget.max_nodes = opt.max_nodes;
  budget.max_solutions = opt.max_solutions;
  budget.time_cap = std::chrono::milliseconds(
      std::max<std::int64_t>(1, static_cast<std::int64_t>(opt.time_cap_seconds * 1000.0)));
  io::SearchRecord record;
  record.n = order.n();
  record.t = opt.t;
  record.reflection = opt.reflection;
  record.outcome = find_cyclic_mnols(order, opt.t, budget, opt.reflection);
  OutputSink sink(opt.output, out);
  sink.stream() << io::serialize(io::search_document(record)) << '\n';
  if (!record.outcome.solutions.empty() || record.outcome.exhausted) return kExitOk;
  return kExitBudgetExhausted;
}

// ---------------------------------------------------------------------------

struct QdsOptions {
  std::optional<std::uint64_t> n;
  std::optional<std::string> family;
  std::optional<std::uint64_t> k;
  std::string pair = "2,1";
  std::optional<std::string> output;
};

std::array<std::uint32_t, 2> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  const auto bad = [&] {
    return UsageError("--pair expects two distinct column indices from {1,2,3}, got '" + text +
                      "'");
  };
  if (comma == std::string::npos) throw bad();
  const std::string a = text.substr(0, comma);
  const std::string b = text.substr(comma + 1);
  if (a.size() != 1 || b.size() != 1) throw bad();
  const std::array<std::uint32_t, 2> pair = {static_cast<std::uint32_t>(a[0] - '0'),
                                             static_cast<std::uint32_t>(b[0] - '0')};
  for (std::uint32_t v : pair) {
    if (v < 1 || v > 3) throw bad();
  }
  if (pair[0] == pair[1]) throw bad();
  return pair;
}

int cmd_qds(const QdsOptions& opt, std::ostream& out) {
  const FamilyId family = resolve_family(opt.n, opt.family, opt.k);
  const auto pair = parse_pair(opt.pair);
  const auto triple = build_triple(family);
  const io::ProfileRecord record =
      io::make_profile_record(pair[0], triple[pair[0] - 1], pair[1], triple[pair[1] - 1]);
  OutputSink sink(opt.output, out);
  sink.stream() << io::serialize(io::profile_document(record, family)) << '\n';
  return record.quasi_difference ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and search for cyclic mutually nearly orthogonal Latin squares",
               "mnols"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit the three family columns for an order");
  gen_cmd->add_option("--n", gen.n, "Order (14, 22, 38 or 46 mod 48)");
  gen_cmd->add_option("--family", gen.family, "Family tag: f14, f22, f38, f46");
  gen_cmd->add_option("--k", gen.k, "Family parameter k >= 0");
  gen_cmd->add_option("--format", gen.format, "json or csv (csv writes developed squares)")
      ->check(CLI::IsMember({"json", "csv"}));
  gen_cmd->add_flag("--squares", gen.squares, "Also emit the developed squares");
  gen_cmd->add_option("--output", gen.output, "Write to this file instead of stdout");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify family triples or a column file");
  verify_cmd->add_option("--input", verify.input, "Columns document to verify");
  verify_cmd->add_option("--family", verify.family, "Family tag: f14, f22, f38, f46");
  verify_cmd->add_option("--n", verify.n, "Order (selects family and k)");
  verify_cmd->add_option("--k", verify.k, "Single k");
  verify_cmd->add_option("--k-range", verify.k_range, "Inclusive range a..b");
  verify_cmd->add_flag("--all-families", verify.all_families, "Verify every family");
  verify_cmd->add_option("--mode", verify.mode, "profile or full");
  verify_cmd->add_option("--jobs", verify.jobs, "Worker threads");
  verify_cmd->add_option("--full-ceiling", verify.full_ceiling, "Largest n for full mode");
  verify_cmd->add_option("--output", verify.output, "Write reports to this file");

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Backtracking search for cyclic MNOLS columns");
  search_cmd->add_option("--n", search.n, "Even order")->required();
  search_cmd->add_option("--t", search.t, "Number of squares");
  search_cmd->add_option("--max-nodes", search.max_nodes, "Node expansion cap");
  search_cmd->add_option("--max-solutions", search.max_solutions, "Stop after this many");
  search_cmd->add_option("--time-cap", search.time_cap_seconds, "Wall-clock cap in seconds");
  search_cmd->add_flag("--reflection", search.reflection,
                       "Only columns with the reflection property");
  search_cmd->add_option("--output", search.output, "Write the outcome to this file");

  std::uint64_t bound_n = 0;
  auto* bound_cmd = app.add_subcommand("bound", "Upper bound on the size of an MNOLS set");
  bound_cmd->add_option("--n", bound_n, "Even order")->required();

  QdsOptions qds;
  auto* qds_cmd = app.add_subcommand("qds", "Quasi-difference certificate for a column pair");
  qds_cmd->add_option("--n", qds.n, "Order (14, 22, 38 or 46 mod 48)");
  qds_cmd->add_option("--family", qds.family, "Family tag: f14, f22, f38, f46");
  qds_cmd->add_option("--k", qds.k, "Family parameter k >= 0");
  qds_cmd->add_option("--pair", qds.pair, "Columns as minuend,subtrahend, e.g. 2,1");
  qds_cmd->add_option("--output", qds.output, "Write to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*search_cmd) return cmd_search(search, out);
    if (*bound_cmd) {
      out << mnols_bound(Order(bound_n)) << '\n';
      return kExitOk;
    }
    if (*qds_cmd) return cmd_qds(qds, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mnols::cli
