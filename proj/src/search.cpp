#include "mnols/search.hpp"

#include <functional>
#include <limits>

#include "mnols/constructions.hpp"
#include "mnols/errors.hpp"
#include "mnols/verification.hpp"

namespace mnols {

namespace {

using Clock = std::chrono::steady_clock;

// Shared across nested column searches so caps apply to the whole run.
struct SearchContext {
  SearchBudget budget;
  Clock::time_point deadline;
  std::uint64_t nodes = 0;
  bool stopped = false;
  StopReason reason = StopReason::Exhausted;

  explicit SearchContext(const SearchBudget& b) : budget(b) {
    const auto now = Clock::now();
    const auto room =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::time_point::max() - now);
    deadline = budget.time_cap >= room ? Clock::time_point::max() : now + budget.time_cap;
  }

  void stop(StopReason why) {
    stopped = true;
    reason = why;
  }

  // Called before each placement; false means the search must unwind.
  bool admit_node() {
    if (stopped) return false;
    if (nodes >= budget.max_nodes) {
      stop(StopReason::NodeCap);
      return false;
    }
    ++nodes;
    if ((nodes & 0x3ff) == 0 && Clock::now() >= deadline) {
      stop(StopReason::TimeCap);
      return false;
    }
    return true;
  }
};

using CompletionFn = std::function<void(const std::vector<Symbol>&)>;

// Depth-first construction of one column against a fixed set of base columns.
class ColumnSearch {
 public:
  ColumnSearch(std::span<const ColumnVector> base, Order order, bool reflect,
               const ColumnVector* lex_floor, SearchContext& ctx, CompletionFn on_complete)
      : order_(order),
        n_(order.n()),
        reflect_(reflect),
        lex_floor_(lex_floor),
        ctx_(ctx),
        on_complete_(std::move(on_complete)),
        used_(n_, 0),
        current_(n_, 0) {
    base_.reserve(base.size());
    budgets_.reserve(base.size());
    for (const ColumnVector& col : base) {
      base_.push_back(col.entries());
      std::vector<std::uint8_t> remaining(n_, 1);
      remaining[0] = 0;
      remaining[order.half()] = 2;
      budgets_.push_back(std::move(remaining));
    }
  }

  void run() {
    if (reflect_) {
      place_mirrored(0, lex_floor_ != nullptr);
    } else {
      place(0, lex_floor_ != nullptr);
    }
  }

 private:
  Symbol diff(Symbol value, Symbol base_value) const {
    return value >= base_value ? value - base_value : value + (n_ - base_value);
  }

  bool fits(std::size_t row, Symbol value) const {
    for (std::size_t b = 0; b < base_.size(); ++b) {
      if (budgets_[b][diff(value, base_[b][row])] == 0) return false;
    }
    return true;
  }

  void take(std::size_t row, Symbol value) {
    used_[value] = 1;
    current_[row] = value;
    for (std::size_t b = 0; b < base_.size(); ++b) --budgets_[b][diff(value, base_[b][row])];
  }

  void give_back(std::size_t row, Symbol value) {
    used_[value] = 0;
    for (std::size_t b = 0; b < base_.size(); ++b) ++budgets_[b][diff(value, base_[b][row])];
  }

  // `tied` means current_[0..row) equals the lexicographic floor's prefix.
  Symbol first_candidate(std::size_t row, bool tied) const {
    return tied ? (*lex_floor_)[row] : Symbol{0};
  }

  void place(std::size_t row, bool tied) {
    if (row == n_) {
      on_complete_(current_);
      return;
    }
    for (Symbol s = first_candidate(row, tied); s < n_; ++s) {
      if (ctx_.stopped) return;
      if (used_[s] || !fits(row, s)) continue;
      if (!ctx_.admit_node()) return;
      take(row, s);
      place(row + 1, tied && s == (*lex_floor_)[row]);
      give_back(row, s);
    }
  }

  void place_mirrored(std::size_t row, bool tied) {
    if (row == order_.half()) {
      on_complete_(current_);
      return;
    }
    const std::size_t mirror = n_ - 1 - row;
    for (Symbol s = first_candidate(row, tied); s < n_; ++s) {
      if (ctx_.stopped) return;
      const Symbol partner = (n_ - 1) - s;
      if (used_[s] || used_[partner] || !fits(row, s)) continue;
      take(row, s);
      if (fits(mirror, partner)) {
        if (!ctx_.admit_node()) {
          give_back(row, s);
          return;
        }
        take(mirror, partner);
        place_mirrored(row + 1, tied && s == (*lex_floor_)[row]);
        give_back(mirror, partner);
      }
      give_back(row, s);
    }
  }

  Order order_;
  std::uint32_t n_;
  bool reflect_;
  const ColumnVector* lex_floor_;
  SearchContext& ctx_;
  CompletionFn on_complete_;
  std::vector<std::span<const Symbol>> base_;
  std::vector<std::vector<std::uint8_t>> budgets_;
  std::vector<std::uint8_t> used_;
  std::vector<Symbol> current_;
};

void validate_base(std::span<const ColumnVector> base, Order order) {
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (base[s].order() != order) {
      throw InvalidBase("base column " + std::to_string(s + 1) + " has order " +
                        std::to_string(base[s].order().n()) + ", expected " +
                        std::to_string(order.n()));
    }
    if (!is_permutation(base[s])) {
      throw InvalidBase("base column " + std::to_string(s + 1) + " is not a permutation");
    }
    for (std::size_t t = 0; t < s; ++t) {
      if (!is_quasi_difference(difference_profile(base[s], base[t]))) {
        throw InvalidBase("base columns " + std::to_string(t + 1) + " and " +
                          std::to_string(s + 1) + " are not quasi-difference compatible");
      }
    }
  }
}

void record(SearchOutcome& outcome, std::vector<ColumnVector> set, SearchContext& ctx) {
  outcome.solutions.push_back(std::move(set));
  if (outcome.solutions.size() >= ctx.budget.max_solutions) ctx.stop(StopReason::SolutionCap);
}

void finish(SearchOutcome& outcome, const SearchContext& ctx) {
  outcome.nodes_expanded = ctx.nodes;
  outcome.exhausted = !ctx.stopped;
  outcome.stop_reason = ctx.stopped ? ctx.reason : StopReason::Exhausted;
}

}  // namespace

void SearchBudget::validate() const {
  if (max_nodes == 0 || max_solutions == 0 || time_cap <= std::chrono::milliseconds::zero()) {
    throw InvalidArgument("search budget caps must all be positive");
  }
}

SearchBudget SearchBudget::unlimited() {
  return {std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max(),
          std::chrono::milliseconds::max()};
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Exhausted: return "exhausted";
    case StopReason::NodeCap: return "node_cap";
    case StopReason::SolutionCap: return "solution_cap";
    case StopReason::TimeCap: return "time_cap";
  }
  return "?";
}

SearchOutcome extend_search(std::span<const ColumnVector> base, Order order,
                            const SearchBudget& budget, bool require_reflection) {
  budget.validate();
  validate_base(base, order);
  SearchContext ctx(budget);
  SearchOutcome outcome;
  ColumnSearch search(base, order, require_reflection, nullptr, ctx,
                      [&](const std::vector<Symbol>& column) {
                        std::vector<ColumnVector> set(base.begin(), base.end());
                        set.emplace_back(order, column);
                        record(outcome, std::move(set), ctx);
                      });
  search.run();
  finish(outcome, ctx);
  return outcome;
}

std::uint64_t count_extensions(std::span<const ColumnVector> base, Order order,
                               bool require_reflection) {
  validate_base(base, order);
  SearchContext ctx(SearchBudget::unlimited());
  std::uint64_t count = 0;
  ColumnSearch search(base, order, require_reflection, nullptr, ctx,
                      [&](const std::vector<Symbol>&) { ++count; });
  search.run();
  return count;
}

SearchOutcome find_cyclic_mnols(Order order, std::uint32_t t, const SearchBudget& budget,
                                bool require_reflection) {
  budget.validate();
  if (t < 2 || t > mnols_bound(order)) {
    throw InvalidArgument("t = " + std::to_string(t) + " outside [2, " +
                          std::to_string(mnols_bound(order)) + "] for n = " +
                          std::to_string(order.n()));
  }
  SearchContext ctx(budget);
  SearchOutcome outcome;
  std::vector<ColumnVector> set{identity_column(order)};

  std::function<void()> grow = [&]() {
    if (set.size() == t) {
      record(outcome, set, ctx);
      return;
    }
    // The base is copied: `set` grows inside the completion callback.
    const std::vector<ColumnVector> base = set;
    const ColumnVector* floor = base.size() >= 2 ? &base.back() : nullptr;
    ColumnSearch search(base, order, require_reflection, floor, ctx,
                        [&](const std::vector<Symbol>& column) {
                          set.emplace_back(order, column);
                          grow();
                          set.pop_back();
                        });
    search.run();
  };
  grow();
  finish(outcome, ctx);
  return outcome;
}

}  // namespace mnols
