#include "margo/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "parallel.hpp"

namespace margo {
namespace {

// Tableau order on count vectors of equal degree.
bool tableau_less(const Counts& a, const Counts& b) { return std::greater<>()(a, b); }

void charge(std::uint64_t& work, std::uint64_t ceiling, const char* what) {
  if (++work > ceiling)
    throw ResourceCeilingExceeded(std::string(what) + ": resource ceiling of " + std::to_string(ceiling) +
                                      " exceeded",
                                  ceiling);
}

// C(n + k - 1, k), saturating.
double multisets(std::size_t n, std::size_t k) {
  return std::exp(std::lgamma(static_cast<double>(n + k)) - std::lgamma(static_cast<double>(k + 1)) -
                  std::lgamma(static_cast<double>(n)));
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  return std::exp(std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
                  std::lgamma(static_cast<double>(n - k + 1)));
}

// For each row, the largest configuration index it covers.
std::vector<std::size_t> last_cells(const MarginalLayout& layout) {
  std::vector<std::size_t> last(layout.rows(), 0);
  for (std::size_t x = 0; x < layout.cells(); ++x)
    for (std::size_t f = 0; f < layout.facets(); ++f) last[layout.row(x, f)] = x;
  return last;
}

class FiberSearch {
 public:
  FiberSearch(const MarginalLayout& layout, const Counts& b, std::uint64_t ceiling)
      : layout_(layout), remaining_(b), last_(last_cells(layout)), ceiling_(ceiling),
        current_(layout.cells(), 0) {}

  std::vector<Counts> run() {
    descend(0);
    return std::move(found_);
  }

 private:
  void descend(std::size_t x) {
    charge(work_, ceiling_, "enumerate_fiber");
    if (x == layout_.cells()) {
      found_.push_back(current_);
      return;
    }
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    std::int64_t forced = -1;
    for (std::size_t f = 0; f < layout_.facets(); ++f) {
      const auto r = layout_.row(x, f);
      hi = std::min(hi, remaining_[r]);
      if (last_[r] == x) {
        if (forced >= 0 && forced != remaining_[r]) return;
        forced = remaining_[r];
      }
    }
    std::int64_t lo = 0;
    if (forced >= 0) {
      if (forced > hi) return;
      lo = hi = forced;
    }
    // Larger values first: results come out in tableau order.
    for (std::int64_t v = hi; v >= lo; --v) {
      for (std::size_t f = 0; f < layout_.facets(); ++f) remaining_[layout_.row(x, f)] -= v;
      current_[x] = v;
      descend(x + 1);
      for (std::size_t f = 0; f < layout_.facets(); ++f) remaining_[layout_.row(x, f)] += v;
    }
    current_[x] = 0;
  }

  const MarginalLayout& layout_;
  Counts remaining_;
  std::vector<std::size_t> last_;
  std::uint64_t ceiling_;
  std::uint64_t work_ = 0;
  Counts current_;
  std::vector<Counts> found_;
};

std::int64_t check_consistent(const MarginalLayout& layout, const MarginalVector& b) {
  if (layout.facets() == 0) throw std::invalid_argument("fiber: complex has no facets");
  if (b.entries.size() != layout.rows())
    throw std::invalid_argument("fiber: marginal has " + std::to_string(b.entries.size()) + " entries, expected " +
                                std::to_string(layout.rows()));
  std::int64_t total = -1;
  for (std::size_t f = 0; f < layout.facets(); ++f) {
    auto begin = b.entries.begin() + static_cast<std::ptrdiff_t>(layout.block_offset(f));
    auto end = begin + static_cast<std::ptrdiff_t>(layout.block_size(f));
    if (std::any_of(begin, end, [](std::int64_t v) { return v < 0; }))
      throw std::invalid_argument("fiber: negative marginal entry");
    const std::int64_t s = std::accumulate(begin, end, std::int64_t{0});
    if (total >= 0 && s != total) throw std::invalid_argument("fiber: inconsistent marginal (facet blocks sum differently)");
    total = s;
  }
  return total;
}

// Enumerates kernel vectors m != 0 with deg(m+) <= limit and first nonzero
// entry positive, reporting A m+ for each.
class KernelSearch {
 public:
  KernelSearch(const MarginalLayout& layout, int limit, std::uint64_t ceiling)
      : layout_(layout), last_(last_cells(layout)), limit_(limit), ceiling_(ceiling),
        partial_(layout.rows(), 0), need_pos_(layout.facets(), 0), need_neg_(layout.facets(), 0),
        current_(layout.cells(), 0) {}

  /// Distinct marginals A m+, keyed by (degree, marginal).
  std::set<std::pair<std::int64_t, Counts>> run() {
    descend(0, false);
    return std::move(found_);
  }

  std::uint64_t work() const { return work_; }

 private:
  bool budgets_ok() const {
    for (std::size_t f = 0; f < layout_.facets(); ++f)
      if (need_pos_[f] > limit_ - pos_used_ || need_neg_[f] > limit_ - neg_used_) return false;
    return true;
  }

  void shift_row(std::size_t f, std::uint32_t r, std::int64_t delta) {
    const std::int64_t before = partial_[r];
    const std::int64_t after = before + delta;
    need_pos_[f] += std::max<std::int64_t>(0, -after) - std::max<std::int64_t>(0, -before);
    need_neg_[f] += std::max<std::int64_t>(0, after) - std::max<std::int64_t>(0, before);
    partial_[r] = after;
  }

  void assign(std::size_t x, std::int64_t v) {
    current_[x] = v;
    if (v > 0) pos_used_ += v;
    if (v < 0) neg_used_ -= v;
    for (std::size_t f = 0; f < layout_.facets(); ++f) shift_row(f, layout_.row(x, f), v);
  }

  void unassign(std::size_t x) {
    const std::int64_t v = current_[x];
    for (std::size_t f = 0; f < layout_.facets(); ++f) shift_row(f, layout_.row(x, f), -v);
    if (v > 0) pos_used_ -= v;
    if (v < 0) neg_used_ += v;
    current_[x] = 0;
  }

  void descend(std::size_t x, bool nonzero) {
    charge(work_, ceiling_, "verify_markov_basis");
    if (x == layout_.cells()) {
      if (!nonzero) return;
      Counts plus(current_.size());
      for (std::size_t i = 0; i < plus.size(); ++i) plus[i] = std::max<std::int64_t>(0, current_[i]);
      found_.emplace(pos_used_, layout_.apply(plus).entries);
      return;
    }
    std::int64_t lo = -(limit_ - neg_used_);
    std::int64_t hi = limit_ - pos_used_;
    if (!nonzero) lo = 0;
    for (std::size_t f = 0; f < layout_.facets(); ++f) {
      const auto r = layout_.row(x, f);
      if (last_[r] == x) {
        const std::int64_t want = -partial_[r];
        if (want < lo || want > hi) return;
        lo = hi = want;
      }
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      assign(x, v);
      if (budgets_ok()) descend(x + 1, nonzero || v != 0);
      unassign(x);
    }
  }

  const MarginalLayout& layout_;
  std::vector<std::size_t> last_;
  std::int64_t limit_;
  std::uint64_t ceiling_;
  std::uint64_t work_ = 0;
  Counts partial_;
  std::vector<std::int64_t> need_pos_;
  std::vector<std::int64_t> need_neg_;
  std::int64_t pos_used_ = 0;
  std::int64_t neg_used_ = 0;
  Counts current_;
  std::set<std::pair<std::int64_t, Counts>> found_;
};

struct FiberJob {
  std::int64_t degree;
  Counts marginal;
};

// Checks the fibers in job order; the first disconnected one is reported.
MarkovReport check_fibers(std::span<const Move> moves, int degree_limit, const SearchLimits& limits,
                          std::size_t jobs, const std::function<Fiber(std::size_t)>& make_fiber) {
  std::vector<std::optional<ConnectivityReport>> failures(jobs);
  std::vector<std::optional<Fiber>> fibers(jobs);
  detail::parallel_for(jobs, limits.workers, [&](std::size_t i) {
    Fiber f = make_fiber(i);
    auto report = fiber_connected(f, moves);
    if (!report.connected()) {
      failures[i] = std::move(report);
      fibers[i] = std::move(f);
    }
  });
  MarkovReport out;
  out.degree_limit = degree_limit;
  out.fibers_checked = jobs;
  for (std::size_t i = 0; i < jobs; ++i) {
    if (failures[i]) {
      out.verdict = Verdict::Fail;
      out.counterexample = std::move(fibers[i]);
      out.connectivity = std::move(failures[i]);
      break;
    }
  }
  return out;
}

void check_moves(const MarginalMatrix& a, std::span<const Move> moves) {
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (moves[i].size() != a.cols)
      throw std::invalid_argument("move " + std::to_string(i + 1) + " has wrong length");
    if (!kernel_check(a, moves[i].entries()))
      throw std::invalid_argument("move " + std::to_string(i + 1) + " is not in the kernel of the marginal map");
  }
}

// Calls visit(cells) for every nondecreasing sequence of k cells from
// [0, m), in lexicographic order.
template <class Visit>
void for_each_multiset(std::size_t m, std::size_t k, Visit&& visit) {
  if (m == 0) return;
  std::vector<std::uint32_t> idx(k, 0);
  while (true) {
    visit(std::span<const std::uint32_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - 1) --i;
    if (i == 0) return;
    const std::uint32_t v = idx[i - 1] + 1;
    for (std::size_t j = i - 1; j < k; ++j) idx[j] = v;
  }
}

}  // namespace

Fiber enumerate_fiber(const SimplicialComplex& complex, const ConfigSpace& space, const MarginalVector& b,
                      std::uint64_t ceiling) {
  MarginalLayout layout(complex, space);
  check_consistent(layout, b);
  FiberSearch search(layout, b.entries, ceiling);
  auto tables = search.run();
  std::sort(tables.begin(), tables.end(), tableau_less);
  return Fiber{complex, space, b, std::move(tables)};
}

ConnectivityReport fiber_connected(const Fiber& fiber, std::span<const Move> moves) {
  const auto a = marginal_matrix(fiber.complex, fiber.space);
  check_moves(a, moves);
  const auto& tables = fiber.tables;
  ConnectivityReport report;
  report.fiber_size = tables.size();
  if (tables.empty()) return report;

  std::vector<std::size_t> parent(tables.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto lookup = [&](const Counts& t) -> std::optional<std::size_t> {
    auto it = std::lower_bound(tables.begin(), tables.end(), t, tableau_less);
    if (it != tables.end() && *it == t) return static_cast<std::size_t>(it - tables.begin());
    return std::nullopt;
  };

  Counts next(fiber.space.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (const Move& m : moves) {
      for (int sign : {1, -1}) {
        bool ok = true;
        for (std::size_t x = 0; x < next.size() && ok; ++x) {
          next[x] = tables[i][x] + sign * m.entries()[x];
          ok = next[x] >= 0;
        }
        if (!ok) continue;
        auto j = lookup(next);
        if (!j) throw std::logic_error("fiber_connected: move left the fiber");
        parent[find(i)] = find(*j);
      }
    }
  }
  std::size_t first_other = tables.size();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (find(i) == i) ++report.components;
    if (first_other == tables.size() && find(i) != find(0)) first_other = i;
  }
  if (report.components > 1) report.witness = std::make_pair(tables[0], tables[first_other]);
  return report;
}

MarkovReport verify_markov_basis(const SimplicialComplex& complex, const ConfigSpace& space,
                                 std::span<const Move> moves, int degree_limit, const SearchLimits& limits,
                                 VerifyStrategy strategy) {
  if (degree_limit < 0) throw std::invalid_argument("verify_markov_basis: negative degree bound");
  MarginalLayout layout(complex, space);
  if (layout.facets() == 0) throw std::invalid_argument("verify_markov_basis: complex has no facets");
  check_moves(marginal_matrix(complex, space), moves);

  if (strategy == VerifyStrategy::DisjointPairs) {
    KernelSearch search(layout, degree_limit, limits.ceiling);
    std::vector<FiberJob> jobs;
    for (auto& [degree, b] : search.run()) jobs.push_back({degree, b});
    return check_fibers(moves, degree_limit, limits, jobs.size(), [&](std::size_t i) {
      return enumerate_fiber(complex, space, MarginalVector{jobs[i].marginal}, limits.ceiling);
    });
  }

  double estimate = 0;
  for (int d = 0; d <= degree_limit; ++d) estimate += multisets(space.size(), static_cast<std::size_t>(d));
  if (estimate > static_cast<double>(limits.ceiling))
    throw ResourceCeilingExceeded("verify_markov_basis: about " + std::to_string(static_cast<long double>(estimate)) +
                                      " tables exceed the resource ceiling of " + std::to_string(limits.ceiling),
                                  limits.ceiling);

  MarkovReport total;
  total.degree_limit = degree_limit;
  for (int d = 1; d <= degree_limit; ++d) {
    std::map<Counts, std::vector<Counts>> buckets;
    Counts table(space.size());
    for_each_multiset(space.size(), static_cast<std::size_t>(d), [&](std::span<const std::uint32_t> cells) {
      std::fill(table.begin(), table.end(), 0);
      for (auto c : cells) ++table[c];
      buckets[layout.apply(table).entries].push_back(table);
    });
    std::vector<FiberJob> jobs;
    std::vector<std::vector<Counts>*> members;
    for (auto& [b, tables] : buckets) {
      if (tables.size() < 2) continue;
      std::sort(tables.begin(), tables.end(), tableau_less);
      jobs.push_back({d, b});
      members.push_back(&tables);
    }
    auto report = check_fibers(moves, degree_limit, limits, jobs.size(), [&](std::size_t i) {
      return Fiber{complex, space, MarginalVector{jobs[i].marginal}, *members[i]};
    });
    total.fibers_checked += report.fibers_checked;
    if (report.verdict == Verdict::Fail) {
      report.fibers_checked = total.fibers_checked;
      return report;
    }
  }
  return total;
}

std::optional<BinomialWitness> min_binomial_degree(const SimplicialComplex& complex, const ConfigSpace& space,
                                                   int k_max, const SearchLimits& limits) {
  if (k_max < 1) throw std::invalid_argument("min_binomial_degree: k_max must be >= 1");
  if (k_max > 255) throw std::invalid_argument("min_binomial_degree: k_max must be <= 255");
  MarginalLayout layout(complex, space);
  if (layout.facets() == 0) throw std::invalid_argument("min_binomial_degree: complex has no facets");
  const std::size_t cells = space.size();

  double spent = 0;
  using Tableau = std::vector<std::uint32_t>;
  for (int k = 1; k <= k_max; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    for (bool square_free : {true, false}) {
      spent += square_free ? binomial(cells, kk) : multisets(cells, kk);
      if (spent > static_cast<double>(limits.ceiling))
        throw ResourceCeilingExceeded("min_binomial_degree: degree " + std::to_string(k) +
                                          " search exceeds the resource ceiling of " + std::to_string(limits.ceiling),
                                      limits.ceiling);
      // Marginal key -> the two least tableaux seen with it.
      std::unordered_map<std::string, std::pair<Tableau, Tableau>> buckets;
      std::string key(layout.rows(), '\0');
      auto visit = [&](auto cells_span) {
        std::fill(key.begin(), key.end(), '\0');
        for (auto c : cells_span)
          for (std::size_t f = 0; f < layout.facets(); ++f) ++key[layout.row(c, f)];
        auto& slot = buckets[key];
        if (slot.first.empty())
          slot.first.assign(cells_span.begin(), cells_span.end());
        else if (slot.second.empty())
          slot.second.assign(cells_span.begin(), cells_span.end());
        return true;
      };
      if (square_free)
        for_each_combination(cells, kk, visit);
      else
        for_each_multiset(cells, kk, visit);

      const std::pair<Tableau, Tableau>* best = nullptr;
      for (const auto& [b, slot] : buckets)
        if (!slot.second.empty() && (!best || slot < *best)) best = &slot;
      if (!best) continue;

      Counts entries(cells, 0);
      for (auto c : best->first) ++entries[c];
      for (auto c : best->second) --entries[c];
      BinomialWitness w;
      w.degree = k;
      w.move = Move(std::move(entries));
      w.square_free = std::all_of(w.move.entries().begin(), w.move.entries().end(),
                                  [](std::int64_t v) { return v >= -1 && v <= 1; });
      if (w.move.degree() != k) throw std::logic_error("min_binomial_degree: witness supports overlap");
      return w;
    }
  }
  return std::nullopt;
}

std::string tableau(const ConfigSpace& space, std::span<const std::int64_t> counts) {
  if (counts.size() != space.size()) throw std::invalid_argument("tableau: length mismatch");
  std::string out;
  for (std::size_t x = 0; x < counts.size(); ++x)
    for (std::int64_t k = 0; k < counts[x]; ++k) {
      out += space.format(x);
      out += '\n';
    }
  return out;
}

}  // namespace margo
