#include "mmr/pl_circle.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace mmr {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && ((a > 0) == (b > 0))) ++q;
  return q;
}

// Levels are counted in half grid steps: level y = Y / (2m), so both the
// grid values and the midpoints between them are represented. The edge from
// parameter t_i (included) to t_{i+1} (excluded) takes the values [L, R) or
// (R, L] in the same units.
std::int64_t hits(std::int64_t from, std::int64_t to, std::int64_t level, std::int64_t period) {
  const std::int64_t lo = from < to ? from : to + 1;
  const std::int64_t hi = from < to ? to : from + 1;
  return ceil_div(hi - level, period) - ceil_div(lo - level, period);
}

void add_edge(std::vector<std::int64_t>& counts, std::int64_t a, std::int64_t b) {
  const std::int64_t period = static_cast<std::int64_t>(counts.size());
  for (std::int64_t y = 0; y < period; ++y) counts[static_cast<std::size_t>(y)] += hits(2 * a, 2 * b, y, period);
}

struct Search {
  std::int64_t m;
  std::int64_t end;
  std::int64_t lo;
  std::int64_t hi;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> counts;

  // Every level strictly between the current value and the end is still to
  // be crossed at least once.
  std::int64_t lower_bound(std::int64_t current) const {
    const std::int64_t period = static_cast<std::int64_t>(counts.size());
    std::int64_t worst = 0;
    for (std::int64_t y = 0; y < period; ++y) {
      const std::int64_t need = current == end ? 0 : hits(2 * current, 2 * end, y, period);
      worst = std::max(worst, counts[static_cast<std::size_t>(y)] + need);
    }
    return worst;
  }

  void extend(std::int64_t current, int edges_left) {
    if (lower_bound(current) >= best) return;
    if (edges_left == 1) {
      if (current == end) return;
      auto saved = counts;
      add_edge(counts, current, end);
      best = std::min(best, *std::max_element(counts.begin(), counts.end()));
      counts = std::move(saved);
      return;
    }
    std::vector<std::int64_t> next;
    for (std::int64_t v = lo; v <= hi; ++v)
      if (v != current) next.push_back(v);
    std::stable_sort(next.begin(), next.end(),
                     [&](std::int64_t a, std::int64_t b) { return std::llabs(a - end) < std::llabs(b - end); });
    for (std::int64_t v : next) {
      auto saved = counts;
      add_edge(counts, current, v);
      extend(v, edges_left - 1);
      counts = std::move(saved);
    }
  }
};

}  // namespace

void validate_circle_map(const PLCircleMap& f) {
  if (f.m < 1) throw Error(ErrorCode::OutOfRange, "grid size m must be positive");
  if (f.edges() < 1) throw Error(ErrorCode::OutOfRange, "need at least one edge");
  if ((f.lifts.back() - f.lifts.front()) % f.m != 0)
    throw Error(ErrorCode::OutOfRange, "endpoint difference is not an integer");
  for (int i = 0; i < f.edges(); ++i)
    if (f.lifts[static_cast<std::size_t>(i)] == f.lifts[static_cast<std::size_t>(i + 1)])
      throw Error(ErrorCode::OutOfRange, "edge " + std::to_string(i) + " is constant");
}

std::int64_t pl_circle_degree(const PLCircleMap& f) {
  validate_circle_map(f);
  return (f.lifts.back() - f.lifts.front()) / f.m;
}

std::int64_t pl_circle_multiplicity(const PLCircleMap& f) {
  validate_circle_map(f);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * f.m), 0);
  for (int i = 0; i < f.edges(); ++i)
    add_edge(counts, f.lifts[static_cast<std::size_t>(i)], f.lifts[static_cast<std::size_t>(i + 1)]);
  return *std::max_element(counts.begin(), counts.end());
}

// The window is enough: a lift that leaves [lo - 1, hi + 1] turns back
// before returning, and cutting the excursion off at the window edge (then
// re-subdividing to keep edges non-constant) removes crossings without
// adding any. Tests compare against much wider windows.
std::int64_t brute_force_circle_mmr(std::int64_t deg, int n_max, int m, int margin) {
  if (m < 1 || margin < 0) throw Error(ErrorCode::OutOfRange, "need m >= 1 and margin >= 0");
  if (n_max < 2 || std::llabs(deg) > n_max - 1)
    throw Error(ErrorCode::InfeasibleBudget, "degree " + std::to_string(deg) + " needs more than " +
                                                 std::to_string(n_max) + " vertices");
  Search s;
  s.m = m;
  s.end = deg * m;
  s.lo = std::min<std::int64_t>(0, s.end) - static_cast<std::int64_t>(margin) * m;
  s.hi = std::max<std::int64_t>(0, s.end) + static_cast<std::int64_t>(margin) * m;
  s.counts.assign(static_cast<std::size_t>(2 * m), 0);
  for (int n = 1; n <= n_max; ++n) s.extend(0, n);
  return s.best;
}

}  // namespace mmr
