#include "mmr/simplicial.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace mmr {

namespace {

using Cell = std::vector<int>;

Cell sorted_cell(std::initializer_list<int> vs) {
  Cell c(vs);
  std::sort(c.begin(), c.end());
  return c;
}

void check_shape(const SimplicialMap& g) {
  if (static_cast<int>(g.vertex_images.size()) != g.source.vertex_count)
    throw Error(ErrorCode::PreconditionViolated, "need one image per source vertex");
  for (int v : g.vertex_images)
    if (v < 0 || v >= g.target.vertex_count)
      throw Error(ErrorCode::PreconditionViolated, "vertex image " + std::to_string(v) + " out of range");
}

int image(const SimplicialMap& g, int v) { return g.vertex_images[static_cast<std::size_t>(v)]; }

std::int64_t binomial(std::int64_t n, int k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int cyclic_sign(const Triangle& t, const Triangle& ref) {
  for (int k = 0; k < 3; ++k)
    if (t[0] == ref[k]) return t[1] == ref[(k + 1) % 3] ? 1 : -1;
  return 0;
}

}  // namespace

std::map<Cell, std::int64_t> cell_fibers(const SimplicialMap& g) {
  check_shape(g);
  std::map<Cell, std::int64_t> out;
  for (int v = 0; v < g.target.vertex_count; ++v) out[{v}] = 0;
  for (const auto& [a, b] : g.target.edges()) out[{a, b}] = 0;
  for (const auto& t : g.target.triangles) out[sorted_cell({t[0], t[1], t[2]})] = 0;

  for (const auto& t : g.source.triangles) {
    const Cell c = sorted_cell({image(g, t[0]), image(g, t[1]), image(g, t[2])});
    if (c[0] == c[1] || c[1] == c[2])
      throw Error(ErrorCode::DegenerateTriangle, "a source triangle collapses onto a lower-dimensional cell");
    auto it = out.find(c);
    if (it == out.end()) throw Error(ErrorCode::DegenerateTriangle, "a source triangle maps onto a non-triangle");
    ++it->second;
  }
  for (const auto& [a, b] : g.source.edges()) ++out[sorted_cell({image(g, a), image(g, b)})];
  for (int v = 0; v < g.source.vertex_count; ++v) ++out[{image(g, v)}];
  return out;
}

std::int64_t multiplicity(const SimplicialMap& g) {
  std::int64_t best = 0;
  for (const auto& [cell, n] : cell_fibers(g)) best = std::max(best, n);
  return best;
}

std::optional<std::int64_t> simplicial_degree(const SimplicialMap& g) {
  check_shape(g);
  const auto src = g.source.orientation ? g.source.orientation : coherent_orientation(g.source);
  const auto tgt = g.target.orientation ? g.target.orientation : coherent_orientation(g.target);
  if (!src || !tgt) return std::nullopt;
  std::map<Cell, std::pair<Triangle, std::int64_t>> signed_count;
  for (const auto& t : *tgt) signed_count[sorted_cell({t[0], t[1], t[2]})] = {t, 0};
  for (const auto& t : *src) {
    const Triangle img{image(g, t[0]), image(g, t[1]), image(g, t[2])};
    auto it = signed_count.find(sorted_cell({img[0], img[1], img[2]}));
    if (it == signed_count.end() || img[0] == img[1] || img[1] == img[2] || img[0] == img[2])
      throw Error(ErrorCode::DegenerateTriangle, "source triangle does not map onto a target triangle");
    it->second.second += cyclic_sign(img, it->second.first);
  }
  const std::int64_t d = signed_count.begin()->second.second;
  for (const auto& [cell, entry] : signed_count)
    if (entry.second != d)
      throw Error(ErrorCode::InconsistentSignedCount,
                  "signed counts " + std::to_string(d) + " and " + std::to_string(entry.second) + " differ");
  return d;
}

void FiberProfile::add(std::int64_t size, std::int64_t points) {
  if (points > 0) points_by_size[size] += points;
}

FiberProfile fiber_profile(const SimplicialMap& g) {
  FiberProfile p;
  for (const auto& [cell, n] : cell_fibers(g)) p.add(n);
  return p;
}

std::int64_t fiber_profile_counts(const FiberProfile& p, int mu) {
  std::int64_t total = 0;
  for (const auto& [size, points] : p.points_by_size) total += points * binomial(size, mu);
  return total;
}

bool check_footnote_inequality(const FiberProfile& p, int mu) {
  const std::int64_t lo = fiber_profile_counts(p, mu);
  return fiber_profile_counts(p, mu + 1) <= lo * lo;
}

KneserAudit audit_kneser(const SimplicialMap& g, std::int64_t d) {
  if (d < 1) throw Error(ErrorCode::PreconditionViolated, "audit needs d >= 1");
  const auto fibers = cell_fibers(g);
  if (const auto deg = simplicial_degree(g)) {
    if (std::llabs(*deg) != d)
      throw Error(ErrorCode::PreconditionViolated,
                  "d = " + std::to_string(d) + " but the degree is " + std::to_string(*deg));
  } else {
    for (const auto& [cell, n] : fibers)
      if (cell.size() == 3 && n < d)
        throw Error(ErrorCode::PreconditionViolated, "a triangle has fewer than d preimages");
  }
  KneserAudit a;
  a.d = d;
  a.chi_source = g.source.euler_char();
  a.chi_target = g.target.euler_char();
  a.budget = d * a.chi_target - a.chi_source;
  a.lhs = d * a.chi_target;
  a.rhs = a.chi_source;
  for (const auto& [cell, n] : fibers) {
    if (n >= d) continue;
    a.deficient_fibers.push_back(n);
    a.rhs += d - n;
  }
  return a;
}

}  // namespace mmr
