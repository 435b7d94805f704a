#pragma once

// Simplicial maps between triangulated surfaces and their fiber counts.

#include "mmr/triangulation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace mmr {

struct SimplicialMap {
  TriangulatedSurface source;
  TriangulatedSurface target;
  std::vector<int> vertex_images;
};

/// Number of source cells over each target cell (vertices, edges and
/// triangles, keyed by sorted vertex list). Every target cell is present.
/// Throws DegenerateTriangle unless each source triangle maps onto a target
/// triangle with three distinct vertices.
std::map<std::vector<int>, std::int64_t> cell_fibers(const SimplicialMap& g);

/// Largest fiber over any point of the target.
std::int64_t multiplicity(const SimplicialMap& g);

/// Signed count of source triangles over each target triangle; nullopt
/// when either side is nonorientable. Throws InconsistentSignedCount if the
/// counts differ between target triangles.
std::optional<std::int64_t> simplicial_degree(const SimplicialMap& g);

/// Number of points having each fiber size.
struct FiberProfile {
  std::map<std::int64_t, std::int64_t> points_by_size;

  void add(std::int64_t size, std::int64_t points = 1);
  bool operator==(const FiberProfile&) const = default;
};

/// One sample point per open target cell.
FiberProfile fiber_profile(const SimplicialMap& g);

/// Sum over fibers of C(size, mu).
std::int64_t fiber_profile_counts(const FiberProfile& p, int mu);

/// counts(p, mu + 1) <= counts(p, mu)^2.
bool check_footnote_inequality(const FiberProfile& p, int mu);

struct KneserAudit {
  std::int64_t d = 1;
  std::int64_t chi_source = 0;
  std::int64_t chi_target = 0;
  std::int64_t budget = 0;  // d chi(target) - chi(source)
  /// Fiber sizes below d, one per deficient open cell.
  std::vector<std::int64_t> deficient_fibers;
  std::int64_t lhs = 0;  // d chi(target)
  std::int64_t rhs = 0;  // chi(source) + sum (d - mu_i)

  std::int64_t deficient_points() const { return static_cast<std::int64_t>(deficient_fibers.size()); }
  bool passed() const { return deficient_points() <= budget && lhs >= rhs; }
};

/// Requires d >= 1 equal to |degree| when the degree is defined, and at most
/// the smallest triangle fiber otherwise (PreconditionViolated).
KneserAudit audit_kneser(const SimplicialMap& g, std::int64_t d);

}  // namespace mmr
