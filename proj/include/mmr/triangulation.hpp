#pragma once

// Closed triangulated surfaces as raw triangle lists.

#include "mmr/group.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmr {

using Triangle = std::array<int, 3>;
using Edge = std::pair<int, int>;  // always (min, max)

Edge make_edge(int u, int w);

struct TriangulatedSurface {
  int vertex_count = 0;
  std::vector<Triangle> triangles;
  /// Coherently ordered copy of `triangles` (same positions), when known.
  std::optional<std::vector<Triangle>> orientation;

  std::vector<Edge> edges() const;
  int euler_char() const;
};

/// Closed-surface checks: every edge in exactly two triangles, every vertex
/// link one cycle, connected. Returns the surface type.
/// Throws EdgeCountViolation, BadVertexLink or Disconnected.
Surface validate_triangulation(const TriangulatedSurface& t);

/// Reorders each triangle so that shared edges are traversed in opposite
/// directions; nullopt when no such ordering exists. Expects a valid
/// triangulation.
std::optional<std::vector<Triangle>> coherent_orientation(const TriangulatedSurface& t);

/// Copy of `t` with `orientation` filled in when `t` is orientable.
TriangulatedSurface with_orientation(TriangulatedSurface t);

/// Cyclically ordered link of vertex `v`.
std::vector<int> vertex_link(const TriangulatedSurface& t, int v);

/// OFF-style text: `OFF`, a `V F 0` counts line, then one `3 a b c` line per
/// triangle (no coordinates).
std::string to_off(const TriangulatedSurface& t);
TriangulatedSurface from_off(std::string_view text);

}  // namespace mmr
