#pragma once

// Small triangulated surfaces used as targets and building blocks.

#include "mmr/group.hpp"
#include "mmr/triangulation.hpp"

#include <map>
#include <utility>
#include <vector>

namespace mmr {

/// A triangulation of a surface whose oriented edges carry words in the
/// canonical generators: going around any triangle multiplies to the
/// identity in pi_1, and every loop's word is its homotopy class.
struct MarkedTriangulation {
  TriangulatedSurface tri;
  Surface surface;
  std::map<std::pair<int, int>, Word> edge_words;  // keyed by directed edge

  const Word& edge_word(int from, int to) const;
};

TriangulatedSurface tetrahedron();
/// Vertices 2k and 2k+1 are the two ends of coordinate axis k.
TriangulatedSurface octahedron();
/// Equator 0..k-1, poles k (north) and k+1 (south).
TriangulatedSurface bipyramid(int k);

MarkedTriangulation marked_sphere();
/// Z^2 modulo the lattice spanned by (n, 0) and (s, h), with the square grid
/// split along (1, 1). Generator a1 is (n, 0) and b1 is (s, h).
MarkedTriangulation lattice_torus(int n, int s, int h);
/// Z^2 modulo a: (x, y) -> (x + w, -y) and b1: (x, y) -> (x, y + h); h even.
MarkedTriangulation grid_klein_bottle(int w, int h);
/// Antipodal quotient of the icosahedron; the edge word is b0 where the
/// lift changes sign.
MarkedTriangulation projective_plane_6();

/// A triangulated piece with one hexagonal boundary: local vertices 0..5
/// are the boundary cycle in order.
struct Piece {
  int vertex_count = 6;
  std::vector<Triangle> triangles;
};

/// Torus minus a disk.
Piece handle_piece();
/// Moebius band.
Piece crosscap_piece();
/// Disk with the same collar as `handle_piece`.
Piece disk_piece();
/// Vertex map handle_piece -> disk_piece that is the identity on the
/// boundary and covers the disk with at most three sheets.
std::vector<int> handle_to_disk();

struct Assembly {
  TriangulatedSurface surface;
  /// piece_vertices[i][local] = global vertex of the i-th piece.
  std::vector<std::vector<int>> piece_vertices;
};

/// A grid sphere with one hexagonal hole per piece, each hole closed by its
/// piece. Vertices of the sphere part get the same ids for every piece list
/// of the same length.
Assembly assemble(const std::vector<Piece>& pieces);

/// Handles for orientable surfaces and crosscaps otherwise.
TriangulatedSurface surface_fixture(const Surface& s);

}  // namespace mmr
