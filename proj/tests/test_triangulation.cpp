#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mmr/error.hpp"
#include "mmr/fixtures.hpp"
#include "oracles.hpp"

#include <set>

using namespace mmr;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::OutOfRange;
}

void check_marked(const MarkedTriangulation& m) {
  CHECK(validate_triangulation(m.tri) == m.surface);
  for (const auto& t : m.tri.triangles) {
    const Word loop = m.edge_word(t[0], t[1]) * m.edge_word(t[1], t[2]) * m.edge_word(t[2], t[0]);
    CHECK(word_problem(m.surface, loop));
    if (m.surface == Surface::torus() || m.surface == Surface::klein_bottle())
      CHECK(oracle::affine_image(m.surface, loop).identity());
  }
}

}  // namespace

TEST_CASE("closed-surface checks") {
  CHECK(validate_triangulation(tetrahedron()) == Surface::sphere());
  CHECK(validate_triangulation(octahedron()) == Surface::sphere());
  CHECK(validate_triangulation(bipyramid(5)) == Surface::sphere());
  CHECK(validate_triangulation(lattice_torus(7, -2, 1).tri) == Surface::torus());
  CHECK(lattice_torus(7, -2, 1).tri.triangles.size() == 14);
  CHECK(validate_triangulation(projective_plane_6().tri) == Surface::projective_plane());
  CHECK(projective_plane_6().tri.triangles.size() == 10);

  TriangulatedSurface open = tetrahedron();
  open.triangles.pop_back();
  CHECK(code_of([&] { validate_triangulation(open); }) == ErrorCode::EdgeCountViolation);

  // Two tetrahedra sharing a vertex: edges are fine, the link is not.
  TriangulatedSurface pinched = tetrahedron();
  pinched.vertex_count = 7;
  for (auto t : tetrahedron().triangles) {
    for (int& v : t) v = v == 0 ? 0 : v + 3;
    pinched.triangles.push_back(t);
  }
  CHECK(code_of([&] { validate_triangulation(pinched); }) == ErrorCode::BadVertexLink);

  TriangulatedSurface two = tetrahedron();
  two.vertex_count = 8;
  for (auto t : tetrahedron().triangles) {
    for (int& v : t) v += 4;
    two.triangles.push_back(t);
  }
  CHECK(code_of([&] { validate_triangulation(two); }) == ErrorCode::Disconnected);
}

TEST_CASE("coherent orientation") {
  const auto t = lattice_torus(7, -2, 1).tri;
  auto o = coherent_orientation(t);
  REQUIRE(o.has_value());
  std::set<std::pair<int, int>> directed;
  for (const auto& tri : *o)
    for (int k = 0; k < 3; ++k) CHECK(directed.insert({tri[k], tri[(k + 1) % 3]}).second);
  CHECK(directed.size() == 2 * t.edges().size());
  CHECK_FALSE(coherent_orientation(projective_plane_6().tri).has_value());
  CHECK_FALSE(coherent_orientation(grid_klein_bottle(3, 4).tri).has_value());
}

TEST_CASE("marked fixtures have trivial triangle loops") {
  check_marked(marked_sphere());
  check_marked(lattice_torus(7, -2, 1));
  check_marked(lattice_torus(3, 1, 3));
  check_marked(grid_klein_bottle(3, 4));
  check_marked(grid_klein_bottle(4, 6));
  check_marked(projective_plane_6());
}

TEST_CASE("marked generators are the canonical ones") {
  // Around the lattice, the loop through (n, 0) reads a1 and (s, h) reads b1.
  const auto m = lattice_torus(7, -2, 1);
  Word along;
  for (int x = 0; x < 7; ++x) along = along * m.edge_word(x, (x + 1) % 7);
  CHECK(word_problem(Surface::torus(), along * Word::generator(0, -1)));
  const auto k = grid_klein_bottle(3, 4);
  Word up;
  for (int y = 0; y < 4; ++y) up = up * k.edge_word(y, (y + 1) % 4);
  CHECK(word_problem(Surface::klein_bottle(), up * Word::generator(1, -1)));
}

TEST_CASE("pieces and assembled surfaces") {
  for (int g = 0; g <= 4; ++g) {
    CHECK(validate_triangulation(surface_fixture(Surface::orientable_genus(g))) == Surface::orientable_genus(g));
    if (g > 0)
      CHECK(validate_triangulation(surface_fixture(Surface::nonorientable_genus(g))) ==
            Surface::nonorientable_genus(g));
  }
  const Assembly a = assemble({handle_piece(), disk_piece()});
  CHECK(validate_triangulation(a.surface) == Surface::torus());
  REQUIRE(a.piece_vertices.size() == 2);
  for (int l = 0; l < 6; ++l) CHECK(a.piece_vertices[1][static_cast<std::size_t>(l)] < a.piece_vertices[0][6]);
}

TEST_CASE("handle template covers the disk at most three times") {
  const Piece h = handle_piece();
  const Piece d = disk_piece();
  const auto f = handle_to_disk();
  for (int b = 0; b < 6; ++b) CHECK(f[static_cast<std::size_t>(b)] == b);
  std::set<std::set<int>> disk_triangles;
  for (const auto& t : d.triangles) disk_triangles.insert({t[0], t[1], t[2]});
  std::map<std::set<int>, int> hits;
  for (const auto& t : h.triangles) {
    std::set<int> img{f[static_cast<std::size_t>(t[0])], f[static_cast<std::size_t>(t[1])],
                      f[static_cast<std::size_t>(t[2])]};
    CHECK(img.size() == 3);
    CHECK(disk_triangles.count(img) == 1);
    ++hits[img];
  }
  int most = 0;
  for (const auto& [cell, n] : hits) most = std::max(most, n);
  CHECK(most == 3);
}

TEST_CASE("OFF round trip") {
  const auto t = surface_fixture(Surface::orientable_genus(2));
  const auto back = from_off(to_off(t));
  CHECK(back.vertex_count == t.vertex_count);
  CHECK(back.triangles == t.triangles);
  CHECK(code_of([] { from_off("OFF\n3 1 0\n3 0 1"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { from_off("PLY\n"); }) == ErrorCode::SyntaxError);
}
