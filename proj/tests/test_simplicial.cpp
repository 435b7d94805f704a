#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mmr/classifier.hpp"
#include "mmr/coset.hpp"
#include "mmr/error.hpp"
#include "mmr/witness.hpp"

#include <cstdlib>
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

// Fiber sizes by geometry: the barycenter of each open target cell is
// pulled back into every source triangle over it, and the preimage points
// (as weighted source vertex sets) are deduplicated.
std::map<std::vector<int>, std::int64_t> oracle_fibers(const SimplicialMap& g) {
  std::map<std::vector<int>, std::set<std::vector<int>>> points;
  auto add_cell = [&](std::vector<int> c) {
    std::sort(c.begin(), c.end());
    points[c];
  };
  for (const auto& t : g.target.triangles) {
    add_cell({t[0], t[1], t[2]});
    for (int k = 0; k < 3; ++k) add_cell({t[k], t[(k + 1) % 3]});
    for (int k = 0; k < 3; ++k) add_cell({t[k]});
  }
  for (const auto& s : g.source.triangles) {
    for (auto& [cell, pts] : points) {
      // A point with equal weight on the cell's vertices pulls back to equal
      // weight on the source vertices of s mapping into the cell, provided
      // every cell vertex is hit.
      std::vector<int> pre;
      std::set<int> hit;
      for (int v : s)
        if (std::find(cell.begin(), cell.end(), g.vertex_images[static_cast<std::size_t>(v)]) != cell.end()) {
          pre.push_back(v);
          hit.insert(g.vertex_images[static_cast<std::size_t>(v)]);
        }
      std::set<int> tri_image;
      for (int v : s) tri_image.insert(g.vertex_images[static_cast<std::size_t>(v)]);
      bool inside = hit.size() == cell.size();
      for (int c : cell) inside = inside && tri_image.count(c);
      if (!inside) continue;
      std::sort(pre.begin(), pre.end());
      pts.insert(pre);
    }
  }
  std::map<std::vector<int>, std::int64_t> out;
  for (const auto& [cell, pts] : points) out[cell] = static_cast<std::int64_t>(pts.size());
  return out;
}

void check_against_oracle(const SimplicialMap& g) {
  CHECK(cell_fibers(g) == oracle_fibers(g));
}

void check_witness(const Witness& w, std::int64_t expected_multiplicity) {
  const auto& g = w.map;
  validate_triangulation(g.source);
  validate_triangulation(g.target);
  check_against_oracle(g);
  CHECK(multiplicity(g) == expected_multiplicity);
  REQUIRE(w.invariants.has_value());
  const MmrResult verdict = mmr_surface(*w.invariants);
  if (verdict.kind != MmrResult::Kind::Cases) CHECK(multiplicity(g) >= verdict.lo);
  if (w.invariants->absolute_degree.is_known() && w.invariants->absolute_degree.value > 0) {
    const auto d = w.invariants->absolute_degree.value;
    if (const auto deg = simplicial_degree(g)) CHECK(std::llabs(*deg) == d);
    CHECK(audit_kneser(g, d).passed());
  }
}

SimplicialMap identity_map(const TriangulatedSurface& t) {
  SimplicialMap g{t, t, {}};
  for (int v = 0; v < t.vertex_count; ++v) g.vertex_images.push_back(v);
  return g;
}

PermutationRep rep_of(int degree, std::vector<std::string> cycles) {
  PermutationRep r{degree, {}};
  for (const auto& c : cycles) r.generators.push_back(Permutation::parse_cycles(c, degree));
  return r;
}

}  // namespace

TEST_CASE("identity maps") {
  for (const auto& t : {tetrahedron(), lattice_torus(7, -2, 1).tri, projective_plane_6().tri}) {
    const auto g = identity_map(t);
    CHECK(multiplicity(g) == 1);
    check_against_oracle(g);
  }
  CHECK(simplicial_degree(identity_map(tetrahedron())) == 1);
  CHECK(simplicial_degree(identity_map(lattice_torus(7, -2, 1).tri)) == 1);
  CHECK_FALSE(simplicial_degree(identity_map(projective_plane_6().tri)).has_value());
  const auto audit = audit_kneser(identity_map(tetrahedron()), 1);
  CHECK(audit.deficient_points() == 0);
  CHECK(audit.lhs == 2);
  CHECK(audit.rhs == 2);
}

TEST_CASE("reflection of the octahedron") {
  SimplicialMap g{octahedron(), octahedron(), {1, 0, 2, 3, 4, 5}};
  CHECK(simplicial_degree(g) == -1);
  CHECK(multiplicity(g) == 1);
}

TEST_CASE("degenerate and inconsistent maps are rejected") {
  SimplicialMap collapse{tetrahedron(), tetrahedron(), {0, 0, 1, 2}};
  CHECK(code_of([&] { multiplicity(collapse); }) == ErrorCode::DegenerateTriangle);
  SimplicialMap face{TriangulatedSurface{3, {{0, 1, 2}}, std::nullopt}, tetrahedron(), {0, 1, 2}};
  CHECK(code_of([&] { simplicial_degree(face); }) == ErrorCode::InconsistentSignedCount);
  SimplicialMap short_images{tetrahedron(), tetrahedron(), {0, 1}};
  CHECK(code_of([&] { multiplicity(short_images); }) == ErrorCode::PreconditionViolated);
}

TEST_CASE("torus covers") {
  const auto torus = lattice_torus(7, -2, 1);
  const Witness two = build_cover_witness(torus, rep_of(2, {"(1 2)", "()"}));
  CHECK(validate_triangulation(two.map.source) == Surface::torus());
  CHECK(two.map.source.vertex_count == 14);
  CHECK(multiplicity(two.map) == 2);
  CHECK(std::llabs(*simplicial_degree(two.map)) == 2);
  const auto audit = audit_kneser(two.map, 2);
  CHECK(audit.deficient_points() == 0);
  CHECK(audit.lhs == 0);
  CHECK(audit.rhs == 0);
  for (const auto& [cell, n] : cell_fibers(two.map)) CHECK(n == 2);

  check_witness(build_cover_witness(torus, rep_of(3, {"(1 2 3)", "()"})), 3);
  const Witness one = build_cover_witness(torus, rep_of(1, {"()", "()"}));
  CHECK(multiplicity(one.map) == 1);
  CHECK(one.map.source.triangles.size() == torus.tri.triangles.size());

  CHECK(code_of([&] { build_cover_witness(torus, rep_of(2, {"()", "()"})); }) == ErrorCode::NonTransitiveMonodromy);
  CHECK(code_of([&] { build_cover_witness(torus, rep_of(3, {"(1 2)", "(2 3)"})); }) == ErrorCode::RelatorNotKilled);
}

TEST_CASE("every cover of degree <= 4 of the torus and Klein bottle") {
  for (const auto& n : {lattice_torus(7, -2, 1), grid_klein_bottle(3, 4)}) {
    int seen = 0;
    for (const auto& table : low_index_tables(n.surface, 4)) {
      const PermutationRep rep = permutation_rep(table);
      const Witness w = build_cover_witness(n, rep);
      CHECK(multiplicity(w.map) == rep.degree);
      CHECK(validate_triangulation(w.map.source) == cover_surface(n.surface, table));
      const MmrResult verdict = mmr_surface(*w.invariants);
      REQUIRE(verdict.is_exact());
      CHECK(verdict.lo == rep.degree);
      check_witness(w, rep.degree);
      ++seen;
    }
    CHECK(seen > 10);
  }
}

TEST_CASE("projective plane double cover") {
  const Witness w = build_cover_witness(projective_plane_6(), rep_of(2, {"(1 2)"}));
  CHECK(validate_triangulation(w.map.source) == Surface::sphere());
  CHECK(w.map.source.vertex_count == 12);
  check_witness(w, 2);
}

TEST_CASE("pinch witnesses") {
  struct Case {
    Surface source;
    int h;
    Surface target;
  };
  const std::vector<Case> cases{
      {Surface::orientable_genus(2), 1, Surface::torus()},
      {Surface::orientable_genus(3), 1, Surface::orientable_genus(2)},
      {Surface::torus(), 1, Surface::sphere()},
      {Surface::orientable_genus(3), 2, Surface::torus()},
      {Surface::nonorientable_genus(3), 1, Surface::projective_plane()},
      {Surface::nonorientable_genus(4), 1, Surface::klein_bottle()},
  };
  for (const auto& c : cases) {
    CAPTURE(c.source.describe());
    const Witness w = build_pinch_witness(c.source, SubsurfaceSpec{true, c.h});
    CHECK(validate_triangulation(w.map.source) == c.source);
    CHECK(validate_triangulation(w.map.target) == c.target);
    check_witness(w, 3);
    CHECK(mmr_surface(*w.invariants).describe() == "Exact(3)");
    if (c.target.orientable) CHECK(std::llabs(*simplicial_degree(w.map)) == 1);
    // Outside the folded disks every point has exactly one preimage.
    const Piece rest = c.target.orientable ? handle_piece() : crosscap_piece();
    std::vector<Piece> pieces(static_cast<std::size_t>(c.target.genus), rest);
    for (int i = 0; i < c.h; ++i) pieces.push_back(disk_piece());
    const Assembly tgt = assemble(pieces);
    std::set<int> disks;
    for (std::size_t i = static_cast<std::size_t>(c.target.genus); i < pieces.size(); ++i)
      disks.insert(tgt.piece_vertices[i].begin(), tgt.piece_vertices[i].end());
    std::int64_t multiple = 0;
    for (const auto& [cell, n] : cell_fibers(w.map)) {
      CHECK(n >= 1);
      if (n == 1) continue;
      ++multiple;
      for (int v : cell) CHECK(disks.count(v) == 1);
    }
    CHECK(multiple % c.h == 0);
  }
  {
    Rng rng(1);
    CHECK(code_of([&] { random_branched_fixture(tetrahedron(), 2, 0, rng); }) == ErrorCode::PreconditionViolated);
  }
  CHECK(code_of([] { build_pinch_witness(Surface::torus(), SubsurfaceSpec{true, 0}); }) == ErrorCode::DiskPinch);
  CHECK(code_of([] { build_pinch_witness(Surface::klein_bottle(), SubsurfaceSpec{false, 1}); }) ==
        ErrorCode::Unsupported);
}

TEST_CASE("sphere folds") {
  for (const auto& t : {tetrahedron(), octahedron(), surface_fixture(Surface::torus()),
                        surface_fixture(Surface::orientable_genus(2)), projective_plane_6().tri}) {
    const Witness w = build_sphere_fold_witness(t);
    CHECK(validate_triangulation(w.map.source) == Surface::sphere());
    check_witness(w, 2);
    if (validate_triangulation(t).orientable) CHECK(simplicial_degree(w.map) == 0);
  }
  const Witness onto_sphere = build_sphere_fold_witness(tetrahedron());
  const MmrResult range = mmr_surface(*onto_sphere.invariants);
  CHECK(range.describe() == "Range(2,4)");
  CHECK(refine_with_witness(range, multiplicity(onto_sphere.map)).describe() == "Exact(2)");

  const Witness onto_torus = build_sphere_fold_witness(surface_fixture(Surface::torus()));
  REQUIRE(onto_torus.description.has_value());
  const MapInvariants computed = compute_invariants(*onto_torus.description);
  CHECK(computed.absolute_degree == onto_torus.invariants->absolute_degree);
  CHECK(computed.index == onto_torus.invariants->index);
}

TEST_CASE("power maps of the sphere") {
  for (int d = 1; d <= 5; ++d) {
    const Witness w = build_power_map_witness(d);
    check_witness(w, d);
    CHECK(std::llabs(*simplicial_degree(w.map)) == d);
    if (d < 2) continue;
    const auto audit = audit_kneser(w.map, d);
    CHECK(audit.deficient_points() == 2);
    CHECK(audit.budget == 2 * d - 2);
    CHECK(audit.lhs == audit.rhs);
  }
  CHECK(audit_kneser(build_power_map_witness(2).map, 2).budget == 2);
}

TEST_CASE("random branched covers satisfy the deficiency inequality") {
  Rng rng(2024);
  const std::vector<TriangulatedSurface> targets{surface_fixture(Surface::sphere()), surface_fixture(Surface::torus()),
                                                 surface_fixture(Surface::orientable_genus(2))};
  std::uniform_int_distribution<int> sheets(1, 6), pts(0, 3);
  for (int i = 0; i < 60; ++i) {
    const auto& target = targets[static_cast<std::size_t>(i % 3)];
    const int d = sheets(rng);
    const int r = std::max(i % 3 == 0 ? 2 : 1, pts(rng));
    const BranchedFixture f = random_branched_fixture(target, d, r, rng);
    const Surface src = validate_triangulation(f.map.source);
    CHECK(src.orientable);
    CHECK(std::llabs(*simplicial_degree(f.map)) == d);
    check_against_oracle(f.map);
    const auto audit = audit_kneser(f.map, d);
    CHECK(audit.passed());
    // Riemann-Hurwitz: all of the deficiency sits at the branch vertices.
    CHECK(audit.lhs == audit.rhs);
    CHECK(audit.deficient_points() <= r);
    CHECK(multiplicity(f.map) == d);
  }
}

TEST_CASE("fiber profile counts") {
  FiberProfile three;
  three.add(3);
  CHECK(fiber_profile_counts(three, 2) == 3);
  CHECK(fiber_profile_counts(three, 3) == 1);
  CHECK(check_footnote_inequality(three, 2));
  FiberProfile fours;
  fours.add(4, 2);
  CHECK(fiber_profile_counts(fours, 2) == 12);
  CHECK(check_footnote_inequality(FiberProfile{}, 2));
  CHECK(fiber_profile_counts(FiberProfile{}, 2) == 0);

  Rng rng(99);
  std::uniform_int_distribution<int> size(1, 8), count(0, 10);
  for (int i = 0; i < 100; ++i) {
    FiberProfile p;
    const int fibers = count(rng);
    for (int k = 0; k < fibers; ++k) p.add(size(rng));
    CHECK(check_footnote_inequality(p, 2));
    CHECK(check_footnote_inequality(p, 3));
  }
}

TEST_CASE("multiplicity below mu exactly when the mu-count vanishes") {
  std::vector<SimplicialMap> maps{identity_map(tetrahedron()),
                                  build_sphere_fold_witness(octahedron()).map,
                                  build_power_map_witness(4).map,
                                  build_pinch_witness(Surface::orientable_genus(2), {true, 1}).map,
                                  build_cover_witness(lattice_torus(7, -2, 1), rep_of(3, {"(1 2 3)", "()"})).map};
  for (const auto& g : maps) {
    const auto profile = fiber_profile(g);
    for (int mu = 2; mu <= 6; ++mu) CHECK((multiplicity(g) < mu) == (fiber_profile_counts(profile, mu) == 0));
  }
}
