#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mmr/error.hpp"
#include "mmr/map_model.hpp"
#include "mmr/random_maps.hpp"

using namespace mmr;

namespace {

Permutation cyc(const std::string& text, int degree) { return Permutation::parse_cycles(text, degree); }

BranchPoint simple_branch(const std::string& cycles, int degree) {
  Permutation p = cyc(cycles, degree);
  return BranchPoint{p.cycle_type(), p};
}

MapDescription sphere_double_cover(int branch_points) {
  BranchedCovering b{Surface::sphere(), 2, {}, {}};
  for (int i = 0; i < branch_points; ++i) b.branch_points.push_back(simple_branch("(1 2)", 2));
  return MapDescription{b};
}

MapDescription genus2_over_torus() {
  BranchedCovering b{Surface::torus(), 2, {cyc("(1 2)", 2), cyc("()", 2)},
                     {simple_branch("(1 2)", 2), simple_branch("(1 2)", 2)}};
  return MapDescription{b};
}

MapDescription pinch(Surface source, bool orientable, int genus) {
  return MapDescription{Pinch{source, SubsurfaceSpec{orientable, genus}}};
}

MapDescription linear(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
  return MapDescription{TorusLinear{{{p, q}, {r, s}}}};
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::OutOfRange;
}

// Riemann-Hurwitz from cycle counts of the actual monodromy.
int oracle_euler(const BranchedCovering& b) {
  int chi = b.sheets * b.target.euler_char();
  for (const auto& bp : b.branch_points) chi -= b.sheets - bp.monodromy.cycle_count();
  return chi;
}

// The source is orientable iff the action on sheets x {orientations}
// splits into two orbits.
bool oracle_orientable(const BranchedCovering& b) {
  if (b.target.orientable) return true;
  const auto w1 = orientation_character(b.target);
  std::vector<Permutation> doubled;
  auto lift = [&](const Permutation& p, int flip) {
    std::vector<int> images(static_cast<std::size_t>(2 * b.sheets));
    for (int s = 0; s < b.sheets; ++s)
      for (int e = 0; e < 2; ++e) images[static_cast<std::size_t>(2 * s + e)] = 2 * p.image(s) + (e ^ flip);
    return Permutation(images);
  };
  for (std::size_t g = 0; g < b.handle_monodromy.size(); ++g)
    doubled.push_back(lift(b.handle_monodromy[g], w1.values[g]));
  for (const auto& bp : b.branch_points) doubled.push_back(lift(bp.monodromy, 0));
  return !is_transitive(doubled, 2 * b.sheets);
}

}  // namespace

TEST_CASE("validate_map examples") {
  const PermutationRep rep{2, {cyc("(1 2)", 2), cyc("()", 2)}};
  CHECK(validate_map(MapDescription{Covering{Surface::torus(), rep}}).source == Surface::torus());
  auto four = validate_map(sphere_double_cover(4));
  CHECK(four.source == Surface::torus());
  CHECK(four.target == Surface::sphere());
  CHECK(code_of([] { validate_map(sphere_double_cover(3)); }) == ErrorCode::RelationViolated);
  CHECK(validate_map(sphere_double_cover(2)).source == Surface::sphere());
  CHECK(validate_map(genus2_over_torus()).source == Surface::orientable_genus(2));
}

TEST_CASE("validate_map errors") {
  const PermutationRep split{2, {cyc("()", 2), cyc("()", 2)}};
  CHECK(code_of([&] { validate_map(MapDescription{Covering{Surface::torus(), split}}); }) ==
        ErrorCode::NonTransitiveMonodromy);
  const PermutationRep noncommuting{3, {cyc("(1 2)", 3), cyc("(2 3)", 3)}};
  CHECK(code_of([&] { validate_map(MapDescription{Covering{Surface::torus(), noncommuting}}); }) ==
        ErrorCode::RelationViolated);

  BranchedCovering wrong_type{Surface::sphere(), 3, {}, {{{2, 1}, cyc("(1 2 3)", 3)}, {{3}, cyc("(1 3 2)", 3)}}};
  CHECK(code_of([&] { validate_map(MapDescription{wrong_type}); }) == ErrorCode::CycleTypeMismatch);
  BranchedCovering unbranched{Surface::sphere(), 2, {}, {{{1, 1}, cyc("()", 2)}}};
  CHECK(code_of([&] { validate_map(MapDescription{unbranched}); }) == ErrorCode::CycleTypeMismatch);

  CHECK(code_of([] { validate_map(pinch(Surface::orientable_genus(2), true, 0)); }) == ErrorCode::DiskPinch);
  CHECK(code_of([] { validate_map(pinch(Surface::orientable_genus(2), false, 1)); }) == ErrorCode::NotASurface);
  CHECK(code_of([] { validate_map(pinch(Surface::orientable_genus(2), true, 3)); }) == ErrorCode::NotASurface);
  CHECK(code_of([] { validate_map(pinch(Surface::nonorientable_genus(2), true, 1)); }) == ErrorCode::NotASurface);

  const MapDescription torus_map = linear(2, 0, 0, 1);
  CHECK(code_of([&] { validate_map(compose_maps(torus_map, sphere_double_cover(2))); }) ==
        ErrorCode::CompositionMismatch);
}

TEST_CASE("absolute degree examples") {
  CHECK(absolute_degree(sphere_double_cover(2)) == AbsoluteDegree::known(2));
  CHECK(absolute_degree(linear(2, 0, 0, 1)) == AbsoluteDegree::known(2));
  CHECK(absolute_degree(pinch(Surface::orientable_genus(2), true, 1)) == AbsoluteDegree::known(1));

  const Surface t = Surface::torus();
  const Surface kb = Surface::klein_bottle();
  // Klein bottle -> circle -> torus: a1 -> a, b1 -> 1. Not orientation-true.
  SurfaceHom fold{kb, t, {Word::generator(0), Word()}};
  CHECK(absolute_degree(MapDescription{HomMap{fold}}) == AbsoluteDegree::case_split());
  SurfaceHom kb_id{kb, kb, {Word::generator(0), Word::generator(1)}};
  CHECK(absolute_degree(MapDescription{HomMap{kb_id}}) == AbsoluteDegree::undefined());
  SurfaceHom into_sphere{t, Surface::sphere(), {Word(), Word()}};
  CHECK(code_of([&] { absolute_degree(MapDescription{HomMap{into_sphere}}); }) == ErrorCode::UnsupportedTarget);
}

TEST_CASE("index of image examples") {
  CHECK(index_of_image(pinch(Surface::orientable_genus(2), true, 1)) == IndexResult::finite(1));
  CHECK(index_of_image(sphere_double_cover(2)) == IndexResult::finite(1));
  CHECK(index_of_image(genus2_over_torus()) == IndexResult::finite(1));
  CHECK(index_of_image(linear(2, 0, 0, 1)) == IndexResult::finite(2));
  CHECK(index_of_image(linear(1, 2, 2, 4)) == IndexResult::exceeds_bound());
  // An unbranched-looking double cover: every sheet of the torus handle
  // monodromy is kept, so the image has index 2.
  BranchedCovering b{Surface::torus(), 2, {cyc("(1 2)", 2), cyc("()", 2)}, {}};
  CHECK(index_of_image(MapDescription{b}) == IndexResult::finite(2));
}

TEST_CASE("orientation-true examples") {
  const Surface g2 = Surface::orientable_genus(2);
  CHECK(orientation_true(pinch(g2, true, 1)) == true);
  CHECK(orientation_true(linear(0, 1, 1, 0)) == true);
  const Surface kb = Surface::klein_bottle();
  CHECK(orientation_true(MapDescription{HomMap{SurfaceHom{kb, kb, {Word::generator(0), Word::generator(1)}}}}) ==
        true);
  SurfaceHom bad{kb, Surface::torus(), {Word::generator(0), Word::generator(1)}};
  CHECK(code_of([&] { validate_map(MapDescription{HomMap{bad}}); }) == ErrorCode::RelatorNotKilled);
  CHECK(orientation_true(pinch(Surface::nonorientable_genus(3), false, 1)) == false);
  CHECK(orientation_true(pinch(Surface::nonorientable_genus(3), true, 1)) == true);
  CHECK(orientation_true(sphere_double_cover(2)) == true);
}

TEST_CASE("induced hom examples") {
  const Surface t = Surface::torus();
  auto h = induced_hom(linear(1, 2, 0, 1));
  REQUIRE(h);
  CHECK(format_word(h->images[0], canonical_presentation(t)) == "a1");
  CHECK(format_word(h->images[1], canonical_presentation(t)) == "a1 a1 b1");

  auto p = induced_hom(pinch(Surface::orientable_genus(2), true, 1));
  REQUIRE(p);
  CHECK(p->codomain == t);
  const auto pt = canonical_presentation(t);
  CHECK(format_word(p->images[0], pt) == "a1");
  CHECK(format_word(p->images[1], pt) == "b1");
  CHECK(p->images[2].empty());
  CHECK(p->images[3].empty());
  CHECK_NOTHROW(validate_hom(*p));

  auto c = induced_hom(compose_maps(linear(1, 2, 0, 1), linear(2, 1, 1, 1)));
  REQUIRE(c);
  // Q2 Q1 = [[2,1],[1,1]] [[1,2],[0,1]] = [[2,5],[1,3]]
  CHECK(abelianization_matrix(*c) == IntMatrix{{2, 5}, {1, 3}});

  CHECK_FALSE(induced_hom(sphere_double_cover(2)).has_value());
}

TEST_CASE("compute_invariants examples") {
  auto t = compute_invariants(linear(2, 0, 0, 1));
  CHECK(t.absolute_degree == AbsoluteDegree::known(2));
  CHECK(t.index == IndexResult::finite(2));
  CHECK(t.signed_degree == 2);
  CHECK(t.orientation_true == true);

  auto p = compute_invariants(pinch(Surface::orientable_genus(2), true, 1));
  CHECK(p.absolute_degree == AbsoluteDegree::known(1));
  CHECK(p.index == IndexResult::finite(1));
  CHECK(p.orientation_true == true);
  CHECK(p.target == Surface::torus());

  auto s = compute_invariants(sphere_double_cover(2));
  CHECK(s.absolute_degree == AbsoluteDegree::known(2));
  CHECK(s.index == IndexResult::finite(1));
  CHECK(s.signed_degree == 2);

  MapInvariants bad{Surface::torus(), Surface::orientable_genus(2), AbsoluteDegree::known(2), IndexResult::finite(2),
                    2, true};
  CHECK(code_of([&] { check_invariants(bad); }) == ErrorCode::InconsistentInvariants);
  MapInvariants split{Surface::klein_bottle(), Surface::torus(), AbsoluteDegree::known(2), IndexResult::finite(1),
                      std::nullopt, false};
  CHECK(code_of([&] { check_invariants(split); }) == ErrorCode::InconsistentInvariants);
}

TEST_CASE("pinch normal forms") {
  for (int g = 1; g <= 7; ++g) {
    for (bool so : {true, false}) {
      const Surface m = so ? Surface::orientable_genus(g) : Surface::nonorientable_genus(g);
      for (int h = 0; h <= g; ++h) {
        for (bool po : {true, false}) {
          const MapDescription d = pinch(m, po, h);
          SubsurfaceSpec spec{po, h};
          if (h == 0) continue;
          const bool fits = so ? po && h <= g : (po ? g - 2 * h >= 1 : h <= g);
          if (!fits) {
            CHECK_THROWS_AS(validate_map(d), Error);
            continue;
          }
          const auto ends = validate_map(d);
          CHECK(ends.target.euler_char() == m.euler_char() - spec.euler_char() + 1);
          auto hom = induced_hom(d);
          REQUIRE(hom);
          CHECK(hom->codomain == ends.target);
          CHECK_NOTHROW(validate_hom(*hom));
          CHECK(subgroup_index(ends.target, hom->images) == IndexResult::finite(1));
          CHECK(orientation_true(d) == po);
          const auto inv = compute_invariants(d);
          CHECK(inv.absolute_degree == AbsoluteDegree::known(1));
          if (inv.target.orientable && inv.source.orientable && inv.target.genus >= 1)
            CHECK(degree_from_form(*hom) == 1);
        }
      }
    }
  }
}

TEST_CASE("Riemann-Hurwitz on random branched coverings") {
  Rng rng(42);
  const Surface targets[] = {Surface::sphere(), Surface::torus(), Surface::orientable_genus(2),
                             Surface::projective_plane(), Surface::klein_bottle()};
  for (int trial = 0; trial < 200; ++trial) {
    const Surface& target = targets[trial % 5];
    const BranchedCovering b = random_branched_covering(target, 6, 4, rng);
    const MapDescription m{b};
    const auto ends = validate_map(m);
    CHECK(ends.source.euler_char() == oracle_euler(b));
    CHECK(ends.source.orientable == oracle_orientable(b));
    Permutation total = PermutationRep{b.sheets, b.handle_monodromy}.evaluate(canonical_presentation(target).relator);
    for (const auto& bp : b.branch_points) total = total.then(bp.monodromy);
    CHECK(total.is_identity());
    const auto inv = compute_invariants(m);
    CHECK(inv.absolute_degree.value * target.euler_char() >= inv.source.euler_char());
    // The image subgroup contains the stabilizer image, whose index divides d.
    REQUIRE(inv.index.is_finite());
    CHECK(b.sheets % *inv.index.index == 0);
  }
}

TEST_CASE("covering index equals the coset count") {
  for (const Surface s : {Surface::torus(), Surface::klein_bottle()}) {
    for (const auto& table : low_index_tables(s, 6)) {
      const MapDescription m{Covering{s, permutation_rep(table)}};
      CHECK(index_of_image(m) == IndexResult::finite(table.index()));
      CHECK(validate_map(m).source == cover_surface(s, table));
    }
  }
  const Surface g2 = Surface::orientable_genus(2);
  for (const auto& table : low_index_tables(g2, 4)) {
    const MapDescription m{Covering{g2, permutation_rep(table)}};
    CHECK(index_of_image(m) == IndexResult::finite(table.index()));
  }
}

TEST_CASE("degree form matches constructive degrees") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const TorusLinear t = random_torus_linear(4, rng);
    const auto h = induced_hom(MapDescription{t});
    const auto& q = t.matrix;
    CHECK(degree_from_form(*h) == q[0][0] * q[1][1] - q[0][1] * q[1][0]);
  }
  for (int g = 1; g <= 5; ++g)
    for (int h = 1; h + 1 < g; ++h) {
      const MapDescription p = pinch(Surface::orientable_genus(g), true, h);
      const MapDescription then_linear = compose_maps(p, pinch(Surface::orientable_genus(g - h), true, 1));
      CHECK(degree_from_form(*induced_hom(then_linear)) == 1);
    }
  const MapDescription p = pinch(Surface::orientable_genus(3), true, 2);
  const MapDescription c = compose_maps(p, linear(3, 1, 1, 2));
  CHECK(degree_from_form(*induced_hom(c)) == 5);
  CHECK(compute_invariants(c).absolute_degree == AbsoluteDegree::known(5));
  CHECK(compute_invariants(c).signed_degree == 5);
  SurfaceHom inconsistent{Surface::torus(), Surface::orientable_genus(2),
                          {Word::generator(0), Word::generator(1)}};
  CHECK(code_of([&] { degree_from_form(inconsistent); }) == ErrorCode::NoConsistentDegree);
}

TEST_CASE("absolute degree is multiplicative on coverings and orientation-true maps") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const MapDescription f = MapDescription{random_torus_linear(3, rng)};
    const MapDescription g = MapDescription{random_torus_linear(3, rng)};
    const auto a = absolute_degree(compose_maps(f, g));
    CHECK(a == AbsoluteDegree::known(absolute_degree(f).value * absolute_degree(g).value));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int d1 = 1 + static_cast<int>(rng() % 3);
    const int d2 = 1 + static_cast<int>(rng() % 3);
    const Covering outer = random_covering(Surface::orientable_genus(2), d2, rng);
    const Surface middle = validate_map(MapDescription{outer}).source;
    const Covering inner = random_covering(middle, d1, rng);
    const MapDescription c = compose_maps(MapDescription{inner}, MapDescription{outer});
    const auto inv = compute_invariants(c);
    CHECK(inv.absolute_degree == AbsoluteDegree::known(d1 * d2));
    CHECK(inv.source.euler_char() == d1 * d2 * -2);
    CHECK(inv.index == IndexResult::finite(d1 * d2));
  }
  // A composition through a map that is not orientation-true splits.
  const Surface n3 = Surface::nonorientable_genus(3);
  const MapDescription not_true = compose_maps(pinch(n3, false, 1), linear(2, 0, 0, 1));
  CHECK(absolute_degree(not_true) == AbsoluteDegree::case_split());
}
