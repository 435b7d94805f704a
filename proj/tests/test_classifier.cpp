#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mmr/classifier.hpp"
#include "mmr/error.hpp"
#include "mmr/random_maps.hpp"

using namespace mmr;

namespace {

MapInvariants inv(std::int64_t a, std::int64_t l, Surface m, Surface n) {
  return MapInvariants{m, n, AbsoluteDegree::known(a), IndexResult::finite(l), std::nullopt, true};
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

const Surface S2 = Surface::sphere();
const Surface T2 = Surface::torus();
const Surface G2 = Surface::orientable_genus(2);
const Surface G3 = Surface::orientable_genus(3);

}  // namespace

TEST_CASE("circle rule") {
  CHECK(mmr_circle(3).describe() == "Exact(3)");
  CHECK(mmr_circle(-4).describe() == "Exact(4)");
  CHECK(mmr_circle(0).describe() == "Exact(2)");
  CHECK(mmr_circle(0).certificate.theorem == TheoremId::CircleDegree);
  CHECK(mmr_circle(1).certificate.hypothesis_holds());
}

TEST_CASE("curves in higher dimensions") {
  CHECK(mmr_curve_in_highdim(3).describe() == "Exact(1)");
  CHECK(mmr_curve_in_highdim(5).describe() == "Exact(1)");
  CHECK(mmr_curve_in_highdim(5).certificate.hypothesis_holds());
  CHECK(code_of([] { mmr_curve_in_highdim(2); }) == ErrorCode::Unsupported);
}

TEST_CASE("Hurewicz bound") {
  CHECK(hurewicz_upper_bound(1, 2) == 2);
  CHECK(hurewicz_upper_bound(2, 4) == 2);
  CHECK(hurewicz_upper_bound(2, 3) == 3);
  CHECK(code_of([] { hurewicz_upper_bound(2, 5); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { hurewicz_upper_bound(2, 2); }) == ErrorCode::OutOfRange);
}

TEST_CASE("deficiency budget and Kneser check") {
  CHECK(kneser_deficiency_bound(2, T2, T2).deficiency_budget == 0);
  CHECK(kneser_deficiency_bound(1, G2, T2).deficiency_budget == 2);
  CHECK(kneser_deficiency_bound(3, S2, S2).deficiency_budget == 4);
  CHECK_FALSE(kneser_check(2, T2, T2, {1}));
  CHECK_FALSE(kneser_check(2, G3, G2, {1, 1}));
  CHECK(kneser_check(1, G2, G2, {}));
  CHECK(kneser_check(2, S2, S2, {1, 1}));
  CHECK_FALSE(kneser_check(2, S2, S2, {1, 1, 1}));
}

TEST_CASE("surface truth table") {
  CHECK(mmr_surface(inv(2, 1, S2, S2)).describe() == "Exact(2)");
  CHECK(mmr_surface(inv(2, 1, S2, S2)).certificate.theorem == TheoremId::CoveringDegree);
  CHECK(mmr_surface(inv(3, 3, T2, T2)).describe() == "Exact(3)");
  CHECK(mmr_surface(inv(1, 1, G2, T2)).describe() == "Exact(3)");
  CHECK(mmr_surface(inv(1, 1, G2, T2)).certificate.theorem == TheoremId::PinchDegreePlusTwo);
  CHECK(mmr_surface(inv(2, 2, G3, T2)).describe() == "Exact(4)");
  MapInvariants zero{G2, T2, AbsoluteDegree::known(0), IndexResult::exceeds_bound(), std::nullopt, true};
  CHECK(mmr_surface(zero).describe() == "Range(2,4)");
  CHECK(mmr_surface(zero).certificate.theorem == TheoremId::DegreeZeroRange);
  CHECK(code_of([] { mmr_surface(inv(2, 2, T2, G2)); }) == ErrorCode::KneserViolated);
  MapInvariants missing{G2, T2, AbsoluteDegree::undefined(), IndexResult::finite(1), std::nullopt, true};
  CHECK(code_of([&] { mmr_surface(missing); }) == ErrorCode::MissingInvariant);
  MapInvariants no_index{T2, T2, AbsoluteDegree::known(2), IndexResult::exceeds_bound(), std::nullopt, true};
  CHECK(code_of([&] { mmr_surface(no_index); }) == ErrorCode::MissingInvariant);
}

TEST_CASE("case splits") {
  const Surface kb = Surface::klein_bottle();
  MapInvariants split{kb, T2, AbsoluteDegree::case_split(), IndexResult::finite(1), std::nullopt, false};
  auto r = mmr_surface(split);
  REQUIRE(r.kind == MmrResult::Kind::Cases);
  CHECK(r.describe() == "Cases[A=0: Range(2,4); A=l: Exact(1)]");
  // A = l = 1 from a Klein bottle: 1*0 = 0 = chi(source).
  CHECK(r.branch(1).certificate.theorem == TheoremId::CoveringDegree);

  const Surface n3 = Surface::nonorientable_genus(3);
  MapInvariants n3_split{n3, T2, AbsoluteDegree::case_split(), IndexResult::finite(1), std::nullopt, false};
  CHECK(mmr_surface(n3_split).describe() == "Cases[A=0: Range(2,4); A=l: Exact(3)]");

  // Kneser removes the A = l branch.
  MapInvariants impossible{T2, G2, AbsoluteDegree::case_split(), IndexResult::finite(2), std::nullopt, false};
  auto only_zero = mmr_surface(impossible);
  CHECK(only_zero.describe() == "Range(2,4)");
  CHECK(only_zero.certificate.notes.size() == 1);

  MapInvariants unbounded_hyperbolic{T2, G2, AbsoluteDegree::case_split(), IndexResult::exceeds_bound(), std::nullopt,
                                     false};
  CHECK(mmr_surface(unbounded_hyperbolic, 100).describe() == "Range(2,4)");
  MapInvariants unbounded_flat{kb, T2, AbsoluteDegree::case_split(), IndexResult::exceeds_bound(), std::nullopt, false};
  CHECK(code_of([&] { mmr_surface(unbounded_flat); }) == ErrorCode::MissingInvariant);
}

TEST_CASE("witness refinement") {
  MapInvariants zero{S2, S2, AbsoluteDegree::known(0), IndexResult::finite(1), std::nullopt, true};
  const MmrResult range = mmr_surface(zero);
  CHECK(refine_with_witness(range, 2).describe() == "Exact(2)");
  CHECK(refine_with_witness(range, 3).describe() == "Range(2,3)");
  CHECK(refine_with_witness(range, 7).describe() == "Range(2,4)");
  CHECK(refine_with_witness(range, 2).certificate.notes.back() == "witness of multiplicity 2");
  const MmrResult three = mmr_surface(inv(1, 1, G2, T2));
  CHECK(code_of([&] { refine_with_witness(three, 2); }) == ErrorCode::WitnessBelowLowerBound);
  CHECK(refine_with_witness(three, 5).describe() == "Exact(3)");
  CHECK(code_of([&] { refine_with_witness(range, 1); }) == ErrorCode::WitnessBelowLowerBound);

  const Surface n3 = Surface::nonorientable_genus(3);
  MapInvariants split{n3, T2, AbsoluteDegree::case_split(), IndexResult::finite(1), std::nullopt, false};
  const MmrResult cases = mmr_surface(split);
  CHECK(refine_with_witness(cases, 2).describe() == "Exact(2)");
  CHECK(refine_with_witness(cases, 3).describe() == "Cases[A=0: Range(2,3); A=l: Exact(3)]");
}

TEST_CASE("exhaustiveness, soundness and the {A, A+2} property") {
  Rng rng(123);
  std::vector<Surface> surfaces;
  for (int g = 0; g <= 4; ++g) surfaces.push_back(Surface::orientable_genus(g));
  for (int g = 1; g <= 5; ++g) surfaces.push_back(Surface::nonorientable_genus(g));
  int classified = 0;
  for (const auto& m : surfaces)
    for (const auto& n : surfaces)
      for (std::int64_t a = 0; a <= 6; ++a)
        for (std::int64_t l = 1; l <= 6; ++l) {
          const MapInvariants x = inv(a, l, m, n);
          if (a > 0 && a * n.euler_char() < m.euler_char()) {
            CHECK(code_of([&] { mmr_surface(x); }) == ErrorCode::KneserViolated);
            continue;
          }
          const MmrResult r = mmr_surface(x);
          ++classified;
          CHECK(r.certificate.hypothesis_holds());
          if (a == 0) {
            CHECK(r.lo == 2);
            CHECK(r.hi == 4);
          } else {
            REQUIRE(r.is_exact());
            CHECK((r.lo == a || r.lo == a + 2));
          }
          for (std::int64_t w = 1; w <= 8; ++w) {
            try {
              const MmrResult t = refine_with_witness(r, w);
              CHECK(t.lo == r.lo);
              CHECK(t.hi <= r.hi);
              CHECK(t.hi <= std::max(w, r.lo));
            } catch (const Error& e) {
              CHECK(e.code() == ErrorCode::WitnessBelowLowerBound);
              CHECK(w < r.lo);
            }
          }
        }
  CHECK(classified > 1000);
}

TEST_CASE("classify_map end to end") {
  CHECK(classify_map(MapDescription{TorusLinear{{{2, 0}, {0, 1}}}}).describe() == "Exact(2)");
  CHECK(classify_map(MapDescription{Pinch{G2, SubsurfaceSpec{true, 1}}}).describe() == "Exact(3)");
  CHECK(classify_map(MapDescription{Pinch{T2, SubsurfaceSpec{true, 1}}}).describe() == "Exact(3)");
  CHECK(classify_map(MapDescription{TorusLinear{{{1, 2}, {2, 4}}}}).describe() == "Range(2,4)");
  // Degree 3 self-cover of the torus: l = A = 3 but A*0 = 0, so Exact(3).
  CHECK(classify_map(MapDescription{TorusLinear{{{3, 0}, {0, 1}}}}).describe() == "Exact(3)");
  BranchedCovering b{S2, 2, {}, {}};
  for (int i = 0; i < 2; ++i) b.branch_points.push_back({{2}, Permutation::parse_cycles("(1 2)", 2)});
  CHECK(classify_map(MapDescription{b}).describe() == "Exact(2)");
}
