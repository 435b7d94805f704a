#include "mmr/map_model.hpp"

#include "mmr/error.hpp"

#include <cstdlib>
#include <numeric>

namespace mmr {

namespace {

int a_gen(int j) { return 2 * (j - 1); }
int b_gen(int j) { return 2 * (j - 1) + 1; }

Word gen(int g) { return Word::generator(g); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_rep_shape(const PermutationRep& rep, int generators, int degree) {
  if (degree < 1) throw Error(ErrorCode::OutOfRange, "sheet count must be positive");
  if (static_cast<int>(rep.generators.size()) != generators)
    throw Error(ErrorCode::MalformedWord, "expected " + std::to_string(generators) + " monodromy permutations, got " +
                                              std::to_string(rep.generators.size()));
  for (const auto& p : rep.generators)
    if (p.degree() != degree)
      throw Error(ErrorCode::MalformedWord, "monodromy permutation of degree " + std::to_string(p.degree()) +
                                                " for " + std::to_string(degree) + " sheets");
}

PermutationRep extended_rep(const BranchedCovering& b) {
  PermutationRep rep{b.sheets, b.handle_monodromy};
  for (const auto& bp : b.branch_points) rep.generators.push_back(bp.monodromy);
  return rep;
}

Surface validate_covering(const Covering& c) {
  check_rep_shape(c.rep, c.target.generator_count(), c.rep.degree);
  if (!c.rep.evaluate(canonical_presentation(c.target).relator).is_identity())
    throw Error(ErrorCode::RelationViolated, "relator does not act trivially");
  return cover_surface(c.target, table_from_rep(c.rep));
}

Surface validate_branched(const BranchedCovering& b) {
  const int n = b.target.generator_count();
  const PermutationRep rep = extended_rep(b);
  check_rep_shape(PermutationRep{b.sheets, b.handle_monodromy}, n, b.sheets);
  check_rep_shape(rep, n + static_cast<int>(b.branch_points.size()), b.sheets);
  int defect = 0;
  for (std::size_t i = 0; i < b.branch_points.size(); ++i) {
    const auto& bp = b.branch_points[i];
    const std::string where = "branch point " + std::to_string(i + 1);
    if (std::accumulate(bp.partition.begin(), bp.partition.end(), 0) != b.sheets)
      throw Error(ErrorCode::CycleTypeMismatch, where + ": partition does not sum to the sheet count");
    if (bp.partition.empty() || bp.partition.front() < 2)
      throw Error(ErrorCode::CycleTypeMismatch, where + ": partition has no part > 1");
    if (bp.monodromy.cycle_type() != bp.partition)
      throw Error(ErrorCode::CycleTypeMismatch, where + ": monodromy " + bp.monodromy.to_cycles() +
                                                    " does not have cycle type " + format_partition(bp.partition));
    for (int part : bp.partition) defect += part - 1;
  }
  Permutation total = PermutationRep{b.sheets, b.handle_monodromy}.evaluate(canonical_presentation(b.target).relator);
  for (const auto& bp : b.branch_points) total = total.then(bp.monodromy);
  if (!total.is_identity())
    throw Error(ErrorCode::RelationViolated, "relator times branch loops acts as " + total.to_cycles());
  const CosetTable table = table_from_rep(rep);

  bool orientable = b.target.orientable;
  if (!orientable) {
    OrientationCharacter w1 = orientation_character(b.target);
    w1.values.resize(static_cast<std::size_t>(rep.generators.size()), 0);
    orientable = true;
    for (const auto& s : schreier_generators(table))
      if (w1.evaluate(s) != 0) orientable = false;
  }
  return Surface::from_euler(b.sheets * b.target.euler_char() - defect, orientable);
}

// Target surface and quotient hom of a pinch, in the normal form that
// collapses the last-indexed handles.
SurfaceHom pinch_hom(const Pinch& p) {
  const Surface& m = p.source;
  const SubsurfaceSpec& s = p.pinched;
  const int g = m.genus;
  const int h = s.genus;
  if (s.is_disk()) throw Error(ErrorCode::DiskPinch, "the pinched subsurface is a disk");
  if (h < 0 || (!s.orientable && h < 1)) throw Error(ErrorCode::NotASurface, "invalid subsurface genus");
  auto too_big = [&] {
    return Error(ErrorCode::NotASurface, "a one-boundary " + s.closed_up().describe() + " piece does not fit in " +
                                             m.describe());
  };
  SurfaceHom hom{m, m, std::vector<Word>(static_cast<std::size_t>(m.generator_count()))};
  auto keep_handles = [&](int upto) {
    for (int j = 1; j <= upto; ++j) {
      hom.images[static_cast<std::size_t>(a_gen(j))] = gen(a_gen(j));
      hom.images[static_cast<std::size_t>(b_gen(j))] = gen(b_gen(j));
    }
  };

  if (m.orientable) {
    if (!s.orientable)
      throw Error(ErrorCode::NotASurface, "an orientable surface has no nonorientable subsurface");
    if (h > g) throw too_big();
    hom.codomain = Surface::orientable_genus(g - h);
    keep_handles(g - h);
    return hom;
  }

  const bool odd = g % 2 == 1;
  const int r = odd ? (g - 1) / 2 : g / 2;
  if (s.orientable) {
    if (g - 2 * h < 1) throw too_big();
    hom.codomain = Surface::nonorientable_genus(g - 2 * h);
    if (odd) {
      keep_handles(r - h);
      hom.images[static_cast<std::size_t>(2 * r)] = gen(2 * (r - h));
    } else {
      const int rt = r - h;
      keep_handles(rt - 1);
      hom.images[static_cast<std::size_t>(a_gen(r))] = gen(a_gen(rt));
      hom.images[static_cast<std::size_t>(b_gen(r))] = gen(b_gen(rt));
    }
    return hom;
  }

  if (h > g) throw too_big();
  const int k = h / 2;
  if (odd) {
    if (h % 2 == 1) {
      hom.codomain = Surface::orientable_genus(r - k);
      keep_handles(r - k);
    } else {
      hom.codomain = Surface::nonorientable_genus(g - h);
      keep_handles(r - k);
      const Word b0 = gen(2 * (r - k));
      for (int j = r - k + 1; j <= r; ++j) hom.images[static_cast<std::size_t>(a_gen(j))] = b0;
      hom.images[static_cast<std::size_t>(2 * r)] = b0;
    }
  } else {
    if (h % 2 == 0) {
      hom.codomain = Surface::orientable_genus(r - k);
      keep_handles(r - k);
    } else {
      hom.codomain = Surface::nonorientable_genus(g - h);
      keep_handles(r - k - 1);
      const Word b0 = gen(2 * (r - k - 1));
      hom.images[static_cast<std::size_t>(a_gen(r))] = b0;
      hom.images[static_cast<std::size_t>(b_gen(r))] = b0;
    }
  }
  return hom;
}

SurfaceHom torus_hom(const TorusLinear& t) {
  const auto& q = t.matrix;
  if (q.size() != 2 || q[0].size() != 2 || q[1].size() != 2)
    throw Error(ErrorCode::OutOfRange, "torus-linear maps need a 2x2 matrix");
  const Surface torus = Surface::torus();
  return SurfaceHom{torus,
                    torus,
                    {Word::power(0, q[0][0]) * Word::power(1, q[1][0]), Word::power(0, q[0][1]) * Word::power(1, q[1][1])}};
}

std::int64_t det2(const IntMatrix& q) { return q[0][0] * q[1][1] - q[0][1] * q[1][0]; }

bool is_covering(const MapDescription& m) { return std::holds_alternative<Covering>(m.value); }

bool hom_orientation_true(const SurfaceHom& h) {
  const auto ws = orientation_character(h.domain);
  const auto wt = orientation_character(h.codomain);
  for (std::size_t g = 0; g < h.images.size(); ++g)
    if (ws.values[g] != wt.evaluate(h.images[g])) return false;
  return true;
}

std::optional<std::int64_t> signed_degree(const MapDescription& m, const SourceSurfaceReport& ends) {
  if (!ends.source.orientable || !ends.target.orientable) return std::nullopt;
  return std::visit(Overloaded{
                        [](const Covering& c) -> std::optional<std::int64_t> { return c.rep.degree; },
                        [](const BranchedCovering& b) -> std::optional<std::int64_t> { return b.sheets; },
                        [](const Pinch&) -> std::optional<std::int64_t> { return 1; },
                        [](const TorusLinear& t) -> std::optional<std::int64_t> { return det2(t.matrix); },
                        [](const HomMap& h) -> std::optional<std::int64_t> {
                          if (h.hom.codomain.genus == 0) return std::nullopt;
                          return degree_from_form(h.hom);
                        },
                        [](const Composition& c) -> std::optional<std::int64_t> {
                          const auto e1 = validate_map(*c.first);
                          const auto e2 = validate_map(*c.second);
                          auto d1 = signed_degree(*c.first, e1);
                          auto d2 = signed_degree(*c.second, e2);
                          if (!d1 || !d2) return std::nullopt;
                          return *d1 * *d2;
                        },
                    },
                    m.value);
}

}  // namespace

MapDescription compose_maps(MapDescription first, MapDescription second) {
  return MapDescription{Composition{std::make_shared<const MapDescription>(std::move(first)),
                                    std::make_shared<const MapDescription>(std::move(second))}};
}

SourceSurfaceReport validate_map(const MapDescription& m) {
  return std::visit(Overloaded{
                        [](const Covering& c) { return SourceSurfaceReport{validate_covering(c), c.target}; },
                        [](const BranchedCovering& b) { return SourceSurfaceReport{validate_branched(b), b.target}; },
                        [](const Pinch& p) { return SourceSurfaceReport{p.source, pinch_hom(p).codomain}; },
                        [](const TorusLinear& t) {
                          torus_hom(t);
                          return SourceSurfaceReport{Surface::torus(), Surface::torus()};
                        },
                        [](const HomMap& h) {
                          validate_hom(h.hom);
                          return SourceSurfaceReport{h.hom.domain, h.hom.codomain};
                        },
                        [](const Composition& c) {
                          const auto e1 = validate_map(*c.first);
                          const auto e2 = validate_map(*c.second);
                          if (!(e1.target == e2.source))
                            throw Error(ErrorCode::CompositionMismatch, "first map lands in " + e1.target.describe() +
                                                                            " but second starts at " +
                                                                            e2.source.describe());
                          return SourceSurfaceReport{e1.source, e2.target};
                        },
                    },
                    m.value);
}

std::string AbsoluteDegree::describe() const {
  switch (kind) {
    case Kind::Known: return std::to_string(value);
    case Kind::CaseSplit: return "{0, l}";
    case Kind::Undefined: return "undefined";
  }
  return "undefined";
}

std::optional<SurfaceHom> induced_hom(const MapDescription& m) {
  return std::visit(Overloaded{
                        [](const Covering&) -> std::optional<SurfaceHom> { return std::nullopt; },
                        [](const BranchedCovering&) -> std::optional<SurfaceHom> { return std::nullopt; },
                        [](const Pinch& p) -> std::optional<SurfaceHom> { return pinch_hom(p); },
                        [](const TorusLinear& t) -> std::optional<SurfaceHom> { return torus_hom(t); },
                        [](const HomMap& h) -> std::optional<SurfaceHom> { return h.hom; },
                        [](const Composition& c) -> std::optional<SurfaceHom> {
                          auto f = induced_hom(*c.first);
                          auto g = induced_hom(*c.second);
                          if (!f || !g) return std::nullopt;
                          return compose(*f, *g);
                        },
                    },
                    m.value);
}

std::optional<std::vector<Word>> image_generators(const MapDescription& m) {
  if (const auto* c = std::get_if<Covering>(&m.value)) return schreier_generators(table_from_rep(c->rep));
  if (const auto* b = std::get_if<BranchedCovering>(&m.value)) {
    const int n = b->target.generator_count();
    std::vector<Word> out;
    for (const auto& s : schreier_generators(table_from_rep(extended_rep(*b)))) {
      Word w = s.erase_generators_from(n);
      if (!w.empty()) out.push_back(std::move(w));
    }
    return out;
  }
  if (const auto* c = std::get_if<Composition>(&m.value)) {
    auto inner = image_generators(*c->first);
    auto outer = induced_hom(*c->second);
    if (!inner || !outer) return std::nullopt;
    std::vector<Word> out;
    for (const auto& w : *inner) out.push_back(outer->apply(w));
    return out;
  }
  auto h = induced_hom(m);
  if (!h) return std::nullopt;
  return h->images;
}

std::optional<bool> orientation_true(const MapDescription& m) {
  if (is_covering(m) || std::holds_alternative<BranchedCovering>(m.value)) return true;
  if (auto h = induced_hom(m)) return hom_orientation_true(*h);
  if (const auto* c = std::get_if<Composition>(&m.value)) {
    auto t1 = orientation_true(*c->first);
    auto t2 = orientation_true(*c->second);
    if (t1 == true && t2 == true) return true;
  }
  return std::nullopt;
}

IndexResult index_of_image(const MapDescription& m, int max_cosets) {
  const SourceSurfaceReport ends = validate_map(m);
  if (const auto* t = std::get_if<TorusLinear>(&m.value)) {
    const std::int64_t d = std::llabs(det2(t->matrix));
    return d == 0 || d > max_cosets ? IndexResult::exceeds_bound() : IndexResult::finite(d);
  }
  if (auto gens = image_generators(m)) return subgroup_index(ends.target, *gens, max_cosets);
  const auto& c = std::get<Composition>(m.value);
  if (is_covering(*c.second)) {
    // Coverings are injective on pi_1, so indices multiply.
    const IndexResult inner = index_of_image(*c.first, max_cosets);
    const IndexResult outer = index_of_image(*c.second, max_cosets);
    if (!inner.is_finite() || !outer.is_finite() || *inner.index * *outer.index > max_cosets)
      return IndexResult::exceeds_bound();
    return IndexResult::finite(*inner.index * *outer.index);
  }
  throw Error(ErrorCode::Unsupported, "image of a composition through a branched covering");
}

IntMatrix symplectic_form(int genus) {
  IntMatrix j(static_cast<std::size_t>(2 * genus), std::vector<std::int64_t>(static_cast<std::size_t>(2 * genus), 0));
  for (int k = 0; k < genus; ++k) {
    j[static_cast<std::size_t>(2 * k)][static_cast<std::size_t>(2 * k + 1)] = 1;
    j[static_cast<std::size_t>(2 * k + 1)][static_cast<std::size_t>(2 * k)] = -1;
  }
  return j;
}

std::int64_t degree_from_form(const SurfaceHom& h) {
  if (!h.domain.orientable || !h.codomain.orientable || h.codomain.genus < 1)
    throw Error(ErrorCode::PreconditionViolated, "degree form needs orientable surfaces and target genus >= 1");
  const IntMatrix q = abelianization_matrix(h);
  const IntMatrix jm = symplectic_form(h.domain.genus);
  const IntMatrix jn = symplectic_form(h.codomain.genus);
  const std::size_t rows = q.size();
  const std::size_t cols = jm.size();
  IntMatrix form(rows, std::vector<std::int64_t>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k)
      for (std::size_t a = 0; a < cols; ++a)
        for (std::size_t b = 0; b < cols; ++b) form[i][k] += q[i][a] * jm[a][b] * q[k][b];
  const std::int64_t d = form[0][1];
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k)
      if (form[i][k] != d * jn[i][k])
        throw Error(ErrorCode::NoConsistentDegree, "Q J Q^T is not a multiple of J");
  return d;
}

AbsoluteDegree absolute_degree(const MapDescription& m, int max_cosets) {
  return std::visit(
      Overloaded{
          [](const Covering& c) { return AbsoluteDegree::known(c.rep.degree); },
          [](const BranchedCovering& b) { return AbsoluteDegree::known(b.sheets); },
          [](const Pinch&) { return AbsoluteDegree::known(1); },
          [](const TorusLinear& t) { return AbsoluteDegree::known(std::llabs(det2(t.matrix))); },
          [](const HomMap& h) {
            validate_hom(h.hom);
            const Surface& n = h.hom.codomain;
            if (n.is_sphere() || n.is_projective_plane())
              throw Error(ErrorCode::UnsupportedTarget,
                          "pi_1 does not determine maps into " + n.describe() + "; give the map constructively");
            if (!hom_orientation_true(h.hom)) return AbsoluteDegree::case_split();
            if (h.hom.domain.orientable && n.orientable) return AbsoluteDegree::known(std::llabs(degree_from_form(h.hom)));
            return AbsoluteDegree::undefined();
          },
          [&](const Composition& c) {
            const AbsoluteDegree a1 = absolute_degree(*c.first, max_cosets);
            const AbsoluteDegree a2 = absolute_degree(*c.second, max_cosets);
            if (a1.is_known() && a2.is_known() && orientation_true(*c.first) == true &&
                orientation_true(*c.second) == true)
              return AbsoluteDegree::known(a1.value * a2.value);
            if (orientation_true(m) == false) return AbsoluteDegree::case_split();
            return AbsoluteDegree::undefined();
          },
      },
      m.value);
}

void check_invariants(const MapInvariants& inv) {
  if (!inv.absolute_degree.is_known() || inv.absolute_degree.value <= 0) return;
  const std::int64_t a = inv.absolute_degree.value;
  if (inv.orientation_true == false && inv.index != IndexResult::finite(a))
    throw Error(ErrorCode::InconsistentInvariants,
                "A = " + std::to_string(a) + " for a map that is not orientation-true, but l = " + inv.index.describe());
  if (a * inv.target.euler_char() < inv.source.euler_char())
    throw Error(ErrorCode::InconsistentInvariants, "A chi(target) < chi(source)");
}

MapInvariants compute_invariants(const MapDescription& m, int max_cosets) {
  const SourceSurfaceReport ends = validate_map(m);
  MapInvariants inv;
  inv.source = ends.source;
  inv.target = ends.target;
  inv.absolute_degree = absolute_degree(m, max_cosets);
  inv.index = index_of_image(m, max_cosets);
  inv.orientation_true = orientation_true(m);
  if (inv.absolute_degree.is_known()) inv.signed_degree = signed_degree(m, ends);
  check_invariants(inv);
  return inv;
}

}  // namespace mmr
