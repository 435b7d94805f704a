#include "mmr/witness.hpp"

#include "mmr/coset.hpp"
#include "mmr/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mmr {

namespace {

Witness with_description(SimplicialMap map, MapDescription d) {
  const Surface measured = validate_triangulation(map.source);
  const SourceSurfaceReport claimed = validate_map(d);
  if (!(measured == claimed.source))
    throw Error(ErrorCode::InconsistentInvariants,
                "triangulated source is " + measured.describe() + ", description says " + claimed.source.describe());
  MapInvariants inv = compute_invariants(d);
  return Witness{std::move(map), std::move(d), std::move(inv)};
}

// Lifts a target whose edges carry sheet permutations. `excluded` vertices
// are branch points: their open stars are replaced by one cone per cycle of
// the monodromy around them.
SimplicialMap lift(const TriangulatedSurface& target, int sheets, const std::map<std::pair<int, int>, Permutation>& edge_perm,
                   const std::vector<int>& excluded) {
  const std::set<int> branch(excluded.begin(), excluded.end());
  auto sheet_after = [&](int from, int to, int s) { return edge_perm.at({from, to}).image(s); };
  SimplicialMap g;
  g.target = target;
  auto lifted = [&](int v, int s) { return v * sheets + s; };
  int next = target.vertex_count * sheets;
  g.vertex_images.resize(static_cast<std::size_t>(next));
  for (int v = 0; v < target.vertex_count; ++v)
    for (int s = 0; s < sheets; ++s) g.vertex_images[static_cast<std::size_t>(lifted(v, s))] = v;

  for (const auto& t : target.triangles) {
    if (branch.count(t[0]) || branch.count(t[1]) || branch.count(t[2])) continue;
    for (int s = 0; s < sheets; ++s) {
      const int s1 = sheet_after(t[0], t[1], s);
      const int s2 = sheet_after(t[1], t[2], s1);
      if (sheet_after(t[2], t[0], s2) != s)
        throw Error(ErrorCode::RelatorNotKilled, "monodromy around a triangle is not trivial");
      g.source.triangles.push_back({lifted(t[0], s), lifted(t[1], s1), lifted(t[2], s2)});
    }
  }
  for (int b : excluded) {
    const auto link = vertex_link(target, b);
    const int k = static_cast<int>(link.size());
    std::vector<bool> seen(static_cast<std::size_t>(sheets), false);
    for (int s0 = 0; s0 < sheets; ++s0) {
      if (seen[static_cast<std::size_t>(s0)]) continue;
      const int cone = next++;
      g.vertex_images.push_back(b);
      int s = s0;
      do {
        seen[static_cast<std::size_t>(s)] = true;
        for (int i = 0; i < k; ++i) {
          const int u = link[static_cast<std::size_t>(i)];
          const int w = link[static_cast<std::size_t>((i + 1) % k)];
          const int t = sheet_after(u, w, s);
          g.source.triangles.push_back({cone, lifted(u, s), lifted(w, t)});
          s = t;
        }
      } while (s != s0);
    }
  }
  // Drop the unused lifts of branch vertices by renumbering.
  std::vector<int> used(static_cast<std::size_t>(next), -1);
  int count = 0;
  for (auto& t : g.source.triangles)
    for (int& v : t) {
      if (used[static_cast<std::size_t>(v)] < 0) used[static_cast<std::size_t>(v)] = count++;
    }
  std::vector<int> images(static_cast<std::size_t>(count));
  for (int v = 0; v < next; ++v)
    if (used[static_cast<std::size_t>(v)] >= 0)
      images[static_cast<std::size_t>(used[static_cast<std::size_t>(v)])] = g.vertex_images[static_cast<std::size_t>(v)];
  for (auto& t : g.source.triangles)
    for (int& v : t) v = used[static_cast<std::size_t>(v)];
  g.source.vertex_count = count;
  g.vertex_images = std::move(images);
  return g;
}

}  // namespace

Witness build_cover_witness(const MarkedTriangulation& n, const PermutationRep& rep) {
  if (static_cast<int>(rep.generators.size()) != n.surface.generator_count())
    throw Error(ErrorCode::PreconditionViolated, "need one permutation per generator of " + n.surface.describe());
  if (!rep.is_transitive()) throw Error(ErrorCode::NonTransitiveMonodromy, "monodromy is not transitive");
  std::map<std::pair<int, int>, Permutation> edge_perm;
  for (const auto& [e, w] : n.edge_words) edge_perm.emplace(e, rep.evaluate(w));
  SimplicialMap g = lift(n.tri, rep.degree, edge_perm, {});
  return with_description(std::move(g), MapDescription{Covering{n.surface, rep}});
}

Witness build_pinch_witness(const Surface& source, const SubsurfaceSpec& pinched) {
  if (pinched.is_disk()) throw Error(ErrorCode::DiskPinch, "pinching a disk is homotopic to a homeomorphism");
  if (!pinched.orientable)
    throw Error(ErrorCode::Unsupported, "the three-sheet template exists for orientable pinched pieces only");
  const MapDescription desc{Pinch{source, pinched}};
  const Surface target = validate_map(desc).target;

  const Piece rest = target.orientable ? handle_piece() : crosscap_piece();
  std::vector<Piece> src_pieces(static_cast<std::size_t>(target.genus), rest);
  std::vector<Piece> tgt_pieces = src_pieces;
  for (int i = 0; i < pinched.genus; ++i) {
    src_pieces.push_back(handle_piece());
    tgt_pieces.push_back(disk_piece());
  }
  const Assembly src = assemble(src_pieces);
  const Assembly tgt = assemble(tgt_pieces);
  const auto fold = handle_to_disk();

  SimplicialMap g{src.surface, tgt.surface, {}};
  g.vertex_images.resize(static_cast<std::size_t>(src.surface.vertex_count));
  std::iota(g.vertex_images.begin(), g.vertex_images.end(), 0);
  for (std::size_t i = 0; i < src_pieces.size(); ++i) {
    const bool folded = static_cast<int>(i) >= target.genus;
    const auto& from = src.piece_vertices[i];
    const auto& to = tgt.piece_vertices[i];
    for (std::size_t l = 0; l < from.size(); ++l)
      g.vertex_images[static_cast<std::size_t>(from[l])] = to[folded ? static_cast<std::size_t>(fold[l]) : l];
  }
  return with_description(std::move(g), desc);
}

Witness build_sphere_fold_witness(const TriangulatedSurface& target) {
  const Surface n = validate_triangulation(target);
  const auto link = vertex_link(target, 0);
  const int k = static_cast<int>(link.size());
  SimplicialMap g{bipyramid(k), target, link};
  g.vertex_images.push_back(0);
  g.vertex_images.push_back(0);

  const Surface sphere = Surface::sphere();
  MapInvariants inv{sphere, n, AbsoluteDegree::known(0), subgroup_index(n, std::span<const Word>{}), std::nullopt, true};
  if (n.orientable) inv.signed_degree = 0;
  std::optional<MapDescription> desc;
  if (n.orientable && n.genus >= 1) desc = MapDescription{HomMap{SurfaceHom{sphere, n, {}}}};
  return Witness{std::move(g), std::move(desc), std::move(inv)};
}

Witness build_power_map_witness(int d, int k) {
  if (d < 1) throw Error(ErrorCode::OutOfRange, "power map needs d >= 1");
  SimplicialMap g{bipyramid(k * d), bipyramid(k), {}};
  for (int i = 0; i < k * d; ++i) g.vertex_images.push_back(i % k);
  g.vertex_images.push_back(k);
  g.vertex_images.push_back(k + 1);
  BranchedCovering b{Surface::sphere(), d, {}, {}};
  std::vector<int> cycle(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % d;
  const Permutation rot(cycle);
  if (d > 1) {
    b.branch_points.push_back({{d}, rot});
    b.branch_points.push_back({{d}, rot.inverse()});
  }
  return with_description(std::move(g), MapDescription{b});
}

BranchedFixture random_branched_fixture(const TriangulatedSurface& target, int sheets, int branch_count, Rng& rng) {
  if (sheets < 1) throw Error(ErrorCode::OutOfRange, "need at least one sheet");
  if (branch_count < 1) throw Error(ErrorCode::PreconditionViolated, "need at least one branch vertex");
  std::vector<int> order(static_cast<std::size_t>(target.vertex_count));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<Edge> edge_set;
  for (const auto& e : target.edges()) edge_set.insert(e);
  std::vector<int> branch;
  for (int v : order) {
    if (static_cast<int>(branch.size()) == branch_count) break;
    if (std::none_of(branch.begin(), branch.end(), [&](int b) { return edge_set.count(make_edge(b, v)) > 0; }))
      branch.push_back(v);
  }
  if (static_cast<int>(branch.size()) != branch_count)
    throw Error(ErrorCode::OutOfRange, "not enough pairwise non-adjacent vertices");
  const std::set<int> excluded(branch.begin(), branch.end());

  // Collapse the complement of the branch stars onto a graph. The edge
  // removed with each triangle gets its permutation from the other two.
  std::vector<Triangle> live;
  for (const auto& t : target.triangles)
    if (!excluded.count(t[0]) && !excluded.count(t[1]) && !excluded.count(t[2])) live.push_back(t);
  std::set<Edge> graph;
  for (const auto& e : edge_set)
    if (!excluded.count(e.first) && !excluded.count(e.second)) graph.insert(e);
  std::vector<std::pair<Triangle, Edge>> collapses;
  std::vector<bool> alive(live.size(), true);
  for (std::size_t remaining = live.size(); remaining > 0;) {
    std::map<Edge, int> uses;
    for (std::size_t i = 0; i < live.size(); ++i)
      if (alive[i])
        for (int k = 0; k < 3; ++k) ++uses[make_edge(live[i][k], live[i][(k + 1) % 3])];
    bool progressed = false;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (!alive[i]) continue;
      for (int k = 0; k < 3; ++k) {
        const Edge e = make_edge(live[i][k], live[i][(k + 1) % 3]);
        if (uses[e] != 1) continue;
        collapses.push_back({live[i], e});
        graph.erase(e);
        alive[i] = false;
        --remaining;
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed) throw Error(ErrorCode::PreconditionViolated, "complement does not collapse");
  }

  // Spanning tree of the remaining graph gets identity permutations.
  std::map<std::pair<int, int>, Permutation> perm;
  auto set_perm = [&](int u, int w, const Permutation& p) {
    perm[{u, w}] = p;
    perm[{w, u}] = p.inverse();
  };
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw Error(ErrorCode::NonTransitiveMonodromy, "no transitive monodromy found");
    perm.clear();
    std::vector<int> parent(static_cast<std::size_t>(target.vertex_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    std::vector<Permutation> free_gens;
    for (const auto& [u, w] : graph) {
      if (root(u) != root(w)) {
        parent[static_cast<std::size_t>(root(u))] = root(w);
        set_perm(u, w, Permutation::identity(sheets));
      } else {
        free_gens.push_back(random_permutation(sheets, rng));
        set_perm(u, w, free_gens.back());
      }
    }
    if (!is_transitive(free_gens, sheets)) continue;
    for (auto it = collapses.rbegin(); it != collapses.rend(); ++it) {
      const Triangle& t = it->first;
      for (int k = 0; k < 3; ++k) {
        const int a = t[k], b = t[(k + 1) % 3], c = t[(k + 2) % 3];
        if (make_edge(a, b) != it->second) continue;
        // Going a -> b must equal going a -> c -> b.
        set_perm(a, b, perm.at({a, c}).then(perm.at({c, b})));
      }
    }
    break;
  }
  SimplicialMap g = lift(target, sheets, perm, branch);
  return BranchedFixture{std::move(g), sheets, branch};
}

}  // namespace mmr
