#pragma once

// Combinatorial descriptions of maps between closed surfaces and the
// homotopy invariants computed from them.

#include "mmr/coset.hpp"
#include "mmr/group.hpp"
#include "mmr/permutation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mmr {

/// A compact subsurface with one boundary circle, described by the closed
/// surface obtained by capping the boundary with a disk.
struct SubsurfaceSpec {
  bool orientable = true;
  int genus = 1;

  Surface closed_up() const {
    return orientable ? Surface::orientable_genus(genus) : Surface::nonorientable_genus(genus);
  }
  int euler_char() const { return closed_up().euler_char() - 1; }
  bool is_disk() const { return orientable && genus == 0; }
  bool operator==(const SubsurfaceSpec&) const = default;
};

struct Covering {
  Surface target;
  PermutationRep rep;  // one permutation per canonical generator of target
};

struct BranchPoint {
  std::vector<int> partition;  // non-increasing
  Permutation monodromy;
};

/// Monodromy on the free group of the target punctured at the branch
/// points: canonical generators first, then one loop per branch point.
/// Valid data satisfies relator * c_1 * ... * c_r = 1.
struct BranchedCovering {
  Surface target;
  int sheets = 1;
  std::vector<Permutation> handle_monodromy;
  std::vector<BranchPoint> branch_points;
};

/// Collapse of a one-boundary subsurface of `source` to a point. The
/// pinched part is taken to be the last-indexed handles (and crosscap
/// pair) of the canonical presentation.
struct Pinch {
  Surface source;
  SubsurfaceSpec pinched;
};

/// The torus self-map induced by an integer 2x2 matrix acting on H_1.
struct TorusLinear {
  IntMatrix matrix;
};

struct HomMap {
  SurfaceHom hom;
};

struct MapDescription;

/// `second o first`.
struct Composition {
  std::shared_ptr<const MapDescription> first;
  std::shared_ptr<const MapDescription> second;
};

struct MapDescription {
  std::variant<Covering, BranchedCovering, Pinch, TorusLinear, HomMap, Composition> value;
};

MapDescription compose_maps(MapDescription first, MapDescription second);

struct SourceSurfaceReport {
  Surface source;
  Surface target;
};

/// Checks the description and reconstructs source and target surfaces.
SourceSurfaceReport validate_map(const MapDescription& m);

/// A(f): a single value, the split {0, l(f)} for maps that are not
/// orientation-true, or undefined.
struct AbsoluteDegree {
  enum class Kind { Known, CaseSplit, Undefined };
  Kind kind = Kind::Undefined;
  std::int64_t value = 0;

  static AbsoluteDegree known(std::int64_t v) { return {Kind::Known, v}; }
  static AbsoluteDegree case_split() { return {Kind::CaseSplit, 0}; }
  static AbsoluteDegree undefined() { return {Kind::Undefined, 0}; }
  bool is_known() const { return kind == Kind::Known; }
  bool operator==(const AbsoluteDegree&) const = default;
  std::string describe() const;
};

AbsoluteDegree absolute_degree(const MapDescription& m, int max_cosets = kDefaultMaxCosets);
IndexResult index_of_image(const MapDescription& m, int max_cosets = kDefaultMaxCosets);
std::optional<bool> orientation_true(const MapDescription& m);
std::optional<SurfaceHom> induced_hom(const MapDescription& m);

/// Generators of the image subgroup f_#(pi_1 source), as target words.
std::optional<std::vector<Word>> image_generators(const MapDescription& m);

/// Standard intersection form on H_1 of an orientable surface.
IntMatrix symplectic_form(int genus);

/// The integer d with Q J_M Q^T = d J_N, for a hom between orientable
/// surfaces with target genus >= 1. Throws NoConsistentDegree.
std::int64_t degree_from_form(const SurfaceHom& h);

struct MapInvariants {
  Surface source;
  Surface target;
  AbsoluteDegree absolute_degree;
  IndexResult index;
  std::optional<std::int64_t> signed_degree;
  std::optional<bool> orientation_true;
};

/// Throws InconsistentInvariants when A > 0 violates A = l (maps that are
/// not orientation-true) or A chi(target) >= chi(source).
void check_invariants(const MapInvariants& inv);

MapInvariants compute_invariants(const MapDescription& m, int max_cosets = kDefaultMaxCosets);

}  // namespace mmr
