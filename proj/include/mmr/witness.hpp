#pragma once

// Simplicial representatives of the homotopy classes the classifier handles.

#include "mmr/fixtures.hpp"
#include "mmr/map_model.hpp"
#include "mmr/random_maps.hpp"
#include "mmr/simplicial.hpp"

#include <optional>

namespace mmr {

struct Witness {
  SimplicialMap map;
  std::optional<MapDescription> description;
  std::optional<MapInvariants> invariants;
};

/// Pullback of `n` along the covering with monodromy `rep` on the canonical
/// generators. Throws RelatorNotKilled when a triangle loop of `n` does not
/// act trivially, NonTransitiveMonodromy for disconnected covers.
Witness build_cover_witness(const MarkedTriangulation& n, const PermutationRep& rep);

/// Identity outside the pinched handles, the three-sheet handle-to-disk
/// template on each of them. Throws DiskPinch; nonorientable pinched pieces
/// are Unsupported.
Witness build_pinch_witness(const Surface& source, const SubsurfaceSpec& pinched);

/// A sphere whose two hemispheres fold onto the star of vertex 0.
Witness build_sphere_fold_witness(const TriangulatedSurface& target);

/// z -> z^d between bipyramids over equators of length k*d and k.
Witness build_power_map_witness(int d, int k = 3);

struct BranchedFixture {
  SimplicialMap map;
  int sheets = 1;
  std::vector<int> branch_vertices;  // target vertices
};

/// A random connected `sheets`-fold simplicial branched cover of `target`,
/// branched over `branch_count >= 1` pairwise non-adjacent vertices.
BranchedFixture random_branched_fixture(const TriangulatedSurface& target, int sheets, int branch_count, Rng& rng);

}  // namespace mmr
