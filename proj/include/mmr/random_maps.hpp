#pragma once

// Seeded generators of valid map descriptions for audits and tests.

#include "mmr/map_model.hpp"

#include <random>

namespace mmr {

using Rng = std::mt19937_64;

Permutation random_permutation(int degree, Rng& rng);

/// A uniformly chosen valid branched covering of `target` with 2..max_sheets
/// sheets and 0..max_branch_points branch points (sphere targets always get
/// at least two). Rejection sampling over monodromy tuples.
BranchedCovering random_branched_covering(const Surface& target, int max_sheets, int max_branch_points, Rng& rng);

/// A random transitive covering of `target` with exactly `sheets` sheets.
Covering random_covering(const Surface& target, int sheets, Rng& rng);

TorusLinear random_torus_linear(int max_entry, Rng& rng);

}  // namespace mmr
