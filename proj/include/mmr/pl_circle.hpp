#pragma once

// Piecewise-linear self-maps of the circle R/Z.

#include <cstdint>
#include <vector>

namespace mmr {

/// The source circle is split into n = lifts.size() - 1 equal edges; vertex
/// i goes to lifts[i] / m, linearly in between.
struct PLCircleMap {
  int m = 1;
  std::vector<std::int64_t> lifts;

  int edges() const { return static_cast<int>(lifts.size()) - 1; }
};

/// Throws OutOfRange unless m >= 1, n >= 1, the endpoint difference is a
/// multiple of m and no edge is constant.
void validate_circle_map(const PLCircleMap& f);

std::int64_t pl_circle_degree(const PLCircleMap& f);

/// Largest number of solutions of f(t) = y over y in [0, 1).
std::int64_t pl_circle_multiplicity(const PLCircleMap& f);

/// Least multiplicity over all maps of degree `deg` with at most `n_max`
/// edges and lifts on the (1/m)-grid inside the window
/// [min(0, deg) - margin, max(0, deg) + margin]. Throws InfeasibleBudget
/// when |deg| > n_max - 1.
std::int64_t brute_force_circle_mmr(std::int64_t deg, int n_max, int m, int margin = 1);

}  // namespace mmr
