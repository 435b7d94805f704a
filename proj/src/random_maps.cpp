#include "mmr/random_maps.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <numeric>

namespace mmr {

Permutation random_permutation(int degree, Rng& rng) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

BranchedCovering random_branched_covering(const Surface& target, int max_sheets, int max_branch_points, Rng& rng) {
  if (max_sheets < 2) throw Error(ErrorCode::OutOfRange, "need at least two sheets");
  const int min_points = target.is_sphere() ? 2 : 0;
  if (max_branch_points < min_points) throw Error(ErrorCode::OutOfRange, "too few branch points for the sphere");
  std::uniform_int_distribution<int> sheets_dist(2, max_sheets);
  std::uniform_int_distribution<int> points_dist(min_points, max_branch_points);
  const Word relator = canonical_presentation(target).relator;
  while (true) {
    BranchedCovering b;
    b.target = target;
    b.sheets = sheets_dist(rng);
    const int points = points_dist(rng);
    for (int g = 0; g < target.generator_count(); ++g) b.handle_monodromy.push_back(random_permutation(b.sheets, rng));
    Permutation total = PermutationRep{b.sheets, b.handle_monodromy}.evaluate(relator);
    std::vector<Permutation> loops;
    for (int i = 0; i + 1 < points; ++i) {
      Permutation c = random_permutation(b.sheets, rng);
      loops.push_back(c);
      total = total.then(c);
    }
    if (points > 0) loops.push_back(total.inverse());
    else if (!total.is_identity())
      continue;
    if (std::any_of(loops.begin(), loops.end(), [](const Permutation& p) { return p.is_identity(); })) continue;
    PermutationRep all{b.sheets, b.handle_monodromy};
    for (const auto& c : loops) all.generators.push_back(c);
    if (!all.is_transitive()) continue;
    for (const auto& c : loops) b.branch_points.push_back(BranchPoint{c.cycle_type(), c});
    return b;
  }
}

Covering random_covering(const Surface& target, int sheets, Rng& rng) {
  const Word relator = canonical_presentation(target).relator;
  while (true) {
    Covering c{target, PermutationRep{sheets, {}}};
    for (int g = 0; g < target.generator_count(); ++g) c.rep.generators.push_back(random_permutation(sheets, rng));
    if (c.rep.evaluate(relator).is_identity() && c.rep.is_transitive()) return c;
  }
}

TorusLinear random_torus_linear(int max_entry, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> e(-max_entry, max_entry);
  return TorusLinear{{{e(rng), e(rng)}, {e(rng), e(rng)}}};
}

}  // namespace mmr
