#pragma once

#include "mmr/group.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mmr {

/// A permutation of {0, ..., degree-1}, acting on the right: `s * p` is
/// `p.image(s)`, and `p.then(q)` applies p first.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);
  /// Parses cycle notation with 1-based points, e.g. `(1 2)(3 4)`; `()` is
  /// the identity.
  static Permutation parse_cycles(std::string_view text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int image(int point) const { return images_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;
  /// Cycle lengths in non-increasing order, fixed points included.
  std::vector<int> cycle_type() const;
  int cycle_count() const { return static_cast<int>(cycle_type().size()); }
  /// Index of the cycle containing each point (cycles numbered by least point).
  std::vector<int> cycle_ids() const;
  std::string to_cycles() const;

  bool operator==(const Permutation&) const = default;

private:
  std::vector<int> images_;
};

/// One permutation per generator of a (free or surface) group.
struct PermutationRep {
  int degree = 1;
  std::vector<Permutation> generators;

  /// Evaluates a word letter by letter, left to right.
  Permutation evaluate(const Word& w) const;
  bool is_transitive() const;
};

bool is_transitive(const std::vector<Permutation>& gens, int degree);

/// Parses `2+1+1` into {2,1,1} (sorted non-increasing).
std::vector<int> parse_partition(std::string_view text);
std::string format_partition(const std::vector<int>& parts);

}  // namespace mmr
