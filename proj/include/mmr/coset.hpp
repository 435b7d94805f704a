#pragma once

// Todd-Coxeter coset enumeration over canonical surface-group presentations.

#include "mmr/group.hpp"
#include "mmr/permutation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmr {

inline constexpr int kDefaultMaxCosets = 10000;

/// Action of the generators on the right cosets of a subgroup. Cosets are
/// numbered from 0 here (coset 0 is the subgroup itself); the text format
/// numbers them from 1. Column 2g is generator g, column 2g+1 its inverse.
struct CosetTable {
  enum class Status { Complete, ExceededBound };

  int generator_count = 0;
  std::vector<std::vector<int>> rows;  // -1 = undefined
  Status status = Status::Complete;

  bool complete() const { return status == Status::Complete; }
  int index() const { return static_cast<int>(rows.size()); }
  int act(int coset, const Letter& l) const {
    return rows[static_cast<std::size_t>(coset)][static_cast<std::size_t>(2 * l.gen + (l.exp < 0 ? 1 : 0))];
  }
  int trace(int coset, const Word& w) const;

  /// `cosets K generators N` header, then one row per coset with 1-based
  /// entries in column order g1 g1^-1 g2 g2^-1 ...; `-` marks undefined.
  std::string to_text() const;
  static CosetTable from_text(const std::string& text);

  bool operator==(const CosetTable&) const = default;
};

/// Finite(k) when `index` is set, ExceedsBound otherwise. ExceedsBound means
/// the enumeration did not close within the bound; it is not a proof that
/// the index is infinite.
struct IndexResult {
  std::optional<std::int64_t> index;

  static IndexResult finite(std::int64_t k) { return IndexResult{k}; }
  static IndexResult exceeds_bound() { return IndexResult{std::nullopt}; }
  bool is_finite() const { return index.has_value(); }
  bool operator==(const IndexResult&) const = default;
  std::string describe() const;
};

/// HLT enumeration with immediate coincidence processing over an arbitrary
/// presentation. The returned table is standardized (breadth-first order,
/// columns in generator order) so equal subgroups give identical tables.
CosetTable enumerate_cosets(int generator_count, std::span<const Word> relators,
                            std::span<const Word> subgroup, int max_cosets = kDefaultMaxCosets);

CosetTable enumerate_cosets(const Surface& n, std::span<const Word> subgroup,
                            int max_cosets = kDefaultMaxCosets);

/// Index of the subgroup generated by `gens` in pi_1(n). Sphere, projective
/// plane and torus are answered from the abelian structure directly.
IndexResult subgroup_index(const Surface& n, std::span<const Word> gens, int max_cosets = kDefaultMaxCosets);

/// Index of a subgroup of Z^2 spanned by integer vectors (0 if infinite):
/// the gcd of all 2x2 minors.
std::int64_t lattice_index(std::span<const std::vector<std::int64_t>> vectors);

PermutationRep permutation_rep(const CosetTable& t);

/// Schreier generators for a breadth-first transversal; trivial ones are
/// dropped. Each returned word fixes coset 0.
std::vector<Word> schreier_generators(const CosetTable& t);

/// The covering surface of `n` belonging to the subgroup of `t`.
Surface cover_surface(const Surface& n, const CosetTable& t);

/// Standardized coset table of the point stabilizer of `basepoint`.
/// Throws NonTransitiveMonodromy if the action is not transitive.
CosetTable table_from_rep(const PermutationRep& rep, int basepoint = 0);

/// Every subgroup of pi_1(n) of index <= max_index, as standardized tables,
/// by exhaustive search over transitive permutation representations.
/// Intended for small cases (tests and fixtures).
std::vector<CosetTable> low_index_tables(const Surface& n, int max_index);

}  // namespace mmr
