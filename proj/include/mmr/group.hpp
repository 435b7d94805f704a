#pragma once

// Closed surfaces, their canonical fundamental-group presentations, and
// the free-group / surface-group word machinery built on top of them.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmr {

/// A closed connected surface. For orientable surfaces `genus` counts
/// handles; for nonorientable ones it counts crosscaps (and is >= 1).
struct Surface {
  bool orientable = true;
  int genus = 0;

  static Surface orientable_genus(int g);
  static Surface nonorientable_genus(int g);
  static Surface sphere() { return orientable_genus(0); }
  static Surface torus() { return orientable_genus(1); }
  static Surface projective_plane() { return nonorientable_genus(1); }
  static Surface klein_bottle() { return nonorientable_genus(2); }
  /// Reconstructs a surface from Euler characteristic and orientability.
  /// Throws NotASurface when no closed surface has that combination.
  static Surface from_euler(int euler, bool orientable);

  bool operator==(const Surface&) const = default;

  int euler_char() const { return orientable ? 2 - 2 * genus : 2 - genus; }
  /// Number of generators in the canonical presentation.
  int generator_count() const;
  bool is_sphere() const { return orientable && genus == 0; }
  bool is_projective_plane() const { return !orientable && genus == 1; }
  std::string describe() const;
};

int euler_char(const Surface& s);

/// One letter of a word: generator index into the canonical presentation
/// and exponent +1 or -1.
struct Letter {
  int gen = 0;
  int exp = 1;

  bool operator==(const Letter&) const = default;
  Letter inverse() const { return {gen, -exp}; }
  bool cancels(const Letter& other) const { return gen == other.gen && exp == -other.exp; }
};

/// A freely reduced word in a free group. Construction always reduces.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(int gen, int exp = 1);
  /// gen^power, for any integer power.
  static Word power(int gen, std::int64_t power);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word& rhs) const { return shortlex_compare(rhs); }
  std::strong_ordering shortlex_compare(const Word& rhs) const;

  /// Exponent sum of each generator, indexed by generator id.
  std::vector<std::int64_t> exponent_sums(int generator_count) const;
  /// Conjugate to a cyclically reduced word (drops matching ends).
  Word cyclically_reduced() const;
  /// Replaces every generator g by images[g].
  Word substitute(std::span<const Word> images) const;
  /// Drops all letters whose generator id is >= `keep_below`.
  Word erase_generators_from(int keep_below) const;

private:
  std::vector<Letter> letters_;
};

/// Freely reduces a raw letter sequence, checking every generator id is in
/// [0, generator_count). Throws UnknownGenerator otherwise.
Word free_reduce(std::span<const Letter> raw, int generator_count);

struct Presentation {
  std::vector<std::string> generators;
  Word relator;

  int generator_index(std::string_view name) const;  // -1 if absent
};

Presentation canonical_presentation(const Surface& s);

/// Generator names follow `a1,b1,...,ag,bg,b0`; inverses use `^-1`, powers
/// `^k`, the identity is written `1`.
std::string format_word(const Word& w, const Presentation& p);
Word parse_word(std::string_view text, const Presentation& p);

/// Homomorphism pi_1 -> Z/2 recording orientation-reversing loops.
struct OrientationCharacter {
  std::vector<int> values;  // one 0/1 entry per generator

  int evaluate(const Word& w) const;
  bool is_trivial() const;
};

OrientationCharacter orientation_character(const Surface& s);

/// Decides whether `w` is the identity in pi_1(s).
bool word_problem(const Surface& s, const Word& w);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// A homomorphism pi_1(domain) -> pi_1(codomain), given on the canonical
/// generators of the domain.
struct SurfaceHom {
  Surface domain;
  Surface codomain;
  std::vector<Word> images;

  Word apply(const Word& w) const { return w.substitute(images); }
};

/// Throws RelatorNotKilled (with the reduced offending word) unless the
/// domain relator maps to the identity.
void validate_hom(const SurfaceHom& h);

/// Rows index codomain generators, columns domain generators; entries are
/// exponent sums of the generator images.
IntMatrix abelianization_matrix(const SurfaceHom& h);

/// Composition `second o first`.
SurfaceHom compose(const SurfaceHom& first, const SurfaceHom& second);

/// Result of Nielsen reduction together with the elementary moves applied.
struct NielsenResult {
  std::vector<Word> generators;
  std::vector<std::string> moves;
};

/// Nielsen reduction in a free group: trivial words are dropped, and the
/// tuple is rewritten by elementary moves until no move u_i -> u_i u_j^{+-1}
/// or u_j^{+-1} u_i decreases it in shortlex order. Total length never grows.
NielsenResult nielsen_reduce(std::vector<Word> gens);

}  // namespace mmr
