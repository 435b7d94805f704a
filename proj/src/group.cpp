#include "mmr/group.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace mmr {

// ---------------------------------------------------------------- Surface

Surface Surface::orientable_genus(int g) {
  if (g < 0) throw Error(ErrorCode::NotASurface, "negative genus");
  return Surface{true, g};
}

Surface Surface::nonorientable_genus(int g) {
  if (g < 1) throw Error(ErrorCode::NotASurface, "nonorientable genus must be >= 1");
  return Surface{false, g};
}

Surface Surface::from_euler(int euler, bool orientable) {
  if (orientable) {
    if (euler > 2 || (2 - euler) % 2 != 0)
      throw Error(ErrorCode::NotASurface,
                  "no orientable closed surface has Euler characteristic " + std::to_string(euler));
    return orientable_genus((2 - euler) / 2);
  }
  if (euler > 1)
    throw Error(ErrorCode::NotASurface,
                "no nonorientable closed surface has Euler characteristic " + std::to_string(euler));
  return nonorientable_genus(2 - euler);
}

int Surface::generator_count() const {
  return orientable ? 2 * genus : genus;
}

std::string Surface::describe() const {
  return std::string(orientable ? "orientable" : "nonorientable") + " genus " + std::to_string(genus);
}

int euler_char(const Surface& s) { return s.euler_char(); }

// ---------------------------------------------------------------- Word

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().cancels(l))
    out.pop_back();
  else
    out.push_back(l);
}

int letter_key(const Letter& l) { return 2 * l.gen + (l.exp < 0 ? 1 : 0); }

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const auto& l : letters) {
    if (l.exp != 1 && l.exp != -1) throw Error(ErrorCode::MalformedWord, "exponent must be +-1");
    push_reduced(letters_, l);
  }
}

Word Word::generator(int gen, int exp) { return Word({Letter{gen, exp}}); }

Word Word::power(int gen, std::int64_t power) {
  std::vector<Letter> ls(static_cast<std::size_t>(power < 0 ? -power : power),
                         Letter{gen, power < 0 ? -1 : 1});
  return Word(std::move(ls));
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  for (const auto& l : rhs.letters_) push_reduced(w.letters_, l);
  return w;
}

std::strong_ordering Word::shortlex_compare(const Word& rhs) const {
  if (letters_.size() != rhs.letters_.size()) return letters_.size() <=> rhs.letters_.size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    int a = letter_key(letters_[i]);
    int b = letter_key(rhs.letters_[i]);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

std::vector<std::int64_t> Word::exponent_sums(int generator_count) const {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(generator_count), 0);
  for (const auto& l : letters_) {
    if (l.gen < 0 || l.gen >= generator_count)
      throw Error(ErrorCode::UnknownGenerator, "generator id " + std::to_string(l.gen));
    sums[static_cast<std::size_t>(l.gen)] += l.exp;
  }
  return sums;
}

Word Word::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo].cancels(letters_[hi - 1])) {
    ++lo;
    --hi;
  }
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                    letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return w;
}

Word Word::substitute(std::span<const Word> images) const {
  Word out;
  for (const auto& l : letters_) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= images.size())
      throw Error(ErrorCode::UnknownGenerator, "no image for generator id " + std::to_string(l.gen));
    const Word& img = images[static_cast<std::size_t>(l.gen)];
    out = out * (l.exp > 0 ? img : img.inverse());
  }
  return out;
}

Word Word::erase_generators_from(int keep_below) const {
  std::vector<Letter> kept;
  for (const auto& l : letters_)
    if (l.gen < keep_below) kept.push_back(l);
  return Word(std::move(kept));
}

Word free_reduce(std::span<const Letter> raw, int generator_count) {
  for (const auto& l : raw)
    if (l.gen < 0 || l.gen >= generator_count)
      throw Error(ErrorCode::UnknownGenerator, "generator id " + std::to_string(l.gen));
  return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

// ---------------------------------------------------------------- Presentation

int Presentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

Word commutator(int x, int y) {
  return Word({{x, 1}, {y, 1}, {x, -1}, {y, -1}});
}

}  // namespace

Presentation canonical_presentation(const Surface& s) {
  Presentation p;
  int pairs = s.orientable ? s.genus : s.genus / 2;
  for (int j = 1; j <= pairs; ++j) {
    p.generators.push_back("a" + std::to_string(j));
    p.generators.push_back("b" + std::to_string(j));
  }
  if (s.orientable) {
    for (int j = 0; j < pairs; ++j) p.relator = p.relator * commutator(2 * j, 2 * j + 1);
  } else if (s.genus % 2 == 0) {
    for (int j = 0; j + 1 < pairs; ++j) p.relator = p.relator * commutator(2 * j, 2 * j + 1);
    int x = 2 * (pairs - 1);
    int y = x + 1;
    // twisted commutator x y x^-1 y
    p.relator = p.relator * Word({{x, 1}, {y, 1}, {x, -1}, {y, 1}});
  } else {
    for (int j = 0; j < pairs; ++j) p.relator = p.relator * commutator(2 * j, 2 * j + 1);
    p.generators.push_back("b0");
    int b0 = 2 * pairs;
    p.relator = p.relator * Word({{b0, 1}, {b0, 1}});
  }
  return p;
}

std::string format_word(const Word& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= p.generators.size())
      throw Error(ErrorCode::UnknownGenerator, "generator id " + std::to_string(l.gen));
    out += p.generators[static_cast<std::size_t>(l.gen)];
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

Word parse_word(std::string_view text, const Presentation& p) {
  std::istringstream in{std::string(text)};
  std::string token;
  Word w;
  while (in >> token) {
    if (token == "1") continue;
    std::string name = token;
    long long power = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      std::string exp = token.substr(caret + 1);
      try {
        std::size_t used = 0;
        power = std::stoll(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedWord, "bad exponent in '" + token + "'");
      }
    }
    int gen = p.generator_index(name);
    if (gen < 0) throw Error(ErrorCode::UnknownGenerator, "'" + name + "'");
    w = w * Word::power(gen, power);
  }
  return w;
}

// ---------------------------------------------------------------- orientation character

int OrientationCharacter::evaluate(const Word& w) const {
  int total = 0;
  for (const auto& l : w.letters()) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= values.size())
      throw Error(ErrorCode::UnknownGenerator, "generator id " + std::to_string(l.gen));
    total += values[static_cast<std::size_t>(l.gen)];
  }
  return total % 2;
}

bool OrientationCharacter::is_trivial() const {
  return std::all_of(values.begin(), values.end(), [](int v) { return v == 0; });
}

OrientationCharacter orientation_character(const Surface& s) {
  OrientationCharacter w1;
  w1.values.assign(static_cast<std::size_t>(s.generator_count()), 0);
  if (!s.orientable) {
    if (s.genus % 2 == 1)
      w1.values.back() = 1;  // b0
    else
      w1.values[static_cast<std::size_t>(s.genus - 2)] = 1;  // a_{g/2}
  }
  return w1;
}

// ---------------------------------------------------------------- word problem

namespace {

// Klein bottle normal form b^m a^n, using a b = b^-1 a.
bool klein_trivial(const Word& w) {
  std::int64_t m = 0;
  std::int64_t n = 0;
  for (const auto& l : w.letters()) {
    if (l.gen == 0) {
      n += l.exp;
    } else {
      std::int64_t sign = (n % 2 == 0) ? 1 : -1;
      m += sign * l.exp;
    }
  }
  return m == 0 && n == 0;
}

class DehnSolver {
public:
  explicit DehnSolver(const Word& relator) {
    for (const Word& r : {relator, relator.inverse()}) {
      const auto& ls = r.letters();
      for (std::size_t i = 0; i < ls.size(); ++i) {
        std::vector<Letter> rot(ls.begin() + static_cast<std::ptrdiff_t>(i), ls.end());
        rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(i));
        relators_.push_back(std::move(rot));
      }
    }
  }

  bool is_trivial(const Word& input) const {
    std::vector<Letter> w = input.cyclically_reduced().letters();
    while (!w.empty()) {
      if (auto shorter = shorten(w)) {
        w = *shorter;
        continue;
      }
      auto escaped = escape_plateau(w);
      if (!escaped) return false;
      w = *escaped;
    }
    return true;
  }

private:
  struct Match {
    std::size_t start;
    std::size_t relator;
    std::size_t length;
  };

  static std::vector<Letter> reduce_cyclic(const std::vector<Letter>& raw) {
    return Word(raw).cyclically_reduced().letters();
  }

  std::vector<Letter> replace(const std::vector<Letter>& w, const Match& m) const {
    const auto& r = relators_[m.relator];
    std::vector<Letter> out;
    for (std::size_t i = r.size(); i-- > m.length;) out.push_back(r[i].inverse());
    for (std::size_t i = m.length; i < w.size(); ++i) out.push_back(w[(m.start + i) % w.size()]);
    return reduce_cyclic(out);
  }

  template <typename Visit>
  void for_each_match(const std::vector<Letter>& w, Visit&& visit) const {
    const std::size_t n = w.size();
    for (std::size_t start = 0; start < n; ++start) {
      for (std::size_t ri = 0; ri < relators_.size(); ++ri) {
        const auto& r = relators_[ri];
        std::size_t limit = std::min(n, r.size());
        std::size_t k = 0;
        while (k < limit && w[(start + k) % n] == r[k]) ++k;
        if (k > 0 && !visit(Match{start, ri, k})) return;
      }
    }
  }

  // One Dehn step: replace more than half of a cyclic relator conjugate.
  std::optional<std::vector<Letter>> shorten(const std::vector<Letter>& w) const {
    std::optional<std::vector<Letter>> result;
    for_each_match(w, [&](const Match& m) {
      if (2 * m.length > relators_[m.relator].size()) {
        result = replace(w, m);
        return false;
      }
      return true;
    });
    return result;
  }

  // Words where only exactly-half matches exist: explore the finite set of
  // equal-length rewrites until a shortening appears.
  std::optional<std::vector<Letter>> escape_plateau(const std::vector<Letter>& w) const {
    constexpr std::size_t kMaxStates = 20000;
    auto canonical = [](const std::vector<Letter>& v) {
      std::vector<Letter> best = v;
      for (std::size_t i = 1; i < v.size(); ++i) {
        std::vector<Letter> rot(v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
        rot.insert(rot.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
        if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end(),
                                         [](const Letter& a, const Letter& b) {
                                           return letter_key(a) < letter_key(b);
                                         }))
          best = std::move(rot);
      }
      return best;
    };
    auto key = [](const std::vector<Letter>& v) {
      std::vector<int> k;
      k.reserve(v.size());
      for (const auto& l : v) k.push_back(letter_key(l));
      return k;
    };
    std::set<std::vector<int>> seen{key(canonical(w))};
    std::deque<std::vector<Letter>> queue{w};
    while (!queue.empty() && seen.size() < kMaxStates) {
      auto cur = std::move(queue.front());
      queue.pop_front();
      std::optional<std::vector<Letter>> found;
      for_each_match(cur, [&](const Match& m) {
        if (2 * m.length != relators_[m.relator].size()) return true;
        auto next = replace(cur, m);
        if (next.size() < cur.size()) {
          found = std::move(next);
          return false;
        }
        if (auto shorter = shorten(next)) {
          found = std::move(*shorter);
          return false;
        }
        if (seen.insert(key(canonical(next))).second) queue.push_back(std::move(next));
        return true;
      });
      if (found) return found;
    }
    return std::nullopt;
  }

  std::vector<std::vector<Letter>> relators_;
};

}  // namespace

bool word_problem(const Surface& s, const Word& w) {
  const int n = s.generator_count();
  for (const auto& l : w.letters())
    if (l.gen < 0 || l.gen >= n)
      throw Error(ErrorCode::MalformedWord, "letter outside the generators of " + s.describe());
  if (s.is_sphere()) return true;
  if (s.is_projective_plane()) return w.exponent_sums(n)[0] % 2 == 0;
  if (s.orientable && s.genus == 1) {
    auto sums = w.exponent_sums(n);
    return sums[0] == 0 && sums[1] == 0;
  }
  if (!s.orientable && s.genus == 2) return klein_trivial(w);
  const DehnSolver solver(canonical_presentation(s).relator);
  return solver.is_trivial(w);
}

// ---------------------------------------------------------------- homomorphisms

void validate_hom(const SurfaceHom& h) {
  const int dn = h.domain.generator_count();
  if (static_cast<int>(h.images.size()) != dn)
    throw Error(ErrorCode::MalformedWord, "expected " + std::to_string(dn) + " generator images, got " +
                                              std::to_string(h.images.size()));
  const int cn = h.codomain.generator_count();
  for (const auto& img : h.images)
    for (const auto& l : img.letters())
      if (l.gen < 0 || l.gen >= cn)
        throw Error(ErrorCode::UnknownGenerator, "image letter outside codomain generators");
  Word image = h.apply(canonical_presentation(h.domain).relator);
  if (!word_problem(h.codomain, image))
    throw Error(ErrorCode::RelatorNotKilled,
                "relator maps to " + format_word(image, canonical_presentation(h.codomain)));
}

IntMatrix abelianization_matrix(const SurfaceHom& h) {
  const int rows = h.codomain.generator_count();
  const int cols = h.domain.generator_count();
  IntMatrix q(static_cast<std::size_t>(rows), std::vector<std::int64_t>(static_cast<std::size_t>(cols), 0));
  for (int c = 0; c < cols; ++c) {
    auto sums = h.images[static_cast<std::size_t>(c)].exponent_sums(rows);
    for (int r = 0; r < rows; ++r) q[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = sums[static_cast<std::size_t>(r)];
  }
  return q;
}

SurfaceHom compose(const SurfaceHom& first, const SurfaceHom& second) {
  SurfaceHom out{first.domain, second.codomain, {}};
  out.images.reserve(first.images.size());
  for (const auto& img : first.images) out.images.push_back(second.apply(img));
  return out;
}

// ---------------------------------------------------------------- Nielsen reduction

NielsenResult nielsen_reduce(std::vector<Word> gens) {
  NielsenResult result;
  auto& u = result.generators;
  for (auto& g : gens)
    if (!g.empty()) u.push_back(std::move(g));

  auto label = [](std::size_t i) { return "u" + std::to_string(i + 1); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < u.size() && !changed; ++i) {
      for (std::size_t j = 0; j < u.size() && !changed; ++j) {
        if (i == j) continue;
        for (int e : {1, -1}) {
          const Word uj = e > 0 ? u[j] : u[j].inverse();
          const std::string uj_name = label(j) + (e > 0 ? "" : "^-1");
          Word right = u[i] * uj;
          Word left = uj * u[i];
          Word* best = nullptr;
          std::string move;
          if (right < u[i]) {
            best = &right;
            move = label(i) + " <- " + label(i) + " " + uj_name;
          }
          if (left < (best ? *best : u[i])) {
            best = &left;
            move = label(i) + " <- " + uj_name + " " + label(i);
          }
          if (best) {
            u[i] = *best;
            result.moves.push_back(move);
            if (u[i].empty()) {
              u.erase(u.begin() + static_cast<std::ptrdiff_t>(i));
              result.moves.push_back("drop trivial " + label(i));
            }
            changed = true;
            break;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace mmr
