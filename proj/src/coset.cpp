#include "mmr/coset.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace mmr {

namespace {

int column(const Letter& l) { return 2 * l.gen + (l.exp < 0 ? 1 : 0); }
int inverse_column(int col) { return col ^ 1; }

class Enumerator {
public:
  Enumerator(int generator_count, int max_cosets)
      : columns_(2 * generator_count), max_live_(max_cosets), max_allocated_(std::max(64, 8 * max_cosets)) {
    new_coset();
  }

  bool overflowed() const { return overflow_; }

  // Runs HLT. Returns false on overflow.
  bool run(std::span<const Word> relators, std::span<const Word> subgroup) {
    for (const auto& w : subgroup) {
      scan_and_fill(0, w.letters());
      if (overflow_) return false;
    }
    for (int alpha = 0; alpha < static_cast<int>(table_.size()); ++alpha) {
      for (const auto& r : relators) {
        if (!live(alpha)) break;
        scan_and_fill(alpha, r.letters());
        if (overflow_) return false;
      }
      for (int x = 0; x < columns_ && live(alpha); ++x) {
        if (table_[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(x)] < 0) {
          define(alpha, x);
          if (overflow_) return false;
        }
      }
    }
    return true;
  }

  // Renumbers live cosets breadth-first from coset 0.
  std::vector<std::vector<int>> standardized() const {
    std::vector<int> order{0};
    std::vector<int> label(table_.size(), -1);
    label[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int x = 0; x < columns_; ++x) {
        int d = table_[static_cast<std::size_t>(order[i])][static_cast<std::size_t>(x)];
        if (d >= 0 && label[static_cast<std::size_t>(d)] < 0) {
          label[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<std::vector<int>> rows;
    rows.reserve(order.size());
    for (int c : order) {
      std::vector<int> row(static_cast<std::size_t>(columns_), -1);
      for (int x = 0; x < columns_; ++x) {
        int d = table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
        row[static_cast<std::size_t>(x)] = d < 0 ? -1 : label[static_cast<std::size_t>(d)];
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

private:
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int rep(int c) {
    int root = c;
    while (parent_[static_cast<std::size_t>(root)] != root) root = parent_[static_cast<std::size_t>(root)];
    while (parent_[static_cast<std::size_t>(c)] != root) {
      int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = root;
      c = next;
    }
    return root;
  }

  int new_coset() {
    if (live_count_ >= max_live_ || static_cast<int>(table_.size()) >= max_allocated_) {
      overflow_ = true;
      return -1;
    }
    int c = static_cast<int>(table_.size());
    table_.emplace_back(static_cast<std::size_t>(columns_), -1);
    parent_.push_back(c);
    ++live_count_;
    return c;
  }

  void define(int c, int x) {
    int d = new_coset();
    if (d < 0) return;
    set(c, x, d);
  }

  void set(int c, int x, int d) {
    table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = d;
    table_[static_cast<std::size_t>(d)][static_cast<std::size_t>(inverse_column(x))] = c;
  }

  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)]; }

  void scan_and_fill(int alpha, const std::vector<Letter>& w) {
    if (w.empty()) return;
    int f = alpha;
    int b = alpha;
    std::ptrdiff_t i = 0;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && entry(f, column(w[static_cast<std::size_t>(i)])) >= 0) {
        f = entry(f, column(w[static_cast<std::size_t>(i)]));
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, inverse_column(column(w[static_cast<std::size_t>(j)]))) >= 0) {
        b = entry(b, inverse_column(column(w[static_cast<std::size_t>(j)])));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        set(f, column(w[static_cast<std::size_t>(i)]), b);
        return;
      }
      define(f, column(w[static_cast<std::size_t>(i)]));
      if (overflow_) return;
    }
  }

  void merge(int k, int l, std::deque<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    --live_count_;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      int e = queue.front();
      queue.pop_front();
      for (int x = 0; x < columns_; ++x) {
        int f = entry(e, x);
        if (f < 0) continue;
        entry(f, inverse_column(x)) = -1;
        int e1 = rep(e);
        int f1 = rep(f);
        if (entry(e1, x) >= 0) {
          merge(f1, entry(e1, x), queue);
        } else if (entry(f1, inverse_column(x)) >= 0) {
          merge(e1, entry(f1, inverse_column(x)), queue);
        } else {
          entry(e1, x) = f1;
          entry(f1, inverse_column(x)) = e1;
        }
      }
    }
  }

  int columns_;
  int max_live_;
  int max_allocated_;
  int live_count_ = 0;
  bool overflow_ = false;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

int CosetTable::trace(int coset, const Word& w) const {
  for (const auto& l : w.letters()) {
    coset = act(coset, l);
    if (coset < 0) return -1;
  }
  return coset;
}

std::string CosetTable::to_text() const {
  std::ostringstream out;
  out << "cosets " << rows.size() << " generators " << generator_count << "\n";
  for (const auto& row : rows) {
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (x) out << ' ';
      if (row[x] < 0)
        out << '-';
      else
        out << row[x] + 1;
    }
    out << "\n";
  }
  return out.str();
}

CosetTable CosetTable::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string kw1, kw2;
  std::size_t count = 0;
  CosetTable t;
  if (!(in >> kw1 >> count >> kw2 >> t.generator_count) || kw1 != "cosets" || kw2 != "generators")
    throw Error(ErrorCode::SyntaxError, "coset table header");
  t.rows.assign(count, std::vector<int>(static_cast<std::size_t>(2 * t.generator_count), -1));
  bool complete = true;
  for (auto& row : t.rows) {
    for (auto& e : row) {
      std::string tok;
      if (!(in >> tok)) throw Error(ErrorCode::SyntaxError, "coset table truncated");
      if (tok == "-") {
        complete = false;
        continue;
      }
      e = std::stoi(tok) - 1;
      if (e < 0 || static_cast<std::size_t>(e) >= count) throw Error(ErrorCode::SyntaxError, "coset out of range");
    }
  }
  t.status = complete ? CosetTable::Status::Complete : CosetTable::Status::ExceededBound;
  return t;
}

std::string IndexResult::describe() const {
  return index ? "Finite(" + std::to_string(*index) + ")" : "ExceedsBound";
}

CosetTable enumerate_cosets(int generator_count, std::span<const Word> relators, std::span<const Word> subgroup,
                            int max_cosets) {
  if (max_cosets < 1) throw Error(ErrorCode::OutOfRange, "max_cosets must be positive");
  Enumerator e(generator_count, max_cosets);
  CosetTable t;
  t.generator_count = generator_count;
  if (!e.run(relators, subgroup)) {
    t.status = CosetTable::Status::ExceededBound;
    return t;
  }
  t.rows = e.standardized();
  t.status = CosetTable::Status::Complete;
  return t;
}

CosetTable enumerate_cosets(const Surface& n, std::span<const Word> subgroup, int max_cosets) {
  const int gens = n.generator_count();
  for (const auto& w : subgroup)
    for (const auto& l : w.letters())
      if (l.gen < 0 || l.gen >= gens)
        throw Error(ErrorCode::MalformedWord, "subgroup word uses a generator outside " + n.describe());
  const Word relator = canonical_presentation(n).relator;
  return enumerate_cosets(gens, std::span<const Word>(&relator, 1), subgroup, max_cosets);
}

std::int64_t lattice_index(std::span<const std::vector<std::int64_t>> vectors) {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      g = gcd64(g, vectors[i][0] * vectors[j][1] - vectors[i][1] * vectors[j][0]);
  return g;
}

IndexResult subgroup_index(const Surface& n, std::span<const Word> gens, int max_cosets) {
  const int count = n.generator_count();
  for (const auto& w : gens)
    for (const auto& l : w.letters())
      if (l.gen < 0 || l.gen >= count)
        throw Error(ErrorCode::MalformedWord, "subgroup word uses a generator outside " + n.describe());
  auto bounded = [&](std::int64_t k) {
    return k >= 1 && k <= max_cosets ? IndexResult::finite(k) : IndexResult::exceeds_bound();
  };
  if (n.is_sphere()) return bounded(1);
  if (n.is_projective_plane()) {
    bool odd = std::any_of(gens.begin(), gens.end(), [](const Word& w) { return w.exponent_sums(1)[0] % 2 != 0; });
    return bounded(odd ? 1 : 2);
  }
  if (n.orientable && n.genus == 1) {
    std::vector<std::vector<std::int64_t>> vectors;
    for (const auto& w : gens) vectors.push_back(w.exponent_sums(2));
    std::int64_t k = lattice_index(vectors);
    return k == 0 ? IndexResult::exceeds_bound() : bounded(k);
  }
  CosetTable t = enumerate_cosets(n, gens, max_cosets);
  return t.complete() ? IndexResult::finite(t.index()) : IndexResult::exceeds_bound();
}

PermutationRep permutation_rep(const CosetTable& t) {
  if (!t.complete()) throw Error(ErrorCode::IncompleteTable, "permutation_rep needs a complete table");
  PermutationRep rep;
  rep.degree = t.index();
  for (int g = 0; g < t.generator_count; ++g) {
    std::vector<int> images;
    images.reserve(t.rows.size());
    for (const auto& row : t.rows) images.push_back(row[static_cast<std::size_t>(2 * g)]);
    rep.generators.emplace_back(std::move(images));
  }
  return rep;
}

std::vector<Word> schreier_generators(const CosetTable& t) {
  if (!t.complete()) throw Error(ErrorCode::IncompleteTable, "schreier_generators needs a complete table");
  const int n = t.index();
  std::vector<std::optional<Word>> transversal(static_cast<std::size_t>(n));
  transversal[0] = Word();
  std::vector<int> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    int c = order[i];
    for (int x = 0; x < 2 * t.generator_count; ++x) {
      int d = t.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
      if (!transversal[static_cast<std::size_t>(d)]) {
        transversal[static_cast<std::size_t>(d)] =
            *transversal[static_cast<std::size_t>(c)] * Word::generator(x / 2, x % 2 == 0 ? 1 : -1);
        order.push_back(d);
      }
    }
  }
  std::vector<Word> out;
  std::set<Word> seen;
  for (int c = 0; c < n; ++c) {
    for (int g = 0; g < t.generator_count; ++g) {
      int d = t.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(2 * g)];
      Word w = *transversal[static_cast<std::size_t>(c)] * Word::generator(g) *
               transversal[static_cast<std::size_t>(d)]->inverse();
      if (w.empty() || seen.count(w) || seen.count(w.inverse())) continue;
      seen.insert(w);
      out.push_back(std::move(w));
    }
  }
  return out;
}

Surface cover_surface(const Surface& n, const CosetTable& t) {
  if (!t.complete()) throw Error(ErrorCode::IncompleteTable, "cover_surface needs a complete table");
  bool orientable = n.orientable;
  if (!orientable) {
    const OrientationCharacter w1 = orientation_character(n);
    const auto gens = schreier_generators(t);
    orientable = std::all_of(gens.begin(), gens.end(), [&](const Word& w) { return w1.evaluate(w) == 0; });
  }
  try {
    return Surface::from_euler(t.index() * n.euler_char(), orientable);
  } catch (const Error& e) {
    throw Error(ErrorCode::InconsistentCover, e.what());
  }
}

CosetTable table_from_rep(const PermutationRep& rep, int basepoint) {
  if (!rep.is_transitive()) throw Error(ErrorCode::NonTransitiveMonodromy, "action is not transitive");
  const int gens = static_cast<int>(rep.generators.size());
  std::vector<Permutation> inverses;
  for (const auto& g : rep.generators) inverses.push_back(g.inverse());
  auto act = [&](int p, int x) {
    return x % 2 == 0 ? rep.generators[static_cast<std::size_t>(x / 2)].image(p)
                      : inverses[static_cast<std::size_t>(x / 2)].image(p);
  };
  std::vector<int> label(static_cast<std::size_t>(rep.degree), -1);
  std::vector<int> order{basepoint};
  label[static_cast<std::size_t>(basepoint)] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int x = 0; x < 2 * gens; ++x) {
      int q = act(order[i], x);
      if (label[static_cast<std::size_t>(q)] < 0) {
        label[static_cast<std::size_t>(q)] = static_cast<int>(order.size());
        order.push_back(q);
      }
    }
  CosetTable t;
  t.generator_count = gens;
  for (int p : order) {
    std::vector<int> row(static_cast<std::size_t>(2 * gens));
    for (int x = 0; x < 2 * gens; ++x) row[static_cast<std::size_t>(x)] = label[static_cast<std::size_t>(act(p, x))];
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<CosetTable> low_index_tables(const Surface& n, int max_index) {
  const int gens = n.generator_count();
  const Word relator = canonical_presentation(n).relator;
  std::vector<CosetTable> out;
  std::set<std::vector<std::vector<int>>> seen;
  for (int degree = 1; degree <= max_index; ++degree) {
    std::vector<Permutation> all;
    std::vector<int> base(static_cast<std::size_t>(degree));
    std::iota(base.begin(), base.end(), 0);
    do {
      all.emplace_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    PermutationRep rep;
    rep.degree = degree;
    rep.generators.assign(static_cast<std::size_t>(gens), Permutation::identity(degree));
    std::function<void(int)> assign = [&](int g) {
      if (g == gens) {
        if (!rep.evaluate(relator).is_identity() || !rep.is_transitive()) return;
        CosetTable t = table_from_rep(rep, 0);
        if (seen.insert(t.rows).second) out.push_back(std::move(t));
        return;
      }
      for (const auto& p : all) {
        rep.generators[static_cast<std::size_t>(g)] = p;
        assign(g + 1);
      }
    };
    assign(0);
  }
  return out;
}

}  // namespace mmr
