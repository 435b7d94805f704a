#include "mmr/permutation.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace mmr {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
      throw Error(ErrorCode::MalformedWord, "not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(std::string_view text, int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::SyntaxError, "bad cycle notation '" + std::string(text) + "': " + why);
  };
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (pos == text.size()) fail("empty");
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected a point");
      int point = std::stoi(std::string(text.substr(start, pos - start)));
      if (point < 1 || point > degree) fail("point " + std::to_string(point) + " out of range");
      if (used[static_cast<std::size_t>(point - 1)]) fail("point " + std::to_string(point) + " repeated");
      used[static_cast<std::size_t>(point - 1)] = true;
      cycle.push_back(point - 1);
      if (pos < text.size() && text[pos] == ',') ++pos;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.degree() != degree()) throw Error(ErrorCode::MalformedWord, "degree mismatch");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = next.image(images_[i]);
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> Permutation::cycle_ids() const {
  std::vector<int> ids(images_.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (ids[i] >= 0) continue;
    for (int p = static_cast<int>(i); ids[static_cast<std::size_t>(p)] < 0; p = image(p))
      ids[static_cast<std::size_t>(p)] = next;
    ++next;
  }
  return ids;
}

std::vector<int> Permutation::cycle_type() const {
  auto ids = cycle_ids();
  int count = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  std::vector<int> lengths(static_cast<std::size_t>(count), 0);
  for (int id : ids) ++lengths[static_cast<std::size_t>(id)];
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == static_cast<int>(i)) continue;
    out += '(';
    bool first = true;
    for (int p = static_cast<int>(i); !seen[static_cast<std::size_t>(p)]; p = image(p)) {
      seen[static_cast<std::size_t>(p)] = true;
      if (!first) out += ' ';
      out += std::to_string(p + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation PermutationRep::evaluate(const Word& w) const {
  Permutation result = Permutation::identity(degree);
  for (const auto& l : w.letters()) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= generators.size())
      throw Error(ErrorCode::UnknownGenerator, "generator id " + std::to_string(l.gen));
    const Permutation& g = generators[static_cast<std::size_t>(l.gen)];
    result = result.then(l.exp > 0 ? g : g.inverse());
  }
  return result;
}

bool is_transitive(const std::vector<Permutation>& gens, int degree) {
  if (degree <= 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(degree), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      for (int q : {g.image(p), g.inverse().image(p)}) {
        if (!seen[static_cast<std::size_t>(q)]) {
          seen[static_cast<std::size_t>(q)] = true;
          ++reached;
          stack.push_back(q);
        }
      }
    }
  }
  return reached == degree;
}

bool PermutationRep::is_transitive() const { return mmr::is_transitive(generators, degree); }

std::vector<int> parse_partition(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string piece(text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos));
    if (piece.empty() || !std::all_of(piece.begin(), piece.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw Error(ErrorCode::SyntaxError, "bad partition '" + std::string(text) + "'");
    int v = std::stoi(piece);
    if (v < 1) throw Error(ErrorCode::SyntaxError, "partition parts must be positive");
    parts.push_back(v);
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

std::string format_partition(const std::vector<int>& parts) {
  std::string out;
  for (int p : parts) {
    if (!out.empty()) out += '+';
    out += std::to_string(p);
  }
  return out;
}

}  // namespace mmr
