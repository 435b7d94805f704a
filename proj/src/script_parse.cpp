#include "mmr/script.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace mmr {

namespace {

struct Token {
  std::string text;
  int column = 1;
};

enum class NameKind { Surface, Hom, Map };

struct Declared {
  NameKind kind;
  std::size_t index;  // into SessionScript::statements
};

std::string without_code(const Error& e) {
  const std::string what = e.what();
  const std::size_t prefix = error_code_name(e.code()).size() + 2;
  return what.size() >= prefix ? what.substr(prefix) : what;
}

// Splits on whitespace outside (), [] and {}.
std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::vector<char> open;
    std::size_t open_at = start;
    while (i < line.size() && (!open.empty() || !std::isspace(static_cast<unsigned char>(line[i])))) {
      const char c = line[i];
      if (c == '(' || c == '[' || c == '{') {
        if (open.empty()) open_at = i;
        open.push_back(c == '(' ? ')' : c == '[' ? ']' : '}');
      } else if (c == ')' || c == ']' || c == '}') {
        if (open.empty() || open.back() != c)
          throw ScriptError(ErrorCode::SyntaxError, line_no, static_cast<int>(i) + 1,
                            std::string("unexpected '") + c + "'");
        open.pop_back();
      }
      ++i;
    }
    if (!open.empty())
      throw ScriptError(ErrorCode::SyntaxError, line_no, static_cast<int>(open_at) + 1, "unclosed bracket");
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

class LineParser {
public:
  LineParser(std::vector<Token> tokens, int line_no, int end_column)
      : tokens_(std::move(tokens)), line_(line_no), end_column_(end_column) {}

  [[noreturn]] void fail(const std::string& message, int column) const {
    throw ScriptError(ErrorCode::SyntaxError, line_, column, message);
  }

  int line() const { return line_; }
  bool done() const { return pos_ == tokens_.size(); }
  int column() const { return done() ? end_column_ : tokens_[pos_].column; }
  const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }

  const Token& next(const std::string& what) {
    if (done()) fail("expected " + what, end_column_);
    return tokens_[pos_++];
  }

  void expect(std::string_view keyword) {
    const Token& t = next("'" + std::string(keyword) + "'");
    if (t.text != keyword) fail("expected '" + std::string(keyword) + "', found '" + t.text + "'", t.column);
  }

  std::int64_t integer(const std::string& what) {
    const Token& t = next(what);
    std::int64_t v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail("expected " + what + ", found '" + t.text + "'", t.column);
    return v;
  }

  int small_integer(const std::string& what, int lo) {
    const int column = this->column();
    const std::int64_t v = integer(what);
    if (v < lo || v > 1000000) fail(what + " out of range", column);
    return static_cast<int>(v);
  }

  bool orientation() {
    const Token& t = next("'orientable' or 'nonorientable'");
    if (t.text == "orientable") return true;
    if (t.text == "nonorientable") return false;
    fail("expected 'orientable' or 'nonorientable', found '" + t.text + "'", t.column);
  }

  void finish() {
    if (!done()) fail("unexpected '" + tokens_[pos_].text + "'", tokens_[pos_].column);
  }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
  int end_column_;
};

class Parser {
public:
  SessionScript parse(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      parse_line(line, line_no);
      if (end == text.size()) break;
      start = end + 1;
    }
    return std::move(script_);
  }

private:
  SessionScript script_;
  std::map<std::string, Declared> names_;

  void parse_line(std::string_view line, int line_no) {
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') return;
    auto tokens = tokenize(line, line_no);
    LineParser p(std::move(tokens), line_no, static_cast<int>(line.size()) + 1);
    const Token head = p.next("a statement");
    if (head.text == "surface") {
      surface(p);
    } else if (head.text == "hom") {
      hom(p);
    } else if (head.text == "map") {
      map(p);
    } else if (head.text == "classify" || head.text == "invariants" || head.text == "oracle-audit") {
      Command c;
      c.kind = head.text == "classify"     ? Command::Kind::Classify
               : head.text == "invariants" ? Command::Kind::Invariants
                                           : Command::Kind::OracleAudit;
      c.subject = reference(p, {NameKind::Map, NameKind::Hom}, "a map or hom name");
      p.finish();
      script_.statements.push_back(std::move(c));
    } else if (head.text == "circle") {
      circle(p);
    } else {
      p.fail("unknown statement '" + head.text + "'", head.column);
    }
  }

  std::string fresh_name(LineParser& p) {
    const Token& t = p.next("a name");
    const bool ok = std::all_of(t.text.begin(), t.text.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
    if (!ok || !std::isalpha(static_cast<unsigned char>(t.text.front())))
      p.fail("invalid name '" + t.text + "'", t.column);
    if (names_.count(t.text))
      throw ScriptError(ErrorCode::DuplicateName, p.line(), t.column, "'" + t.text + "' is already declared");
    return t.text;
  }

  void declare(const std::string& name, NameKind kind) { names_[name] = {kind, script_.statements.size()}; }

  std::string reference(LineParser& p, std::initializer_list<NameKind> kinds, const std::string& what) {
    const Token& t = p.next(what);
    auto it = names_.find(t.text);
    if (it == names_.end() || std::find(kinds.begin(), kinds.end(), it->second.kind) == kinds.end())
      throw ScriptError(ErrorCode::UnknownReference, p.line(), t.column, "'" + t.text + "' is not " + what);
    return t.text;
  }

  const Surface& surface_of(const std::string& name) const {
    return std::get<SurfaceDecl>(script_.statements[names_.at(name).index]).surface;
  }

  void surface(LineParser& p) {
    SurfaceDecl d;
    d.name = fresh_name(p);
    const bool orientable = p.orientation();
    p.expect("genus");
    const int column = p.column();
    const int genus = p.small_integer("a genus", 0);
    if (!orientable && genus < 1) p.fail("a nonorientable surface needs genus >= 1", column);
    d.surface = orientable ? Surface::orientable_genus(genus) : Surface::nonorientable_genus(genus);
    p.finish();
    declare(d.name, NameKind::Surface);
    script_.statements.push_back(std::move(d));
  }

  void hom(LineParser& p) {
    HomDecl d;
    d.name = fresh_name(p);
    d.source = reference(p, {NameKind::Surface}, "a surface name");
    p.expect("->");
    d.target = reference(p, {NameKind::Surface}, "a surface name");
    const Token& body = p.next("'{'");
    if (body.text.front() != '{' || body.text.back() != '}') p.fail("expected '{ ... }'", body.column);
    p.finish();

    const Presentation dom = canonical_presentation(surface_of(d.source));
    const Presentation cod = canonical_presentation(surface_of(d.target));
    std::vector<std::optional<Word>> images(dom.generators.size());
    const std::string inner = body.text.substr(1, body.text.size() - 2);
    std::size_t start = 0;
    while (start <= inner.size()) {
      std::size_t end = inner.find(';', start);
      if (end == std::string::npos) end = inner.size();
      const std::string item = inner.substr(start, end - start);
      const int column = body.column + 1 + static_cast<int>(start);
      if (item.find_first_not_of(" \t") != std::string::npos) {
        const std::size_t arrow = item.find("->");
        if (arrow == std::string::npos) p.fail("expected '<generator> -> <word>'", column);
        std::istringstream gen_in(item.substr(0, arrow));
        std::string gen, extra;
        gen_in >> gen;
        if (gen.empty() || (gen_in >> extra)) p.fail("expected one generator before '->'", column);
        const int g = dom.generator_index(gen);
        if (g < 0)
          p.fail("'" + gen + "' is not a generator of " + d.source,
                 column + static_cast<int>(item.find(gen)));
        if (images[static_cast<std::size_t>(g)]) p.fail("'" + gen + "' is mapped twice", column);
        try {
          images[static_cast<std::size_t>(g)] = parse_word(item.substr(arrow + 2), cod);
        } catch (const Error& e) {
          p.fail(std::string("bad word: ") + e.what(), column + static_cast<int>(arrow) + 2);
        }
      }
      if (end == inner.size()) break;
      start = end + 1;
    }
    for (std::size_t g = 0; g < images.size(); ++g) {
      if (!images[g]) p.fail("no image for generator '" + dom.generators[g] + "'", body.column);
      d.images.push_back(*images[g]);
    }
    declare(d.name, NameKind::Hom);
    script_.statements.push_back(std::move(d));
  }

  Permutation permutation(LineParser& p, std::string_view text, int column, int degree) {
    try {
      return Permutation::parse_cycles(text, degree);
    } catch (const Error& e) {
      p.fail(without_code(e), column);
    }
  }

  // Reads `<gen>:<cycles>` tokens up to `stop` (or the end of the line).
  std::vector<Permutation> monodromy(LineParser& p, const Surface& s, int degree, std::string_view stop) {
    const Presentation pres = canonical_presentation(s);
    std::vector<std::optional<Permutation>> perms(pres.generators.size());
    const int list_column = p.column();
    while (p.peek() && p.peek()->text != stop) {
      const Token& t = p.next("a monodromy entry");
      const std::size_t colon = t.text.find(':');
      if (colon == std::string::npos) p.fail("expected '<generator>:<cycles>'", t.column);
      const std::string gen = t.text.substr(0, colon);
      const int g = pres.generator_index(gen);
      if (g < 0) p.fail("'" + gen + "' is not a generator of the target", t.column);
      if (perms[static_cast<std::size_t>(g)]) p.fail("'" + gen + "' is given twice", t.column);
      perms[static_cast<std::size_t>(g)] =
          permutation(p, std::string_view(t.text).substr(colon + 1), t.column + static_cast<int>(colon) + 1, degree);
    }
    std::vector<Permutation> out;
    for (std::size_t g = 0; g < perms.size(); ++g) {
      if (!perms[g]) p.fail("no monodromy for generator '" + pres.generators[g] + "'", list_column);
      out.push_back(*perms[g]);
    }
    return out;
  }

  void map(LineParser& p) {
    MapDecl d;
    d.name = fresh_name(p);
    const Token& kind = p.next("a map kind");
    if (kind.text == "covering") {
      CoveringBody b;
      b.surface = reference(p, {NameKind::Surface}, "a surface name");
      p.expect("sheets");
      b.sheets = p.small_integer("a sheet count", 1);
      p.expect("monodromy");
      b.monodromy = monodromy(p, surface_of(b.surface), b.sheets, "");
      d.body = std::move(b);
    } else if (kind.text == "branched") {
      BranchedBody b;
      b.surface = reference(p, {NameKind::Surface}, "a surface name");
      p.expect("sheets");
      b.sheets = p.small_integer("a sheet count", 1);
      p.expect("monodromy");
      b.monodromy = monodromy(p, surface_of(b.surface), b.sheets, "branch");
      p.expect("branch");
      while (!p.done()) {
        const Token& t = p.next("cycles");
        b.branch.push_back(permutation(p, t.text, t.column, b.sheets));
      }
      d.body = std::move(b);
    } else if (kind.text == "pinch") {
      PinchBody b;
      b.surface = reference(p, {NameKind::Surface}, "a surface name");
      p.expect("subsurface");
      b.pinched.orientable = p.orientation();
      p.expect("genus");
      b.pinched.genus = p.small_integer("a genus", 0);
      d.body = std::move(b);
    } else if (kind.text == "torus-linear") {
      const Token& t = p.next("a matrix [[p,q],[r,s]]");
      TorusLinearBody b;
      try {
        const auto j = nlohmann::json::parse(t.text);
        b.matrix = j.get<IntMatrix>();
      } catch (const nlohmann::json::exception&) {
        p.fail("expected a matrix [[p,q],[r,s]]", t.column);
      }
      if (b.matrix.size() != 2 || b.matrix[0].size() != 2 || b.matrix[1].size() != 2)
        p.fail("expected a 2x2 matrix", t.column);
      d.body = std::move(b);
    } else if (kind.text == "compose") {
      ComposeBody b;
      b.outer = reference(p, {NameKind::Map, NameKind::Hom}, "a map or hom name");
      b.inner = reference(p, {NameKind::Map, NameKind::Hom}, "a map or hom name");
      d.body = std::move(b);
    } else {
      p.fail("unknown map kind '" + kind.text + "'", kind.column);
    }
    p.finish();
    declare(d.name, NameKind::Map);
    script_.statements.push_back(std::move(d));
  }

  void circle(LineParser& p) {
    Command c;
    const Token& what = p.next("'classify' or 'brute-force'");
    if (what.text == "classify") {
      c.kind = Command::Kind::CircleClassify;
      p.expect("degree");
      c.degree = p.integer("a degree");
    } else if (what.text == "brute-force") {
      c.kind = Command::Kind::CircleBruteForce;
      p.expect("degree");
      c.degree = p.integer("a degree");
      if (!p.done()) {
        p.expect("edges");
        c.edges = p.small_integer("an edge count", 1);
        p.expect("grid");
        c.grid = p.small_integer("a grid size", 1);
      }
    } else {
      p.fail("expected 'classify' or 'brute-force', found '" + what.text + "'", what.column);
    }
    p.finish();
    script_.statements.push_back(std::move(c));
  }
};

const Surface& find_surface(const SessionScript& context, const std::string& name) {
  for (const auto& s : context.statements)
    if (const auto* d = std::get_if<SurfaceDecl>(&s); d && d->name == name) return d->surface;
  throw Error(ErrorCode::UnknownReference, "'" + name + "' is not a declared surface");
}

std::string print_monodromy(const std::vector<Permutation>& perms, const Surface& s) {
  const Presentation pres = canonical_presentation(s);
  std::string out;
  for (std::size_t g = 0; g < perms.size(); ++g) out += " " + pres.generators[g] + ":" + perms[g].to_cycles();
  return out;
}

std::string print_subsurface(const SubsurfaceSpec& s) {
  return std::string(s.orientable ? "orientable" : "nonorientable") + " genus " + std::to_string(s.genus);
}

}  // namespace

SessionScript parse_script(std::string_view text) { return Parser{}.parse(text); }

std::string print_statement(const Statement& s, const SessionScript& context) {
  if (const auto* d = std::get_if<SurfaceDecl>(&s)) return "surface " + d->name + " " + d->surface.describe();
  if (const auto* d = std::get_if<HomDecl>(&s)) {
    const Presentation dom = canonical_presentation(find_surface(context, d->source));
    const Presentation cod = canonical_presentation(find_surface(context, d->target));
    std::string out = "hom " + d->name + " " + d->source + " -> " + d->target + " {";
    for (std::size_t g = 0; g < d->images.size(); ++g)
      out += (g ? "; " : " ") + dom.generators[g] + " -> " + format_word(d->images[g], cod);
    return out + " }";
  }
  if (const auto* d = std::get_if<MapDecl>(&s)) {
    std::string out = "map " + d->name + " ";
    if (const auto* b = std::get_if<CoveringBody>(&d->body)) {
      out += "covering " + b->surface + " sheets " + std::to_string(b->sheets) + " monodromy" +
             print_monodromy(b->monodromy, find_surface(context, b->surface));
    } else if (const auto* b = std::get_if<BranchedBody>(&d->body)) {
      out += "branched " + b->surface + " sheets " + std::to_string(b->sheets) + " monodromy" +
             print_monodromy(b->monodromy, find_surface(context, b->surface)) + " branch";
      for (const auto& c : b->branch) out += " " + c.to_cycles();
    } else if (const auto* b = std::get_if<PinchBody>(&d->body)) {
      out += "pinch " + b->surface + " subsurface " + print_subsurface(b->pinched);
    } else if (const auto* b = std::get_if<TorusLinearBody>(&d->body)) {
      out += "torus-linear " + nlohmann::json(b->matrix).dump();
    } else if (const auto* b = std::get_if<ComposeBody>(&d->body)) {
      out += "compose " + b->outer + " " + b->inner;
    }
    return out;
  }
  const auto& c = std::get<Command>(s);
  switch (c.kind) {
    case Command::Kind::Classify: return "classify " + c.subject;
    case Command::Kind::Invariants: return "invariants " + c.subject;
    case Command::Kind::OracleAudit: return "oracle-audit " + c.subject;
    case Command::Kind::CircleClassify: return "circle classify degree " + std::to_string(c.degree);
    case Command::Kind::CircleBruteForce:
      return "circle brute-force degree " + std::to_string(c.degree) + " edges " + std::to_string(c.edges) +
             " grid " + std::to_string(c.grid);
  }
  return {};
}

std::string print_script(const SessionScript& script) {
  std::string out;
  for (const auto& s : script.statements) out += print_statement(s, script) + "\n";
  return out;
}

}  // namespace mmr
