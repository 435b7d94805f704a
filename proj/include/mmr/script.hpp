#pragma once

// Line-oriented session scripts: declarations of surfaces, homomorphisms
// and maps, followed by commands that classify or audit them.

#include "mmr/error.hpp"
#include "mmr/map_model.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mmr {

struct SurfaceDecl {
  std::string name;
  Surface surface;
  bool operator==(const SurfaceDecl&) const = default;
};

/// `hom h S -> T { a1 -> <word>; ... }`, images in domain generator order.
struct HomDecl {
  std::string name;
  std::string source;
  std::string target;
  std::vector<Word> images;
  bool operator==(const HomDecl&) const = default;
};

struct CoveringBody {
  std::string surface;
  int sheets = 1;
  std::vector<Permutation> monodromy;  // canonical generator order
  bool operator==(const CoveringBody&) const = default;
};

struct BranchedBody {
  std::string surface;
  int sheets = 1;
  std::vector<Permutation> monodromy;
  std::vector<Permutation> branch;
  bool operator==(const BranchedBody&) const = default;
};

struct PinchBody {
  std::string surface;
  SubsurfaceSpec pinched;
  bool operator==(const PinchBody&) const = default;
};

struct TorusLinearBody {
  IntMatrix matrix;
  bool operator==(const TorusLinearBody&) const = default;
};

/// `compose f g` is f o g: g is applied first.
struct ComposeBody {
  std::string outer;
  std::string inner;
  bool operator==(const ComposeBody&) const = default;
};

struct MapDecl {
  std::string name;
  std::variant<CoveringBody, BranchedBody, PinchBody, TorusLinearBody, ComposeBody> body;
  bool operator==(const MapDecl&) const = default;
};

struct Command {
  enum class Kind { Classify, Invariants, OracleAudit, CircleClassify, CircleBruteForce };
  Kind kind = Kind::Classify;
  std::string subject;  // map or hom name
  std::int64_t degree = 0;
  int edges = 8;
  int grid = 2;
  bool operator==(const Command&) const = default;
};

using Statement = std::variant<SurfaceDecl, HomDecl, MapDecl, Command>;

struct SessionScript {
  std::vector<Statement> statements;
  bool operator==(const SessionScript&) const = default;
};

/// A parse failure at a 1-based line and column.
class ScriptError : public Error {
public:
  ScriptError(ErrorCode code, int line, int column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Throws ScriptError with SyntaxError, UnknownReference or DuplicateName.
/// Blank lines and lines starting with `#` are skipped.
SessionScript parse_script(std::string_view text);

std::string print_statement(const Statement& s, const SessionScript& context);
std::string print_script(const SessionScript& script);

struct RunOptions {
  int max_cosets = kDefaultMaxCosets;
  bool witness = false;
  std::uint64_t seed = 0;
};

struct RunOutput {
  std::vector<nlohmann::json> reports;  // one per command
  int exit_code = 0;
};

/// Every report has the keys command, inputs, invariants, verdict,
/// certificate, witness, audit, errors and seed; unused ones are null.
RunOutput run_script(const SessionScript& script, const RunOptions& options = {});

std::string format_report(const nlohmann::json& report);

}  // namespace mmr
