#pragma once

// Minimal multiplicity verdicts from map invariants, with certificates.

#include "mmr/map_model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mmr {

enum class TheoremId {
  CircleDegree,
  CurveCodim,
  CoveringDegree,
  PinchDegreePlusTwo,
  DegreeZeroRange,
  HurewiczBound,
};

std::string_view theorem_name(TheoremId id);

/// The rule applied, the invariants it was applied to and any witness
/// refinements. Inputs use the keys A, l, chi_source, chi_target, deg,
/// dim, m, n as relevant.
struct Certificate {
  TheoremId theorem = TheoremId::CoveringDegree;
  std::map<std::string, std::int64_t> inputs;
  std::string rule;
  std::vector<std::string> notes;

  /// Re-evaluates the rule's hypothesis on `inputs`.
  bool hypothesis_holds() const;
};

struct MmrResult;

struct CaseBranch {
  std::string assumption;
  std::vector<MmrResult> result;  // exactly one element
};

struct MmrResult {
  enum class Kind { Exact, Range, Cases };
  Kind kind = Kind::Exact;
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  std::vector<CaseBranch> cases;
  Certificate certificate;  // unused for Cases; branches carry their own

  static MmrResult exact(std::int64_t k, Certificate c);
  static MmrResult range(std::int64_t lo, std::int64_t hi, Certificate c);
  bool is_exact() const { return kind == Kind::Exact; }
  const MmrResult& branch(std::size_t i) const { return cases[i].result.front(); }
  /// `Exact(3)`, `Range(2,4)` or `Cases[A=0: Range(2,4); A=l: Exact(3)]`.
  std::string describe() const;
};

MmrResult mmr_circle(std::int64_t degree);
MmrResult mmr_curve_in_highdim(int target_dim);

/// floor(n / (n - m)) for 0 < m < n <= 2m.
std::int64_t hurewicz_upper_bound(int m, int n);

struct FiberProfileBound {
  std::int64_t d = 1;
  std::int64_t chi_source = 0;
  std::int64_t chi_target = 0;
  std::int64_t deficiency_budget = 0;
};

FiberProfileBound kneser_deficiency_bound(std::int64_t d, const Surface& source, const Surface& target);

/// d chi(target) >= chi(source) + sum (d - mu_i).
bool kneser_check(std::int64_t d, const Surface& source, const Surface& target, const std::vector<std::int64_t>& fibers);

/// `max_cosets` is the bound behind an ExceedsBound index: such an index is
/// known to be larger than it.
MmrResult mmr_surface(const MapInvariants& inv, int max_cosets = kDefaultMaxCosets);

MmrResult classify_map(const MapDescription& m, int max_cosets = kDefaultMaxCosets);

/// Tightens a verdict with the multiplicity of a concrete representative
/// of the same homotopy class.
MmrResult refine_with_witness(const MmrResult& r, std::int64_t witness_multiplicity);

}  // namespace mmr
