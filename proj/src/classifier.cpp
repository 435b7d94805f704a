#include "mmr/classifier.hpp"

#include "mmr/error.hpp"

#include <cstdlib>

namespace mmr {

namespace {

std::int64_t get(const Certificate& c, const std::string& key) {
  auto it = c.inputs.find(key);
  if (it == c.inputs.end()) throw Error(ErrorCode::MissingInvariant, "certificate lacks " + key);
  return it->second;
}

Certificate surface_certificate(TheoremId id, std::int64_t a, std::optional<std::int64_t> l, const MapInvariants& inv) {
  Certificate c;
  c.theorem = id;
  c.inputs["A"] = a;
  if (l) c.inputs["l"] = *l;
  c.inputs["chi_source"] = inv.source.euler_char();
  c.inputs["chi_target"] = inv.target.euler_char();
  switch (id) {
    case TheoremId::CoveringDegree:
      c.rule = "A > 0 and (l != A or A*chi(target) = chi(source)) => MMR = A";
      break;
    case TheoremId::PinchDegreePlusTwo:
      c.rule = "A > 0, l = A and A*chi(target) != chi(source) => MMR = A + 2";
      break;
    case TheoremId::DegreeZeroRange:
      c.rule = "A = 0 => 2 <= MMR <= 4";
      break;
    default:
      break;
  }
  return c;
}

// Verdict for a single known A; throws KneserViolated for impossible data.
MmrResult classify_known(std::int64_t a, const IndexResult& index, const MapInvariants& inv) {
  if (a < 0) throw Error(ErrorCode::InconsistentInvariants, "negative absolute degree");
  if (a == 0) return MmrResult::range(2, 4, surface_certificate(TheoremId::DegreeZeroRange, 0, std::nullopt, inv));
  const std::int64_t chi_m = inv.source.euler_char();
  const std::int64_t chi_n = inv.target.euler_char();
  if (a * chi_n < chi_m)
    throw Error(ErrorCode::KneserViolated, "A*chi(target) = " + std::to_string(a * chi_n) + " < chi(source) = " +
                                               std::to_string(chi_m));
  if (!index.is_finite())
    throw Error(ErrorCode::MissingInvariant, "A > 0 needs the index l, which exceeded the coset bound");
  const std::int64_t l = *index.index;
  if (l != a || a * chi_n == chi_m)
    return MmrResult::exact(a, surface_certificate(TheoremId::CoveringDegree, a, l, inv));
  return MmrResult::exact(a + 2, surface_certificate(TheoremId::PinchDegreePlusTwo, a, l, inv));
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::CircleDegree: return "circle-degree";
    case TheoremId::CurveCodim: return "curve-codim";
    case TheoremId::CoveringDegree: return "covering-degree";
    case TheoremId::PinchDegreePlusTwo: return "pinch-degree-plus-two";
    case TheoremId::DegreeZeroRange: return "degree-zero-range";
    case TheoremId::HurewiczBound: return "hurewicz-bound";
  }
  return "unknown";
}

bool Certificate::hypothesis_holds() const {
  switch (theorem) {
    case TheoremId::CircleDegree: return inputs.count("deg") == 1;
    case TheoremId::CurveCodim: return get(*this, "dim") >= 3;
    case TheoremId::HurewiczBound: {
      const auto m = get(*this, "m");
      const auto n = get(*this, "n");
      return 0 < m && m < n && n <= 2 * m;
    }
    case TheoremId::DegreeZeroRange: return get(*this, "A") == 0;
    case TheoremId::CoveringDegree: {
      const auto a = get(*this, "A");
      const auto l = get(*this, "l");
      return a > 0 && (l != a || a * get(*this, "chi_target") == get(*this, "chi_source"));
    }
    case TheoremId::PinchDegreePlusTwo: {
      const auto a = get(*this, "A");
      return a > 0 && get(*this, "l") == a && a * get(*this, "chi_target") != get(*this, "chi_source");
    }
  }
  return false;
}

MmrResult MmrResult::exact(std::int64_t k, Certificate c) {
  if (k < 1) throw Error(ErrorCode::OutOfRange, "Exact(k) needs k >= 1");
  MmrResult r;
  r.kind = Kind::Exact;
  r.lo = r.hi = k;
  r.certificate = std::move(c);
  return r;
}

MmrResult MmrResult::range(std::int64_t lo, std::int64_t hi, Certificate c) {
  if (lo < 1 || lo > hi) throw Error(ErrorCode::OutOfRange, "Range(lo, hi) needs 1 <= lo <= hi");
  if (lo == hi) return exact(lo, std::move(c));
  MmrResult r;
  r.kind = Kind::Range;
  r.lo = lo;
  r.hi = hi;
  r.certificate = std::move(c);
  return r;
}

std::string MmrResult::describe() const {
  switch (kind) {
    case Kind::Exact: return "Exact(" + std::to_string(lo) + ")";
    case Kind::Range: return "Range(" + std::to_string(lo) + "," + std::to_string(hi) + ")";
    case Kind::Cases: {
      std::string out = "Cases[";
      for (std::size_t i = 0; i < cases.size(); ++i) {
        if (i) out += "; ";
        out += cases[i].assumption + ": " + branch(i).describe();
      }
      return out + "]";
    }
  }
  return "";
}

MmrResult mmr_circle(std::int64_t degree) {
  Certificate c{TheoremId::CircleDegree, {{"deg", degree}}, "circle self-map: MMR = |deg|, or 2 when deg = 0", {}};
  return MmrResult::exact(degree == 0 ? 2 : std::llabs(degree), std::move(c));
}

MmrResult mmr_curve_in_highdim(int target_dim) {
  if (target_dim == 2)
    throw Error(ErrorCode::Unsupported, "maps from the circle into surfaces need self-intersection numbers, "
                                        "which are not implemented");
  if (target_dim < 2) throw Error(ErrorCode::OutOfRange, "target dimension must be at least 2");
  Certificate c{TheoremId::CurveCodim,
                {{"dim", target_dim}},
                "a circle in a manifold of dimension >= 3 is homotopic to an embedding: MMR = 1",
                {}};
  return MmrResult::exact(1, std::move(c));
}

std::int64_t hurewicz_upper_bound(int m, int n) {
  if (!(0 < m && m < n && n <= 2 * m))
    throw Error(ErrorCode::OutOfRange, "need 0 < m < n <= 2m, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  return n / (n - m);
}

FiberProfileBound kneser_deficiency_bound(std::int64_t d, const Surface& source, const Surface& target) {
  if (d < 1) throw Error(ErrorCode::OutOfRange, "degree must be positive");
  return {d, source.euler_char(), target.euler_char(), d * target.euler_char() - source.euler_char()};
}

bool kneser_check(std::int64_t d, const Surface& source, const Surface& target, const std::vector<std::int64_t>& fibers) {
  if (d < 1) throw Error(ErrorCode::OutOfRange, "degree must be positive");
  std::int64_t deficit = 0;
  for (auto mu : fibers) {
    if (mu < 1) throw Error(ErrorCode::OutOfRange, "fiber sizes must be positive");
    deficit += d - mu;
  }
  return d * target.euler_char() >= source.euler_char() + deficit;
}

MmrResult mmr_surface(const MapInvariants& inv, int max_cosets) {
  switch (inv.absolute_degree.kind) {
    case AbsoluteDegree::Kind::Known: return classify_known(inv.absolute_degree.value, inv.index, inv);
    case AbsoluteDegree::Kind::Undefined:
      throw Error(ErrorCode::MissingInvariant, "absolute degree is undefined for this description");
    case AbsoluteDegree::Kind::CaseSplit: break;
  }
  MmrResult zero = classify_known(0, inv.index, inv);
  std::optional<MmrResult> full;
  std::string dropped;
  if (inv.index.is_finite()) {
    try {
      full = classify_known(*inv.index.index, inv.index, inv);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::KneserViolated) throw;
      dropped = "A = l excluded: " + std::string(e.what());
    }
  } else {
    const std::int64_t chi_m = inv.source.euler_char();
    const std::int64_t chi_n = inv.target.euler_char();
    if (chi_n < 0 && (static_cast<std::int64_t>(max_cosets) + 1) * chi_n < chi_m)
      dropped = "A = l excluded: l > " + std::to_string(max_cosets) + " violates A*chi(target) >= chi(source)";
    else
      throw Error(ErrorCode::MissingInvariant, "the index l exceeded the coset bound, so the A = l case is open");
  }
  if (!full) {
    zero.certificate.notes.push_back(dropped);
    return zero;
  }
  MmrResult r;
  r.kind = MmrResult::Kind::Cases;
  r.cases.push_back(CaseBranch{"A=0", {zero}});
  r.cases.push_back(CaseBranch{"A=l", {*full}});
  return r;
}

MmrResult classify_map(const MapDescription& m, int max_cosets) {
  return mmr_surface(compute_invariants(m, max_cosets), max_cosets);
}

MmrResult refine_with_witness(const MmrResult& r, std::int64_t w) {
  const std::string note = "witness of multiplicity " + std::to_string(w);
  switch (r.kind) {
    case MmrResult::Kind::Exact: {
      if (w < r.lo)
        throw Error(ErrorCode::WitnessBelowLowerBound,
                    note + " is below the proven value " + std::to_string(r.lo));
      MmrResult out = r;
      out.certificate.notes.push_back(note);
      return out;
    }
    case MmrResult::Kind::Range: {
      if (w < r.lo)
        throw Error(ErrorCode::WitnessBelowLowerBound,
                    note + " is below the proven lower bound " + std::to_string(r.lo));
      Certificate c = r.certificate;
      c.notes.push_back(note);
      return MmrResult::range(r.lo, std::min(r.hi, w), std::move(c));
    }
    case MmrResult::Kind::Cases: {
      MmrResult out;
      out.kind = MmrResult::Kind::Cases;
      for (std::size_t i = 0; i < r.cases.size(); ++i) {
        try {
          out.cases.push_back(CaseBranch{r.cases[i].assumption, {refine_with_witness(r.branch(i), w)}});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::WitnessBelowLowerBound) throw;
        }
      }
      if (out.cases.empty())
        throw Error(ErrorCode::WitnessBelowLowerBound, note + " contradicts every case");
      if (out.cases.size() == 1) {
        MmrResult only = out.branch(0);
        only.certificate.notes.push_back("case " + out.cases[0].assumption + " is the only one compatible with the " +
                                         note);
        return only;
      }
      return out;
    }
  }
  return r;
}

}  // namespace mmr
