#include "mmr/classifier.hpp"
#include "mmr/pl_circle.hpp"
#include "mmr/random_maps.hpp"
#include "mmr/script.hpp"
#include "mmr/witness.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace mmr {

using nlohmann::json;

namespace {

json surface_json(const Surface& s) {
  return {{"orientable", s.orientable}, {"genus", s.genus}, {"chi", s.euler_char()}};
}

json optional_json(const auto& v) { return v ? json(*v) : json(nullptr); }

json invariants_json(const MapInvariants& inv) {
  json a = {{"kind", "undefined"}, {"value", nullptr}};
  if (inv.absolute_degree.is_known()) a = {{"kind", "known"}, {"value", inv.absolute_degree.value}};
  if (inv.absolute_degree.kind == AbsoluteDegree::Kind::CaseSplit) a = {{"kind", "case-split"}, {"value", nullptr}};
  return {{"source", surface_json(inv.source)},
          {"target", surface_json(inv.target)},
          {"absolute_degree", a},
          {"index", optional_json(inv.index.index)},
          {"index_text", inv.index.describe()},
          {"signed_degree", optional_json(inv.signed_degree)},
          {"orientation_true", optional_json(inv.orientation_true)}};
}

json verdict_json(const MmrResult& r) {
  json j = {{"text", r.describe()}};
  switch (r.kind) {
    case MmrResult::Kind::Exact:
      j["kind"] = "exact";
      j["value"] = r.lo;
      j["theorem"] = theorem_name(r.certificate.theorem);
      break;
    case MmrResult::Kind::Range:
      j["kind"] = "range";
      j["lo"] = r.lo;
      j["hi"] = r.hi;
      j["theorem"] = theorem_name(r.certificate.theorem);
      break;
    case MmrResult::Kind::Cases:
      j["kind"] = "cases";
      j["cases"] = json::array();
      for (std::size_t i = 0; i < r.cases.size(); ++i)
        j["cases"].push_back({{"assumption", r.cases[i].assumption}, {"verdict", verdict_json(r.branch(i))}});
      break;
  }
  return j;
}

json certificate_json(const MmrResult& r) {
  if (r.kind == MmrResult::Kind::Cases) {
    json cases = json::array();
    for (std::size_t i = 0; i < r.cases.size(); ++i)
      cases.push_back({{"assumption", r.cases[i].assumption}, {"certificate", certificate_json(r.branch(i))}});
    return {{"cases", cases}};
  }
  const Certificate& c = r.certificate;
  return {{"theorem", theorem_name(c.theorem)},
          {"rule", c.rule},
          {"inputs", c.inputs},
          {"notes", c.notes},
          {"hypothesis_holds", c.hypothesis_holds()}};
}

json kneser_json(const KneserAudit& a) {
  return {{"d", a.d},
          {"chi_source", a.chi_source},
          {"chi_target", a.chi_target},
          {"budget", a.budget},
          {"deficient_points", a.deficient_points()},
          {"deficient_fibers", a.deficient_fibers},
          {"lhs", a.lhs},
          {"rhs", a.rhs},
          {"passed", a.passed()}};
}

json error_json(const Error& e) { return {{"code", error_code_name(e.code())}, {"message", e.what()}}; }

struct BuiltWitness {
  std::string builder;
  Witness witness;
};

std::optional<MarkedTriangulation> marked_fixture(const Surface& s) {
  if (s.is_sphere()) return marked_sphere();
  if (s == Surface::torus()) return lattice_torus(7, -2, 1);
  if (s == Surface::klein_bottle()) return grid_klein_bottle(3, 4);
  if (s.is_projective_plane()) return projective_plane_6();
  return std::nullopt;
}

BuiltWitness find_witness(const MapDescription& m, const MapInvariants& inv, int max_cosets) {
  if (const auto* c = std::get_if<Covering>(&m.value)) {
    const auto fixture = marked_fixture(c->target);
    if (!fixture) throw Error(ErrorCode::Unsupported, "no marked triangulation of " + c->target.describe());
    return {"cover", build_cover_witness(*fixture, c->rep)};
  }
  if (const auto* p = std::get_if<Pinch>(&m.value)) return {"pinch", build_pinch_witness(p->source, p->pinched)};
  if (inv.source == Surface::torus() && inv.target == Surface::torus() && inv.absolute_degree.is_known() &&
      inv.absolute_degree.value > 0) {
    const auto gens = image_generators(m);
    if (!gens) throw Error(ErrorCode::Unsupported, "no image subgroup for this torus map");
    const CosetTable table = enumerate_cosets(Surface::torus(), *gens, max_cosets);
    return {"cover-of-image", build_cover_witness(lattice_torus(7, -2, 1), permutation_rep(table))};
  }
  if (const auto* b = std::get_if<BranchedCovering>(&m.value);
      b && b->target.is_sphere() && b->branch_points.size() == 2)
    return {"power-map", build_power_map_witness(b->sheets)};
  if (inv.source.is_sphere() && inv.absolute_degree.is_known() && inv.absolute_degree.value == 0)
    return {"sphere-fold", build_sphere_fold_witness(surface_fixture(inv.target))};
  throw Error(ErrorCode::Unsupported, "no witness builder for this map");
}

json witness_json(const BuiltWitness& w) {
  const SimplicialMap& g = w.witness.map;
  return {{"builder", w.builder},
          {"source", surface_json(validate_triangulation(g.source))},
          {"target", surface_json(validate_triangulation(g.target))},
          {"source_vertices", g.source.vertex_count},
          {"source_triangles", g.source.triangles.size()},
          {"multiplicity", multiplicity(g)}};
}

class Session {
public:
  Session(const SessionScript& script, const RunOptions& options) : script_(script), options_(options) {
    for (std::size_t i = 0; i < script.statements.size(); ++i) {
      std::visit(
          [&](const auto& d) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(d)>, Command>) index_[d.name] = i;
          },
          script.statements[i]);
    }
  }

  json run(const Command& c) {
    json report = {{"command", print_statement(c, script_)},
                   {"inputs", json::array()},
                   {"invariants", nullptr},
                   {"verdict", nullptr},
                   {"certificate", nullptr},
                   {"witness", nullptr},
                   {"audit", nullptr},
                   {"errors", json::array()},
                   {"seed", options_.seed}};
    try {
      if (c.kind == Command::Kind::CircleClassify || c.kind == Command::Kind::CircleBruteForce) {
        circle(c, report);
      } else {
        for (const auto& line : inputs(c.subject)) report["inputs"].push_back(line);
        surface_command(c, report);
      }
    } catch (const Error& e) {
      report["errors"].push_back(error_json(e));
    }
    return report;
  }

private:
  const SessionScript& script_;
  const RunOptions& options_;
  std::map<std::string, std::size_t> index_;

  const Statement& decl(const std::string& name) const { return script_.statements.at(index_.at(name)); }

  const Surface& surface(const std::string& name) const { return std::get<SurfaceDecl>(decl(name)).surface; }

  void collect(const std::string& name, std::set<std::size_t>& out) const {
    out.insert(index_.at(name));
    const Statement& s = decl(name);
    if (const auto* h = std::get_if<HomDecl>(&s)) {
      collect(h->source, out);
      collect(h->target, out);
    } else if (const auto* m = std::get_if<MapDecl>(&s)) {
      std::visit(
          [&](const auto& b) {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, ComposeBody>) {
              collect(b.outer, out);
              collect(b.inner, out);
            } else if constexpr (!std::is_same_v<B, TorusLinearBody>) {
              collect(b.surface, out);
            }
          },
          m->body);
    }
  }

  std::vector<std::string> inputs(const std::string& name) const {
    std::set<std::size_t> deps;
    collect(name, deps);
    std::vector<std::string> out;
    for (std::size_t i : deps) out.push_back(print_statement(script_.statements[i], script_));
    return out;
  }

  MapDescription description(const std::string& name) const {
    const Statement& s = decl(name);
    if (const auto* h = std::get_if<HomDecl>(&s))
      return MapDescription{HomMap{SurfaceHom{surface(h->source), surface(h->target), h->images}}};
    return std::visit(
        [&](const auto& b) -> MapDescription {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, CoveringBody>) {
            return MapDescription{Covering{surface(b.surface), PermutationRep{b.sheets, b.monodromy}}};
          } else if constexpr (std::is_same_v<B, BranchedBody>) {
            BranchedCovering out{surface(b.surface), b.sheets, b.monodromy, {}};
            for (const auto& p : b.branch) out.branch_points.push_back({p.cycle_type(), p});
            return MapDescription{out};
          } else if constexpr (std::is_same_v<B, PinchBody>) {
            return MapDescription{Pinch{surface(b.surface), b.pinched}};
          } else if constexpr (std::is_same_v<B, TorusLinearBody>) {
            return MapDescription{TorusLinear{b.matrix}};
          } else {
            return compose_maps(description(b.inner), description(b.outer));
          }
        },
        std::get<MapDecl>(s).body);
  }

  void surface_command(const Command& c, json& report) const {
    const MapDescription m = description(c.subject);
    const MapInvariants inv = compute_invariants(m, options_.max_cosets);
    report["invariants"] = invariants_json(inv);
    if (c.kind == Command::Kind::Invariants) return;

    MmrResult verdict = mmr_surface(inv, options_.max_cosets);
    if (c.kind == Command::Kind::Classify && options_.witness) {
      try {
        const BuiltWitness w = find_witness(m, inv, options_.max_cosets);
        report["witness"] = witness_json(w);
        verdict = refine_with_witness(verdict, multiplicity(w.witness.map));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Unsupported) throw;
        report["witness"] = {{"builder", nullptr}, {"unavailable", e.what()}};
      }
    }
    if (c.kind == Command::Kind::OracleAudit) verdict = audit(m, inv, verdict, report);
    report["verdict"] = verdict_json(verdict);
    report["certificate"] = certificate_json(verdict);
  }

  MmrResult audit(const MapDescription& m, const MapInvariants& inv, const MmrResult& verdict, json& report) const {
    json audit = json::object();
    std::optional<BuiltWitness> w;
    try {
      w = find_witness(m, inv, options_.max_cosets);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unsupported || !std::holds_alternative<BranchedCovering>(m.value)) throw;
    }
    if (const auto* b = std::get_if<BranchedCovering>(&m.value)) audit["branched"] = branched_audit(*b);
    if (!w) {
      report["audit"] = audit;
      return verdict;
    }
    report["witness"] = witness_json(*w);
    const SimplicialMap& g = w->witness.map;
    audit["multiplicity"] = multiplicity(g);
    audit["simplicial_degree"] = optional_json(simplicial_degree(g));
    const FiberProfile profile = fiber_profile(g);
    audit["profile_counts"] = {{"2", fiber_profile_counts(profile, 2)}, {"3", fiber_profile_counts(profile, 3)}};
    audit["footnote_inequality"] = check_footnote_inequality(profile, 2) && check_footnote_inequality(profile, 3);
    audit["kneser"] = nullptr;
    if (inv.absolute_degree.is_known() && inv.absolute_degree.value > 0)
      audit["kneser"] = kneser_json(audit_kneser(g, inv.absolute_degree.value));
    report["audit"] = audit;
    return refine_with_witness(verdict, multiplicity(g));
  }

  // Checks the declared branch data directly, then audits a seeded random
  // simplicial branched cover of the same sheet and branch counts.
  json branched_audit(const BranchedCovering& b) const {
    const Surface source = validate_map(MapDescription{b}).source;
    std::vector<std::int64_t> fibers;
    for (const auto& p : b.branch_points) fibers.push_back(p.monodromy.cycle_count());
    const FiberProfileBound bound = kneser_deficiency_bound(b.sheets, source, b.target);
    json out = {{"declared",
                 {{"d", b.sheets},
                  {"budget", bound.deficiency_budget},
                  {"branch_fibers", fibers},
                  {"passed", kneser_check(b.sheets, source, b.target, fibers)}}}};
    const int r = static_cast<int>(b.branch_points.size());
    if (r == 0 || b.sheets < 2 || (b.target.is_sphere() && r < 2) || b.target.euler_char() < -2) {
      out["random_fixture"] = nullptr;
      return out;
    }
    Rng rng(options_.seed);
    const BranchedFixture f = random_branched_fixture(surface_fixture(b.target), b.sheets, r, rng);
    out["random_fixture"] = {{"sheets", f.sheets},
                             {"branch_vertices", f.branch_vertices},
                             {"source", surface_json(validate_triangulation(f.map.source))},
                             {"kneser", kneser_json(audit_kneser(f.map, f.sheets))}};
    return out;
  }

  void circle(const Command& c, json& report) const {
    report["invariants"] = {{"degree", c.degree}};
    const MmrResult verdict = mmr_circle(c.degree);
    if (c.kind == Command::Kind::CircleBruteForce) {
      const std::int64_t found = brute_force_circle_mmr(c.degree, c.edges, c.grid);
      report["audit"] = {{"brute_force", found}, {"edges", c.edges}, {"grid", c.grid}, {"agrees", found == verdict.lo}};
      if (found != verdict.lo)
        report["errors"].push_back({{"code", error_code_name(ErrorCode::InconsistentInvariants)},
                                    {"message", "brute force found " + std::to_string(found)}});
    }
    report["verdict"] = verdict_json(verdict);
    report["certificate"] = certificate_json(verdict);
  }
};

}  // namespace

RunOutput run_script(const SessionScript& script, const RunOptions& options) {
  RunOutput out;
  Session session(script, options);
  for (const auto& s : script.statements) {
    const auto* c = std::get_if<Command>(&s);
    if (!c) continue;
    out.reports.push_back(session.run(*c));
    if (!out.reports.back()["errors"].empty()) out.exit_code = 1;
  }
  return out;
}

std::string format_report(const json& r) {
  std::ostringstream out;
  out << "> " << r["command"].get<std::string>() << "\n";
  if (const auto& inv = r["invariants"]; inv.is_object()) {
    if (inv.contains("degree")) {
      out << "  degree " << inv["degree"] << "\n";
    } else {
      auto surf = [](const json& s) {
        return std::string(s["orientable"].get<bool>() ? "orientable" : "nonorientable") + " genus " +
               std::to_string(s["genus"].get<int>());
      };
      out << "  " << surf(inv["source"]) << " -> " << surf(inv["target"]) << "\n";
      const auto& a = inv["absolute_degree"];
      out << "  A = " << (a["value"].is_null() ? a["kind"].get<std::string>() : a["value"].dump())
          << ", index = " << inv["index_text"].get<std::string>();
      if (!inv["signed_degree"].is_null()) out << ", deg = " << inv["signed_degree"];
      if (!inv["orientation_true"].is_null())
        out << (inv["orientation_true"].get<bool>() ? ", orientation-true" : ", not orientation-true");
      out << "\n";
    }
  }
  if (const auto& w = r["witness"]; w.is_object()) {
    if (w["builder"].is_null())
      out << "  witness: " << w["unavailable"].get<std::string>() << "\n";
    else
      out << "  witness: " << w["builder"].get<std::string>() << ", " << w["source_vertices"] << " vertices, multiplicity "
          << w["multiplicity"] << "\n";
  }
  if (const auto& a = r["audit"]; a.is_object()) {
    if (a.contains("brute_force")) out << "  brute force: " << a["brute_force"] << "\n";
    if (a.contains("kneser") && a["kneser"].is_object())
      out << "  kneser: " << a["kneser"]["lhs"] << " >= " << a["kneser"]["rhs"]
          << (a["kneser"]["passed"].get<bool>() ? " holds" : " FAILS") << "\n";
    if (a.contains("branched"))
      out << "  branch data: " << (a["branched"]["declared"]["passed"].get<bool>() ? "consistent" : "INCONSISTENT")
          << "\n";
  }
  if (const auto& v = r["verdict"]; v.is_object()) {
    out << "  MMR = " << v["text"].get<std::string>();
    if (v.contains("theorem")) out << " (" << v["theorem"].get<std::string>() << ")";
    out << "\n";
  }
  for (const auto& e : r["errors"]) out << "  error: " << e["message"].get<std::string>() << "\n";
  return out.str();
}

}  // namespace mmr
