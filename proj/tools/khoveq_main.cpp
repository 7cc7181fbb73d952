// khoveq: Khovanov-type link homology under the universal differential
// delta_{s,t} over Z[s,t].
//
// Commands: homology, verify {delta-squared|move|invariance}, check-calculus,
// jones, parse. Every command writes a single JSON document to stdout (or
// --out) and exits 0 exactly when its report contains no failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "khoveq/conditions.hpp"
#include "khoveq/corpus.hpp"
#include "khoveq/invariants.hpp"
#include "khoveq/moves.hpp"

using namespace khoveq;
using nlohmann::json;

namespace {

// --pd accepts a built-in corpus name, a file path, or inline PD text.
LinkDiagram load_diagram(const std::string& pd) {
  for (const auto& [name, text] : corpus_diagrams())
    if (name == pd) return LinkDiagram::parse(text);
  if (std::filesystem::exists(pd)) {
    std::ifstream in(pd);
    std::stringstream ss;
    ss << in.rdbuf();
    return LinkDiagram::parse(ss.str());
  }
  return LinkDiagram::parse(pd);
}

FrobeniusCalculus load_calculus(const std::string& path) {
  if (path.empty()) return FrobeniusCalculus::universal();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calculus file: " + path);
  json doc = json::parse(in);
  return FrobeniusCalculus::from_json(doc);
}

json diagram_json(const LinkDiagram& d) {
  return {{"pd", d.canonicalized().to_pd_text()},
          {"crossings", d.crossing_count()},
          {"components", d.component_count()},
          {"writhe", d.writhe()},
          {"planar", d.planar()}};
}

mpz_class parse_int(const std::string& v, const std::string& flag) {
  try {
    return mpz_class(v);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("--" + flag + " expects an integer, got '" + v + "'");
  }
}

struct SpecFlags {
  std::string ring = "z";
  std::string s = "0";
  std::string t = "0";
};

// mod2poly takes s as the polynomial variable itself; z and mod2 need integers
Specialization make_spec(const SpecFlags& f) {
  if (f.ring == "mod2poly") {
    if (f.s != "s" && f.s != "0")
      throw std::runtime_error("--ring mod2poly uses --s s (the variable)");
    if (f.t != "0") throw std::runtime_error("--ring mod2poly forces --t 0");
    return Specialization::bar_natan();
  }
  mpz_class sv = parse_int(f.s, "s"), tv = parse_int(f.t, "t");
  if (f.ring == "z") return Specialization::integers(sv, tv);
  if (f.ring == "mod2") return Specialization::mod2(sv, tv);
  throw std::runtime_error("--ring must be one of z, mod2, mod2poly");
}

int emit(const json& doc, const std::string& out, bool ok) {
  std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
  }
  return ok ? 0 : 1;
}

json laurent_json(const LaurentPoly& p, const std::string& var) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, c.get_str()});
  return {{"variable", var}, {"terms", terms}, {"str", p.str(var)}};
}

int parse_moves_flag(const std::string& moves) {
  if (moves.rfind("random:", 0) != 0)
    throw std::runtime_error("--moves expects random:<count>");
  int n = std::stoi(moves.substr(7));
  if (n < 0) throw std::runtime_error("--moves count must be >= 0");
  return n;
}

int cmd_homology(const std::string& pd, const SpecFlags& f, bool bigraded,
                 const std::string& calculus, const std::string& out) {
  LinkDiagram d = load_diagram(pd);
  Specialization sp = make_spec(f);
  if (bigraded && !sp.preserves_j())
    throw std::runtime_error("--bigraded needs the j-preserving point s=0, t=0");
  ComplexRepr cx = build_complex(d, load_calculus(calculus));
  HomologyResult h = sp.ring == RingTag::Mod2Poly ? mod2_bar_natan(cx)
                                                  : homology_at(cx, sp, bigraded);
  json doc = {{"command", "homology"},
              {"diagram", diagram_json(d)},
              {"bigraded", bigraded},
              {"homology", h.to_json()}};
  return emit(doc, out, true);
}

int cmd_verify_delta_squared(const std::string& pd, const std::string& calculus,
                             const std::string& out) {
  LinkDiagram d = load_diagram(pd);
  ComplexRepr cx = build_complex(d, load_calculus(calculus));
  CheckReport rep = verify_delta_squared(cx);
  json doc = {{"command", "verify delta-squared"},
              {"diagram", diagram_json(d)},
              {"ok", rep.ok},
              {"witnesses", rep.witnesses}};
  return emit(doc, out, rep.ok);
}

int cmd_verify_move(const std::string& pd, const std::string& type,
                    const std::string& calculus, const std::string& out) {
  LinkDiagram d = load_diagram(pd);
  FrobeniusCalculus calc = load_calculus(calculus);
  MoveKind kind = type == "r1"   ? MoveKind::R1
                  : type == "r2" ? MoveKind::R2
                  : type == "r3" ? MoveKind::R3
                                 : throw std::runtime_error("--type must be r1, r2 or r3");
  json sites = json::array();
  std::vector<std::string> skipped;
  bool ok = true;
  int verified = 0;
  for (const auto& s : d.find_move_sites(kind, MoveDirection::Remove)) {
    try {
      MoveCheckReport rep = verify_move(d, s, calc);
      sites.push_back(rep.to_json());
      ok = ok && rep.ok;
      ++verified;
    } catch (const DiagramError& e) {
      std::string ids;
      for (int id : s.ids) ids += (ids.empty() ? "" : ",") + std::to_string(id);
      skipped.push_back("site (" + ids + "): " + e.what());
    }
  }
  if (verified == 0) ok = false;
  json doc = {{"command", "verify move"},
              {"type", type},
              {"diagram", diagram_json(d)},
              {"ok", ok},
              {"sites", sites},
              {"skipped", skipped}};
  return emit(doc, out, ok);
}

int cmd_verify_invariance(const std::string& pd, const std::string& moves,
                          uint64_t seed, int max_crossings,
                          const std::string& out) {
  LinkDiagram d = load_diagram(pd);
  int length = parse_moves_flag(moves);
  auto checks = default_invariance_checks();
  InvarianceReport rep = verify_invariance(d, seed, length, checks, max_crossings);
  json names = json::array();
  for (const auto& c : checks) names.push_back(c.name);
  json doc = {{"command", "verify invariance"},
              {"diagram", diagram_json(d)},
              {"moves", moves},
              {"max_crossings", max_crossings},
              {"checks", names},
              {"report", rep.to_json()}};
  return emit(doc, out, rep.ok);
}

int cmd_check_calculus(const std::string& calculus, const std::string& out) {
  FrobeniusCalculus calc = load_calculus(calculus);
  CalculusVerdict v = check_calculus(calc);
  bool ok = v.r1 && v.r23 && v.delta_squared;
  json doc = {{"command", "check-calculus"},
              {"calculus", calculus.empty() ? "universal" : calculus},
              {"verdict", v.to_json()}};
  return emit(doc, out, ok);
}

int cmd_jones(const std::string& pd, const std::string& out) {
  LinkDiagram d = load_diagram(pd);
  ComplexRepr cx = build_complex(d, FrobeniusCalculus::universal());
  LaurentPoly chi = graded_euler(cx);
  bool ok = chi_matches_bracket(d, cx);
  json doc = {{"command", "jones"},
              {"diagram", diagram_json(d)},
              {"graded_euler", laurent_json(chi, "q")},
              {"bracket", laurent_json(kauffman_bracket(d), "A")},
              {"matches_bracket", ok}};
  return emit(doc, out, ok);
}

int cmd_parse(const std::string& pd, const std::string& out) {
  LinkDiagram d = load_diagram(pd);
  json arcs = json::array();
  for (int a : d.arc_ids()) arcs.push_back(a);
  json doc = {{"command", "parse"},
              {"diagram", diagram_json(d)},
              {"arcs", arcs},
              {"extra_circles", d.extra_circles()},
              {"n_plus", d.n_plus()},
              {"n_minus", d.n_minus()}};
  return emit(doc, out, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov-type link homology with the universal differential"};
  app.require_subcommand(1);

  std::string pd, calculus, out, type = "r1", moves = "random:5";
  SpecFlags spec;
  bool bigraded = false;
  uint64_t seed = 1;
  int max_crossings = 8;

  auto add_pd = [&](CLI::App* c) {
    c->add_option("--pd", pd, "corpus name, PD file path, or inline PD text")
        ->required();
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--calculus", calculus, "JSON calculus file (default: universal)");
    c->add_option("--out", out, "write the JSON report here instead of stdout");
  };

  auto* hom = app.add_subcommand("homology", "homology at a specialization");
  add_pd(hom);
  add_common(hom);
  hom->add_option("--ring", spec.ring, "z, mod2 or mod2poly");
  hom->add_option("--s", spec.s, "value of s (or 's' with --ring mod2poly)");
  hom->add_option("--t", spec.t, "value of t");
  hom->add_flag("--bigraded", bigraded, "split by quantum grading (s=0, t=0 only)");

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* vds = verify->add_subcommand("delta-squared", "delta^2 == 0 over Z[s,t]");
  add_pd(vds);
  add_common(vds);
  auto* vmv = verify->add_subcommand("move", "chain homotopy suite at move sites");
  add_pd(vmv);
  add_common(vmv);
  vmv->add_option("--type", type, "r1, r2 or r3")->required();
  auto* vin = verify->add_subcommand("invariance", "homology under random moves");
  add_pd(vin);
  vin->add_option("--out", out, "write the JSON report here instead of stdout");
  vin->add_option("--moves", moves, "random:<count> (default random:5)");
  vin->add_option("--seed", seed, "RNG seed");
  vin->add_option("--max-crossings", max_crossings, "crossing budget for moves");

  auto* chk = app.add_subcommand("check-calculus", "invariance conditions for a calculus");
  add_common(chk);

  auto* jns = app.add_subcommand("jones", "graded Euler characteristic and bracket");
  add_pd(jns);
  jns->add_option("--out", out, "write the JSON report here instead of stdout");

  auto* prs = app.add_subcommand("parse", "parse and canonicalize a diagram");
  add_pd(prs);
  prs->add_option("--out", out, "write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (hom->parsed())
      return cmd_homology(pd, spec, bigraded, calculus, out);
    if (vds->parsed()) return cmd_verify_delta_squared(pd, calculus, out);
    if (vmv->parsed()) return cmd_verify_move(pd, type, calculus, out);
    if (vin->parsed())
      return cmd_verify_invariance(pd, moves, seed, max_crossings, out);
    if (chk->parsed()) return cmd_check_calculus(calculus, out);
    if (jns->parsed()) return cmd_jones(pd, out);
    if (prs->parsed()) return cmd_parse(pd, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
