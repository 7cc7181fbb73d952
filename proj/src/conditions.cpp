#include "khoveq/conditions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "khoveq/corpus.hpp"
#include "khoveq/resolution.hpp"

namespace khoveq {

namespace {

Sign circle_sign(uint32_t sign_mask, int circle) {
  return (sign_mask >> circle & 1) ? Sign::Minus : Sign::Plus;
}

uint32_t with_sign(uint32_t sign_mask, int circle, Sign s) {
  uint32_t bit = uint32_t{1} << circle;
  return s == Sign::Minus ? (sign_mask | bit) : (sign_mask & ~bit);
}

// Local data of a closed-up bigon tangle: a is the crossing whose positive
// marker closes the bigon face, b the one whose negative marker does; the
// p cap sits at a, the q cap at b.
struct BigonClosure {
  LinkDiagram d;
  int a = 0, b = 0;
  std::vector<int> small_arcs;  // sorted
  int p_arc = 0, q_arc = 0;     // representative arcs of the two caps
  uint32_t caps_mask = 0;       // markers of S_{++} (all positive)
  uint32_t circle_mask = 0;     // markers of the small-circle states
  bool same_component = false;  // caps on one circle?
};

BigonClosure analyze_closure(const LinkDiagram& d) {
  // walk the faces of the 4-valent map; pick a 2-gon whose corners close
  // with one positive and one negative marker
  int n = d.crossing_count();
  std::vector<int> alpha(4 * n, -1);
  for (int arc : d.arc_ids()) {
    auto tl = d.arc_tail(arc), hd = d.arc_head(arc);
    alpha[tl.first * 4 + tl.second] = hd.first * 4 + hd.second;
    alpha[hd.first * 4 + hd.second] = tl.first * 4 + tl.second;
  }
  for (int d0 = 0; d0 < 4 * n; ++d0) {
    std::vector<int> orbit;
    int x = d0;
    bool closed = true;
    do {
      orbit.push_back(x);
      int y = alpha[x];
      x = (y / 4) * 4 + (y % 4 + 1) % 4;
      if (orbit.size() > 2) { closed = false; break; }
    } while (x != d0);
    if (!closed || orbit.size() != 2) continue;
    int c0 = orbit[0] / 4, c1 = orbit[1] / 4;
    if (c0 == c1) continue;
    // corner at the head of each dart; {0,1}/{2,3} closes with the negative
    // marker, {1,2}/{3,0} with the positive one
    auto minus_corner = [&](int o) { return alpha[o] % 4 == 0 || alpha[o] % 4 == 2; };
    bool m0 = minus_corner(orbit[0]), m1 = minus_corner(orbit[1]);
    if (m0 == m1) continue;

    BigonClosure bc;
    bc.d = d;
    bc.b = m0 ? alpha[orbit[0]] / 4 : alpha[orbit[1]] / 4;
    bc.a = c0 == bc.b ? c1 : c0;
    for (int o : orbit) bc.small_arcs.push_back(d.crossings()[o / 4].arcs[o % 4]);
    std::sort(bc.small_arcs.begin(), bc.small_arcs.end());
    auto cap_arc = [&](int cr) {
      for (int p = 0; p < 4; ++p) {
        int arc = d.crossings()[cr].arcs[p];
        if (arc != bc.small_arcs[0] && arc != bc.small_arcs[1]) return arc;
      }
      throw DiagramError("bigon closure: no cap arc at crossing");
    };
    bc.p_arc = cap_arc(bc.a);
    bc.q_arc = cap_arc(bc.b);
    bc.caps_mask = 0;
    bc.circle_mask = uint32_t{1} << bc.b;
    Smoothing cs = smooth(d, bc.circle_mask);
    if (cs.arcs_of_circle[cs.circle_of_arc.at(bc.small_arcs[0])] != bc.small_arcs)
      throw DiagramError("bigon closure: face is not a state circle");
    bc.same_component =
        cs.circle_of_arc.at(bc.p_arc) == cs.circle_of_arc.at(bc.q_arc);
    return bc;
  }
  throw DiagramError("bigon closure: no mixed-corner 2-gon face");
}

// Small-circle enhanced state with the given small and cap labels.
EnhancedState circle_state(const BigonClosure& bc, Sign small, Sign p, Sign q) {
  Smoothing cs = smooth(bc.d, bc.circle_mask);
  uint32_t signs = 0;
  signs = with_sign(signs, cs.circle_of_arc.at(bc.small_arcs[0]), small);
  signs = with_sign(signs, cs.circle_of_arc.at(bc.p_arc), p);
  signs = with_sign(signs, cs.circle_of_arc.at(bc.q_arc), q);
  return {bc.circle_mask, signs};
}

// Keep the small-circle-state terms whose small circle carries `small`.
ChainVector project_small(const BigonClosure& bc, const ChainVector& v, Sign small) {
  Smoothing cs = smooth(bc.d, bc.circle_mask);
  int small_idx = cs.circle_of_arc.at(bc.small_arcs[0]);
  ChainVector out;
  for (const auto& [g, c] : v)
    if (g.marker_mask == bc.circle_mask &&
        circle_sign(g.sign_mask, small_idx) == small)
      chain_add(out, g, c);
  return out;
}

std::string chain_str(const BigonClosure& bc, const ChainVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*"
       << generator_str(g, bc.d.crossing_count(),
                        smooth(bc.d, g.marker_mask).circle_count);
  }
  return os.str();
}

std::vector<std::pair<Sign, Sign>> label_cases(bool same_component) {
  using P = std::pair<Sign, Sign>;
  if (same_component)
    return {P{Sign::Minus, Sign::Minus}, P{Sign::Plus, Sign::Plus}};
  return {P{Sign::Minus, Sign::Minus}, P{Sign::Plus, Sign::Plus},
          P{Sign::Plus, Sign::Minus}, P{Sign::Minus, Sign::Plus}};
}

}  // namespace

SignCombo composite_expand(const FrobeniusCalculus& calc, Sign p, Sign q,
                           bool same_component) {
  if (!same_component) return calc.composite_split_of_merge(p, q);
  if (p != q)
    throw DiagramError("composite_expand: caps on one circle force p == q");
  SignCombo out;
  for (const auto& [uv, c] : calc.comultiply(p).terms())
    for (const auto& [w, c2] : calc.multiply(uv[0], uv[1]).terms())
      out.add({w[0], w[0]}, c * c2);
  return out;
}

LinkDiagram bigon_closure_one_circle() {
  // both caps of the bigon tangle joined into one circle (two components)
  return LinkDiagram::parse("X(1,3,2,4) X(2,3,1,4)");
}

LinkDiagram bigon_closure_two_circles() {
  // caps closed off separately (one component, an unknot)
  return LinkDiagram::parse("X(4,2,1,1) X(3,2,4,3)");
}

ConditionReport check_merge_identities(const FrobeniusCalculus& calc) {
  ConditionReport rep;
  auto expect = [&](Sign p, Sign q, Sign r) {
    if (calc.multiply(p, q) != SignCombo::single({r})) {
      rep.ok = false;
      std::ostringstream os;
      os << "m(" << sign_char(p) << "," << sign_char(q) << ") = "
         << calc.multiply(p, q).str() << ", expected (" << sign_char(r) << ")";
      rep.witnesses.push_back(os.str());
    }
  };
  expect(Sign::Plus, Sign::Minus, Sign::Plus);
  expect(Sign::Minus, Sign::Plus, Sign::Plus);
  expect(Sign::Minus, Sign::Minus, Sign::Minus);
  return rep;
}

ConditionReport check_one_to_one(const FrobeniusCalculus& calc) {
  ConditionReport rep;
  for (LinkDiagram d : {bigon_closure_one_circle(), bigon_closure_two_circles()}) {
    BigonClosure bc = analyze_closure(d);
    Smoothing caps = smooth(d, bc.caps_mask);
    Smoothing cs = smooth(d, bc.circle_mask);
    int small_idx = cs.circle_of_arc.at(bc.small_arcs[0]);
    for (uint32_t signs = 0; signs < (uint32_t{1} << caps.circle_count); ++signs) {
      EnhancedState g{bc.caps_mask, signs};
      ChainVector got =
          project_small(bc, differential(d, calc, g), Sign::Plus);
      // expected: the same cap labels with a '+'-labeled small circle
      uint32_t exp_signs = 0;
      for (int c = 0; c < cs.circle_count; ++c) {
        Sign s = c == small_idx
                     ? Sign::Plus
                     : circle_sign(signs, caps.circle_of_arc.at(
                                              cs.arcs_of_circle[c].front()));
        exp_signs = with_sign(exp_signs, c, s);
      }
      ChainVector want;
      chain_add(want, EnhancedState{bc.circle_mask, exp_signs}, BivariatePoly(1));
      if (got != want) {
        rep.ok = false;
        rep.witnesses.push_back(
            "one-to-one fails on " +
            generator_str(g, d.crossing_count(), caps.circle_count) + " (" +
            (bc.same_component ? "caps joined" : "caps split") +
            "): got " + chain_str(bc, got) + ", want " + chain_str(bc, want));
      }
    }
  }
  return rep;
}

ConditionReport check_small_circle_composite(const FrobeniusCalculus& calc) {
  ConditionReport rep;
  for (LinkDiagram d : {bigon_closure_one_circle(), bigon_closure_two_circles()}) {
    BigonClosure bc = analyze_closure(d);
    for (auto [p, q] : label_cases(bc.same_component)) {
      // LHS term 1: S_{+-,-}(m(p,+), q)
      ChainVector lhs;
      for (const auto& [w, c] : calc.multiply(p, Sign::Plus).terms())
        chain_add(lhs, circle_state(bc, Sign::Minus, w[0],
                                    bc.same_component ? w[0] : q), c);
      // LHS term 2: the '-'-small part of delta(S_{++}(p,q)), with the
      // labels living on the cap circles of the all-positive smoothing
      Smoothing caps = smooth(d, bc.caps_mask);
      uint32_t caps_signs = 0;
      caps_signs = with_sign(caps_signs, caps.circle_of_arc.at(bc.p_arc), p);
      caps_signs = with_sign(caps_signs, caps.circle_of_arc.at(bc.q_arc), q);
      EnhancedState g{bc.caps_mask, caps_signs};
      chain_add_all(lhs, project_small(bc, differential(d, calc, g), Sign::Minus));

      // RHS: the composite labels
      ChainVector rhs;
      bool representable = true;
      SignCombo comp = composite_expand(calc, p, q, bc.same_component);
      for (const auto& [uv, c] : comp.terms()) {
        if (bc.same_component && uv[0] != uv[1]) { representable = false; break; }
        chain_add(rhs, circle_state(bc, Sign::Minus, uv[0], uv[1]), c);
      }
      if (!representable || lhs != rhs) {
        rep.ok = false;
        std::ostringstream os;
        os << "small-circle composite fails for (p,q)=(" << sign_char(p) << ","
           << sign_char(q) << ") ("
           << (bc.same_component ? "caps joined" : "caps split")
           << "): lhs " << chain_str(bc, lhs) << ", rhs "
           << (representable ? chain_str(bc, rhs) : "not representable");
        rep.witnesses.push_back(os.str());
      }
    }
  }
  return rep;
}

nlohmann::json CalculusVerdict::to_json() const {
  auto sub = [](const ConditionReport& r) {
    return nlohmann::json{{"ok", r.ok}, {"witnesses", r.witnesses}};
  };
  return {{"r1_invariant", r1},
          {"r2_r3_invariant", r23},
          {"delta_squared", delta_squared},
          {"delta_squared_witnesses", delta_squared_witnesses},
          {"merge_identities", sub(merges)},
          {"one_to_one", sub(one_to_one)},
          {"small_circle_composite", sub(composite)}};
}

CalculusVerdict check_calculus(const FrobeniusCalculus& calc) {
  CalculusVerdict v;
  v.merges = check_merge_identities(calc);
  v.one_to_one = check_one_to_one(calc);
  v.composite = check_small_circle_composite(calc);
  v.r1 = v.merges.ok;
  v.r23 = v.merges.ok && v.one_to_one.ok && v.composite.ok;
  for (const char* name : {"trefoil", "figure8"}) {
    ComplexRepr cx = build_complex(corpus_diagram(name), calc);
    CheckReport d2 = verify_delta_squared(cx);
    if (!d2.ok) {
      v.delta_squared = false;
      for (const auto& w : d2.witnesses)
        v.delta_squared_witnesses.push_back(std::string(name) + ": " + w);
    }
  }
  return v;
}

FrobeniusCalculus broken_merge_calculus() {
  FrobeniusCalculus c = FrobeniusCalculus::universal();
  c.set_merge(Sign::Minus, Sign::Minus, SignCombo::single({Sign::Plus}));
  return c;
}

FrobeniusCalculus broken_split_calculus() {
  FrobeniusCalculus c = FrobeniusCalculus::universal();
  // drop the (+,-) and (-,+) terms of Delta(-)
  SignCombo d;
  d.add({Sign::Minus, Sign::Minus}, BivariatePoly::monomial(1, 0, -1));
  c.set_split(Sign::Minus, d);
  return c;
}

}  // namespace khoveq
