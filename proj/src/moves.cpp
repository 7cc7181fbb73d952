#include "khoveq/moves.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "khoveq/resolution.hpp"

namespace khoveq {

namespace {

// loop-arc position pairs per R1 remove-site variant (same table as the
// diagram module's kink handling)
constexpr int kKinkLoopPos[4][2] = {{1, 2}, {3, 0}, {2, 3}, {0, 1}};

Sign circle_sign(uint32_t sign_mask, int circle) {
  return (sign_mask >> circle & 1) ? Sign::Minus : Sign::Plus;
}

// A face corner covering positions {p, p+1} of a crossing is closed by the
// negative marker when {p, p+1} is {0,1} or {2,3}, by the positive marker
// otherwise.
bool corner_is_minus(int p) { return p == 0 || p == 2; }

// Flip the negative marker at crossing k back to positive. Exactly one of:
//   merge: the small circle (arc set == small_arcs) is absorbed; it must be
//          labeled '+', the partner keeps its label;
//   split: a new circle with arc set == small_arcs appears labeled '-', the
//          other child keeps the parent's label.
// Returns nothing when the label requirement fails (the term is zero).
std::optional<EnhancedState> unit_flip(const LinkDiagram& d,
                                       const EnhancedState& g, int k,
                                       const std::vector<int>& small_arcs) {
  uint32_t new_mask = g.marker_mask & ~(uint32_t{1} << k);
  Smoothing sm = smooth(d, g.marker_mask);
  Smoothing sn = smooth(d, new_mask);
  const auto& arcs = d.crossings()[k].arcs;
  int x = sm.circle_of_arc.at(arcs[0]);
  int y = sm.circle_of_arc.at(arcs[2]);

  std::map<int, Sign> touched;  // new circle -> label
  if (x != y) {
    // merge: which of the two is the small circle?
    int small_old;
    if (sm.arcs_of_circle[x] == small_arcs)
      small_old = x;
    else if (sm.arcs_of_circle[y] == small_arcs)
      small_old = y;
    else
      throw DiagramError("move homotopy: small circle not incident to the flip crossing");
    if (circle_sign(g.sign_mask, small_old) != Sign::Plus) return std::nullopt;
    int partner = x ^ y ^ small_old;
    if (sn.circle_count != sm.circle_count - 1)
      throw DiagramError("move homotopy: flip did not merge");
    touched[sn.circle_of_arc.at(arcs[0])] = circle_sign(g.sign_mask, partner);
  } else {
    // split: after the flip the children carry the chords (0,3) and (1,2)
    if (sn.circle_count != sm.circle_count + 1)
      throw DiagramError("move homotopy: flip did not split");
    int c0 = sn.circle_of_arc.at(arcs[0]);
    int c1 = sn.circle_of_arc.at(arcs[1]);
    int small_new;
    if (sn.arcs_of_circle[c0] == small_arcs)
      small_new = c0;
    else if (sn.arcs_of_circle[c1] == small_arcs)
      small_new = c1;
    else
      throw DiagramError("move homotopy: split did not produce the small circle");
    int other = c0 ^ c1 ^ small_new;
    touched[small_new] = Sign::Minus;
    touched[other] = circle_sign(g.sign_mask, x);
  }

  // carry the labels of all untouched circles over
  uint32_t out_signs = 0;
  for (int c = 0; c < sn.circle_count; ++c) {
    Sign s;
    auto it = touched.find(c);
    if (it != touched.end()) {
      s = it->second;
    } else {
      int old_c;
      if (sn.arcs_of_circle[c].empty()) {
        int offset = sn.circle_count - c;  // position from the end
        old_c = sm.circle_count - offset;
      } else {
        old_c = sm.circle_of_arc.at(sn.arcs_of_circle[c].front());
      }
      s = circle_sign(g.sign_mask, old_c);
    }
    if (s == Sign::Minus) out_signs |= uint32_t{1} << c;
  }
  return EnhancedState{new_mask, out_signs};
}

}  // namespace

ChainVector LinearMap::apply_gen(const EnhancedState& g) const {
  auto it = cols.find(g);
  return it == cols.end() ? ChainVector{} : it->second;
}

ChainVector LinearMap::apply(const ChainVector& v) const {
  ChainVector out;
  for (const auto& [g, c] : v) chain_add_all(out, apply_gen(g), c);
  return out;
}

int perm_sign(uint32_t mask, const std::vector<int>& suffix) {
  std::vector<int> lst;
  for (int k = 0; k < 32; ++k)
    if (mask >> k & 1) lst.push_back(k);
  int total = 0;
  for (int s : suffix) {
    auto it = std::find(lst.begin(), lst.end(), s);
    if (it == lst.end()) throw DiagramError("perm_sign: letter absent from word");
    total += static_cast<int>(lst.end() - it) - 1;
    lst.erase(it);
    lst.push_back(s);
  }
  return (total % 2) ? -1 : 1;
}

MoveTangle analyze_site(const LinkDiagram& d, const MoveSite& site) {
  MoveTangle t;
  t.kind = site.kind;
  const auto& cr = d.crossings();

  if (site.kind == MoveKind::R1) {
    int k = site.ids.at(0);
    int p = kKinkLoopPos[site.variant][0];
    int q = kKinkLoopPos[site.variant][1];
    if (cr[k].arcs[p] != cr[k].arcs[q])
      throw DiagramError("R1 site: positions do not carry a loop arc");
    t.cross = {k};
    t.small_arcs = {cr[k].arcs[p]};
    return t;
  }

  if (site.kind == MoveKind::R2) {
    int i = site.ids.at(0), j = site.ids.at(1);
    std::vector<int> bigon;
    for (int arc : d.arc_ids()) {
      int tc = d.arc_tail(arc).first, hc = d.arc_head(arc).first;
      if ((tc == i && hc == j) || (tc == j && hc == i)) bigon.push_back(arc);
    }
    if (bigon.size() != 2)
      throw DiagramError("R2 site: expected exactly two bigon arcs");
    std::sort(bigon.begin(), bigon.end());
    int a = -1, b = -1;
    for (int c : {i, j}) {
      std::vector<int> pos;
      for (int p = 0; p < 4; ++p)
        if (cr[c].arcs[p] == bigon[0] || cr[c].arcs[p] == bigon[1])
          pos.push_back(p);
      if (pos.size() != 2 || (pos[1] - pos[0]) % 2 == 0)
        throw DiagramError("R2 site: bigon arcs not on adjacent positions");
      int lo = (pos[0] + 1) % 4 == pos[1] ? pos[0] : pos[1];
      (corner_is_minus(lo) ? b : a) = c;
    }
    if (a < 0 || b < 0)
      throw DiagramError("R2 site: bigon corners must close with one positive "
                         "and one negative marker");
    t.cross = {a, b};
    t.small_arcs = bigon;
    return t;
  }

  // R3: enumerate the triangular faces on exactly the three site crossings
  // and pick the one whose corners close (+, -, +).
  std::set<int> want(site.ids.begin(), site.ids.end());
  int n = d.crossing_count();
  std::vector<int> alpha(4 * n, -1);
  for (int arc : d.arc_ids()) {
    auto tl = d.arc_tail(arc), hd = d.arc_head(arc);
    alpha[tl.first * 4 + tl.second] = hd.first * 4 + hd.second;
    alpha[hd.first * 4 + hd.second] = tl.first * 4 + tl.second;
  }
  std::set<std::set<int>> seen;
  for (int d0 = 0; d0 < 4 * n; ++d0) {
    std::vector<int> orbit;
    int x = d0;
    bool closed = true;
    do {
      orbit.push_back(x);
      int y = alpha[x];
      x = (y / 4) * 4 + (y % 4 + 1) % 4;
      if (orbit.size() > 3) { closed = false; break; }
    } while (x != d0);
    if (!closed || orbit.size() != 3) continue;
    std::set<int> crset{orbit[0] / 4, orbit[1] / 4, orbit[2] / 4};
    if (crset != want) continue;
    std::set<int> key(orbit.begin(), orbit.end());
    if (!seen.insert(key).second) continue;

    // one corner per crossing; exactly one must be a minus corner
    int b = -1, minus_corners = 0;
    for (int o : orbit) {
      int y = alpha[o];
      if (corner_is_minus(y % 4)) { ++minus_corners; b = y / 4; }
    }
    if (minus_corners != 1) continue;

    // strand roles: the triangle arc over at both of its corners is the top
    // strand, under at both the bottom, mixed the middle
    std::vector<int> arcs3;
    int top = -1, bottom = -1, middle = -1;
    bool good = true;
    for (size_t idx = 0; idx < 3; ++idx) {
      int o = orbit[idx];
      int y = alpha[o];
      arcs3.push_back(cr[o / 4].arcs[o % 4]);
      bool over1 = (o % 4) % 2 == 1, over2 = (y % 4) % 2 == 1;
      int& role = over1 && over2 ? top : (!over1 && !over2 ? bottom : middle);
      if (role != -1) { good = false; break; }
      role = static_cast<int>(idx);
    }
    if (!good || top < 0 || bottom < 0 || middle < 0) continue;

    auto ends = [&](int idx) {
      int o = orbit[idx], y = alpha[o];
      return std::set<int>{o / 4, y / 4};
    };
    auto common = [&](int u, int v) {
      for (int c : ends(u))
        if (ends(v).count(c)) return c;
      return -1;
    };
    int a = common(middle, bottom);
    int c = common(top, middle);
    if (a < 0 || c < 0 || common(top, bottom) != b) continue;
    t.cross = {a, b, c};
    std::sort(arcs3.begin(), arcs3.end());
    t.small_arcs = arcs3;
    return t;
  }
  throw DiagramError("R3 site: no triangle face closing with one negative "
                     "marker corner");
}

ChainVector homotopy_h(const LinkDiagram& d, const MoveTangle& t,
                       const EnhancedState& g) {
  ChainVector out;
  uint32_t w = g.marker_mask;
  auto bit = [&](int k) { return (w >> k & 1) != 0; };

  if (t.kind == MoveKind::R1) {
    int k = t.cross[0];
    if (!bit(k)) return out;
    if (auto r = unit_flip(d, g, k, t.small_arcs))
      chain_add(out, *r, BivariatePoly(perm_sign(w, {k})));
    return out;
  }

  int a = t.cross[0], b = t.cross[1];
  if (t.kind == MoveKind::R3 && bit(t.cross[2])) return out;

  if (!bit(a) && bit(b)) {
    // small circle present: absorb it (requires label '+') and flip b
    if (auto r = unit_flip(d, g, b, t.small_arcs))
      chain_add(out, *r, BivariatePoly(perm_sign(w, {b})));
  } else if (bit(a) && bit(b)) {
    // one step above the small-circle state: flip a, creating the small
    // circle labeled '-'
    uint32_t w2 = w & ~(uint32_t{1} << a);
    if (auto r = unit_flip(d, g, a, t.small_arcs))
      chain_add(out, *r,
                BivariatePoly(-perm_sign(w, {a, b}) * perm_sign(w2, {b})));
  }
  return out;
}

LinearMap homotopy_matrix(const ComplexRepr& cx, const MoveTangle& t) {
  LinearMap h;
  for (const auto& deg : cx.degrees)
    for (const auto& g : deg) {
      ChainVector col = homotopy_h(cx.diagram, t, g);
      if (!col.empty()) h.cols.emplace(g, std::move(col));
    }
  return h;
}

LinearMap retraction_matrix(const ComplexRepr& cx, const LinearMap& h) {
  LinearMap rho;
  for (const auto& deg : cx.degrees)
    for (const auto& g : deg) {
      ChainVector col;
      chain_add(col, g, BivariatePoly(1));
      chain_add_all(col, differential(cx.diagram, cx.calc, h.apply_gen(g)),
                    BivariatePoly(-1));
      chain_add_all(col, h.apply(differential(cx.diagram, cx.calc, g)),
                    BivariatePoly(-1));
      rho.cols.emplace(g, std::move(col));
    }
  return rho;
}

namespace {

std::string gen_str(const ComplexRepr& cx, const EnhancedState& g) {
  return generator_str(g, cx.diagram.crossing_count(),
                       cx.smoothing(g.marker_mask).circle_count);
}

bool chains_equal(const ChainVector& x, const ChainVector& y) { return x == y; }

}  // namespace

CheckReport verify_chain_map(const ComplexRepr& cx, const LinearMap& f) {
  CheckReport rep;
  for (const auto& deg : cx.degrees)
    for (const auto& g : deg) {
      ChainVector lhs = differential(cx.diagram, cx.calc, f.apply_gen(g));
      ChainVector rhs = f.apply(differential(cx.diagram, cx.calc, g));
      if (!chains_equal(lhs, rhs)) {
        rep.ok = false;
        rep.witnesses.push_back("delta f != f delta on " + gen_str(cx, g));
      }
    }
  return rep;
}

CheckReport verify_homotopy(const ComplexRepr& cx, const LinearMap& h,
                            const LinearMap& rho) {
  CheckReport rep;
  for (const auto& deg : cx.degrees)
    for (const auto& g : deg) {
      ChainVector lhs = differential(cx.diagram, cx.calc, h.apply_gen(g));
      chain_add_all(lhs, h.apply(differential(cx.diagram, cx.calc, g)));
      chain_add_all(lhs, rho.apply_gen(g));
      ChainVector id;
      chain_add(id, g, BivariatePoly(1));
      if (!chains_equal(lhs, id)) {
        rep.ok = false;
        rep.witnesses.push_back("delta h + h delta != id - rho on " +
                                gen_str(cx, g));
      }
      if (!h.apply(h.apply_gen(g)).empty()) {
        rep.ok = false;
        rep.witnesses.push_back("h h != 0 on " + gen_str(cx, g));
      }
      if (!chains_equal(rho.apply(rho.apply_gen(g)), rho.apply_gen(g))) {
        rep.ok = false;
        rep.witnesses.push_back("rho not idempotent on " + gen_str(cx, g));
      }
    }
  return rep;
}

nlohmann::json MoveCheckReport::to_json() const {
  auto sub = [](const CheckReport& r) {
    return nlohmann::json{{"ok", r.ok}, {"witnesses", r.witnesses}};
  };
  return {{"ok", ok},
          {"move", move},
          {"site", site_crossings},
          {"chain_map", sub(chain_map)},
          {"homotopy", sub(homotopy)}};
}

MoveCheckReport verify_move(const LinkDiagram& d, const MoveSite& site,
                            const FrobeniusCalculus& calc) {
  MoveCheckReport rep;
  rep.move = site.kind == MoveKind::R1 ? "r1"
             : site.kind == MoveKind::R2 ? "r2" : "r3";
  rep.site_crossings = site.ids;
  ComplexRepr cx = build_complex(d, calc);
  MoveTangle t = analyze_site(d, site);
  LinearMap h = homotopy_matrix(cx, t);
  LinearMap rho = retraction_matrix(cx, h);
  rep.chain_map = verify_chain_map(cx, rho);
  rep.homotopy = verify_homotopy(cx, h, rho);
  rep.ok = rep.chain_map.ok && rep.homotopy.ok;
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<InvarianceCheck> default_invariance_checks() {
  return {{Specialization::integers(0, 0), true, "khovanov"},
          {Specialization::integers(0, 1), false, "lee"},
          {Specialization::mod2(0, 0), true, "khovanov-mod2"}};
}

bool same_homology(const HomologyResult& x, const HomologyResult& y) {
  if (x.groups.size() != y.groups.size()) return false;
  for (size_t k = 0; k < x.groups.size(); ++k) {
    const auto& a = x.groups[k];
    const auto& b = y.groups[k];
    if (a.i != b.i || a.j != b.j || a.rank != b.rank || a.torsion != b.torsion)
      return false;
  }
  return true;
}

nlohmann::json InvarianceReport::to_json() const {
  return {{"ok", ok}, {"seed", seed}, {"trail", trail}, {"failures", failures}};
}

namespace {

struct Candidate {
  std::string desc;
  LinkDiagram result;
};

std::vector<HomologyResult> homology_fingerprint(
    const LinkDiagram& d, const std::vector<InvarianceCheck>& checks) {
  ComplexRepr cx = build_complex(d, FrobeniusCalculus::universal());
  std::vector<HomologyResult> out;
  for (const auto& c : checks) out.push_back(homology_at(cx, c.sp, c.bigraded));
  return out;
}

}  // namespace

InvarianceReport verify_invariance(const LinkDiagram& d, uint64_t seed,
                                   int length,
                                   const std::vector<InvarianceCheck>& checks,
                                   int max_crossings) {
  InvarianceReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  auto baseline = homology_fingerprint(d, checks);
  LinkDiagram cur = d.canonicalized();

  for (int step = 0; step < length; ++step) {
    int n = cur.crossing_count();
    // candidate categories, in fixed order: removals, slides, insertions
    std::vector<std::vector<Candidate>> cats(5);

    for (const auto& s : cur.find_move_sites(MoveKind::R1, MoveDirection::Remove)) {
      try {
        auto r = cur.apply_move(s, MoveDirection::Remove);
        cats[0].push_back({"r1 remove crossing " + std::to_string(s.ids[0]),
                           r.diagram.canonicalized()});
      } catch (const DiagramError&) {}
    }
    for (const auto& s : cur.find_move_sites(MoveKind::R2, MoveDirection::Remove)) {
      try {
        auto r = cur.apply_move(s, MoveDirection::Remove);
        cats[1].push_back({"r2 remove crossings (" + std::to_string(s.ids[0]) +
                               "," + std::to_string(s.ids[1]) + ")",
                           r.diagram.canonicalized()});
      } catch (const DiagramError&) {}
    }
    for (const auto& s : cur.find_move_sites(MoveKind::R3)) {
      try {
        auto r = cur.apply_move(s, MoveDirection::Insert);
        if (!r.diagram.planar()) continue;
        cats[2].push_back({"r3 slide crossings (" + std::to_string(s.ids[0]) +
                               "," + std::to_string(s.ids[1]) + "," +
                               std::to_string(s.ids[2]) + ")",
                           r.diagram.canonicalized()});
      } catch (const DiagramError&) {}
    }
    if (n + 1 <= max_crossings) {
      for (int arc : cur.arc_ids())
        for (int v = 0; v < 4; ++v) {
          try {
            auto r = cur.apply_move({MoveKind::R1, {arc}, v},
                                    MoveDirection::Insert);
            if (!r.diagram.planar()) continue;
            cats[3].push_back({"r1 insert arc " + std::to_string(arc) +
                                   " variant " + std::to_string(v),
                               r.diagram.canonicalized()});
          } catch (const DiagramError&) {}
        }
    }
    if (n + 2 <= max_crossings) {
      for (int x : cur.arc_ids())
        for (int y : cur.arc_ids()) {
          if (x == y) continue;
          for (int v = 0; v < 8; ++v) {
            try {
              auto r = cur.apply_move({MoveKind::R2, {x, y}, v},
                                      MoveDirection::Insert);
              if (!r.diagram.planar()) continue;
              cats[4].push_back({"r2 insert arcs (" + std::to_string(x) + "," +
                                     std::to_string(y) + ") variant " +
                                     std::to_string(v),
                                 r.diagram.canonicalized()});
            } catch (const DiagramError&) {}
          }
        }
    }

    std::vector<int> nonempty;
    for (int c = 0; c < 5; ++c)
      if (!cats[c].empty()) nonempty.push_back(c);
    if (nonempty.empty()) {
      rep.trail.push_back("step " + std::to_string(step) + ": no moves available");
      break;
    }
    auto& cat = cats[nonempty[rng() % nonempty.size()]];
    Candidate& pick = cat[rng() % cat.size()];
    cur = pick.result;
    std::string line = "step " + std::to_string(step) + ": " + pick.desc +
                       " -> " + std::to_string(cur.crossing_count()) +
                       " crossings";

    auto now = homology_fingerprint(cur, checks);
    for (size_t c = 0; c < checks.size(); ++c) {
      if (!same_homology(baseline[c], now[c])) {
        rep.ok = false;
        rep.failures.push_back("homology changed (" + checks[c].name +
                               ") after: " + line);
      }
    }
    rep.trail.push_back(line);
  }
  return rep;
}

}  // namespace khoveq
