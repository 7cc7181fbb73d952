#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "khoveq/conditions.hpp"
#include "khoveq/corpus.hpp"
#include "khoveq/moves.hpp"

using namespace khoveq;

namespace {

const Sign P = Sign::Plus, M = Sign::Minus;

ChainVector one(const EnhancedState& g) {
  ChainVector v;
  chain_add(v, g, BivariatePoly(1));
  return v;
}

uint32_t with_sign(uint32_t mask, int circle, Sign s) {
  uint32_t bit = uint32_t{1} << circle;
  return s == Sign::Minus ? (mask | bit) : (mask & ~bit);
}

Sign sign_at(uint32_t mask, int circle) {
  return (mask >> circle & 1) ? Sign::Minus : Sign::Plus;
}

ChainVector h_chain(const LinkDiagram& d, const MoveTangle& t,
                    const ChainVector& v) {
  ChainVector out;
  for (const auto& [g, c] : v) chain_add_all(out, homotopy_h(d, t, g), c);
  return out;
}

// (h delta + delta h) applied to a chain
ChainVector hd_dh(const LinkDiagram& d, const FrobeniusCalculus& calc,
                  const MoveTangle& t, const ChainVector& v) {
  ChainVector out = differential(d, calc, h_chain(d, t, v));
  chain_add_all(out, h_chain(d, t, differential(d, calc, v)));
  return out;
}

// keep the terms living on one marker mask
ChainVector project_mask(const ChainVector& v, uint32_t mask) {
  ChainVector out;
  for (const auto& [g, c] : v)
    if (g.marker_mask == mask) chain_add(out, g, c);
  return out;
}

// an arc of crossing `cr` that is not one of the site's small arcs
int cap_arc(const LinkDiagram& d, const MoveTangle& t, int cr) {
  for (int p = 0; p < 4; ++p) {
    int arc = d.crossings()[cr].arcs[p];
    if (!std::binary_search(t.small_arcs.begin(), t.small_arcs.end(), arc))
      return arc;
  }
  throw DiagramError("no cap arc");
}

}  // namespace

TEST_CASE("perm_sign moves letters to the end of the word") {
  CHECK(perm_sign(0b11, {1}) == 1);    // [01] -> [01]
  CHECK(perm_sign(0b11, {0}) == -1);   // [01] -> [10]
  CHECK(perm_sign(0b11, {0, 1}) == 1); // [01] -> [01]
  CHECK(perm_sign(0b11, {1, 0}) == -1);
  CHECK(perm_sign(0b101, {0}) == -1);
  CHECK(perm_sign(0b101, {2}) == 1);
  CHECK(perm_sign(0b1110, {2}) == -1);  // one letter (3) passes over
  CHECK_THROWS_AS(perm_sign(0b10, {0}), DiagramError);
}

TEST_CASE("positive kink: homotopy and retraction values") {
  auto d = corpus_diagram("kink+");
  auto calc = FrobeniusCalculus::universal();
  auto cx = build_complex(d, calc);
  MoveTangle t = analyze_site(d, {MoveKind::R1, {0}, 0});
  CHECK(t.small_arcs == std::vector<int>{2});

  // marker + smoothing: circle 0 = strand (arc 1), circle 1 = kink loop (arc 2)
  auto blue = [&](Sign strand, Sign loop) {
    return EnhancedState{0, with_sign(with_sign(0, 0, strand), 1, loop)};
  };
  auto red = [&](Sign strand) {
    return EnhancedState{1, with_sign(0, 0, strand)};
  };

  // (h delta + delta h) on the loop-'+' states is the m(strand,+) merge,
  // re-split with a '-'-labeled loop
  ChainVector got = hd_dh(d, calc, t, one(blue(P, P)));
  ChainVector want;
  chain_add(want, blue(P, M), BivariatePoly::s());
  chain_add(want, blue(M, M), BivariatePoly::t());
  CHECK(got == want);
  CHECK(hd_dh(d, calc, t, one(blue(M, P))) == one(blue(P, M)));
  // loop-'-' states are reproduced
  CHECK(hd_dh(d, calc, t, one(blue(P, M))) == one(blue(P, M)));
  CHECK(hd_dh(d, calc, t, one(blue(M, M))) == one(blue(M, M)));
  // one-circle states are reproduced (h splits, delta merges back)
  CHECK(hd_dh(d, calc, t, one(red(P))) == one(red(P)));
  CHECK(hd_dh(d, calc, t, one(red(M))) == one(red(M)));
  CHECK(homotopy_h(d, t, red(P)) == one(blue(P, M)));
  CHECK(homotopy_h(d, t, red(M)) == one(blue(M, M)));
  CHECK(homotopy_h(d, t, blue(P, P)).empty());

  // retraction columns
  LinearMap h = homotopy_matrix(cx, t);
  LinearMap rho = retraction_matrix(cx, h);
  ChainVector rpp;
  chain_add(rpp, blue(P, P), BivariatePoly(1));
  chain_add(rpp, blue(P, M), -BivariatePoly::s());
  chain_add(rpp, blue(M, M), -BivariatePoly::t());
  CHECK(rho.apply_gen(blue(P, P)) == rpp);
  ChainVector rmp;
  chain_add(rmp, blue(M, P), BivariatePoly(1));
  chain_add(rmp, blue(P, M), BivariatePoly(-1));
  CHECK(rho.apply_gen(blue(M, P)) == rmp);
  CHECK(rho.apply_gen(blue(P, M)).empty());
  CHECK(rho.apply_gen(blue(M, M)).empty());
  CHECK(rho.apply_gen(red(P)).empty());
  CHECK(rho.apply_gen(red(M)).empty());
}

TEST_CASE("negative kink: homotopy values") {
  auto d = corpus_diagram("kink-");
  auto calc = FrobeniusCalculus::universal();
  MoveTangle t = analyze_site(d, {MoveKind::R1, {0}, 3});
  CHECK(t.small_arcs == std::vector<int>{1});

  // marker - smoothing: circle 0 = kink loop (arc 1), circle 1 = strand (arc 2)
  auto blue = [&](Sign loop, Sign strand) {
    return EnhancedState{1, with_sign(with_sign(0, 0, loop), 1, strand)};
  };
  auto red = [&](Sign strand) {
    return EnhancedState{0, with_sign(0, 0, strand)};
  };
  CHECK(homotopy_h(d, t, blue(P, P)) == one(red(P)));
  CHECK(homotopy_h(d, t, blue(P, M)) == one(red(M)));
  CHECK(homotopy_h(d, t, blue(M, P)).empty());
  CHECK(homotopy_h(d, t, blue(M, M)).empty());
  CHECK(hd_dh(d, calc, t, one(red(P))) == one(red(P)));
  CHECK(hd_dh(d, calc, t, one(red(M))) == one(red(M)));
}

TEST_CASE("R1 chain suite on both kink signs") {
  auto calc = FrobeniusCalculus::universal();
  for (const char* name : {"kink+", "kink-"}) {
    CAPTURE(name);
    auto d = corpus_diagram(name);
    auto sites = d.find_move_sites(MoveKind::R1, MoveDirection::Remove);
    REQUIRE(!sites.empty());
    for (const auto& s : sites) {
      auto rep = verify_move(d, s, calc);
      for (const auto& w : rep.homotopy.witnesses) MESSAGE(w);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("R1 chain suite and explicit retraction on an embedded kink") {
  auto calc = FrobeniusCalculus::universal();
  auto tre = corpus_diagram("trefoil");
  for (int arc : {1, 4}) {
    for (int v = 0; v < 4; ++v) {
      CAPTURE(arc);
      CAPTURE(v);
      auto res = tre.apply_move({MoveKind::R1, {arc}, v}, MoveDirection::Insert);
      if (!res.diagram.planar()) continue;
      const LinkDiagram& d = res.diagram;
      auto sites = d.find_move_sites(MoveKind::R1, MoveDirection::Remove);
      bool found = false;
      for (const auto& s : sites) {
        if (s.ids != std::vector<int>{3}) continue;
        found = true;
        auto rep = verify_move(d, s, calc);
        for (const auto& w : rep.homotopy.witnesses) MESSAGE(w);
        CHECK(rep.ok);
      }
      CHECK(found);
    }
  }

  // positive kink (insert variant 0): the retraction is exactly
  //   g            |-> 0                    if the kink marker is negative,
  //   g(loop -)    |-> 0,
  //   g(loop +)    |-> g - sum_{m(p,+)} c_r g(strand r, loop -)
  auto res = tre.apply_move({MoveKind::R1, {1}, 0}, MoveDirection::Insert);
  const LinkDiagram& d = res.diagram;
  auto cx = build_complex(d, calc);
  MoveTangle t = analyze_site(d, {MoveKind::R1, {3}, 0});
  int loop_arc = t.small_arcs[0];
  int strand_arc = d.crossings()[3].arcs[0];
  LinearMap rho = retraction_matrix(cx, homotopy_matrix(cx, t));
  for (const auto& deg : cx.degrees)
    for (const auto& g : deg) {
      ChainVector want;
      if (!(g.marker_mask >> 3 & 1)) {
        const Smoothing& sm = cx.smoothing(g.marker_mask);
        int l = sm.circle_of_arc.at(loop_arc);
        int sc = sm.circle_of_arc.at(strand_arc);
        if (sign_at(g.sign_mask, l) == P) {
          chain_add(want, g, BivariatePoly(1));
          Sign p = sign_at(g.sign_mask, sc);
          for (const auto& [w, c] : calc.multiply(p, P).terms()) {
            uint32_t s2 = with_sign(with_sign(g.sign_mask, sc, w[0]), l, M);
            chain_add(want, EnhancedState{g.marker_mask, s2}, -c);
          }
        }
      }
      CHECK(rho.apply_gen(g) == want);
    }
}

TEST_CASE("R2 chain suite on inserted bigons, both strand orders") {
  auto calc = FrobeniusCalculus::universal();
  auto hopf = corpus_diagram("hopf+");
  std::set<std::string> seen;
  bool over_seen = false, under_seen = false;
  for (int x : hopf.arc_ids())
    for (int y : hopf.arc_ids()) {
      if (x == y) continue;
      for (int v = 0; v < 8; ++v) {
        LinkDiagram d;
        try {
          auto res = hopf.apply_move({MoveKind::R2, {x, y}, v},
                                     MoveDirection::Insert);
          d = res.diagram.canonicalized();
        } catch (const DiagramError&) {
          continue;
        }
        if (!d.planar()) continue;
        if (!seen.insert(d.to_pd_text()).second) continue;
        ((v & 1) == 0 ? over_seen : under_seen) = true;
        CAPTURE(d.to_pd_text());
        auto sites = d.find_move_sites(MoveKind::R2, MoveDirection::Remove);
        REQUIRE(!sites.empty());
        for (const auto& s : sites) {
          auto rep = verify_move(d, s, calc);
          for (const auto& w : rep.homotopy.witnesses) MESSAGE(w);
          CHECK(rep.ok);
        }
      }
    }
  CHECK(over_seen);   // new strand passes over
  CHECK(under_seen);  // new strand passes under
}

TEST_CASE("R2 bigon: retraction kills delta, h inverts the one-to-one part") {
  auto calc = FrobeniusCalculus::universal();
  auto res = corpus_diagram("hopf+").apply_move({MoveKind::R2, {1, 3}, 1},
                                                MoveDirection::Insert);
  LinkDiagram d = res.diagram.canonicalized();
  REQUIRE(d.planar());
  auto sites = d.find_move_sites(MoveKind::R2, MoveDirection::Remove);
  REQUIRE(!sites.empty());
  MoveTangle t = analyze_site(d, sites[0]);
  int a = t.cross[0], b = t.cross[1];
  auto cx = build_complex(d, calc);
  LinearMap h = homotopy_matrix(cx, t);
  LinearMap rho = retraction_matrix(cx, h);

  uint32_t outside = 0;
  for (int k = 0; k < d.crossing_count(); ++k)
    if (k != a && k != b) outside |= uint32_t{1} << k;

  for (uint32_t wo = 0; wo <= outside; ++wo) {
    if ((wo & ~outside) != 0) continue;
    uint32_t mask_pp = wo;
    const Smoothing& sm = cx.smoothing(mask_pp);
    for (uint32_t signs = 0; signs < (uint32_t{1} << sm.circle_count); ++signs) {
      EnhancedState g{mask_pp, signs};
      // both site markers positive, arbitrary labels:
      //   (h delta + delta h)(g) == g, hence rho(g) == 0,
      //   h(delta(g)) == g (only the one-to-one term survives h),
      //   rho(delta(g)) == 0.
      CHECK(hd_dh(d, calc, t, one(g)) == one(g));
      CHECK(rho.apply_gen(g).empty());
      ChainVector dg = differential(d, calc, g);
      CHECK(h.apply(dg) == one(g));
      CHECK(rho.apply(dg).empty());
    }
  }
}

TEST_CASE("R2 bigon: small-circle states retract onto composite labels") {
  auto calc = FrobeniusCalculus::universal();
  auto res = corpus_diagram("hopf+").apply_move({MoveKind::R2, {1, 3}, 1},
                                                MoveDirection::Insert);
  LinkDiagram d = res.diagram.canonicalized();
  auto sites = d.find_move_sites(MoveKind::R2, MoveDirection::Remove);
  REQUIRE(!sites.empty());
  MoveTangle t = analyze_site(d, sites[0]);
  int a = t.cross[0], b = t.cross[1];
  int p_arc = cap_arc(d, t, a), q_arc = cap_arc(d, t, b);
  auto cx = build_complex(d, calc);

  uint32_t outside = 0;
  for (int k = 0; k < d.crossing_count(); ++k)
    if (k != a && k != b) outside |= uint32_t{1} << k;

  for (uint32_t wo = 0; wo <= outside; ++wo) {
    if ((wo & ~outside) != 0) continue;
    uint32_t mask_pm = wo | (uint32_t{1} << b);
    const Smoothing& sm = cx.smoothing(mask_pm);
    int small = sm.circle_of_arc.at(t.small_arcs[0]);
    REQUIRE(sm.arcs_of_circle[small] == t.small_arcs);
    int pcap = sm.circle_of_arc.at(p_arc);
    int qcap = sm.circle_of_arc.at(q_arc);
    bool same = pcap == qcap;
    int sgn = perm_sign(mask_pm, {b});

    for (uint32_t signs = 0; signs < (uint32_t{1} << sm.circle_count); ++signs) {
      if (signs >> small & 1) continue;  // small circle labeled '+'
      // paper-ordered state S_{+-}(p,q) (x) [x b]
      ChainVector gp;
      chain_add(gp, EnhancedState{mask_pm, signs}, BivariatePoly(sgn));

      // h inverts the one-to-one correspondence: a single all-plus state
      ChainVector lift = h_chain(d, t, gp);
      REQUIRE(lift.size() == 1);
      CHECK(lift.begin()->second == BivariatePoly(1));
      CHECK(lift.begin()->first.marker_mask == wo);

      // (h delta + delta h) == the state itself
      //   + the composite-labeled '-'-small states
      //   + the flip-at-a part of delta of the lift
      ChainVector want = gp;
      Sign p = sign_at(signs, pcap), q = sign_at(signs, qcap);
      SignCombo comp = composite_expand(calc, p, q, same);
      for (const auto& [uv, c] : comp.terms()) {
        uint32_t s2 = with_sign(signs, small, M);
        s2 = with_sign(s2, pcap, uv[0]);
        s2 = with_sign(s2, qcap, uv[1]);
        chain_add(want, EnhancedState{mask_pm, s2}, c * sgn);
      }
      chain_add_all(want, project_mask(differential(d, calc, lift),
                                       wo | (uint32_t{1} << a)));
      CHECK(hd_dh(d, calc, t, gp) == want);
    }
  }
}

TEST_CASE("R3 chain suite on the triangle diagrams") {
  auto calc = FrobeniusCalculus::universal();
  for (const char* name : {"braid-r3", "r3-six"}) {
    CAPTURE(name);
    auto d = corpus_diagram(name);
    auto sites = d.find_move_sites(MoveKind::R3);
    REQUIRE(!sites.empty());
    bool any = false;
    for (const auto& s : sites) {
      try {
        analyze_site(d, s);
      } catch (const DiagramError&) {
        continue;  // triangle of the unsupported handedness
      }
      any = true;
      auto rep = verify_move(d, s, calc);
      for (const auto& w : rep.homotopy.witnesses) MESSAGE(w);
      CHECK(rep.ok);
    }
    CHECK(any);
  }
}

TEST_CASE("R3 triangle: all-plus states are fixed, small-circle states expand") {
  auto calc = FrobeniusCalculus::universal();
  auto d = corpus_diagram("braid-r3");
  auto sites = d.find_move_sites(MoveKind::R3);
  REQUIRE(!sites.empty());
  MoveTangle t = analyze_site(d, sites[0]);
  int a = t.cross[0], b = t.cross[1], c3 = t.cross[2];
  auto cx = build_complex(d, calc);
  LinearMap rho = retraction_matrix(cx, homotopy_matrix(cx, t));

  // all-plus markers: (h delta + delta h)(g) == g, hence rho(g) == 0
  const Smoothing& sm0 = cx.smoothing(0);
  for (uint32_t signs = 0; signs < (uint32_t{1} << sm0.circle_count); ++signs) {
    EnhancedState g{0, signs};
    CHECK(hd_dh(d, calc, t, one(g)) == one(g));
    CHECK(rho.apply_gen(g).empty());
  }

  // the small-circle level at b
  uint32_t mask_b = uint32_t{1} << b;
  const Smoothing& smb = cx.smoothing(mask_b);
  int small = smb.circle_of_arc.at(t.small_arcs[0]);
  REQUIRE(smb.arcs_of_circle[small] == t.small_arcs);
  int pcap = smb.circle_of_arc.at(cap_arc(d, t, a));
  int qcap = smb.circle_of_arc.at(cap_arc(d, t, b));
  bool same = pcap == qcap;

  for (uint32_t signs = 0; signs < (uint32_t{1} << smb.circle_count); ++signs) {
    if (signs >> small & 1) continue;  // small circle labeled '+'
    EnhancedState g{mask_b, signs};
    ChainVector lift = h_chain(d, t, one(g));
    REQUIRE(lift.size() == 1);
    CHECK(lift.begin()->second == BivariatePoly(1));
    CHECK(lift.begin()->first.marker_mask == 0);

    // (h delta + delta h)(g) = g + composite '-'-small states
    //   + the flip-at-a and flip-at-c parts of delta of the lift
    ChainVector want = one(g);
    Sign p = sign_at(signs, pcap), q = sign_at(signs, qcap);
    SignCombo comp = composite_expand(calc, p, q, same);
    for (const auto& [uv, c] : comp.terms()) {
      uint32_t s2 = with_sign(signs, small, M);
      s2 = with_sign(s2, pcap, uv[0]);
      s2 = with_sign(s2, qcap, uv[1]);
      chain_add(want, EnhancedState{mask_b, s2}, c);
    }
    ChainVector dl = differential(d, calc, lift);
    chain_add_all(want, project_mask(dl, uint32_t{1} << a));
    chain_add_all(want, project_mask(dl, uint32_t{1} << c3));
    CHECK(hd_dh(d, calc, t, one(g)) == want);
  }
}

TEST_CASE("non-homotopies are rejected with witnesses") {
  auto calc = FrobeniusCalculus::universal();
  auto d = corpus_diagram("kink+");
  auto cx = build_complex(d, calc);
  MoveTangle t = analyze_site(d, {MoveKind::R1, {0}, 0});
  LinearMap h = homotopy_matrix(cx, t);

  // h itself is not a chain map
  auto bad = verify_chain_map(cx, h);
  CHECK(!bad.ok);
  CHECK(!bad.witnesses.empty());

  // an extra spurious column breaks h^2 == 0
  LinearMap h2 = h;
  EnhancedState blue_pm{0, 0b10};  // strand '+', loop '-'
  h2.cols[blue_pm] = one(EnhancedState{1, 0});
  LinearMap rho2 = retraction_matrix(cx, h2);
  auto rep = verify_homotopy(cx, h2, rho2);
  CHECK(!rep.ok);
  bool hh = false;
  for (const auto& w : rep.witnesses)
    if (w.find("h h != 0") != std::string::npos) hh = true;
  CHECK(hh);
}

TEST_CASE("random move sequences preserve the homology fingerprint") {
  auto checks = default_invariance_checks();
  for (const char* name : {"trefoil", "hopf-", "figure8"}) {
    CAPTURE(name);
    auto rep = verify_invariance(corpus_diagram(name), 7, 4, checks);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok);
    CHECK(!rep.trail.empty());
  }
  // no arcs, no applicable moves: trivially invariant
  auto rep0 = verify_invariance(corpus_diagram("unknot"), 1, 3, checks);
  CHECK(rep0.ok);
  REQUIRE(!rep0.trail.empty());
  CHECK(rep0.trail[0].find("no moves") != std::string::npos);
}

TEST_CASE("move sequences are reproducible for a fixed seed") {
  auto checks = default_invariance_checks();
  auto a = verify_invariance(corpus_diagram("trefoil"), 42, 5, checks);
  auto b = verify_invariance(corpus_diagram("trefoil"), 42, 5, checks);
  CHECK(a.trail == b.trail);
  auto c = verify_invariance(corpus_diagram("trefoil"), 43, 5, checks);
  CHECK(a.trail != c.trail);
}
