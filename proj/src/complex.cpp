#include "khoveq/complex.hpp"

#include <cstdlib>
#include <sstream>

namespace khoveq {

void chain_add(ChainVector& v, const EnhancedState& g, const BivariatePoly& c) {
  if (c.is_zero()) return;
  auto it = v.find(g);
  if (it == v.end()) {
    v.emplace(g, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

ChainVector chain_scaled(const ChainVector& v, const BivariatePoly& c) {
  ChainVector r;
  for (const auto& [g, k] : v) chain_add(r, g, k * c);
  return r;
}

void chain_add_all(ChainVector& v, const ChainVector& w, const BivariatePoly& c) {
  for (const auto& [g, k] : w) chain_add(v, g, k * c);
}

namespace {

Sign circle_sign(uint32_t sign_mask, int circle) {
  return (sign_mask >> circle & 1) ? Sign::Minus : Sign::Plus;
}

}  // namespace

// Resmooth at crossing k (flip + -> -): apply merge or split, transport the
// other circle signs. Shared with the moves module via this free function.
ChainVector differential(const LinkDiagram& d, const FrobeniusCalculus& calc,
                         const EnhancedState& g) {
  ChainVector out;
  int n = d.crossing_count();
  Smoothing sm = smooth(d, g.marker_mask);
  for (int k = 0; k < n; ++k) {
    if (g.marker_mask >> k & 1) continue;  // already negative
    uint32_t new_mask = g.marker_mask | (uint32_t{1} << k);
    Smoothing sn = smooth(d, new_mask);
    int reorder = popcount32(g.marker_mask >> (k + 1));
    BivariatePoly sgn((reorder % 2) ? -1 : 1);

    const auto& arcs = d.crossings()[k].arcs;
    int a0 = sm.circle_of_arc.at(arcs[0]);
    int a2 = sm.circle_of_arc.at(arcs[2]);

    // old circle index -> new circle index for untouched circles
    auto transport = [&](uint32_t local_signs, auto&& touched_new_signs) {
      // touched_new_signs: map<int new_circle, Sign>
      uint32_t out_signs = 0;
      for (int c = 0; c < sn.circle_count; ++c) {
        auto it = touched_new_signs.find(c);
        Sign s;
        if (it != touched_new_signs.end()) {
          s = it->second;
        } else {
          // carry over: match by first arc, or trailing crossingless circles
          int old_c;
          if (sn.arcs_of_circle[c].empty()) {
            int offset = sn.circle_count - c;  // position from the end
            old_c = sm.circle_count - offset;
          } else {
            old_c = sm.circle_of_arc.at(sn.arcs_of_circle[c].front());
          }
          s = circle_sign(local_signs, old_c);
        }
        if (s == Sign::Minus) out_signs |= uint32_t{1} << c;
      }
      return out_signs;
    };

    const SignCombo* combo;
    bool is_merge = (a0 != a2);
    if (is_merge) {
      // slot 0 = circle through the crossing's position-0 arc
      combo = &calc.multiply(circle_sign(g.sign_mask, a0), circle_sign(g.sign_mask, a2));
      if (sn.circle_count != sm.circle_count - 1)
        throw DiagramError("resmoothing did not merge (non-planar state?)");
    } else {
      combo = &calc.comultiply(circle_sign(g.sign_mask, a0));
      if (sn.circle_count != sm.circle_count + 1)
        throw DiagramError("resmoothing did not split (non-planar state?)");
    }
    for (const auto& [sg, c] : combo->terms()) {
      std::map<int, Sign> touched;
      if (is_merge) {
        touched[sn.circle_of_arc.at(arcs[0])] = sg[0];
      } else {
        // after the flip the two circles carry the chords (0,1) and (2,3)
        touched[sn.circle_of_arc.at(arcs[0])] = sg[0];
        touched[sn.circle_of_arc.at(arcs[2])] = sg[1];
      }
      EnhancedState t{new_mask, transport(g.sign_mask, touched)};
      chain_add(out, t, c * sgn);
    }
  }
  return out;
}

ChainVector differential(const LinkDiagram& d, const FrobeniusCalculus& calc,
                         const ChainVector& v) {
  ChainVector out;
  for (const auto& [g, c] : v) chain_add_all(out, differential(d, calc, g), c);
  return out;
}

int crossing_cap() {
  if (const char* env = std::getenv("KHOVEQ_MAX_CROSSINGS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 14;
}

int ComplexRepr::total_generators() const {
  int t = 0;
  for (const auto& deg : degrees) t += static_cast<int>(deg.size());
  return t;
}

ComplexRepr build_complex(const LinkDiagram& d, const FrobeniusCalculus& calc) {
  int n = d.crossing_count();
  if (n > crossing_cap())
    throw DiagramError("crossing count " + std::to_string(n) +
                       " exceeds cap " + std::to_string(crossing_cap()));
  ComplexRepr cx{d, calc, {}, {}};
  cx.degrees.assign(n + 1, {});
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    Smoothing sm = smooth(d, mask);
    int deg = popcount32(mask);
    for (uint32_t signs = 0; signs < (uint32_t{1} << sm.circle_count); ++signs)
      cx.degrees[deg].push_back({mask, signs});
    cx.smoothings.emplace(mask, std::move(sm));
  }
  return cx;
}

std::string generator_str(const EnhancedState& g, int n_crossings, int n_circles) {
  std::ostringstream os;
  os << "markers=";
  for (int k = 0; k < n_crossings; ++k) os << ((g.marker_mask >> k & 1) ? '-' : '+');
  os << " circles=";
  for (int c = 0; c < n_circles; ++c) os << ((g.sign_mask >> c & 1) ? '-' : '+');
  return os.str();
}

CheckReport verify_delta_squared(const ComplexRepr& cx) {
  CheckReport rep;
  for (const auto& deg : cx.degrees) {
    for (const auto& g : deg) {
      ChainVector d1 = differential(cx.diagram, cx.calc, g);
      ChainVector d2 = differential(cx.diagram, cx.calc, d1);
      if (!d2.empty()) {
        rep.ok = false;
        std::ostringstream os;
        os << "delta^2 != 0 on "
           << generator_str(g, cx.diagram.crossing_count(),
                            cx.smoothing(g.marker_mask).circle_count)
           << ": " << d2.size() << " surviving terms";
        rep.witnesses.push_back(os.str());
      }
    }
  }
  return rep;
}

CheckReport check_grading_law(const ComplexRepr& cx) {
  CheckReport rep;
  const LinkDiagram& d = cx.diagram;
  for (const auto& deg : cx.degrees) {
    for (const auto& g : deg) {
      int gi = grading_i(d, g.marker_mask);
      int gj = grading_j(d, cx.smoothing(g.marker_mask), g);
      for (const auto& [t, c] : differential(d, cx.calc, g)) {
        int ti = grading_i(d, t.marker_mask);
        int tj = grading_j(d, smooth(d, t.marker_mask), t);
        for (const auto& [mono, coeff] : c.terms()) {
          bool ok_i = (ti - gi == 1);
          bool ok_j = (tj - gj == 2 * mono.a + 4 * mono.b);
          if (!ok_i || !ok_j) {
            rep.ok = false;
            std::ostringstream os;
            os << "grading law violated: s^" << mono.a << " t^" << mono.b
               << " term with delta-i=" << ti - gi << " delta-j=" << tj - gj;
            rep.witnesses.push_back(os.str());
          }
        }
      }
    }
  }
  return rep;
}

nlohmann::json complex_to_json(const ComplexRepr& cx) {
  nlohmann::json gens = nlohmann::json::array();
  nlohmann::json mats = nlohmann::json::array();
  const LinkDiagram& d = cx.diagram;
  // global index per generator for matrix triplets
  std::map<EnhancedState, int> index;
  int next = 0;
  for (const auto& deg : cx.degrees)
    for (const auto& g : deg) index[g] = next++;
  for (const auto& deg : cx.degrees) {
    for (const auto& g : deg) {
      const Smoothing& sm = cx.smoothing(g.marker_mask);
      std::string markers, signs;
      for (int k = 0; k < d.crossing_count(); ++k)
        markers += (g.marker_mask >> k & 1) ? '-' : '+';
      for (int c = 0; c < sm.circle_count; ++c)
        signs += (g.sign_mask >> c & 1) ? '-' : '+';
      gens.push_back({{"index", index[g]},
                      {"markers", markers},
                      {"circle_signs", signs},
                      {"i", grading_i(d, g.marker_mask)},
                      {"j", grading_j(d, sm, g)}});
      for (const auto& [t, c] : differential(d, cx.calc, g))
        mats.push_back({{"row", index[t]}, {"col", index[g]}, {"poly", poly_to_json(c)}});
    }
  }
  return {{"crossings", d.crossing_count()},
          {"pd", d.to_pd_text()},
          {"generators", gens},
          {"differential", mats}};
}

}  // namespace khoveq
