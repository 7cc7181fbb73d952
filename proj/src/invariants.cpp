#include "khoveq/invariants.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "khoveq/homology.hpp"
#include "khoveq/resolution.hpp"

namespace khoveq {

namespace {

// tiny standalone union-find so the bracket does not lean on the resolution
// module's smoothing code
int count_circles(const LinkDiagram& d, uint32_t b_mask) {
  std::map<int, int> parent;
  for (int a : d.arc_ids()) parent[a] = a;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  const auto& cr = d.crossings();
  for (size_t k = 0; k < cr.size(); ++k) {
    const auto& a = cr[k].arcs;
    if (b_mask >> k & 1) {  // B-smoothing: (0,1) and (2,3)
      parent[find(a[0])] = find(a[1]);
      parent[find(a[2])] = find(a[3]);
    } else {  // A-smoothing: (0,3) and (1,2)
      parent[find(a[0])] = find(a[3]);
      parent[find(a[1])] = find(a[2]);
    }
  }
  int c = 0;
  for (int a : d.arc_ids()) c += (find(a) == a);
  return c + d.extra_circles();
}

LaurentPoly delta_poly() {
  LaurentPoly p;
  p.add_term(2, -1);
  p.add_term(-2, -1);
  return p;
}

LaurentPoly pow(const LaurentPoly& base, int e) {
  LaurentPoly r(1);
  for (int k = 0; k < e; ++k) r = r * base;
  return r;
}

}  // namespace

LaurentPoly kauffman_bracket_raw(const LinkDiagram& d) {
  int n = d.crossing_count();
  LaurentPoly total;
  LaurentPoly delta = delta_poly();
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    int r = popcount32(mask);
    int c = count_circles(d, mask);
    total += LaurentPoly::term(n - 2 * r, 1) * pow(delta, c);
  }
  return total;
}

LaurentPoly kauffman_bracket(const LinkDiagram& d) {
  int n = d.crossing_count();
  LaurentPoly total;
  LaurentPoly delta = delta_poly();
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    int r = popcount32(mask);
    int c = count_circles(d, mask);
    total += LaurentPoly::term(n - 2 * r, 1) * pow(delta, c - 1);
  }
  int w = d.writhe();
  // (-A)^{-3w} = (-1)^w A^{-3w}
  return total * LaurentPoly::term(-3 * w, (w % 2) ? -1 : 1);
}

LaurentPoly graded_euler(const ComplexRepr& cx) {
  LaurentPoly e;
  const LinkDiagram& d = cx.diagram;
  for (const auto& deg : cx.degrees) {
    for (const auto& g : deg) {
      int i = grading_i(d, g.marker_mask);
      int j = grading_j(d, cx.smoothing(g.marker_mask), g);
      e.add_term(j, (i & 1) ? -1 : 1);
    }
  }
  return e;
}

bool chi_matches_bracket(const LinkDiagram& d, const ComplexRepr& cx) {
  LaurentPoly chi = graded_euler(cx);           // in q
  LaurentPoly lhs = chi.substitute_monomial(-2, -1);  // q -> -A^-2
  int np = d.n_plus(), nm = d.n_minus(), n = np + nm;
  LaurentPoly factor = LaurentPoly::term(-2 * (np - 2 * nm), ((np - 2 * nm) % 2) ? -1 : 1);
  if (nm % 2) factor = LaurentPoly() - factor;
  LaurentPoly rhs = factor * LaurentPoly::term(-n, 1) * kauffman_bracket_raw(d);
  return lhs == rhs;
}

bool lee_rank_check(const LinkDiagram& d) {
  auto cx = build_complex(d, FrobeniusCalculus::universal());
  auto h = homology_at(cx, Specialization::integers(0, 1), false);
  return h.total_rank() == (1 << d.component_count());
}

}  // namespace khoveq
