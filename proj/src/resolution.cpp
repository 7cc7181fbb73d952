#include "khoveq/resolution.hpp"

#include <algorithm>
#include <numeric>

namespace khoveq {

namespace {
struct ArcUF {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};
}  // namespace

Smoothing smooth(const LinkDiagram& d, uint32_t marker_mask) {
  ArcUF uf;
  for (int a : d.arc_ids()) uf.parent[a] = a;
  const auto& cr = d.crossings();
  for (size_t k = 0; k < cr.size(); ++k) {
    const auto& a = cr[k].arcs;
    if (marker_mask >> k & 1) {  // minus marker: (0,1) and (2,3)
      uf.unite(a[0], a[1]);
      uf.unite(a[2], a[3]);
    } else {  // plus marker: (0,3) and (1,2)
      uf.unite(a[0], a[3]);
      uf.unite(a[1], a[2]);
    }
  }
  std::map<int, std::vector<int>> classes;
  for (int a : d.arc_ids()) classes[uf.find(a)].push_back(a);
  // order circles by smallest arc id
  std::vector<std::vector<int>> circles;
  for (auto& [root, arcs] : classes) {
    std::sort(arcs.begin(), arcs.end());
    circles.push_back(arcs);
  }
  std::sort(circles.begin(), circles.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  Smoothing sm;
  for (auto& c : circles) {
    for (int a : c) sm.circle_of_arc[a] = static_cast<int>(sm.arcs_of_circle.size());
    sm.arcs_of_circle.push_back(std::move(c));
  }
  for (int i = 0; i < d.extra_circles(); ++i) sm.arcs_of_circle.push_back({});
  sm.circle_count = static_cast<int>(sm.arcs_of_circle.size());
  return sm;
}

int grading_j(const LinkDiagram& d, const Smoothing& sm, const EnhancedState& st) {
  int minus_circles = popcount32(st.sign_mask);
  int qdeg = 2 * minus_circles - sm.circle_count;  // '-' is +1, '+' is -1
  return qdeg + popcount32(st.marker_mask) + d.n_plus() - 2 * d.n_minus();
}

}  // namespace khoveq
