#include "khoveq/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace khoveq {

namespace {

// Union-find with parity (relative boolean offset to the root).
struct ParityUF {
  std::vector<int> parent;
  std::vector<int> parity;  // parity to parent
  explicit ParityUF(int n) : parent(n), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 0};
    auto [r, p] = find(parent[x]);
    parent[x] = r;
    parity[x] ^= p;
    return {r, parity[x]};
  }
  // assert x and y differ by parity d; returns false on conflict
  bool unite(int x, int y, int d) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return (px ^ py) == d;
    parent[rx] = ry;
    parity[rx] = px ^ py ^ d;
    return true;
  }
};

struct PlainUF {
  std::vector<int> parent;
  explicit PlainUF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int extra_circles)
    : crossings_(std::move(crossings)), extra_circles_(extra_circles) {
  validate_and_orient();
}

LinkDiagram LinkDiagram::parse(const std::string& text) {
  std::vector<Crossing> crossings;
  int extra = 0;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      } else if (text[i] == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  auto parse_int = [&]() -> int {
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw PdParseError("expected arc id", i);
    long v = std::stol(text.substr(start, i - start));
    if (v <= 0) throw PdParseError("arc ids are 1-based positive integers", start);
    return static_cast<int>(v);
  };
  auto expect = [&](char c) {
    if (i >= text.size() || text[i] != c)
      throw PdParseError(std::string("expected '") + c + "'", i);
    ++i;
  };

  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    char c = text[i];
    if (c == 'O') {
      ++i;
      ++extra;
      continue;
    }
    if (c != 'X') throw PdParseError("expected 'X' or 'O' token", i);
    ++i;
    Crossing cr;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      cr.sign_override = text[i] == '+' ? +1 : -1;
      ++i;
    }
    expect('(');
    for (int k = 0; k < 4; ++k) {
      skip_ws();
      cr.arcs[k] = parse_int();
      skip_ws();
      if (k < 3) expect(',');
    }
    expect(')');
    crossings.push_back(cr);
  }
  return LinkDiagram(std::move(crossings), extra);
}

void LinkDiagram::validate_and_orient() {
  int n = crossing_count();
  // occurrences of each arc id
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) occ[crossings_[c].arcs[k]].push_back({c, k});
  for (auto& [arc, v] : occ)
    if (v.size() != 2)
      throw DiagramError("arc " + std::to_string(arc) + " appears " +
                         std::to_string(v.size()) + " times (expected 2)");

  // Resolve over-strand directions. Variable b_c = (over_in_pos == 1).
  // role(c,pos) is "absorbing" iff pos==0, or pos in {1,3} with over_in==pos.
  ParityUF uf(n);
  std::vector<int> forced(n, -1);  // resolved value of b_c, -1 unknown
  auto force = [&](int c, int val) {
    auto [r, p] = uf.find(c);
    int rv = val ^ p;
    if (forced[r] == -1) forced[r] = rv;
    else if (forced[r] != rv)
      throw DiagramError("inconsistent orientation");
  };
  for (auto& [arc, v] : occ) {
    auto [c1, p1] = v[0];
    auto [c2, p2] = v[1];
    bool f1 = (p1 == 0 || p1 == 2), f2 = (p2 == 0 || p2 == 2);
    if (f1 && f2) {
      // both under: one must absorb (pos0), the other emit (pos2)
      if (p1 == p2)
        throw DiagramError("inconsistent orientation at arc " + std::to_string(arc));
      continue;
    }
    if (f1 || f2) {
      if (f2) { std::swap(c1, c2); std::swap(p1, p2); }
      // (c1,p1) forced; (c2,p2) over slot must take the opposite role
      bool in1 = (p1 == 0);
      // need role(c2,p2) == !in1, i.e. (over_in==p2) == !in1
      int want = !in1 ? (p2 == 1 ? 1 : 0) : (p2 == 1 ? 0 : 1);
      force(c2, want);
      continue;
    }
    // both over slots: (b1==?p1) xor (b2==?p2) = 1
    // lit(c,p) := (over_in==p) = (p==1 ? b : !b)
    // constraint lit1 != lit2
    int d;  // parity between b_c1 and b_c2
    if (p1 == p2) d = 1;       // b1 != b2 when both pos1 (or both pos3)
    else d = 0;                // opposite slots: b1 == b2
    if (c1 == c2) {
      if (p1 == p2) throw DiagramError("inconsistent orientation at arc " + std::to_string(arc));
      continue;  // over loop at one crossing: constraint is vacuous
    }
    if (!uf.unite(c1, c2, d)) throw DiagramError("inconsistent orientation");
  }
  // Assign: forced value through the class, otherwise deterministic default
  // (sign override if given, else keep the incoming over_in_pos — crossings
  // built from an existing diagram then retain their orientation).
  for (int c = 0; c < n; ++c) {
    auto [r, p] = uf.find(c);
    if (forced[r] == -1) {
      int def = crossings_[c].over_in_pos == 1 ? 1 : 0;
      if (crossings_[c].sign_override) def = (*crossings_[c].sign_override > 0) ? 1 : 0;
      forced[r] = def ^ p;
    }
  }
  for (int c = 0; c < n; ++c) {
    auto [r, p] = uf.find(c);
    crossings_[c].over_in_pos = (forced[r] ^ p) ? 1 : 3;
  }

  // Record arc endpoints and double-check one head + one tail per arc.
  arc_ends_.clear();
  auto absorbing = [&](int c, int k) {
    if (k == 0) return true;
    if (k == 2) return false;
    return crossings_[c].over_in_pos == k;
  };
  for (auto& [arc, v] : occ) {
    int tail = -1, head = -1;
    for (auto [c, k] : v) {
      if (absorbing(c, k)) {
        if (head != -1) throw DiagramError("inconsistent orientation at arc " + std::to_string(arc));
        head = c * 4 + k;
      } else {
        if (tail != -1) throw DiagramError("inconsistent orientation at arc " + std::to_string(arc));
        tail = c * 4 + k;
      }
    }
    arc_ends_[arc] = {tail, head};
  }
}

int LinkDiagram::writhe() const { return n_plus() - n_minus(); }

int LinkDiagram::n_plus() const {
  int k = 0;
  for (const auto& c : crossings_) k += c.sign() > 0;
  return k;
}

int LinkDiagram::n_minus() const {
  int k = 0;
  for (const auto& c : crossings_) k += c.sign() < 0;
  return k;
}

std::vector<int> LinkDiagram::arc_ids() const {
  std::vector<int> v;
  v.reserve(arc_ends_.size());
  for (const auto& [a, e] : arc_ends_) v.push_back(a);
  return v;
}

std::pair<int, int> LinkDiagram::arc_tail(int arc) const {
  auto e = arc_ends_.at(arc).first;
  return {e / 4, e % 4};
}

std::pair<int, int> LinkDiagram::arc_head(int arc) const {
  auto e = arc_ends_.at(arc).second;
  return {e / 4, e % 4};
}

int LinkDiagram::next_arc(int arc) const {
  auto [c, k] = arc_head(arc);
  const Crossing& cr = crossings_[c];
  int out_pos = (k == 0) ? 2 : (cr.over_in_pos == 1 ? 3 : 1);
  return cr.arcs[out_pos];
}

std::vector<std::vector<int>> LinkDiagram::components() const {
  std::vector<std::vector<int>> comps;
  std::set<int> seen;
  for (const auto& [a, e] : arc_ends_) {
    if (seen.count(a)) continue;
    std::vector<int> comp;
    int x = a;
    do {
      comp.push_back(x);
      seen.insert(x);
      x = next_arc(x);
    } while (x != a);
    comps.push_back(std::move(comp));
  }
  return comps;
}

int LinkDiagram::component_count() const {
  return static_cast<int>(components().size()) + extra_circles_;
}

bool LinkDiagram::planar() const {
  int n = crossing_count();
  if (n == 0) return true;
  // alpha: dart -> other end of its arc
  std::vector<int> alpha(4 * n, -1);
  for (const auto& [a, e] : arc_ends_) {
    alpha[e.first] = e.second;
    alpha[e.second] = e.first;
  }
  // connected components of the 4-valent graph
  PlainUF uf(n);
  for (const auto& [a, e] : arc_ends_) uf.unite(e.first / 4, e.second / 4);
  // faces: orbits of dart -> rotate(alpha(dart))
  std::vector<int> face_of_comp(n, 0);
  std::vector<char> visited(4 * n, 0);
  for (int d = 0; d < 4 * n; ++d) {
    if (visited[d]) continue;
    int x = d;
    do {
      visited[x] = 1;
      int y = alpha[x];
      x = (y / 4) * 4 + (y % 4 + 1) % 4;
    } while (x != d);
    ++face_of_comp[uf.find(d / 4)];
  }
  // per component: V - E + F == 2 with E = 2V
  std::vector<int> verts(n, 0);
  for (int c = 0; c < n; ++c) ++verts[uf.find(c)];
  for (int c = 0; c < n; ++c)
    if (uf.find(c) == c && verts[c] - 2 * verts[c] + face_of_comp[c] != 2) return false;
  return true;
}

std::string LinkDiagram::to_pd_text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : crossings_) {
    if (!first) os << " ";
    first = false;
    os << "X";
    if (c.sign_override) os << (*c.sign_override > 0 ? "+" : "-");
    os << "(" << c.arcs[0] << "," << c.arcs[1] << "," << c.arcs[2] << ","
       << c.arcs[3] << ")";
  }
  for (int i = 0; i < extra_circles_; ++i) {
    if (!first) os << " ";
    first = false;
    os << "O";
  }
  return os.str();
}

LinkDiagram LinkDiagram::canonicalized(std::map<int, int>* arc_map_out) const {
  std::map<int, int> relabel;
  int next_id = 1;
  auto comps = components();
  // components ordered by smallest member id
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  for (auto& comp : comps) {
    auto it = std::min_element(comp.begin(), comp.end());
    std::rotate(comp.begin(), it, comp.end());
    for (int a : comp) relabel[a] = next_id++;
  }
  std::vector<Crossing> cr = crossings_;
  for (auto& c : cr)
    for (int k = 0; k < 4; ++k) c.arcs[k] = relabel.at(c.arcs[k]);
  if (arc_map_out) *arc_map_out = relabel;
  return LinkDiagram(std::move(cr), extra_circles_);
}

// ---------------------------------------------------------------------------
// Reidemeister moves
// ---------------------------------------------------------------------------

namespace {

// Loop-position pairs for the four kink shapes; the first two are positive
// kinks, the last two negative.
constexpr int kKinkLoopPos[4][2] = {{1, 2}, {3, 0}, {2, 3}, {0, 1}};

Crossing make_crossing(int under_in, int under_out, int over_in, int over_out, int sign) {
  Crossing c;
  c.arcs[0] = under_in;
  c.arcs[2] = under_out;
  if (sign > 0) {
    c.arcs[1] = over_in;
    c.arcs[3] = over_out;
    c.over_in_pos = 1;
  } else {
    c.arcs[3] = over_in;
    c.arcs[1] = over_out;
    c.over_in_pos = 3;
  }
  return c;
}

}  // namespace

std::vector<MoveSite> LinkDiagram::find_move_sites(MoveKind kind, MoveDirection dir) const {
  std::vector<MoveSite> sites;
  int n = crossing_count();
  if (kind == MoveKind::R1 && dir == MoveDirection::Remove) {
    for (int c = 0; c < n; ++c) {
      const auto& a = crossings_[c].arcs;
      for (int v = 0; v < 4; ++v) {
        int p = kKinkLoopPos[v][0], q = kKinkLoopPos[v][1];
        if (a[p] == a[q]) sites.push_back({MoveKind::R1, {c}, v});
      }
    }
    return sites;
  }
  if (kind == MoveKind::R1 && dir == MoveDirection::Insert) {
    for (int arc : arc_ids())
      for (int v = 0; v < 4; ++v) sites.push_back({MoveKind::R1, {arc}, v});
    return sites;
  }
  if (kind == MoveKind::R2 && dir == MoveDirection::Remove) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        // arcs connecting i and j (both endpoints at {i,j}, one at each)
        std::vector<int> shared;
        for (const auto& [a, e] : arc_ends_) {
          int t = e.first / 4, h = e.second / 4;
          if ((t == i && h == j) || (t == j && h == i)) shared.push_back(a);
        }
        if (shared.size() != 2) continue;
        int g1 = shared[0], g2 = shared[1];
        // bigon face: endpoints of g1,g2 cyclically adjacent at each crossing
        auto adjacent_at = [&](int c) {
          std::vector<int> pos;
          for (int k = 0; k < 4; ++k)
            if (crossings_[c].arcs[k] == g1 || crossings_[c].arcs[k] == g2) pos.push_back(k);
          if (pos.size() != 2) return false;
          int d = (pos[1] - pos[0] + 4) % 4;
          return d == 1 || d == 3;
        };
        if (!adjacent_at(i) || !adjacent_at(j)) continue;
        // removable: each bigon strand entirely over or entirely under
        auto over_at = [&](int c, int arc) {
          auto [t, h] = arc_ends_.at(arc);
          int pos = (t / 4 == c) ? t % 4 : h % 4;
          return pos == 1 || pos == 3;
        };
        bool s1_over_i = over_at(i, g1), s1_over_j = over_at(j, g1);
        if (s1_over_i != s1_over_j) continue;  // clasp, not removable
        sites.push_back({MoveKind::R2, {i, j}, 0});
      }
    }
    return sites;
  }
  if (kind == MoveKind::R2 && dir == MoveDirection::Insert) {
    auto arcs = arc_ids();
    for (size_t i = 0; i < arcs.size(); ++i)
      for (size_t j = 0; j < arcs.size(); ++j)
        if (i != j)
          for (int v = 0; v < 8; ++v)
            sites.push_back({MoveKind::R2, {arcs[i], arcs[j]}, v});
    return sites;
  }
  // R3: length-3 faces over three distinct crossings with transitive
  // over/under pattern. Insert and Remove coincide (the slide).
  std::vector<int> alpha(4 * n, -1);
  for (const auto& [a, e] : arc_ends_) {
    alpha[e.first] = e.second;
    alpha[e.second] = e.first;
  }
  std::set<std::set<int>> seen_triples;
  std::vector<char> visited(4 * n, 0);
  for (int d0 = 0; d0 < 4 * n; ++d0) {
    if (visited[d0]) continue;
    std::vector<int> orbit;
    int x = d0;
    do {
      visited[x] = 1;
      orbit.push_back(x);
      int y = alpha[x];
      x = (y / 4) * 4 + (y % 4 + 1) % 4;
    } while (x != d0);
    if (orbit.size() != 3) continue;
    std::set<int> cr{orbit[0] / 4, orbit[1] / 4, orbit[2] / 4};
    if (cr.size() != 3 || seen_triples.count(cr)) continue;
    seen_triples.insert(cr);
    std::vector<int> ids(cr.begin(), cr.end());
    // transitivity check happens in apply_move; offer both mover variants
    for (int v = 0; v < 2; ++v) sites.push_back({MoveKind::R3, ids, v});
  }
  return sites;
}

MoveResult LinkDiagram::apply_move(const MoveSite& site, MoveDirection dir) const {
  int n = crossing_count();
  int max_arc = 0;
  for (const auto& [a, e] : arc_ends_) max_arc = std::max(max_arc, a);

  auto finish = [&](std::vector<Crossing> cr, int extra,
                    std::map<int, int> cross_map,
                    std::map<int, int> arc_pre_map) {
    LinkDiagram d(std::move(cr), extra);
    std::map<int, int> canon;
    MoveResult res;
    res.diagram = d.canonicalized(&canon);
    res.crossing_map = std::move(cross_map);
    for (auto& [old_arc, mid] : arc_pre_map)
      if (canon.count(mid)) res.arc_map[old_arc] = canon.at(mid);
    return res;
  };

  auto remove_crossings = [&](const std::set<int>& gone) {
    // merge arcs through removed crossings
    std::map<int, int> uf;
    for (const auto& [a, e] : arc_ends_) uf[a] = a;
    std::function<int(int)> find = [&](int x) {
      return uf[x] == x ? x : uf[x] = find(uf[x]);
    };
    for (int c : gone) {
      const Crossing& cr = crossings_[c];
      uf[find(cr.under_in())] = find(cr.under_out());
      uf[find(cr.over_in())] = find(cr.over_out());
    }
    // class representative: smallest id
    std::map<int, int> rep;
    for (const auto& [a, e] : arc_ends_) {
      int r = find(a);
      auto it = rep.find(r);
      if (it == rep.end() || a < it->second) rep[r] = a;
    }
    // which classes still touch surviving crossings
    std::set<int> live_classes;
    for (const auto& [a, e] : arc_ends_) {
      if (!gone.count(e.first / 4) || !gone.count(e.second / 4)) {
        if (!gone.count(e.first / 4)) live_classes.insert(find(a));
        if (!gone.count(e.second / 4)) live_classes.insert(find(a));
      }
    }
    int new_extra = extra_circles_;
    std::set<int> all_classes;
    for (const auto& [a, e] : arc_ends_) all_classes.insert(find(a));
    for (int c : all_classes)
      if (!live_classes.count(c)) ++new_extra;

    std::vector<Crossing> cr;
    std::map<int, int> cross_map;
    for (int c = 0; c < n; ++c) {
      if (gone.count(c)) continue;
      cross_map[c] = static_cast<int>(cr.size());
      Crossing x = crossings_[c];
      for (int k = 0; k < 4; ++k) x.arcs[k] = rep[find(x.arcs[k])];
      cr.push_back(x);
    }
    std::map<int, int> arc_pre;
    for (const auto& [a, e] : arc_ends_)
      if (live_classes.count(find(a))) arc_pre[a] = rep[find(a)];
    return finish(std::move(cr), new_extra, std::move(cross_map), std::move(arc_pre));
  };

  if (site.kind == MoveKind::R1 && dir == MoveDirection::Remove) {
    if (site.ids.size() != 1 || site.ids[0] < 0 || site.ids[0] >= n)
      throw DiagramError("R1 remove: bad site");
    int c = site.ids[0];
    const auto& a = crossings_[c].arcs;
    int p = kKinkLoopPos[site.variant][0], q = kKinkLoopPos[site.variant][1];
    if (a[p] != a[q]) throw DiagramError("R1 remove: no kink of this shape at crossing");
    return remove_crossings({c});
  }

  if (site.kind == MoveKind::R1 && dir == MoveDirection::Insert) {
    if (site.ids.size() != 1 || !arc_ends_.count(site.ids[0]))
      throw DiagramError("R1 insert: arc does not exist");
    int x = site.ids[0];
    int v_arc = max_arc + 1, w = max_arc + 2;
    std::vector<Crossing> cr = crossings_;
    // arc x keeps its tail; its head occurrence becomes v_arc
    auto [hc, hk] = arc_head(x);
    cr[hc].arcs[hk] = v_arc;
    Crossing kink;
    switch (site.variant) {
      case 0: kink = make_crossing(x, w, w, v_arc, +1); break;       // X(u,w,w,v)
      case 1: kink = make_crossing(w, v_arc, x, w, +1); break;       // X(w,u,v,w)
      case 2: kink = make_crossing(x, w, w, v_arc, -1); break;       // X(u,v,w,w)
      case 3: kink = make_crossing(w, v_arc, x, w, -1); break;       // X(w,w,v,u)
      default: throw DiagramError("R1 insert: bad variant");
    }
    cr.push_back(kink);
    std::map<int, int> cross_map;
    for (int c = 0; c < n; ++c) cross_map[c] = c;
    std::map<int, int> arc_pre;
    for (const auto& [a, e] : arc_ends_)
      if (a != x) arc_pre[a] = a;
    return finish(std::move(cr), extra_circles_, std::move(cross_map), std::move(arc_pre));
  }

  if (site.kind == MoveKind::R2 && dir == MoveDirection::Remove) {
    if (site.ids.size() != 2) throw DiagramError("R2 remove: bad site");
    auto sites = find_move_sites(MoveKind::R2, MoveDirection::Remove);
    bool ok = false;
    for (const auto& s : sites)
      if (std::set<int>(s.ids.begin(), s.ids.end()) ==
          std::set<int>(site.ids.begin(), site.ids.end()))
        ok = true;
    if (!ok) throw DiagramError("R2 remove: crossings do not form a removable bigon");
    return remove_crossings({site.ids[0], site.ids[1]});
  }

  if (site.kind == MoveKind::R2 && dir == MoveDirection::Insert) {
    if (site.ids.size() != 2 || site.ids[0] == site.ids[1] ||
        !arc_ends_.count(site.ids[0]) || !arc_ends_.count(site.ids[1]))
      throw DiagramError("R2 insert: need two distinct existing arcs");
    int x = site.ids[0], y = site.ids[1];
    bool s_over = (site.variant & 1) == 0;
    bool parallel = (site.variant & 2) != 0;
    int sign1 = (site.variant & 4) ? -1 : +1;
    int x2 = max_arc + 1, x3 = max_arc + 2, y2 = max_arc + 3, y3 = max_arc + 4;
    std::vector<Crossing> cr = crossings_;
    auto [xc, xk] = arc_head(x);
    cr[xc].arcs[xk] = x3;
    auto [yc, yk] = arc_head(y);
    cr[yc].arcs[yk] = y3;
    // S strand: x -> x2 at c1, x2 -> x3 at c2.
    // T strand: y -> y2 and y2 -> y3, at (c1,c2) if parallel else (c2,c1).
    int t_in_c1 = parallel ? y : y2, t_out_c1 = parallel ? y2 : y3;
    int t_in_c2 = parallel ? y2 : y, t_out_c2 = parallel ? y3 : y2;
    Crossing c1 = s_over ? make_crossing(t_in_c1, t_out_c1, x, x2, sign1)
                         : make_crossing(x, x2, t_in_c1, t_out_c1, sign1);
    Crossing c2 = s_over ? make_crossing(t_in_c2, t_out_c2, x2, x3, -sign1)
                         : make_crossing(x2, x3, t_in_c2, t_out_c2, -sign1);
    cr.push_back(c1);
    cr.push_back(c2);
    std::map<int, int> cross_map;
    for (int c = 0; c < n; ++c) cross_map[c] = c;
    std::map<int, int> arc_pre;
    for (const auto& [a, e] : arc_ends_)
      if (a != x && a != y) arc_pre[a] = a;
    return finish(std::move(cr), extra_circles_, std::move(cross_map), std::move(arc_pre));
  }

  // R3 slide (Insert and Remove are the same operation).
  if (site.kind != MoveKind::R3 || site.ids.size() != 3)
    throw DiagramError("bad move site");
  std::set<int> want(site.ids.begin(), site.ids.end());
  if (want.size() != 3) throw DiagramError("R3: need three distinct crossings");
  for (int c : want)
    if (c < 0 || c >= n) throw DiagramError("R3: crossing out of range");

  // find a triangular face on exactly these crossings
  std::vector<int> alpha(4 * n, -1);
  for (const auto& [a, e] : arc_ends_) {
    alpha[e.first] = e.second;
    alpha[e.second] = e.first;
  }
  std::vector<int> tri_arcs;  // the three triangle side arcs
  {
    std::vector<char> visited(4 * n, 0);
    bool found = false;
    for (int d0 = 0; d0 < 4 * n && !found; ++d0) {
      if (visited[d0]) continue;
      std::vector<int> orbit;
      int x = d0;
      do {
        visited[x] = 1;
        orbit.push_back(x);
        int y = alpha[x];
        x = (y / 4) * 4 + (y % 4 + 1) % 4;
      } while (x != d0);
      if (orbit.size() != 3) continue;
      std::set<int> cs{orbit[0] / 4, orbit[1] / 4, orbit[2] / 4};
      if (cs != want) continue;
      for (int dart : orbit) tri_arcs.push_back(crossings_[dart / 4].arcs[dart % 4]);
      found = true;
    }
    if (!found) throw DiagramError("R3: crossings do not bound a triangular face");
  }

  // Each triangle arc is one local strand's middle segment; its strand passes
  // the two crossings at the arc's endpoints.
  struct Strand {
    int arc;            // triangle arc
    int c_first, c_second;  // crossings in orientation order along the strand
    int in_arc, out_arc;    // outer arcs
  };
  std::vector<Strand> strands;
  for (int a : tri_arcs) {
    Strand s;
    s.arc = a;
    s.c_first = arc_tail(a).first;
    s.c_second = arc_head(a).first;
    // incoming outer arc at c_first: the arc the strand absorbs there
    const Crossing& cf = crossings_[s.c_first];
    s.in_arc = (cf.under_out() == a) ? cf.under_in()
                                     : (cf.over_out() == a ? cf.over_in() : -1);
    const Crossing& cs = crossings_[s.c_second];
    s.out_arc = (cs.under_in() == a) ? cs.under_out()
                                     : (cs.over_in() == a ? cs.over_out() : -1);
    if (s.in_arc < 0 || s.out_arc < 0) throw DiagramError("R3: malformed triangle");
    strands.push_back(s);
  }

  // over/under tournament between strands
  auto strand_at = [&](int c) {
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
      if (strands[i].c_first == c || strands[i].c_second == c) idx.push_back(i);
    return idx;
  };
  auto over_here = [&](int si, int c) {
    const Crossing& cr = crossings_[c];
    int a = strands[si].arc;
    return cr.over_in() == a || cr.over_out() == a;
  };
  int over_count[3] = {0, 0, 0};
  for (int c : want) {
    auto idx = strand_at(c);
    if (idx.size() != 2) throw DiagramError("R3: malformed triangle");
    bool o0 = over_here(idx[0], c), o1 = over_here(idx[1], c);
    if (o0 == o1) throw DiagramError("R3: malformed triangle");
    ++over_count[o0 ? idx[0] : idx[1]];
  }
  // transitive pattern: some strand over at both its crossings (count 2) and
  // some strand under at both (count 0)
  int top = -1, bottom = -1;
  for (int i = 0; i < 3; ++i) {
    if (over_count[i] == 2) top = i;
    if (over_count[i] == 0) bottom = i;
  }
  if (top < 0 || bottom < 0)
    throw DiagramError("R3: cyclic over/under pattern, move does not apply");
  (void)site.variant;  // mover choice; the rewrite below is mover-independent

  // The slide swaps, for every strand, the order of its two crossings. Roles
  // (over/under) and signs at each crossing are preserved.
  int na1 = max_arc + 1;
  std::map<int, int> new_tri;  // strand index -> new triangle arc id
  for (int i = 0; i < 3; ++i) new_tri[i] = na1 + i;

  std::vector<Crossing> cr(crossings_);
  for (int c : want) {
    auto idx = strand_at(c);
    int under_in = 0, under_out = 0, over_in = 0, over_out = 0;
    for (int si : idx) {
      const Strand& s = strands[si];
      // After the slide each strand visits its two crossings in the opposite
      // order: the outer in-arc now feeds the old second crossing, the outer
      // out-arc leaves the old first one, and a fresh middle arc runs from
      // old-second to old-first.
      int in_a, out_a;
      if (c == s.c_first) {
        in_a = new_tri.at(si);
        out_a = s.out_arc;
      } else {
        in_a = s.in_arc;
        out_a = new_tri.at(si);
      }
      if (over_here(si, c)) { over_in = in_a; over_out = out_a; }
      else { under_in = in_a; under_out = out_a; }
    }
    cr[c] = make_crossing(under_in, under_out, over_in, over_out, crossings_[c].sign());
    cr[c].sign_override = crossings_[c].sign_override;
  }
  std::map<int, int> cross_map;
  for (int c = 0; c < n; ++c) cross_map[c] = c;
  std::map<int, int> arc_pre;
  for (const auto& [a, e] : arc_ends_) {
    bool is_tri = std::find(tri_arcs.begin(), tri_arcs.end(), a) != tri_arcs.end();
    if (!is_tri) arc_pre[a] = a;
  }
  return finish(std::move(cr), extra_circles_, std::move(cross_map), std::move(arc_pre));
}

}  // namespace khoveq
