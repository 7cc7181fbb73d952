#include "khoveq/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace khoveq {

// ---------------------------------------------------------------------------
// Smith normal form over Z (dense; min-|entry| pivot)
// ---------------------------------------------------------------------------

std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> diag;
  size_t top = 0;
  while (top < rows && top < cols) {
    // find minimal nonzero |entry| in the remaining block
    size_t pr = 0, pc = 0;
    bool found = false;
    mpz_class best;
    for (size_t r = top; r < rows; ++r)
      for (size_t c = top; c < cols; ++c) {
        if (m[r][c] == 0) continue;
        mpz_class a = abs(m[r][c]);
        if (!found || a < best) {
          best = a;
          pr = r;
          pc = c;
          found = true;
        }
      }
    if (!found) break;
    std::swap(m[top], m[pr]);
    for (size_t r = top; r < rows; ++r) std::swap(m[r][top], m[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t r = top + 1; r < rows; ++r) {
        if (m[r][top] == 0) continue;
        mpz_class q = m[r][top] / m[top][top];
        for (size_t c = top; c < cols; ++c) m[r][c] -= q * m[top][c];
        if (m[r][top] != 0) {  // remainder smaller than pivot: swap up
          std::swap(m[top], m[r]);
          clean = false;
        }
      }
      for (size_t c = top + 1; c < cols; ++c) {
        if (m[top][c] == 0) continue;
        mpz_class q = m[top][c] / m[top][top];
        for (size_t r = top; r < rows; ++r) m[r][c] -= q * m[r][top];
        if (m[top][c] != 0) {
          for (size_t r = top; r < rows; ++r) std::swap(m[r][top], m[r][c]);
          clean = false;
        }
      }
    }
    ++top;
  }
  // enforce successive divisibility
  for (size_t k = 0; k < top; ++k) diag.push_back(abs(m[k][k]));
  for (size_t a = 0; a < diag.size(); ++a)
    for (size_t b = a + 1; b < diag.size(); ++b) {
      if (diag[a] == 0 || diag[b] % diag[a] == 0) continue;
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), diag[a].get_mpz_t(), diag[b].get_mpz_t());
      l = diag[a] / g * diag[b];
      diag[a] = g;
      diag[b] = l;
    }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<Gf2Poly> smith_invariants_gf2poly(std::vector<std::vector<Gf2Poly>> m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t top = 0;
  while (top < rows && top < cols) {
    size_t pr = 0, pc = 0;
    int best = -1;
    for (size_t r = top; r < rows; ++r)
      for (size_t c = top; c < cols; ++c) {
        if (m[r][c].is_zero()) continue;
        int d = m[r][c].degree();
        if (best < 0 || d < best) {
          best = d;
          pr = r;
          pc = c;
        }
      }
    if (best < 0) break;
    std::swap(m[top], m[pr]);
    for (size_t r = top; r < rows; ++r) std::swap(m[r][top], m[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t r = top + 1; r < rows; ++r) {
        if (m[r][top].is_zero()) continue;
        Gf2Poly q = m[r][top] / m[top][top];
        for (size_t c = top; c < cols; ++c) m[r][c] = m[r][c] + q * m[top][c];
        if (!m[r][top].is_zero()) {
          std::swap(m[top], m[r]);
          clean = false;
        }
      }
      for (size_t c = top + 1; c < cols; ++c) {
        if (m[top][c].is_zero()) continue;
        Gf2Poly q = m[top][c] / m[top][top];
        for (size_t r = top; r < rows; ++r) m[r][c] = m[r][c] + q * m[r][top];
        if (!m[top][c].is_zero()) {
          for (size_t r = top; r < rows; ++r) std::swap(m[r][top], m[r][c]);
          clean = false;
        }
      }
    }
    ++top;
  }
  std::vector<Gf2Poly> diag;
  for (size_t k = 0; k < top; ++k) diag.push_back(m[k][k]);
  for (size_t a = 0; a < diag.size(); ++a)
    for (size_t b = a + 1; b < diag.size(); ++b) {
      if (diag[a].is_zero()) std::swap(diag[a], diag[b]);
      if (diag[b].is_zero() || (diag[b] % diag[a]).is_zero()) continue;
      Gf2Poly g = Gf2Poly::gcd(diag[a], diag[b]);
      Gf2Poly l = (diag[a] / g) * diag[b];
      diag[a] = g;
      diag[b] = l;
    }
  std::sort(diag.begin(), diag.end(),
            [](const Gf2Poly& x, const Gf2Poly& y) { return x.degree() < y.degree(); });
  return diag;
}

// ---------------------------------------------------------------------------
// Sparse integer matrices: strip unit pivots, then dense SNF on the residue
// ---------------------------------------------------------------------------

namespace {

struct SparseZ {
  // columns as sparse maps row -> value
  std::vector<std::map<int, mpz_class>> cols;
  int rows = 0;
};

// Returns the full invariant-factor list of the matrix.
std::vector<mpz_class> sparse_invariants(SparseZ m) {
  int units = 0;
  // row -> set of columns with a nonzero entry there
  std::vector<std::map<int, mpz_class>>& cols = m.cols;
  std::vector<std::vector<int>> row_cols(m.rows);
  auto rebuild_rows = [&] {
    row_cols.assign(m.rows, {});
    for (int c = 0; c < (int)cols.size(); ++c)
      for (auto& [r, v] : cols[c]) row_cols[r].push_back(c);
  };
  rebuild_rows();
  std::vector<char> row_dead(m.rows, 0), col_dead(cols.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    // pick a +-1 pivot with the sparsest column
    int best_c = -1, best_r = -1;
    size_t best_sz = SIZE_MAX;
    for (int c = 0; c < (int)cols.size(); ++c) {
      if (col_dead[c]) continue;
      for (auto& [r, v] : cols[c]) {
        if (row_dead[r] || !(v == 1 || v == -1)) continue;
        if (cols[c].size() < best_sz) {
          best_sz = cols[c].size();
          best_c = c;
          best_r = r;
        }
        break;
      }
    }
    if (best_c < 0) break;
    progress = true;
    mpz_class pv = cols[best_c][best_r];
    // eliminate row best_r from all other columns
    for (int c : row_cols[best_r]) {
      if (c == best_c || col_dead[c]) continue;
      auto it = cols[c].find(best_r);
      if (it == cols[c].end()) continue;
      mpz_class f = it->second / pv;  // pv is a unit
      for (auto& [r, v] : cols[best_c]) {
        if (row_dead[r]) continue;
        auto jt = cols[c].find(r);
        if (jt == cols[c].end()) {
          mpz_class nv = -f * v;
          if (nv != 0) {
            cols[c][r] = nv;
            row_cols[r].push_back(c);
          }
        } else {
          jt->second -= f * v;
          if (jt->second == 0) cols[c].erase(jt);
        }
      }
    }
    row_dead[best_r] = 1;
    col_dead[best_c] = 1;
    ++units;
  }
  // densify the remainder
  std::vector<int> live_rows, live_cols;
  for (int r = 0; r < m.rows; ++r)
    if (!row_dead[r]) live_rows.push_back(r);
  for (int c = 0; c < (int)cols.size(); ++c)
    if (!col_dead[c]) live_cols.push_back(c);
  std::map<int, int> rix;
  for (size_t k = 0; k < live_rows.size(); ++k) rix[live_rows[k]] = (int)k;
  std::vector<std::vector<mpz_class>> dense(
      live_rows.size(), std::vector<mpz_class>(live_cols.size(), 0));
  bool any = false;
  for (size_t k = 0; k < live_cols.size(); ++k)
    for (auto& [r, v] : cols[live_cols[k]])
      if (!row_dead[r]) {
        dense[rix[r]][k] = v;
        any = true;
      }
  std::vector<mpz_class> inv(units, 1);
  if (any) {
    auto rest = smith_invariants(std::move(dense));
    inv.insert(inv.end(), rest.begin(), rest.end());
  }
  return inv;
}

int gf2_rank(std::vector<std::vector<uint64_t>> cols) {
  int rank = 0;
  std::vector<int> pivot_of_col;
  std::vector<std::vector<uint64_t>> basis;
  std::vector<int> pivots;
  for (auto& col : cols) {
    for (size_t b = 0; b < basis.size(); ++b) {
      int p = pivots[b];
      if ((size_t)(p / 64) < col.size() && (col[p / 64] >> (p % 64) & 1))
        for (size_t w = 0; w < basis[b].size() && w < col.size(); ++w)
          col[w] ^= basis[b][w];
    }
    int p = -1;
    for (int w = (int)col.size() - 1; w >= 0 && p < 0; --w)
      if (col[w]) {
        for (int bit = 63; bit >= 0; --bit)
          if (col[w] >> bit & 1) {
            p = w * 64 + bit;
            break;
          }
      }
    if (p >= 0) {
      basis.push_back(col);
      pivots.push_back(p);
      ++rank;
    }
  }
  (void)pivot_of_col;
  return rank;
}

}  // namespace

// ---------------------------------------------------------------------------
// Homology assembly
// ---------------------------------------------------------------------------

namespace {

// block key: (degree index, j or sentinel)
using BlockKey = std::pair<int, int>;
constexpr int kNoJ = INT32_MIN;

struct BlockData {
  std::vector<EnhancedState> gens;
  std::map<EnhancedState, int> index;
};

// invariants of one differential block (rows: target block, cols: source)
struct BlockResult {
  int rank = 0;
  std::vector<mpz_class> z_invariants;        // ring Integers
  std::vector<Gf2Poly> poly_invariants;       // ring Mod2Poly
};

}  // namespace

int HomologyResult::total_rank() const {
  int t = 0;
  for (const auto& g : groups) t += g.rank;
  return t;
}

nlohmann::json HomologyResult::to_json() const {
  nlohmann::json spec_j;
  switch (spec.ring) {
    case RingTag::Integers:
      spec_j = {{"ring", "Z"}, {"s", spec.s_value.get_str()}, {"t", spec.t_value.get_str()}};
      break;
    case RingTag::Mod2:
      spec_j = {{"ring", "Z/2"}, {"s", spec.s_value.get_str()}, {"t", spec.t_value.get_str()}};
      break;
    case RingTag::Mod2Poly:
      spec_j = {{"ring", "Z/2[s]"}, {"t", "0"}};
      break;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : groups) {
    nlohmann::json e = {{"i", g.i}, {"rank", g.rank}, {"torsion", g.torsion}};
    e["j"] = g.j ? nlohmann::json(*g.j) : nlohmann::json(nullptr);
    arr.push_back(e);
  }
  return {{"spec", spec_j}, {"groups", arr}};
}

static HomologyResult homology_impl(const ComplexRepr& cx, const Specialization& sp,
                                    bool bigraded) {
  const LinkDiagram& d = cx.diagram;
  if (bigraded && !sp.preserves_j())
    throw std::runtime_error("bigraded homology requires a j-preserving specialization");

  // partition generators into blocks
  std::map<BlockKey, BlockData> blocks;
  for (int k = 0; k < (int)cx.degrees.size(); ++k) {
    for (const auto& g : cx.degrees[k]) {
      int j = bigraded ? grading_j(d, cx.smoothing(g.marker_mask), g) : kNoJ;
      auto& b = blocks[{k, j}];
      b.index[g] = (int)b.gens.size();
      b.gens.push_back(g);
    }
  }

  // differential block results, keyed by the source block
  std::map<BlockKey, BlockResult> dres;
  for (auto& [key, src] : blocks) {
    auto [k, j] = key;
    BlockKey tkey{k + 1, j};
    auto tit = blocks.find(tkey);
    BlockResult res;
    if (tit != blocks.end()) {
      const BlockData& dst = tit->second;
      if (sp.ring == RingTag::Integers) {
        SparseZ m;
        m.rows = (int)dst.gens.size();
        m.cols.resize(src.gens.size());
        for (size_t c = 0; c < src.gens.size(); ++c)
          for (const auto& [t, coeff] : differential(d, cx.calc, src.gens[c])) {
            mpz_class v = coeff.eval(sp.s_value, sp.t_value);
            auto it = dst.index.find(t);
            if (v != 0 && it != dst.index.end()) m.cols[c][it->second] = v;
          }
        res.z_invariants = sparse_invariants(std::move(m));
        res.rank = (int)res.z_invariants.size();
      } else if (sp.ring == RingTag::Mod2) {
        size_t words = dst.gens.size() / 64 + 1;
        std::vector<std::vector<uint64_t>> colsb(src.gens.size(),
                                                 std::vector<uint64_t>(words, 0));
        for (size_t c = 0; c < src.gens.size(); ++c)
          for (const auto& [t, coeff] : differential(d, cx.calc, src.gens[c])) {
            mpz_class v = coeff.eval(sp.s_value, sp.t_value);
            auto it = dst.index.find(t);
            if (it != dst.index.end() && mpz_odd_p(v.get_mpz_t()))
              colsb[c][it->second / 64] ^= uint64_t{1} << (it->second % 64);
          }
        res.rank = gf2_rank(std::move(colsb));
      } else {  // Mod2Poly: t = 0, s the variable
        std::vector<std::vector<Gf2Poly>> dense(
            dst.gens.size(), std::vector<Gf2Poly>(src.gens.size()));
        for (size_t c = 0; c < src.gens.size(); ++c)
          for (const auto& [t, coeff] : differential(d, cx.calc, src.gens[c])) {
            auto it = dst.index.find(t);
            if (it == dst.index.end()) continue;
            Gf2Poly p;
            for (const auto& [mono, cv] : coeff.terms())
              if (mono.b == 0 && mpz_odd_p(cv.get_mpz_t())) p.set_coeff(mono.a);
            dense[it->second][c] = p;
          }
        res.poly_invariants = smith_invariants_gf2poly(std::move(dense));
        res.rank = (int)res.poly_invariants.size();
      }
    }
    dres[key] = std::move(res);
  }

  HomologyResult out;
  out.spec = sp;
  for (auto& [key, b] : blocks) {
    auto [k, j] = key;
    int out_rank = dres[key].rank;
    int in_rank = 0;
    std::vector<std::string> torsion;
    BlockKey prev{k - 1, j};
    auto pit = dres.find(prev);
    if (pit != dres.end()) {
      in_rank = pit->second.rank;
      if (sp.ring == RingTag::Integers) {
        for (const auto& f : pit->second.z_invariants)
          if (f > 1) torsion.push_back(f.get_str());
      } else if (sp.ring == RingTag::Mod2Poly) {
        for (const auto& f : pit->second.poly_invariants)
          if (!f.is_one() && !f.is_zero()) torsion.push_back(f.str("s"));
      }
    }
    int rank = (int)b.gens.size() - out_rank - in_rank;
    if (rank != 0 || !torsion.empty()) {
      HomologyGroup g;
      g.i = k + cx.min_i();
      if (bigraded) g.j = j;
      g.rank = rank;
      g.torsion = std::move(torsion);
      out.groups.push_back(std::move(g));
    }
  }
  std::sort(out.groups.begin(), out.groups.end(), [](const auto& a, const auto& b) {
    if (a.i != b.i) return a.i < b.i;
    return a.j.value_or(0) < b.j.value_or(0);
  });
  return out;
}

HomologyResult homology_at(const ComplexRepr& cx, const Specialization& sp,
                           bool bigraded) {
  if (sp.ring == RingTag::Mod2Poly)
    throw std::runtime_error("use mod2_bar_natan for the GF(2)[s] theory");
  return homology_impl(cx, sp, bigraded);
}

HomologyResult mod2_bar_natan(const ComplexRepr& cx) {
  return homology_impl(cx, Specialization::bar_natan(), false);
}

}  // namespace khoveq
