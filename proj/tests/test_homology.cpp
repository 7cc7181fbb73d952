#include "doctest.h"
#include "khoveq/corpus.hpp"
#include "khoveq/homology.hpp"

using namespace khoveq;

namespace {
std::vector<std::vector<mpz_class>> zmat(std::vector<std::vector<long>> v) {
  std::vector<std::vector<mpz_class>> m;
  for (auto& row : v) m.emplace_back(row.begin(), row.end());
  return m;
}

const HomologyGroup* find_group(const HomologyResult& h, int i, int j) {
  for (const auto& g : h.groups)
    if (g.i == i && g.j && *g.j == j) return &g;
  return nullptr;
}
}  // namespace

TEST_CASE("smith normal form basics") {
  CHECK(smith_invariants(zmat({{2}})) == std::vector<mpz_class>{2});
  CHECK(smith_invariants(zmat({{0}})).empty());
  CHECK(smith_invariants(zmat({{2, 4}, {6, 8}})) == std::vector<mpz_class>({2, 4}));
  CHECK(smith_invariants(zmat({{1, 0}, {0, 1}})) == std::vector<mpz_class>({1, 1}));
  // 2x3 rank 2 with torsion 3: diag(1,3) after reduction
  CHECK(smith_invariants(zmat({{1, 0, 0}, {0, 3, 0}})) == std::vector<mpz_class>({1, 3}));
}

TEST_CASE("unknot homology") {
  auto cx = build_complex(corpus_diagram("unknot"), FrobeniusCalculus::universal());
  auto h = homology_at(cx, Specialization::integers(0, 0), true);
  REQUIRE(h.groups.size() == 2);
  CHECK(find_group(h, 0, -1) != nullptr);
  CHECK(find_group(h, 0, 1) != nullptr);
  CHECK(h.total_rank() == 2);
  for (const auto& g : h.groups) CHECK(g.torsion.empty());
}

TEST_CASE("kink diagrams give unknot homology") {
  for (const char* name : {"kink+", "kink-"}) {
    CAPTURE(name);
    auto cx = build_complex(corpus_diagram(name), FrobeniusCalculus::universal());
    auto h = homology_at(cx, Specialization::integers(0, 0), true);
    CHECK(h.total_rank() == 2);
    CHECK(find_group(h, 0, 1) != nullptr);
    CHECK(find_group(h, 0, -1) != nullptr);
    for (const auto& g : h.groups) CHECK(g.torsion.empty());
  }
}

TEST_CASE("right trefoil bigraded homology regression") {
  auto cx = build_complex(corpus_diagram("trefoil"), FrobeniusCalculus::universal());
  auto h = homology_at(cx, Specialization::integers(0, 0), true);
  // free Z at (0,1),(0,3),(2,5),(3,9); Z/2 torsion at (3,7); nothing else
  struct Want { int i, j, rank; std::vector<std::string> tor; };
  std::vector<Want> want = {{0, 1, 1, {}}, {0, 3, 1, {}}, {2, 5, 1, {}},
                            {3, 7, 0, {"2"}}, {3, 9, 1, {}}};
  REQUIRE(h.groups.size() == want.size());
  for (const auto& w : want) {
    CAPTURE(w.i);
    CAPTURE(w.j);
    const auto* g = find_group(h, w.i, w.j);
    REQUIRE(g != nullptr);
    CHECK(g->rank == w.rank);
    CHECK(g->torsion == w.tor);
  }
}

TEST_CASE("left trefoil is the mirror regression") {
  auto cx = build_complex(corpus_diagram("trefoil-left"), FrobeniusCalculus::universal());
  auto h = homology_at(cx, Specialization::integers(0, 0), true);
  CHECK(find_group(h, 0, -1) != nullptr);
  CHECK(find_group(h, -2, -5) != nullptr);
  CHECK(find_group(h, -3, -9) != nullptr);
  CHECK(h.total_rank() == 4);
}

TEST_CASE("figure eight khovanov ranks") {
  auto cx = build_complex(corpus_diagram("figure8"), FrobeniusCalculus::universal());
  auto h = homology_at(cx, Specialization::integers(0, 0), true);
  CHECK(h.total_rank() == 6);
  CHECK(find_group(h, -2, -5) != nullptr);
  CHECK(find_group(h, -1, -1) != nullptr);
  CHECK(find_group(h, 0, -1) != nullptr);
  CHECK(find_group(h, 0, 1) != nullptr);
  CHECK(find_group(h, 1, 1) != nullptr);
  CHECK(find_group(h, 2, 5) != nullptr);
}

TEST_CASE("lee rank law") {
  auto lee = Specialization::integers(0, 1);
  struct Case { const char* name; int rank; };
  for (auto [name, rank] : std::initializer_list<Case>{
           {"unknot", 2}, {"trefoil", 2}, {"trefoil-left", 2}, {"figure8", 2},
           {"hopf+", 4}, {"hopf-", 4}, {"unlink2", 4}}) {
    CAPTURE(name);
    auto cx = build_complex(corpus_diagram(name), FrobeniusCalculus::universal());
    auto h = homology_at(cx, lee, false);
    CHECK(h.total_rank() == rank);
  }
}

TEST_CASE("mod 2 khovanov of the trefoil") {
  auto cx = build_complex(corpus_diagram("trefoil"), FrobeniusCalculus::universal());
  auto h = homology_at(cx, Specialization::mod2(0, 0), false);
  // Z/2 ranks: dim = 2,0,1,2 + the torsion contributes twice at i=2,3: total 6
  int total = h.total_rank();
  CHECK(total == 6);
}

TEST_CASE("bar-natan over gf2[s]") {
  auto u = build_complex(corpus_diagram("unknot"), FrobeniusCalculus::universal());
  CHECK(mod2_bar_natan(u).total_rank() == 2);
  auto o2 = build_complex(corpus_diagram("unlink2"), FrobeniusCalculus::universal());
  CHECK(mod2_bar_natan(o2).total_rank() == 4);
  auto tre = build_complex(corpus_diagram("trefoil"), FrobeniusCalculus::universal());
  auto h = mod2_bar_natan(tre);
  CHECK(h.total_rank() == 2);
  // torsion factors are powers of s; their count matches the extra mod-2
  // Khovanov rank at s=0 (6 = 2 free + 2*2 from s-torsion)
  int tor = 0;
  for (const auto& g : h.groups) tor += (int)g.torsion.size();
  CHECK(tor == 2);
  for (const auto& g : h.groups)
    for (const auto& f : g.torsion) CHECK(f.substr(0, 1) == "s");
}

TEST_CASE("bigraded rejected at non-j-preserving specialization") {
  auto cx = build_complex(corpus_diagram("unknot"), FrobeniusCalculus::universal());
  CHECK_THROWS(homology_at(cx, Specialization::integers(0, 1), true));
}
