#include "doctest.h"
#include "khoveq/corpus.hpp"
#include "khoveq/invariants.hpp"

using namespace khoveq;

namespace {
LaurentPoly lp(std::initializer_list<std::pair<int, long>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p.add_term(e, c);
  return p;
}
}  // namespace

TEST_CASE("kauffman bracket basics") {
  CHECK(kauffman_bracket(corpus_diagram("unknot")) == LaurentPoly(1));
  CHECK(kauffman_bracket(corpus_diagram("unlink2")) == lp({{2, -1}, {-2, -1}}));
  // kinks are unknots after writhe correction
  CHECK(kauffman_bracket(corpus_diagram("kink+")) == LaurentPoly(1));
  CHECK(kauffman_bracket(corpus_diagram("kink-")) == LaurentPoly(1));
}

TEST_CASE("right trefoil classical bracket") {
  // normalized invariant f = (-A^3)^{-w}<D>: right trefoil gives
  // A^-4 + A^-12 - A^-16
  auto f = kauffman_bracket(corpus_diagram("trefoil"));
  CHECK(f == lp({{-4, 1}, {-12, 1}, {-16, -1}}));
  auto g = kauffman_bracket(corpus_diagram("trefoil-left"));
  CHECK(g == lp({{4, 1}, {12, 1}, {16, -1}}));
}

TEST_CASE("graded euler of the trefoil is the unnormalized jones") {
  auto cx = build_complex(corpus_diagram("trefoil"), FrobeniusCalculus::universal());
  CHECK(graded_euler(cx) == lp({{1, 1}, {3, 1}, {5, 1}, {9, -1}}));
  auto u = build_complex(corpus_diagram("unknot"), FrobeniusCalculus::universal());
  CHECK(graded_euler(u) == lp({{1, 1}, {-1, 1}}));
}

TEST_CASE("chi-bracket identity across the corpus") {
  for (const auto& [name, pd] : corpus_diagrams()) {
    CAPTURE(name);
    auto d = LinkDiagram::parse(pd);
    auto cx = build_complex(d, FrobeniusCalculus::universal());
    CHECK(chi_matches_bracket(d, cx));
  }
}

TEST_CASE("lee rank law") {
  for (const char* name : {"unknot", "trefoil", "trefoil-left", "figure8", "hopf+"}) {
    CAPTURE(name);
    CHECK(lee_rank_check(corpus_diagram(name)));
  }
}
