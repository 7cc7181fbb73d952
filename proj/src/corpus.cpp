#include "khoveq/corpus.hpp"

namespace khoveq {

const std::vector<std::pair<std::string, std::string>>& corpus_diagrams() {
  static const std::vector<std::pair<std::string, std::string>> k = {
      {"unknot", "O"},
      {"unlink2", "O O"},
      {"kink+", "X(1,2,2,1)"},
      {"kink-", "X(1,1,2,2)"},
      {"hopf+", "X(1,4,2,3) X(3,2,4,1)"},
      {"hopf-", "X(4,2,3,1) X(2,4,1,3)"},
      {"trefoil", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"},
      {"trefoil-left", "X(4,2,5,1) X(6,4,1,3) X(2,6,3,5)"},
      {"figure8", "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"},
      // closure of the 3-braid s1^-1 s2^-1 s1^-1: carries the central R3
      // triangle (two components) in the orientation the move maps handle
      {"braid-r3", "X(1,4,5,2) X(5,6,3,3) X(4,1,2,6)"},
      // braid-r3 padded with an extra bigon and kink away from the triangle;
      // six crossings, still R3-ready
      {"r3-six",
       "X(5,10,6,9) X(6,8,7,7) X(12,1,9,8) X(11,1,12,2) X(10,5,11,4) "
       "X(2,3,3,4)"},
      {"5_1", "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)"},
      {"5_2", "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)"},
  };
  return k;
}

LinkDiagram corpus_diagram(const std::string& name) {
  for (const auto& [n, pd] : corpus_diagrams())
    if (n == name) return LinkDiagram::parse(pd);
  throw DiagramError("unknown corpus diagram '" + name + "'");
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<Crossing> cr;
  for (const auto& c : d.crossings()) {
    Crossing m;
    // rotate so the old over-in lands at position 0; the old over strand
    // becomes the under strand and vice versa
    int shift = c.over_in_pos;  // 1 or 3
    for (int k = 0; k < 4; ++k) m.arcs[k] = c.arcs[(k + shift) % 4];
    cr.push_back(m);
  }
  return LinkDiagram(std::move(cr), d.extra_circles());
}

}  // namespace khoveq
