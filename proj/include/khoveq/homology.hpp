#pragma once

// Homology of a ComplexRepr at PID specializations via Smith normal form:
// integers (any fixed s,t), integers mod 2, and GF(2)[s] with t = 0.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "khoveq/complex.hpp"
#include "khoveq/gf2poly.hpp"
#include "khoveq/poly.hpp"

namespace khoveq {

struct HomologyGroup {
  int i = 0;
  std::optional<int> j;           // only in bigraded mode
  int rank = 0;                   // free rank
  std::vector<std::string> torsion;  // non-unit invariant factors, as strings
};

struct HomologyResult {
  Specialization spec;
  std::vector<HomologyGroup> groups;  // nonzero groups only, sorted by (i,j)

  int total_rank() const;
  nlohmann::json to_json() const;
};

// Smith normal form invariant factors (including units and zeros dropped;
// returns the nonzero diagonal d_1 | d_2 | ..., all positive).
std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m);
std::vector<Gf2Poly> smith_invariants_gf2poly(std::vector<std::vector<Gf2Poly>> m);

// Homology at an integer or mod-2 specialization. Bigraded mode requires a
// j-preserving specialization ((0,0), not Bar-Natan); throws otherwise.
HomologyResult homology_at(const ComplexRepr& cx, const Specialization& sp,
                           bool bigraded);

// GF(2)[s] Bar-Natan homology (t = 0, s the polynomial variable).
HomologyResult mod2_bar_natan(const ComplexRepr& cx);

}  // namespace khoveq
