#pragma once

// The chain complex of enhanced states and the universal differential
// delta_{s,t}: flip one positive marker, apply the Frobenius calculus to the
// touched circles, and multiply by the label-reordering sign
// (-1)^{#negative-marked crossings with larger index}.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "khoveq/diagram.hpp"
#include "khoveq/frobenius.hpp"
#include "khoveq/resolution.hpp"

namespace khoveq {

// Sparse chain vector over Z[s,t]; no zero coefficients.
using ChainVector = std::map<EnhancedState, BivariatePoly>;

void chain_add(ChainVector& v, const EnhancedState& g, const BivariatePoly& c);
ChainVector chain_scaled(const ChainVector& v, const BivariatePoly& c);
void chain_add_all(ChainVector& v, const ChainVector& w, const BivariatePoly& c = BivariatePoly(1));

ChainVector differential(const LinkDiagram& d, const FrobeniusCalculus& calc,
                         const EnhancedState& g);
ChainVector differential(const LinkDiagram& d, const FrobeniusCalculus& calc,
                         const ChainVector& v);

struct ComplexRepr {
  LinkDiagram diagram;
  FrobeniusCalculus calc;
  // degrees[k] holds the generators with i = k + min_i, in enumeration order
  // (marker masks ascending, sign masks ascending within a mask).
  std::vector<std::vector<EnhancedState>> degrees;
  std::map<uint32_t, Smoothing> smoothings;

  int min_i() const { return -diagram.n_minus(); }
  const Smoothing& smoothing(uint32_t mask) const { return smoothings.at(mask); }
  int total_generators() const;
};

// Cap from KHOVEQ_MAX_CROSSINGS if set, else 14. Throws DiagramError beyond it.
int crossing_cap();
ComplexRepr build_complex(const LinkDiagram& d, const FrobeniusCalculus& calc);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> witnesses;
};

// d(d(g)) == 0 symbolically for every generator.
CheckReport verify_delta_squared(const ComplexRepr& cx);

// Every differential term with coefficient monomial s^a t^b satisfies
// delta-i = 1 and delta-j = 2a + 4b (deg s = -2, deg t = -4 makes the
// differential homogeneous of bidegree (1,0)).
CheckReport check_grading_law(const ComplexRepr& cx);

nlohmann::json complex_to_json(const ComplexRepr& cx);

std::string generator_str(const EnhancedState& g, int n_crossings, int n_circles);

}  // namespace khoveq
