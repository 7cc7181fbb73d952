#pragma once

// Invariance conditions for a (possibly user-supplied) Frobenius calculus.
//
// The derived homology is invariant under R1 as soon as the three merge
// identities m(+,-) = (+), m(-,+) = (+), m(-,-) = (-) hold. For R2 and R3
// two more local equations are needed; both live on the bigon tangle (two
// strands crossing twice) and depend on how its four ends are closed up:
//   - the one-to-one equation: the projection of delta(S_{++}(p,q)) onto the
//     small-circle states with '+'-labeled small circle is exactly
//     S_{+-}(p,q),
//   - the small-circle composite equation: the '-'-labeled small-circle part
//     of delta(S_{++}(p,q)), corrected by the merge term S_{+-,-}(m(p,+),q),
//     equals S_{+-,-} with the composite labels ((p:q):(q:p),(q:p):(p:q)).
// Both are checked exhaustively on the two closures of the tangle (caps on
// one circle / on two circles).

#include <string>
#include <vector>

#include "json.hpp"
#include "khoveq/complex.hpp"
#include "khoveq/diagram.hpp"
#include "khoveq/frobenius.hpp"

namespace khoveq {

struct ConditionReport {
  bool ok = true;
  std::vector<std::string> witnesses;
};

// The composite labels ((p:q):(q:p), (q:p):(p:q)) as a two-slot combo.
// Caps on distinct circles: Delta(m(p,q)). Caps on one circle (p == q
// required): m(Delta(p)), each single output w read as the pair (w, w).
SignCombo composite_expand(const FrobeniusCalculus& calc, Sign p, Sign q,
                           bool same_component);

// The two closures of the bigon tangle.
LinkDiagram bigon_closure_one_circle();   // caps join into one circle
LinkDiagram bigon_closure_two_circles();  // caps stay distinct

ConditionReport check_merge_identities(const FrobeniusCalculus& calc);
ConditionReport check_one_to_one(const FrobeniusCalculus& calc);
ConditionReport check_small_circle_composite(const FrobeniusCalculus& calc);

struct CalculusVerdict {
  bool r1 = false;   // merge identities
  bool r23 = false;  // + one-to-one + composite
  bool delta_squared = true;  // delta^2 == 0 (spot-checked), reported separately
  ConditionReport merges, one_to_one, composite;
  std::vector<std::string> delta_squared_witnesses;
  nlohmann::json to_json() const;
};

CalculusVerdict check_calculus(const FrobeniusCalculus& calc);

// Reference broken calculi for negative testing.
FrobeniusCalculus broken_merge_calculus();  // m(-,-) = (+)
FrobeniusCalculus broken_split_calculus();  // Delta(-) with terms deleted

}  // namespace khoveq
