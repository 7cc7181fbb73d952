#pragma once

// Independent oracles: Kauffman bracket state sum (no complex machinery),
// graded Euler characteristic, Lee rank law.

#include "khoveq/complex.hpp"
#include "khoveq/diagram.hpp"
#include "khoveq/poly.hpp"

namespace khoveq {

// Raw state sum  sum_states A^{#A - #B} * (-A^2 - A^-2)^{#circles}.
// The A-smoothing pairs PD positions (0,3) and (1,2).
LaurentPoly kauffman_bracket_raw(const LinkDiagram& d);

// Normalized bracket: delta^(#circles-1) state sum with writhe correction
// (-A)^{-3w}; the unknot gives 1.
LaurentPoly kauffman_bracket(const LinkDiagram& d);

// sum over generators of (-1)^i q^j (variable q).
LaurentPoly graded_euler(const ComplexRepr& cx);

// chi-bracket identity:
//   graded_euler(q = -A^-2) == (-1)^{n_-} (-A^-2)^{n_+ - 2 n_-} A^{-n} * raw bracket.
bool chi_matches_bracket(const LinkDiagram& d, const ComplexRepr& cx);

// Lee homology total rank equals 2^{#components}.
bool lee_rank_check(const LinkDiagram& d);

}  // namespace khoveq
