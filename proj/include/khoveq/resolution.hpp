#pragma once

// Kauffman states of a diagram: a marker (+/-) per crossing, the resulting
// circle collection, and enhanced states (a sign per circle) with their
// (i,j) bigrading.
//
// Marker +1 pairs the crossing's positions (0,3) and (1,2) (the oriented
// smoothing at a positive crossing); marker -1 pairs (0,1) and (2,3). Bit k
// of a state mask set means crossing k carries the minus marker.

#include <cstdint>
#include <map>
#include <vector>

#include "khoveq/diagram.hpp"

namespace khoveq {

inline int popcount32(uint32_t x) {
  int c = 0;
  while (x) { x &= x - 1; ++c; }
  return c;
}

// Circles of one Kauffman state. Circle indices are deterministic: circles
// through arcs ordered by their smallest arc id, then the diagram's
// crossingless circles.
struct Smoothing {
  int circle_count = 0;
  std::map<int, int> circle_of_arc;
  std::vector<std::vector<int>> arcs_of_circle;  // sorted; empty for crossingless
};

Smoothing smooth(const LinkDiagram& d, uint32_t marker_mask);

// sigma = #plus markers - #minus markers
inline int sigma_of(uint32_t mask, int n) { return n - 2 * popcount32(mask); }

// Homological grading i = (w - sigma)/2 = #minus markers - n_minus.
inline int grading_i(const LinkDiagram& d, uint32_t mask) {
  return popcount32(mask) - d.n_minus();
}

// An enhanced state: markers plus a sign per circle. Bit c of sign_mask set
// means circle c is labeled '-'; clear means '+'.
struct EnhancedState {
  uint32_t marker_mask = 0;
  uint32_t sign_mask = 0;
  friend bool operator==(const EnhancedState&, const EnhancedState&) = default;
  bool operator<(const EnhancedState& o) const {
    if (marker_mask != o.marker_mask) return marker_mask < o.marker_mask;
    return sign_mask < o.sign_mask;
  }
};

// Quantum grading. The '-' label is the unit of the Frobenius algebra and
// carries q-degree +1, the '+' label (the algebra generator) q-degree -1;
// j = sum of circle degrees + #minus markers + n_plus - 2 n_minus. With this
// normalization the (s,t)=(0,0) differential preserves j and the s^a t^b
// component raises it by 2a+4b (so s,t in degrees -2,-4 make the
// differential homogeneous of bidegree (1,0)).
int grading_j(const LinkDiagram& d, const Smoothing& sm, const EnhancedState& st);

// tau = #plus circles - #minus circles.
inline int tau_of(const Smoothing& sm, uint32_t sign_mask) {
  return sm.circle_count - 2 * popcount32(sign_mask);
}

}  // namespace khoveq
