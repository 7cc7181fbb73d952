#pragma once

// Chain-level Reidemeister move maps and homology-level invariance.
//
// For every removable move site the complex of the bigger diagram deformation
// retracts onto a subcomplex. The homotopy h is one uniform local rule (a
// "unit flip" that turns a negative marker at a designated crossing back into
// a positive one, creating or absorbing the small circle of the site), and
// the retraction is derived from it: rho = id - (delta h + h delta). The
// verification suite then checks, symbolically over Z[s,t]:
//   - rho is a chain map: delta rho == rho delta,
//   - the homotopy identity: delta h + h delta == id - rho,
//   - rho is idempotent and h h == 0.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "khoveq/complex.hpp"
#include "khoveq/diagram.hpp"
#include "khoveq/homology.hpp"

namespace khoveq {

// Sparse linear endomorphism of the chain module; missing columns are zero.
struct LinearMap {
  std::map<EnhancedState, ChainVector> cols;

  ChainVector apply_gen(const EnhancedState& g) const;
  ChainVector apply(const ChainVector& v) const;
};

// Local data of a removable move site.
//   R1: cross = {k};       small_arcs = the kink loop arc.
//   R2: cross = {a, b};    small_arcs = the two bigon arcs. a is the crossing
//       whose positive marker closes the bigon, b the one whose negative
//       marker does.
//   R3: cross = {a, b, c}; small_arcs = the three triangle arcs. b is the
//       unique crossing whose negative marker closes its triangle corner;
//       a is the corner between the middle and bottom strands, c between the
//       top and middle strands (top = the strand over at both of its
//       triangle corners, bottom = under at both).
struct MoveTangle {
  MoveKind kind = MoveKind::R1;
  std::vector<int> cross;
  std::vector<int> small_arcs;  // sorted
};

// Classify a removable site (R1/R2 Remove site or R3 site) into its tangle
// data. Throws DiagramError if the site does not have the supported local
// orientation (e.g. an R3 triangle whose corners close with two negative
// markers).
MoveTangle analyze_site(const LinkDiagram& d, const MoveSite& site);

// Sign of the permutation sorting the negative letters of `mask` (ascending
// crossing indices) into (remaining letters ascending, then `suffix` in the
// given order). Every suffix letter must be a negative letter of `mask`.
int perm_sign(uint32_t mask, const std::vector<int>& suffix);

// The local homotopy applied to one generator / assembled over the complex.
ChainVector homotopy_h(const LinkDiagram& d, const MoveTangle& t,
                       const EnhancedState& g);
LinearMap homotopy_matrix(const ComplexRepr& cx, const MoveTangle& t);

// rho = id - (delta h + h delta).
LinearMap retraction_matrix(const ComplexRepr& cx, const LinearMap& h);

// delta f == f delta on every generator.
CheckReport verify_chain_map(const ComplexRepr& cx, const LinearMap& f);
// delta h + h delta == id - rho, h h == 0, rho rho == rho.
CheckReport verify_homotopy(const ComplexRepr& cx, const LinearMap& h,
                            const LinearMap& rho);

struct MoveCheckReport {
  bool ok = true;
  std::string move;  // "r1" / "r2" / "r3"
  std::vector<int> site_crossings;
  CheckReport chain_map;
  CheckReport homotopy;
  nlohmann::json to_json() const;
};

// Full chain-level suite for one site of d over the given calculus.
MoveCheckReport verify_move(const LinkDiagram& d, const MoveSite& site,
                            const FrobeniusCalculus& calc);

// ---------------------------------------------------------------------------
// Homology-level invariance under random move sequences.

struct InvarianceCheck {
  Specialization sp;
  bool bigraded = false;
  std::string name;
};

// (0,0) over Z bigraded, (0,1) over Z, (0,0) mod 2 bigraded.
std::vector<InvarianceCheck> default_invariance_checks();

bool same_homology(const HomologyResult& x, const HomologyResult& y);

struct InvarianceReport {
  bool ok = true;
  uint64_t seed = 0;
  std::vector<std::string> trail;  // one line per applied move
  std::vector<std::string> failures;
  nlohmann::json to_json() const;
};

// Apply `length` random moves (seeded, reproducible), re-deriving the
// homology after each one and comparing against the starting diagram's.
// Candidate moves keep the diagram planar and under `max_crossings`.
InvarianceReport verify_invariance(const LinkDiagram& d, uint64_t seed,
                                   int length,
                                   const std::vector<InvarianceCheck>& checks,
                                   int max_crossings = 8);

}  // namespace khoveq
