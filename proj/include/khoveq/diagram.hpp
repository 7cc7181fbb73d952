#pragma once

// Oriented link diagrams in PD notation, with Reidemeister move application.
//
// PD format: whitespace-separated tokens. `X(a,b,c,d)` lists the four arc ids
// around a crossing counterclockwise starting from the incoming under-strand;
// `X+(...)` / `X-(...)` force the crossing sign; `O` is a crossingless circle;
// `#` starts a comment line.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khoveq {

struct PdParseError : std::runtime_error {
  PdParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One PD crossing. Positions are 0..3 counterclockwise; position 0 is the
// incoming under-strand, position 2 the outgoing under-strand. Exactly one of
// positions 1,3 is the incoming over-strand; sign = +1 iff it is position 1.
struct Crossing {
  std::array<int, 4> arcs{};
  int over_in_pos = 1;               // 1 or 3, resolved by orientation tracing
  std::optional<int> sign_override;  // from X+ / X- tokens

  int sign() const { return sign_override ? *sign_override : (over_in_pos == 1 ? +1 : -1); }
  int over_in() const { return arcs[over_in_pos]; }
  int over_out() const { return arcs[over_in_pos == 1 ? 3 : 1]; }
  int under_in() const { return arcs[0]; }
  int under_out() const { return arcs[2]; }
};

enum class MoveKind { R1, R2, R3 };
enum class MoveDirection { Insert, Remove };

// A Reidemeister move site. For Remove (and R3), `ids` are crossing indices
// into the diagram's crossing list; for R1/R2 Insert they are arc ids.
struct MoveSite {
  MoveKind kind = MoveKind::R1;
  std::vector<int> ids;
  int variant = 0;
};

struct MoveResult;

class LinkDiagram {
 public:
  LinkDiagram() = default;
  LinkDiagram(std::vector<Crossing> crossings, int extra_circles);

  static LinkDiagram parse(const std::string& text);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int extra_circles() const { return extra_circles_; }

  int writhe() const;
  int n_plus() const;
  int n_minus() const;

  // All arc ids, ascending.
  std::vector<int> arc_ids() const;
  // Successor arc along the orientation.
  int next_arc(int arc) const;
  // Link components (lists of arc ids in orientation order), plus
  // extra_circles() crossingless ones not listed here.
  std::vector<std::vector<int>> components() const;
  int component_count() const;

  // Endpoint where `arc` is emitted / absorbed: (crossing index, position).
  std::pair<int, int> arc_tail(int arc) const;
  std::pair<int, int> arc_head(int arc) const;

  // Genus-0 check of the underlying 4-valent map (per connected piece).
  bool planar() const;

  std::string to_pd_text() const;
  // Renumber arcs 1..2n along orientation (components ordered by their
  // smallest current arc id). Returns the renumbered diagram and the old->new
  // arc map.
  LinkDiagram canonicalized(std::map<int, int>* arc_map = nullptr) const;

  std::vector<MoveSite> find_move_sites(MoveKind kind, MoveDirection dir = MoveDirection::Remove) const;
  MoveResult apply_move(const MoveSite& site, MoveDirection dir) const;

 private:
  void validate_and_orient();

  std::vector<Crossing> crossings_;
  int extra_circles_ = 0;
  // arc id -> (emitting endpoint, absorbing endpoint); endpoint = cross*4+pos
  std::map<int, std::pair<int, int>> arc_ends_;
};

struct MoveResult {
  LinkDiagram diagram;
  // old crossing index -> new crossing index, for crossings untouched by the
  // move (R3 also maps its three site crossings).
  std::map<int, int> crossing_map;
  // old arc id -> new arc id for surviving arcs.
  std::map<int, int> arc_map;
};

}  // namespace khoveq
