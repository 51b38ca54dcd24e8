#pragma once

// Welded Reidemeister moves as oriented rewrite patterns on Gauss words.
//
// A pattern lists one template per strand it touches. Deletes, R3 and OC
// match each strand's `before` word as a cyclically adjacent run somewhere in
// the code and replace it by `after`; inserts splice `after` into a gap.
// Crossing variables ("slots") are bound to concrete crossing identifiers.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weld/core.hpp"

namespace weld {

enum class MoveKind { R1Insert, R1Delete, R2Insert, R2Delete, R3, OC };

std::string to_string(MoveKind kind);
MoveKind move_kind_from_string(const std::string& name);

inline constexpr int kMoveTableVersion = 1;

struct PassageTemplate {
  Role role = Role::Over;
  std::size_t slot = 0;
  Sign sign = Sign::Positive;
  friend auto operator<=>(const PassageTemplate&, const PassageTemplate&) = default;
};

struct StrandTemplate {
  std::vector<PassageTemplate> before;
  std::vector<PassageTemplate> after;
  friend auto operator<=>(const StrandTemplate&, const StrandTemplate&) = default;
};

struct MovePattern {
  MoveKind kind = MoveKind::OC;
  std::size_t variant = 0;
  std::size_t slots = 0;
  std::vector<StrandTemplate> strands;

  /// Net change in crossing count.
  int crossing_delta() const;
  std::string to_string() const;
  friend bool operator==(const MovePattern&, const MovePattern&) = default;
};

/// Brute-force derivation from planar tangles: every kink, bigon, triangle
/// and over-strand-past-two-strands picture in every orientation, read off
/// as Gauss subwords and deduplicated. Deterministic order.
std::vector<MovePattern> generate_move_table();

/// The table, computed once.
const std::vector<MovePattern>& move_table();

nlohmann::json move_table_json(const std::vector<MovePattern>& table);

/// Where a strand template lands. For matches `position` is the run start;
/// for inserts it is the gap before that index. Strands inserted into the
/// same gap are placed in ascending `order`.
struct Site {
  std::size_t component = 0;
  std::size_t position = 0;
  std::size_t order = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct MoveInstance {
  std::size_t pattern = 0;  // index into move_table()
  std::vector<Site> sites;  // one per strand template
  std::vector<CrossingId> crossings;  // slot -> crossing

  const MovePattern& pattern_ref() const;
  MoveKind kind() const { return pattern_ref().kind; }
  std::string to_string() const;
  friend bool operator==(const MoveInstance&, const MoveInstance&) = default;
};

nlohmann::json to_json(const MoveInstance& inst);

class StaleInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MoveKindSet = std::set<MoveKind>;
MoveKindSet all_move_kinds();

/// Every applicable instance, deterministic order. Inserts use fresh
/// identifiers max+1 (and max+2). Matches covering the same passage pairs
/// with the same kind are reported once.
std::vector<MoveInstance> applicable_moves(const GaussCode& code, const MoveKindSet& kinds);

/// Throws StaleInstanceError if `inst` does not fit `code`.
GaussCode apply_move(const GaussCode& code, const MoveInstance& inst);

/// An instance on apply_move(code, inst) that undoes `inst`, returning a
/// code equal to `code` up to rotation of components.
MoveInstance inverse_instance(const GaussCode& code, const MoveInstance& inst);

}  // namespace weld
