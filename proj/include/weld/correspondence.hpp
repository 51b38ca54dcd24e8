#pragma once

// Conn and Tube as combinatorial conversions between solid ribbon data and
// Gauss codes, and the OC-sorted representative of a Gauss code.

#include <cstddef>
#include <vector>

#include "weld/core.hpp"

namespace weld {

/// One Gauss component per torus, in torus order. A form (a) torus reads
/// U(e1), the Over passages of its chamber in ascending order, U(e2), ...
/// Form (b) yields its Over passages ascending; form (c) an empty component.
GaussCode conn_map(const SolidRibbonData& data);

/// Inverse of conn_map up to OC moves. Essentials are the Under passages of
/// a component in word order; each chamber collects the Over passages up to
/// the next Under passage, wrapping around the word.
SolidRibbonData tube_map(const GaussCode& code);

/// Sorts each maximal cyclic run of Over passages by crossing identifier and
/// rotates each component to begin at its first Under passage. Equal to
/// conn_map(tube_map(code)).
GaussCode oc_canonicalize(const GaussCode& code);

/// Exchange of the Over passages at `position` and `position + 1` (mod the
/// component length).
struct AdjacentSwap {
  std::size_t component = 0;
  std::size_t position = 0;
  friend bool operator==(const AdjacentSwap&, const AdjacentSwap&) = default;
};

/// OC swaps that take `code` to oc_canonicalize(code) up to the final
/// rotation of each component. Every swap exchanges two Over passages.
std::vector<AdjacentSwap> oc_canonicalize_path(const GaussCode& code);

GaussCode apply_swap(GaussCode code, const AdjacentSwap& swap);

}  // namespace weld
