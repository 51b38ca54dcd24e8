#pragma once

// Text and JSON serialization of Gauss codes and solid ribbon data, planar
// realization of Gauss codes with virtual crossings, and SVG output.
//
// Gauss text:   component := passage*   passage := ('O'|'U') uint ('+'|'-')
// Ribbon text:  torus := item*          item := 'E' uint | 'C' uint
//               optional sign table after '|':  uint ':' ('+'|'-')
// Components/tori are separated by ';'. A trailing ';' closes the last
// entry, so "" has no components and ";" has one empty one.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "weld/core.hpp"

namespace weld {

inline constexpr int kFormatVersion = 1;

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses and validates. Throws SyntaxError or ValidationError.
GaussCode parse_gauss_text(std::string_view input);
std::string emit_gauss_text(const GaussCode& code);

/// Without a sign table every crossing is taken as positive; the emitter
/// writes a table only when some sign is negative.
SolidRibbonData parse_ribbon_text(std::string_view input);
std::string emit_ribbon_text(const SolidRibbonData& data);

// JSON interchange; every document carries "format_version".
nlohmann::json to_json(const GaussCode& code);
nlohmann::json to_json(const SolidRibbonData& data);
GaussCode gauss_code_from_json(const nlohmann::json& doc);
SolidRibbonData solid_ribbon_from_json(const nlohmann::json& doc);

// ---- planar realization --------------------------------------------------

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct ClassicalVertex {
  CrossingId crossing = 0;
  Sign sign = Sign::Positive;
  Point center;
  Point over_in, over_out, under_in, under_out;
};

struct VirtualVertex {
  Point at;
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
};

/// Directed arc leaving passage `from` of its component and entering the
/// cyclically next passage. Crossing-free components are one closed edge
/// with `closed_loop` set.
struct PlanarEdge {
  std::size_t component = 0;
  std::size_t from = 0;
  bool closed_loop = false;
  std::vector<Point> polyline;
};

struct PlanarDiagram {
  std::vector<ClassicalVertex> classical;
  std::vector<VirtualVertex> virtuals;
  std::vector<PlanarEdge> edges;
  /// Per component, the edge indices in traversal order. Passage i of the
  /// component sits at the tail of edge components[c][i].
  std::vector<std::vector<std::size_t>> components;
};

/// Places crossings on a row in identifier order and routes every arc
/// through its own rectangular lane; stray intersections become virtual.
PlanarDiagram realize_planar(const GaussCode& code);

/// Reads the Gauss code back off the diagram, checking that each edge
/// leaves the out-port and enters the in-port of the passages it joins.
/// Throws std::logic_error if the geometry is inconsistent.
GaussCode read_out(const PlanarDiagram& diagram);

/// All proper intersections between distinct edges, outside crossing discs.
std::vector<VirtualVertex> edge_intersections(const std::vector<PlanarEdge>& edges);

std::string emit_svg(const PlanarDiagram& diagram);

}  // namespace weld
