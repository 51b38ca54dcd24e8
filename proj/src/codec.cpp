#include "weld/codec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace weld {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) take();
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(line_, column_, what); }

  CrossingId number() {
    if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected crossing number");
    std::uint64_t value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(take() - '0');
      if (value > std::numeric_limits<CrossingId>::max()) fail("crossing number out of range");
    }
    return static_cast<CrossingId>(value);
  }

  Sign sign() {
    if (peek() == '+') {
      take();
      return Sign::Positive;
    }
    if (peek() == '-') {
      take();
      return Sign::Negative;
    }
    fail("expected '+' or '-'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Entries separated by ';'; an empty final entry is dropped, so a trailing
// ';' terminates rather than opens a new entry.
template <typename Entry>
void close_entries(std::vector<Entry>& entries, Entry& current, bool current_has_items) {
  if (current_has_items) entries.push_back(std::move(current));
}

std::string join_entries(const std::vector<std::vector<std::string>>& entries) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) tokens.emplace_back(";");
    tokens.insert(tokens.end(), entries[i].begin(), entries[i].end());
  }
  if (!entries.empty() && entries.back().empty()) tokens.emplace_back(";");
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

GaussCode parse_gauss_text(std::string_view input) {
  Cursor cur(input);
  GaussCode code;
  Component current;
  bool has_items = false;
  for (cur.skip_space(); !cur.done(); cur.skip_space()) {
    const char c = cur.peek();
    if (c == ';') {
      cur.take();
      code.components.push_back(std::move(current));
      current.clear();
      has_items = false;
      continue;
    }
    if (c != 'O' && c != 'U') cur.fail(std::string("unexpected character '") + c + "'");
    cur.take();
    Passage p;
    p.role = c == 'O' ? Role::Over : Role::Under;
    p.crossing = cur.number();
    p.sign = cur.sign();
    current.push_back(p);
    has_items = true;
  }
  close_entries(code.components, current, has_items);
  require_valid(code);
  return code;
}

std::string emit_gauss_text(const GaussCode& code) {
  std::vector<std::vector<std::string>> entries;
  for (const auto& comp : code.components) {
    auto& e = entries.emplace_back();
    for (const auto& p : comp) e.push_back(to_string(p));
  }
  return join_entries(entries);
}

SolidRibbonData parse_ribbon_text(std::string_view input) {
  struct Item {
    bool essential;
    CrossingId id;
  };
  Cursor cur(input);
  std::vector<std::vector<Item>> tori;
  std::vector<Item> current;
  bool has_items = false;
  bool sign_table = false;
  SolidRibbonData data;

  for (cur.skip_space(); !cur.done(); cur.skip_space()) {
    const char c = cur.peek();
    if (c == ';') {
      cur.take();
      tori.push_back(std::move(current));
      current.clear();
      has_items = false;
      continue;
    }
    if (c == '|') {
      cur.take();
      sign_table = true;
      break;
    }
    if (c != 'E' && c != 'C') cur.fail(std::string("unexpected character '") + c + "'");
    cur.take();
    current.push_back({c == 'E', cur.number()});
    has_items = true;
  }
  close_entries(tori, current, has_items);

  if (sign_table) {
    for (cur.skip_space(); !cur.done(); cur.skip_space()) {
      const CrossingId id = cur.number();
      cur.skip_space();
      if (cur.peek() != ':') cur.fail("expected ':' in sign table");
      cur.take();
      cur.skip_space();
      const Sign s = cur.sign();
      if (!data.signs.emplace(id, s).second) cur.fail("crossing " + std::to_string(id) + " signed twice");
    }
  }

  ValidationReport duplicates;
  for (const auto& items : tori) {
    Torus torus;
    std::vector<CrossingId> leading;  // contractibles before the first essential
    for (const auto& item : items) {
      if (item.essential) {
        torus.essentials.push_back(item.id);
        torus.chambers.emplace_back();
        continue;
      }
      bool fresh = true;
      if (torus.essentials.empty()) {
        fresh = std::find(leading.begin(), leading.end(), item.id) == leading.end();
        leading.push_back(item.id);
      } else {
        fresh = torus.chambers.back().insert(item.id).second;
      }
      if (!fresh)
        duplicates.violations.push_back(
            {Rule::DuplicateContractible, item.id, "duplicate contractible " + std::to_string(item.id)});
    }
    if (torus.essentials.empty()) {
      torus.loose.insert(leading.begin(), leading.end());
    } else {
      torus.chambers.back().insert(leading.begin(), leading.end());
    }
    data.tori.push_back(std::move(torus));
  }

  if (!sign_table) {
    for (const auto& torus : data.tori) {
      for (auto e : torus.essentials) data.signs.emplace(e, Sign::Positive);
      for (const auto& ch : torus.chambers)
        for (auto c : ch) data.signs.emplace(c, Sign::Positive);
      for (auto c : torus.loose) data.signs.emplace(c, Sign::Positive);
    }
  }

  auto report = validate_solid_ribbon(data);
  report.violations.insert(report.violations.begin(), duplicates.violations.begin(),
                           duplicates.violations.end());
  if (!report.ok()) throw ValidationError(std::move(report));
  return data;
}

std::string emit_ribbon_text(const SolidRibbonData& data) {
  std::vector<std::vector<std::string>> entries;
  for (const auto& torus : data.tori) {
    auto& e = entries.emplace_back();
    for (std::size_t i = 0; i < torus.essentials.size(); ++i) {
      e.push_back("E" + std::to_string(torus.essentials[i]));
      if (i < torus.chambers.size())
        for (auto c : torus.chambers[i]) e.push_back("C" + std::to_string(c));
    }
    for (auto c : torus.loose) e.push_back("C" + std::to_string(c));
  }
  std::string out = join_entries(entries);
  // All-positive is the default, so the table is only written when needed.
  const bool all_positive =
      std::all_of(data.signs.begin(), data.signs.end(), [](const auto& kv) { return kv.second == Sign::Positive; });
  if (!all_positive) {
    out += out.empty() ? "|" : " |";
    for (const auto& [id, s] : data.signs) out += " " + std::to_string(id) + ":" + sign_char(s);
  }
  return out;
}

// ---- JSON ----------------------------------------------------------------

namespace {

void check_header(const nlohmann::json& doc, const char* kind) {
  if (!doc.is_object() || doc.value("format_version", -1) != kFormatVersion)
    throw std::invalid_argument("unsupported or missing format_version");
  if (doc.value("kind", std::string{}) != kind)
    throw std::invalid_argument(std::string("expected document kind ") + kind);
}

Sign sign_from_json(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "+") return Sign::Positive;
  if (s == "-") return Sign::Negative;
  throw std::invalid_argument("bad sign " + s);
}

}  // namespace

nlohmann::json to_json(const GaussCode& code) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& comp : code.components) {
    nlohmann::json word = nlohmann::json::array();
    for (const auto& p : comp)
      word.push_back({{"crossing", p.crossing},
                      {"role", std::string(1, role_char(p.role))},
                      {"sign", std::string(1, sign_char(p.sign))}});
    comps.push_back(std::move(word));
  }
  return {{"format_version", kFormatVersion}, {"kind", "gauss_code"}, {"components", std::move(comps)}};
}

GaussCode gauss_code_from_json(const nlohmann::json& doc) {
  check_header(doc, "gauss_code");
  GaussCode code;
  for (const auto& word : doc.at("components")) {
    Component comp;
    for (const auto& p : word) {
      const auto role = p.at("role").get<std::string>();
      if (role != "O" && role != "U") throw std::invalid_argument("bad role " + role);
      comp.push_back({p.at("crossing").get<CrossingId>(), role == "O" ? Role::Over : Role::Under,
                      sign_from_json(p.at("sign"))});
    }
    code.components.push_back(std::move(comp));
  }
  require_valid(code);
  return code;
}

nlohmann::json to_json(const SolidRibbonData& data) {
  nlohmann::json tori = nlohmann::json::array();
  for (const auto& t : data.tori) {
    nlohmann::json chambers = nlohmann::json::array();
    for (const auto& ch : t.chambers) chambers.push_back(ch);
    tori.push_back({{"essentials", t.essentials}, {"chambers", std::move(chambers)}, {"loose", t.loose}});
  }
  nlohmann::json signs = nlohmann::json::array();
  for (const auto& [id, s] : data.signs) signs.push_back({{"crossing", id}, {"sign", std::string(1, sign_char(s))}});
  return {{"format_version", kFormatVersion},
          {"kind", "solid_ribbon"},
          {"tori", std::move(tori)},
          {"signs", std::move(signs)}};
}

SolidRibbonData solid_ribbon_from_json(const nlohmann::json& doc) {
  check_header(doc, "solid_ribbon");
  SolidRibbonData data;
  for (const auto& t : doc.at("tori")) {
    Torus torus;
    torus.essentials = t.at("essentials").get<std::vector<CrossingId>>();
    for (const auto& ch : t.at("chambers")) torus.chambers.push_back(ch.get<std::set<CrossingId>>());
    torus.loose = t.at("loose").get<std::set<CrossingId>>();
    data.tori.push_back(std::move(torus));
  }
  for (const auto& s : doc.at("signs")) data.signs[s.at("crossing").get<CrossingId>()] = sign_from_json(s.at("sign"));
  require_valid(data);
  return data;
}

// ---- planar realization --------------------------------------------------

namespace {

constexpr double kCrossingSpacing = 6.0;
constexpr double kLaneStep = 0.5;

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::optional<Point> proper_intersection(Point p1, Point p2, Point q1, Point q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    const double t = d1 / (d1 - d2);
    return Point{p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y)};
  }
  return std::nullopt;
}

ClassicalVertex place_crossing(CrossingId id, Sign sign, double x) {
  ClassicalVertex v;
  v.crossing = id;
  v.sign = sign;
  v.center = {x, 0};
  // Both strands run upward; the over strand's direction crossed with the
  // under strand's direction is positive exactly for positive crossings.
  if (sign == Sign::Positive) {
    v.over_in = {x - 1, -1};
    v.over_out = {x + 1, 1};
    v.under_in = {x + 1, -1};
    v.under_out = {x - 1, 1};
  } else {
    v.under_in = {x - 1, -1};
    v.under_out = {x + 1, 1};
    v.over_in = {x + 1, -1};
    v.over_out = {x - 1, 1};
  }
  return v;
}

}  // namespace

std::vector<VirtualVertex> edge_intersections(const std::vector<PlanarEdge>& edges) {
  std::vector<VirtualVertex> out;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const auto& pa = edges[a].polyline;
      const auto& pb = edges[b].polyline;
      for (std::size_t i = 0; i + 1 < pa.size(); ++i)
        for (std::size_t j = 0; j + 1 < pb.size(); ++j)
          if (auto at = proper_intersection(pa[i], pa[i + 1], pb[j], pb[j + 1])) out.push_back({*at, a, b});
    }
  }
  return out;
}

PlanarDiagram realize_planar(const GaussCode& code) {
  require_valid(code);
  PlanarDiagram d;

  std::map<CrossingId, Sign> signs;
  for (const auto& comp : code.components)
    for (const auto& p : comp) signs[p.crossing] = p.sign;
  std::map<CrossingId, std::size_t> vertex_of;
  double x = 0;
  for (const auto& [id, s] : signs) {
    vertex_of[id] = d.classical.size();
    d.classical.push_back(place_crossing(id, s, x));
    x += kCrossingSpacing;
  }
  const double right = d.classical.empty() ? 0 : d.classical.back().center.x + 1;

  std::size_t lane = 0;
  std::size_t loops = 0;
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    const auto& word = code.components[c];
    auto& edge_ids = d.components.emplace_back();
    if (word.empty()) {
      const double x0 = -4.0 * static_cast<double>(++loops) - 2;
      PlanarEdge e;
      e.component = c;
      e.closed_loop = true;
      e.polyline = {{x0, -1}, {x0 + 2, -1}, {x0 + 2, 1}, {x0, 1}, {x0, -1}};
      edge_ids.push_back(d.edges.size());
      d.edges.push_back(std::move(e));
      continue;
    }
    for (std::size_t i = 0; i < word.size(); ++i) {
      const auto& from = word[i];
      const auto& to = word[(i + 1) % word.size()];
      const auto& vf = d.classical[vertex_of.at(from.crossing)];
      const auto& vt = d.classical[vertex_of.at(to.crossing)];
      const Point out = from.role == Role::Over ? vf.over_out : vf.under_out;
      const Point in = to.role == Role::Over ? vt.over_in : vt.under_in;
      const double h = 1.5 + kLaneStep * static_cast<double>(lane);
      const double column = right + 1.5 + kLaneStep * static_cast<double>(lane);
      ++lane;
      PlanarEdge e;
      e.component = c;
      e.from = i;
      e.polyline = {out, {out.x, h}, {column, h}, {column, -h}, {in.x, -h}, in};
      edge_ids.push_back(d.edges.size());
      d.edges.push_back(std::move(e));
    }
  }
  d.virtuals = edge_intersections(d.edges);
  return d;
}

GaussCode read_out(const PlanarDiagram& d) {
  auto port_at = [&](Point p, bool outgoing) -> std::optional<Passage> {
    std::optional<Passage> found;
    for (const auto& v : d.classical) {
      const Point over = outgoing ? v.over_out : v.over_in;
      const Point under = outgoing ? v.under_out : v.under_in;
      const double orientation =
          (v.over_out.x - v.over_in.x) * (v.under_out.y - v.under_in.y) -
          (v.over_out.y - v.over_in.y) * (v.under_out.x - v.under_in.x);
      const Sign s = orientation > 0 ? Sign::Positive : Sign::Negative;
      for (auto [pt, role] : {std::pair{over, Role::Over}, std::pair{under, Role::Under}}) {
        if (pt == p) {
          if (found) throw std::logic_error("port shared between passages");
          found = Passage{v.crossing, role, s};
        }
      }
    }
    return found;
  };

  GaussCode code;
  for (const auto& edge_ids : d.components) {
    Component comp;
    if (edge_ids.size() == 1 && d.edges[edge_ids[0]].closed_loop) {
      code.components.push_back(comp);
      continue;
    }
    for (std::size_t i = 0; i < edge_ids.size(); ++i) {
      const auto& e = d.edges[edge_ids[i]];
      const auto& next = d.edges[edge_ids[(i + 1) % edge_ids.size()]];
      auto leaving = port_at(e.polyline.front(), true);
      auto entering = port_at(e.polyline.back(), false);
      auto next_leaving = port_at(next.polyline.front(), true);
      if (!leaving || !entering || !next_leaving) throw std::logic_error("edge does not end on a crossing port");
      if (entering->crossing != next_leaving->crossing || entering->role != next_leaving->role)
        throw std::logic_error("edge enters a different passage than the next edge leaves");
      comp.push_back(*leaving);
    }
    code.components.push_back(std::move(comp));
  }
  return code;
}

// ---- SVG -----------------------------------------------------------------

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string emit_svg(const PlanarDiagram& d) {
  constexpr double scale = 20;
  constexpr double margin = 1;
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool any = false;
  auto grow = [&](Point p) {
    if (!any) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      any = true;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& e : d.edges)
    for (auto p : e.polyline) grow(p);
  for (const auto& v : d.classical) {
    grow(v.over_in);
    grow(v.over_out);
  }
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const double width = (max_x - min_x) * scale;
  const double height = (max_y - min_y) * scale;
  auto sx = [&](double x) { return num((x - min_x) * scale); };
  auto sy = [&](double y) { return num((max_y - y) * scale); };
  auto line = [&](const char* cls, Point a, Point b) {
    return std::string("    <line class=\"") + cls + "\" x1=\"" + sx(a.x) + "\" y1=\"" + sy(a.y) +
           "\" x2=\"" + sx(b.x) + "\" y2=\"" + sy(b.y) + "\"/>\n";
  };
  auto lerp = [](Point a, Point b, double t) { return Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
      << "\">\n";
  out << "  <g class=\"edges\" fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const auto& e : d.edges) {
    out << "    <polyline class=\"edge\" points=\"";
    for (std::size_t i = 0; i < e.polyline.size(); ++i)
      out << (i ? " " : "") << sx(e.polyline[i].x) << ',' << sy(e.polyline[i].y);
    out << "\"/>\n";
  }
  out << "  </g>\n";
  for (const auto& v : d.classical) {
    out << "  <g class=\"classical\" data-crossing=\"" << v.crossing << "\" data-sign=\""
        << sign_char(v.sign) << "\" stroke=\"black\" stroke-width=\"2\">\n";
    out << line("over", v.over_in, v.over_out);
    out << line("under", v.under_in, lerp(v.under_in, v.under_out, 0.35));
    out << line("under", lerp(v.under_in, v.under_out, 0.65), v.under_out);
    out << "  </g>\n";
  }
  for (const auto& v : d.virtuals)
    out << "  <circle class=\"virtual\" cx=\"" << sx(v.at.x) << "\" cy=\"" << sy(v.at.y)
        << "\" r=\"" << num(0.3 * scale) << "\" fill=\"none\" stroke=\"gray\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace weld
