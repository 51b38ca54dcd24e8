// Derivation of the oriented move table from explicit planar tangles.
//
// Each tangle is a handful of polylines with heights. Reading a tangle
// intersects every pair of segments, decides over/under by height and the
// crossing sign by the orientation of (over direction, under direction),
// then lists each strand's passages in order along it.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

#include "weld/moves.hpp"

namespace weld {

namespace {

struct Vertex3 {
  double x, y, z;
};

struct Tangle {
  std::vector<std::vector<Vertex3>> strands;
  std::set<std::pair<std::size_t, std::size_t>> virtual_pairs;
};

// Crossing identity that survives the move: the pair of strands involved
// plus a discovery index, since R2 crosses the same pair twice. R3 and OC
// cross each pair once, so the key matches up before and after.
using CrossingKey = std::tuple<std::size_t, std::size_t, std::size_t>;

struct ReadPassage {
  Role role;
  CrossingKey key;
  Sign sign;
};

using Reading = std::vector<std::vector<ReadPassage>>;

Reading read_tangle(const Tangle& t) {
  struct Hit {
    double param;
    ReadPassage passage;
  };
  std::vector<std::vector<Hit>> hits(t.strands.size());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t a = 0; a < t.strands.size(); ++a) {
    for (std::size_t b = a; b < t.strands.size(); ++b) {
      const bool is_virtual = t.virtual_pairs.count({a, b}) > 0;
      const auto& pa = t.strands[a];
      const auto& pb = t.strands[b];
      for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
        for (std::size_t j = (a == b ? i + 2 : 0); j + 1 < pb.size(); ++j) {
          const double rx = pa[i + 1].x - pa[i].x, ry = pa[i + 1].y - pa[i].y;
          const double sx = pb[j + 1].x - pb[j].x, sy = pb[j + 1].y - pb[j].y;
          const double denom = rx * sy - ry * sx;
          if (denom == 0) continue;
          const double qx = pb[j].x - pa[i].x, qy = pb[j].y - pa[i].y;
          const double u = (qx * sy - qy * sx) / denom;
          const double v = (qx * ry - qy * rx) / denom;
          if (u <= 0 || u >= 1 || v <= 0 || v >= 1) continue;
          if (is_virtual) continue;
          const double za = pa[i].z + u * (pa[i + 1].z - pa[i].z);
          const double zb = pb[j].z + v * (pb[j + 1].z - pb[j].z);
          const bool a_over = za > zb;
          const double ox = a_over ? rx : sx, oy = a_over ? ry : sy;
          const double ux = a_over ? sx : rx, uy = a_over ? sy : ry;
          const Sign sign = ox * uy - oy * ux > 0 ? Sign::Positive : Sign::Negative;
          const CrossingKey key{a, b, seen[{a, b}]++};
          hits[a].push_back({static_cast<double>(i) + u, {a_over ? Role::Over : Role::Under, key, sign}});
          hits[b].push_back({static_cast<double>(j) + v, {a_over ? Role::Under : Role::Over, key, sign}});
        }
      }
    }
  }
  Reading out(t.strands.size());
  for (std::size_t s = 0; s < hits.size(); ++s) {
    std::sort(hits[s].begin(), hits[s].end(), [](const Hit& x, const Hit& y) { return x.param < y.param; });
    for (const auto& h : hits[s]) out[s].push_back(h.passage);
  }
  return out;
}

std::vector<Vertex3> reversed(std::vector<Vertex3> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

std::vector<Vertex3> at_height(const std::vector<std::pair<double, double>>& pts, double z) {
  std::vector<Vertex3> out;
  for (auto [x, y] : pts) out.push_back({x, y, z});
  return out;
}

// Relabels slots by first appearance and picks the smallest strand order.
MovePattern normalize(MoveKind kind, std::vector<StrandTemplate> strands) {
  std::erase_if(strands, [](const StrandTemplate& s) { return s.before == s.after; });
  std::vector<std::size_t> perm(strands.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<StrandTemplate>> best;
  std::size_t best_slots = 0;
  do {
    std::map<std::size_t, std::size_t> relabel;
    std::vector<StrandTemplate> candidate;
    for (auto idx : perm) candidate.push_back(strands[idx]);
    auto visit = [&](std::vector<PassageTemplate>& word) {
      for (auto& p : word) p.slot = relabel.emplace(p.slot, relabel.size()).first->second;
    };
    for (auto& s : candidate) visit(s.before);
    for (auto& s : candidate) visit(s.after);
    if (!best || candidate < *best) {
      best = std::move(candidate);
      best_slots = relabel.size();
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  MovePattern p;
  p.kind = kind;
  p.slots = best_slots;
  p.strands = std::move(*best);
  return p;
}

std::vector<StrandTemplate> templates(const Reading& before, const Reading& after) {
  std::map<CrossingKey, std::size_t> slot;
  auto convert = [&](const std::vector<ReadPassage>& word) {
    std::vector<PassageTemplate> out;
    for (const auto& p : word) out.push_back({p.role, slot.emplace(p.key, slot.size()).first->second, p.sign});
    return out;
  };
  std::vector<StrandTemplate> strands;
  for (std::size_t s = 0; s < before.size(); ++s) strands.push_back({convert(before[s]), convert(after[s])});
  return strands;
}

void add_pair(std::set<std::pair<MoveKind, std::vector<StrandTemplate>>>& out, MoveKind kind,
              const Tangle& before, const Tangle& after) {
  auto p = normalize(kind, templates(read_tangle(before), read_tangle(after)));
  out.insert({p.kind, p.strands});
}

}  // namespace

std::vector<MovePattern> generate_move_table() {
  std::set<std::pair<MoveKind, std::vector<StrandTemplate>>> found;

  // R1: one strand with a kink, both chiralities, either pass on top, both
  // orientations.
  for (double chirality : {1.0, -1.0})
    for (bool over_first : {true, false})
      for (bool flip : {false, true}) {
        const std::vector<std::pair<double, double>> pts{{-3, 0}, {1, 0}, {1, chirality}, {0, chirality}, {0, -chirality}, {3, -chirality}};
        std::vector<Vertex3> kink;
        for (std::size_t i = 0; i < pts.size(); ++i)
          kink.push_back({pts[i].first, pts[i].second, over_first ? -static_cast<double>(i) : static_cast<double>(i)});
        Tangle straight{{at_height({{-3, 0}, {3, 0}}, 0)}, {}};
        Tangle looped{{kink}, {}};
        if (flip) {
          straight.strands[0] = reversed(straight.strands[0]);
          looped.strands[0] = reversed(looped.strands[0]);
        }
        add_pair(found, MoveKind::R1Insert, straight, looped);
        add_pair(found, MoveKind::R1Delete, looped, straight);
      }

  // R2: a vertical strand and a strand pushed across it, from either side,
  // all orientations, either strand on top.
  for (double side : {1.0, -1.0})
    for (bool flip_a : {false, true})
      for (bool flip_b : {false, true})
        for (bool a_over : {true, false}) {
          const double za = a_over ? 1 : 0, zb = 1 - za;
          auto a = at_height({{0, -3}, {0, 3}}, za);
          auto bent = at_height({{1.5 * side, -2}, {-side, -1}, {-side, 1}, {1.5 * side, 2}}, zb);
          auto flat = at_height({{1.5 * side, -2}, {1.5 * side, 2}}, zb);
          if (flip_a) a = reversed(a);
          if (flip_b) {
            bent = reversed(bent);
            flat = reversed(flat);
          }
          const Tangle apart{{a, flat}, {}};
          const Tangle overlapping{{a, bent}, {}};
          add_pair(found, MoveKind::R2Insert, apart, overlapping);
          add_pair(found, MoveKind::R2Delete, overlapping, apart);
        }

  // R3: three lines in a triangle; the first line is pushed past the
  // intersection of the other two. Every height order and orientation.
  std::array<double, 3> heights{0, 1, 2};
  do {
    for (unsigned flips = 0; flips < 8; ++flips) {
      auto line = [&](std::size_t k, std::vector<std::pair<double, double>> pts) {
        auto s = at_height(pts, heights[k]);
        return (flips >> k) & 1u ? reversed(s) : s;
      };
      const auto l2 = line(1, {{-2, -1.5}, {2, 2.5}});
      const auto l3 = line(2, {{2, -1.5}, {-2, 2.5}});
      const Tangle low{{line(0, {{-3, 0}, {3, 0}}), l2, l3}, {}};
      const Tangle high{{line(0, {{-3, 1}, {3, 1}}), l2, l3}, {}};
      add_pair(found, MoveKind::R3, low, high);
      add_pair(found, MoveKind::R3, high, low);
    }
  } while (std::next_permutation(heights.begin(), heights.end()));

  // OC: a strand passing over two others; the under strands trade places
  // through a virtual crossing.
  for (unsigned flips = 0; flips < 8; ++flips) {
    auto orient = [&](std::size_t k, std::vector<Vertex3> s) { return (flips >> k) & 1u ? reversed(s) : s; };
    const auto top = orient(0, at_height({{-3, 0}, {3, 0}}, 1));
    const Tangle before{{top, orient(1, at_height({{-1, 2}, {-1, -2}}, 0)), orient(2, at_height({{1, 2}, {1, -2}}, 0))}, {}};
    const Tangle after{{top,
                        orient(1, at_height({{-1, 2}, {-1, 1.5}, {1, 0.8}, {1, -0.8}, {-1, -1.5}, {-1, -2}}, 0)),
                        orient(2, at_height({{1, 2}, {1, 1.5}, {-1, 0.8}, {-1, -0.8}, {1, -1.5}, {1, -2}}, 0))},
                       {{1, 2}}};
    add_pair(found, MoveKind::OC, before, after);
    add_pair(found, MoveKind::OC, after, before);
  }

  std::vector<MovePattern> table;
  std::map<MoveKind, std::size_t> variants;
  for (const auto& [kind, strands] : found) {
    MovePattern p;
    p.kind = kind;
    p.variant = variants[kind]++;
    p.strands = strands;
    std::set<std::size_t> slots;
    for (const auto& s : strands) {
      for (const auto& t : s.before) slots.insert(t.slot);
      for (const auto& t : s.after) slots.insert(t.slot);
    }
    p.slots = slots.size();
    table.push_back(std::move(p));
  }
  return table;
}

const std::vector<MovePattern>& move_table() {
  static const std::vector<MovePattern> table = generate_move_table();
  return table;
}

namespace {

nlohmann::json word_json(const std::vector<PassageTemplate>& word) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : word)
    out.push_back(std::string(1, role_char(p.role)) + "x" + std::to_string(p.slot) + sign_char(p.sign));
  return out;
}

}  // namespace

nlohmann::json move_table_json(const std::vector<MovePattern>& table) {
  nlohmann::json patterns = nlohmann::json::array();
  for (const auto& p : table) {
    nlohmann::json strands = nlohmann::json::array();
    for (const auto& s : p.strands) strands.push_back({{"before", word_json(s.before)}, {"after", word_json(s.after)}});
    patterns.push_back({{"kind", to_string(p.kind)}, {"variant", p.variant}, {"slots", p.slots}, {"strands", std::move(strands)}});
  }
  return {{"format_version", 1}, {"kind", "move_table"}, {"table_version", kMoveTableVersion}, {"patterns", std::move(patterns)}};
}

}  // namespace weld
