#include "weld/moves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace weld {

namespace {

const char* const kKindNames[] = {"R1_insert", "R1_delete", "R2_insert", "R2_delete", "R3", "OC"};

bool is_insert(MoveKind k) { return k == MoveKind::R1Insert || k == MoveKind::R2Insert; }
bool is_delete(MoveKind k) { return k == MoveKind::R1Delete || k == MoveKind::R2Delete; }

MoveKind inverse_kind(MoveKind k) {
  switch (k) {
    case MoveKind::R1Insert: return MoveKind::R1Delete;
    case MoveKind::R1Delete: return MoveKind::R1Insert;
    case MoveKind::R2Insert: return MoveKind::R2Delete;
    case MoveKind::R2Delete: return MoveKind::R2Insert;
    default: return k;
  }
}

Passage instantiate(const PassageTemplate& t, const std::vector<CrossingId>& crossings) {
  return {crossings[t.slot], t.role, t.sign};
}

std::string word_string(const std::vector<PassageTemplate>& w) {
  std::string out;
  for (const auto& p : w) {
    if (!out.empty()) out += ' ';
    out += role_char(p.role);
    out += 'x' + std::to_string(p.slot);
    out += sign_char(p.sign);
  }
  return out;
}

// Positions of strand k's run in its component.
std::vector<std::size_t> run_positions(const GaussCode& code, const Site& site, std::size_t length) {
  std::vector<std::size_t> out;
  const std::size_t n = code.components[site.component].size();
  for (std::size_t i = 0; i < length; ++i) out.push_back((site.position + i) % n);
  return out;
}

// Tries to match pattern strands [k..] against the code given partial slot
// bindings and used positions; reports every complete match.
struct Matcher {
  const GaussCode& code;
  const MovePattern& pattern;
  std::vector<std::optional<CrossingId>> binding;
  std::vector<std::set<std::size_t>> used;
  std::vector<Site> sites;
  std::vector<std::pair<std::vector<Site>, std::vector<CrossingId>>> found;

  Matcher(const GaussCode& c, const MovePattern& p)
      : code(c), pattern(p), binding(p.slots), used(c.components.size()) {}

  void run(std::size_t k) {
    if (k == pattern.strands.size()) {
      std::vector<CrossingId> ids;
      for (const auto& b : binding) ids.push_back(*b);
      found.emplace_back(sites, std::move(ids));
      return;
    }
    const auto& word = pattern.strands[k].before;
    for (std::size_t c = 0; c < code.components.size(); ++c) {
      const auto& comp = code.components[c];
      const std::size_t n = comp.size();
      if (word.size() > n) continue;
      for (std::size_t start = 0; start < n; ++start) {
        auto saved = binding;
        std::vector<std::size_t> taken;
        bool ok = true;
        for (std::size_t i = 0; i < word.size() && ok; ++i) {
          const std::size_t pos = (start + i) % n;
          const Passage& p = comp[pos];
          const auto& t = word[i];
          if (used[c].count(pos) || p.role != t.role || p.sign != t.sign) {
            ok = false;
            break;
          }
          auto& b = binding[t.slot];
          if (b && *b != p.crossing) ok = false;
          if (!b) {
            for (const auto& other : binding)
              if (other && *other == p.crossing) ok = false;
            b = p.crossing;
          }
          if (ok) {
            used[c].insert(pos);
            taken.push_back(pos);
          }
        }
        if (ok) {
          sites.push_back({c, start, 0});
          run(k + 1);
          sites.pop_back();
        }
        for (auto pos : taken) used[c].erase(pos);
        binding = std::move(saved);
      }
    }
  }
};

// Which (component, position) pairs each crossing occupies in the match;
// two matches of the same kind touching the same pairs are the same move.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> footprint(const GaussCode& code, const MovePattern& pattern,
                                                                        const std::vector<Site>& sites,
                                                                        const std::vector<CrossingId>& crossings) {
  std::map<CrossingId, std::vector<std::pair<std::size_t, std::size_t>>> by_crossing;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const auto positions = run_positions(code, sites[k], pattern.strands[k].before.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
      by_crossing[crossings[pattern.strands[k].before[i].slot]].push_back({sites[k].component, positions[i]});
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  for (auto& [id, pairs] : by_crossing) {
    std::sort(pairs.begin(), pairs.end());
    out.push_back(std::move(pairs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every (component, position) a match covers.
std::set<std::pair<std::size_t, std::size_t>> covered(const GaussCode& code, const MovePattern& pattern,
                                                      const std::vector<Site>& sites) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < sites.size(); ++k)
    for (auto pos : run_positions(code, sites[k], pattern.strands[k].before.size())) out.insert({sites[k].component, pos});
  return out;
}

std::size_t find_pattern(MoveKind kind, const std::vector<StrandTemplate>& strands) {
  const auto& table = move_table();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].kind == kind && table[i].strands == strands) return i;
  throw std::logic_error("move table lacks an inverse pattern");
}

std::vector<StrandTemplate> swapped(const std::vector<StrandTemplate>& strands) {
  std::vector<StrandTemplate> out;
  for (const auto& s : strands) out.push_back({s.after, s.before});
  return out;
}

void enumerate_inserts(const GaussCode& code, std::size_t pattern_index, std::vector<MoveInstance>& out) {
  const auto& pattern = move_table()[pattern_index];
  std::vector<CrossingId> fresh;
  const CrossingId base = code.max_crossing();
  for (std::size_t s = 0; s < pattern.slots; ++s) fresh.push_back(base + 1 + static_cast<CrossingId>(s));
  std::vector<std::pair<std::size_t, std::size_t>> gaps;
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    const std::size_t n = std::max<std::size_t>(code.components[c].size(), 1);
    for (std::size_t g = 0; g < n; ++g) gaps.push_back({c, g});
  }
  std::vector<Site> sites(pattern.strands.size());
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == sites.size()) {
      // Strands sharing a gap: every ordering of them.
      std::vector<std::size_t> perm(sites.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::set<std::vector<std::size_t>> seen;
      do {
        std::vector<std::size_t> orders(sites.size(), 0);
        for (std::size_t i = 0; i < perm.size(); ++i) {
          const auto s = perm[i];
          for (std::size_t j = 0; j < i; ++j)
            if (sites[perm[j]].component == sites[s].component && sites[perm[j]].position == sites[s].position)
              ++orders[s];
        }
        if (!seen.insert(orders).second) continue;
        MoveInstance inst{pattern_index, sites, fresh};
        for (std::size_t i = 0; i < sites.size(); ++i) inst.sites[i].order = orders[i];
        out.push_back(std::move(inst));
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (auto [c, g] : gaps) {
      sites[k] = {c, g, 0};
      self(self, k + 1);
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::string to_string(MoveKind kind) { return kKindNames[static_cast<int>(kind)]; }

MoveKind move_kind_from_string(const std::string& name) {
  for (int i = 0; i < 6; ++i)
    if (name == kKindNames[i]) return static_cast<MoveKind>(i);
  throw std::invalid_argument("unknown move kind '" + name + "'");
}

MoveKindSet all_move_kinds() {
  return {MoveKind::R1Insert, MoveKind::R1Delete, MoveKind::R2Insert, MoveKind::R2Delete, MoveKind::R3, MoveKind::OC};
}

int MovePattern::crossing_delta() const {
  int delta = 0;
  for (const auto& s : strands) delta += static_cast<int>(s.after.size()) - static_cast<int>(s.before.size());
  return delta / 2;
}

std::string MovePattern::to_string() const {
  std::string out = weld::to_string(kind) + "/" + std::to_string(variant) + ":";
  for (const auto& s : strands) out += " [" + word_string(s.before) + "] -> [" + word_string(s.after) + "]";
  return out;
}

const MovePattern& MoveInstance::pattern_ref() const {
  const auto& table = move_table();
  if (pattern >= table.size()) throw StaleInstanceError("no move pattern " + std::to_string(pattern));
  return table[pattern];
}

std::string MoveInstance::to_string() const {
  const auto& p = pattern_ref();
  std::ostringstream out;
  out << weld::to_string(p.kind) << '/' << p.variant << '@';
  for (std::size_t i = 0; i < sites.size(); ++i) {
    out << (i ? "," : "") << 'c' << sites[i].component << ':' << sites[i].position;
    if (sites[i].order) out << '.' << sites[i].order;
  }
  out << '[';
  for (std::size_t i = 0; i < crossings.size(); ++i) out << (i ? "," : "") << crossings[i];
  out << ']';
  return out.str();
}

nlohmann::json to_json(const MoveInstance& inst) {
  const auto& p = inst.pattern_ref();
  nlohmann::json sites = nlohmann::json::array();
  for (const auto& s : inst.sites) sites.push_back({{"component", s.component}, {"position", s.position}, {"order", s.order}});
  return {{"kind", to_string(p.kind)}, {"variant", p.variant}, {"pattern", inst.pattern},
          {"sites", std::move(sites)}, {"crossings", inst.crossings}, {"description", inst.to_string()}};
}

std::vector<MoveInstance> applicable_moves(const GaussCode& code, const MoveKindSet& kinds) {
  std::vector<MoveInstance> out;
  const auto& table = move_table();
  std::set<std::pair<MoveKind, std::vector<std::vector<std::pair<std::size_t, std::size_t>>>>> seen;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& pattern = table[i];
    if (!kinds.count(pattern.kind)) continue;
    if (is_insert(pattern.kind)) {
      enumerate_inserts(code, i, out);
      continue;
    }
    Matcher m(code, pattern);
    m.run(0);
    for (auto& [sites, ids] : m.found) {
      // A delete is fixed by what it removes; a rewrite also by how the
      // covered positions split into runs.
      auto print = footprint(code, pattern, sites, ids);
      if (!is_delete(pattern.kind)) {
        std::vector<std::pair<std::size_t, std::size_t>> starts;
        for (const auto& site : sites) starts.push_back({site.component, site.position});
        std::sort(starts.begin(), starts.end());
        print.push_back(std::move(starts));
      }
      if (!seen.insert({pattern.kind, std::move(print)}).second) continue;
      out.push_back({i, std::move(sites), std::move(ids)});
    }
  }
  return out;
}

GaussCode apply_move(const GaussCode& code, const MoveInstance& inst) {
  const MovePattern& pattern = inst.pattern_ref();
  if (inst.sites.size() != pattern.strands.size() || inst.crossings.size() != pattern.slots)
    throw StaleInstanceError("instance shape does not fit " + pattern.to_string());
  for (std::size_t i = 0; i < inst.crossings.size(); ++i)
    for (std::size_t j = i + 1; j < inst.crossings.size(); ++j)
      if (inst.crossings[i] == inst.crossings[j]) throw StaleInstanceError("repeated crossing in instance");
  for (const auto& s : inst.sites)
    if (s.component >= code.components.size()) throw StaleInstanceError("no component " + std::to_string(s.component));

  GaussCode result;
  if (is_insert(pattern.kind)) {
    const auto present = code.crossings();
    for (auto id : inst.crossings)
      if (present.count(id)) throw StaleInstanceError("crossing " + std::to_string(id) + " is not fresh");
    for (std::size_t c = 0; c < code.components.size(); ++c) {
      const auto& comp = code.components[c];
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> at_gap;  // (gap, order) -> strand
      for (std::size_t k = 0; k < inst.sites.size(); ++k) {
        const auto& s = inst.sites[k];
        if (s.component != c) continue;
        if (s.position >= std::max<std::size_t>(comp.size(), 1)) throw StaleInstanceError("gap out of range");
        if (!at_gap.emplace(std::pair{s.position, s.order}, k).second) throw StaleInstanceError("ambiguous insertion order");
      }
      Component next;
      auto flush = [&](std::size_t gap) {
        for (auto it = at_gap.lower_bound({gap, 0}); it != at_gap.end() && it->first.first == gap; ++it)
          for (const auto& t : pattern.strands[it->second].after) next.push_back(instantiate(t, inst.crossings));
      };
      if (comp.empty()) flush(0);
      for (std::size_t g = 0; g < comp.size(); ++g) {
        flush(g);
        next.push_back(comp[g]);
      }
      result.components.push_back(std::move(next));
    }
    return result;
  }

  // Verify the match.
  std::vector<std::map<std::size_t, const PassageTemplate*>> replaced(code.components.size());
  std::vector<std::map<std::size_t, std::size_t>> run_start(code.components.size());  // position -> strand
  for (std::size_t k = 0; k < inst.sites.size(); ++k) {
    const auto& s = inst.sites[k];
    const auto& comp = code.components[s.component];
    const auto& word = pattern.strands[k].before;
    if (s.position >= comp.size() || word.size() > comp.size()) throw StaleInstanceError("site out of range");
    const auto positions = run_positions(code, s, word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
      const Passage& p = comp[positions[i]];
      if (p != instantiate(word[i], inst.crossings))
        throw StaleInstanceError("instance " + inst.to_string() + " does not match at " + to_string(p));
      if (!replaced[s.component].emplace(positions[i], &word[i]).second) throw StaleInstanceError("overlapping runs");
    }
    run_start[s.component][s.position] = k;
  }
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    const auto& comp = code.components[c];
    Component next;
    if (is_delete(pattern.kind)) {
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (!replaced[c].count(i)) next.push_back(comp[i]);
    } else {
      next = comp;
      for (auto [start, k] : run_start[c]) {
        const auto& after = pattern.strands[k].after;
        if (after.size() != pattern.strands[k].before.size()) throw std::logic_error("length-changing rewrite");
        for (std::size_t i = 0; i < after.size(); ++i) next[(start + i) % comp.size()] = instantiate(after[i], inst.crossings);
      }
    }
    result.components.push_back(std::move(next));
  }
  return result;
}

MoveInstance inverse_instance(const GaussCode& code, const MoveInstance& inst) {
  const MovePattern& pattern = inst.pattern_ref();
  const GaussCode result = apply_move(code, inst);

  if (is_delete(pattern.kind)) {
    MoveInstance inv;
    inv.pattern = find_pattern(inverse_kind(pattern.kind), swapped(pattern.strands));
    inv.crossings = inst.crossings;
    std::vector<std::set<std::size_t>> removed(code.components.size());
    for (std::size_t k = 0; k < inst.sites.size(); ++k)
      for (auto pos : run_positions(code, inst.sites[k], pattern.strands[k].before.size()))
        removed[inst.sites[k].component].insert(pos);
    // Runs wrapped past the end sit before runs at the start of the word.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::pair<int, std::size_t>, std::size_t>>> groups;
    for (std::size_t k = 0; k < inst.sites.size(); ++k) {
      const auto& s = inst.sites[k];
      const std::size_t survivors = code.components[s.component].size() - removed[s.component].size();
      std::size_t before = 0;
      for (std::size_t i = 0; i < s.position; ++i)
        if (!removed[s.component].count(i)) ++before;
      const bool at_end = before == survivors;
      const std::size_t gap = at_end ? 0 : before;
      groups[{s.component, gap}].push_back({{at_end ? 0 : 1, s.position}, k});
    }
    inv.sites.resize(inst.sites.size());
    for (auto& [where, members] : groups) {
      std::sort(members.begin(), members.end());
      for (std::size_t r = 0; r < members.size(); ++r) inv.sites[members[r].second] = {where.first, where.second, r};
    }
    return inv;
  }

  // Inserts are undone by the delete of the new crossings; R3 and OC by a
  // rewrite of the same positions.
  const std::set<CrossingId> ids(inst.crossings.begin(), inst.crossings.end());
  std::optional<std::set<std::pair<std::size_t, std::size_t>>> where;
  if (!is_insert(pattern.kind)) where = covered(code, pattern, inst.sites);
  auto starts = [](const std::vector<Site>& sites) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& s : sites) out.insert({s.component, s.position});
    return out;
  };
  // Prefer the rewrite at the same run starts that restores the word exactly;
  // a different split of the same positions may only restore a rotation.
  std::optional<MoveInstance> fallback;
  for (auto& candidate : applicable_moves(result, {inverse_kind(pattern.kind)})) {
    if (std::set<CrossingId>(candidate.crossings.begin(), candidate.crossings.end()) != ids) continue;
    if (where && covered(result, candidate.pattern_ref(), candidate.sites) != *where) continue;
    const GaussCode back = apply_move(result, candidate);
    if (!same_up_to_rotation(back, code)) continue;
    if (!where || (back == code && starts(candidate.sites) == starts(inst.sites))) return candidate;
    if (!fallback) fallback = std::move(candidate);
  }
  if (fallback) return *fallback;
  throw std::logic_error("no inverse for " + inst.to_string());
}

}  // namespace weld
