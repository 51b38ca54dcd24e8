#include "weld/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "weld/codec.hpp"
#include "weld/enumerate.hpp"

namespace weld {

namespace {

// One side of the bidirectional search. Each node remembers the move that
// discovered it, applied to its parent's representative.
struct Side {
  struct Node {
    GaussCode rep;
    std::optional<CanonicalKey> parent;
    std::optional<MoveInstance> move;  // applies to the parent's rep
  };
  std::unordered_map<CanonicalKey, Node, CanonicalKeyHash> nodes;
  std::vector<CanonicalKey> frontier;
  CanonicalKey root;
};

// Forward steps from the root to `key`.
std::vector<PathStep> forward_path(const Side& side, const CanonicalKey& key) {
  std::vector<PathStep> steps;
  for (const Side::Node* node = &side.nodes.at(key); node->parent; node = &side.nodes.at(*node->parent)) {
    const auto& parent = side.nodes.at(*node->parent);
    steps.push_back({parent.rep, *node->move});
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Steps from `key` back to the root, undoing each discovering move.
std::vector<PathStep> backward_path(const Side& side, const CanonicalKey& key) {
  std::vector<PathStep> steps;
  for (const Side::Node* node = &side.nodes.at(key); node->parent; node = &side.nodes.at(*node->parent)) {
    const auto& parent = side.nodes.at(*node->parent);
    GaussCode reached = apply_move(parent.rep, *node->move);
    MoveInstance undo = inverse_instance(parent.rep, *node->move);
    steps.push_back({std::move(reached), std::move(undo)});
  }
  return steps;
}

}  // namespace

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Equivalent: return "equivalent";
    case VerdictStatus::Distinct: return "distinct";
    case VerdictStatus::Unknown: return "unknown";
  }
  return "unknown";
}

EquivalenceVerdict equivalent_within(const GaussCode& a, const GaussCode& b, const SearchBudget& budget) {
  require_valid(a);
  require_valid(b);
  if (a.crossing_count() > budget.max_crossings || b.crossing_count() > budget.max_crossings)
    throw std::invalid_argument("max_crossings " + std::to_string(budget.max_crossings) +
                                " is below an input's crossing count");

  EquivalenceVerdict verdict;
  if (auto diff = first_difference(fingerprint(a), fingerprint(b))) {
    verdict.status = VerdictStatus::Distinct;
    verdict.witness = std::move(diff);
    return verdict;
  }

  std::array<Side, 2> sides;
  for (int s = 0; s < 2; ++s) {
    auto form = canonical_form(s == 0 ? a : b);
    sides[s].root = form.key;
    sides[s].frontier.push_back(form.key);
    sides[s].nodes.emplace(form.key, Side::Node{std::move(form.representative), std::nullopt, std::nullopt});
  }
  if (sides[0].root == sides[1].root) {
    verdict.status = VerdictStatus::Equivalent;
    verdict.states = 1;
    return verdict;
  }
  std::size_t states = 2;
  const auto kinds = all_move_kinds();

  auto finish = [&](const CanonicalKey& meet) {
    verdict.status = VerdictStatus::Equivalent;
    verdict.path = forward_path(sides[0], meet);
    auto back = backward_path(sides[1], meet);
    verdict.path.insert(verdict.path.end(), back.begin(), back.end());
    verdict.states = states;
    return verdict;
  };

  while (!sides[0].frontier.empty() && !sides[1].frontier.empty()) {
    // Smaller frontier first; ties go to the side with the smaller root, so
    // swapping the inputs mirrors the whole search.
    int s = sides[0].frontier.size() < sides[1].frontier.size() ? 0 : 1;
    if (sides[0].frontier.size() == sides[1].frontier.size()) s = sides[0].root < sides[1].root ? 0 : 1;
    Side& side = sides[s];
    Side& other = sides[1 - s];
    std::vector<CanonicalKey> next;
    std::sort(side.frontier.begin(), side.frontier.end());
    for (const auto& key : side.frontier) {
      const GaussCode rep = side.nodes.at(key).rep;
      for (auto& inst : applicable_moves(rep, kinds)) {
        if (rep.crossing_count() + static_cast<std::size_t>(std::max(0, inst.pattern_ref().crossing_delta())) >
            budget.max_crossings)
          continue;
        GaussCode result = apply_move(rep, inst);
        auto form = canonical_form(result);
        if (side.nodes.count(form.key)) continue;
        if (other.nodes.count(form.key)) {
          side.nodes.emplace(form.key, Side::Node{std::move(form.representative), key, std::move(inst)});
          return finish(form.key);
        }
        if (states == budget.max_states) {
          verdict.states = states;
          return verdict;
        }
        ++states;
        next.push_back(form.key);
        side.nodes.emplace(form.key, Side::Node{std::move(form.representative), key, std::move(inst)});
      }
    }
    side.frontier = std::move(next);
  }
  verdict.states = states;
  return verdict;
}

std::optional<std::string> replay_failure(const GaussCode& a, const GaussCode& b, const std::vector<PathStep>& path) {
  CanonicalKey current = canonical_key(a);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (canonical_key(path[i].source) != current) return "step " + std::to_string(i) + " starts from a different class";
    try {
      current = canonical_key(apply_move(path[i].source, path[i].move));
    } catch (const StaleInstanceError& e) {
      return "step " + std::to_string(i) + ": " + e.what();
    }
  }
  if (current != canonical_key(b)) return "path ends in a different class";
  return std::nullopt;
}

nlohmann::json to_json(const EquivalenceVerdict& verdict) {
  nlohmann::json out{{"status", to_string(verdict.status)}, {"states", verdict.states}};
  if (verdict.status == VerdictStatus::Equivalent) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : verdict.path)
      steps.push_back({{"source", emit_gauss_text(step.source)}, {"move", to_json(step.move)}});
    out["path"] = std::move(steps);
  }
  if (verdict.witness)
    out["witness"] = {{"invariant", verdict.witness->name}, {"a", verdict.witness->lhs}, {"b", verdict.witness->rhs}};
  return out;
}

SearchBudget default_census_budget(std::size_t max_crossings) { return {max_crossings + 2, 20000}; }

CensusReport census(const CensusOptions& options) {
  if (options.max_crossings > kCensusCrossingCap)
    throw CensusCapError("census is limited to " + std::to_string(kCensusCrossingCap) + " crossings");

  CensusReport report;
  report.options = options;
  std::map<CanonicalKey, GaussCode> keys;
  for (std::size_t n = 0; n <= options.max_crossings; ++n) {
    for_each_gauss_code(n, options.components, [&](const GaussCode& code) {
      ++report.codes;
      auto form = canonical_form(code);
      keys.emplace(std::move(form.key), std::move(form.representative));
    });
  }
  report.keys = keys.size();

  std::vector<const CanonicalKey*> order;
  std::vector<const GaussCode*> reps;
  for (const auto& [key, rep] : keys) {
    order.push_back(&key);
    reps.push_back(&rep);
  }

  // Fingerprints in parallel; each worker owns a stride, results land by index.
  std::vector<InvariantFingerprint> prints(reps.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, reps.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < reps.size(); ++i) prints[i] = fingerprint(*reps[i]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < reps.size(); i += workers) prints[i] = fingerprint(*reps[i]);
      });
    for (auto& t : pool) t.join();
  }

  // Union-find over keys in ascending order; only keys with equal
  // fingerprints are tried against each other.
  std::vector<std::size_t> parent(reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::string, std::vector<std::size_t>> roots_by_print;  // class roots per fingerprint
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto& roots = roots_by_print[prints[i].to_string()];
    bool merged = false;
    for (auto root : roots) {
      if (equivalent_within(*reps[root], *reps[i], options.budget).status == VerdictStatus::Equivalent) {
        parent[i] = root;
        merged = true;
        break;
      }
    }
    if (!merged) roots.push_back(i);
  }

  std::map<std::size_t, CensusClass> classes;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto root = find(i);
    auto [it, fresh] = classes.try_emplace(root);
    if (fresh) it->second = {*order[root], *reps[root], prints[root], 0};
    ++it->second.size;
  }
  for (auto& [root, cls] : classes) report.classes.push_back(std::move(cls));
  std::sort(report.classes.begin(), report.classes.end(),
            [](const CensusClass& x, const CensusClass& y) { return x.key < y.key; });
  return report;
}

nlohmann::json to_json(const CensusReport& report) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : report.classes)
    classes.push_back({{"key", c.key.to_string()},
                       {"representative", emit_gauss_text(c.representative)},
                       {"fingerprint", to_json(c.fingerprint)},
                       {"size", c.size}});
  return {{"format_version", kFormatVersion},
          {"kind", "census"},
          {"max_crossings", report.options.max_crossings},
          {"components", report.options.components},
          {"budget", {{"max_crossings", report.options.budget.max_crossings}, {"max_states", report.options.budget.max_states}}},
          {"codes", report.codes},
          {"keys", report.keys},
          {"classes", std::move(classes)}};
}

std::string census_table(const CensusReport& report) {
  std::ostringstream out;
  out << "census: crossings <= " << report.options.max_crossings << ", components = " << report.options.components
      << ", " << report.codes << " codes, " << report.keys << " keys, " << report.classes.size() << " classes\n";
  std::size_t width = 14;
  for (const auto& c : report.classes) width = std::max(width, emit_gauss_text(c.representative).size());
  for (const auto& c : report.classes) {
    std::string rep = emit_gauss_text(c.representative);
    if (rep.empty()) rep = "(no components)";
    out << "  " << rep << std::string(width - rep.size() + 2, ' ') << "size " << c.size << "  " << c.fingerprint.to_string()
        << '\n';
  }
  return out.str();
}

}  // namespace weld
