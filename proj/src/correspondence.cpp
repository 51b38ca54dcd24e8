#include "weld/correspondence.hpp"

#include <algorithm>
#include <stdexcept>

namespace weld {

GaussCode conn_map(const SolidRibbonData& data) {
  require_valid(data);
  GaussCode code;
  for (const auto& torus : data.tori) {
    Component comp;
    auto over = [&](CrossingId c) { comp.push_back({c, Role::Over, data.signs.at(c)}); };
    for (std::size_t i = 0; i < torus.essentials.size(); ++i) {
      const CrossingId e = torus.essentials[i];
      comp.push_back({e, Role::Under, data.signs.at(e)});
      for (auto c : torus.chambers[i]) over(c);  // std::set iterates ascending
    }
    for (auto c : torus.loose) over(c);
    code.components.push_back(std::move(comp));
  }
  return code;
}

SolidRibbonData tube_map(const GaussCode& code) {
  require_valid(code);
  SolidRibbonData data;
  for (const auto& comp : code.components) {
    Torus torus;
    for (const auto& p : comp) data.signs[p.crossing] = p.sign;
    const auto first_under =
        std::find_if(comp.begin(), comp.end(), [](const Passage& p) { return p.role == Role::Under; });
    if (first_under == comp.end()) {
      for (const auto& p : comp) torus.loose.insert(p.crossing);
    } else {
      const auto start = static_cast<std::size_t>(first_under - comp.begin());
      for (const auto& p : rotated(comp, start)) {
        if (p.role == Role::Under) {
          torus.essentials.push_back(p.crossing);
          torus.chambers.emplace_back();
        } else {
          torus.chambers.back().insert(p.crossing);
        }
      }
    }
    data.tori.push_back(std::move(torus));
  }
  return data;
}

namespace {

// Runs of Over passages as (start, length); a component with no Under
// passage is a single run starting at 0.
std::vector<std::pair<std::size_t, std::size_t>> over_runs(const Component& comp) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  const std::size_t n = comp.size();
  std::vector<std::size_t> unders;
  for (std::size_t i = 0; i < n; ++i)
    if (comp[i].role == Role::Under) unders.push_back(i);
  if (unders.empty()) {
    if (n) runs.emplace_back(0, n);
    return runs;
  }
  for (std::size_t k = 0; k < unders.size(); ++k) {
    const std::size_t from = unders[k] + 1;
    const std::size_t to = k + 1 < unders.size() ? unders[k + 1] : unders[0] + n;
    if (to > from) runs.emplace_back(from % n, to - from);
  }
  return runs;
}

}  // namespace

GaussCode apply_swap(GaussCode code, const AdjacentSwap& swap) {
  auto& comp = code.components.at(swap.component);
  const std::size_t n = comp.size();
  if (n < 2) throw std::out_of_range("swap on a component shorter than two passages");
  std::swap(comp[swap.position % n], comp[(swap.position + 1) % n]);
  return code;
}

std::vector<AdjacentSwap> oc_canonicalize_path(const GaussCode& code) {
  require_valid(code);
  std::vector<AdjacentSwap> path;
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    Component comp = code.components[c];
    const std::size_t n = comp.size();
    for (auto [start, length] : over_runs(comp)) {
      // bubble sort inside the run, recording each adjacent exchange
      for (std::size_t pass = 0; pass + 1 < length; ++pass) {
        for (std::size_t k = 0; k + 1 < length - pass; ++k) {
          auto& a = comp[(start + k) % n];
          auto& b = comp[(start + k + 1) % n];
          if (b.crossing < a.crossing) {
            std::swap(a, b);
            path.push_back({c, (start + k) % n});
          }
        }
      }
    }
  }
  return path;
}

GaussCode oc_canonicalize(const GaussCode& code) {
  GaussCode out = code;
  for (const auto& s : oc_canonicalize_path(code)) out = apply_swap(std::move(out), s);
  for (auto& comp : out.components) {
    const auto first_under =
        std::find_if(comp.begin(), comp.end(), [](const Passage& p) { return p.role == Role::Under; });
    if (first_under != comp.end()) comp = rotated(comp, static_cast<std::size_t>(first_under - comp.begin()));
  }
  return out;
}

}  // namespace weld
