#include "weld/enumerate.hpp"

#include <vector>

namespace weld {

namespace {

// Calls visit(cuts) for every way to split `total` items into `parts`
// consecutive, possibly empty, groups.
void for_each_composition(std::size_t total, std::size_t parts,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> sizes(parts, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == parts) {
      sizes[i] = left;
      visit(sizes);
      return;
    }
    for (std::size_t s = 0; s <= left; ++s) {
      sizes[i] = s;
      self(self, i + 1, left - s);
    }
  };
  if (parts == 0) {
    if (total == 0) visit(sizes);
    return;
  }
  rec(rec, 0, total);
}

}  // namespace

void for_each_gauss_code(std::size_t crossings, std::size_t components,
                         const std::function<void(const GaussCode&)>& visit) {
  const std::size_t length = 2 * crossings;
  std::vector<CrossingId> labels(length);
  std::vector<bool> first(length);  // first occurrence of its label
  std::vector<int> open;

  auto emit_all = [&] {
    for (unsigned over_mask = 0; over_mask < (1u << crossings); ++over_mask) {
      for (unsigned sign_mask = 0; sign_mask < (1u << crossings); ++sign_mask) {
        std::vector<Passage> word(length);
        for (std::size_t i = 0; i < length; ++i) {
          const CrossingId c = labels[i];
          const bool over_first = (over_mask >> (c - 1)) & 1u;
          word[i] = {c, first[i] == over_first ? Role::Over : Role::Under,
                     (sign_mask >> (c - 1)) & 1u ? Sign::Negative : Sign::Positive};
        }
        for_each_composition(length, components, [&](const std::vector<std::size_t>& sizes) {
          GaussCode code;
          std::size_t at = 0;
          for (auto s : sizes) {
            code.components.emplace_back(word.begin() + static_cast<std::ptrdiff_t>(at),
                                         word.begin() + static_cast<std::ptrdiff_t>(at + s));
            at += s;
          }
          visit(code);
        });
      }
    }
  };

  // Perfect matchings of the positions with labels in first-appearance order.
  auto rec = [&](auto&& self, std::size_t i, CrossingId next) -> void {
    if (i == length) {
      emit_all();
      return;
    }
    if (next <= crossings) {
      labels[i] = next;
      first[i] = true;
      open.push_back(static_cast<int>(next));
      self(self, i + 1, next + 1);
      open.pop_back();
    }
    for (std::size_t k = 0; k < open.size(); ++k) {
      const int c = open[k];
      labels[i] = static_cast<CrossingId>(c);
      first[i] = false;
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
      self(self, i + 1, next);
      open.insert(open.begin() + static_cast<std::ptrdiff_t>(k), c);
    }
  };
  rec(rec, 0, 1);
}

void for_each_solid_ribbon(std::size_t singularities, std::size_t tori,
                           const std::function<void(const SolidRibbonData&)>& visit) {
  const std::size_t n = singularities;
  for_each_composition(n, tori, [&](const std::vector<std::size_t>& sizes) {
    SolidRibbonData base;
    CrossingId next = 1;
    for (auto s : sizes) {
      Torus t;
      for (std::size_t i = 0; i < s; ++i) t.essentials.push_back(next++);
      t.chambers.resize(s);
      base.tori.push_back(std::move(t));
    }
    // Places for a contractible: (torus, chamber) with chamber == npos for
    // the loose set of an essential-free torus.
    std::vector<std::pair<std::size_t, std::size_t>> places;
    for (std::size_t t = 0; t < base.tori.size(); ++t) {
      if (base.tori[t].essentials.empty()) {
        places.push_back({t, static_cast<std::size_t>(-1)});
      } else {
        for (std::size_t c = 0; c < base.tori[t].chambers.size(); ++c) places.push_back({t, c});
      }
    }
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      for (unsigned sign_mask = 0; sign_mask < (1u << n); ++sign_mask) {
        SolidRibbonData d = base;
        for (std::size_t c = 0; c < n; ++c) {
          const auto [t, chamber] = places[choice[c]];
          const CrossingId id = static_cast<CrossingId>(c + 1);
          if (chamber == static_cast<std::size_t>(-1))
            d.tori[t].loose.insert(id);
          else
            d.tori[t].chambers[chamber].insert(id);
          d.signs[id] = (sign_mask >> c) & 1u ? Sign::Negative : Sign::Positive;
        }
        visit(d);
      }
      std::size_t i = 0;
      while (i < n && ++choice[i] == places.size()) choice[i++] = 0;
      if (i == n) break;
    }
  });
}

}  // namespace weld
