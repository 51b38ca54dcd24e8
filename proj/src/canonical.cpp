#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "weld/search.hpp"

namespace weld {

namespace {

constexpr std::int32_t kRoleStride = 1 << 24;

std::int32_t encode(const Passage& p) {
  const std::int32_t role = p.role == Role::Under ? 0 : 1;
  return role * kRoleStride + static_cast<std::int32_t>(p.crossing) * 2 + (p.sign == Sign::Negative ? 1 : 0);
}

bool passage_less(const Passage& a, const Passage& b) { return encode(a) < encode(b); }

// Builds the relabeled, OC-sorted word set for one choice of component order
// and starting Under passage per component.
GaussCode build(const GaussCode& code, const std::vector<std::size_t>& order, const std::vector<std::size_t>& starts) {
  std::map<CrossingId, CrossingId> label;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& comp = code.components[order[i]];
    for (std::size_t j = 0; j < comp.size(); ++j) {
      const Passage& p = comp[(starts[i] + j) % comp.size()];
      if (p.role == Role::Under) label.emplace(p.crossing, static_cast<CrossingId>(label.size() + 1));
    }
  }
  GaussCode out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& comp = code.components[order[i]];
    Component word;
    for (std::size_t j = 0; j < comp.size(); ++j) {
      Passage p = comp[(starts[i] + j) % comp.size()];
      p.crossing = label.at(p.crossing);
      word.push_back(p);
    }
    // Sort each run of Over passages; a word starting with Under has its
    // runs between Unders, an all-Over word is one run.
    auto run = word.begin();
    while (run != word.end()) {
      if (run->role == Role::Under) {
        ++run;
        continue;
      }
      auto end = std::find_if(run, word.end(), [](const Passage& p) { return p.role == Role::Under; });
      std::sort(run, end, passage_less);
      run = end;
    }
    out.components.push_back(std::move(word));
  }
  return out;
}

}  // namespace

std::string CanonicalKey::to_string() const {
  std::string out;
  for (auto w : words) {
    if (w < 0) {
      out += ';';
      continue;
    }
    if (!out.empty() && out.back() != ';') out += ' ';
    out += w >= kRoleStride ? 'O' : 'U';
    out += std::to_string((w % kRoleStride) / 2);
    out += (w & 1) ? '-' : '+';
  }
  return out;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& key) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto w : key.words) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(w));
    h *= 0x100000001b3ull;
  }
  return h;
}

CanonicalForm canonical_form(const GaussCode& code) {
  const std::size_t k = code.components.size();
  std::vector<std::vector<std::size_t>> under_positions(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < code.components[c].size(); ++j)
      if (code.components[c][j].role == Role::Under) under_positions[c].push_back(j);
    if (under_positions[c].empty()) under_positions[c].push_back(0);
  }

  std::optional<CanonicalForm> best;
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> choice(k), starts(k);
  do {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) starts[i] = under_positions[order[i]][choice[i]];
      GaussCode candidate = build(code, order, starts);
      CanonicalKey key;
      for (const auto& comp : candidate.components) {
        for (const auto& p : comp) key.words.push_back(encode(p));
        key.words.push_back(-1);
      }
      if (!best || key < best->key) best = CanonicalForm{std::move(candidate), std::move(key)};
      std::size_t i = 0;
      while (i < k && ++choice[i] == under_positions[order[i]].size()) choice[i++] = 0;
      if (i == k) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return std::move(*best);
}

CanonicalKey canonical_key(const GaussCode& code) { return canonical_form(code).key; }

}  // namespace weld
