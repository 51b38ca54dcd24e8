#pragma once

#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "weld/codec.hpp"
#include "weld/core.hpp"

namespace weld::test {

inline GaussCode G(const std::string& text) { return parse_gauss_text(text); }

inline std::string data_path(const std::string& name) { return std::string(WELD_TEST_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline const nlohmann::json& oracle() {
  static const nlohmann::json doc = nlohmann::json::parse(read_file("invariant_oracle.json"));
  return doc;
}

// A random valid code: crossings 1..n scattered over `components` words.
inline GaussCode random_code(std::mt19937& rng, std::size_t crossings, std::size_t components) {
  std::vector<Passage> passages;
  for (CrossingId c = 1; c <= crossings; ++c) {
    const Sign s = rng() % 2 ? Sign::Positive : Sign::Negative;
    passages.push_back({c, Role::Over, s});
    passages.push_back({c, Role::Under, s});
  }
  std::shuffle(passages.begin(), passages.end(), rng);
  GaussCode code;
  code.components.resize(components);
  for (const auto& p : passages) code.components[rng() % components].push_back(p);
  return code;
}

}  // namespace weld::test
