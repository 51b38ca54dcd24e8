#pragma once

// Canonical keys, bounded bidirectional equivalence search and a small census
// of welded diagram classes.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weld/core.hpp"
#include "weld/invariants.hpp"
#include "weld/moves.hpp"

namespace weld {

/// Encoded representative: per component, one integer per passage followed
/// by -1. Passage order is (role with Under < Over, crossing, sign with
/// + < -).
struct CanonicalKey {
  std::vector<std::int32_t> words;

  std::string to_string() const;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& key) const noexcept;
};

struct CanonicalForm {
  GaussCode representative;
  CanonicalKey key;
};

/// Minimum over component orders and, per component, the Under passage the
/// word starts at. Crossings are renumbered 1, 2, ... in the order their
/// Under passages are met; Over runs are then sorted. Equal keys exactly when
/// two codes differ by relabeling, rotation, component order and OC moves.
CanonicalForm canonical_form(const GaussCode& code);
CanonicalKey canonical_key(const GaussCode& code);

struct SearchBudget {
  std::size_t max_crossings = 6;
  std::size_t max_states = 20000;
};

/// One step of a witness path: `source` has the canonical key reached so far
/// and `move` applies to it.
struct PathStep {
  GaussCode source;
  MoveInstance move;
};

enum class VerdictStatus { Equivalent, Distinct, Unknown };

std::string to_string(VerdictStatus status);

struct EquivalenceVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::vector<PathStep> path;                  // Equivalent
  std::optional<InvariantDifference> witness;  // Distinct
  std::size_t states = 0;                      // distinct keys visited
};

/// Fingerprints first, then breadth-first search from both ends over
/// canonical keys with every move kind. Throws std::invalid_argument if
/// max_crossings is below either code's crossing count.
EquivalenceVerdict equivalent_within(const GaussCode& a, const GaussCode& b, const SearchBudget& budget);

/// Checks a witness: each step's source has the current key, and the last
/// result has the key of `b`. Returns an explanation on failure.
std::optional<std::string> replay_failure(const GaussCode& a, const GaussCode& b, const std::vector<PathStep>& path);

nlohmann::json to_json(const EquivalenceVerdict& verdict);

inline constexpr std::size_t kCensusCrossingCap = 4;

class CensusCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CensusOptions {
  std::size_t max_crossings = 0;
  std::size_t components = 1;
  SearchBudget budget{2, 20000};
  std::size_t workers = 1;
};

/// Default search budget for a census: two spare crossings.
SearchBudget default_census_budget(std::size_t max_crossings);

struct CensusClass {
  CanonicalKey key;  // least key in the class
  GaussCode representative;
  InvariantFingerprint fingerprint;
  std::size_t size = 0;  // canonical keys merged into the class
};

struct CensusReport {
  CensusOptions options;
  std::size_t codes = 0;  // labelled codes enumerated
  std::size_t keys = 0;   // distinct canonical keys
  std::vector<CensusClass> classes;  // ascending key
};

CensusReport census(const CensusOptions& options);

nlohmann::json to_json(const CensusReport& report);
std::string census_table(const CensusReport& report);

}  // namespace weld
