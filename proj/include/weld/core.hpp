#pragma once

// Core vocabulary for welded diagrams and solid ribbon torus links.
//
// A GaussCode is a welded diagram modulo virtual moves: one cyclic word of
// signed Over/Under passages per component. A SolidRibbonData holds the
// combinatorics of a solid ribbon torus link: for each torus the cyclic
// sequence of essential preimages, the chambers of contractible preimages
// between them, and a sign per singularity. Both are plain values.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace weld {

using CrossingId = std::uint32_t;

enum class Sign : std::int8_t { Positive = 1, Negative = -1 };

constexpr Sign operator-(Sign s) noexcept {
  return s == Sign::Positive ? Sign::Negative : Sign::Positive;
}
constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr char sign_char(Sign s) noexcept { return s == Sign::Positive ? '+' : '-'; }

enum class Role : std::uint8_t { Over, Under };

constexpr char role_char(Role r) noexcept { return r == Role::Over ? 'O' : 'U'; }

struct Passage {
  CrossingId crossing = 0;
  Role role = Role::Over;
  Sign sign = Sign::Positive;

  friend bool operator==(const Passage&, const Passage&) = default;
};

/// One strand of a diagram: a cyclic word; index 0 carries no meaning.
using Component = std::vector<Passage>;

struct GaussCode {
  std::vector<Component> components;

  friend bool operator==(const GaussCode&, const GaussCode&) = default;

  std::size_t passage_count() const noexcept;
  /// Number of crossings, assuming the code is valid.
  std::size_t crossing_count() const noexcept { return passage_count() / 2; }
  std::set<CrossingId> crossings() const;
  /// Largest crossing identifier present, 0 for crossing-free codes.
  CrossingId max_crossing() const noexcept;
};

std::string to_string(const Passage& p);

/// Equality of cyclic words: same component order, same labels, each
/// component equal up to rotation.
bool same_up_to_rotation(const Component& a, const Component& b);
bool same_up_to_rotation(const GaussCode& a, const GaussCode& b);

Component rotated(const Component& word, std::size_t start);

/// A torus of a solid ribbon torus link.
///
/// Form (a): `essentials` nonempty; `chambers[i]` holds the contractibles
/// lying between `essentials[i]` and the cyclically next essential.
/// Form (b): no essentials, every contractible in `loose`.
/// Form (c): everything empty.
struct Torus {
  std::vector<CrossingId> essentials;
  std::vector<std::set<CrossingId>> chambers;
  std::set<CrossingId> loose;

  bool empty() const noexcept { return essentials.empty() && chambers.empty() && loose.empty(); }
  friend bool operator==(const Torus&, const Torus&) = default;
};

struct SolidRibbonData {
  std::vector<Torus> tori;
  std::map<CrossingId, Sign> signs;

  friend bool operator==(const SolidRibbonData&, const SolidRibbonData&) = default;
};

// ---- validation ----------------------------------------------------------

enum class Rule {
  // Gauss codes
  SignMismatch,
  MissingOver,
  MissingUnder,
  DuplicateOver,
  DuplicateUnder,
  // Solid ribbon data
  DuplicateEssential,
  DuplicateContractible,
  MissingEssential,
  MissingContractible,
  ChamberCount,
  MixedTorusForm,
  UnsignedCrossing,
};

std::string to_string(Rule rule);

struct Violation {
  Rule rule;
  std::optional<CrossingId> crossing;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_gauss_code(const GaussCode& code);
ValidationReport validate_solid_ribbon(const SolidRibbonData& data);

/// Thrown by operations whose precondition is a valid value.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

void require_valid(const GaussCode& code);
void require_valid(const SolidRibbonData& data);

}  // namespace weld
