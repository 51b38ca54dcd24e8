#pragma once

// Welded invariants: linking matrix, Wirtinger presentation, Fox colorings,
// finite-group colorings and the one-variable Alexander polynomial.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "weld/core.hpp"
#include "weld/laurent.hpp"

namespace weld {

/// entries[i][j], i != j: signed count of crossings with the Over passage on
/// component i and the Under passage on component j. The diagonal sums the
/// self-crossing signs; R1 changes it, so it is diagnostic only.
struct LinkingMatrix {
  std::vector<std::vector<int>> entries;

  std::size_t size() const noexcept { return entries.size(); }
  /// Row-major off-diagonal entries, minimized over simultaneous row/column
  /// permutations: an invariant of the unordered link.
  std::vector<int> off_diagonal_class() const;
  friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;
};

LinkingMatrix linking_matrix(const GaussCode& code);

/// Arcs are maximal cyclic runs of a component with no Under passage inside;
/// Over passages do not break arcs. A component without Under passages is a
/// single arc.
struct WirtingerPresentation {
  struct Relation {
    CrossingId crossing = 0;
    Sign sign = Sign::Positive;
    std::size_t over = 0;      // arc holding the Over passage
    std::size_t incoming = 0;  // arc ending at the Under passage
    std::size_t outgoing = 0;  // arc starting after it
  };

  std::size_t generators = 0;
  std::vector<Relation> relations;  // ascending crossing id

  /// Relator word as (generator, +1/-1) letters: positive crossings give
  /// o x o^-1 y^-1, negative ones o^-1 x o y^-1.
  static std::vector<std::pair<std::size_t, int>> relator(const Relation& r);
};

WirtingerPresentation wirtinger(const GaussCode& code);

/// Assignments arcs -> Z/p with out = 2 over - in (mod p) at every crossing.
std::uint64_t fox_colorings(const GaussCode& code, unsigned p);

/// A finite group given by its multiplication table over 0..n-1.
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity and inverses.
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table);

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup symmetric(std::size_t n);
  static FiniteGroup dihedral(std::size_t n);  // order 2n

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// Text format: the order n, then n rows of n zero-based element indices.
FiniteGroup parse_group_text(std::string_view text);

/// |Hom(Wirtinger group, G)| by backtracking.
std::uint64_t group_colorings(const GaussCode& code, const FiniteGroup& group);

/// Normalized gcd of the maximal minors of the Fox Jacobian with one column
/// deleted. Fewer relations than generators-minus-one gives zero.
LaurentPolynomial alexander(const GaussCode& code);

inline constexpr std::array<unsigned, 4> kFingerprintPrimes{2, 3, 5, 7};

struct InvariantFingerprint {
  std::size_t components = 0;
  std::vector<int> linking;  // LinkingMatrix::off_diagonal_class
  std::array<std::uint64_t, 4> fox{};
  LaurentPolynomial alexander;

  friend bool operator==(const InvariantFingerprint&, const InvariantFingerprint&) = default;
  std::string to_string() const;
};

InvariantFingerprint fingerprint(const GaussCode& code);

struct InvariantDifference {
  std::string name;  // "components", "linking", "fox3", "alexander", ...
  std::string lhs;
  std::string rhs;
};

/// First entry, in declaration order, on which two fingerprints differ.
std::optional<InvariantDifference> first_difference(const InvariantFingerprint& a,
                                                    const InvariantFingerprint& b);

nlohmann::json to_json(const InvariantFingerprint& f);

}  // namespace weld
