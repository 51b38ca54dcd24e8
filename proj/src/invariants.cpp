#include "weld/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weld {

// ---- linking matrix ------------------------------------------------------

LinkingMatrix linking_matrix(const GaussCode& code) {
  require_valid(code);
  const std::size_t k = code.components.size();
  std::map<CrossingId, std::size_t> over_on, under_on;
  std::map<CrossingId, Sign> sign;
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& p : code.components[c]) {
      (p.role == Role::Over ? over_on : under_on)[p.crossing] = c;
      sign[p.crossing] = p.sign;
    }
  }
  LinkingMatrix L;
  L.entries.assign(k, std::vector<int>(k, 0));
  for (const auto& [c, s] : sign) L.entries[over_on[c]][under_on[c]] += to_int(s);
  return L;
}

std::vector<int> LinkingMatrix::off_diagonal_class() const {
  const std::size_t k = size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> v;
    v.reserve(k * (k ? k - 1 : 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) v.push_back(entries[perm[i]][perm[j]]);
    if (best.empty() || v < best) best = std::move(v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---- Wirtinger -----------------------------------------------------------

WirtingerPresentation wirtinger(const GaussCode& code) {
  require_valid(code);
  WirtingerPresentation w;
  struct Ends {
    std::size_t over = 0, incoming = 0, outgoing = 0;
  };
  std::map<CrossingId, Ends> ends;
  std::map<CrossingId, Sign> sign;

  for (const auto& comp : code.components) {
    const std::size_t n = comp.size();
    std::vector<std::size_t> unders;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i].role == Role::Under) unders.push_back(i);
    const std::size_t base = w.generators;
    if (unders.empty()) {
      for (const auto& p : comp) {
        ends[p.crossing].over = base;
        sign[p.crossing] = p.sign;
      }
      w.generators += 1;
      continue;
    }
    const std::size_t arcs = unders.size();
    // arc base+k starts right after the k-th Under passage
    std::size_t k = arcs - 1;  // arc in effect at position 0 (wrapped from the last Under)
    for (std::size_t i = 0, next = 0; i < n; ++i) {
      const auto& p = comp[i];
      sign[p.crossing] = p.sign;
      if (next < arcs && unders[next] == i) {
        ends[p.crossing].incoming = base + k;
        k = next++;
        ends[p.crossing].outgoing = base + k;
      } else {
        ends[p.crossing].over = base + k;
      }
    }
    w.generators += arcs;
  }
  for (const auto& [c, e] : ends) w.relations.push_back({c, sign[c], e.over, e.incoming, e.outgoing});
  return w;
}

std::vector<std::pair<std::size_t, int>> WirtingerPresentation::relator(const Relation& r) {
  if (r.sign == Sign::Positive) return {{r.over, 1}, {r.incoming, 1}, {r.over, -1}, {r.outgoing, -1}};
  return {{r.over, -1}, {r.incoming, 1}, {r.over, 1}, {r.outgoing, -1}};
}

// ---- colorings -----------------------------------------------------------

namespace {

// Counts arc labelings in 0..size-1 subject to out = forward(over, in, sign)
// with in = backward(over, out, sign). Propagates determined arcs, then
// branches on the unassigned arc that is most often an over arc.
template <typename Forward, typename Backward>
std::uint64_t count_colorings(const WirtingerPresentation& w, std::size_t size, Forward forward,
                              Backward backward) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(w.generators);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> weight(w.generators, 0);
  for (const auto& r : w.relations) weight[r.over] += 2, weight[r.incoming] += 1;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight[a] > weight[b]; });

  auto propagate = [&](std::vector<std::size_t>& label) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : w.relations) {
        const std::size_t o = label[r.over];
        if (o == kUnset) continue;
        std::size_t& in = label[r.incoming];
        std::size_t& out = label[r.outgoing];
        if (in != kUnset && out == kUnset) {
          out = forward(o, in, r.sign);
          changed = true;
        } else if (in == kUnset && out != kUnset) {
          in = backward(o, out, r.sign);
          changed = true;
        } else if (in != kUnset && forward(o, in, r.sign) != out) {
          return false;
        }
      }
    }
    return true;
  };

  auto recurse = [&](auto& self, std::vector<std::size_t> label) -> std::uint64_t {
    if (!propagate(label)) return 0;
    for (auto arc : order) {
      if (label[arc] != kUnset) continue;
      std::uint64_t total = 0;
      for (std::size_t v = 0; v < size; ++v) {
        label[arc] = v;
        total += self(self, label);
      }
      return total;
    }
    return 1;
  };
  return recurse(recurse, std::vector<std::size_t>(w.generators, kUnset));
}

}  // namespace

std::uint64_t fox_colorings(const GaussCode& code, unsigned p) {
  if (p < 2) throw std::invalid_argument("fox_colorings needs p >= 2");
  const auto w = wirtinger(code);
  auto reflect = [p](std::size_t o, std::size_t x, Sign) { return (2 * o + p - x) % p; };
  return count_colorings(w, p, reflect, reflect);
}

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  for (const auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("group table is not square");
    for (auto v : row)
      if (v >= n) throw std::invalid_argument("group table entry out of range");
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool is_identity = true;
    for (std::size_t a = 0; a < n && is_identity; ++a) is_identity = table_[e][a] == a && table_[a][e] == a;
    if (is_identity) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("group table has no identity");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n) throw std::invalid_argument("group element " + std::to_string(a) + " has no inverse");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("group table is not associative");
}

namespace {

using Permutation = std::vector<std::size_t>;

FiniteGroup from_permutations(const std::vector<Permutation>& generators, std::size_t degree) {
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> elements{id};
  std::vector<Permutation> frontier{id};
  auto compose = [](const Permutation& a, const Permutation& b) {
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  };
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier)
      for (const auto& g : generators) {
        auto q = compose(g, p);
        if (elements.insert(q).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  const std::vector<Permutation> list(elements.begin(), elements.end());
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = i;
  std::vector<std::vector<std::size_t>> table(list.size(), std::vector<std::size_t>(list.size()));
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b) table[a][b] = index.at(compose(list[a], list[b]));
  return FiniteGroup(std::move(table));
}

}  // namespace

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return FiniteGroup(std::move(table));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n == 0) throw std::invalid_argument("symmetric group of degree 0");
  std::vector<Permutation> gens;
  if (n > 1) {
    Permutation swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens = {swap, cycle};
  }
  return from_permutations(gens, n);
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  Permutation rotation(n), reflection(n);
  for (std::size_t i = 0; i < n; ++i) {
    rotation[i] = (i + 1) % n;
    reflection[i] = (n - i) % n;
  }
  return from_permutations({rotation, reflection}, n);
}

FiniteGroup parse_group_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n) || n <= 0) throw std::invalid_argument("group text: expected a positive order");
  std::vector<std::vector<std::size_t>> table(static_cast<std::size_t>(n),
                                              std::vector<std::size_t>(static_cast<std::size_t>(n)));
  for (auto& row : table)
    for (auto& v : row) {
      long long x = 0;
      if (!(in >> x) || x < 0) throw std::invalid_argument("group text: expected an element index");
      v = static_cast<std::size_t>(x);
    }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("group text: trailing data");
  return FiniteGroup(std::move(table));
}

std::uint64_t group_colorings(const GaussCode& code, const FiniteGroup& g) {
  const auto w = wirtinger(code);
  auto conj = [&g](std::size_t a, std::size_t x) { return g.multiply(g.multiply(a, x), g.inverse(a)); };
  // positive: y = o x o^-1, negative: y = o^-1 x o
  auto forward = [&](std::size_t o, std::size_t x, Sign s) { return s == Sign::Positive ? conj(o, x) : conj(g.inverse(o), x); };
  auto backward = [&](std::size_t o, std::size_t y, Sign s) { return s == Sign::Positive ? conj(g.inverse(o), y) : conj(o, y); };
  return count_colorings(w, g.order(), forward, backward);
}

// ---- Alexander -----------------------------------------------------------

namespace {

using PolyMatrix = std::vector<std::vector<LaurentPolynomial>>;

// Determinant by expansion over column subsets, row by row.
LaurentPolynomial determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPolynomial(1);
  std::vector<LaurentPolynomial> minor(std::size_t{1} << n);
  minor[0] = LaurentPolynomial(1);
  for (std::size_t mask = 1; mask < minor.size(); ++mask) {
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    LaurentPolynomial sum;
    int greater = 0;  // members of mask above column j
    for (std::size_t j = n; j-- > 0;) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const auto& rest = minor[mask ^ (std::size_t{1} << j)];
      if (!rest.is_zero() && !m[row][j].is_zero()) {
        auto term = m[row][j] * rest;
        if (greater % 2) sum -= term; else sum += term;
      }
      ++greater;
    }
    minor[mask] = std::move(sum);
  }
  return minor.back();
}

}  // namespace

LaurentPolynomial alexander(const GaussCode& code) {
  const auto w = wirtinger(code);
  if (w.generators == 0) return LaurentPolynomial(1);  // empty link
  const std::size_t cols = w.generators - 1;
  const std::size_t rows = w.relations.size();
  if (rows < cols) return {};

  // Fox derivatives under abelianization, dropping generator 0's column.
  PolyMatrix jacobian(rows, std::vector<LaurentPolynomial>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    int prefix = 0;
    for (auto [gen, e] : WirtingerPresentation::relator(w.relations[r])) {
      if (gen != 0) {
        auto& cell = jacobian[r][gen - 1];
        if (e > 0) cell += LaurentPolynomial::monomial(prefix);
        else cell -= LaurentPolynomial::monomial(prefix - 1);
      }
      prefix += e;
    }
  }

  LaurentPolynomial g;
  std::vector<bool> pick(rows, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(cols), true);
  do {
    PolyMatrix minor;
    for (std::size_t r = 0; r < rows; ++r)
      if (pick[r]) minor.push_back(jacobian[r]);
    g = polynomial_gcd(g, determinant(minor));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g.normalized();
}

// ---- fingerprint ---------------------------------------------------------

InvariantFingerprint fingerprint(const GaussCode& code) {
  InvariantFingerprint f;
  f.components = code.components.size();
  f.linking = linking_matrix(code).off_diagonal_class();
  for (std::size_t i = 0; i < kFingerprintPrimes.size(); ++i) f.fox[i] = fox_colorings(code, kFingerprintPrimes[i]);
  f.alexander = alexander(code);
  return f;
}

namespace {

std::string vector_string(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::string InvariantFingerprint::to_string() const {
  std::ostringstream out;
  out << "components=" << components << " linking=" << vector_string(linking);
  for (std::size_t i = 0; i < fox.size(); ++i) out << " fox" << kFingerprintPrimes[i] << '=' << fox[i];
  out << " alexander=" << alexander.to_string();
  return out.str();
}

std::optional<InvariantDifference> first_difference(const InvariantFingerprint& a, const InvariantFingerprint& b) {
  if (a.components != b.components)
    return InvariantDifference{"components", std::to_string(a.components), std::to_string(b.components)};
  if (a.linking != b.linking) return InvariantDifference{"linking", vector_string(a.linking), vector_string(b.linking)};
  for (std::size_t i = 0; i < a.fox.size(); ++i)
    if (a.fox[i] != b.fox[i])
      return InvariantDifference{"fox" + std::to_string(kFingerprintPrimes[i]), std::to_string(a.fox[i]),
                                 std::to_string(b.fox[i])};
  if (a.alexander != b.alexander) return InvariantDifference{"alexander", a.alexander.to_string(), b.alexander.to_string()};
  return std::nullopt;
}

nlohmann::json to_json(const InvariantFingerprint& f) {
  nlohmann::json fox = nlohmann::json::object();
  for (std::size_t i = 0; i < f.fox.size(); ++i) fox[std::to_string(kFingerprintPrimes[i])] = f.fox[i];
  return {{"format_version", 1},
          {"kind", "fingerprint"},
          {"components", f.components},
          {"linking", f.linking},
          {"fox", std::move(fox)},
          {"alexander", f.alexander.to_string()},
          {"alexander_coefficients", f.alexander.coefficients()}};
}

}  // namespace weld
