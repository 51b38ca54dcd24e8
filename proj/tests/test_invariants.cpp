#include <doctest.h>

#include <random>

#include "support.hpp"
#include "weld/enumerate.hpp"
#include "weld/invariants.hpp"

using namespace weld;
using weld::test::G;

namespace {

const auto& named(const std::string& name) { return weld::test::oracle().at("named").at(name); }

LaurentPolynomial poly(const nlohmann::json& ascending) {
  return LaurentPolynomial(0, ascending.get<std::vector<std::int64_t>>());
}

const char* kTrefoil = "O1+ U2+ O3+ U1+ O2+ U3+";

}  // namespace

TEST_CASE("linking matrix") {
  const auto empty2 = linking_matrix(G(";;"));
  CHECK(empty2.entries == std::vector<std::vector<int>>{{0, 0}, {0, 0}});
  const auto hopf = linking_matrix(G("O1+ U2+ ; U1+ O2+"));
  CHECK(hopf.entries[0][1] == 1);
  CHECK(hopf.entries[1][0] == 1);
  CHECK(linking_matrix(G(kTrefoil)).entries == std::vector<std::vector<int>>{{3}});
  // the class forgets component order
  CHECK(linking_matrix(G("O1- ; U1-")).off_diagonal_class() == linking_matrix(G("U1- ; O1-")).off_diagonal_class());
}

TEST_CASE("Wirtinger presentation") {
  const auto free1 = wirtinger(G(";"));
  CHECK(free1.generators == 1);
  CHECK(free1.relations.empty());

  const auto kink = wirtinger(G("O1+ U1+"));
  CHECK(kink.generators == 1);
  REQUIRE(kink.relations.size() == 1);
  CHECK(kink.relations[0].over == kink.relations[0].incoming);
  CHECK(kink.relations[0].incoming == kink.relations[0].outgoing);

  const auto trefoil = wirtinger(G(kTrefoil));
  CHECK(trefoil.generators == 3);
  CHECK(trefoil.relations.size() == 3);
  for (const auto& r : trefoil.relations) CHECK(WirtingerPresentation::relator(r).size() == 4);

  // components without Under passages are single arcs
  CHECK(wirtinger(G("O1+ O2+ ; U1+ U2+")).generators == 3);
}

TEST_CASE("Fox colorings against the oracle") {
  CHECK(fox_colorings(G(";"), 3) == 3);
  CHECK(fox_colorings(G(kTrefoil), 3) == 9);
  CHECK(fox_colorings(G(kTrefoil), 5) == 5);
  for (const auto& [name, e] : weld::test::oracle().at("named").items()) {
    CAPTURE(name);
    for (unsigned p : kFingerprintPrimes)
      CHECK(fox_colorings(G(e.at("code")), p) == e.at("fox").at(std::to_string(p)).get<std::uint64_t>());
  }
}

TEST_CASE("Alexander polynomial against the oracle") {
  const auto t = LaurentPolynomial::monomial(1);
  CHECK(alexander(G(";")) == 1);
  CHECK(alexander(G(kTrefoil)) == t * t - t + 1);
  CHECK(alexander(G("U1+ O2- U3- O1+ U4+ O3- U2- O4+")) == t * t - t * 3 + 1);
  CHECK(alexander(GaussCode{}) == 1);
  for (const auto& [name, e] : weld::test::oracle().at("named").items()) {
    CAPTURE(name);
    CHECK(alexander(G(e.at("code"))) == poly(e.at("alexander")));
  }
}

TEST_CASE("two-crossing virtual trefoil code is welded-trivial in every invariant") {
  // Its Over passages commute into two kinks, so nothing can separate it.
  const auto code = G("O1+ O2+ U1+ U2+");
  CHECK(alexander(code) == 1);
  CHECK(fingerprint(code) == fingerprint(G(";")));
  CHECK(named("virtual_trefoil").at("alexander") == nlohmann::json::array({1}));
}

TEST_CASE("fingerprints on every small code match the oracle") {
  const auto& table = weld::test::oracle().at("exhaustive");
  std::size_t checked = 0;
  for (const auto& [text, e] : table.items()) {
    CAPTURE(text);
    const auto code = G(text);
    const auto f = fingerprint(code);
    REQUIRE(f.components == e.at("components").get<std::size_t>());
    REQUIRE(f.linking == e.at("linking").get<std::vector<int>>());
    for (std::size_t i = 0; i < kFingerprintPrimes.size(); ++i)
      REQUIRE(f.fox[i] == e.at("fox").at(std::to_string(kFingerprintPrimes[i])).get<std::uint64_t>());
    REQUIRE(f.alexander == poly(e.at("alexander")));
    ++checked;
  }
  CHECK(checked == table.size());
  CHECK(checked > 1500);
}

TEST_CASE("finite groups") {
  CHECK(FiniteGroup::cyclic(5).order() == 5);
  CHECK(FiniteGroup::symmetric(3).order() == 6);
  CHECK(FiniteGroup::dihedral(5).order() == 10);
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  const auto g = parse_group_text("2\n0 1\n1 0\n");
  CHECK(g.order() == 2);
  CHECK(g.inverse(1) == 1);
  CHECK_THROWS(parse_group_text("2\n0 1\n1 1\n"));   // not a group
  CHECK_THROWS(parse_group_text("3\n0 1 2\n1 2 0\n"));  // truncated
  CHECK_THROWS(FiniteGroup({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
}

TEST_CASE("group colorings") {
  const auto s3 = FiniteGroup::symmetric(3);
  CHECK(group_colorings(G(";"), s3) == 6);
  CHECK(group_colorings(G(";;"), FiniteGroup::cyclic(5)) == 25);
  CHECK(group_colorings(G(kTrefoil), s3) > 6);
  for (const auto& [name, e] : weld::test::oracle().at("named").items()) {
    CAPTURE(name);
    CHECK(group_colorings(G(e.at("code")), s3) == e.at("s3_colorings").get<std::uint64_t>());
  }
}

TEST_CASE("abelian colorings count p^components") {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const auto code = weld::test::random_code(rng, rng() % 5, k);
    std::uint64_t expected = 1;
    for (std::size_t j = 0; j < k; ++j) expected *= 3;
    CHECK(group_colorings(code, FiniteGroup::cyclic(3)) == expected);
  }
}

TEST_CASE("Fox counts are multiples of p and at least p") {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto code = weld::test::random_code(rng, rng() % 6, 1);
    for (unsigned p : kFingerprintPrimes) {
      const auto n = fox_colorings(code, p);
      CHECK(n % p == 0);
      CHECK(n >= p);
    }
  }
}

TEST_CASE("fingerprint ignores relabeling and component order") {
  const auto a = G("O1+ U2- ; U1+ O3- U3- O2-");
  const auto b = G("U5+ O9- U9- O4- ; O5+ U4-");
  CHECK(fingerprint(a) == fingerprint(b));
}

TEST_CASE("first difference reports in declaration order") {
  const auto d = first_difference(fingerprint(G(kTrefoil)), fingerprint(G(";")));
  REQUIRE(d);
  CHECK(d->name == "fox3");
  CHECK(d->lhs == "9");
  CHECK(d->rhs == "3");
  CHECK(first_difference(fingerprint(G(";")), fingerprint(G(";;")))->name == "components");
  CHECK_FALSE(first_difference(fingerprint(G("O1+ U1+")), fingerprint(G(";"))));
}

TEST_CASE("fingerprint JSON") {
  const auto j = to_json(fingerprint(G(kTrefoil)));
  CHECK(j.at("fox").at("3") == 9);
  CHECK(j.at("alexander") == "t^2 - t + 1");
}
