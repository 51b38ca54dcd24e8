#include <doctest.h>

#include <random>

#include "support.hpp"
#include "weld/codec.hpp"
#include "weld/correspondence.hpp"
#include "weld/enumerate.hpp"
#include "weld/moves.hpp"

using namespace weld;
using weld::test::G;

TEST_CASE("conn_map on the three-torus example") {
  const auto code = conn_map(parse_ribbon_text("E3 C1 C2 ; E1 C3 ; E2"));
  CHECK(code == G("U3+ O1+ O2+ ; U1+ O3+ ; U2+"));
}

TEST_CASE("conn_map small cases") {
  CHECK(conn_map(parse_ribbon_text(";")) == G(";"));
  CHECK(conn_map(parse_ribbon_text("C1 ; E1 | 1:-")) == G("O1- ; U1-"));
  CHECK(conn_map(SolidRibbonData{}) == GaussCode{});
}

TEST_CASE("tube_map examples") {
  CHECK(tube_map(G("U3+ O1+ O2+ ; U1+ O3+ ; U2+")) == parse_ribbon_text("E3 C1 C2 ; E1 C3 ; E2"));
  const auto d = tube_map(G("O1+ O2+ U1+ U2+"));
  REQUIRE(d.tori.size() == 1);
  CHECK(d.tori[0].essentials == std::vector<CrossingId>{1, 2});
  CHECK(d.tori[0].chambers == std::vector<std::set<CrossingId>>{{}, {1, 2}});
  CHECK(tube_map(G(";")).tori[0].empty());
  CHECK(tube_map(G("O1- ; U1-")) == parse_ribbon_text("C1 ; E1 | 1:-"));
}

TEST_CASE("oc_canonicalize examples") {
  CHECK(oc_canonicalize(G("U3+ O2+ O1+ ; O3+ U1+ U2+")) == G("U3+ O1+ O2+ ; U1+ U2+ O3+"));
  const auto fixed = G("O1+ U2+ O3+ U1+ O2+ U3+");
  CHECK(same_up_to_rotation(oc_canonicalize(fixed), fixed));
  // sorted, then rotated to its first Under passage
  CHECK(oc_canonicalize(G("O2+ O1+ U2+ U1+")) == G("U2+ U1+ O1+ O2+"));
  CHECK(same_up_to_rotation(oc_canonicalize(G("O2+ O1+ U2+ U1+")), G("O1+ O2+ U2+ U1+")));
  CHECK(oc_canonicalize(G("O3- O1+ O2+ ; U1+ U2+ U3-")) == G("O1+ O2+ O3- ; U1+ U2+ U3-"));
}

TEST_CASE("OC closure of a four-letter word") {
  // Every word reachable by adjacent Over swaps canonicalizes to the same code.
  const auto start = G("O2+ O1+ U2+ U1+");
  std::set<std::string> seen{emit_gauss_text(start)};
  std::vector<GaussCode> todo{start};
  while (!todo.empty()) {
    const auto code = todo.back();
    todo.pop_back();
    CHECK(oc_canonicalize(code) == oc_canonicalize(start));
    for (const auto& inst : applicable_moves(code, {MoveKind::OC})) {
      const auto next = apply_move(code, inst);
      if (seen.insert(emit_gauss_text(next)).second) todo.push_back(next);
    }
  }
  CHECK(seen.size() == 2);
}

TEST_CASE("canonicalization path is made of OC moves") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto code = weld::test::random_code(rng, 1 + rng() % 5, 1 + rng() % 2);
    GaussCode cur = code;
    for (const auto& swap : oc_canonicalize_path(code)) {
      const auto& comp = cur.components[swap.component];
      const std::size_t n = comp.size();
      REQUIRE(comp[swap.position].role == Role::Over);
      REQUIRE(comp[(swap.position + 1) % n].role == Role::Over);
      // the same exchange is available as an OC move instance
      const auto next = apply_swap(cur, swap);
      bool found = false;
      for (const auto& inst : applicable_moves(cur, {MoveKind::OC}))
        if (apply_move(cur, inst) == next) found = true;
      REQUIRE(found);
      cur = next;
    }
    REQUIRE(same_up_to_rotation(oc_canonicalize(code), cur));
  }
}

TEST_CASE("conn after tube is oc_canonicalize") {
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t k = 1; k <= 3; ++k)
      for_each_gauss_code(n, k, [&](const GaussCode& c) { REQUIRE(conn_map(tube_map(c)) == oc_canonicalize(c)); });
}

TEST_CASE("tube after conn is the identity") {
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t t = 0; t <= 3; ++t)
      for_each_solid_ribbon(n, t, [&](const SolidRibbonData& d) { REQUIRE(tube_map(conn_map(d)) == d); });
}

TEST_CASE("conn_map output ignores order within a chamber") {
  auto a = parse_ribbon_text("E1 C3 C2 E2 C1 ; E3");
  auto b = parse_ribbon_text("E1 C2 C3 E2 C1 ; E3");
  CHECK(conn_map(a) == conn_map(b));
}

TEST_CASE("tube_map respects rotation") {
  const auto code = G("O1+ U2- O3+ U1+ O2- U3+");
  for (std::size_t r = 0; r < 6; ++r) {
    GaussCode turned{{rotated(code.components[0], r)}};
    CHECK(same_up_to_rotation(conn_map(tube_map(turned)), conn_map(tube_map(code))));
  }
}

TEST_CASE("invalid inputs are rejected") {
  SolidRibbonData bad;
  bad.tori = {Torus{{1, 1}, {{}, {}}, {}}};
  bad.signs = {{1, Sign::Positive}};
  CHECK_THROWS_AS(conn_map(bad), ValidationError);
  GaussCode broken{{{Passage{1, Role::Over, Sign::Positive}}}};
  CHECK_THROWS_AS(tube_map(broken), ValidationError);
}
