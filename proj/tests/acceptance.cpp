// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

#include "support.hpp"
#include "weld/correspondence.hpp"
#include "weld/enumerate.hpp"
#include "weld/invariants.hpp"
#include "weld/moves.hpp"
#include "weld/search.hpp"

using namespace weld;
using weld::test::G;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure notes; later ones are only counted.
struct Checker {
  Outcome out;
  std::size_t failures = 0;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    out.pass = false;
    if (++failures <= 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) {
    if (failures > 3) out.detail += "; +" + std::to_string(failures - 3) + " more";
    out.detail = out.pass ? summary : summary + " | " + out.detail;
    return out;
  }
};

// Codes with up to `crossings` crossings and 1..`components` components.
void for_each_small_code(std::size_t crossings, std::size_t components, const std::function<void(const GaussCode&)>& f) {
  for (std::size_t n = 0; n <= crossings; ++n)
    for (std::size_t k = 1; k <= components; ++k) for_each_gauss_code(n, k, f);
}

Outcome criterion1() {
  Checker c;
  std::size_t ribbons = 0, codes = 0;
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t t = 0; t <= 3; ++t)
      for_each_solid_ribbon(n, t, [&](const SolidRibbonData& d) {
        ++ribbons;
        c.require(tube_map(conn_map(d)) == d, "tube(conn(d)) != d for " + emit_ribbon_text(d));
      });
  for_each_small_code(4, 3, [&](const GaussCode& code) {
    ++codes;
    c.require(conn_map(tube_map(code)) == oc_canonicalize(code), "conn(tube(c)) != oc(c) for " + emit_gauss_text(code));
  });
  return c.done(std::to_string(ribbons) + " ribbons, " + std::to_string(codes) + " codes");
}

Outcome criterion2() {
  Checker c;
  const auto code = conn_map(parse_ribbon_text("E3 C1 C2 ; E1 C3 ; E2"));
  const std::vector<std::vector<CrossingId>> unders{{3}, {1}, {2}};
  const std::vector<std::multiset<CrossingId>> overs{{1, 2}, {3}, {}};
  c.require(code.components.size() == 3, "expected 3 components");
  for (std::size_t i = 0; i < code.components.size() && i < 3; ++i) {
    std::vector<CrossingId> u;
    std::multiset<CrossingId> o;
    for (const auto& p : code.components[i]) {
      c.require(p.sign == Sign::Positive, "negative sign");
      if (p.role == Role::Under)
        u.push_back(p.crossing);
      else
        o.insert(p.crossing);
    }
    c.require(u == unders[i] && o == overs[i], "component " + std::to_string(i) + " differs");
  }
  c.require(code == G("U3+ O1+ O2+ ; U1+ O3+ ; U2+"), "structure differs");
  return c.done(emit_gauss_text(code));
}

Outcome criterion3() {
  Checker c;
  std::unordered_map<CanonicalKey, InvariantFingerprint, CanonicalKeyHash> memo;
  auto print = [&](const GaussCode& code) {
    auto form = canonical_form(code);
    auto it = memo.find(form.key);
    if (it == memo.end()) it = memo.emplace(std::move(form.key), fingerprint(form.representative)).first;
    return it->second;
  };
  std::vector<std::size_t> per_pattern(move_table().size(), 0);
  std::size_t codes = 0, instances = 0;
  for_each_small_code(3, 3, [&](const GaussCode& code) {
    ++codes;
    const auto before = print(code);
    for (const auto& inst : applicable_moves(code, all_move_kinds())) {
      ++instances;
      ++per_pattern[inst.pattern];
      const auto after = print(apply_move(code, inst));
      if (after != before) {
        const auto diff = first_difference(before, after);
        c.require(false, inst.to_string() + " on " + emit_gauss_text(code) + " changes " + diff->name);
      }
    }
  });
  std::size_t unused = 0;
  for (auto n : per_pattern) unused += n == 0;
  c.require(unused == 0, std::to_string(unused) + " patterns never applied");
  return c.done(std::to_string(codes) + " codes, " + std::to_string(instances) + " instances, " +
                std::to_string(move_table().size()) + " patterns");
}

Outcome criterion4() {
  Checker c;
  const auto table = generate_move_table();
  c.require(move_table_json(table).dump(2) + "\n" == weld::test::read_file("move_table.json"),
            "regenerated table differs from move_table.json");
  std::map<MoveKind, std::size_t> sizes;
  for (const auto& p : table) {
    ++sizes[p.kind];
    if (p.kind == MoveKind::R2Insert || p.kind == MoveKind::R2Delete) {
      std::map<std::size_t, Sign> sign;
      for (const auto& s : p.strands)
        for (const auto& t : s.before.empty() ? s.after : s.before) sign[t.slot] = t.sign;
      c.require(sign.size() == 2 && sign.at(0) != sign.at(1), p.to_string() + " has equal signs");
    }
    if (p.kind == MoveKind::R3) {
      for (const auto& s : p.strands) {
        std::multiset<std::pair<std::size_t, Sign>> before, after;
        for (const auto& t : s.before) before.insert({t.slot, t.sign});
        for (const auto& t : s.after) after.insert({t.slot, t.sign});
        c.require(before == after, p.to_string() + " changes a sign");
      }
    }
  }
  c.require(sizes[MoveKind::R1Insert] == 4 && sizes[MoveKind::R1Delete] == 4, "R1 family is not 4 variants");

  // R3 applied twice at the same site returns the code unchanged.
  std::size_t sites = 0;
  for_each_small_code(3, 2, [&](const GaussCode& code) {
    for (const auto& inst : applicable_moves(code, {MoveKind::R3})) {
      ++sites;
      const auto next = apply_move(code, inst);
      const auto back = inverse_instance(code, inst);
      c.require(back.kind() == MoveKind::R3, "inverse of R3 is not R3");
      std::set<std::pair<std::size_t, std::size_t>> a, b;
      for (const auto& s : inst.sites) a.insert({s.component, s.position});
      for (const auto& s : back.sites) b.insert({s.component, s.position});
      c.require(a == b, "inverse R3 at a different site on " + emit_gauss_text(code));
      c.require(apply_move(next, back) == code, "R3 twice is not the identity on " + emit_gauss_text(code));
    }
  });
  return c.done("R1 " + std::to_string(sizes[MoveKind::R1Insert]) + "+" + std::to_string(sizes[MoveKind::R1Delete]) +
                ", R2 " + std::to_string(sizes[MoveKind::R2Insert]) + "+" + std::to_string(sizes[MoveKind::R2Delete]) +
                ", R3 " + std::to_string(sizes[MoveKind::R3]) + ", OC " + std::to_string(sizes[MoveKind::OC]) + ", " +
                std::to_string(sites) + " R3 sites");
}

Outcome criterion5() {
  // expected values come from the independent brute-force / Fox-calculus oracle
  Checker c;
  const auto& named = weld::test::oracle().at("named");
  const auto trefoil = G("O1+ U2+ O3+ U1+ O2+ U3+");
  const auto unknot = G(";");
  const auto f3t = fox_colorings(trefoil, 3), f3u = fox_colorings(unknot, 3);
  c.require(f3t == 9 && f3t == named.at("trefoil").at("fox").at("3"), "fox3(trefoil) = " + std::to_string(f3t));
  c.require(f3u == 3 && f3u == named.at("unknot").at("fox").at("3"), "fox3(unknot) = " + std::to_string(f3u));
  const auto alex = alexander(trefoil);
  const LaurentPolynomial expected(0, named.at("trefoil").at("alexander").get<std::vector<std::int64_t>>());
  c.require(alex == expected && alex == LaurentPolynomial(0, {1, -1, 1}), "alexander(trefoil) = " + alex.to_string());
  const auto virt = fingerprint(G("O1+ O2+ U1+ U2+"));
  const auto unk = fingerprint(unknot);
  c.require(virt != unk, "O1+ O2+ U1+ U2+ has the unknot's fingerprint " + virt.to_string());
  const auto& ov = named.at("virtual_trefoil");
  const auto& ou = named.at("unknot");
  c.require(ov.at("fox") != ou.at("fox") || ov.at("alexander") != ou.at("alexander"),
            "oracle agrees: fox " + ov.at("fox").dump() + ", alexander " + ov.at("alexander").dump());
  return c.done("fox3 9 vs 3, alexander " + alex.to_string() + ", O1+ O2+ U1+ U2+ " + virt.to_string());
}

Outcome criterion6() {
  Checker c;
  auto run = [](std::size_t n, std::size_t k, std::size_t states) {
    CensusOptions o;
    o.max_crossings = n;
    o.components = k;
    o.budget = default_census_budget(n);
    o.budget.max_states = states;
    o.workers = 4;
    return census(o);
  };
  const auto one = run(1, 1, 20000);
  const auto two_comp = run(0, 2, 20000);
  const auto small = run(2, 1, 20000);
  const auto doubled = run(2, 1, 40000);
  c.require(one.classes.size() == 1, "census(1,1) has " + std::to_string(one.classes.size()) + " classes");
  c.require(two_comp.classes.size() == 1, "census(0,2) has " + std::to_string(two_comp.classes.size()) + " classes");
  c.require(small.classes.size() >= 2, "census(2,1) has " + std::to_string(small.classes.size()) + " class");
  bool stable = small.classes.size() == doubled.classes.size();
  for (std::size_t i = 0; stable && i < small.classes.size(); ++i)
    stable = small.classes[i].key == doubled.classes[i].key && small.classes[i].size == doubled.classes[i].size;
  c.require(stable, "census(2,1) changes when max_states is doubled");
  return c.done("classes: (1,1) " + std::to_string(one.classes.size()) + ", (0,2) " +
                std::to_string(two_comp.classes.size()) + ", (2,1) " + std::to_string(small.classes.size()) +
                ", doubled " + std::to_string(doubled.classes.size()));
}

Outcome criterion7() {
  Checker c;
  std::size_t total = 0;
  auto check = [&](const GaussCode& code) {
    ++total;
    const auto text = emit_gauss_text(code);
    c.require(parse_gauss_text(text) == code, "parse(emit(c)) != c for " + text);
    c.require(emit_gauss_text(parse_gauss_text(text)) == text, "emit is not stable for " + text);
    c.require(read_out(realize_planar(code)) == code, "read-out differs for " + text);
  };
  std::mt19937 rng(20261015);
  for (int i = 0; i < 1000; ++i) check(weld::test::random_code(rng, rng() % 7, 1 + rng() % 3));
  for_each_small_code(3, 3, check);
  return c.done(std::to_string(total) + " codes");
}

Outcome criterion8() {
  Checker c;
  const auto trefoil = G("O1+ U2+ O3+ U1+ O2+ U3+");
  const auto inserts = applicable_moves(trefoil, {MoveKind::R2Insert});
  const auto r2_trefoil = apply_move(trefoil, inserts.at(inserts.size() / 2));
  struct Fixture {
    std::string name;
    GaussCode a, b;
    std::size_t max_path;
  };
  const std::vector<Fixture> fixtures{
      {"kink-unknot", G("O1+ U1+"), G(";"), 1},
      {"r2trefoil-trefoil", r2_trefoil, trefoil, 2},
      {"kinkpair-unknot", G("O1+ U2+ U1+ O2+"), G(";"), 4},
      {"virtual-unknot", G("O1+ O2+ U1+ U2+"), G(";"), 4},
      {"clasp-unlink", G("O1+ O2- ; U1+ U2-"), G(";;"), 4},
  };
  std::string lengths;
  for (const auto& f : fixtures) {
    const auto v = equivalent_within(f.a, f.b, {f.a.crossing_count() + 2 > 6 ? f.a.crossing_count() + 2 : 6, 20000});
    lengths += (lengths.empty() ? "" : ", ") + f.name + " " + std::to_string(v.path.size());
    c.require(v.status == VerdictStatus::Equivalent, f.name + " is " + to_string(v.status));
    if (v.status != VerdictStatus::Equivalent) continue;
    c.require(v.path.size() <= f.max_path, f.name + " path has " + std::to_string(v.path.size()) + " moves");
    if (auto why = replay_failure(f.a, f.b, v.path)) c.require(false, f.name + " replay: " + *why);
  }
  // every equivalent verdict met in a small census replays too
  std::size_t replayed = 0;
  std::vector<GaussCode> reps;
  for_each_gauss_code(2, 1, [&](const GaussCode& code) { reps.push_back(code); });
  for (std::size_t i = 0; i < reps.size(); i += 3) {
    const auto v = equivalent_within(reps[i], G(";"), {4, 20000});
    if (v.status != VerdictStatus::Equivalent) continue;
    ++replayed;
    if (auto why = replay_failure(reps[i], G(";"), v.path))
      c.require(false, emit_gauss_text(reps[i]) + " replay: " + *why);
  }
  return c.done(lengths + "; " + std::to_string(replayed) + " census paths replayed");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 bijection round trip", criterion1},  {"2 ribbon example", criterion2},
      {"3 move soundness", criterion3},        {"4 move table", criterion4},
      {"5 separation", criterion5},            {"6 census sanity", criterion6},
      {"7 serialization", criterion7},         {"8 equivalence witnesses", criterion8},
  };
  // runtime limits in seconds, 0 = none
  const std::map<std::string, double> limits{{"1 bijection round trip", 60.0}, {"6 census sanity", 120.0}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (auto it = limits.find(name); it != limits.end() && secs >= it->second) {
      o.pass = false;
      std::ostringstream note;
      note << " | over the " << it->second << " s limit";
      o.detail += note.str();
    }
    failed += !o.pass;
    std::printf("%s criterion %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
