#include <random>

#include "doctest.h"
#include "ulmforge/corpus.hpp"
#include "ulmforge/error.hpp"
#include "ulmforge/tp.hpp"
#include "ulmforge/ulm.hpp"

using namespace ulmforge;

namespace {

bool mentions(const AxiomReport& r, int axiom, std::vector<std::uint32_t> witness) {
  for (const auto& f : r.failures)
    if (f.axiom == axiom && f.witness == witness) return true;
  return false;
}

// Relabel a model by a seeded permutation.
LpStructure shuffled(const LpStructure& m, std::uint64_t seed) { return permute(m, random_permutation(m.size(), seed)); }

}  // namespace

TEST_CASE("encode examples") {
  const auto t = encode(ExplicitPGroup::trivial(2), 0);
  CHECK(t.size() == 1);
  CHECK(t.r().at(0) == std::set<std::uint32_t>{0});
  CHECK(t.pr().size() == 1);
  CHECK(t.has_p({0, 0, 0}, {0, 0, 0}));

  const auto s = encode(ExplicitPGroup(2, {1}), 1);
  CHECK(s.size() == 3);
  CHECK(s.r().size() == 2);
  CHECK(s.r().at(1) == std::set<std::uint32_t>{1});
  CHECK(s.has_p({1, 0, 1}, {1, 0, 1}));
  CHECK(s.has_p({0, 1, 1}, {0, 1, 1}));
  CHECK(s.has_p({1, 1, 0}, {1, 1, 0}));
  CHECK(s.has_p({0, 0, 0}, {0, 0, 0}));
  CHECK(s.pr().size() == 4);
  for (const auto& [k, ts] : s.pr())
    for (const auto& tr : ts)
      for (auto v : tr) CHECK(v != 2);
  CHECK_THROWS_AS(encode(ExplicitPGroup(2, {}, 1), 0), DomainError);
}

TEST_CASE("check_axioms examples") {
  const auto ok = check_axioms(encode(ExplicitPGroup(2, {2, 1}), 2));
  CHECK(ok.is_model());
  CHECK(ok.bound == 3);

  auto dropped = encode(ExplicitPGroup(2, {1}), 1);
  dropped.remove_p({1, 1, 0}, {1, 1, 0});
  const auto r1 = check_axioms(dropped);
  CHECK_FALSE(r1.passes(4));
  CHECK(mentions(r1, 4, {1, 1}));

  auto labelled = encode(ExplicitPGroup(2, {1}), 1);
  labelled.add_r(1, 2);
  const auto r2 = check_axioms(labelled);
  CHECK_FALSE(r2.passes(2));
  CHECK(mentions(r2, 2, {2}));
  CHECK(r2.to_string().find("A2: FAIL") != std::string::npos);
}

TEST_CASE("mutation fixtures fail at their schema") {
  const auto fixtures = mutation_fixtures();
  CHECK(fixtures.size() == 8);
  for (const auto& f : fixtures) {
    const auto r = check_axioms(f.structure);
    CHECK_MESSAGE(r.failed() == f.expected, f.name);
    bool witnessed = false;
    for (const auto& fl : r.failures) witnessed |= fl.axiom == f.target && !fl.witness.empty();
    CHECK_MESSAGE(witnessed, f.name);
    CHECK_THROWS_AS(decode(f.structure), DomainError);
    CHECK(check_axioms(f.structure, 3).pass == r.pass);
  }
}

TEST_CASE("decode and classify examples") {
  const ExplicitPGroup g(3, {2, 1});
  const auto d = decode(encode(g, 2));
  CHECK(d.size_m == 2);
  CHECK(brute_force_group_iso(d.table, to_element_table(g)).has_value());
  const auto t = decode(encode(ExplicitPGroup::trivial(2), 5));
  CHECK(t.table.size() == 1);
  CHECK(t.size_m == 5);

  CHECK(classify(ElementTableGroup::cyclic(2, 2)).exps() == std::vector<std::uint32_t>{2});
  CHECK(classify(ElementTableGroup::trivial(3)).exps().empty());
  CHECK(classify(to_element_table(ExplicitPGroup(2, {1, 1}))).exps() == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("structure_iso examples") {
  const auto m = encode(ExplicitPGroup(2, {2, 1}), 1);
  const auto id = structure_iso(m, m);
  REQUIRE(id.has_value());
  CHECK(is_structure_isomorphism(m, m, *id));
  CHECK_FALSE(structure_iso(encode(ExplicitPGroup(2, {1}), 0), encode(ExplicitPGroup::trivial(2), 1)).has_value());
  const auto moved = shuffled(m, 7);
  const auto f = structure_iso(m, moved);
  REQUIRE(f.has_value());
  CHECK(is_structure_isomorphism(m, moved, *f));
  CHECK_FALSE(structure_iso(encode(ExplicitPGroup(2, {2}), 0), encode(ExplicitPGroup(2, {1, 1}), 0)).has_value());
  CHECK_THROWS_AS(structure_iso(m, encode(ExplicitPGroup(3, {1}), 0)), DomainError);
}

TEST_CASE("structure text") {
  const auto s = encode(ExplicitPGroup(2, {1}), 1);
  const std::string text = s.to_string();
  CHECK(text.rfind("p=2; N=3; zero=0\n", 0) == 0);
  CHECK(text.find("R1 = {1}\n") != std::string::npos);
  CHECK(text.find("P[1,1->0] = {(1,1,0)}\n") != std::string::npos);
  CHECK(LpStructure::parse(text) == s);
  CHECK(LpStructure::parse(text).to_string() == text);
  for (const auto& f : mutation_fixtures()) CHECK(LpStructure::parse(f.structure.to_string()) == f.structure);
  CHECK(LpStructure::parse("# comment\np=2; N=2; zero=0\nR0 = { 0 }\nR3 = {}\n").r().size() == 1);
  CHECK_THROWS_AS(LpStructure::parse("p=4; N=2; zero=0"), ParseError);
  CHECK_THROWS_AS(LpStructure::parse("p=2; N=2; zero=0\nR1 = {2}"), ParseError);
  CHECK_THROWS_AS(LpStructure::parse("p=2; N=2; zero=0\nP[0,0->1] = {(0,0,0)}"), ParseError);
  CHECK_THROWS_AS(LpStructure::parse("p=2; N=2; zero=0\nR1 = {1}\nR1 = {0}"), ParseError);
  CHECK_THROWS_AS(LpStructure::parse("p=2; N=2; zero=0\nQ1 = {1}"), ParseError);
  CHECK_THROWS_AS(LpStructure::parse("p=2; N=2"), ParseError);
  CHECK_THROWS_AS(LpStructure::parse(""), ParseError);
}

TEST_CASE("property: encoded groups are models and round trip") {
  std::uint64_t seed = 1;
  for (std::uint32_t p : {2u, 3u})
    for (const auto& g : finite_groups(p, 32))
      for (std::uint32_t m = 0; m <= 2; ++m) {
        const auto enc = encode(g, m);
        const auto rep = check_axioms(enc);
        CHECK_MESSAGE(rep.is_model(), g.to_string());
        CHECK(check_axioms(enc, 3).pass == rep.pass);
        const auto d = decode(enc);
        CHECK(profile_of(classify(d.table)) == profile_of(g));
        CHECK(d.size_m == m);
        const auto moved = shuffled(enc, seed++);
        CHECK(check_axioms(moved).is_model());
        const auto back = decode(moved);
        CHECK_MESSAGE(structure_iso(encode(classify(back.table), back.size_m), moved).has_value(), g.to_string());
      }
}

TEST_CASE("property: single tuple deletions are detected") {
  // Removing any P tuple from a model breaks (A4) for that pair.
  std::mt19937_64 rng(3);
  for (const auto& g : finite_groups(2, 8)) {
    const auto enc = encode(g, 1);
    for (const auto& [k, ts] : enc.pr())
      for (const auto& t : ts) {
        auto cut = enc;
        cut.remove_p(k, t);
        const auto r = check_axioms(cut);
        CHECK_FALSE(r.passes(4));
        CHECK(mentions(r, 4, {t[0], t[1]}));
      }
  }
}
