#include "doctest.h"
#include "ulmforge/corpus.hpp"
#include "ulmforge/error.hpp"
#include "ulmforge/reduction.hpp"

using namespace ulmforge;

namespace {

bool all_pass(const std::vector<LedgerLine>& lines, std::string* first_fail = nullptr) {
  for (const auto& l : lines)
    if (!l.pass) {
      if (first_fail) *first_fail = l.to_string();
      return false;
    }
  return true;
}

const LedgerLine* find(const std::vector<LedgerLine>& lines, const std::string& lemma) {
  for (const auto& l : lines)
    if (l.lemma == lemma) return &l;
  return nullptr;
}

}  // namespace

TEST_CASE("basis_mod_p examples") {
  const ExplicitPGroup g(2, {2, 1});
  const auto b = basis_mod_p(g);
  CHECK(b.representatives.size() == 2);
  CHECK(b.representatives[0] == canonical_generator(g, 0));
  CHECK(basis_mod_p(ExplicitPGroup::trivial(3)).representatives.empty());
  CHECK(basis_mod_p(ExplicitPGroup(3, {}, 2)).representatives.empty());

  const auto t = to_element_table(g);
  const auto tb = basis_mod_p(t);
  CHECK(tb.size() == 2);
  CHECK(tb.front() == 1);  // first element outside 2G in index order
  for (std::uint32_t a = 0; a < t.size(); ++a) CHECK(decompositions(t, tb, a).size() == 1);
}

TEST_CASE("gstar examples") {
  const auto z2 = ElementTableGroup::cyclic(2, 1);
  const auto s = gstar_table(z2);
  CHECK(s.size() == 4);
  CHECK(brute_force_group_iso(s, ElementTableGroup::cyclic(2, 2)).has_value());
  CHECK(gstar_table(ElementTableGroup::trivial(2)).size() == 1);

  const auto t = to_element_table(ExplicitPGroup(3, {1, 1}));
  const GStar star(t, basis_mod_p(t));
  CHECK(star.size() == 81);
  std::set<std::uint32_t> image;
  for (std::uint32_t a = 0; a < star.size(); ++a) image.insert(star.times_p(a));
  std::set<std::uint32_t> embedded;
  for (std::uint32_t h = 0; h < t.size(); ++h) embedded.insert(star.embed(h));
  CHECK(image == embedded);
  for (std::uint32_t i = 0; i < star.size(); ++i) CHECK(star.index(star.element(i)) == i);
}

TEST_CASE("hred examples") {
  CHECK(hred(ExplicitPGroup(2, {1}), 0).exps() == std::vector<std::uint32_t>{2});
  CHECK(brute_force_group_iso(hred_table(ElementTableGroup::cyclic(2, 1), 0), ElementTableGroup::cyclic(2, 2)).has_value());
  CHECK(hred(ExplicitPGroup::trivial(3), 2).exps() == std::vector<std::uint32_t>{1, 1});
  const auto h = hred(ExplicitPGroup(2, {2, 1}), 2);
  CHECK(h.exps() == std::vector<std::uint32_t>{3, 2, 1, 1});
  CHECK(profile_of(h).to_string() == UlmProfile::parse("p=2; u={0:2,1:1,2:1}; div=0; len=3").to_string());
  CHECK(hred(ExplicitPGroup(2, {1}, 2), 1).div_rank() == 2);
  const auto w = hred_profile(ExplicitPGroup(2, {1}), ExtendedCount::omega());
  CHECK(w.invariant(Ordinal{}) == ExtendedCount::omega());
  CHECK(w == shift_profile(profile_of(ExplicitPGroup(2, {1})), ExtendedCount::omega()));
}

TEST_CASE("verify_hred examples") {
  const auto a = verify_hred(ExplicitPGroup(2, {2}), 3);
  CHECK(all_pass(a));
  REQUIRE(find(a, "socle-quotient"));
  CHECK(find(a, "socle-quotient")->detail == "dim=3");
  CHECK(find(a, "socle-quotient")->to_string() == "PASS socle-quotient p=2; cyclic=[2]; divisible=0 m=3 dim=3");
  CHECK(all_pass(verify_hred(ExplicitPGroup(2, {1, 1}), 0)));
  const auto c = verify_hred(ExplicitPGroup(2, {2, 1}), 1);
  CHECK(all_pass(c));
  CHECK(find(c, "basis-choice-invariance"));
  CHECK(find(c, "closed-form-iso-presentation"));
  CHECK_THROWS_AS(verify_hred(ExplicitPGroup(2, {}, 1), 0), DomainError);
}

TEST_CASE("borel maps") {
  CHECK(borel_reduce(encode(ExplicitPGroup(2, {1}), 1)).exps() == std::vector<std::uint32_t>{2, 1});
  CHECK(borel_reduce(encode(ExplicitPGroup::trivial(2), 0)).exps().empty());
  CHECK(borel_forward(ExplicitPGroup(2, {1})) == encode(ExplicitPGroup(2, {1}), 0));
  CHECK(borel_forward(ExplicitPGroup::trivial(2)).size() == 1);
  CHECK_FALSE(structure_iso(borel_forward(ExplicitPGroup(2, {2})), borel_forward(ExplicitPGroup(2, {1, 1}))).has_value());
  CHECK_THROWS_AS(borel_reduce(mutation_fixtures().front().structure), DomainError);
}

TEST_CASE("property: hred lemmas hold on the finite corpus") {
  for (std::uint32_t p : {2u, 3u})
    for (const auto& g : finite_groups(p, p == 2 ? 32 : 27))
      for (std::uint32_t m = 0; m <= 3; ++m) {
        std::string fail;
        CHECK_MESSAGE(all_pass(verify_hred(g, m), &fail), fail);
      }
}

TEST_CASE("property: decompositions exist and are unique") {
  for (const auto& g : finite_groups(3, 81)) {
    const auto t = to_element_table(g);
    const auto b = basis_mod_p(t);
    CHECK(b.size() == g.exps().size());
    std::uint64_t bad = 0;
    for (std::uint32_t a = 0; a < t.size(); ++a) bad += decompositions(t, b, a).size() != 1;
    CHECK_MESSAGE(bad == 0, g.to_string());
  }
}
