#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ulmforge/error.hpp"
#include "ulmforge/ulm.hpp"

using namespace ulmforge;

namespace {

// Every additive bijection, found by trying all permutations. Only for tiny
// groups; independent of the generator-based search.
std::uint64_t count_isos_by_permutation(const ElementTableGroup& a, const ElementTableGroup& b) {
  if (a.size() != b.size()) return 0;
  Bijection f(a.size());
  std::iota(f.begin(), f.end(), 0u);
  std::uint64_t n = 0;
  do n += is_group_isomorphism(a, b, f);
  while (std::next_permutation(f.begin(), f.end()));
  return n;
}

// All partitions with parts <= max_part and sum <= max_sum, descending.
void partitions(std::uint32_t max_sum, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  out.push_back(cur);
  for (std::uint32_t k = std::min(max_sum, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(max_sum - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<ExplicitPGroup> groups_up_to(std::uint32_t p, std::uint32_t log_size) {
  std::vector<std::vector<std::uint32_t>> parts;
  std::vector<std::uint32_t> cur;
  partitions(log_size, log_size, cur, parts);
  std::vector<ExplicitPGroup> out;
  for (auto& e : parts) out.emplace_back(p, e);
  return out;
}

// A random relabeling of t with zero moved as well.
ElementTableGroup relabel(const ElementTableGroup& t, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(t.size());
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
  std::vector<std::uint32_t> table(std::size_t{t.size()} * t.size());
  for (std::uint32_t x = 0; x < t.size(); ++x)
    for (std::uint32_t y = 0; y < t.size(); ++y) table[std::size_t{perm[x]} * t.size() + perm[y]] = perm[t.add(x, y)];
  return ElementTableGroup(t.p(), t.size(), perm[t.zero()], std::move(table));
}

}  // namespace

TEST_CASE("ulm_invariant examples") {
  for (std::uint32_t p : {2u, 3u}) {
    const ExplicitPGroup g(p, {2, 1});
    CHECK(ulm_invariant(g, 0) == 1);
    CHECK(ulm_invariant(g, 1) == 1);
    CHECK(ulm_invariant(g, 2) == 0);
    for (std::uint64_t n = 0; n < 3; ++n) CHECK(ulm_invariant_oracle(g, n) == ulm_invariant(g, n));
    for (std::uint64_t n = 0; n < 4; ++n) {
      CHECK(ulm_invariant(ExplicitPGroup::trivial(p), n) == 0);
      CHECK(ulm_invariant(ExplicitPGroup(p, {}, 2), n) == 0);
    }
  }
  // Z(p^inf)^d: the socle of p^n G has dimension d at every level.
  const ExplicitPGroup d2(2, {}, 2);
  for (std::uint32_t n = 0; n < 3; ++n) {
    std::uint64_t socle = 0;
    for (const auto& x : enumerate(d2, 3))
      if (in_pn_subgroup(d2, Ordinal::finite(n), x) && elem_order(d2, x) <= 1) ++socle;
    CHECK(socle == 4);
  }
  CHECK(ulm_invariant(ExplicitPGroup(2, {3}), Ordinal::omega()) == ExtendedCount{0});
}

TEST_CASE("ulm_invariant_oracle examples") {
  const auto z4 = ElementTableGroup::cyclic(2, 2);
  CHECK(ulm_invariant_oracle(z4, 1) == 1);
  CHECK(ulm_invariant_oracle(z4, 0) == 0);
  for (std::uint64_t n = 0; n < 4; ++n) CHECK(ulm_invariant_oracle(ElementTableGroup::trivial(2), n) == 0);
  CHECK_THROWS_AS(ulm_invariant_oracle(ExplicitPGroup(2, {}, 1), 0), DomainError);
}

TEST_CASE("length examples") {
  for (std::uint32_t p : {2u, 3u}) {
    const ExplicitPGroup g(p, {3, 1});
    CHECK(length(g) == Ordinal::finite(3));
    CHECK(table_length(to_element_table(g)) == 3);
    CHECK(length(ExplicitPGroup::trivial(p)).is_zero());
    CHECK(length(ExplicitPGroup(p, {}, 1)).is_zero());
  }
}

TEST_CASE("iso_by_ulm examples") {
  CHECK(iso_by_ulm(ExplicitPGroup(2, {1, 2}), ExplicitPGroup(2, {2, 1})));
  CHECK_FALSE(iso_by_ulm(ExplicitPGroup(2, {2}), ExplicitPGroup(2, {1, 1})));
  CHECK_FALSE(brute_force_group_iso(to_element_table(ExplicitPGroup(2, {2})),
                                    to_element_table(ExplicitPGroup(2, {1, 1})))
                  .has_value());
  CHECK(iso_by_ulm(ExplicitPGroup(3, {}, 1), ExplicitPGroup(3, {}, 1)));
  CHECK_THROWS_AS(iso_by_ulm(ExplicitPGroup(2, {1}), ExplicitPGroup(3, {1})), DomainError);
}

TEST_CASE("brute_force_group_iso examples") {
  const auto z4 = ElementTableGroup::cyclic(2, 2);
  const auto f = brute_force_group_iso(z4, z4);
  REQUIRE(f.has_value());
  CHECK(is_group_isomorphism(z4, z4, *f));
  const auto klein = to_element_table(ExplicitPGroup(2, {1, 1}));
  CHECK(brute_force_group_iso(klein, klein).has_value());
  CHECK(count_group_isos(klein, klein) == 6);
  CHECK(count_isos_by_permutation(klein, klein) == 6);
  CHECK(count_group_isos(z4, klein) == 0);
}

TEST_CASE("shift_profile examples") {
  const UlmProfile u(2, {{Ordinal{}, ExtendedCount{2}}, {Ordinal::finite(1), ExtendedCount{1}}}, ExtendedCount{0},
                     Ordinal::finite(2));
  const auto s = shift_profile(u, ExtendedCount{3});
  CHECK(s == UlmProfile(2,
                        {{Ordinal{}, ExtendedCount{3}},
                         {Ordinal::finite(1), ExtendedCount{2}},
                         {Ordinal::finite(2), ExtendedCount{1}}},
                        ExtendedCount{0}, Ordinal::finite(3)));
  CHECK(s == profile_of(ExplicitPGroup(2, {3, 2, 2, 1, 1, 1})));
  CHECK(u == profile_of(ExplicitPGroup(2, {2, 1, 1})));

  const UlmProfile trivial(2, {}, ExtendedCount{0}, Ordinal{});
  CHECK(shift_profile(trivial, ExtendedCount{0}) == trivial);
  CHECK(shift_profile(trivial, ExtendedCount{0}).declared_length().is_zero());

  const UlmProfile transfinite(2, {{Ordinal::omega(), ExtendedCount{1}}}, ExtendedCount{0},
                               ord_add(Ordinal::omega(), Ordinal::finite(1)));
  const auto t = shift_profile(transfinite, ExtendedCount{1});
  CHECK(t.invariant(Ordinal{}) == ExtendedCount{1});
  CHECK(t.invariant(Ordinal::omega()) == ExtendedCount{1});
  CHECK(t.invariants().size() == 2);
  CHECK(shift_profile(u, ExtendedCount::omega()).invariant(Ordinal{}).is_omega());
}

TEST_CASE("profile text") {
  for (const char* s : {"p=2; u={0:2,1:1,w:1}; div=0; len=w+2", "p=3; u={}; div=w; len=0", "p=5; u={0:w}; div=1; len=1"})
    CHECK(UlmProfile::parse(s).to_string() == s);
  CHECK(profile_of(ExplicitPGroup(2, {2, 1})).to_string() == "p=2; u={0:1,1:1}; div=0; len=2");
  CHECK_THROWS_AS(UlmProfile::parse("p=2; u={3:1}; div=0; len=2"), ParseError);
  CHECK_THROWS_AS(UlmProfile::parse("p=2; u={0:1}"), ParseError);
  CHECK(UlmProfile::parse("p=2; u={0:0,1:1}; div=0; len=2") == UlmProfile::parse("p=2; u={1:1}; div=0; len=2"));
}

TEST_CASE("property: closed form equals socle counting, |G| <= p^6") {
  for (std::uint32_t p : {2u, 3u})
    for (const auto& g : groups_up_to(p, 6)) {
      const auto t = to_element_table(g);
      const auto len = static_cast<std::uint32_t>(*length(g).as_finite());
      CHECK(table_length(t) == len);
      for (std::uint32_t n = 0; n <= len; ++n) CHECK_MESSAGE(ulm_invariant(g, n) == ulm_invariant_oracle(t, n), g.to_string());
    }
}

TEST_CASE("property: Ulm's theorem at desk scale, p = 2") {
  const auto gs = groups_up_to(2, 4);
  std::mt19937_64 rng(3);
  for (const auto& a : gs)
    for (const auto& b : gs) {
      const auto ta = to_element_table(a);
      const auto tb = relabel(to_element_table(b), rng);
      const auto f = brute_force_group_iso(ta, tb);
      CHECK_MESSAGE(f.has_value() == iso_by_ulm(a, b), std::string(a.to_string() + " vs " + b.to_string()));
      if (f) CHECK(is_group_isomorphism(ta, tb, *f));
      CHECK(brute_force_group_iso(ta, tb, {.prune_by_statistics = false}).has_value() == f.has_value());
    }
}

TEST_CASE("property: iso counts agree with permutation search") {
  std::mt19937_64 rng(5);
  for (const auto& a : groups_up_to(2, 3)) {
    const auto ta = to_element_table(a);
    const auto tb = relabel(ta, rng);
    CHECK(count_group_isos(ta, tb) == count_isos_by_permutation(ta, tb));
  }
  const auto z9 = to_element_table(ExplicitPGroup(3, {2}));
  CHECK(count_group_isos(z9, z9) == 6);
  CHECK(count_group_isos(to_element_table(ExplicitPGroup(2, {2, 1})), to_element_table(ExplicitPGroup(2, {2, 1}))) == 8);
}

TEST_CASE("property: profile of a direct sum is the sum of profiles") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const std::uint32_t p = rng() % 2 ? 2 : 3;
    auto pick = [&] {
      std::vector<std::uint32_t> e(rng() % 4);
      for (auto& k : e) k = 1 + static_cast<std::uint32_t>(rng() % 4);
      return ExplicitPGroup(p, e, static_cast<std::uint32_t>(rng() % 3));
    };
    const auto a = pick(), b = pick();
    CHECK(profile_of(direct_sum(a, b)) == profile_sum(profile_of(a), profile_of(b)));
    CHECK(iso_by_ulm(a, b) == (a == b));
  }
}
