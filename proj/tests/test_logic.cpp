#include <set>

#include "doctest.h"
#include "ulmforge/error.hpp"
#include "ulmforge/logic.hpp"
#include "ulmforge/ulm.hpp"

using namespace ulmforge;

namespace {

std::vector<ExplicitPGroup> corpus(std::uint32_t max_d) {
  std::vector<ExplicitPGroup> out;
  for (std::uint32_t p : {2u, 3u})
    for (std::uint32_t d = 0; d <= max_d; ++d) {
      out.emplace_back(p, std::vector<std::uint32_t>{}, d);
      for (std::uint32_t a = 1; a <= 3; ++a) {
        out.emplace_back(p, std::vector<std::uint32_t>{a}, d);
        for (std::uint32_t b = 1; b <= a; ++b) {
          out.emplace_back(p, std::vector<std::uint32_t>{a, b}, d);
          for (std::uint32_t c = 1; c <= b; ++c) out.emplace_back(p, std::vector<std::uint32_t>{a, b, c}, d);
        }
      }
    }
  return out;
}

std::set<std::uint64_t> psi_set(const ExplicitPGroup& g, std::uint64_t n) {
  std::set<std::uint64_t> out;
  const auto els = enumerate(g, 0);
  for (std::uint64_t i = 0; i < els.size(); ++i)
    if (eval_psi(g, Ordinal::finite(n), els[i])) out.insert(i);
  return out;
}

// Oracle: psi_n by recursion over whole-element p-preimages, no memo.
bool psi_whole(const ExplicitPGroup& g, std::uint64_t n, const GroupElement& x) {
  if (n == 0) return true;
  for (const auto& y : p_preimages(g, x))
    if (psi_whole(g, n - 1, y)) return true;
  return false;
}

}  // namespace

TEST_CASE("eval_psi examples") {
  const ExplicitPGroup z8(2, {3}), z4(2, {2});
  CHECK(psi_set(z8, 2) == std::set<std::uint64_t>{0, 4});
  CHECK(psi_set(z4, 1) == std::set<std::uint64_t>{0, 2});
  CHECK(psi_set(z4, 0).size() == 4);
  const ExplicitPGroup mixed(3, {2, 1}, 1);
  for (const auto& x : enumerate(mixed, 2)) CHECK(eval_psi(mixed, Ordinal{}, x));
  // Limit stages truncate at the length.
  for (const auto& x : enumerate(mixed, 2)) {
    CHECK(eval_psi(mixed, Ordinal::omega(), x) == eval_psi(mixed, Ordinal::finite(2), x));
    CHECK(eval_psi(mixed, Ordinal::parse("w*2+1"), x) == in_pn_subgroup(mixed, Ordinal::omega(), x));
  }
}

TEST_CASE("eval_phi_geq examples") {
  const ExplicitPGroup z2(2, {1}), z4(2, {2});
  CHECK(eval_phi_geq(z4, Ordinal::finite(3), 0));
  std::vector<GroupElement> w;
  CHECK(eval_phi_geq(z2, Ordinal{}, 1, &w));
  REQUIRE(w.size() == 1);
  CHECK(w[0] == GroupElement{{1}, {}});
  CHECK_FALSE(eval_phi_geq(z4, Ordinal{}, 1));
  CHECK(eval_phi_geq(z4, Ordinal::finite(1), 1));
}

TEST_CASE("eval_phi_exact examples") {
  CHECK(eval_phi_exact(ExplicitPGroup(2, {2, 1}), Ordinal{}, ExtendedCount{1}));
  for (std::uint32_t a : {0u, 1u, 5u}) CHECK(eval_phi_exact(ExplicitPGroup::trivial(2), Ordinal::finite(a), ExtendedCount{0}));
  CHECK(eval_phi_exact(ExplicitPGroup::trivial(2), Ordinal::omega(), ExtendedCount{0}));
  CHECK(eval_phi_exact(ExplicitPGroup(2, {2}), Ordinal::finite(1), ExtendedCount{1}));
  CHECK_FALSE(eval_phi_exact(ExplicitPGroup(2, {2}), Ordinal::finite(1), ExtendedCount::omega()));
  const auto r = evaluate(FormulaId::parse("phi[0,=w]"), ExplicitPGroup(3, {1, 1}));
  CHECK_FALSE(r.verdict);
  CHECK(r.bound == "conjunction truncated at n <= 8");
}

TEST_CASE("eval_divisible_sentence examples") {
  CHECK(eval_divisible_sentence(ExplicitPGroup(2, {1}, 1), ExtendedCount{1}, 3));
  CHECK(eval_divisible_sentence(ExplicitPGroup(3, {2}, 0), ExtendedCount{0}, 3));
  CHECK_FALSE(eval_divisible_sentence(ExplicitPGroup(2, {}, 2), ExtendedCount{1}, 3));
  CHECK_FALSE(eval_divisible_sentence(ExplicitPGroup(2, {}, 2), ExtendedCount::omega(), 2));
  CHECK_THROWS_AS(eval_divisible_sentence(ExplicitPGroup(2, {}, 1), ExtendedCount{1}, 0), DomainError);
  EvalReport r;
  CHECK(eval_divisible_sentence(ExplicitPGroup(2, {1}, 1), ExtendedCount{1}, 3, &r));
  CHECK(r.witness.size() == 1);
  CHECK(r.bound == "denominator exponent <= 3");
}

TEST_CASE("formula text") {
  for (const char* s : {"psi[w+1]", "phi[2,>=3]", "phi[2,=3]", "phi[w,=w]", "divrank[=2]", "divrank[=w]"})
    CHECK(FormulaId::parse(s).to_string() == s);
  CHECK_THROWS_AS(FormulaId::parse("phi[2,>=w]"), ParseError);
  CHECK_THROWS_AS(FormulaId::parse("chi[1]"), ParseError);
  CHECK_THROWS_AS(FormulaId::parse("psi[1"), ParseError);
}

TEST_CASE("property: psi agrees with the closed form of p^alpha G") {
  for (const auto& g : corpus(2)) {
    const std::uint32_t len = static_cast<std::uint32_t>(*length(g).as_finite());
    std::uint64_t bad = 0;
    const auto els = enumerate(g, 3);
    if (els.size() > 20000) continue;
    for (std::uint32_t a = 0; a <= len; ++a)
      for (const auto& x : els) bad += eval_psi(g, Ordinal::finite(a), x) != in_pn_subgroup(g, Ordinal::finite(a), x);
    CHECK_MESSAGE(bad == 0, g.to_string());
  }
}

TEST_CASE("property: summand-wise psi equals whole-element recursion") {
  for (const auto& g : corpus(1)) {
    if (g.p() == 3 && g.exps().size() + g.div_rank() > 3) continue;
    const std::uint32_t len = static_cast<std::uint32_t>(*length(g).as_finite());
    std::uint64_t bad = 0;
    GroupEvaluator ev(g);
    for (const auto& x : enumerate(g, 1))
      for (std::uint32_t a = 0; a <= len + 1; ++a) bad += ev.psi(Ordinal::finite(a), x) != psi_whole(g, a, x);
    CHECK_MESSAGE(bad == 0, g.to_string());
  }
}

TEST_CASE("property: phi sentences agree with Ulm invariants") {
  for (const auto& g : corpus(2)) {
    const std::uint32_t len = static_cast<std::uint32_t>(*length(g).as_finite());
    GroupEvaluator ev(g);
    for (std::uint32_t a = 0; a <= len; ++a) {
      bool prev = true;
      for (std::uint64_t n = 0; n <= 4; ++n) {
        const bool geq = ev.phi_geq(Ordinal::finite(a), n);
        CHECK(geq == (ulm_invariant(g, a) >= n));
        if (!prev) CHECK_FALSE(geq);
        prev = geq;
        CHECK_MESSAGE(ev.phi_exact(Ordinal::finite(a), ExtendedCount{n}) == (ulm_invariant(g, a) == n),
                      g.to_string());
      }
    }
  }
}

TEST_CASE("property: divisible sentences detect the divisible rank") {
  for (const auto& g : corpus(2)) {
    CHECK_MESSAGE(eval_divisible_sentence(g, ExtendedCount{g.div_rank()}, 3), g.to_string());
    for (std::uint32_t other = 0; other <= 3; ++other)
      if (other != g.div_rank()) CHECK_FALSE_MESSAGE(eval_divisible_sentence(g, ExtendedCount{other}, 3), g.to_string());
    CHECK_FALSE(eval_divisible_sentence(g, ExtendedCount::omega(), 3));
  }
}
