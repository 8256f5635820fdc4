#include "ulmforge/corpus.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "text_util.hpp"
#include "ulmforge/error.hpp"
#include "ulmforge/logic.hpp"
#include "ulmforge/ulm.hpp"

namespace ulmforge {

std::string CorpusSpec::to_string() const {
  std::string ps;
  for (auto p : primes) ps += (ps.empty() ? "" : ",") + std::to_string(p);
  return "primes=" + ps + "; max_summands=" + std::to_string(max_summands) +
         "; max_exponent=" + std::to_string(max_exponent) + "; max_div_rank=" + std::to_string(max_div_rank) +
         "; max_m=" + std::to_string(max_m) + "; max_size=" + std::to_string(max_size) +
         "; seed=" + std::to_string(seed) + "; samples=" + std::to_string(samples) +
         "; denom_bound=" + std::to_string(denom_bound) + "; inject_mutations=" + (inject_mutations ? "1" : "0");
}

CorpusSpec CorpusSpec::parse(std::string_view text) {
  CorpusSpec s;
  for (auto field : detail::split(detail::trim(text), ';')) {
    field = detail::trim(field);
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("corpus spec field without '=': " + std::string(field));
    const auto key = detail::trim(field.substr(0, eq));
    const auto val = detail::trim(field.substr(eq + 1));
    auto u32 = [&] {
      const auto v = detail::parse_u64(val, key);
      if (v > 0xffffffffu) throw ParseError(std::string(key) + " out of range");
      return static_cast<std::uint32_t>(v);
    };
    if (key == "primes") {
      s.primes.clear();
      if (!val.empty())
        for (auto p : detail::split(val, ',')) {
          const auto v = detail::parse_u64(p, "prime");
          if (!is_prime(v) || v > 0xffffffffu) throw ParseError("not a prime: " + std::string(p));
          s.primes.push_back(static_cast<std::uint32_t>(v));
        }
    } else if (key == "max_summands") {
      s.max_summands = u32();
    } else if (key == "max_exponent") {
      s.max_exponent = u32();
    } else if (key == "max_div_rank") {
      s.max_div_rank = u32();
    } else if (key == "max_m") {
      s.max_m = u32();
    } else if (key == "max_size") {
      s.max_size = detail::parse_u64(val, key);
    } else if (key == "seed") {
      s.seed = detail::parse_u64(val, key);
    } else if (key == "samples") {
      s.samples = detail::parse_u64(val, key);
    } else if (key == "denom_bound") {
      s.denom_bound = u32();
    } else if (key == "inject_mutations") {
      s.inject_mutations = u32() != 0;
    } else {
      throw ParseError("unknown corpus spec field '" + std::string(key) + "'");
    }
  }
  return s;
}

namespace {

// Partitions of `total` into parts <= max_part, parts descending.
void partitions(std::uint32_t total, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t k = std::min(total, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(total - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ExplicitPGroup> finite_groups(std::uint32_t p, std::uint64_t max_size) {
  std::vector<ExplicitPGroup> out;
  std::uint64_t size = 1;
  for (std::uint32_t total = 0; size <= max_size; ++total, size *= p) {
    std::vector<std::vector<std::uint32_t>> parts;
    std::vector<std::uint32_t> cur;
    partitions(total, total, cur, parts);
    std::sort(parts.begin(), parts.end());
    for (auto& e : parts) out.emplace_back(p, e, 0);
  }
  return out;
}

std::vector<ExplicitPGroup> corpus_groups(const CorpusSpec& spec) {
  std::vector<ExplicitPGroup> out;
  for (auto p : spec.primes) {
    std::vector<ExplicitPGroup> all;
    for (const auto& g : finite_groups(p, spec.max_size)) {
      if (g.exps().size() > spec.max_summands) continue;
      if (!g.exps().empty() && g.exps().front() > spec.max_exponent) continue;
      for (std::uint32_t d = 0; d <= spec.max_div_rank; ++d) all.emplace_back(p, g.exps(), d);
    }
    if (all.size() > spec.samples) {
      std::vector<std::size_t> idx(all.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::mt19937_64 rng(spec.seed ^ (0x9e3779b97f4a7c15ULL * p));
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(spec.samples);
      std::sort(idx.begin(), idx.end());
      std::vector<ExplicitPGroup> kept;
      for (auto i : idx) kept.push_back(all[i]);
      all = std::move(kept);
    }
    out.insert(out.end(), all.begin(), all.end());
  }
  return out;
}

std::vector<std::uint32_t> random_permutation(std::uint32_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// ---------------------------------------------------------------- fixtures

namespace {

LpStructure from_operation(std::uint32_t p, std::uint32_t size, const std::vector<std::uint32_t>& label,
                           const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& op) {
  LpStructure s(p, size, 0);
  for (std::uint32_t x = 0; x < size; ++x) s.add_r(label[x], x);
  for (std::uint32_t x = 0; x < size; ++x)
    for (std::uint32_t y = 0; y < size; ++y) {
      const auto z = op(x, y);
      s.add_p({label[x], label[y], label[z]}, {x, y, z});
    }
  return s;
}

// Steiner loop of the affine plane over F_3: identity 0, points 1..9,
// x*x = 0 and x*y the third point on the line through x and y.
LpStructure steiner_loop() {
  auto pt = [](std::uint32_t i) { return std::pair<std::uint32_t, std::uint32_t>{(i - 1) % 3, (i - 1) / 3}; };
  std::vector<std::uint32_t> label(10, 1);
  label[0] = 0;
  return from_operation(2, 10, label, [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
    if (x == 0) return y;
    if (y == 0) return x;
    if (x == y) return 0;
    const auto [a, b] = pt(x);
    const auto [c, d] = pt(y);
    return 1 + (6 - a - c) % 3 + 3 * ((6 - b - d) % 3);
  });
}

// Quaternion group Q8: index 4s + u is (-1)^s times unit u in (1, i, j, k).
LpStructure quaternion() {
  // unit products: sign and unit of e_u e_v
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const std::uint32_t unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::uint32_t> label{0, 2, 2, 2, 1, 2, 2, 2};
  return from_operation(2, 8, label, [](std::uint32_t x, std::uint32_t y) {
    const std::uint32_t s = (x / 4 + y / 4 + static_cast<std::uint32_t>(sign[x % 4][y % 4])) % 2;
    return 4 * s + unit[x % 4][y % 4];
  });
}

}  // namespace

std::vector<MutationFixture> mutation_fixtures() {
  std::vector<MutationFixture> out;
  {
    // A tuple on the relation-free point.
    auto s = encode(ExplicitPGroup(2, {1}), 1);
    s.add_p({0, 0, 0}, {2, 2, 2});
    out.push_back({"a1-stray-tuple", 1, {1}, s});
  }
  {
    // Z/2 with the generator labelled 2: g + g lands in R0, not R1.
    LpStructure s(2, 2, 0);
    s.add_r(0, 0);
    s.add_r(2, 1);
    s.add_p({0, 0, 0}, {0, 0, 0});
    s.add_p({0, 2, 2}, {0, 1, 1});
    s.add_p({2, 0, 2}, {1, 0, 1});
    s.add_p({2, 2, 0}, {1, 1, 0});
    out.push_back({"a2-relabelled", 2, {2}, s});
  }
  {
    // Z/2+Z/2 with a second value for g + h.
    auto s = encode(ExplicitPGroup(2, {1, 1}), 0);
    s.add_p({1, 1, 1}, {1, 2, 1});
    s.add_p({1, 1, 1}, {2, 1, 1});
    out.push_back({"a3-two-sums", 3, {3}, s});
  }
  {
    // Z/2+Z/2 without g + h.
    auto s = encode(ExplicitPGroup(2, {1, 1}), 0);
    s.remove_p({1, 1, 1}, {1, 2, 3});
    s.remove_p({1, 1, 1}, {2, 1, 3});
    out.push_back({"a4-missing-sum", 4, {4, 7}, s});
  }
  {
    // Two points, every sum equal to 0.
    out.push_back({"a5-constant-sum", 5, {5},
                   from_operation(2, 2, {0, 1}, [](std::uint32_t, std::uint32_t) { return 0u; })});
  }
  {
    // 1 carries labels 1 and 2; under label 2 nothing sums to 0.
    LpStructure s(2, 2, 0);
    s.add_r(0, 0);
    s.add_r(1, 0);
    s.add_r(1, 1);
    s.add_r(2, 1);
    const std::vector<std::pair<PKey, Triple>> tuples{
        {{0, 0, 0}, {0, 0, 0}}, {{0, 1, 1}, {0, 0, 0}}, {{0, 1, 1}, {0, 1, 1}}, {{0, 2, 2}, {0, 1, 1}},
        {{1, 0, 1}, {0, 0, 0}}, {{1, 0, 1}, {1, 0, 1}}, {{1, 1, 0}, {0, 0, 0}}, {{1, 1, 0}, {1, 1, 0}},
        {{1, 1, 1}, {0, 0, 0}}, {{1, 1, 1}, {0, 1, 0}}, {{1, 1, 1}, {1, 0, 0}}, {{1, 1, 1}, {1, 1, 0}},
        {{1, 2, 0}, {1, 1, 0}}, {{1, 2, 1}, {0, 1, 0}}, {{1, 2, 1}, {1, 1, 0}}, {{2, 0, 2}, {1, 0, 1}},
        {{2, 1, 0}, {1, 1, 0}}, {{2, 1, 1}, {1, 0, 0}}, {{2, 1, 1}, {1, 1, 0}}, {{2, 2, 1}, {1, 1, 1}}};
    for (const auto& [k, t] : tuples) s.add_p(k, t);
    out.push_back({"a6-missing-inverse", 6, {6}, s});
  }
  out.push_back({"a7-steiner-loop", 7, {7}, steiner_loop()});
  out.push_back({"a8-quaternion", 8, {8}, quaternion()});
  return out;
}

// ---------------------------------------------------------------- selftest

std::vector<LedgerLine> run_selftest(const CorpusSpec& spec) {
  std::vector<LedgerLine> out;
  auto add = [&](bool pass, std::string lemma, std::string subject, std::string detail = {}) {
    out.push_back({pass, std::move(lemma), std::move(subject), std::move(detail)});
  };
  const auto groups = corpus_groups(spec);
  std::uint64_t item = 0;
  for (const auto& g : groups) {
    const std::string gs = g.to_string();
    const std::uint32_t len = static_cast<std::uint32_t>(*length(g).as_finite());

    // Ulm invariants: closed form against socle counting.
    if (g.is_finite()) {
      bool ok = true;
      for (std::uint32_t n = 0; n <= len && ok; ++n) ok = ulm_invariant(g, n) == ulm_invariant_oracle(g, n);
      add(ok, "ulm-closed-form", gs);
    }
    // Formula semantics.
    {
      GroupEvaluator ev(g);
      const auto els = enumerate(g, spec.denom_bound);
      bool ok = true;
      for (std::uint32_t a = 0; a <= len && ok; ++a)
        for (const auto& x : els)
          if (ev.psi(Ordinal::finite(a), x) != in_pn_subgroup(g, Ordinal::finite(a), x)) {
            ok = false;
            break;
          }
      add(ok, "psi-semantics", gs, "elements=" + std::to_string(els.size()));
      ok = true;
      for (std::uint32_t a = 0; a <= len && ok; ++a)
        for (std::uint64_t n = 0; n <= 4 && ok; ++n)
          ok = ev.phi_exact(Ordinal::finite(a), ExtendedCount{n}) == (ulm_invariant(g, a) == n);
      add(ok, "phi-semantics", gs);
      ok = eval_divisible_sentence(g, ExtendedCount{g.div_rank()}, spec.denom_bound) &&
           !eval_divisible_sentence(g, ExtendedCount{g.div_rank() + 1}, spec.denom_bound);
      add(ok, "divisible-rank-sentence", gs);
    }
    for (std::uint32_t m = 0; m <= spec.max_m; ++m) {
      const std::string sub = gs + " m=" + std::to_string(m);
      add(hred_profile(g, ExtendedCount{m}) == shift_profile(profile_of(g), ExtendedCount{m}), "ulm-shift", sub);
      if (!g.is_finite()) continue;
      const auto enc = encode(g, m);
      const auto rep = check_axioms(enc);
      add(rep.is_model(), "model-lemma", sub);
      add(check_axioms(enc, 3).pass == rep.pass, "vacuity-bound", sub);
      const auto d = decode(enc);
      add(profile_of(classify(d.table)) == profile_of(g) && d.size_m == m, "round-trip-decode", sub);
      const auto moved = permute(enc, random_permutation(enc.size(), spec.seed + item++));
      const auto back = decode(moved);
      add(structure_iso(encode(classify(back.table), back.size_m), moved).has_value(), "round-trip-encode", sub);
      for (auto& l : verify_hred(g, m)) out.push_back(std::move(l));
    }
  }
  if (spec.inject_mutations) {
    for (const auto& f : mutation_fixtures()) {
      const auto rep = check_axioms(f.structure);
      std::string failing;
      for (int a : rep.failed()) failing += (failing.empty() ? "A" : ",A") + std::to_string(a);
      std::string witness;
      for (const auto& fl : rep.failures)
        if (fl.axiom == f.target) {
          witness = " witness=(";
          for (std::size_t i = 0; i < fl.witness.size(); ++i) witness += (i ? "," : "") + std::to_string(fl.witness[i]);
          witness += ")";
          break;
        }
      add(rep.is_model(), "model-lemma", "fixture:" + f.name, "failing=" + (failing.empty() ? "none" : failing) + witness);
    }
  }
  return out;
}

}  // namespace ulmforge
