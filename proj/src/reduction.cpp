#include "ulmforge/reduction.hpp"

#include <algorithm>
#include <functional>

#include "ulmforge/error.hpp"

namespace ulmforge {

BasisSet basis_mod_p(const ExplicitPGroup& g) {
  BasisSet out;
  for (std::size_t i = 0; i < g.exps().size(); ++i) out.representatives.push_back(canonical_generator(g, i));
  return out;
}

std::vector<std::uint32_t> basis_mod_p(const ElementTableGroup& t) {
  const std::uint32_t n = t.size();
  std::vector<char> span(n, 0);
  for (auto h : pn_subgroup_members(t, 1)) span[h] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < n; ++a) {
    if (span[a]) continue;
    out.push_back(a);
    std::vector<char> next(span);
    std::uint32_t c = a;
    for (std::uint32_t k = 1; k < t.p(); ++k, c = t.add(c, a))
      for (std::uint32_t s = 0; s < n; ++s)
        if (span[s]) next[t.add(s, c)] = 1;
    span = std::move(next);
  }
  return out;
}

std::vector<Decomposition> decompositions(const ElementTableGroup& t, const std::vector<std::uint32_t>& basis,
                                          std::uint32_t g) {
  std::vector<char> in_pg(t.size(), 0);
  for (auto h : pn_subgroup_members(t, 1)) in_pg[h] = 1;
  std::vector<Decomposition> out;
  std::vector<std::uint32_t> x(basis.size(), 0);
  for (;;) {
    std::uint32_t h = g;
    for (std::size_t i = 0; i < basis.size(); ++i) h = t.add(h, t.neg(t.scalar_mul(x[i], basis[i])));
    if (in_pg[h]) out.push_back({h, x});
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == t.p()) x[i++] = 0;
    if (i == x.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------- G*

GStar::GStar(const ElementTableGroup& t, std::vector<std::uint32_t> basis)
    : t_(t), basis_(std::move(basis)), p_(t.p()) {
  std::uint64_t s = t.size();
  for (std::size_t i = 0; i < basis_.size(); ++i) s *= p_;
  if (s > (1u << 24)) throw DomainError("G* too large to index");
  size_ = static_cast<std::uint32_t>(s);
}

StarElement GStar::element(std::uint32_t index) const {
  StarElement e;
  e.base = index % t_.size();
  index /= t_.size();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    e.coeffs.push_back(index % p_);
    index /= p_;
  }
  return e;
}

std::uint32_t GStar::index(const StarElement& e) const {
  std::uint32_t idx = 0;
  for (std::size_t i = basis_.size(); i-- > 0;) idx = idx * p_ + e.coeffs[i];
  return idx * t_.size() + e.base;
}

std::uint32_t GStar::add(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t n = t_.size();
  std::uint32_t base = t_.add(a % n, b % n);
  a /= n;
  b /= n;
  std::uint32_t idx = 0, scale = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::uint32_t s = a % p_ + b % p_;
    a /= p_;
    b /= p_;
    if (s >= p_) base = t_.add(base, basis_[i]);
    idx += (s % p_) * scale;
    scale *= p_;
  }
  return idx * n + base;
}

std::uint32_t GStar::times_p(std::uint32_t a) const {
  // p (g + sum x_b a_b) = pg + sum x_b b
  const std::uint32_t n = t_.size();
  std::uint32_t base = t_.times_p(a % n);
  a /= n;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    base = t_.add(base, t_.scalar_mul(a % p_, basis_[i]));
    a /= p_;
  }
  return base;
}

std::uint32_t GStar::generator(std::size_t i) const {
  std::uint32_t scale = 1;
  for (std::size_t j = 0; j < i; ++j) scale *= p_;
  return scale * t_.size();
}

ElementTableGroup GStar::table() const {
  if (size_ > (1u << 12)) throw DomainError("G* too large for a Cayley table");
  std::vector<std::uint32_t> tab(std::size_t{size_} * size_);
  for (std::uint32_t a = 0; a < size_; ++a)
    for (std::uint32_t b = 0; b < size_; ++b) tab[std::size_t{a} * size_ + b] = add(a, b);
  return ElementTableGroup(p_, size_, embed(t_.zero()), std::move(tab));
}

ElementTableGroup gstar_table(const ElementTableGroup& t) { return GStar(t, basis_mod_p(t)).table(); }

// ---------------------------------------------------------------- H(G, m)

ExplicitPGroup hred(const ExplicitPGroup& g, std::uint32_t m) {
  std::vector<std::uint32_t> exps;
  for (auto k : g.exps()) exps.push_back(k + 1);
  exps.insert(exps.end(), m, 1u);
  return ExplicitPGroup(g.p(), std::move(exps), g.div_rank());
}

UlmProfile hred_profile(const ExplicitPGroup& g, ExtendedCount m) {
  std::map<Ordinal, ExtendedCount> inv;
  if (m != ExtendedCount{0}) inv[Ordinal{}] = m;
  for (auto k : g.exps()) {
    auto& slot = inv[Ordinal::finite(k)];
    slot = ExtendedCount{slot.value() + 1};
  }
  const std::uint32_t len = g.exps().empty() ? (m == ExtendedCount{0} ? 0 : 1) : g.exps().front() + 1;
  return UlmProfile(g.p(), std::move(inv), ExtendedCount{g.div_rank()}, Ordinal::finite(len));
}

ElementTableGroup hred_table(const ElementTableGroup& t, std::uint32_t m) {
  auto out = gstar_table(t);
  for (std::uint32_t i = 0; i < m; ++i) out = table_direct_sum(out, ElementTableGroup::cyclic(t.p(), 1));
  return out;
}

std::string LedgerLine::to_string() const {
  return std::string(pass ? "PASS " : "FAIL ") + lemma + " " + subject + (detail.empty() ? "" : " " + detail);
}

namespace {

// Ulm invariants u_0, u_1, ... of a finite p-group known through its
// multiplication-by-p map on indices 0..n-1 with 0 the zero element.
std::vector<std::uint64_t> ulm_by_pmap(std::uint32_t n, std::uint32_t p,
                                       const std::function<std::uint32_t(std::uint32_t)>& times_p) {
  std::vector<std::uint32_t> pm(n);
  for (std::uint32_t a = 0; a < n; ++a) pm[a] = times_p(a);
  std::vector<char> cur(n, 1);
  std::vector<std::uint64_t> socle;  // |(p^k G)[p]|
  for (;;) {
    std::uint64_t s = 0, size = 0;
    std::vector<char> next(n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
      if (cur[a]) {
        ++size;
        s += pm[a] == pm[0];
        next[pm[a]] = 1;
      }
    socle.push_back(s);
    if (size == 1) break;
    cur = std::move(next);
  }
  std::vector<std::uint64_t> u;
  for (std::size_t k = 0; k + 1 < socle.size(); ++k) u.push_back(log_p_exact(socle[k], p) - log_p_exact(socle[k + 1], p));
  while (!u.empty() && u.back() == 0) u.pop_back();
  return u;
}

std::vector<std::uint64_t> ulm_list(const ExplicitPGroup& g) {
  std::vector<std::uint64_t> u;
  for (auto k : g.exps()) {
    if (u.size() < k) u.resize(k, 0);
    ++u[k - 1];
  }
  return u;
}

}  // namespace

std::vector<LedgerLine> verify_hred(const ExplicitPGroup& g, std::uint32_t m) {
  if (!g.is_finite()) throw DomainError("verify_hred needs a finite group");
  const std::string subject = g.to_string() + " m=" + std::to_string(m);
  std::vector<LedgerLine> out;
  auto line = [&](bool pass, const std::string& lemma, std::string detail = {}) {
    out.push_back({pass, lemma, subject, std::move(detail)});
  };
  const auto t = to_element_table(g);
  const std::uint32_t p = g.p(), n = t.size();
  const auto basis = basis_mod_p(t);
  const GStar star(t, basis);

  // Unique representation g = h + sum x_b b with h in pG.
  {
    bool ok = basis.size() == g.exps().size();
    for (std::uint32_t a = 0; a < n && ok; ++a) ok = decompositions(t, basis, a).size() == 1;
    line(ok, "unique-representation", "basis=" + std::to_string(basis.size()));
  }
  // Unique representation in G*: (h, x) evaluates to its own index.
  {
    bool ok = true;
    for (std::uint32_t i = 0; i < star.size() && ok; ++i) {
      const auto e = star.element(i);
      std::uint32_t v = star.embed(e.base);
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::uint32_t k = 0; k < e.coeffs[b]; ++k) v = star.add(v, star.generator(b));
      ok = v == i && star.index(e) == i;
    }
    for (std::size_t b = 0; b < basis.size() && ok; ++b) ok = star.times_p(star.generator(b)) == star.embed(basis[b]);
    line(ok, "gstar-unique-representation", "size=" + std::to_string(star.size()));
  }
  // pG* = G, elementwise.
  std::vector<char> image(star.size(), 0);
  for (std::uint32_t a = 0; a < star.size(); ++a) image[star.times_p(a)] = 1;
  {
    bool ok = true;
    for (std::uint32_t a = 0; a < star.size() && ok; ++a) ok = image[a] == (a < n);
    line(ok, "p-gstar-equals-g");
  }
  // p H(G, m) ~ G: pH = pG* (the Z/p summands die) and the embedding is additive.
  {
    bool ok = true;
    for (std::uint32_t a = 0; a < n && ok; ++a)
      for (std::uint32_t b = 0; b < n && ok; ++b) ok = star.add(star.embed(a), star.embed(b)) == star.embed(t.add(a, b));
    line(ok, "p-hred-iso-g");
  }
  // dim H[p] / (pH)[p] = m.
  {
    std::uint64_t socle = 0, psocle = 0;
    for (std::uint32_t a = 0; a < star.size(); ++a)
      if (star.times_p(a) == star.embed(t.zero())) {
        ++socle;
        psocle += image[a];
      }
    const std::uint64_t dim = log_p_exact(socle, p) + m - log_p_exact(psocle, p);
    line(dim == m, "socle-quotient", "dim=" + std::to_string(dim));
  }
  // Basis-choice invariance: reversed representatives, each shifted by an element of pG.
  {
    std::vector<std::uint32_t> alt;
    for (std::size_t i = basis.size(); i-- > 0;)
      alt.push_back(t.add(basis[i], t.times_p(basis[(i + 1) % basis.size()])));
    const GStar other(t, alt);
    bool ok = true;
    for (std::uint32_t a = 0; a < n && ok; ++a) ok = decompositions(t, alt, a).size() == 1;
    std::string how;
    if (star.size() <= 1024) {
      ok = ok && brute_force_group_iso(star.table(), other.table()).has_value();
      how = "oracle=brute-force";
    } else {
      ok = ok && ulm_by_pmap(star.size(), p, [&](std::uint32_t a) { return star.times_p(a); }) ==
                     ulm_by_pmap(other.size(), p, [&](std::uint32_t a) { return other.times_p(a); });
      how = "oracle=ulm-invariants";
    }
    line(ok, "basis-choice-invariance", how);
  }
  // Presentation-level H(G, m) against the closed form.
  const auto closed = hred(g, m);
  {
    const std::uint32_t sn = star.size();
    std::uint32_t pm = 1;
    for (std::uint32_t i = 0; i < m; ++i) pm *= p;
    auto times_p = [&](std::uint32_t a) { return star.times_p(a % sn); };
    const bool ok = ulm_by_pmap(sn * pm, p, times_p) == ulm_list(closed);
    line(ok, "closed-form-invariants");
  }
  if (n <= 16 && m <= 2)
    line(brute_force_group_iso(to_element_table(closed), hred_table(t, m)).has_value(), "closed-form-iso-presentation");
  line(profile_of(closed) == shift_profile(profile_of(g), ExtendedCount{m}), "ulm-shift");
  return out;
}

ExplicitPGroup borel_reduce(const LpStructure& m) {
  const auto d = decode(m);
  return hred(classify(d.table), d.size_m);
}

LpStructure borel_forward(const ExplicitPGroup& g) { return encode(g, 0); }

}  // namespace ulmforge
