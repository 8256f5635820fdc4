#include "ulmforge/pgroup.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "text_util.hpp"
#include "ulmforge/element_table.hpp"
#include "ulmforge/error.hpp"

namespace ulmforge {

namespace {

// Residues and numerators stay below 2^62 so that sums never overflow.
constexpr std::uint64_t kValueLimit = std::uint64_t{1} << 62;

using u128 = unsigned __int128;

std::uint32_t p_valuation(std::uint64_t v, std::uint32_t p, std::uint32_t cap) {
  if (v == 0) return cap;
  std::uint32_t n = 0;
  while (v % p == 0) {
    v /= p;
    ++n;
  }
  return std::min(n, cap);
}

PruferFraction reduce(std::uint64_t num, std::uint32_t exp, std::uint32_t p) {
  if (num == 0) return {0, 0};
  while (exp > 0 && num % p == 0) {
    num /= p;
    --exp;
  }
  return {num, exp};
}

void check_shape(const ExplicitPGroup& g, const GroupElement& x) {
  if (x.cyclic.size() != g.exps().size() || x.prufer.size() != g.div_rank())
    throw DomainError("element has " + std::to_string(x.cyclic.size()) + "+" + std::to_string(x.prufer.size()) +
                      " coordinates, group " + g.to_string() + " needs " + std::to_string(g.exps().size()) + "+" +
                      std::to_string(g.div_rank()));
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t GroupElementHash::operator()(const GroupElement& x) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) { h = (h ^ v) * 0x100000001b3ULL; };
  for (auto c : x.cyclic) mix(c);
  for (const auto& f : x.prufer) {
    mix(f.numerator);
    mix(f.exponent);
  }
  return h;
}

ExplicitPGroup::ExplicitPGroup(std::uint32_t p, std::vector<std::uint32_t> exps, std::uint32_t div_rank)
    : p_(p), exps_(std::move(exps)), div_rank_(div_rank) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  std::sort(exps_.begin(), exps_.end(), std::greater<>());
  max_exp_ = 0;
  for (u128 v = p; v < kValueLimit; v *= p) ++max_exp_;
  for (auto k : exps_) {
    if (k == 0) throw DomainError("cyclic summand exponents must be >= 1");
    if (k > max_exp_) throw DomainError("p^" + std::to_string(k) + " exceeds the supported range");
    moduli_.push_back(power(k));
  }
}

std::uint64_t ExplicitPGroup::power(std::uint32_t e) const {
  if (e > max_exp_) throw std::overflow_error("p^" + std::to_string(e) + " exceeds the supported range");
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < e; ++i) v *= p_;
  return v;
}

std::string ExplicitPGroup::to_string() const {
  std::string s = "p=" + std::to_string(p_) + "; cyclic=[";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exps_[i]);
  }
  s += "]; divisible=" + std::to_string(div_rank_);
  return s;
}

ExplicitPGroup ExplicitPGroup::parse(std::string_view text) {
  auto fields = detail::split(detail::trim(text), ';');
  if (fields.size() != 3) throw ParseError("group needs 'p=..; cyclic=[..]; divisible=..', got '" + std::string(text) + "'");
  std::uint64_t p = detail::parse_u64(detail::expect_key(fields[0], "p"), "p");
  std::string_view list = detail::unwrap(detail::expect_key(fields[1], "cyclic"), '[', ']', "cyclic exponents");
  std::vector<std::uint32_t> exps;
  if (!detail::trim(list).empty()) {
    for (auto item : detail::split(list, ',')) {
      std::uint64_t k = detail::parse_u64(item, "cyclic exponent");
      if (k == 0 || k > 64) throw ParseError("cyclic exponent out of range: " + std::to_string(k));
      exps.push_back(static_cast<std::uint32_t>(k));
    }
  }
  std::uint64_t d = detail::parse_u64(detail::expect_key(fields[2], "divisible"), "divisible rank");
  if (p > std::numeric_limits<std::uint32_t>::max() || d > 1024) throw ParseError("group parameters out of range");
  try {
    return ExplicitPGroup(static_cast<std::uint32_t>(p), std::move(exps), static_cast<std::uint32_t>(d));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

void check_element(const ExplicitPGroup& g, const GroupElement& x) {
  check_shape(g, x);
  for (std::size_t i = 0; i < x.cyclic.size(); ++i)
    if (x.cyclic[i] >= g.modulus(i)) throw DomainError("cyclic coordinate out of range");
  for (const auto& f : x.prufer) {
    if (f.exponent > g.max_prufer_exponent()) throw DomainError("Pruefer denominator out of range");
    if (f.numerator >= g.power(f.exponent)) throw DomainError("Pruefer numerator out of range");
    if (f.numerator == 0 ? f.exponent != 0 : f.numerator % g.p() == 0)
      throw DomainError("Pruefer fraction not in lowest terms");
  }
}

GroupElement elem_zero(const ExplicitPGroup& g) {
  GroupElement z;
  z.cyclic.assign(g.exps().size(), 0);
  z.prufer.assign(g.div_rank(), PruferFraction{});
  return z;
}

GroupElement elem_add(const ExplicitPGroup& g, const GroupElement& x, const GroupElement& y) {
  check_shape(g, x);
  check_shape(g, y);
  GroupElement r;
  r.cyclic.resize(x.cyclic.size());
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) r.cyclic[i] = (x.cyclic[i] + y.cyclic[i]) % g.modulus(i);
  r.prufer.resize(x.prufer.size());
  for (std::size_t j = 0; j < x.prufer.size(); ++j) {
    const auto& a = x.prufer[j];
    const auto& b = y.prufer[j];
    const std::uint32_t e = std::max(a.exponent, b.exponent);
    const std::uint64_t mod = g.power(e);
    const u128 sum = u128{a.numerator} * g.power(e - a.exponent) + u128{b.numerator} * g.power(e - b.exponent);
    r.prufer[j] = reduce(static_cast<std::uint64_t>(sum % mod), e, g.p());
  }
  return r;
}

GroupElement elem_neg(const ExplicitPGroup& g, const GroupElement& x) {
  check_shape(g, x);
  GroupElement r = x;
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) r.cyclic[i] = (g.modulus(i) - x.cyclic[i]) % g.modulus(i);
  for (auto& f : r.prufer)
    if (f.numerator != 0) f.numerator = g.power(f.exponent) - f.numerator;
  return r;
}

GroupElement scalar_mul(const ExplicitPGroup& g, std::uint64_t k, const GroupElement& x) {
  check_shape(g, x);
  GroupElement r = x;
  for (std::size_t i = 0; i < x.cyclic.size(); ++i)
    r.cyclic[i] = static_cast<std::uint64_t>(u128{x.cyclic[i]} * k % g.modulus(i));
  for (auto& f : r.prufer) {
    const std::uint64_t mod = g.power(f.exponent);
    f = reduce(static_cast<std::uint64_t>(u128{f.numerator} * k % mod), f.exponent, g.p());
  }
  return r;
}

std::uint32_t elem_order(const ExplicitPGroup& g, const GroupElement& x) {
  check_shape(g, x);
  std::uint32_t n = 0;
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
    const std::uint32_t k = g.exps()[i];
    n = std::max(n, k - p_valuation(x.cyclic[i], g.p(), k));
  }
  return std::max(n, denominator_exponent(x));
}

std::uint32_t denominator_exponent(const GroupElement& x) {
  std::uint32_t e = 0;
  for (const auto& f : x.prufer) e = std::max(e, f.exponent);
  return e;
}

bool in_pn_subgroup(const ExplicitPGroup& g, const Ordinal& alpha, const GroupElement& x) {
  check_shape(g, x);
  const auto n = alpha.as_finite();
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
    const std::uint32_t k = g.exps()[i];
    if (!n || *n >= k) {
      if (x.cyclic[i] != 0) return false;
    } else if (x.cyclic[i] % g.power(static_cast<std::uint32_t>(*n)) != 0) {
      return false;
    }
  }
  return true;
}

std::vector<GroupElement> p_preimages(const ExplicitPGroup& g, const GroupElement& x) {
  check_shape(g, x);
  const std::uint32_t p = g.p();
  std::vector<std::vector<std::uint64_t>> cyc(x.cyclic.size());
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
    if (x.cyclic[i] % p != 0) return {};
    const std::uint64_t step = g.modulus(i) / p;
    for (std::uint32_t t = 0; t < p; ++t) cyc[i].push_back(x.cyclic[i] / p + t * step);
  }
  std::vector<std::vector<PruferFraction>> pru(x.prufer.size());
  for (std::size_t j = 0; j < x.prufer.size(); ++j) {
    const auto& f = x.prufer[j];
    const std::uint32_t e = f.exponent + 1;
    const std::uint64_t unit = g.power(f.exponent);
    g.power(e);  // range check
    for (std::uint32_t t = 0; t < p; ++t) pru[j].push_back(reduce(f.numerator + t * unit, e, p));
  }
  std::vector<GroupElement> out;
  GroupElement cur = x;
  const std::size_t coords = cyc.size() + pru.size();
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == coords) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t t = 0; t < p; ++t) {
      if (c < cyc.size())
        cur.cyclic[c] = cyc[c][t];
      else
        cur.prufer[c - cyc.size()] = pru[c - cyc.size()][t];
      rec(c + 1);
    }
  };
  rec(0);
  return out;
}

ExtendedCount group_size(const ExplicitPGroup& g) {
  if (!g.is_finite()) return ExtendedCount::omega();
  std::uint32_t total = 0;
  for (auto k : g.exps()) total += k;
  return ExtendedCount{g.power(total)};
}

namespace {

std::vector<PruferFraction> prufer_values(const ExplicitPGroup& g, std::uint32_t bound) {
  std::vector<PruferFraction> vals{PruferFraction{}};
  for (std::uint32_t e = 1; e <= bound; ++e) {
    const std::uint64_t mod = g.power(e);
    for (std::uint64_t c = 1; c < mod; ++c)
      if (c % g.p() != 0) vals.push_back({c, e});
  }
  return vals;
}

std::uint64_t prufer_rank(const ExplicitPGroup& g, const PruferFraction& f) {
  if (f.exponent == 0) return 0;
  return g.power(f.exponent - 1) + (f.numerator - 1) - (f.numerator - 1) / g.p();
}

}  // namespace

std::vector<GroupElement> enumerate(const ExplicitPGroup& g, std::uint32_t denom_bound) {
  const auto pvals = prufer_values(g, g.div_rank() ? denom_bound : 0);
  u128 total = 1;
  for (std::size_t i = 0; i < g.exps().size(); ++i) total *= g.modulus(i);
  for (std::uint32_t j = 0; j < g.div_rank(); ++j) total *= pvals.size();
  if (total > (u128{1} << 26)) throw DomainError("enumeration of " + g.to_string() + " is too large");

  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::uint64_t> digit(g.exps().size() + g.div_rank(), 0);
  GroupElement cur = elem_zero(g);
  for (std::uint64_t n = 0; n < total; ++n) {
    out.push_back(cur);
    for (std::size_t c = 0; c < digit.size(); ++c) {
      const bool is_cyc = c < g.exps().size();
      const std::uint64_t radix = is_cyc ? g.modulus(c) : pvals.size();
      digit[c] = (digit[c] + 1) % radix;
      if (is_cyc)
        cur.cyclic[c] = digit[c];
      else
        cur.prufer[c - g.exps().size()] = pvals[digit[c]];
      if (digit[c] != 0) break;
    }
  }
  return out;
}

std::uint64_t element_index(const ExplicitPGroup& g, const GroupElement& x, std::uint32_t denom_bound) {
  check_element(g, x);
  const std::uint64_t pcount = g.div_rank() ? (denom_bound == 0 ? 1 : g.power(denom_bound)) : 1;
  std::uint64_t index = 0;
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
    index += x.cyclic[i] * scale;
    scale *= g.modulus(i);
  }
  for (const auto& f : x.prufer) {
    if (f.exponent > denom_bound) throw DomainError("element exceeds the denominator bound");
    index += prufer_rank(g, f) * scale;
    scale *= pcount;
  }
  return index;
}

ElementTableGroup to_element_table(const ExplicitPGroup& g) {
  if (!g.is_finite()) throw DomainError("to_element_table needs a finite group, got " + g.to_string());
  const std::uint64_t n64 = group_size(g).value();
  if (n64 > (1u << 15)) throw DomainError("group too large for a Cayley table: " + g.to_string());
  const auto n = static_cast<std::uint32_t>(n64);
  // Digitwise addition on the mixed-radix index.
  std::vector<std::uint32_t> table(std::size_t{n} * n);
  const auto& exps = g.exps();
  std::vector<std::uint64_t> da(exps.size()), db(exps.size());
  for (std::uint32_t a = 0; a < n; ++a) {
    std::uint64_t t = a;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      da[i] = t % g.modulus(i);
      t /= g.modulus(i);
    }
    for (std::uint32_t b = 0; b < n; ++b) {
      std::uint64_t u = b, idx = 0, scale = 1;
      for (std::size_t i = 0; i < exps.size(); ++i) {
        db[i] = u % g.modulus(i);
        u /= g.modulus(i);
        idx += ((da[i] + db[i]) % g.modulus(i)) * scale;
        scale *= g.modulus(i);
      }
      table[std::size_t{a} * n + b] = static_cast<std::uint32_t>(idx);
    }
  }
  return ElementTableGroup(g.p(), n, 0, std::move(table));
}

ExplicitPGroup direct_sum(const ExplicitPGroup& a, const ExplicitPGroup& b) {
  if (a.p() != b.p()) throw DomainError("direct_sum of groups with different primes");
  std::vector<std::uint32_t> exps = a.exps();
  exps.insert(exps.end(), b.exps().begin(), b.exps().end());
  return ExplicitPGroup(a.p(), std::move(exps), a.div_rank() + b.div_rank());
}

GroupElement concat_elements(const ExplicitPGroup& a, const GroupElement& x, const ExplicitPGroup& b,
                             const GroupElement& y) {
  check_shape(a, x);
  check_shape(b, y);
  if (a.p() != b.p()) throw DomainError("concat_elements with different primes");
  GroupElement r;
  std::size_t i = 0, j = 0;
  while (i < a.exps().size() || j < b.exps().size()) {
    if (j == b.exps().size() || (i < a.exps().size() && a.exps()[i] >= b.exps()[j]))
      r.cyclic.push_back(x.cyclic[i++]);
    else
      r.cyclic.push_back(y.cyclic[j++]);
  }
  r.prufer = x.prufer;
  r.prufer.insert(r.prufer.end(), y.prufer.begin(), y.prufer.end());
  return r;
}

GroupElement canonical_generator(const ExplicitPGroup& g, std::size_t cyclic_index) {
  if (cyclic_index >= g.exps().size()) throw DomainError("no such cyclic summand");
  GroupElement e = elem_zero(g);
  e.cyclic[cyclic_index] = 1;
  return e;
}

std::string element_to_string(const ExplicitPGroup& g, const GroupElement& x) {
  check_element(g, x);
  std::string s = "cyclic=(";
  for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x.cyclic[i]);
  }
  s += "); prufer=(";
  for (std::size_t j = 0; j < x.prufer.size(); ++j) {
    if (j) s += ',';
    const auto& f = x.prufer[j];
    s += f.numerator == 0 ? "0" : std::to_string(f.numerator) + "/" + std::to_string(g.power(f.exponent));
  }
  s += ")";
  return s;
}

GroupElement parse_element(const ExplicitPGroup& g, std::string_view text) {
  auto fields = detail::split(detail::trim(text), ';');
  if (fields.size() != 2) throw ParseError("element needs 'cyclic=(..); prufer=(..)'");
  GroupElement x;
  std::string_view cyc = detail::unwrap(detail::expect_key(fields[0], "cyclic"), '(', ')', "cyclic residues");
  if (!detail::trim(cyc).empty())
    for (auto item : detail::split(cyc, ',')) x.cyclic.push_back(detail::parse_u64(item, "cyclic residue"));
  std::string_view pru = detail::unwrap(detail::expect_key(fields[1], "prufer"), '(', ')', "Pruefer fractions");
  if (!detail::trim(pru).empty()) {
    for (auto item : detail::split(pru, ',')) {
      item = detail::trim(item);
      auto slash = item.find('/');
      if (slash == std::string_view::npos) {
        if (detail::parse_u64(item, "Pruefer fraction") != 0) throw ParseError("fraction needs a denominator");
        x.prufer.push_back({});
        continue;
      }
      const std::uint64_t num = detail::parse_u64(item.substr(0, slash), "numerator");
      std::uint64_t den = detail::parse_u64(item.substr(slash + 1), "denominator");
      std::uint32_t e = 0;
      while (den > 1 && den % g.p() == 0) {
        den /= g.p();
        ++e;
      }
      if (den != 1) throw ParseError("denominator must be a power of p");
      if (e > g.max_prufer_exponent()) throw ParseError("denominator out of range");
      if (num >= g.power(e)) throw ParseError("Pruefer fraction must lie in [0,1)");
      x.prufer.push_back(reduce(num, e, g.p()));
    }
  }
  try {
    check_element(g, x);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return x;
}

}  // namespace ulmforge
