#include "ulmforge/ordinal.hpp"

#include <algorithm>
#include <limits>

#include "text_util.hpp"
#include "ulmforge/error.hpp"

namespace ulmforge {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw std::overflow_error("ordinal coefficient overflow");
  return a + b;
}

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  if (n == 0) return Ordinal{};
  return Ordinal{{Term{0, n}}};
}

Ordinal Ordinal::omega() { return Ordinal{{Term{1, 1}}}; }

Ordinal Ordinal::monomial(std::uint32_t exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return Ordinal{};
  return Ordinal{{Term{exponent, coefficient}}};
}

Ordinal Ordinal::normalize(std::vector<Term> terms) {
  // Summing term by term from the left is exactly ordinal addition of the
  // monomials, which yields CNF.
  Ordinal acc;
  for (const Term& t : terms) acc = ord_add(acc, monomial(t.exponent, t.coefficient));
  return acc;
}

std::optional<std::uint64_t> Ordinal::as_finite() const {
  if (terms_.empty()) return 0;
  if (terms_.front().exponent != 0) return std::nullopt;
  return terms_.front().coefficient;
}

Ordinal Ordinal::succ() const { return ord_add(*this, finite(1)); }

Ordinal Ordinal::pred() const {
  if (!is_successor()) throw DomainError("pred of 0 or of a limit ordinal " + to_string());
  std::vector<Term> t = terms_;
  if (--t.back().coefficient == 0) t.pop_back();
  return Ordinal{std::move(t)};
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i].exponent != y[i].exponent) return x[i].exponent <=> y[i].exponent;
    if (x[i].coefficient != y[i].coefficient) return x[i].coefficient <=> y[i].coefficient;
  }
  return x.size() <=> y.size();
}

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint32_t lead = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) {
      out.push_back(t);
    } else {
      if (t.exponent == lead) {
        // a's w^lead part merges with b's leading term; smaller ones are absorbed.
        Ordinal::Term merged = b.terms().front();
        merged.coefficient = checked_add(merged.coefficient, t.coefficient);
        out.push_back(merged);
        out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
        return Ordinal{std::move(out)};
      }
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal{std::move(out)};
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i > 0) s += '+';
    if (t.exponent == 0) {
      s += std::to_string(t.coefficient);
      continue;
    }
    s += 'w';
    if (t.exponent > 1) s += '^' + std::to_string(t.exponent);
    if (t.coefficient != 1) s += '*' + std::to_string(t.coefficient);
  }
  return s;
}

Ordinal Ordinal::parse(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw ParseError("empty ordinal");
  if (text == "0") return Ordinal{};
  std::vector<Term> terms;
  for (std::string_view part : detail::split(text, '+')) {
    part = detail::trim(part);
    if (part.empty()) throw ParseError("empty ordinal term in '" + std::string(text) + "'");
    Term t{0, 1};
    if (part.front() == 'w') {
      std::string_view rest = part.substr(1);
      t.exponent = 1;
      if (!rest.empty() && rest.front() == '^') {
        auto star = rest.find('*');
        std::string_view exp_text = rest.substr(1, star == std::string_view::npos ? rest.npos : star - 1);
        if (!exp_text.empty() && exp_text.front() == 'w')
          throw ParseError("ordinals >= w^w are not supported: '" + std::string(text) + "'");
        std::uint64_t e = detail::parse_u64(exp_text, "ordinal exponent");
        if (e == 0 || e > std::numeric_limits<std::uint32_t>::max())
          throw ParseError("bad ordinal exponent in '" + std::string(part) + "'");
        t.exponent = static_cast<std::uint32_t>(e);
        rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star);
      }
      if (!rest.empty()) {
        if (rest.front() != '*') throw ParseError("bad ordinal term '" + std::string(part) + "'");
        t.coefficient = detail::parse_u64(rest.substr(1), "ordinal coefficient");
      }
    } else {
      t.coefficient = detail::parse_u64(part, "ordinal constant");
    }
    if (t.coefficient == 0) throw ParseError("zero coefficient in '" + std::string(text) + "'");
    if (!terms.empty() && terms.back().exponent <= t.exponent)
      throw ParseError("ordinal terms must have strictly decreasing exponents: '" + std::string(text) + "'");
    terms.push_back(t);
  }
  return Ordinal{std::move(terms)};
}

std::uint64_t ExtendedCount::value() const {
  if (!value_) throw DomainError("ExtendedCount::value on w");
  return *value_;
}

std::strong_ordering operator<=>(const ExtendedCount& a, const ExtendedCount& b) {
  if (a.is_omega() || b.is_omega()) return a.is_omega() <=> b.is_omega();
  return *a.value_ <=> *b.value_;
}

ExtendedCount operator+(const ExtendedCount& a, const ExtendedCount& b) {
  if (a.is_omega() || b.is_omega()) return ExtendedCount::omega();
  return ExtendedCount{checked_add(*a.value_, *b.value_)};
}

std::string ExtendedCount::to_string() const { return value_ ? std::to_string(*value_) : "w"; }

ExtendedCount ExtendedCount::parse(std::string_view text) {
  text = detail::trim(text);
  if (text == "w") return omega();
  return ExtendedCount{detail::parse_u64(text, "count")};
}

}  // namespace ulmforge
