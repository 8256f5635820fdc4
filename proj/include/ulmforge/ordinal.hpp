#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ulmforge {

/// An ordinal below w^w in Cantor normal form:
///   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,  e1 > e2 > ... > ek,  ci > 0.
/// The empty term list is 0. Because exponents are naturals, every
/// representable value is < w^w; the parser rejects anything larger.
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint64_t coefficient;
    bool operator==(const Term&) const = default;
  };

  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  /// w^exponent * coefficient
  static Ordinal monomial(std::uint32_t exponent, std::uint64_t coefficient = 1);
  /// Builds from arbitrary terms: drops zero coefficients, merges equal
  /// exponents and applies left absorption, so the result is in CNF.
  static Ordinal normalize(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || terms_.front().exponent == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exponent != 0; }
  bool is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }
  /// Value as a natural; nullopt when >= w.
  std::optional<std::uint64_t> as_finite() const;

  Ordinal succ() const;
  /// Predecessor of a successor ordinal. Throws DomainError on 0 or limits.
  Ordinal pred() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) = default;

  std::string to_string() const;
  static Ordinal parse(std::string_view text);

  friend Ordinal ord_add(const Ordinal& a, const Ordinal& b);

 private:
  explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::vector<Term> terms_;
};

/// Ordinal addition (not commutative: 1 + w = w).
Ordinal ord_add(const Ordinal& a, const Ordinal& b);
std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b);

/// A natural number or the symbol w (greater than every natural). Used for
/// counts such as Ulm invariants and divisible ranks, never as an index.
class ExtendedCount {
 public:
  constexpr ExtendedCount() = default;
  constexpr ExtendedCount(std::uint64_t n) : value_(n) {}  // NOLINT(implicit)
  static constexpr ExtendedCount omega() {
    ExtendedCount c;
    c.value_.reset();
    return c;
  }

  bool is_omega() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  /// Throws DomainError on w.
  std::uint64_t value() const;

  friend std::strong_ordering operator<=>(const ExtendedCount& a, const ExtendedCount& b);
  friend bool operator==(const ExtendedCount& a, const ExtendedCount& b) = default;
  friend ExtendedCount operator+(const ExtendedCount& a, const ExtendedCount& b);

  std::string to_string() const;
  static ExtendedCount parse(std::string_view text);

 private:
  std::optional<std::uint64_t> value_{0};
};

}  // namespace ulmforge
