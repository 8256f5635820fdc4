#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ulmforge/ordinal.hpp"

namespace ulmforge {

class ElementTableGroup;

bool is_prime(std::uint64_t n);

/// Exact element c / p^e of Z(p^inf) = Z[1/p]/Z, kept in lowest terms:
/// 0 <= c < p^e and (c == 0 and e == 0, or p does not divide c).
struct PruferFraction {
  std::uint64_t numerator = 0;
  std::uint32_t exponent = 0;
  bool operator==(const PruferFraction&) const = default;
};

struct GroupElement {
  std::vector<std::uint64_t> cyclic;    ///< i-th residue in [0, p^k_i)
  std::vector<PruferFraction> prufer;  ///< one fraction per Pruefer summand
  bool operator==(const GroupElement&) const = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& x) const noexcept;
};

/// The group Z/p^k1 + ... + Z/p^kr + Z(p^inf)^d. Summands are kept sorted
/// by descending exponent, so two explicit groups are isomorphic exactly
/// when they compare equal.
class ExplicitPGroup {
 public:
  ExplicitPGroup(std::uint32_t p, std::vector<std::uint32_t> exps, std::uint32_t div_rank = 0);

  static ExplicitPGroup trivial(std::uint32_t p) { return ExplicitPGroup(p, {}, 0); }

  std::uint32_t p() const { return p_; }
  const std::vector<std::uint32_t>& exps() const { return exps_; }
  std::uint32_t div_rank() const { return div_rank_; }
  bool is_finite() const { return div_rank_ == 0; }
  /// p^k_i
  std::uint64_t modulus(std::size_t i) const { return moduli_[i]; }
  /// p^e, checked against the representable range.
  std::uint64_t power(std::uint32_t e) const;
  /// Largest Pruefer exponent this implementation can represent for p.
  std::uint32_t max_prufer_exponent() const { return max_exp_; }

  bool operator==(const ExplicitPGroup& o) const {
    return p_ == o.p_ && exps_ == o.exps_ && div_rank_ == o.div_rank_;
  }

  /// "p=2; cyclic=[2,1]; divisible=1"
  std::string to_string() const;
  static ExplicitPGroup parse(std::string_view text);

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> exps_;
  std::uint32_t div_rank_;
  std::vector<std::uint64_t> moduli_;
  std::uint32_t max_exp_;
};

GroupElement elem_zero(const ExplicitPGroup& g);
GroupElement elem_add(const ExplicitPGroup& g, const GroupElement& x, const GroupElement& y);
GroupElement elem_neg(const ExplicitPGroup& g, const GroupElement& x);
GroupElement scalar_mul(const ExplicitPGroup& g, std::uint64_t k, const GroupElement& x);
/// Throws DomainError when x does not have the coordinate shape of g or a
/// coordinate is out of range / not in lowest terms.
void check_element(const ExplicitPGroup& g, const GroupElement& x);

/// n such that x has order p^n.
std::uint32_t elem_order(const ExplicitPGroup& g, const GroupElement& x);
/// Largest Pruefer denominator exponent of x (0 when x has none).
std::uint32_t denominator_exponent(const GroupElement& x);

/// Membership in p^alpha G. For finite alpha = n the test is p^min(n,k_i) | x_i on
/// every cyclic coordinate; for alpha >= w it is membership in the divisible part.
bool in_pn_subgroup(const ExplicitPGroup& g, const Ordinal& alpha, const GroupElement& x);

/// Every y with p*y = x (empty when x is not in pG). At most p choices per coordinate.
std::vector<GroupElement> p_preimages(const ExplicitPGroup& g, const GroupElement& x);

/// |G| = p^(sum k_i), or w when d > 0.
ExtendedCount group_size(const ExplicitPGroup& g);

/// Elements whose Pruefer denominators have exponent <= denom_bound, in
/// canonical order: cyclic residues as little-endian mixed-radix digits, then
/// each Pruefer coordinate ordered by denominator and then numerator.
std::vector<GroupElement> enumerate(const ExplicitPGroup& g, std::uint32_t denom_bound);
/// Position of x in enumerate(g, denom_bound).
std::uint64_t element_index(const ExplicitPGroup& g, const GroupElement& x, std::uint32_t denom_bound);

/// Cayley table in enumeration order (index 0 is zero). Requires d == 0.
ElementTableGroup to_element_table(const ExplicitPGroup& g);

ExplicitPGroup direct_sum(const ExplicitPGroup& a, const ExplicitPGroup& b);
/// The element (x, y) of direct_sum(a, b). Summands of a precede equal-exponent
/// summands of b after canonical sorting.
GroupElement concat_elements(const ExplicitPGroup& a, const GroupElement& x, const ExplicitPGroup& b,
                             const GroupElement& y);

/// Generator of the i-th cyclic summand: 1 in coordinate i, 0 elsewhere.
GroupElement canonical_generator(const ExplicitPGroup& g, std::size_t cyclic_index);

/// "cyclic=(3,0); prufer=(1/4)"
std::string element_to_string(const ExplicitPGroup& g, const GroupElement& x);
GroupElement parse_element(const ExplicitPGroup& g, std::string_view text);

}  // namespace ulmforge
