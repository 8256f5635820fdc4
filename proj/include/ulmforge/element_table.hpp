#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ulmforge {

/// A finite abelian p-group given by its full addition table on 0..N-1.
/// The constructor verifies the group axioms (associativity through Light's
/// test over a generating set) and that every element has p-power order.
class ElementTableGroup {
 public:
  ElementTableGroup(std::uint32_t p, std::uint32_t size, std::uint32_t zero, std::vector<std::uint32_t> table);

  static ElementTableGroup trivial(std::uint32_t p);
  /// Z/p^k with elements 0..p^k-1 in natural order.
  static ElementTableGroup cyclic(std::uint32_t p, std::uint32_t k);

  std::uint32_t p() const { return p_; }
  std::uint32_t size() const { return n_; }
  std::uint32_t zero() const { return zero_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return table_[std::size_t{a} * n_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t scalar_mul(std::uint64_t k, std::uint32_t a) const;
  std::uint32_t times_p(std::uint32_t a) const { return times_p_[a]; }
  /// n with order(a) = p^n.
  std::uint32_t order_exponent(std::uint32_t a) const { return order_exp_[a]; }
  std::span<const std::uint32_t> raw_table() const { return table_; }

 private:
  void validate();

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t zero_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> times_p_;
  std::vector<std::uint32_t> order_exp_;
};

/// Pairs (a, b) indexed as a + |A| * b.
ElementTableGroup table_direct_sum(const ElementTableGroup& a, const ElementTableGroup& b);

/// Subgroup given by a member list (must contain zero and be closed);
/// members[i] becomes index i of the result.
ElementTableGroup subgroup_table(const ElementTableGroup& g, std::span<const std::uint32_t> members);

/// Sorted members of p^n G computed literally: p^0 G = G, p^{j+1}G = p(p^j G).
std::vector<std::uint32_t> pn_subgroup_members(const ElementTableGroup& g, std::uint32_t n);

/// Sorted members of pG.
std::vector<std::uint32_t> p_image(const ElementTableGroup& g);

/// Number of elements x of the member set with p*x = 0.
std::uint64_t socle_count(const ElementTableGroup& g, std::span<const std::uint32_t> members);

/// Exact log base p of n; throws DomainError when n is not a power of p.
std::uint32_t log_p_exact(std::uint64_t n, std::uint32_t p);

}  // namespace ulmforge
