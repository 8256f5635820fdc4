#include "ulmforge/element_table.hpp"

#include <algorithm>
#include <string>

#include "ulmforge/error.hpp"
#include "ulmforge/pgroup.hpp"

namespace ulmforge {

ElementTableGroup::ElementTableGroup(std::uint32_t p, std::uint32_t size, std::uint32_t zero,
                                     std::vector<std::uint32_t> table)
    : p_(p), n_(size), zero_(zero), table_(std::move(table)) {
  validate();
}

ElementTableGroup ElementTableGroup::trivial(std::uint32_t p) { return ElementTableGroup(p, 1, 0, {0}); }

ElementTableGroup ElementTableGroup::cyclic(std::uint32_t p, std::uint32_t k) {
  return to_element_table(ExplicitPGroup(p, {k}, 0));
}

void ElementTableGroup::validate() {
  if (!is_prime(p_)) throw DomainError("table group: p = " + std::to_string(p_) + " is not prime");
  if (n_ == 0) throw DomainError("table group: empty domain");
  if (table_.size() != std::size_t{n_} * n_) throw DomainError("table group: table must be N x N");
  if (zero_ >= n_) throw DomainError("table group: zero out of range");
  for (auto v : table_)
    if (v >= n_) throw DomainError("table group: entry out of range");

  for (std::uint32_t a = 0; a < n_; ++a) {
    if (add(zero_, a) != a || add(a, zero_) != a) throw DomainError("table group: zero is not an identity");
    for (std::uint32_t b = a + 1; b < n_; ++b)
      if (add(a, b) != add(b, a)) throw DomainError("table group: not commutative");
  }

  neg_.assign(n_, n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    for (std::uint32_t b = 0; b < n_; ++b) {
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
    }
    if (neg_[a] == n_) throw DomainError("table group: element without inverse");
  }

  // Light's associativity test: the elements a with (x+a)+y = x+(a+y) for all
  // x, y form a submagma, so checking a generating set suffices.
  std::vector<std::uint32_t> gens;
  std::vector<char> in_closure(n_, 0);
  std::vector<std::uint32_t> members;
  for (std::uint32_t c = 0; c < n_; ++c) {
    if (in_closure[c]) continue;
    gens.push_back(c);
    std::vector<std::uint32_t> queue{c};
    in_closure[c] = 1;
    while (!queue.empty()) {
      const std::uint32_t e = queue.back();
      queue.pop_back();
      members.push_back(e);
      for (std::size_t i = 0; i < members.size(); ++i) {
        const std::uint32_t s = add(e, members[i]);
        if (!in_closure[s]) {
          in_closure[s] = 1;
          queue.push_back(s);
        }
      }
    }
  }
  for (auto a : gens)
    for (std::uint32_t x = 0; x < n_; ++x) {
      const std::uint32_t xa = add(x, a);
      for (std::uint32_t y = 0; y < n_; ++y)
        if (add(xa, y) != add(x, add(a, y))) throw DomainError("table group: not associative");
    }

  times_p_.resize(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::uint32_t acc = zero_;
    for (std::uint32_t i = 0; i < p_; ++i) acc = add(acc, a);
    times_p_[a] = acc;
  }
  order_exp_.assign(n_, 0);
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::uint32_t cur = a, steps = 0;
    while (cur != zero_) {
      cur = times_p_[cur];
      if (++steps > 32) throw DomainError("table group: element of order not a power of p");
    }
    order_exp_[a] = steps;
  }
}

std::uint32_t ElementTableGroup::scalar_mul(std::uint64_t k, std::uint32_t a) const {
  std::uint32_t result = zero_, base = a;
  while (k) {
    if (k & 1) result = add(result, base);
    base = add(base, base);
    k >>= 1;
  }
  return result;
}

ElementTableGroup table_direct_sum(const ElementTableGroup& a, const ElementTableGroup& b) {
  if (a.p() != b.p()) throw DomainError("table_direct_sum with different primes");
  const std::uint64_t n64 = std::uint64_t{a.size()} * b.size();
  if (n64 > (1u << 15)) throw DomainError("table_direct_sum result too large");
  const auto n = static_cast<std::uint32_t>(n64);
  std::vector<std::uint32_t> table(std::size_t{n} * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      const std::uint32_t s1 = a.add(x % a.size(), y % a.size());
      const std::uint32_t s2 = b.add(x / a.size(), y / a.size());
      table[std::size_t{x} * n + y] = s1 + a.size() * s2;
    }
  return ElementTableGroup(a.p(), n, a.zero() + a.size() * b.zero(), std::move(table));
}

ElementTableGroup subgroup_table(const ElementTableGroup& g, std::span<const std::uint32_t> members) {
  std::vector<std::uint32_t> pos(g.size(), g.size());
  for (std::uint32_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
  if (pos[g.zero()] == g.size()) throw DomainError("subgroup_table: zero missing");
  const auto n = static_cast<std::uint32_t>(members.size());
  std::vector<std::uint32_t> table(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t s = pos[g.add(members[i], members[j])];
      if (s == g.size()) throw DomainError("subgroup_table: member set not closed");
      table[std::size_t{i} * n + j] = s;
    }
  return ElementTableGroup(g.p(), n, pos[g.zero()], std::move(table));
}

std::vector<std::uint32_t> p_image(const ElementTableGroup& g) {
  std::vector<char> hit(g.size(), 0);
  for (std::uint32_t a = 0; a < g.size(); ++a) hit[g.times_p(a)] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < g.size(); ++a)
    if (hit[a]) out.push_back(a);
  return out;
}

std::vector<std::uint32_t> pn_subgroup_members(const ElementTableGroup& g, std::uint32_t n) {
  std::vector<std::uint32_t> cur(g.size());
  for (std::uint32_t a = 0; a < g.size(); ++a) cur[a] = a;
  for (std::uint32_t step = 0; step < n; ++step) {
    std::vector<char> hit(g.size(), 0);
    for (auto a : cur) hit[g.times_p(a)] = 1;
    cur.clear();
    for (std::uint32_t a = 0; a < g.size(); ++a)
      if (hit[a]) cur.push_back(a);
  }
  return cur;
}

std::uint64_t socle_count(const ElementTableGroup& g, std::span<const std::uint32_t> members) {
  std::uint64_t c = 0;
  for (auto a : members)
    if (g.times_p(a) == g.zero()) ++c;
  return c;
}

std::uint32_t log_p_exact(std::uint64_t n, std::uint32_t p) {
  if (n == 0) throw DomainError("log_p of 0");
  std::uint32_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) throw DomainError("not a power of p");
  return e;
}

}  // namespace ulmforge
