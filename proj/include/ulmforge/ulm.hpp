#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ulmforge/element_table.hpp"
#include "ulmforge/ordinal.hpp"
#include "ulmforge/pgroup.hpp"

namespace ulmforge {

/// Ulm invariants alpha -> u_alpha together with the divisible rank. Only
/// nonzero invariants are stored. Two profiles are equal when p, the
/// invariants and the divisible rank agree; the declared length is carried
/// along for groups that are only known symbolically.
class UlmProfile {
 public:
  UlmProfile(std::uint32_t p, std::map<Ordinal, ExtendedCount> invariants, ExtendedCount div_rank,
             Ordinal declared_length);

  std::uint32_t p() const { return p_; }
  const std::map<Ordinal, ExtendedCount>& invariants() const { return invariants_; }
  ExtendedCount invariant(const Ordinal& alpha) const;
  ExtendedCount div_rank() const { return div_rank_; }
  const Ordinal& declared_length() const { return length_; }

  bool operator==(const UlmProfile& o) const {
    return p_ == o.p_ && invariants_ == o.invariants_ && div_rank_ == o.div_rank_;
  }

  /// "p=2; u={0:2,1:1,w:1}; div=0; len=w+2"
  std::string to_string() const;
  static UlmProfile parse(std::string_view text);

 private:
  std::uint32_t p_;
  std::map<Ordinal, ExtendedCount> invariants_;
  ExtendedCount div_rank_;
  Ordinal length_;
};

/// Closed form #{i : k_i = n + 1}.
std::uint64_t ulm_invariant(const ExplicitPGroup& g, std::uint64_t n);
/// Ordinal-indexed variant; 0 for every alpha >= w.
ExtendedCount ulm_invariant(const ExplicitPGroup& g, const Ordinal& alpha);

/// log_p |(p^n G)[p]| - log_p |(p^{n+1} G)[p]| by exhaustive socle counting.
std::uint64_t ulm_invariant_oracle(const ElementTableGroup& t, std::uint64_t n);
/// Same, on the Cayley table of a finite explicit group.
std::uint64_t ulm_invariant_oracle(const ExplicitPGroup& g, std::uint64_t n);

/// Length as a finite ordinal: max k_i (0 with no cyclic summands).
Ordinal length(const ExplicitPGroup& g);
/// Smallest n with p^n T = p^{n+1} T, found by iterating the filtration.
std::uint32_t table_length(const ElementTableGroup& t);

UlmProfile profile_of(const ExplicitPGroup& g);
bool iso_by_ulm(const ExplicitPGroup& a, const ExplicitPGroup& b);
/// Pointwise sum of invariants and divisible ranks (profile of a direct sum).
UlmProfile profile_sum(const UlmProfile& a, const UlmProfile& b);

/// Invariant m at 0 and u(alpha) at 1 + alpha; divisible rank unchanged.
UlmProfile shift_profile(const UlmProfile& u, ExtendedCount m);

/// An isomorphism a -> b as an index map, verified to be an additive
/// bijection before it is returned.
using Bijection = std::vector<std::uint32_t>;

struct IsoSearchOptions {
  /// Reject early when element-order statistics or |p^n G| differ.
  bool prune_by_statistics = true;
};

/// Backtracking over images of a generating sequence. Returns none exactly
/// when no isomorphism exists.
std::optional<Bijection> brute_force_group_iso(const ElementTableGroup& a, const ElementTableGroup& b,
                                               IsoSearchOptions options = {});
/// Number of isomorphisms a -> b (automorphisms when a == b), by full search.
std::uint64_t count_group_isos(const ElementTableGroup& a, const ElementTableGroup& b);
/// Checks that f is an additive bijection a -> b.
bool is_group_isomorphism(const ElementTableGroup& a, const ElementTableGroup& b, const Bijection& f);

}  // namespace ulmforge
