#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ulmforge/element_table.hpp"
#include "ulmforge/pgroup.hpp"
#include "ulmforge/tp.hpp"
#include "ulmforge/ulm.hpp"

namespace ulmforge {

/// Representatives whose images form a basis of G/pG.
struct BasisSet {
  std::vector<GroupElement> representatives;
};

/// Standard generators of the cyclic summands.
BasisSet basis_mod_p(const ExplicitPGroup& g);
/// Greedy elimination over Z/p in index order: an element is kept when it
/// is not in the span of pG and the elements kept so far.
std::vector<std::uint32_t> basis_mod_p(const ElementTableGroup& t);

struct Decomposition {
  std::uint32_t h = 0;                  ///< element of pG
  std::vector<std::uint32_t> coeffs;    ///< x_b in [0, p) per representative
  bool operator==(const Decomposition&) const = default;
};

/// Every way to write g = h + sum x_b b with h in pG (exhaustive).
std::vector<Decomposition> decompositions(const ElementTableGroup& t, const std::vector<std::uint32_t>& basis,
                                          std::uint32_t g);

/// g + sum x_b a_b in G*, where p a_b = b.
struct StarElement {
  std::uint32_t base = 0;
  std::vector<std::uint32_t> coeffs;
  bool operator==(const StarElement&) const = default;
};

/// G* = <G, a_b | p a_b = b> for a finite table and a basis of G/pG,
/// with carry addition (g,x) + (h,y) = (g + h + sum floor((x_b+y_b)/p) b, (x+y) mod p).
/// Element (h, x) has index h + |T| * (x read little-endian in base p).
class GStar {
 public:
  GStar(const ElementTableGroup& t, std::vector<std::uint32_t> basis);

  std::uint32_t size() const { return size_; }
  const std::vector<std::uint32_t>& basis() const { return basis_; }
  StarElement element(std::uint32_t index) const;
  std::uint32_t index(const StarElement& e) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t times_p(std::uint32_t a) const;
  const ElementTableGroup& base() const { return t_; }
  /// Index of (h, 0).
  std::uint32_t embed(std::uint32_t h) const { return h; }
  /// Index of a_b for the i-th representative.
  std::uint32_t generator(std::size_t i) const;
  /// Cayley table; requires size <= 2^12.
  ElementTableGroup table() const;

 private:
  ElementTableGroup t_;
  std::vector<std::uint32_t> basis_;
  std::uint32_t p_;
  std::uint32_t size_;
};

/// Table of G* for the canonical basis.
ElementTableGroup gstar_table(const ElementTableGroup& t);

/// Closed form of H(G, m) = G* + (Z/p)^m: every k_i becomes k_i + 1 and m
/// summands Z/p are added; the divisible rank is unchanged.
ExplicitPGroup hred(const ExplicitPGroup& g, std::uint32_t m);
/// Profile of H(G, m), also for m = w, from the same closed form.
UlmProfile hred_profile(const ExplicitPGroup& g, ExtendedCount m);
/// Presentation-level table of G* + (Z/p)^m.
ElementTableGroup hred_table(const ElementTableGroup& t, std::uint32_t m);

/// One line of a verification ledger: "PASS lemma-id group m=...".
struct LedgerLine {
  bool pass = false;
  std::string lemma;
  std::string subject;
  std::string detail;
  std::string to_string() const;
};

/// Checks the lemmas on H(G, m) for a finite explicit G by exhaustive
/// computation: unique representation in G and G*, pG* = G, p H ~ G,
/// socle quotient of dimension m, basis-choice invariance, closed form vs
/// presentation (|G| <= 16, m <= 2) and the Ulm shift identity.
std::vector<LedgerLine> verify_hred(const ExplicitPGroup& g, std::uint32_t m);

/// M -> H(G(M), #M). Throws DomainError on non-models.
ExplicitPGroup borel_reduce(const LpStructure& m);
/// G -> M(G, 0).
LpStructure borel_forward(const ExplicitPGroup& g);

}  // namespace ulmforge
