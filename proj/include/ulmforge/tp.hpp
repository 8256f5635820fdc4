#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ulmforge/element_table.hpp"
#include "ulmforge/pgroup.hpp"

namespace ulmforge {

/// Index of the ternary relation P^n_{l,m}; requires n <= max(l, m).
struct PKey {
  std::uint32_t l = 0, m = 0, n = 0;
  auto operator<=>(const PKey&) const = default;
};

using Triple = std::array<std::uint32_t, 3>;

/// A finite structure for the language {0, R_n, P^n_{l,m}} on the domain
/// 0..N-1. Only nonempty relations are stored.
class LpStructure {
 public:
  LpStructure(std::uint32_t p, std::uint32_t size, std::uint32_t zero);

  std::uint32_t p() const { return p_; }
  std::uint32_t size() const { return n_; }
  std::uint32_t zero() const { return zero_; }
  const std::map<std::uint32_t, std::set<std::uint32_t>>& r() const { return r_; }
  const std::map<PKey, std::set<Triple>>& pr() const { return p_rel_; }

  void add_r(std::uint32_t n, std::uint32_t x);
  void remove_r(std::uint32_t n, std::uint32_t x);
  void add_p(PKey key, Triple t);
  void remove_p(PKey key, Triple t);
  bool has_r(std::uint32_t n, std::uint32_t x) const;
  bool has_p(PKey key, Triple t) const;

  /// Largest index l, m or n of any nonempty relation (0 when none).
  std::uint32_t max_index() const;

  bool operator==(const LpStructure&) const = default;

  /// Header "p=2; N=3; zero=0", then one line per nonempty relation in
  /// sorted order: "R1 = {1}", "P[1,1->0] = {(1,1,0)}".
  std::string to_string() const;
  static LpStructure parse(std::string_view text);

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t zero_;
  std::map<std::uint32_t, std::set<std::uint32_t>> r_;
  std::map<PKey, std::set<Triple>> p_rel_;
};

struct AxiomFailure {
  int axiom = 0;            ///< 1..8
  std::string instance;     ///< which schema instance, e.g. "l=1 m=1"
  std::vector<std::uint32_t> witness;
  std::string reason;
};

struct AxiomReport {
  std::array<bool, 8> pass{};
  std::vector<AxiomFailure> failures;  ///< at most a few per schema
  std::uint32_t bound = 0;             ///< largest relation index instantiated

  bool is_model() const;
  bool passes(int axiom) const { return pass[static_cast<std::size_t>(axiom - 1)]; }
  /// Axioms that failed, ascending.
  std::vector<int> failed() const;
  std::string to_string() const;
};

/// Checks every instance of (A1)-(A8) with relation indices up to
/// max_index() + 1 + extra_bound. Instances above max_index() + 1 only
/// mention empty relations and hold vacuously.
AxiomReport check_axioms(const LpStructure& m, std::uint32_t extra_bound = 0);

/// Domain: elements of G in enumeration order, then m relation-free points.
LpStructure encode(const ExplicitPGroup& g, std::uint32_t m);
/// Same on a Cayley table; table indices are kept and zero is t.zero().
LpStructure encode_table(const ElementTableGroup& t, std::uint32_t m);

struct Decoded {
  ElementTableGroup table;
  std::uint32_t size_m = 0;            ///< points outside every R_n
  std::vector<std::uint32_t> domain;   ///< structure index of table element i
};

/// Throws DomainError when m fails an axiom.
Decoded decode(const LpStructure& m);

/// Group with exponent k repeated u_{k-1}(t) times, by socle counting.
ExplicitPGroup classify(const ElementTableGroup& t);

/// A bijection preserving 0, every R_n and every P^n_{l,m}, or none.
std::optional<std::vector<std::uint32_t>> structure_iso(const LpStructure& a, const LpStructure& b);
/// Checks that f is such a bijection.
bool is_structure_isomorphism(const LpStructure& a, const LpStructure& b, const std::vector<std::uint32_t>& f);
/// The image structure: x becomes perm[x].
LpStructure permute(const LpStructure& m, const std::vector<std::uint32_t>& perm);

}  // namespace ulmforge
