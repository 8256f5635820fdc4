#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ulmforge/ordinal.hpp"
#include "ulmforge/pgroup.hpp"

namespace ulmforge {

/// Names one of the computable infinitary formulas evaluated below.
///   psi[a]        x in p^a G
///   phi[a,>=n]    u_a(G) >= n
///   phi[a,=n]     u_a(G) = n   (n may be w)
///   divrank[=n]   divisible part has rank n (n may be w)
struct FormulaId {
  enum class Kind { psi, phi_geq, phi_exact, divrank };
  Kind kind = Kind::psi;
  Ordinal alpha;
  ExtendedCount n;

  bool operator==(const FormulaId&) const = default;
  std::string to_string() const;
  static FormulaId parse(std::string_view text);
};

struct EvalOptions {
  /// Pruefer denominator bound for quantifiers over the divisible part.
  std::uint32_t denom_bound = 3;
  /// Number of conjuncts evaluated for the infinite conjunctions.
  std::uint32_t omega_cap = 8;
};

struct EvalReport {
  std::string formula;
  std::string group;
  std::string bound;  ///< "none" when no quantifier was bounded
  bool verdict = false;
  std::vector<std::string> witness;
  std::vector<std::string> notes;

  std::string to_string() const;
};

/// Holds the psi memo for one group so repeated queries share work.
class GroupEvaluator {
 public:
  explicit GroupEvaluator(const ExplicitPGroup& g);
  ~GroupEvaluator();
  GroupEvaluator(const GroupEvaluator&) = delete;
  GroupEvaluator& operator=(const GroupEvaluator&) = delete;

  const ExplicitPGroup& group() const { return g_; }
  bool psi(const Ordinal& alpha, const GroupElement& x);
  bool phi_geq(const Ordinal& alpha, std::uint64_t n, std::vector<GroupElement>* witness = nullptr);
  bool phi_exact(const Ordinal& alpha, ExtendedCount n);

 private:
  class Memo;
  ExplicitPGroup g_;
  std::unique_ptr<Memo> memo_;
};

/// Literal recursion: successor stages search the p-preimages of x, limit
/// stages are truncated at the length of G, where the filtration is constant.
bool eval_psi(const ExplicitPGroup& g, const Ordinal& alpha, const GroupElement& x);

/// Searches n-tuples of socle elements in p^alpha G none of whose nonzero
/// Z/p-combinations lies in p^(alpha+1) G. The witness receives the tuple.
bool eval_phi_geq(const ExplicitPGroup& g, const Ordinal& alpha, std::uint64_t n,
                  std::vector<GroupElement>* witness = nullptr);

/// phi[a,>=n] and not phi[a,>=n+1]. For n = w the closed form u_a = w decides
/// (always false for explicit groups); see evaluate() for the truncated check.
bool eval_phi_exact(const ExplicitPGroup& g, const Ordinal& alpha, ExtendedCount n);

/// The divisible-part sentence for rank n, with every quantifier over the
/// divisible part restricted to denominator exponent <= denom_bound. A term
/// c/p^k x with c != 0 stands for every w in the divisible part with
/// p^k w = c x; terms with c = 0 contribute 0. The x_i are taken of order p:
/// with single-digit c and no such restriction, 1/4, 1/4 already satisfies
/// the rank 2 clauses in Z(2^inf).
bool eval_divisible_sentence(const ExplicitPGroup& g, ExtendedCount n, std::uint32_t denom_bound,
                             EvalReport* report = nullptr, std::uint32_t omega_cap = 8);

/// Evaluates any formula. psi needs an element; pass nullptr to list the
/// elements of enumerate(g, denom_bound) that satisfy it.
EvalReport evaluate(const FormulaId& f, const ExplicitPGroup& g, const EvalOptions& options = {},
                    const GroupElement* x = nullptr);

}  // namespace ulmforge
