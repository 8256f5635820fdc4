#include "ulmforge/logic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"
#include "ulmforge/error.hpp"
#include "ulmforge/ulm.hpp"

namespace ulmforge {

std::string FormulaId::to_string() const {
  switch (kind) {
    case Kind::psi:
      return "psi[" + alpha.to_string() + "]";
    case Kind::phi_geq:
      return "phi[" + alpha.to_string() + ",>=" + n.to_string() + "]";
    case Kind::phi_exact:
      return "phi[" + alpha.to_string() + ",=" + n.to_string() + "]";
    case Kind::divrank:
      return "divrank[=" + n.to_string() + "]";
  }
  return {};
}

FormulaId FormulaId::parse(std::string_view text) {
  text = detail::trim(text);
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.back() != ']') throw ParseError("formula: expected name[...]");
  const std::string_view name = text.substr(0, open);
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);
  FormulaId f;
  if (name == "psi") {
    f.kind = Kind::psi;
    f.alpha = Ordinal::parse(body);
    return f;
  }
  if (name == "divrank") {
    if (body.substr(0, 1) != "=") throw ParseError("formula: divrank needs '=n'");
    f.kind = Kind::divrank;
    f.n = ExtendedCount::parse(body.substr(1));
    return f;
  }
  if (name == "phi") {
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("formula: phi needs 'alpha,>=n' or 'alpha,=n'");
    f.alpha = Ordinal::parse(body.substr(0, comma));
    std::string_view rest = detail::trim(body.substr(comma + 1));
    if (rest.substr(0, 2) == ">=") {
      f.kind = Kind::phi_geq;
      f.n = ExtendedCount{detail::parse_u64(rest.substr(2), "phi bound")};
    } else if (rest.substr(0, 1) == "=") {
      f.kind = Kind::phi_exact;
      f.n = ExtendedCount::parse(rest.substr(1));
    } else {
      throw ParseError("formula: phi needs '>=' or '='");
    }
    return f;
  }
  throw ParseError("formula: unknown name '" + std::string(name) + "'");
}

std::string EvalReport::to_string() const {
  std::ostringstream out;
  out << "formula: " << formula << "\n";
  out << "group: " << group << "\n";
  out << "bound: " << bound << "\n";
  out << "verdict: " << (verdict ? "true" : "false") << "\n";
  for (const auto& w : witness) out << "witness: " << w << "\n";
  for (const auto& n : notes) out << "note: " << n << "\n";
  return out.str();
}

namespace {

// Memoized psi evaluation. Levels are (limit base?, finite offset k).
// Multiplication by p acts summand by summand, so the p-preimages of x are
// the product of the per-summand preimage sets and the existential search
// over them splits into one search per summand.
class PsiEvaluator {
 public:
  explicit PsiEvaluator(const ExplicitPGroup& g)
      : len_(static_cast<std::uint32_t>(*ulmforge::length(g).as_finite())) {
    for (auto k : g.exps()) summands_.emplace_back(g.p(), std::vector<std::uint32_t>{k}, 0);
    summands_.emplace_back(g.p(), std::vector<std::uint32_t>{}, 1);
  }

  bool eval(const Ordinal& alpha, const GroupElement& x) {
    std::uint64_t k = 0;
    bool limit_base = false;
    if (alpha.is_finite()) {
      k = *alpha.as_finite();
    } else {
      limit_base = true;
      k = alpha.terms().back().exponent == 0 ? alpha.terms().back().coefficient : 0;
    }
    for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
      GroupElement c{{x.cyclic[i]}, {}};
      if (!coordinate(i, k, limit_base, c)) return false;
    }
    for (const auto& f : x.prufer) {
      GroupElement c{{}, {f}};
      if (!coordinate(summands_.size() - 1, k, limit_base, c)) return false;
    }
    return true;
  }

  std::uint32_t length() const { return len_; }

 private:
  struct Key {
    std::size_t summand;
    std::uint64_t k;
    bool limit_base;
    GroupElement x;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      return GroupElementHash{}(key.x) * 1000003u ^ (key.summand * 131 + key.k * 2 + key.limit_base);
    }
  };

  bool coordinate(std::size_t s, std::uint64_t k, bool limit_base, const GroupElement& x) {
    if (k == 0) return limit_base ? limit(s, x) : true;
    const Key key{s, k, limit_base, x};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    for (const auto& y : p_preimages(summands_[s], x)) {
      if (coordinate(s, k - 1, limit_base, y)) {
        result = true;
        break;
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  // Conjunction over beta < lambda, which is constant from beta = length on.
  bool limit(std::size_t s, const GroupElement& x) {
    for (std::uint64_t b = 0; b <= len_; ++b)
      if (!coordinate(s, b, false, x)) return false;
    return true;
  }

  std::uint32_t len_;
  std::vector<ExplicitPGroup> summands_;  // cyclic summands, then one Pruefer
  std::unordered_map<Key, bool, KeyHash> memo_;
};

// The socle G[p] as F_p-vectors: digit i is the coefficient of the order-p
// element of summand i (cyclic summands first). Codes are base-p integers
// with digit 0 least significant, which is the enumeration order.
class Socle {
 public:
  explicit Socle(const ExplicitPGroup& g) : g_(g), p_(g.p()) {
    dim_ = static_cast<std::uint32_t>(g.exps().size() + g.div_rank());
    size_ = 1;
    for (std::uint32_t i = 0; i < dim_; ++i) {
      if (size_ > (1u << 20) / p_) throw DomainError("socle too large to search");
      size_ *= p_;
    }
  }

  std::uint32_t size() const { return size_; }

  GroupElement element(std::uint32_t code) const {
    GroupElement x = elem_zero(g_);
    for (std::size_t i = 0; i < x.cyclic.size(); ++i) {
      x.cyclic[i] = (code % p_) * (g_.modulus(i) / p_);
      code /= p_;
    }
    for (auto& f : x.prufer) {
      const std::uint64_t c = code % p_;
      code /= p_;
      f = c == 0 ? PruferFraction{} : PruferFraction{c, 1};
    }
    return x;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < dim_; ++i) {
      out += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }

  std::uint32_t scale(std::uint32_t c, std::uint32_t a) const {
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < dim_; ++i) {
      out += ((c * (a % p_)) % p_) * place;
      a /= p_;
      place *= p_;
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t a) const { return scale(p_ - 1, a); }

 private:
  const ExplicitPGroup& g_;
  std::uint32_t p_;
  std::uint32_t dim_;
  std::uint32_t size_;
};

std::uint32_t inverse_mod(std::uint32_t c, std::uint32_t p) {
  for (std::uint32_t d = 1; d < p; ++d)
    if ((c * d) % p == 1) return d;
  throw DomainError("no inverse");
}

}  // namespace

class GroupEvaluator::Memo : public PsiEvaluator {
 public:
  using PsiEvaluator::PsiEvaluator;
};

GroupEvaluator::GroupEvaluator(const ExplicitPGroup& g) : g_(g), memo_(std::make_unique<Memo>(g_)) {}
GroupEvaluator::~GroupEvaluator() = default;

bool GroupEvaluator::psi(const Ordinal& alpha, const GroupElement& x) {
  check_element(g_, x);
  return memo_->eval(alpha, x);
}

bool eval_psi(const ExplicitPGroup& g, const Ordinal& alpha, const GroupElement& x) {
  GroupEvaluator ev(g);
  return ev.psi(alpha, x);
}

bool eval_phi_geq(const ExplicitPGroup& g, const Ordinal& alpha, std::uint64_t n, std::vector<GroupElement>* witness) {
  GroupEvaluator ev(g);
  return ev.phi_geq(alpha, n, witness);
}

bool GroupEvaluator::phi_geq(const Ordinal& alpha, std::uint64_t n, std::vector<GroupElement>* witness) {
  if (n == 0) {
    if (witness) witness->clear();
    return true;
  }
  const ExplicitPGroup& g = g_;
  const Socle soc(g);
  const std::uint32_t p = g.p();
  PsiEvaluator& ev = *memo_;
  const Ordinal next = alpha.succ();
  std::vector<char> in_alpha(soc.size()), bad(soc.size());
  std::vector<std::uint32_t> bad_list;
  for (std::uint32_t c = 0; c < soc.size(); ++c) {
    const GroupElement x = soc.element(c);
    in_alpha[c] = ev.eval(alpha, x);
    bad[c] = ev.eval(next, x);
    if (bad[c]) bad_list.push_back(c);
  }
  std::vector<std::uint32_t> inv(p, 0);
  for (std::uint32_t c = 1; c < p; ++c) inv[c] = inverse_mod(c, p);

  std::vector<std::uint32_t> chosen;
  // span holds every combination of the chosen elements, zero included.
  std::function<bool(const std::vector<std::uint32_t>&)> search = [&](const std::vector<std::uint32_t>& span) {
    if (chosen.size() == n) return true;
    // x is excluded when s + c x lands in p^(alpha+1) G for some s, c != 0.
    std::vector<char> forbidden(soc.size(), 0);
    for (auto s : span)
      for (auto b : bad_list) {
        const std::uint32_t diff = soc.add(b, soc.neg(s));
        for (std::uint32_t c = 1; c < p; ++c) forbidden[soc.scale(inv[c], diff)] = 1;
      }
    for (std::uint32_t x = 0; x < soc.size(); ++x) {
      if (!in_alpha[x] || forbidden[x]) continue;
      // Only the least code among {c x + s} is tried: the condition depends
      // on the span alone and psi_alpha defines a subgroup.
      bool least = true;
      for (std::uint32_t c = 1; c < p && least; ++c)
        for (auto s : span)
          if (soc.add(soc.scale(c, x), s) < x) {
            least = false;
            break;
          }
      if (!least) continue;
      std::vector<std::uint32_t> grown;
      grown.reserve(span.size() * p);
      for (std::uint32_t c = 0; c < p; ++c)
        for (auto s : span) grown.push_back(soc.add(s, soc.scale(c, x)));
      chosen.push_back(x);
      if (search(grown)) return true;
      chosen.pop_back();
    }
    return false;
  };
  const bool found = search({0});
  if (witness) {
    witness->clear();
    if (found)
      for (auto c : chosen) witness->push_back(soc.element(c));
  }
  return found;
}

bool GroupEvaluator::phi_exact(const Ordinal& alpha, ExtendedCount n) {
  if (n.is_omega()) return ulm_invariant(g_, alpha).is_omega();
  return phi_geq(alpha, n.value()) && !phi_geq(alpha, n.value() + 1);
}

bool eval_phi_exact(const ExplicitPGroup& g, const Ordinal& alpha, ExtendedCount n) {
  GroupEvaluator ev(g);
  return ev.phi_exact(alpha, n);
}

namespace {

// Elements of the divisible part with denominator exponent <= E, as indices
// into enumerate(Z(p^inf)^d, E).
class DivisibleFragment {
 public:
  DivisibleFragment(const ExplicitPGroup& g, std::uint32_t e)
      : g_(g), d_(g.p(), {}, g.div_rank()), e_(e), els_(enumerate(d_, e)) {
    const auto m = size();
    neg_.resize(m);
    times_p_.resize(m);
    order_.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      neg_[i] = index(elem_neg(d_, els_[i]));
      times_p_[i] = index(scalar_mul(d_, g.p(), els_[i]));
      order_[i] = elem_order(d_, els_[i]);
    }
    if (std::uint64_t{m} * m <= (1u << 22)) {
      table_.resize(std::size_t{m} * m);
      for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j) table_[std::size_t{i} * m + j] = index(elem_add(d_, els_[i], els_[j]));
    }
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(els_.size()); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[std::size_t{a} * size() + b];
    return index(elem_add(d_, els_[a], els_[b]));
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t times_p(std::uint32_t a) const { return times_p_[a]; }
  std::uint32_t times_pk(std::uint32_t a, std::uint32_t k) const {
    while (k--) a = times_p_[a];
    return a;
  }
  std::uint32_t scale(std::uint32_t c, std::uint32_t a) const {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < c; ++i) out = add(out, a);
    return out;
  }
  std::uint32_t order(std::uint32_t a) const { return order_[a]; }

  /// The element embedded in G (cyclic coordinates zero).
  GroupElement embedded(std::uint32_t a) const {
    GroupElement x = elem_zero(g_);
    x.prufer = els_[a].prufer;
    return x;
  }
  /// 1/p^k in the first coordinate.
  std::uint32_t basic(std::uint32_t k) const {
    GroupElement x = elem_zero(d_);
    x.prufer[0] = PruferFraction{1, k};
    return index(x);
  }

 private:
  std::uint32_t index(const GroupElement& x) const { return static_cast<std::uint32_t>(element_index(d_, x, e_)); }

  const ExplicitPGroup& g_;
  ExplicitPGroup d_;
  std::uint32_t e_;
  std::vector<GroupElement> els_;
  std::vector<std::uint32_t> neg_, times_p_, order_, table_;
};

class DivisibleSearch {
 public:
  DivisibleSearch(const ExplicitPGroup& g, std::uint32_t e) : g_(g), e_(e), frag_(g, e), ev_(g), psi_(frag_.size(), -1) {}

  /// Tuple of length n meeting the psi and independence clauses, plus the
  /// spanning clause when `spanning` is set.
  bool find(std::uint64_t n, bool spanning) {
    n_ = n;
    spanning_ = spanning;
    chosen_.clear();
    std::vector<char> all(frag_.size(), 0), active0(frag_.size(), 0);
    all[0] = 1;
    return search(all, active0);
  }

  std::vector<std::string> witness() const {
    std::vector<std::string> out;
    for (auto c : chosen_) out.push_back(element_to_string(g_, frag_.embedded(c)));
    return out;
  }

 private:
  bool psi_lambda(std::uint32_t a) {
    if (psi_[a] < 0) psi_[a] = ev_.eval(Ordinal::finite(ev_.length()), frag_.embedded(a)) ? 1 : 0;
    return psi_[a] == 1;
  }

  // all: every sum of p^j c_i x_i over the chosen prefix (zero included).
  // active0: those sums in which some term with j = 0 and c != 0 occurs.
  // Independence says 0 never lies in active0.
  bool search(const std::vector<char>& all, const std::vector<char>& active0) {
    if (chosen_.size() == n_) return !spanning_ || spans();
    const std::uint32_t p = g_.p();
    std::vector<std::uint32_t> candidates;
    if (chosen_.empty()) {
      // Automorphisms of Z(p^inf)^d act transitively on elements of order p
      // and preserve every clause, so x1 = 1/p covers all choices.
      if (g_.div_rank() > 0) candidates.push_back(frag_.basic(1));
    } else {
      for (std::uint32_t a = chosen_.size() == 1 ? 0 : chosen_.back() + 1; a < frag_.size(); ++a)
        if (a != 0 && frag_.times_p(a) == 0) candidates.push_back(a);
    }
    for (auto x : candidates) {
      bool ok = true;
      for (std::uint32_t c = 1; c < p && ok; ++c) {
        const std::uint32_t cx = frag_.scale(c, x);
        if (all[frag_.neg(cx)]) ok = false;
        std::uint32_t t = cx;
        for (std::uint32_t j = 1; j <= e_ && ok; ++j) {
          t = frag_.times_p(t);
          if (active0[frag_.neg(t)]) ok = false;
        }
      }
      if (!ok || !psi_lambda(x)) continue;
      std::vector<char> all2(frag_.size(), 0), active2(frag_.size(), 0);
      std::vector<std::uint32_t> multiples;  // c p^j x for all c, j
      std::vector<std::uint32_t> units;      // c x for c != 0
      for (std::uint32_t c = 0; c < p; ++c) {
        std::uint32_t t = frag_.scale(c, x);
        if (c) units.push_back(t);
        for (std::uint32_t j = 0; j <= e_; ++j) {
          multiples.push_back(t);
          t = frag_.times_p(t);
        }
      }
      std::sort(multiples.begin(), multiples.end());
      multiples.erase(std::unique(multiples.begin(), multiples.end()), multiples.end());
      for (std::uint32_t a = 0; a < frag_.size(); ++a) {
        if (all[a]) {
          for (auto m : multiples) all2[frag_.add(a, m)] = 1;
          for (auto u : units) active2[frag_.add(a, u)] = 1;
        }
        if (active0[a])
          for (auto m : multiples) active2[frag_.add(a, m)] = 1;
      }
      chosen_.push_back(x);
      if (search(all2, active2)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  // Every y in the fragment equals some sum of c_i/p^(k_i) x_i. With K the
  // largest k_i over terms with c_i != 0 this means p^K y = sum p^(K-k_i) c_i x_i;
  // independence forces K < order(y).
  bool spans() {
    const std::uint32_t p = g_.p();
    const std::size_t n = chosen_.size();
    std::vector<std::vector<char>> targets(e_, std::vector<char>(frag_.size(), 0));
    for (std::uint32_t big_k = 0; big_k < e_; ++big_k) {
      std::vector<std::uint32_t> c(n, 0), k(n, 0);
      std::function<void(std::size_t, std::uint32_t, bool)> rec = [&](std::size_t i, std::uint32_t acc, bool top) {
        if (i == n) {
          if (top) targets[big_k][acc] = 1;
          return;
        }
        rec(i + 1, acc, top);  // c_i = 0
        for (std::uint32_t ci = 1; ci < p; ++ci)
          for (std::uint32_t ki = 0; ki <= big_k; ++ki) {
            const std::uint32_t term = frag_.times_pk(frag_.scale(ci, chosen_[i]), big_k - ki);
            rec(i + 1, frag_.add(acc, term), top || ki == big_k);
          }
      };
      rec(0, 0, false);
    }
    for (std::uint32_t y = 1; y < frag_.size(); ++y) {
      bool hit = false;
      for (std::uint32_t big_k = 0; big_k < frag_.order(y) && !hit; ++big_k)
        hit = targets[big_k][frag_.times_pk(y, big_k)] != 0;
      if (!hit) return false;
    }
    return true;
  }

  const ExplicitPGroup& g_;
  std::uint32_t e_;
  DivisibleFragment frag_;
  PsiEvaluator ev_;
  std::vector<int> psi_;
  std::uint64_t n_ = 0;
  bool spanning_ = true;
  std::vector<std::uint32_t> chosen_;
};

}  // namespace

bool eval_divisible_sentence(const ExplicitPGroup& g, ExtendedCount n, std::uint32_t denom_bound, EvalReport* report,
                             std::uint32_t omega_cap) {
  if (denom_bound < 1) throw DomainError("divisible sentence needs denominator bound >= 1");
  DivisibleSearch search(g, denom_bound);
  bool verdict = true;
  std::vector<std::string> notes;
  if (n.is_finite()) {
    verdict = search.find(n.value(), true);
  } else {
    for (std::uint32_t m = 0; m <= omega_cap && verdict; ++m) verdict = search.find(m, false);
    notes.push_back("infinite battery truncated at m <= " + std::to_string(omega_cap));
  }
  if (report) {
    report->formula = FormulaId{FormulaId::Kind::divrank, Ordinal{}, n}.to_string();
    report->group = g.to_string();
    report->bound = "denominator exponent <= " + std::to_string(denom_bound);
    report->verdict = verdict;
    report->witness = verdict && n.is_finite() ? search.witness() : std::vector<std::string>{};
    notes.push_back("quantifiers over the divisible part range over denominator exponent <= " +
                    std::to_string(denom_bound));
    notes.push_back("witnesses x_i restricted to order p");
    notes.push_back("x1 chosen up to automorphism of the divisible part");
    report->notes = notes;
  }
  return verdict;
}

EvalReport evaluate(const FormulaId& f, const ExplicitPGroup& g, const EvalOptions& options, const GroupElement* x) {
  EvalReport r;
  r.formula = f.to_string();
  r.group = g.to_string();
  r.bound = "none";
  switch (f.kind) {
    case FormulaId::Kind::psi: {
      if (x) {
        r.verdict = eval_psi(g, f.alpha, *x);
        r.witness.push_back(element_to_string(g, *x));
        break;
      }
      r.bound = "denominator exponent <= " + std::to_string(options.denom_bound);
      PsiEvaluator ev(g);
      const auto els = enumerate(g, options.denom_bound);
      for (const auto& y : els)
        if (ev.eval(f.alpha, y)) r.witness.push_back(element_to_string(g, y));
      r.verdict = !r.witness.empty();
      r.notes.push_back("satisfied by " + std::to_string(r.witness.size()) + " of " + std::to_string(els.size()) +
                        " enumerated elements");
      break;
    }
    case FormulaId::Kind::phi_geq: {
      std::vector<GroupElement> w;
      r.verdict = eval_phi_geq(g, f.alpha, f.n.value(), &w);
      for (const auto& y : w) r.witness.push_back(element_to_string(g, y));
      break;
    }
    case FormulaId::Kind::phi_exact: {
      if (f.n.is_finite()) {
        std::vector<GroupElement> w;
        const bool geq = eval_phi_geq(g, f.alpha, f.n.value(), &w);
        r.verdict = geq && !eval_phi_geq(g, f.alpha, f.n.value() + 1);
        if (r.verdict)
          for (const auto& y : w) r.witness.push_back(element_to_string(g, y));
      } else {
        r.verdict = eval_phi_exact(g, f.alpha, f.n);
        bool all = true;
        for (std::uint32_t m = 0; m <= options.omega_cap && all; ++m) all = eval_phi_geq(g, f.alpha, m);
        r.bound = "conjunction truncated at n <= " + std::to_string(options.omega_cap);
        r.notes.push_back(std::string("truncated conjunction: ") + (all ? "true" : "false"));
        r.notes.push_back("verdict from closed form u_alpha = w");
      }
      break;
    }
    case FormulaId::Kind::divrank:
      eval_divisible_sentence(g, f.n, options.denom_bound, &r, options.omega_cap);
      break;
  }
  return r;
}

}  // namespace ulmforge
