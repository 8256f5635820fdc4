#include "ulmforge/tp.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "ulmforge/error.hpp"
#include "ulmforge/ulm.hpp"

namespace ulmforge {

LpStructure::LpStructure(std::uint32_t p, std::uint32_t size, std::uint32_t zero) : p_(p), n_(size), zero_(zero) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (zero >= size) throw DomainError("zero index " + std::to_string(zero) + " outside a domain of size " + std::to_string(size));
}

void LpStructure::add_r(std::uint32_t n, std::uint32_t x) {
  if (x >= n_) throw DomainError("R" + std::to_string(n) + " element " + std::to_string(x) + " outside the domain");
  r_[n].insert(x);
}

void LpStructure::remove_r(std::uint32_t n, std::uint32_t x) {
  auto it = r_.find(n);
  if (it == r_.end()) return;
  it->second.erase(x);
  if (it->second.empty()) r_.erase(it);
}

void LpStructure::add_p(PKey key, Triple t) {
  if (key.n > std::max(key.l, key.m)) throw DomainError("P index n must be <= max(l, m)");
  for (auto v : t)
    if (v >= n_) throw DomainError("P triple entry " + std::to_string(v) + " outside the domain");
  p_rel_[key].insert(t);
}

void LpStructure::remove_p(PKey key, Triple t) {
  auto it = p_rel_.find(key);
  if (it == p_rel_.end()) return;
  it->second.erase(t);
  if (it->second.empty()) p_rel_.erase(it);
}

bool LpStructure::has_r(std::uint32_t n, std::uint32_t x) const {
  auto it = r_.find(n);
  return it != r_.end() && it->second.count(x);
}

bool LpStructure::has_p(PKey key, Triple t) const {
  auto it = p_rel_.find(key);
  return it != p_rel_.end() && it->second.count(t);
}

std::uint32_t LpStructure::max_index() const {
  std::uint32_t out = 0;
  if (!r_.empty()) out = r_.rbegin()->first;
  for (const auto& [k, _] : p_rel_) out = std::max({out, k.l, k.m, k.n});
  return out;
}

// ---------------------------------------------------------------- checker

namespace {

struct Entry {
  std::uint32_t l, m, n, z;
};

// Per ordered pair (x, y), every P tuple starting with it.
class PairIndex {
 public:
  explicit PairIndex(const LpStructure& s) : n_(s.size()), cells_(std::size_t{n_} * n_) {
    for (const auto& [k, ts] : s.pr())
      for (const auto& t : ts) cells_[std::size_t{t[0]} * n_ + t[1]].push_back({k.l, k.m, k.n, t[2]});
  }
  const std::vector<Entry>& at(std::uint32_t x, std::uint32_t y) const { return cells_[std::size_t{x} * n_ + y]; }
  bool has(std::uint32_t l, std::uint32_t m, std::uint32_t n, std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    for (const auto& e : at(x, y))
      if (e.l == l && e.m == m && e.n == n && e.z == z) return true;
    return false;
  }

 private:
  std::uint32_t n_;
  std::vector<std::vector<Entry>> cells_;
};

constexpr std::size_t kFailuresPerAxiom = 4;

class Checker {
 public:
  Checker(const LpStructure& s, std::uint32_t bound) : s_(s), idx_(s), bound_(bound) {
    report_.pass.fill(true);
    report_.bound = bound;
  }

  AxiomReport run() {
    a1();
    a2();
    a3();
    a4();
    a5();
    a6();
    a7();
    a8();
    return std::move(report_);
  }

 private:
  std::vector<std::uint32_t> members(std::uint32_t n) const {
    auto it = s_.r().find(n);
    if (it == s_.r().end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  void fail(int axiom, std::string instance, std::vector<std::uint32_t> witness, std::string reason) {
    auto& ok = report_.pass[static_cast<std::size_t>(axiom - 1)];
    ok = false;
    if (++counts_[static_cast<std::size_t>(axiom - 1)] > kFailuresPerAxiom) return;
    report_.failures.push_back({axiom, std::move(instance), std::move(witness), std::move(reason)});
  }

  static std::string key_str(std::uint32_t l, std::uint32_t m, std::uint32_t n) {
    return "P[" + std::to_string(l) + "," + std::to_string(m) + "->" + std::to_string(n) + "]";
  }

  // P tuples only relate elements of the matching R.
  // The printed schema reads R_m(x) for the second conjunct; R_m(y) is meant.
  void a1() {
    for (const auto& [k, ts] : s_.pr())
      for (const auto& t : ts)
        if (!s_.has_r(k.l, t[0]) || !s_.has_r(k.m, t[1]) || !s_.has_r(k.n, t[2]))
          fail(1, key_str(k.l, k.m, k.n), {t[0], t[1], t[2]}, "a coordinate is outside its R");
  }

  void a2() {
    const std::uint32_t zero = s_.zero();
    for (std::uint32_t x = 0; x < s_.size(); ++x)
      if (s_.has_r(0, x) != (x == zero)) fail(2, "n=0", {x}, x == zero ? "zero is not in R0" : "R0 holds a nonzero element");
    const std::uint32_t p = s_.p();
    for (std::uint32_t n = 1; n <= bound_; ++n) {
      for (std::uint32_t x = 0; x < s_.size(); ++x) {
        // x_1 = x; x_{j+1} with P^{e_j}_{n,n}(x, x_j, x_{j+1}).
        std::vector<std::uint32_t> cur{x};
        for (std::uint32_t j = 1; j < p && !cur.empty(); ++j) {
          const std::uint32_t e = j < p - 1 ? n : n - 1;
          std::vector<char> seen(s_.size(), 0);
          std::vector<std::uint32_t> next;
          for (auto xj : cur)
            for (const auto& en : idx_.at(x, xj))
              if (en.l == n && en.m == n && en.n == e && !seen[en.z]) {
                seen[en.z] = 1;
                next.push_back(en.z);
              }
          cur = std::move(next);
        }
        const bool chain = !cur.empty();
        if (chain != s_.has_r(n, x))
          fail(2, "n=" + std::to_string(n), {x}, chain ? "chain exists but x is not in R" : "x is in R but no chain exists");
      }
    }
  }

  void a3() {
    for (std::uint32_t x = 0; x < s_.size(); ++x)
      for (std::uint32_t y = 0; y < s_.size(); ++y) {
        const auto& cell = idx_.at(x, y);
        for (std::size_t i = 0; i < cell.size(); ++i)
          for (std::size_t j = i + 1; j < cell.size(); ++j)
            if (cell[i].l == cell[j].l && cell[i].m == cell[j].m && cell[i].z != cell[j].z) {
              fail(3, "l=" + std::to_string(cell[i].l) + " m=" + std::to_string(cell[i].m), {x, y, cell[i].z, cell[j].z},
                   "two different sums");
              goto next_pair;
            }
      next_pair:;
      }
  }

  void a4() {
    for (std::uint32_t l = 0; l <= bound_; ++l)
      for (std::uint32_t m = 0; m <= bound_; ++m)
        for (auto x : members(l))
          for (auto y : members(m)) {
            bool found = false;
            for (const auto& e : idx_.at(x, y)) found |= e.l == l && e.m == m;
            if (!found)
              fail(4, "l=" + std::to_string(l) + " m=" + std::to_string(m), {x, y},
                   "no n <= " + std::to_string(std::max(l, m)) + " and z with P[" + std::to_string(l) + "," +
                       std::to_string(m) + "->n](x,y,z)");
          }
  }

  void a5() {
    const std::uint32_t zero = s_.zero();
    for (std::uint32_t l = 0; l <= bound_; ++l)
      for (auto x : members(l))
        if (!idx_.has(0, l, l, zero, x, x) || !idx_.has(l, 0, l, x, zero, x))
          fail(5, "l=" + std::to_string(l), {x}, "zero is not neutral for x");
  }

  void a6() {
    const std::uint32_t zero = s_.zero();
    for (std::uint32_t l = 0; l <= bound_; ++l)
      for (auto x : members(l)) {
        bool found = false;
        for (std::uint32_t y = 0; y < s_.size() && !found; ++y)
          found = idx_.has(l, l, 0, x, y, zero) && idx_.has(l, l, 0, y, x, zero);
        if (!found) fail(6, "l=" + std::to_string(l), {x}, "no inverse");
      }
  }

  void a7() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> labeled;  // (label, element)
    for (std::uint32_t l = 0; l <= bound_; ++l)
      for (auto x : members(l)) labeled.emplace_back(l, x);
    for (const auto& [l, x] : labeled)
      for (const auto& [m, y] : labeled)
        for (const auto& [n, z] : labeled) {
          bool ok = false;
          for (const auto& xy : idx_.at(x, y)) {
            if (xy.l != l || xy.m != m) continue;
            const std::uint32_t r = xy.n, u = xy.z;
            for (const auto& yz : idx_.at(y, z)) {
              if (yz.l != m || yz.m != n) continue;
              const std::uint32_t s = yz.n, v = yz.z;
              for (const auto& uz : idx_.at(u, z)) {
                if (uz.l != r || uz.m != n) continue;
                const std::uint32_t t = uz.n;
                if (t > std::max(l, s)) continue;
                if (idx_.has(l, s, t, x, v, uz.z)) {
                  ok = true;
                  break;
                }
              }
              if (ok) break;
            }
            if (ok) break;
          }
          if (!ok)
            fail(7, "l=" + std::to_string(l) + " m=" + std::to_string(m) + " n=" + std::to_string(n), {x, y, z},
                 "no associativity witness");
        }
  }

  void a8() {
    for (const auto& [k, ts] : s_.pr())
      for (const auto& t : ts) {
        if (!s_.has_r(k.l, t[0]) || !s_.has_r(k.m, t[1]) || !s_.has_r(k.n, t[2])) continue;
        if (!idx_.has(k.m, k.l, k.n, t[1], t[0], t[2]))
          fail(8, key_str(k.l, k.m, k.n), {t[0], t[1], t[2]}, "swapped tuple missing");
      }
  }

  const LpStructure& s_;
  PairIndex idx_;
  std::uint32_t bound_;
  AxiomReport report_;
  std::array<std::size_t, 8> counts_{};
};

}  // namespace

bool AxiomReport::is_model() const {
  return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; });
}

std::vector<int> AxiomReport::failed() const {
  std::vector<int> out;
  for (int a = 1; a <= 8; ++a)
    if (!passes(a)) out.push_back(a);
  return out;
}

std::string AxiomReport::to_string() const {
  std::string out = "bound: " + std::to_string(bound) + "\n";
  for (int a = 1; a <= 8; ++a) {
    out += "A" + std::to_string(a) + ": " + (passes(a) ? "pass" : "FAIL") + "\n";
    for (const auto& f : failures) {
      if (f.axiom != a) continue;
      out += "  " + f.instance + " witness=(";
      for (std::size_t i = 0; i < f.witness.size(); ++i) out += (i ? "," : "") + std::to_string(f.witness[i]);
      out += "): " + f.reason + "\n";
    }
  }
  out += std::string("model: ") + (is_model() ? "yes" : "no") + "\n";
  return out;
}

AxiomReport check_axioms(const LpStructure& m, std::uint32_t extra_bound) {
  return Checker(m, m.max_index() + 1 + extra_bound).run();
}

// ---------------------------------------------------------------- encode / decode

LpStructure encode_table(const ElementTableGroup& t, std::uint32_t m) {
  LpStructure s(t.p(), t.size() + m, t.zero());
  for (std::uint32_t x = 0; x < t.size(); ++x) s.add_r(t.order_exponent(x), x);
  for (std::uint32_t x = 0; x < t.size(); ++x)
    for (std::uint32_t y = 0; y < t.size(); ++y) {
      const std::uint32_t z = t.add(x, y);
      s.add_p({t.order_exponent(x), t.order_exponent(y), t.order_exponent(z)}, {x, y, z});
    }
  return s;
}

LpStructure encode(const ExplicitPGroup& g, std::uint32_t m) {
  if (!g.is_finite()) throw DomainError("encode needs a finite group, got " + g.to_string());
  return encode_table(to_element_table(g), m);
}

Decoded decode(const LpStructure& m) {
  const auto report = check_axioms(m);
  if (!report.is_model()) {
    std::string which;
    for (int a : report.failed()) which += (which.empty() ? "A" : ", A") + std::to_string(a);
    throw DomainError("not a model of the theory (failing: " + which + "); decoding declined");
  }
  std::vector<std::uint32_t> domain;
  std::vector<std::uint32_t> pos(m.size(), ~0u);
  {
    std::set<std::uint32_t> all;
    for (const auto& [_, xs] : m.r()) all.insert(xs.begin(), xs.end());
    domain.assign(all.begin(), all.end());
  }
  for (std::uint32_t i = 0; i < domain.size(); ++i) pos[domain[i]] = i;
  const auto n = static_cast<std::uint32_t>(domain.size());
  std::vector<std::uint32_t> table(std::size_t{n} * n, ~0u);
  for (const auto& [_, ts] : m.pr())
    for (const auto& t : ts) table[std::size_t{pos[t[0]]} * n + pos[t[1]]] = pos[t[2]];
  try {
    return {ElementTableGroup(m.p(), n, pos[m.zero()], std::move(table)), m.size() - n, std::move(domain)};
  } catch (const DomainError& e) {
    throw std::logic_error(std::string("axiom checker accepted a structure whose table is not a p-group: ") + e.what());
  }
}

ExplicitPGroup classify(const ElementTableGroup& t) {
  std::vector<std::uint32_t> exps;
  const std::uint32_t len = table_length(t);
  for (std::uint32_t k = 0; k < len; ++k)
    for (std::uint64_t i = ulm_invariant_oracle(t, k); i > 0; --i) exps.push_back(k + 1);
  return ExplicitPGroup(t.p(), std::move(exps), 0);
}

// ---------------------------------------------------------------- isomorphism

LpStructure permute(const LpStructure& m, const std::vector<std::uint32_t>& perm) {
  if (perm.size() != m.size()) throw DomainError("permutation size does not match the domain");
  LpStructure out(m.p(), m.size(), perm[m.zero()]);
  for (const auto& [n, xs] : m.r())
    for (auto x : xs) out.add_r(n, perm[x]);
  for (const auto& [k, ts] : m.pr())
    for (const auto& t : ts) out.add_p(k, {perm[t[0]], perm[t[1]], perm[t[2]]});
  return out;
}

bool is_structure_isomorphism(const LpStructure& a, const LpStructure& b, const std::vector<std::uint32_t>& f) {
  if (a.p() != b.p() || a.size() != b.size() || f.size() != a.size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (auto v : f) {
    if (v >= b.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return permute(a, f) == b;
}

namespace {

// Relation-degree signature: (zero flag, then per (relation, position) counts).
using Signature = std::vector<std::uint64_t>;

std::vector<Signature> signatures(const LpStructure& s) {
  std::vector<std::map<std::uint64_t, std::uint64_t>> deg(s.size());
  for (const auto& [n, xs] : s.r())
    for (auto x : xs) ++deg[x][(std::uint64_t{n} << 2) | 3];
  for (const auto& [k, ts] : s.pr()) {
    const std::uint64_t base = ((std::uint64_t{k.l} * 4096 + k.m) * 4096 + k.n + 1) << 2;
    for (const auto& t : ts)
      for (std::uint64_t i = 0; i < 3; ++i) ++deg[t[i]][base | i];
  }
  std::vector<Signature> out(s.size());
  for (std::uint32_t x = 0; x < s.size(); ++x) {
    out[x].push_back(x == s.zero());
    for (const auto& [key, c] : deg[x]) {
      out[x].push_back(key);
      out[x].push_back(c);
    }
  }
  return out;
}

struct Tup {
  PKey key;
  Triple t;
};

class IsoSearch {
 public:
  IsoSearch(const LpStructure& a, const LpStructure& b) : a_(a), b_(b), n_(a.size()), inc_(n_) {
    for (const auto& [k, ts] : a.pr())
      for (const auto& t : ts) {
        const auto id = tuples_.size();
        tuples_.push_back({k, t});
        for (auto v : t) {
          if (inc_[v].empty() || inc_[v].back() != id) inc_[v].push_back(id);
        }
      }
    for (const auto& [k, ts] : b.pr())
      for (const auto& t : ts) b_pairs_[{k, t[0], t[1]}].push_back(t[2]);
    refine();
    f_.assign(n_, ~0u);
    finv_.assign(n_, ~0u);
  }

  bool compatible() const {
    std::vector<std::int64_t> bal(classes_, 0);
    for (std::uint32_t x = 0; x < n_; ++x) {
      ++bal[cls_a_[x]];
      --bal[cls_b_[x]];
    }
    return std::all_of(bal.begin(), bal.end(), [](auto v) { return v == 0; });
  }

  std::optional<std::vector<std::uint32_t>> run() {
    if (!compatible()) return std::nullopt;
    if (!assign(a_.zero(), b_.zero()) || !search()) return std::nullopt;
    return f_;
  }

 private:
  // Colour refinement run on both structures with one shared palette: the
  // colour of x is its degree signature, then repeatedly its old colour plus
  // the multiset of (relation, position, equality pattern, other colours)
  // over the tuples through x.
  void refine() {
    std::map<Signature, std::uint32_t> ids;
    auto recolour = [&](const std::vector<Signature>& sa, const std::vector<Signature>& sb) {
      ids.clear();
      for (std::uint32_t x = 0; x < n_; ++x) cls_a_[x] = ids.try_emplace(sa[x], static_cast<std::uint32_t>(ids.size())).first->second;
      for (std::uint32_t x = 0; x < n_; ++x) cls_b_[x] = ids.try_emplace(sb[x], static_cast<std::uint32_t>(ids.size())).first->second;
      return static_cast<std::uint32_t>(ids.size());
    };
    auto step = [&](const LpStructure& s, const std::vector<std::uint32_t>& cls) {
      std::vector<std::vector<Signature>> items(n_);
      for (const auto& [k, ts] : s.pr())
        for (const auto& t : ts) {
          const std::uint64_t pattern = (t[0] == t[1]) | (t[0] == t[2]) << 1 | (t[1] == t[2]) << 2;
          for (std::uint64_t i = 0; i < 3; ++i)
            items[t[i]].push_back({k.l, k.m, k.n, i, pattern, cls[t[(i + 1) % 3]], cls[t[(i + 2) % 3]]});
        }
      std::vector<Signature> out(n_);
      for (std::uint32_t x = 0; x < n_; ++x) {
        std::sort(items[x].begin(), items[x].end());
        out[x].push_back(cls[x]);
        for (const auto& it : items[x]) out[x].insert(out[x].end(), it.begin(), it.end());
      }
      return out;
    };
    cls_a_.resize(n_);
    cls_b_.resize(n_);
    classes_ = recolour(signatures(a_), signatures(b_));
    for (std::uint32_t round = 0; round < n_; ++round) {
      const auto sa = step(a_, cls_a_), sb = step(b_, cls_b_);
      const auto before = classes_;
      classes_ = recolour(sa, sb);
      if (classes_ == before) break;
    }
  }

  // Assigns x -> y and everything forced by P through it; false on conflict.
  bool assign(std::uint32_t x, std::uint32_t y) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{x, y}};
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      if (f_[u] == v) continue;
      if (f_[u] != ~0u || finv_[v] != ~0u || cls_a_[u] != cls_b_[v]) return false;
      f_[u] = v;
      finv_[v] = u;
      trail_.push_back(u);
      for (auto id : inc_[u]) {
        const auto& [k, t] = tuples_[id];
        if (f_[t[0]] == ~0u || f_[t[1]] == ~0u) continue;
        auto it = b_pairs_.find({k, f_[t[0]], f_[t[1]]});
        if (it == b_pairs_.end()) return false;
        if (f_[t[2]] != ~0u) {
          if (std::find(it->second.begin(), it->second.end(), f_[t[2]]) == it->second.end()) return false;
        } else if (it->second.size() == 1) {
          queue.emplace_back(t[2], it->second.front());
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto u = trail_.back();
      trail_.pop_back();
      finv_[f_[u]] = ~0u;
      f_[u] = ~0u;
    }
  }

  bool search() {
    // Most constrained unassigned element: fewest free targets in its class.
    std::uint32_t best = ~0u, best_free = ~0u;
    std::vector<std::uint32_t> free_in(classes_, 0);
    for (std::uint32_t y = 0; y < n_; ++y)
      if (finv_[y] == ~0u) ++free_in[cls_b_[y]];
    for (std::uint32_t x = 0; x < n_; ++x)
      if (f_[x] == ~0u && free_in[cls_a_[x]] < best_free) {
        best = x;
        best_free = free_in[cls_a_[x]];
      }
    if (best == ~0u) return true;
    for (std::uint32_t y = 0; y < n_; ++y) {
      if (finv_[y] != ~0u || cls_b_[y] != cls_a_[best]) continue;
      const auto mark = trail_.size();
      if (assign(best, y) && search()) return true;
      undo(mark);
    }
    return false;
  }

  const LpStructure& a_;
  const LpStructure& b_;
  std::uint32_t n_;
  std::vector<Tup> tuples_;
  std::vector<std::vector<std::size_t>> inc_;
  std::map<std::tuple<PKey, std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> b_pairs_;
  std::vector<std::uint32_t> cls_a_, cls_b_;
  std::uint32_t classes_ = 0;
  std::vector<std::uint32_t> f_, finv_, trail_;
};

}  // namespace

std::optional<std::vector<std::uint32_t>> structure_iso(const LpStructure& a, const LpStructure& b) {
  if (a.p() != b.p()) throw DomainError("structures for different primes");
  if (a.size() != b.size()) return std::nullopt;
  for (const auto& [n, xs] : a.r()) {
    auto it = b.r().find(n);
    if (it == b.r().end() || it->second.size() != xs.size()) return std::nullopt;
  }
  if (a.r().size() != b.r().size() || a.pr().size() != b.pr().size()) return std::nullopt;
  for (const auto& [k, ts] : a.pr()) {
    auto it = b.pr().find(k);
    if (it == b.pr().end() || it->second.size() != ts.size()) return std::nullopt;
  }
  auto f = IsoSearch(a, b).run();
  // Propagation only checks tuples of a; equal relation sizes make the
  // forward image exhaust b, but R is confirmed here as well.
  if (f && !is_structure_isomorphism(a, b, *f)) return std::nullopt;
  return f;
}

}  // namespace ulmforge
