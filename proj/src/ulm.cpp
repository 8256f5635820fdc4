#include "ulmforge/ulm.hpp"

#include <algorithm>
#include <functional>

#include "text_util.hpp"
#include "ulmforge/error.hpp"

namespace ulmforge {

UlmProfile::UlmProfile(std::uint32_t p, std::map<Ordinal, ExtendedCount> invariants, ExtendedCount div_rank,
                       Ordinal declared_length)
    : p_(p), div_rank_(div_rank), length_(std::move(declared_length)) {
  if (!is_prime(p)) throw DomainError("profile: p = " + std::to_string(p) + " is not prime");
  for (auto& [alpha, u] : invariants) {
    if (u == ExtendedCount{0}) continue;
    if (alpha >= length_)
      throw DomainError("profile: invariant at " + alpha.to_string() + " outside declared length " +
                        length_.to_string());
    invariants_.emplace(alpha, u);
  }
}

ExtendedCount UlmProfile::invariant(const Ordinal& alpha) const {
  auto it = invariants_.find(alpha);
  return it == invariants_.end() ? ExtendedCount{0} : it->second;
}

std::string UlmProfile::to_string() const {
  std::string s = "p=" + std::to_string(p_) + "; u={";
  bool first = true;
  for (const auto& [alpha, u] : invariants_) {
    if (!first) s += ',';
    first = false;
    s += alpha.to_string() + ":" + u.to_string();
  }
  s += "}; div=" + div_rank_.to_string() + "; len=" + length_.to_string();
  return s;
}

UlmProfile UlmProfile::parse(std::string_view text) {
  auto fields = detail::split(detail::trim(text), ';');
  if (fields.size() != 4) throw ParseError("profile needs 'p=..; u={..}; div=..; len=..'");
  const std::uint64_t p = detail::parse_u64(detail::expect_key(fields[0], "p"), "p");
  std::string_view body = detail::unwrap(detail::expect_key(fields[1], "u"), '{', '}', "invariants");
  std::map<Ordinal, ExtendedCount> inv;
  std::optional<Ordinal> prev;
  if (!detail::trim(body).empty()) {
    for (auto entry : detail::split(body, ',')) {
      auto colon = entry.find(':');
      if (colon == std::string_view::npos) throw ParseError("invariant entry needs 'ordinal:count'");
      Ordinal alpha = Ordinal::parse(entry.substr(0, colon));
      if (prev && !(*prev < alpha)) throw ParseError("invariant keys must be strictly increasing");
      prev = alpha;
      inv.emplace(std::move(alpha), ExtendedCount::parse(entry.substr(colon + 1)));
    }
  }
  ExtendedCount div = ExtendedCount::parse(detail::expect_key(fields[2], "div"));
  Ordinal len = Ordinal::parse(detail::expect_key(fields[3], "len"));
  if (p > 0xffffffffULL) throw ParseError("p out of range");
  try {
    return UlmProfile(static_cast<std::uint32_t>(p), std::move(inv), div, std::move(len));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::uint64_t ulm_invariant(const ExplicitPGroup& g, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::count(g.exps().begin(), g.exps().end(), n + 1));
}

ExtendedCount ulm_invariant(const ExplicitPGroup& g, const Ordinal& alpha) {
  auto n = alpha.as_finite();
  return n ? ExtendedCount{ulm_invariant(g, *n)} : ExtendedCount{0};
}

std::uint64_t ulm_invariant_oracle(const ElementTableGroup& t, std::uint64_t n) {
  const auto lo = pn_subgroup_members(t, static_cast<std::uint32_t>(std::min<std::uint64_t>(n, 64)));
  std::vector<char> in_lo(t.size(), 0);
  for (auto a : lo) in_lo[a] = 1;
  std::vector<std::uint32_t> hi;
  {
    std::vector<char> hit(t.size(), 0);
    for (auto a : lo) hit[t.times_p(a)] = 1;
    for (std::uint32_t a = 0; a < t.size(); ++a)
      if (hit[a]) hi.push_back(a);
  }
  return log_p_exact(socle_count(t, lo), t.p()) - log_p_exact(socle_count(t, hi), t.p());
}

std::uint64_t ulm_invariant_oracle(const ExplicitPGroup& g, std::uint64_t n) {
  return ulm_invariant_oracle(to_element_table(g), n);
}

Ordinal length(const ExplicitPGroup& g) {
  return Ordinal::finite(g.exps().empty() ? 0 : g.exps().front());
}

std::uint32_t table_length(const ElementTableGroup& t) {
  std::uint32_t n = 0;
  auto cur = pn_subgroup_members(t, 0);
  for (;;) {
    auto next = pn_subgroup_members(t, n + 1);
    if (next.size() == cur.size()) return n;
    cur = std::move(next);
    ++n;
  }
}

UlmProfile profile_of(const ExplicitPGroup& g) {
  std::map<Ordinal, ExtendedCount> inv;
  for (auto k : g.exps()) {
    auto& slot = inv[Ordinal::finite(k - 1)];
    slot = slot + ExtendedCount{1};
  }
  return UlmProfile(g.p(), std::move(inv), ExtendedCount{g.div_rank()}, length(g));
}

bool iso_by_ulm(const ExplicitPGroup& a, const ExplicitPGroup& b) {
  if (a.p() != b.p()) throw DomainError("iso_by_ulm: groups over different primes");
  return profile_of(a) == profile_of(b);
}

UlmProfile profile_sum(const UlmProfile& a, const UlmProfile& b) {
  if (a.p() != b.p()) throw DomainError("profile_sum: different primes");
  std::map<Ordinal, ExtendedCount> inv = a.invariants();
  for (const auto& [alpha, u] : b.invariants()) inv[alpha] = inv[alpha] + u;
  const Ordinal& len = std::max(a.declared_length(), b.declared_length());
  return UlmProfile(a.p(), std::move(inv), a.div_rank() + b.div_rank(), len);
}

UlmProfile shift_profile(const UlmProfile& u, ExtendedCount m) {
  const Ordinal one = Ordinal::finite(1);
  std::map<Ordinal, ExtendedCount> inv;
  if (m != ExtendedCount{0}) inv.emplace(Ordinal{}, m);
  for (const auto& [alpha, v] : u.invariants()) inv.emplace(ord_add(one, alpha), v);
  const bool empty = m == ExtendedCount{0} && u.declared_length().is_zero();
  Ordinal len = empty ? Ordinal{} : ord_add(one, u.declared_length());
  return UlmProfile(u.p(), std::move(inv), u.div_rank(), std::move(len));
}

bool is_group_isomorphism(const ElementTableGroup& a, const ElementTableGroup& b, const Bijection& f) {
  if (a.size() != b.size() || f.size() != a.size()) return false;
  std::vector<char> seen(b.size(), 0);
  for (auto v : f) {
    if (v >= b.size() || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::uint32_t x = 0; x < a.size(); ++x)
    for (std::uint32_t y = 0; y < a.size(); ++y)
      if (f[a.add(x, y)] != b.add(f[x], f[y])) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> order_histogram(const ElementTableGroup& t) {
  std::vector<std::uint64_t> h;
  for (std::uint32_t a = 0; a < t.size(); ++a) {
    const auto e = t.order_exponent(a);
    if (h.size() <= e) h.resize(e + 1, 0);
    ++h[e];
  }
  return h;
}

std::vector<std::size_t> filtration_sizes(const ElementTableGroup& t) {
  std::vector<std::size_t> out;
  for (std::uint32_t n = 0;; ++n) {
    out.push_back(pn_subgroup_members(t, n).size());
    if (n > 0 && out[n] == out[n - 1]) return out;
  }
}

/// Backtracking isomorphism search. Generators of `a` are picked greedily
/// (largest order first, outside the subgroup generated so far); each level
/// extends the partial map over H_i = H_{i-1} + <g_i> and rejects on any
/// inconsistency or collision.
class IsoSearch {
 public:
  IsoSearch(const ElementTableGroup& a, const ElementTableGroup& b) : a_(a), b_(b) {
    std::vector<std::uint32_t> by_order(a.size());
    for (std::uint32_t i = 0; i < a.size(); ++i) by_order[i] = i;
    std::stable_sort(by_order.begin(), by_order.end(), [&](auto x, auto y) {
      return a.order_exponent(x) > a.order_exponent(y);
    });
    std::vector<char> in_h(a.size(), 0);
    in_h[a.zero()] = 1;
    std::vector<std::uint32_t> h{a.zero()};
    for (auto g : by_order) {
      if (in_h[g]) continue;
      gens_.push_back(g);
      std::vector<std::uint32_t> grown = h;
      for (auto base : h) {
        std::uint32_t e = a.add(base, g);
        while (!in_h[e]) {
          in_h[e] = 1;
          grown.push_back(e);
          e = a.add(e, g);
        }
      }
      h = std::move(grown);
    }
    map_.assign(a.size(), kUnset);
    used_.assign(b.size(), 0);
    map_[a.zero()] = b.zero();
    used_[b.zero()] = 1;
    domain_.push_back(a.zero());
  }

  /// Visits isomorphisms until `visit` returns false.
  void run(const std::function<bool(const Bijection&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    recurse(0);
  }

 private:
  static constexpr std::uint32_t kUnset = 0xffffffffu;

  void recurse(std::size_t level) {
    if (stop_) return;
    if (level == gens_.size()) {
      if (domain_.size() == a_.size() && is_group_isomorphism(a_, b_, map_)) stop_ = !(*visit_)(map_);
      return;
    }
    const std::uint32_t g = gens_[level];
    for (std::uint32_t t = 0; t < b_.size() && !stop_; ++t) {
      if (used_[t] || b_.order_exponent(t) != a_.order_exponent(g)) continue;
      const std::size_t mark = domain_.size();
      if (extend(g, t)) recurse(level + 1);
      for (std::size_t i = mark; i < domain_.size(); ++i) {
        used_[map_[domain_[i]]] = 0;
        map_[domain_[i]] = kUnset;
      }
      domain_.resize(mark);
    }
  }

  // Extends the map over H + <g> with g -> t. The images of h + c*g are
  // phi(h) + c*t; any clash with an existing assignment fails.
  bool extend(std::uint32_t g, std::uint32_t t) {
    const std::size_t base_count = domain_.size();
    std::vector<std::uint32_t> layer(domain_.begin(), domain_.begin() + static_cast<std::ptrdiff_t>(base_count));
    const std::uint32_t ord = a_.order_exponent(g);
    std::uint64_t steps = 1;
    for (std::uint32_t i = 0; i < ord; ++i) steps *= a_.p();
    for (std::uint64_t c = 1; c < steps; ++c) {
      for (auto& x : layer) {
        const std::uint32_t nx = a_.add(x, g);
        const std::uint32_t img = b_.add(map_[x], t);
        x = nx;
        if (map_[nx] != kUnset) {
          if (map_[nx] != img) return false;
          continue;
        }
        if (used_[img]) return false;
        map_[nx] = img;
        used_[img] = 1;
        domain_.push_back(nx);
      }
    }
    return true;
  }

  const ElementTableGroup& a_;
  const ElementTableGroup& b_;
  std::vector<std::uint32_t> gens_;
  Bijection map_;
  std::vector<char> used_;
  std::vector<std::uint32_t> domain_;
  const std::function<bool(const Bijection&)>* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace

std::optional<Bijection> brute_force_group_iso(const ElementTableGroup& a, const ElementTableGroup& b,
                                               IsoSearchOptions options) {
  if (a.size() != b.size()) return std::nullopt;
  if (options.prune_by_statistics) {
    if (order_histogram(a) != order_histogram(b)) return std::nullopt;
    if (filtration_sizes(a) != filtration_sizes(b)) return std::nullopt;
  }
  std::optional<Bijection> found;
  IsoSearch search(a, b);
  search.run([&](const Bijection& f) {
    found = f;
    return false;
  });
  return found;
}

std::uint64_t count_group_isos(const ElementTableGroup& a, const ElementTableGroup& b) {
  if (a.size() != b.size()) return 0;
  std::uint64_t count = 0;
  IsoSearch search(a, b);
  search.run([&](const Bijection&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace ulmforge
