#include <set>

#include "text_util.hpp"
#include "ulmforge/tp.hpp"

namespace ulmforge {

using detail::parse_u64;
using detail::split;
using detail::split_top_level;
using detail::trim;
using detail::unwrap;

std::string LpStructure::to_string() const {
  std::string out = "p=" + std::to_string(p_) + "; N=" + std::to_string(n_) + "; zero=" + std::to_string(zero_) + "\n";
  for (const auto& [n, xs] : r_) {
    out += "R" + std::to_string(n) + " = {";
    bool first = true;
    for (auto x : xs) {
      out += (first ? "" : ",") + std::to_string(x);
      first = false;
    }
    out += "}\n";
  }
  for (const auto& [k, ts] : p_rel_) {
    out += "P[" + std::to_string(k.l) + "," + std::to_string(k.m) + "->" + std::to_string(k.n) + "] = {";
    bool first = true;
    for (const auto& t : ts) {
      out += (first ? "(" : ",(") + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
      first = false;
    }
    out += "}\n";
  }
  return out;
}

namespace {

std::uint32_t parse_u32(std::string_view s, std::string_view what) {
  const auto v = parse_u64(s, what);
  if (v > 0xffffffffu) throw ParseError(std::string(what) + " out of range");
  return static_cast<std::uint32_t>(v);
}

std::vector<std::string_view> set_items(std::string_view body) {
  body = trim(body);
  if (body.empty()) return {};
  return split_top_level(body, ',');
}

}  // namespace

LpStructure LpStructure::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty() && line.front() != '#') lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty structure text");
  const auto head = split(lines.front(), ';');
  if (head.size() != 3) throw ParseError("header must read 'p=..; N=..; zero=..'");
  const auto p = parse_u32(detail::expect_key(head[0], "p"), "p");
  const auto n = parse_u32(detail::expect_key(head[1], "N"), "N");
  const auto zero = parse_u32(detail::expect_key(head[2], "zero"), "zero");
  if (!is_prime(p)) throw ParseError("p = " + std::to_string(p) + " is not prime");
  if (zero >= n) throw ParseError("zero index outside the domain");
  LpStructure s(p, n, zero);
  auto index = [&](std::string_view v) {
    const auto x = parse_u32(v, "element");
    if (x >= n) throw ParseError("element " + std::to_string(x) + " outside the domain");
    return x;
  };
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'name = {...}' in '" + std::string(line) + "'");
    const auto name = trim(line.substr(0, eq));
    const auto body = unwrap(line.substr(eq + 1), '{', '}', "relation contents");
    if (name.size() >= 2 && name.front() == 'R') {
      const auto r = parse_u32(name.substr(1), "R index");
      if (!seen.insert("R" + std::to_string(r)).second) throw ParseError("R" + std::to_string(r) + " given twice");
      for (auto item : set_items(body)) s.r_[r].insert(index(item));
    } else if (name.size() >= 2 && name.front() == 'P') {
      const auto inner = unwrap(name.substr(1), '[', ']', "P index");
      const auto arrow = inner.find("->");
      if (arrow == std::string_view::npos) throw ParseError("P index must read [l,m->n]");
      const auto lm = split(inner.substr(0, arrow), ',');
      if (lm.size() != 2) throw ParseError("P index must read [l,m->n]");
      const PKey key{parse_u32(lm[0], "l"), parse_u32(lm[1], "m"), parse_u32(inner.substr(arrow + 2), "n")};
      if (key.n > std::max(key.l, key.m)) throw ParseError("P index n must be <= max(l, m)");
      const auto tag = "P" + std::to_string(key.l) + "," + std::to_string(key.m) + "," + std::to_string(key.n);
      if (!seen.insert(tag).second) throw ParseError("P[" + std::string(inner) + "] given twice");
      for (auto item : set_items(body)) {
        const auto parts = split(unwrap(item, '(', ')', "triple"), ',');
        if (parts.size() != 3) throw ParseError("triples need three entries");
        s.p_rel_[key].insert({index(parts[0]), index(parts[1]), index(parts[2])});
      }
    } else {
      throw ParseError("unknown relation '" + std::string(name) + "'");
    }
  }
  // Empty relation lines are accepted but not stored.
  std::erase_if(s.r_, [](const auto& kv) { return kv.second.empty(); });
  std::erase_if(s.p_rel_, [](const auto& kv) { return kv.second.empty(); });
  return s;
}

}  // namespace ulmforge
