#pragma once

// Small scanning helpers shared by the text-format parsers.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ulmforge/error.hpp"

namespace ulmforge::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("expected natural number for " + std::string(what) + ", got '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Splits "a, (b,c), d" on top-level commas only.
inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && (s[i] == '(' || s[i] == '[' || s[i] == '{')) ++depth;
    if (i < s.size() && (s[i] == ')' || s[i] == ']' || s[i] == '}')) --depth;
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Strips `open`...`close` around s (after trimming); throws if absent.
inline std::string_view unwrap(std::string_view s, char open, char close, std::string_view what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw ParseError("expected " + std::string(1, open) + "..." + std::string(1, close) + " around " +
                     std::string(what));
  return s.substr(1, s.size() - 2);
}

/// Parses "key=value", checking the key.
inline std::string_view expect_key(std::string_view field, std::string_view key) {
  field = trim(field);
  auto eq = field.find('=');
  if (eq == std::string_view::npos || trim(field.substr(0, eq)) != key)
    throw ParseError("expected field '" + std::string(key) + "=' in '" + std::string(field) + "'");
  return trim(field.substr(eq + 1));
}

}  // namespace ulmforge::detail
