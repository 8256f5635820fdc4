#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ulmforge/pgroup.hpp"
#include "ulmforge/reduction.hpp"
#include "ulmforge/tp.hpp"

namespace ulmforge {

/// Bounds for the generated group corpus. Identical specs give identical
/// corpora; `seed` drives sampling and the random relabelings.
struct CorpusSpec {
  std::vector<std::uint32_t> primes{2, 3};
  std::uint32_t max_summands = 3;
  std::uint32_t max_exponent = 3;
  std::uint32_t max_div_rank = 1;
  std::uint32_t max_m = 2;
  std::uint64_t max_size = 32;   ///< bound on |finite part|
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;  ///< groups kept per prime (seeded sample when fewer than generated)
  std::uint32_t denom_bound = 3;
  bool inject_mutations = false;

  bool operator==(const CorpusSpec&) const = default;
  /// "primes=2,3; max_summands=3; ..." on one line.
  std::string to_string() const;
  static CorpusSpec parse(std::string_view text);
};

/// Every finite group with |G| <= max_size for the prime p, exps descending,
/// ordered by size then exps.
std::vector<ExplicitPGroup> finite_groups(std::uint32_t p, std::uint64_t max_size);

std::vector<ExplicitPGroup> corpus_groups(const CorpusSpec& spec);

/// Structures built to break one axiom schema. `expected` lists every schema
/// the checker should report; for (A4) it cannot be a singleton, because the
/// (A7) instance through the missing sum fails with it.
struct MutationFixture {
  std::string name;
  int target = 0;
  std::vector<int> expected;
  LpStructure structure;
};

std::vector<MutationFixture> mutation_fixtures();

/// Runs the cross-module checks on the corpus. Lines are in corpus order.
std::vector<LedgerLine> run_selftest(const CorpusSpec& spec);

/// A seeded permutation of 0..n-1 fixing nothing in particular.
std::vector<std::uint32_t> random_permutation(std::uint32_t n, std::uint64_t seed);

}  // namespace ulmforge
