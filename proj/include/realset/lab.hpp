#pragma once

// Desk-scale experiments across bases.

#include <optional>
#include <string>
#include <vector>

#include "realset/rna.hpp"

namespace realset {

/// Reals with two encodings in base t, as a co-Buchi RNA.
RNA dual_set(Base t);

/// Seeded, stratified rationals: base primes, foreign primes and mixed denominators.
std::vector<Rational> rational_battery(Base r, Base s, std::size_t n, std::uint64_t seed);

/// Membership of every sample; OpenMP-parallel.
std::vector<char> member_batch(const RNA& a, const std::vector<Rational>& xs);
/// Serial reference of member_batch.
std::vector<char> member_batch_serial(const RNA& a, const std::vector<Rational>& xs);

struct CrossBaseReport {
  std::uint32_t base_r = 0, base_s = 0;
  std::size_t samples = 0, agreements = 0;
  std::optional<Rational> witness;  // first disagreeing sample
  TopClassKind verdict_r = TopClassKind::Weak, verdict_s = TopClassKind::Weak;
  bool full_agreement() const { return agreements == samples; }
};

CrossBaseReport cross_base_compare(const RNA& a, const RNA& b, std::size_t n, std::uint64_t seed);
CrossBaseReport cross_base_compare_serial(const RNA& a, const RNA& b, std::size_t n, std::uint64_t seed);

struct OscillationWitness {
  std::vector<Rational> x, eps;  // eps[i] bounds |x[i] - x[i+1]|
  std::vector<bool> inside;
  /// Rechecks alternation, distances and memberships with fresh member calls.
  bool verify(const RNA& a) const;
};

/// Steps satisfy eps[i+1] < |x[i] - x[i+1]| <= eps[i], eps[i] = 2·r^(-(i+1)·g).
std::optional<OscillationWitness> oscillation_witness(const RNA& a, unsigned depth, unsigned granularity = 2,
                                                      std::size_t budget = 20000);

/// Formulas (over x) used by the definability experiments.
const std::vector<std::string>& definable_corpus();

struct SuiteRow {
  std::string experiment;
  std::uint32_t base_r, base_s;
  std::string verdict;
  std::string witness;
  bool ok;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::optional<StabilityReport> stability;
  bool ok() const;
  std::string text() const;  // key: value lines
  std::string csv() const;   // experiment,base_r,base_s,verdict,witness
};

SuiteReport run_cobham_suite(Base r, Base s, std::uint64_t seed = 1);

}  // namespace realset
