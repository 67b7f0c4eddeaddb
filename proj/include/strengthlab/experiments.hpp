#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strengthlab/analytic.hpp"
#include "strengthlab/poly.hpp"
#include "strengthlab/rank.hpp"

namespace strengthlab {

/// Counter-based generator: word k of stream s is
/// splitmix64_mix(seed + golden * (s * 2^32 + k + 1)), golden = 0x9E3779B97F4A7C15.
/// Uniform residues use rejection below the largest multiple of the range.
class CounterRng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64-counter";

  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_word();
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Nonzero homogeneous polynomial of degree d with independent uniform
/// coefficients; all-zero draws are redrawn from the same stream.
Polynomial random_homogeneous(const Field& field, std::size_t n, unsigned d, CounterRng& rng);
/// Uniform polynomial of degree <= d (possibly zero).
Polynomial random_polynomial(const Field& field, std::size_t n, unsigned d, CounterRng& rng);

struct ExperimentOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t rank_budget = kDefaultRankBudget;
  unsigned threads = 0;
};

struct CheckTally {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
};

struct VerificationFailure {
  std::string check;
  std::uint64_t trial = 0;
  Polynomial poly{Field::prime(2), 0};
  std::string detail;
};

struct VerificationReport {
  std::uint32_t p = 0;
  std::size_t n = 0;
  unsigned d = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckTally> checks;  // fixed order, see verify_identities
  std::uint64_t exceptional_directions = 0;  // directions with vanishing derivative
  std::optional<VerificationFailure> first_failure;

  bool all_passed() const;
};

/// Per sampled polynomial: diagonal reconstruction, direct vs recursive U_d
/// count vectors, exact top-degree Gowers value, derivative vs difference
/// rank at every projective direction, and invariance of U_d counts under
/// adding a random polynomial of degree <= d - 1.
VerificationReport verify_identities(std::uint32_t p, std::size_t n, unsigned d, std::uint64_t trials,
                                     std::uint64_t seed, const ExperimentOptions& options = {});

enum class ScanMode { Exhaustive, Sample };

inline constexpr std::uint64_t kDefaultScanBudget = 1'000'000;

struct ScanRecord {
  std::uint32_t p = 0;
  std::size_t n = 0;
  unsigned d = 0;
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t index = 0;  // coefficient-vector index, or sample number
  std::uint64_t seed = 0;   // sample mode only
  Polynomial poly{Field::prime(2), 0};
  unsigned max_derivative_rank = 0;
  unsigned rank = 0;
  Rational gowers_top;
};

struct ScanParams {
  std::uint32_t p = 5;
  std::size_t n = 2;
  unsigned d = 3;
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t samples = 0;  // sample mode
  std::uint64_t seed = 0;     // sample mode
  std::uint64_t budget = kDefaultScanBudget;  // max coefficient vectors, exhaustive mode
};

/// Exhaustive mode walks coefficient vectors by index: digit k (base p, least
/// significant first) is the coefficient of the k-th degree-d monomial in
/// graded-lex order. Index 0 (the zero polynomial) is skipped.
std::vector<ScanRecord> scan(const ScanParams& params, const ExperimentOptions& options = {});

/// Recomputes every field of a record from its polynomial.
ScanRecord recompute_record(const ScanRecord& record, const ExperimentOptions& options = {});

struct EmpiricalCRow {
  unsigned r = 0;
  std::uint64_t count = 0;          // records with max_derivative_rank <= r
  std::optional<unsigned> max_rank;  // empty bucket: nullopt
  std::optional<std::size_t> witness;  // position in the record list
};

struct GowersTopMinimum {
  unsigned rank = 0;
  std::uint64_t count = 0;
  Rational minimum;
  std::size_t witness = 0;
};

struct EmpiricalCTable {
  std::uint32_t p = 0;
  std::size_t n = 0;
  unsigned d = 0;
  std::vector<EmpiricalCRow> rows;
  std::vector<GowersTopMinimum> gowers_top_minima;  // per rank bucket
};

/// Row r: the largest rank among records whose derivative profile max is
/// <= r; the first record attaining it is the witness. Throws
/// MixedParameters when records disagree on (p, n, d).
EmpiricalCTable empirical_C(const std::vector<ScanRecord>& records);

}  // namespace strengthlab
