#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strengthlab/poly.hpp"

namespace strengthlab {

/// Degrees (e, d - e) of one summand L * R, with 1 <= e <= d - e.
struct DegreePattern {
  unsigned low = 0;
  unsigned high = 0;

  friend bool operator==(const DegreePattern&, const DegreePattern&) = default;
};

struct RankSummand {
  Polynomial L;  // leading coefficient 1 in graded-lex order
  Polynomial R;
};

/// What an unsuccessful search covered: every tuple of distinct normalized
/// lower-degree factors for each summand count up to the reported level.
struct ExhaustionRecord {
  std::vector<DegreePattern> patterns;
  std::uint64_t tuples_searched = 0;
};

struct RankResult {
  /// nullopt means the rank exceeds `searched_up_to`.
  std::optional<unsigned> rank;
  unsigned searched_up_to = 0;
  std::vector<RankSummand> certificate;
  ExhaustionRecord exhaustion;
  std::uint32_t p = 0;
  unsigned s = 1;  // field searched is F_{p^s}
  std::string method;  // "zero", "quadratic" or "exhaustive"
};

/// Rechecks sum L_i R_i == P with plain polynomial arithmetic, plus the
/// shape constraints on each factor.
bool verify_certificate(const Polynomial& P, const RankResult& result);

inline constexpr std::uint64_t kDefaultRankBudget = 100'000'000ULL;

struct RankOptions {
  std::uint64_t budget = kDefaultRankBudget;  // max factor tuples per search
  unsigned threads = 0;
};

/// Rank of a quadratic form over its own field via the Witt decomposition:
/// rank = matrix rank minus Witt index. Certificate from splitting off
/// hyperbolic planes, then anisotropic squares.
RankResult quadratic_rank(const Polynomial& Q);

/// Minimal r <= r_max with P = sum_{i<=r} L_i R_i over P's field, by
/// enumerating normalized lower-degree factors and solving for cofactors.
RankResult exhaustive_rank(const Polynomial& P, unsigned r_max, const RankOptions& options = {});

/// Rank of the degree-d part of P (d defaults to deg P).
RankResult rank(const Polynomial& P, std::optional<unsigned> d = std::nullopt,
                const RankOptions& options = {});

struct ProfileEntry {
  VectorPoint direction;
  unsigned rank = 0;
  bool zero_derivative = false;
};

struct DerivativeProfile {
  unsigned max_rank = 0;
  std::vector<ProfileEntry> entries;  // one per projective direction
  std::vector<VectorPoint> zero_directions;
};

/// t -> rank of the derivative of the degree-d part of P along t, over one
/// representative per projective direction.
DerivativeProfile derivative_rank_profile(const Polynomial& P, std::optional<unsigned> d = std::nullopt,
                                          const RankOptions& options = {});

/// P (over F_p) viewed over F_{p^s}.
Polynomial embed(const Polynomial& P, const Field& target);

/// Exhaustive rank of the degree-d part of P searched over F_{p^s}.
RankResult rank_over_extension(const Polynomial& P, unsigned s, std::optional<unsigned> d = std::nullopt,
                               const RankOptions& options = {});

struct ExtensionRankSummary {
  std::vector<RankResult> results;
  /// Minimum found rank over the searched fields; an upper bound for the
  /// rank over the algebraic closure.
  std::optional<unsigned> closure_upper_bound;
};

ExtensionRankSummary rank_over_extensions(const Polynomial& P, const std::vector<unsigned>& degrees,
                                          std::optional<unsigned> d = std::nullopt,
                                          const RankOptions& options = {});

}  // namespace strengthlab
