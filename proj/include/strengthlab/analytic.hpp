#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strengthlab/calculus.hpp"
#include "strengthlab/poly.hpp"
#include "strengthlab/util.hpp"

namespace strengthlab {

/// Exact tally counts[j] = #{x : tr F(x) = j}. Every character average of F
/// is a function of this vector, so identities between averages can be
/// checked as integer identities.
struct CharacterCountVector {
  std::uint32_t p = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  /// sum_j counts_j cos(2 pi j / p) / total
  double real_average() const;
  /// |sum_j counts_j e_p(j)| / total
  double magnitude() const;

  CharacterCountVector& operator+=(const CharacterCountVector& o);
  friend bool operator==(const CharacterCountVector&, const CharacterCountVector&) = default;
};

/// Bound on the floating-point error of real_average()/magnitude().
double character_error_bound(std::uint32_t p);

/// ||psi(F)||_{U_m}^{2^m} as exact counts plus its real value.
struct NormValue {
  unsigned m = 0;
  CharacterCountVector counts;
  double value = 0.0;        // the 2^m-th power
  double error_bound = 0.0;  // absolute, on value

  /// value^{1/2^m}, clamped at 0.
  double norm() const;
};

class Rational {
 public:
  Rational() = default;
  /// Throws InvalidArgument for a zero denominator.
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000'000ULL;

struct AnalyticOptions {
  std::uint64_t budget = kDefaultBudget;  // max tuple evaluations
  unsigned threads = 0;                   // 0: resolve_threads default
};

CharacterCountVector bias_counts(const ValueTable& F);

/// Direct enumeration over all (v, v_1, ..., v_m). Requires m >= 1.
NormValue gowers_norm(const ValueTable& F, unsigned m, const AnalyticOptions& options = {});

/// Same quantity, grouped as the average over t of the U_{m-1} counts of
/// the symbolic difference P(x + t) - P(x). For m = 1 the inner quantity is
/// the plain bias count.
NormValue gowers_recursive(const Polynomial& P, unsigned m, const AnalyticOptions& options = {});

/// E_{x_1..x_d} psi(M(x_1, ..., x_d)) exactly: the fraction of
/// (x_1, ..., x_{d-1}) for which M(x_1, ..., x_{d-1}, .) vanishes.
Rational multilinear_bias(const MultilinearForm& M, const AnalyticOptions& options = {});

/// ||psi(P)||_{U_d}^{2^d} = multilinear_bias of the polarization of the
/// degree-d part of P. d defaults to deg P. Requires char > d.
Rational gowers_top_exact(const Polynomial& P, std::optional<unsigned> d = std::nullopt,
                          const AnalyticOptions& options = {});

}  // namespace strengthlab
