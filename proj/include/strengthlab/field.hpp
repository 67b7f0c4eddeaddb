#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "strengthlab/error.hpp"

namespace strengthlab {

/// Canonical field element code. For F_p this is the least nonnegative
/// residue; for F_{p^s} it is sum_k c_k p^k over the polynomial-basis
/// coefficients c_0..c_{s-1}.
using Elem = std::uint32_t;

/// Largest extension field the library constructs.
inline constexpr std::uint64_t kExtensionSizeCap = std::uint64_t{1} << 20;

class PrimeModulus {
 public:
  /// Throws NotPrime unless 2 <= p <= 2^31 and p is prime.
  explicit PrimeModulus(std::uint64_t p);

  std::uint32_t value() const noexcept { return p_; }

  Elem reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem add(Elem a, Elem b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : p_ - (b - a); }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(std::uint64_t{a} * b % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// Throws ZeroInverse for a == 0.
  Elem inv(Elem a) const;

  /// Enforces char > d; throws CharTooSmall naming the caller.
  void require_char_above(unsigned d, const std::string& context) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

class FieldElement {
 public:
  FieldElement(std::int64_t value, PrimeModulus modulus)
      : residue_(modulus.reduce(value)), modulus_(modulus) {}

  Elem residue() const noexcept { return residue_; }
  const PrimeModulus& modulus() const noexcept { return modulus_; }

  FieldElement operator+(const FieldElement& o) const {
    return from_residue(modulus_.add(residue_, o.residue_));
  }
  FieldElement operator-(const FieldElement& o) const {
    return from_residue(modulus_.sub(residue_, o.residue_));
  }
  FieldElement operator*(const FieldElement& o) const {
    return from_residue(modulus_.mul(residue_, o.residue_));
  }
  FieldElement operator-() const { return from_residue(modulus_.neg(residue_)); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement from_residue(Elem r) const { return FieldElement(r, modulus_); }

  Elem residue_;
  PrimeModulus modulus_;
};

/// Multiplicative inverse; throws ZeroInverse for 0.
FieldElement inv(const FieldElement& a);

/// Lexicographically smallest monic irreducible polynomial of degree s over
/// F_p, ordered by (c_{s-1}, ..., c_0). Returned low-to-high, leading 1
/// included.
std::vector<Elem> find_irreducible(const PrimeModulus& p, unsigned s);

/// True iff the monic polynomial (low-to-high) has no factor of degree
/// <= deg/2, via gcd(f, x^{p^k} - x) = 1.
bool is_irreducible(const PrimeModulus& p, const std::vector<Elem>& monic);

struct ExtElement {
  std::vector<Elem> coeffs;  // polynomial basis, length s

  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

/// F_{p^s} = F_p[x]/(f). Holds log/exp tables for fast multiplication on
/// element codes.
class ExtensionField {
 public:
  /// Uses find_irreducible(p, s). Throws InvalidDegree for s < 2 and
  /// SizeCap when p^s exceeds kExtensionSizeCap.
  ExtensionField(PrimeModulus p, unsigned s);
  /// Explicit modulus; throws InvalidArgument if it is not irreducible.
  ExtensionField(PrimeModulus p, std::vector<Elem> modulus_poly);

  const PrimeModulus& base() const noexcept { return base_; }
  unsigned degree() const noexcept { return s_; }
  std::uint32_t size() const noexcept { return q_; }
  const std::vector<Elem>& modulus_poly() const noexcept { return modulus_; }

  ExtElement embed(Elem residue) const;
  ExtElement generator() const;  // the class of x
  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  ExtElement pow(ExtElement a, std::uint64_t e) const;

  /// tr(a) = sum_{k<s} a^{p^k}, by explicit Frobenius powers.
  FieldElement trace(const ExtElement& a) const;

  Elem encode(const ExtElement& a) const;
  ExtElement decode(Elem code) const;

  // table-backed arithmetic on codes
  Elem mul_code(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t k = log_[a] + log_[b];
    if (k >= q_ - 1) k -= q_ - 1;
    return exp_[k];
  }
  Elem inv_code(Elem a) const;
  /// Discrete log to the table generator; a must be nonzero.
  std::uint32_t log_code(Elem a) const noexcept { return log_[a]; }
  Elem exp_code(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }
  /// Trace of the basis element x^k, k < s.
  Elem basis_trace(unsigned k) const noexcept { return basis_trace_[k]; }

 private:
  void build_tables();

  PrimeModulus base_;
  unsigned s_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> basis_trace_;
};

inline FieldElement trace(const ExtensionField& field, const ExtElement& a) {
  return field.trace(a);
}

/// Runtime handle for F_q, q = p^s, with elements as Elem codes. Cheap to
/// copy; the extension tables are shared and immutable.
class Field {
 public:
  explicit Field(PrimeModulus p) : p_(p) {}
  explicit Field(std::shared_ptr<const ExtensionField> ext);

  static Field prime(std::uint64_t p) { return Field(PrimeModulus(p)); }
  /// s == 1 gives the prime field.
  static Field of_degree(std::uint64_t p, unsigned s);

  const PrimeModulus& modulus() const noexcept { return p_; }
  std::uint32_t characteristic() const noexcept { return p_.value(); }
  unsigned degree() const noexcept { return ext_ ? ext_->degree() : 1; }
  std::uint32_t size() const noexcept { return ext_ ? ext_->size() : p_.value(); }
  const ExtensionField* extension() const noexcept { return ext_.get(); }

  Elem from_int(std::int64_t v) const noexcept { return p_.reduce(v); }

  Elem add(Elem a, Elem b) const noexcept {
    return ext_ ? digitwise(a, b, false) : p_.add(a, b);
  }
  Elem sub(Elem a, Elem b) const noexcept {
    return ext_ ? digitwise(a, b, true) : p_.sub(a, b);
  }
  Elem neg(Elem a) const noexcept { return sub(0, a); }
  Elem mul(Elem a, Elem b) const noexcept {
    return ext_ ? ext_->mul_code(a, b) : p_.mul(a, b);
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// Throws ZeroInverse for 0.
  Elem inv(Elem a) const;
  /// Square root if a is a square (the smaller-coded root), else nullopt.
  std::optional<Elem> sqrt(Elem a) const;
  /// Absolute trace to F_p, as a residue.
  Elem trace(Elem a) const noexcept;

  std::vector<Elem> digits(Elem a) const;
  Elem from_digits(const std::vector<Elem>& digits) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.degree() == b.degree();
  }

 private:
  Elem digitwise(Elem a, Elem b, bool subtract) const noexcept;

  PrimeModulus p_;
  std::shared_ptr<const ExtensionField> ext_;
};

}  // namespace strengthlab
