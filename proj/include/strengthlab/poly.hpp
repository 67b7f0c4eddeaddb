#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strengthlab/field.hpp"

namespace strengthlab {

/// Exponent vector of a monomial; x1 is exps[0].
struct MultiIndex {
  std::vector<std::uint32_t> exps;

  unsigned degree() const noexcept;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Graded-lex order, largest first: higher total degree wins, ties broken by
/// comparing exponents of x1, x2, ... in turn.
struct GradedLexGreater {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept;
};

/// All monomials of total degree d in n variables, largest first.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned d);

struct VectorPoint {
  std::vector<Elem> coords;

  friend bool operator==(const VectorPoint&, const VectorPoint&) = default;
};

/// Coordinates of V = F_q^n with points encoded base q, x1 least significant.
class PointSpace {
 public:
  PointSpace(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return n_; }
  /// q^n
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t encode(const VectorPoint& x) const;
  VectorPoint decode(std::uint64_t index) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;

  /// One representative per line through 0: first nonzero coordinate is 1.
  std::vector<VectorPoint> projective_points() const;

 private:
  Field field_;
  std::size_t n_;
  std::uint64_t size_;
};

/// Multivariate polynomial over F_q in sparse form. Zero coefficients are
/// never stored.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Elem, GradedLexGreater>;

  Polynomial(Field field, std::size_t n) : field_(std::move(field)), n_(n) {}

  const Field& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// nullopt stands for the degree of the zero polynomial.
  std::optional<unsigned> degree() const noexcept;
  /// The zero polynomial counts as homogeneous of every degree.
  bool is_homogeneous() const noexcept;
  Elem coefficient(const MultiIndex& m) const;

  /// Adds c * x^m into the polynomial.
  void add_term(const MultiIndex& m, Elem c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(Elem c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const Polynomial& o) const;

  Field field_;
  std::size_t n_;
  Terms terms_;
};

/// Grammar: sum of terms, each a '*'-separated product of integers and
/// x<i>[^e] factors (plus a[^k] for the generator of F_{p^s}). Coefficients
/// reduce mod p; repeated monomials merge.
Polynomial parse(std::string_view text, const Field& field, std::size_t n);
Polynomial parse(std::string_view text, std::uint64_t p, std::size_t n);

/// Inverse of parse: graded-lex order, highest degree first.
std::string to_string(const Polynomial& P);

Elem evaluate(const Polynomial& P, const VectorPoint& x);

/// x -> P(x + t) - P(x), expanded symbolically.
Polynomial delta(const Polynomial& P, const VectorPoint& t);

/// sum_i t_i dP/dx_i
Polynomial directional_derivative(const Polynomial& P, const VectorPoint& t);

Polynomial homogeneous_part(const Polynomial& P, unsigned d);

/// x -> P(A x), A an n x n matrix given row by row.
Polynomial compose_linear(const Polynomial& P, const std::vector<std::vector<Elem>>& A);

/// Linear form sum_i c_i x_i.
Polynomial linear_form(const Field& field, const std::vector<Elem>& coeffs);

inline constexpr std::uint64_t kDefaultTableCap = 244140625;  // 5^12

/// P evaluated on every point of V, indexed by PointSpace::encode.
struct ValueTable {
  Field field;
  std::size_t n = 0;
  std::vector<Elem> values;

  Elem operator[](std::uint64_t index) const { return values[index]; }
  std::uint64_t size() const noexcept { return values.size(); }
};

ValueTable value_table(const Polynomial& P, std::uint64_t cap = kDefaultTableCap);

/// Same as P's coefficient map restricted to the given monomial list.
std::vector<Elem> coefficient_vector(const Polynomial& P, const std::vector<MultiIndex>& basis);
Polynomial from_coefficients(const Field& field, std::size_t n, const std::vector<MultiIndex>& basis,
                             const std::vector<Elem>& coeffs);

}  // namespace strengthlab
