#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "strengthlab/poly.hpp"

namespace strengthlab {

/// Symmetric d-linear form on V^d. A sorted index tuple K with coefficient c
/// contributes c * x_1[i_1] * ... * x_d[i_d] for every distinct rearrangement
/// (i_1, ..., i_d) of K, so symmetry holds by construction.
class MultilinearForm {
 public:
  using Key = std::vector<std::uint32_t>;

  MultilinearForm(Field field, unsigned d, std::size_t n) : field_(std::move(field)), d_(d), n_(n) {}

  const Field& field() const noexcept { return field_; }
  unsigned arity() const noexcept { return d_; }
  std::size_t num_vars() const noexcept { return n_; }
  const std::map<Key, Elem>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Key may be in any order; it is sorted before storage.
  void add(Key key, Elem c);
  Elem coefficient(Key key) const;

  /// Full coefficient tensor, row-major with slot 1 most significant.
  std::vector<Elem> dense() const;

  friend bool operator==(const MultilinearForm& a, const MultilinearForm& b) {
    return a.field_ == b.field_ && a.d_ == b.d_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Field field_;
  unsigned d_;
  std::size_t n_;
  std::map<Key, Elem> coeffs_;
};

/// Pointwise m-fold difference D_{t_m} ... D_{t_1} F.
ValueTable iterated_delta(const ValueTable& F, const std::vector<VectorPoint>& ts);

/// Polarization of a homogeneous degree-d polynomial, computed symbolically.
/// Requires char > d.
MultilinearForm multilinearize(const Polynomial& P);
/// Declared-degree variant; needed when P may be zero.
MultilinearForm multilinearize(const Polynomial& P, unsigned d);

/// (d!)^{-1} M(x, ..., x). Requires char > d.
Polynomial diagonal_reconstruct(const MultilinearForm& M);

Elem evaluate_form(const MultilinearForm& M, const std::vector<VectorPoint>& xs);

/// M as a polynomial on V^d in n*d variables; slot j owns x_{j*n+1}..x_{(j+1)*n}.
Polynomial form_to_polynomial(const MultilinearForm& M);

}  // namespace strengthlab
