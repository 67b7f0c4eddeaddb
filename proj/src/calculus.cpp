#include "strengthlab/calculus.hpp"

#include <algorithm>

namespace strengthlab {

void MultilinearForm::add(Key key, Elem c) {
  if (key.size() != d_) fail(ErrorKind::ArityMismatch, "form key has wrong arity");
  for (auto i : key) {
    if (i >= n_) fail(ErrorKind::IndexOutOfRange, "form key index out of range");
  }
  if (c == 0) return;
  std::sort(key.begin(), key.end());
  auto [it, inserted] = coeffs_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) coeffs_.erase(it);
  }
}

Elem MultilinearForm::coefficient(Key key) const {
  std::sort(key.begin(), key.end());
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? 0 : it->second;
}

std::vector<Elem> MultilinearForm::dense() const {
  std::size_t total = 1;
  for (unsigned j = 0; j < d_; ++j) total *= n_;
  std::vector<Elem> out(total, 0);
  for (const auto& [key, c] : coeffs_) {
    Key perm = key;
    do {
      std::size_t index = 0;
      for (auto i : perm) index = index * n_ + i;
      out[index] = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

ValueTable iterated_delta(const ValueTable& F, const std::vector<VectorPoint>& ts) {
  PointSpace space(F.field, F.n);
  const std::size_t m = ts.size();
  std::vector<std::uint64_t> steps;
  for (const auto& t : ts) steps.push_back(space.encode(t));  // checks dimension

  // offsets[S] = sum_{i in S} t_i
  std::vector<std::uint64_t> offsets(std::size_t{1} << m, 0);
  for (std::size_t S = 1; S < offsets.size(); ++S) {
    const unsigned low = static_cast<unsigned>(__builtin_ctzll(S));
    offsets[S] = space.add(offsets[S & (S - 1)], steps[low]);
  }
  const Field& f = F.field;
  ValueTable out{f, F.n, std::vector<Elem>(F.size(), 0)};
  for (std::uint64_t v = 0; v < F.size(); ++v) {
    Elem acc = 0;
    for (std::size_t S = 0; S < offsets.size(); ++S) {
      const Elem value = F[space.add(v, offsets[S])];
      const bool negative = (m - static_cast<std::size_t>(__builtin_popcountll(S))) % 2 == 1;
      acc = negative ? f.sub(acc, value) : f.add(acc, value);
    }
    out.values[v] = acc;
  }
  return out;
}

MultilinearForm multilinearize(const Polynomial& P) {
  const auto degree = P.degree();
  if (!degree) fail(ErrorKind::InvalidArgument, "zero polynomial needs a declared degree");
  return multilinearize(P, *degree);
}

MultilinearForm multilinearize(const Polynomial& P, unsigned d) {
  if (d < 1) fail(ErrorKind::InvalidDegree, "multilinearization needs degree >= 1");
  P.field().modulus().require_char_above(d, "multilinearize");
  if (!P.is_homogeneous() || (P.degree() && *P.degree() != d)) {
    fail(ErrorKind::NotHomogeneous, "multilinearize requires a homogeneous polynomial of degree " +
                                        std::to_string(d));
  }
  const Field& f = P.field();
  MultilinearForm form(f, d, P.num_vars());
  for (const auto& [mono, c] : P.terms()) {
    // c x^alpha polarizes to c * prod_i alpha_i! on the sorted index tuple
    MultilinearForm::Key key;
    Elem weight = c;
    for (std::size_t i = 0; i < mono.exps.size(); ++i) {
      for (std::uint32_t k = 1; k <= mono.exps[i]; ++k) {
        key.push_back(static_cast<std::uint32_t>(i));
        weight = f.mul(weight, f.from_int(k));
      }
    }
    form.add(std::move(key), weight);
  }
  return form;
}

Polynomial diagonal_reconstruct(const MultilinearForm& M) {
  const unsigned d = M.arity();
  const Field& f = M.field();
  f.modulus().require_char_above(d, "diagonal_reconstruct");
  Elem factorial = 1;
  for (unsigned k = 2; k <= d; ++k) factorial = f.mul(factorial, f.from_int(k));
  const Elem inv_factorial = f.inv(factorial);

  Polynomial out(f, M.num_vars());
  for (const auto& [key, c] : M.coeffs()) {
    MultiIndex mono{std::vector<std::uint32_t>(M.num_vars(), 0)};
    for (auto i : key) ++mono.exps[i];
    // number of distinct rearrangements of key = d! / prod alpha_i!
    std::uint64_t arrangements = 1;
    {
      unsigned placed = 0;
      for (auto e : mono.exps) {
        for (std::uint32_t k = 1; k <= e; ++k) {
          ++placed;
          arrangements = arrangements * placed / k;
        }
      }
    }
    const Elem count = f.from_int(static_cast<std::int64_t>(arrangements % f.characteristic()));
    out.add_term(mono, f.mul(f.mul(c, count), inv_factorial));
  }
  return out;
}

Elem evaluate_form(const MultilinearForm& M, const std::vector<VectorPoint>& xs) {
  if (xs.size() != M.arity()) {
    fail(ErrorKind::ArityMismatch, "form takes " + std::to_string(M.arity()) + " arguments, got " +
                                       std::to_string(xs.size()));
  }
  for (const auto& x : xs) {
    if (x.coords.size() != M.num_vars()) fail(ErrorKind::DimensionMismatch, "slot dimension mismatch");
  }
  const Field& f = M.field();
  Elem total = 0;
  for (const auto& [key, c] : M.coeffs()) {
    MultilinearForm::Key perm = key;
    Elem sum = 0;
    do {
      Elem prod = 1;
      for (std::size_t j = 0; j < perm.size() && prod != 0; ++j) prod = f.mul(prod, xs[j].coords[perm[j]]);
      sum = f.add(sum, prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    total = f.add(total, f.mul(c, sum));
  }
  return total;
}

Polynomial form_to_polynomial(const MultilinearForm& M) {
  const std::size_t n = M.num_vars();
  const unsigned d = M.arity();
  Polynomial out(M.field(), n * d);
  for (const auto& [key, c] : M.coeffs()) {
    MultilinearForm::Key perm = key;
    do {
      MultiIndex mono{std::vector<std::uint32_t>(n * d, 0)};
      for (unsigned j = 0; j < d; ++j) ++mono.exps[j * n + perm[j]];
      out.add_term(mono, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace strengthlab
