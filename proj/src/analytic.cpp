#include "strengthlab/analytic.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "strengthlab/linalg.hpp"
#include "strengthlab/parallel.hpp"

namespace strengthlab {

namespace {

constexpr std::uint32_t kMaxCharacterOrder = 1u << 16;
constexpr std::uint64_t kMaxAdderEntries = std::uint64_t{1} << 26;

void require_character_order(std::uint32_t p) {
  if (p > kMaxCharacterOrder) {
    fail(ErrorKind::SizeCap, "character sums need p <= 65536, got " + std::to_string(p));
  }
}

std::vector<Elem> traced_values(const ValueTable& F) {
  std::vector<Elem> out(F.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.field.trace(F.values[i]);
  return out;
}

// Addition on V = F_q^n with indices split as lo + lo_size * hi, each half
// served by its own addition table. Row o of a table holds v -> v + o.
class SplitAdder {
 public:
  SplitAdder(const Field& field, std::size_t n) {
    const std::size_t n_lo = (n + 1) / 2;
    PointSpace lo_space(field, n_lo), hi_space(field, n - n_lo);
    lo_size_ = lo_space.size();
    hi_size_ = hi_space.size();
    if (lo_size_ * lo_size_ > kMaxAdderEntries) {
      fail(ErrorKind::SizeCap, "vector space too large for direct Gowers enumeration");
    }
    lo_ = build(lo_space);
    hi_ = build(hi_space);
  }

  std::uint64_t lo_size() const noexcept { return lo_size_; }
  std::uint64_t hi_size() const noexcept { return hi_size_; }
  const std::uint32_t* lo_row(std::uint64_t offset_lo) const noexcept { return &lo_[offset_lo * lo_size_]; }
  const std::uint32_t* hi_row(std::uint64_t offset_hi) const noexcept { return &hi_[offset_hi * hi_size_]; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t lo = lo_[(a % lo_size_) * lo_size_ + b % lo_size_];
    const std::uint64_t hi = hi_[(a / lo_size_) * hi_size_ + b / lo_size_];
    return lo + lo_size_ * hi;
  }

 private:
  static std::vector<std::uint32_t> build(const PointSpace& space) {
    const std::uint64_t size = space.size();
    std::vector<std::uint32_t> table(size * size);
    for (std::uint64_t o = 0; o < size; ++o) {
      for (std::uint64_t v = 0; v < size; ++v) {
        table[o * size + v] = static_cast<std::uint32_t>(space.add(o, v));
      }
    }
    return table;
  }

  std::uint64_t lo_size_ = 1, hi_size_ = 1;
  std::vector<std::uint32_t> lo_, hi_;
};

// Tallies tr(D_{v_m} ... D_{v_1} F)(v) over all (v, v_1, ..., v_m). `traced`
// holds tr F(x) as residues mod p.
CharacterCountVector count_differences(const std::vector<Elem>& traced, const SplitAdder& adder,
                                       unsigned m, std::uint32_t p, unsigned threads) {
  const std::uint64_t points = traced.size();
  const std::uint64_t h_count = saturating_power(points, m);
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<std::size_t> positive, negative;
  for (std::size_t S = 0; S < subsets; ++S) {
    ((m - static_cast<unsigned>(__builtin_popcountll(S))) % 2 == 0 ? positive : negative).push_back(S);
  }
  const std::uint64_t bias = std::uint64_t{p} * negative.size();

  const unsigned workers = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  parallel_ranges(h_count, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> counts(p, 0);
    std::vector<std::uint64_t> steps(m), offsets(subsets);
    std::vector<const std::uint32_t*> pos_rows(positive.size()), neg_rows(negative.size());
    std::vector<std::uint64_t> pos_hi(positive.size()), neg_hi(negative.size());
    std::vector<std::uint64_t> pos_base(positive.size()), neg_base(negative.size());
    const std::uint64_t lo_size = adder.lo_size(), hi_size = adder.hi_size();
    for (std::uint64_t h = begin; h < end; ++h) {
      std::uint64_t rest = h;
      for (unsigned i = 0; i < m; ++i) {
        steps[i] = rest % points;
        rest /= points;
      }
      offsets[0] = 0;
      for (std::size_t S = 1; S < subsets; ++S) {
        offsets[S] = adder.add(offsets[S & (S - 1)], steps[static_cast<unsigned>(__builtin_ctzll(S))]);
      }
      for (std::size_t k = 0; k < positive.size(); ++k) {
        pos_rows[k] = adder.lo_row(offsets[positive[k]] % lo_size);
        pos_hi[k] = offsets[positive[k]] / lo_size;
      }
      for (std::size_t k = 0; k < negative.size(); ++k) {
        neg_rows[k] = adder.lo_row(offsets[negative[k]] % lo_size);
        neg_hi[k] = offsets[negative[k]] / lo_size;
      }
      for (std::uint64_t vh = 0; vh < hi_size; ++vh) {
        for (std::size_t k = 0; k < positive.size(); ++k) pos_base[k] = adder.hi_row(pos_hi[k])[vh] * lo_size;
        for (std::size_t k = 0; k < negative.size(); ++k) neg_base[k] = adder.hi_row(neg_hi[k])[vh] * lo_size;
        for (std::uint64_t vl = 0; vl < lo_size; ++vl) {
          std::uint64_t acc = bias;
          for (std::size_t k = 0; k < positive.size(); ++k) acc += traced[pos_base[k] + pos_rows[k][vl]];
          for (std::size_t k = 0; k < negative.size(); ++k) acc -= traced[neg_base[k] + neg_rows[k][vl]];
          ++counts[acc % p];
        }
      }
    }
    partial[w] = std::move(counts);
  });

  CharacterCountVector out{p, std::vector<std::uint64_t>(p, 0), 0};
  for (const auto& counts : partial) {
    for (std::uint32_t j = 0; j < counts.size(); ++j) out.counts[j] += counts[j];
  }
  out.total = std::accumulate(out.counts.begin(), out.counts.end(), std::uint64_t{0});
  return out;
}

NormValue make_norm(unsigned m, CharacterCountVector counts) {
  NormValue out;
  out.m = m;
  out.value = counts.real_average();
  out.error_bound = character_error_bound(counts.p);
  out.counts = std::move(counts);
  return out;
}

void check_budget(std::uint64_t required, std::uint64_t budget, const std::string& what) {
  if (required > budget) {
    fail(ErrorKind::BudgetExceeded, what + " needs " +
                                        (required == std::numeric_limits<std::uint64_t>::max()
                                             ? std::string("more than 2^64")
                                             : std::to_string(required)) +
                                        " tuple evaluations, budget is " + std::to_string(budget));
  }
}

}  // namespace

double character_error_bound(std::uint32_t p) { return std::ldexp(static_cast<double>(p), -40); }

double CharacterCountVector::real_average() const {
  if (total == 0) return 0.0;
  long double sum = 0;
  for (std::uint32_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * j / p;
    sum += static_cast<long double>(counts[j]) * std::cos(angle);
  }
  return static_cast<double>(sum / static_cast<long double>(total));
}

double CharacterCountVector::magnitude() const {
  if (total == 0) return 0.0;
  long double re = 0, im = 0;
  for (std::uint32_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * j / p;
    re += static_cast<long double>(counts[j]) * std::cos(angle);
    im += static_cast<long double>(counts[j]) * std::sin(angle);
  }
  return static_cast<double>(std::hypot(re, im) / static_cast<long double>(total));
}

CharacterCountVector& CharacterCountVector::operator+=(const CharacterCountVector& o) {
  if (p != o.p) fail(ErrorKind::MixedParameters, "count vectors over different characters");
  for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += o.counts[j];
  total += o.total;
  return *this;
}

double NormValue::norm() const {
  if (value <= 0.0) return 0.0;
  return std::pow(value, 1.0 / static_cast<double>(std::uint64_t{1} << m));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

CharacterCountVector bias_counts(const ValueTable& F) {
  const std::uint32_t p = F.field.characteristic();
  require_character_order(p);
  CharacterCountVector out{p, std::vector<std::uint64_t>(p, 0), F.size()};
  for (Elem v : F.values) ++out.counts[F.field.trace(v)];
  return out;
}

NormValue gowers_norm(const ValueTable& F, unsigned m, const AnalyticOptions& options) {
  if (m < 1) fail(ErrorKind::InvalidDegree, "Gowers norm order must be >= 1");
  const std::uint32_t p = F.field.characteristic();
  require_character_order(p);
  check_budget(saturating_power(F.size(), m + 1), options.budget, "U_" + std::to_string(m) + " enumeration");
  SplitAdder adder(F.field, F.n);
  return make_norm(m, count_differences(traced_values(F), adder, m, p, options.threads));
}

NormValue gowers_recursive(const Polynomial& P, unsigned m, const AnalyticOptions& options) {
  if (m < 1) fail(ErrorKind::InvalidDegree, "Gowers norm order must be >= 1");
  const Field& f = P.field();
  const std::uint32_t p = f.characteristic();
  require_character_order(p);
  PointSpace space(f, P.num_vars());
  check_budget(saturating_power(space.size(), m + 1), options.budget,
               "recursive U_" + std::to_string(m) + " enumeration");
  std::optional<SplitAdder> adder;
  if (m > 1) adder.emplace(f, P.num_vars());

  const unsigned workers = resolve_threads(options.threads);
  std::vector<CharacterCountVector> partial(workers, CharacterCountVector{p, std::vector<std::uint64_t>(p, 0), 0});
  parallel_ranges(space.size(), workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      const ValueTable inner = value_table(delta(P, space.decode(t)), std::numeric_limits<std::uint64_t>::max());
      if (m == 1) {
        partial[w] += bias_counts(inner);
      } else {
        partial[w] += count_differences(traced_values(inner), *adder, m - 1, p, 1);
      }
    }
  });
  CharacterCountVector total{p, std::vector<std::uint64_t>(p, 0), 0};
  for (const auto& part : partial) total += part;
  return make_norm(m, std::move(total));
}

Rational multilinear_bias(const MultilinearForm& M, const AnalyticOptions& options) {
  const unsigned d = M.arity();
  const std::size_t n = M.num_vars();
  const Field& f = M.field();
  if (d < 1) fail(ErrorKind::InvalidDegree, "form arity must be >= 1");
  PointSpace space(f, n);
  const std::uint64_t tuples = saturating_power(space.size(), d - 1);
  check_budget(tuples, options.budget, "multilinear bias");
  if (tuples > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    fail(ErrorKind::BudgetExceeded, "multilinear bias denominator overflows");
  }
  if (M.is_zero()) return Rational(1, 1);
  if (d == 1) return Rational(0, 1);

  // Sum over (x_1..x_{d-2}) of #{x_{d-1} : contracted n x n matrix kills it}.
  const std::vector<Elem> tensor = M.dense();
  const std::uint64_t outer = saturating_power(space.size(), d - 2);
  const unsigned workers = resolve_threads(options.threads);
  std::vector<std::uint64_t> partial(workers, 0);
  parallel_ranges(outer, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t vanishing = 0;
    std::vector<Elem> current, next;
    for (std::uint64_t index = begin; index < end; ++index) {
      current = tensor;
      std::uint64_t rest = index;
      for (unsigned slot = 0; slot + 2 < d; ++slot) {
        const VectorPoint x = space.decode(rest % space.size());
        rest /= space.size();
        const std::size_t stride = current.size() / n;
        next.assign(stride, 0);
        for (std::size_t i = 0; i < n; ++i) {
          if (x.coords[i] == 0) continue;
          for (std::size_t r = 0; r < stride; ++r) {
            next[r] = f.add(next[r], f.mul(x.coords[i], current[i * stride + r]));
          }
        }
        current.swap(next);
      }
      Matrix C(n, n);
      C.data = current;
      const std::size_t kernel = n - matrix_rank(std::move(C), f);
      vanishing += saturating_power(f.size(), kernel);
    }
    partial[w] = vanishing;
  });
  const std::uint64_t vanishing = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  return Rational(static_cast<std::int64_t>(vanishing), static_cast<std::int64_t>(tuples));
}

Rational gowers_top_exact(const Polynomial& P, std::optional<unsigned> d, const AnalyticOptions& options) {
  if (!d) {
    if (P.is_zero()) fail(ErrorKind::InvalidArgument, "zero polynomial needs a declared degree");
    d = P.degree();
  }
  if (*d < 1) fail(ErrorKind::InvalidDegree, "top-degree Gowers identity needs degree >= 1");
  if (P.degree() && *P.degree() > *d) {
    fail(ErrorKind::WrongDegree, "polynomial degree " + std::to_string(*P.degree()) +
                                     " exceeds declared degree " + std::to_string(*d));
  }
  P.field().modulus().require_char_above(*d, "gowers_top_exact");
  return multilinear_bias(multilinearize(homogeneous_part(P, *d), *d), options);
}

}  // namespace strengthlab
