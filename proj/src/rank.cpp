#include "strengthlab/rank.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>

#include "strengthlab/linalg.hpp"
#include "strengthlab/parallel.hpp"
#include "strengthlab/util.hpp"

namespace strengthlab {

namespace {

using Vec = std::vector<Elem>;

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// ---------------------------------------------------------------------------
// quadratic forms as symmetric matrices, Q(x) = x^T M x

Matrix symmetric_matrix(const Polynomial& Q) {
  const Field& f = Q.field();
  const std::size_t n = Q.num_vars();
  const Elem half = f.inv(2);
  Matrix M(n, n);
  for (const auto& [mono, c] : Q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint32_t k = 0; k < mono.exps[i]; ++k) idx.push_back(i);
    }
    if (idx[0] == idx[1]) {
      M.at(idx[0], idx[0]) = f.add(M.at(idx[0], idx[0]), c);
    } else {
      const Elem h = f.mul(c, half);
      M.at(idx[0], idx[1]) = f.add(M.at(idx[0], idx[1]), h);
      M.at(idx[1], idx[0]) = f.add(M.at(idx[1], idx[0]), h);
    }
  }
  return M;
}

Vec apply(const Matrix& M, const Vec& x, const Field& f) {
  Vec out(M.rows, 0);
  for (std::size_t i = 0; i < M.rows; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < M.cols; ++j) acc = f.add(acc, f.mul(M.at(i, j), x[j]));
    out[i] = acc;
  }
  return out;
}

Elem dot(const Vec& a, const Vec& b, const Field& f) {
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

Elem bilinear(const Matrix& M, const Vec& x, const Vec& y, const Field& f) { return dot(x, apply(M, y, f), f); }

Vec axpy(Elem a, const Vec& x, const Vec& y, const Field& f) {  // a x + y
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = f.add(f.mul(a, x[i]), y[i]);
  return out;
}

// M -= a b^T + b a^T
void subtract_rank_update(Matrix& M, const Vec& a, const Vec& b, const Field& f) {
  for (std::size_t i = 0; i < M.rows; ++i) {
    for (std::size_t j = 0; j < M.cols; ++j) {
      const Elem term = f.add(f.mul(a[i], b[j]), f.mul(b[i], a[j]));
      M.at(i, j) = f.sub(M.at(i, j), term);
    }
  }
}

struct OrthogonalVector {
  Vec u;
  Elem value;  // Q(u), nonzero
};

// Vectors u_1, u_2, ... pairwise orthogonal for the bilinear form, with
// Q(u_i) != 0, spanning a complement of the radical.
std::vector<OrthogonalVector> orthogonal_basis(const Matrix& M, const Field& f) {
  const std::size_t n = M.rows;
  std::vector<Vec> remaining;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    remaining.push_back(std::move(e));
  }
  std::vector<OrthogonalVector> out;
  while (!remaining.empty()) {
    std::size_t pick = remaining.size();
    Vec u;
    for (std::size_t i = 0; i < remaining.size() && pick == remaining.size(); ++i) {
      if (bilinear(M, remaining[i], remaining[i], f) != 0) {
        pick = i;
        u = remaining[i];
      }
    }
    for (std::size_t i = 0; i < remaining.size() && pick == remaining.size(); ++i) {
      for (std::size_t j = i + 1; j < remaining.size(); ++j) {
        if (bilinear(M, remaining[i], remaining[j], f) != 0) {
          // Q(v + w) = 2 B(v, w) when Q(v) = Q(w) = 0
          pick = i;
          u = axpy(1, remaining[i], remaining[j], f);
          break;
        }
      }
    }
    if (pick == remaining.size()) break;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    const Elem value = bilinear(M, u, u, f);
    const Elem inv_value = f.inv(value);
    for (auto& r : remaining) {
      const Elem c = f.mul(bilinear(M, u, r, f), inv_value);
      r = axpy(f.neg(c), u, r, f);
    }
    out.push_back({std::move(u), value});
  }
  return out;
}

// A vector u with Q(u) = 0 and M u != 0, if one exists.
std::optional<Vec> find_isotropic(const Matrix& M, const Field& f) {
  const auto basis = orthogonal_basis(M, f);
  if (basis.size() >= 3) {
    const auto& [ui, ai] = basis[0];
    const auto& [uj, aj] = basis[1];
    const auto& [uk, ak] = basis[2];
    const Elem inv_aj = f.inv(aj);
    // a_i alpha^2 + a_j beta^2 + a_k = 0 always has a solution over F_q
    for (Elem alpha = 0; alpha < f.size(); ++alpha) {
      const Elem rhs = f.mul(f.neg(f.add(ak, f.mul(ai, f.mul(alpha, alpha)))), inv_aj);
      if (auto beta = f.sqrt(rhs)) {
        return axpy(alpha, ui, axpy(*beta, uj, uk, f), f);
      }
    }
    fail(ErrorKind::Internal, "ternary form without isotropic vector");
  }
  if (basis.size() == 2) {
    const Elem ratio = f.mul(f.neg(basis[1].value), f.inv(basis[0].value));
    if (auto beta = f.sqrt(ratio)) return axpy(*beta, basis[0].u, basis[1].u, f);
  }
  return std::nullopt;
}

RankSummand make_summand(const Field& f, const Vec& l_coeffs, const Vec& r_coeffs) {
  // normalize L to leading coefficient 1, scalar moves into R
  Elem lead = 0;
  for (Elem c : l_coeffs) {
    if (c != 0) {
      lead = c;
      break;
    }
  }
  const Elem inv_lead = f.inv(lead);
  Vec l(l_coeffs.size()), r(r_coeffs.size());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = f.mul(l_coeffs[i], inv_lead);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.mul(r_coeffs[i], lead);
  return RankSummand{linear_form(f, l), linear_form(f, r)};
}

// ---------------------------------------------------------------------------
// exhaustive search

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return kNone;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kNone / a) return kNone;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kNone - b ? kNone : a + b; }

/// Normalized homogeneous polynomials of one degree: leading coefficient 1
/// in graded-lex order, enumerated by leading position, then the tail as a
/// base-q counter.
struct FactorSpace {
  unsigned degree = 0;
  std::vector<MultiIndex> basis;
  std::vector<Vec> factors;
};

FactorSpace build_factor_space(const Field& f, std::size_t n, unsigned e) {
  constexpr std::uint64_t kMaxFactors = std::uint64_t{1} << 22;
  FactorSpace space;
  space.degree = e;
  space.basis = monomials_of_degree(n, e);
  const std::size_t M = space.basis.size();
  std::uint64_t count = 0;
  for (std::size_t lead = 0; lead < M; ++lead) {
    count = saturating_add(count, saturating_power(f.size(), M - 1 - lead));
  }
  if (count > kMaxFactors) {
    fail(ErrorKind::BudgetExceeded, "rank search needs " + std::to_string(count) +
                                        " candidate factors of degree " + std::to_string(e));
  }
  space.factors.reserve(count);
  for (std::size_t lead = 0; lead < M; ++lead) {
    const std::uint64_t tail_count = saturating_power(f.size(), M - 1 - lead);
    for (std::uint64_t tail = 0; tail < tail_count; ++tail) {
      Vec v(M, 0);
      v[lead] = 1;
      std::uint64_t rest = tail;
      for (std::size_t k = lead + 1; k < M; ++k) {
        v[k] = static_cast<Elem>(rest % f.size());
        rest /= f.size();
      }
      space.factors.push_back(std::move(v));
    }
  }
  return space;
}

// lexicographic rank -> k-combination of {0..N-1}
std::vector<std::uint64_t> unrank_combination(std::uint64_t N, std::uint64_t k, std::uint64_t rank) {
  std::vector<std::uint64_t> out;
  std::uint64_t x = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (;; ++x) {
      const std::uint64_t count = binomial(N - x - 1, k - i - 1);
      if (rank < count) break;
      rank -= count;
    }
    out.push_back(x++);
  }
  return out;
}

bool next_combination(std::vector<std::uint64_t>& c, std::uint64_t N) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < N - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct SearchContext {
  const Field& f;
  std::size_t n;
  unsigned d;
  std::vector<MultiIndex> target_basis;  // degree-d monomials
  Vec target;                            // P's coefficients on target_basis
  std::vector<FactorSpace> spaces;       // index e - 1
  std::vector<std::vector<MultiIndex>> cofactor_bases;  // index e - 1, degree d - e
  // product_index[e-1][nu * |cofactor basis| + mu] = row of x^nu * x^mu
  std::vector<std::vector<std::size_t>> product_index;
};

SearchContext make_context(const Polynomial& P, unsigned d) {
  SearchContext ctx{P.field(), P.num_vars(), d, monomials_of_degree(P.num_vars(), d), {}, {}, {}, {}};
  ctx.target = coefficient_vector(P, ctx.target_basis);
  std::map<MultiIndex, std::size_t, GradedLexGreater> row_of;
  for (std::size_t i = 0; i < ctx.target_basis.size(); ++i) row_of.emplace(ctx.target_basis[i], i);
  for (unsigned e = 1; 2 * e <= d; ++e) {
    ctx.spaces.push_back(build_factor_space(ctx.f, ctx.n, e));
    ctx.cofactor_bases.push_back(monomials_of_degree(ctx.n, d - e));
    const auto& low = ctx.spaces.back().basis;
    const auto& high = ctx.cofactor_bases.back();
    std::vector<std::size_t> table(low.size() * high.size());
    for (std::size_t a = 0; a < low.size(); ++a) {
      for (std::size_t b = 0; b < high.size(); ++b) {
        MultiIndex m{std::vector<std::uint32_t>(ctx.n)};
        for (std::size_t i = 0; i < ctx.n; ++i) m.exps[i] = low[a].exps[i] + high[b].exps[i];
        table[a * high.size() + b] = row_of.at(m);
      }
    }
    ctx.product_index.push_back(std::move(table));
  }
  return ctx;
}

/// One summand-count split: counts[e-1] factors of degree e.
struct PatternMultiset {
  std::vector<unsigned> counts;
  std::uint64_t tuples = 0;
};

std::vector<PatternMultiset> pattern_multisets(const SearchContext& ctx, unsigned r) {
  const std::size_t E = ctx.spaces.size();
  std::vector<PatternMultiset> out;
  std::vector<unsigned> counts(E, 0);
  // more low-degree factors first
  auto rec = [&](auto&& self, std::size_t e, unsigned remaining) -> void {
    if (e + 1 == E) {
      counts[e] = remaining;
      std::uint64_t tuples = 1;
      for (std::size_t k = 0; k < E; ++k) {
        tuples = saturating_mul(tuples, binomial(ctx.spaces[k].factors.size(), counts[k]));
      }
      if (tuples > 0) out.push_back({counts, tuples});
      return;
    }
    for (unsigned c = remaining + 1; c-- > 0;) {
      counts[e] = c;
      self(self, e + 1, remaining - c);
    }
  };
  if (E > 0) rec(rec, 0, r);
  return out;
}

/// Iterates the factor tuples of one pattern multiset in index order; the
/// last degree class varies fastest.
class TupleCursor {
 public:
  TupleCursor(const SearchContext& ctx, const PatternMultiset& pm, std::uint64_t index) : ctx_(ctx), pm_(pm) {
    const std::size_t E = pm.counts.size();
    combos_.resize(E);
    std::vector<std::uint64_t> radix(E);
    for (std::size_t e = 0; e < E; ++e) radix[e] = binomial(ctx.spaces[e].factors.size(), pm.counts[e]);
    for (std::size_t e = E; e-- > 0;) {
      combos_[e] = unrank_combination(ctx.spaces[e].factors.size(), pm.counts[e], index % radix[e]);
      index /= radix[e];
    }
  }

  void advance() {
    for (std::size_t e = combos_.size(); e-- > 0;) {
      if (next_combination(combos_[e], ctx_.spaces[e].factors.size())) return;
      for (std::size_t i = 0; i < combos_[e].size(); ++i) combos_[e][i] = i;
    }
  }

  const std::vector<std::vector<std::uint64_t>>& combos() const { return combos_; }

 private:
  const SearchContext& ctx_;
  const PatternMultiset& pm_;
  std::vector<std::vector<std::uint64_t>> combos_;
};

/// Solves sum_i L_i R_i = P for the cofactors of the given factors.
std::optional<Vec> solve_cofactors(const SearchContext& ctx, const std::vector<std::vector<std::uint64_t>>& combos) {
  std::size_t cols = 0;
  for (std::size_t e = 0; e < combos.size(); ++e) cols += combos[e].size() * ctx.cofactor_bases[e].size();
  Matrix A(ctx.target_basis.size(), cols);
  std::size_t col = 0;
  for (std::size_t e = 0; e < combos.size(); ++e) {
    const std::size_t high = ctx.cofactor_bases[e].size();
    for (auto factor : combos[e]) {
      const Vec& L = ctx.spaces[e].factors[factor];
      for (std::size_t b = 0; b < high; ++b, ++col) {
        for (std::size_t a = 0; a < L.size(); ++a) {
          if (L[a] != 0) A.at(ctx.product_index[e][a * high + b], col) = L[a];
        }
      }
    }
  }
  return solve_linear(A, ctx.target, ctx.f);
}

std::vector<RankSummand> build_certificate(const SearchContext& ctx,
                                           const std::vector<std::vector<std::uint64_t>>& combos,
                                           const Vec& solution) {
  std::vector<RankSummand> out;
  std::size_t col = 0;
  for (std::size_t e = 0; e < combos.size(); ++e) {
    const auto& high = ctx.cofactor_bases[e];
    for (auto factor : combos[e]) {
      Polynomial L = from_coefficients(ctx.f, ctx.n, ctx.spaces[e].basis, ctx.spaces[e].factors[factor]);
      Vec r(solution.begin() + static_cast<std::ptrdiff_t>(col),
            solution.begin() + static_cast<std::ptrdiff_t>(col + high.size()));
      col += high.size();
      out.push_back({std::move(L), from_coefficients(ctx.f, ctx.n, high, r)});
    }
  }
  return out;
}

/// Smallest tuple index in [0, pm.tuples) with a cofactor solution.
std::uint64_t first_hit(const SearchContext& ctx, const PatternMultiset& pm, unsigned threads) {
  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t chunks = (pm.tuples + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{kNone};
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), chunks));
  parallel_ranges(workers, workers, [&](unsigned, std::uint64_t, std::uint64_t) {
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      const std::uint64_t start = chunk * kChunk;
      if (chunk >= chunks || start > best.load()) return;
      const std::uint64_t stop = std::min(pm.tuples, start + kChunk);
      TupleCursor cursor(ctx, pm, start);
      for (std::uint64_t index = start; index < stop; ++index, cursor.advance()) {
        if (solve_cofactors(ctx, cursor.combos())) {
          std::uint64_t current = best.load();
          while (index < current && !best.compare_exchange_weak(current, index)) {
          }
          break;
        }
      }
    }
  });
  return best.load();
}

std::vector<DegreePattern> patterns_for(unsigned d) {
  std::vector<DegreePattern> out;
  for (unsigned e = 1; 2 * e <= d; ++e) out.push_back({e, d - e});
  return out;
}

RankResult zero_rank(const Field& f) {
  RankResult out;
  out.rank = 0;
  out.p = f.characteristic();
  out.s = f.degree();
  out.method = "zero";
  return out;
}

unsigned resolve_degree(const Polynomial& P, std::optional<unsigned> d) {
  if (d) return *d;
  if (P.is_zero()) fail(ErrorKind::InvalidArgument, "zero polynomial needs a declared degree");
  return *P.degree();
}

void check_rank_degree(const Polynomial& P, unsigned d) {
  if (d <= 1) fail(ErrorKind::DegreeTooSmall, "rank undefined for degree ≤ 1 (rank requires degree ≥ 2)");
  if (P.degree() && *P.degree() > d) {
    fail(ErrorKind::WrongDegree, "polynomial degree " + std::to_string(*P.degree()) +
                                     " exceeds declared degree " + std::to_string(d));
  }
  P.field().modulus().require_char_above(d, "rank");
}

}  // namespace

// ---------------------------------------------------------------------------

bool verify_certificate(const Polynomial& P, const RankResult& result) {
  if (!result.rank) return false;
  if (result.certificate.size() != *result.rank) return false;
  Polynomial sum(P.field(), P.num_vars());
  for (const auto& [L, R] : result.certificate) {
    if (L.is_zero() || R.is_zero() || !L.is_homogeneous() || !R.is_homogeneous()) return false;
    if (*L.degree() == 0 || *R.degree() == 0) return false;
    if (L.terms().begin()->second != 1) return false;
    sum = sum + L * R;
  }
  return sum == P;
}

RankResult quadratic_rank(const Polynomial& Q) {
  const Field& f = Q.field();
  if (!Q.is_homogeneous()) fail(ErrorKind::NotHomogeneous, "quadratic_rank requires a homogeneous polynomial");
  if (Q.degree() && *Q.degree() != 2) {
    fail(ErrorKind::WrongDegree, "quadratic_rank requires degree 2, got " + std::to_string(*Q.degree()));
  }
  if (f.characteristic() == 2) fail(ErrorKind::CharTwo, "quadratic_rank requires odd characteristic");
  if (Q.is_zero()) return zero_rank(f);

  Matrix M = symmetric_matrix(Q);
  const Elem half = f.inv(2);
  RankResult out;
  out.p = f.characteristic();
  out.s = f.degree();
  out.method = "quadratic";
  while (matrix_rank(M, f) > 0) {
    if (auto u = find_isotropic(M, f)) {
      // split off the hyperbolic plane spanned by u and w
      const Vec Mu = apply(M, *u, f);
      std::size_t k = 0;
      while (Mu[k] == 0) ++k;
      Vec w(M.rows, 0);
      w[k] = f.inv(Mu[k]);
      const Elem lambda = f.mul(bilinear(M, w, w, f), half);
      w = axpy(f.neg(lambda), *u, w, f);
      const Vec Mw = apply(M, w, f);
      Vec twice_Mw(Mw.size());
      for (std::size_t i = 0; i < Mw.size(); ++i) twice_Mw[i] = f.add(Mw[i], Mw[i]);
      out.certificate.push_back(make_summand(f, Mu, twice_Mw));
      subtract_rank_update(M, Mu, Mw, f);
    } else {
      const auto basis = orthogonal_basis(M, f);
      const Vec Mu = apply(M, basis[0].u, f);
      const Elem inv_value = f.inv(basis[0].value);
      Vec scaled(Mu.size()), halved(Mu.size());
      for (std::size_t i = 0; i < Mu.size(); ++i) {
        scaled[i] = f.mul(Mu[i], inv_value);
        halved[i] = f.mul(scaled[i], half);
      }
      out.certificate.push_back(make_summand(f, Mu, scaled));
      subtract_rank_update(M, Mu, halved, f);  // M -= Mu Mu^T / Q(u)
    }
  }
  out.rank = static_cast<unsigned>(out.certificate.size());
  out.searched_up_to = *out.rank;
  return out;
}

RankResult exhaustive_rank(const Polynomial& P, unsigned r_max, const RankOptions& options) {
  const Field& f = P.field();
  if (!P.is_homogeneous()) fail(ErrorKind::NotHomogeneous, "exhaustive_rank requires a homogeneous polynomial");
  if (P.is_zero()) return zero_rank(f);
  const unsigned d = *P.degree();
  if (d < 2) fail(ErrorKind::DegreeTooSmall, "rank undefined for degree ≤ 1 (rank requires degree ≥ 2)");

  const SearchContext ctx = make_context(P, d);
  RankResult out;
  out.p = f.characteristic();
  out.s = f.degree();
  out.method = "exhaustive";
  out.exhaustion.patterns = patterns_for(d);
  std::uint64_t searched = 0;
  for (unsigned r = 1; r <= r_max; ++r) {
    const auto multisets = pattern_multisets(ctx, r);
    std::uint64_t level = 0;
    for (const auto& pm : multisets) level = saturating_add(level, pm.tuples);
    if (saturating_add(searched, level) > options.budget) {
      fail(ErrorKind::BudgetExceeded, "rank search at " + std::to_string(r) + " summands needs " +
                                          (level == kNone ? std::string("more than 2^64") : std::to_string(level)) +
                                          " factor tuples after " + std::to_string(searched) +
                                          " already searched, budget is " + std::to_string(options.budget));
    }
    for (const auto& pm : multisets) {
      const std::uint64_t hit = first_hit(ctx, pm, options.threads);
      if (hit == kNone) {
        searched += pm.tuples;
        continue;
      }
      searched += hit + 1;
      TupleCursor cursor(ctx, pm, hit);
      const auto solution = solve_cofactors(ctx, cursor.combos());
      out.rank = r;
      out.searched_up_to = r;
      out.certificate = build_certificate(ctx, cursor.combos(), *solution);
      out.exhaustion.tuples_searched = searched;
      return out;
    }
  }
  out.searched_up_to = r_max;
  out.exhaustion.tuples_searched = searched;
  return out;
}

RankResult rank(const Polynomial& P, std::optional<unsigned> d, const RankOptions& options) {
  const unsigned degree = resolve_degree(P, d);
  check_rank_degree(P, degree);
  const Polynomial top = homogeneous_part(P, degree);
  if (top.is_zero()) return zero_rank(P.field());
  if (degree == 2) return quadratic_rank(top);
  // sum_i x_i R_i always works, so n summands suffice
  return exhaustive_rank(top, static_cast<unsigned>(P.num_vars()), options);
}

DerivativeProfile derivative_rank_profile(const Polynomial& P, std::optional<unsigned> d, const RankOptions& options) {
  const unsigned degree = resolve_degree(P, d);
  if (degree < 3) {
    fail(ErrorKind::DegreeTooSmall, "derivative profile needs degree >= 3 so derivatives have a rank");
  }
  check_rank_degree(P, degree);
  const Polynomial top = homogeneous_part(P, degree);
  PointSpace space(P.field(), P.num_vars());
  const auto directions = space.projective_points();

  DerivativeProfile out;
  out.entries.resize(directions.size());
  RankOptions inner = options;
  inner.threads = 1;
  parallel_ranges(directions.size(), resolve_threads(options.threads),
                  [&](unsigned, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t k = begin; k < end; ++k) {
                      ProfileEntry& entry = out.entries[k];
                      entry.direction = directions[k];
                      const Polynomial derivative = directional_derivative(top, directions[k]);
                      entry.zero_derivative = derivative.is_zero();
                      entry.rank = entry.zero_derivative ? 0 : *rank(derivative, degree - 1, inner).rank;
                    }
                  });
  for (const auto& entry : out.entries) {
    out.max_rank = std::max(out.max_rank, entry.rank);
    if (entry.zero_derivative) out.zero_directions.push_back(entry.direction);
  }
  return out;
}

Polynomial embed(const Polynomial& P, const Field& target) {
  if (P.field().degree() != 1 || P.field().characteristic() != target.characteristic()) {
    fail(ErrorKind::InvalidArgument, "can only embed a prime-field polynomial into an extension of the same characteristic");
  }
  Polynomial out(target, P.num_vars());
  for (const auto& [m, c] : P.terms()) out.add_term(m, c);
  return out;
}

RankResult rank_over_extension(const Polynomial& P, unsigned s, std::optional<unsigned> d, const RankOptions& options) {
  const unsigned degree = resolve_degree(P, d);
  check_rank_degree(P, degree);
  const Field target = Field::of_degree(P.field().characteristic(), s);
  const Polynomial top = embed(homogeneous_part(P, degree), target);
  if (top.is_zero()) return zero_rank(target);
  RankResult out = exhaustive_rank(top, static_cast<unsigned>(P.num_vars()), options);
  return out;
}

ExtensionRankSummary rank_over_extensions(const Polynomial& P, const std::vector<unsigned>& degrees,
                                          std::optional<unsigned> d, const RankOptions& options) {
  ExtensionRankSummary out;
  for (unsigned s : degrees) {
    out.results.push_back(rank_over_extension(P, s, d, options));
    const auto& r = out.results.back().rank;
    if (r && (!out.closure_upper_bound || *r < *out.closure_upper_bound)) out.closure_upper_bound = r;
  }
  return out;
}

}  // namespace strengthlab
