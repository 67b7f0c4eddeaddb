#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "strengthlab/error.hpp"
#include "strengthlab/linalg.hpp"
#include "strengthlab/rank.hpp"

using namespace strengthlab;

namespace {

Polynomial P5(const char* text, std::size_t n) { return parse(text, 5, n); }

Polynomial random_form(const Field& f, std::size_t n, unsigned d, std::mt19937_64& gen) {
  Polynomial P(f, n);
  for (const auto& m : monomials_of_degree(n, d)) P.add_term(m, static_cast<Elem>(gen() % f.size()));
  return P;
}

Polynomial nonzero_form(const Field& f, std::size_t n, unsigned d, std::mt19937_64& gen) {
  for (;;) {
    auto P = random_form(f, n, d, gen);
    if (!P.is_zero()) return P;
  }
}

std::vector<std::vector<Elem>> random_invertible(const Field& f, std::size_t n, std::mt19937_64& gen) {
  for (;;) {
    Matrix M(n, n);
    for (auto& c : M.data) c = static_cast<Elem>(gen() % f.size());
    if (matrix_rank(M, f) != n) continue;
    std::vector<std::vector<Elem>> A(n, std::vector<Elem>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) A[i][j] = M.at(i, j);
    }
    return A;
  }
}

// Sum of L_i R_i recomputed without going through verify_certificate.
Polynomial certificate_sum(const RankResult& r, const Polynomial& like) {
  Polynomial sum(like.field(), like.num_vars());
  for (const auto& s : r.certificate) sum = sum + s.L * s.R;
  return sum;
}

void check_certified(const Polynomial& P, const RankResult& r) {
  REQUIRE(r.rank.has_value());
  CHECK(r.certificate.size() == *r.rank);
  CHECK(certificate_sum(r, P) == P);
  CHECK(verify_certificate(P, r));
  for (const auto& s : r.certificate) {
    REQUIRE(s.L.is_homogeneous());
    REQUIRE(s.R.is_homogeneous());
    CHECK(*s.L.degree() >= 1);
    CHECK(*s.R.degree() >= 1);
    CHECK(s.L.terms().begin()->second == 1);
  }
}

}  // namespace

TEST_CASE("quadratic rank examples") {
  const auto xy = quadratic_rank(P5("x1*x2", 2));
  CHECK(xy.rank == 1u);
  check_certified(P5("x1*x2", 2), xy);

  const auto Q = P5("x1^2 + x2^2", 2);
  const auto r = quadratic_rank(Q);
  CHECK(r.rank == 1u);
  check_certified(Q, r);
  CHECK(r.certificate[0].L * r.certificate[0].R == P5("x1 + 2*x2", 2) * P5("x1 + 3*x2", 2));

  const auto Q3 = P5("x1^2 + x2^2 + x3^2", 3);
  const auto r3 = quadratic_rank(Q3);
  CHECK(r3.rank == 2u);
  check_certified(Q3, r3);
  CHECK_FALSE(exhaustive_rank(Q3, 1).rank.has_value());

  CHECK(quadratic_rank(parse("x1^2 + x2^2", 3, 2)).rank == 2u);  // -1 is not a square mod 3
  CHECK(quadratic_rank(parse("x1^2 + x2^2", 13, 2)).rank == 1u);
  CHECK(quadratic_rank(P5("x1^2", 3)).rank == 1u);
  CHECK(quadratic_rank(Polynomial(Field::prime(5), 2)).rank == 0u);
}

TEST_CASE("quadratic rank errors") {
  try {
    quadratic_rank(P5("x1^2 + x2", 2));
    FAIL("inhomogeneous accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHomogeneous);
  }
  try {
    quadratic_rank(P5("x1^3", 2));
    FAIL("cubic accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongDegree);
  }
  try {
    quadratic_rank(parse("x1*x2", 2, 2));
    FAIL("characteristic 2 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CharTwo);
  }
}

TEST_CASE("every binary quadratic: closed form, search and oracle agree") {
  for (std::uint32_t p : {3u, 5u}) {
    const Field F = Field::prime(p);
    const oracle::RankOracle oracle(p, 2, 2);
    const auto basis = monomials_of_degree(2, 2);
    for (std::uint64_t idx = 0; idx < p * p * p; ++idx) {
      const auto digits = oracle::point(idx, p, 3);
      const auto Q = from_coefficients(F, 2, basis, std::vector<Elem>(digits.begin(), digits.end()));
      const auto closed = quadratic_rank(Q);
      const auto search = exhaustive_rank(Q, 2);
      REQUIRE(closed.rank == search.rank);
      REQUIRE(*closed.rank == oracle.rank(oracle::table(Q)));
      check_certified(Q, closed);
      check_certified(Q, search);
    }
  }
}

TEST_CASE("random ternary quadratics: closed form, search and oracle agree") {
  std::mt19937_64 gen(71);
  const Field F = Field::prime(5);
  const oracle::RankOracle oracle(5, 3, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const auto Q = random_form(F, 3, 2, gen);
    const auto closed = quadratic_rank(Q);
    REQUIRE(closed.rank == exhaustive_rank(Q, 3).rank);
    REQUIRE(*closed.rank == oracle.rank(oracle::table(Q)));
  }
}

TEST_CASE("every binary cubic over F_5 matches the oracle") {
  const Field F = Field::prime(5);
  const oracle::RankOracle oracle(5, 2, 3);
  const auto basis = monomials_of_degree(2, 3);
  for (std::uint64_t idx = 0; idx < 625; ++idx) {
    const auto digits = oracle::point(idx, 5, 4);
    const auto P = from_coefficients(F, 2, basis, std::vector<Elem>(digits.begin(), digits.end()));
    const auto r = exhaustive_rank(P, 2);
    REQUIRE(r.rank.has_value());
    REQUIRE(*r.rank == oracle.rank(oracle::table(P)));
    if (*r.rank > 0) check_certified(P, r);
  }
}

TEST_CASE("exhaustive rank examples") {
  const auto P = P5("x1*x2*x3", 3);
  const auto r = exhaustive_rank(P, 3);
  CHECK(r.rank == 1u);
  check_certified(P, r);
  CHECK(r.certificate[0].L == P5("x1", 3));
  CHECK(r.certificate[0].R == P5("x2*x3", 3));

  const auto Q = P5("x1^2*x2 + x3^3", 3);
  const auto two = exhaustive_rank(Q, 2);
  CHECK(two.rank == 2u);
  check_certified(Q, two);

  const auto one = exhaustive_rank(Q, 1);
  CHECK_FALSE(one.rank.has_value());
  CHECK(one.searched_up_to == 1);
  CHECK(one.exhaustion.patterns == std::vector<DegreePattern>{{1, 2}});
  CHECK(one.exhaustion.tuples_searched == 31);  // projective linear forms in 3 variables
}

TEST_CASE("quartic patterns") {
  const auto P = P5("x1^2*x2^2 + x1*x2*x3^2", 3);  // (x1 x2)(x1 x2 + x3^2)
  const auto r = exhaustive_rank(P, 2);
  CHECK(r.rank == 1u);
  check_certified(P, r);
  const auto Q = P5("x1^4 + x2^4", 2);
  const auto rq = exhaustive_rank(Q, 2);
  REQUIRE(rq.rank.has_value());
  check_certified(Q, rq);
}

TEST_CASE("rank entry point") {
  CHECK(rank(P5("x1*x2*x3 + x1", 3)).rank == 1u);
  CHECK(rank(Polynomial(Field::prime(5), 3), 3).rank == 0u);
  CHECK(rank(P5("x1^2 + x2^2 + x3^2", 3)).method == "quadratic");
  CHECK(rank(P5("x1*x2*x3", 3)).method == "exhaustive");
  CHECK(rank(P5("x1", 3), 3).rank == 0u);  // degree-3 part is zero
  try {
    rank(P5("x1", 1), 1);
    FAIL("degree 1 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooSmall);
    CHECK(std::string(e.what()) == "rank undefined for degree ≤ 1 (rank requires degree ≥ 2)");
  }
  CHECK_THROWS_AS(rank(P5("x1", 1)), Error);
  CHECK_THROWS_AS(rank(Polynomial(Field::prime(5), 1)), Error);
}

TEST_CASE("rank is invariant under scaling and linear changes of variable") {
  std::mt19937_64 gen(73);
  const Field F = Field::prime(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto P = nonzero_form(F, 3, 3, gen);
    const auto r = rank(P).rank;
    const Elem lambda = 1 + static_cast<Elem>(gen() % 4);
    CHECK(rank(P.scaled(lambda)).rank == r);
    const auto A = random_invertible(F, 3, gen);
    CHECK(rank(compose_linear(P, A), 3).rank == r);
  }
}

TEST_CASE("rank is subadditive") {
  std::mt19937_64 gen(79);
  const Field F = Field::prime(5);
  for (int trial = 0; trial < 25; ++trial) {
    // products keep individual ranks low so the bound is informative
    const auto P = random_form(F, 3, 1, gen) * random_form(F, 3, 2, gen);
    const auto Q = random_form(F, 3, 1, gen) * random_form(F, 3, 2, gen);
    const auto rp = *rank(P, 3).rank;
    const auto rq = *rank(Q, 3).rank;
    CHECK(*rank(P + Q, 3).rank <= rp + rq);
  }
}

TEST_CASE("derivative rank profile examples") {
  const auto prod = derivative_rank_profile(P5("x1*x2*x3", 3));
  CHECK(prod.max_rank == 2);
  CHECK(prod.entries.size() == 31);
  const auto cube = derivative_rank_profile(P5("x1^3", 3));
  CHECK(cube.max_rank == 1);
  CHECK(cube.zero_directions.size() == 6);  // t1 = 0
  CHECK(derivative_rank_profile(Polynomial(Field::prime(5), 3), 3).max_rank == 0);
  try {
    derivative_rank_profile(P5("x1^2", 2));
    FAIL("quadratic accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooSmall);
  }
}

TEST_CASE("profile matches a per-direction oracle") {
  std::mt19937_64 gen(83);
  const Field F = Field::prime(5);
  const oracle::RankOracle oracle(5, 3, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto P = nonzero_form(F, 3, 3, gen);
    const auto prof = derivative_rank_profile(P);
    unsigned max = 0;
    for (const auto& e : prof.entries) {
      const unsigned expected = oracle.rank(oracle::table(directional_derivative(P, e.direction)));
      REQUIRE(e.rank == expected);
      max = std::max(max, expected);
    }
    CHECK(prof.max_rank == max);
  }
}

TEST_CASE("derivative ranks equal difference ranks") {
  std::mt19937_64 gen(89);
  const Field F = Field::prime(5);
  const PointSpace V(F, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto P = nonzero_form(F, 3, 3, gen);
    for (const auto& t : V.projective_points()) {
      const auto Pt = directional_derivative(P, t);
      if (Pt.is_zero()) continue;
      REQUIRE(quadratic_rank(homogeneous_part(delta(P, t), 2)).rank == quadratic_rank(Pt).rank);
    }
  }
}

TEST_CASE("rank over extensions") {
  const auto Q = parse("x1^2 + x2^2", 3, 2);
  const auto base = rank_over_extension(Q, 1);
  CHECK(base.rank == exhaustive_rank(Q, 2).rank);
  CHECK(base.rank == 2u);
  const auto ext = rank_over_extension(Q, 2);
  CHECK(ext.rank == 1u);
  CHECK(ext.s == 2);
  check_certified(embed(Q, Field::of_degree(3, 2)), ext);

  const auto summary = rank_over_extensions(Q, {1, 2});
  CHECK(summary.results.size() == 2);
  CHECK(summary.closure_upper_bound == 1u);

  for (unsigned s : {1u, 2u}) CHECK(rank_over_extension(P5("x1*x2*x3", 3), s).rank == 1u);
}

TEST_CASE("extension ranks never increase along divisibility") {
  std::mt19937_64 gen(97);
  const Field F = Field::prime(3);
  for (int trial = 0; trial < 15; ++trial) {
    const auto Q = nonzero_form(F, 3, 2, gen);
    const auto r1 = *rank_over_extension(Q, 1).rank;
    const auto r2 = *rank_over_extension(Q, 2).rank;
    CHECK(r2 <= r1);
  }
}

TEST_CASE("search is deterministic across thread counts") {
  std::mt19937_64 gen(101);
  const Field F = Field::prime(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto P = nonzero_form(F, 3, 3, gen);
    const auto a = exhaustive_rank(P, 3, {kDefaultRankBudget, 1});
    const auto b = exhaustive_rank(P, 3, {kDefaultRankBudget, 4});
    REQUIRE(a.rank == b.rank);
    for (std::size_t i = 0; i < a.certificate.size(); ++i) {
      CHECK(a.certificate[i].L == b.certificate[i].L);
      CHECK(a.certificate[i].R == b.certificate[i].R);
    }
  }
}

TEST_CASE("rank budget") {
  try {
    exhaustive_rank(P5("x1^2*x2 + x3^3", 3), 2, {10, 1});
    FAIL("budget ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}
