#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "strengthlab/error.hpp"
#include "strengthlab/poly.hpp"

using namespace strengthlab;

namespace {

Polynomial P5(const char* text, std::size_t n) { return parse(text, 5, n); }

VectorPoint pt(std::initializer_list<Elem> xs) { return VectorPoint{std::vector<Elem>(xs)}; }

Polynomial random_poly(const Field& f, std::size_t n, unsigned max_deg, std::mt19937_64& gen) {
  Polynomial P(f, n);
  std::uniform_int_distribution<Elem> coeff(0, f.size() - 1);
  for (unsigned e = 0; e <= max_deg; ++e) {
    for (const auto& m : monomials_of_degree(n, e)) {
      if (gen() % 3 == 0) P.add_term(m, coeff(gen));
    }
  }
  return P;
}

VectorPoint random_point(const Field& f, std::size_t n, std::mt19937_64& gen) {
  VectorPoint x;
  for (std::size_t i = 0; i < n; ++i) x.coords.push_back(static_cast<Elem>(gen() % f.size()));
  return x;
}

}  // namespace

TEST_CASE("parse examples") {
  const auto P = P5("x1*x2*x3", 3);
  CHECK(P.terms().size() == 1);
  CHECK(P.coefficient({{1, 1, 1}}) == 1);

  const auto Q = P5("7*x1 + x2^2", 2);
  CHECK(Q.terms().size() == 2);
  CHECK(Q.coefficient({{1, 0}}) == 2);
  CHECK(Q.coefficient({{0, 2}}) == 1);

  try {
    P5("x1 + *", 1);
    FAIL("malformed input accepted");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 5);
    CHECK(e.kind() == ErrorKind::SyntaxError);
  }
}

TEST_CASE("parse details") {
  CHECK(P5("-x1", 1).coefficient({{1}}) == 4);
  CHECK(P5("x1^2 - x1^2", 1).is_zero());
  CHECK(P5("0", 2).is_zero());
  CHECK(P5("2*3*x1*x1", 1).coefficient({{2}}) == 1);
  CHECK(P5(" x2 ^ 3 ", 2).coefficient({{0, 3}}) == 1);
  try {
    P5("x3", 2);
    FAIL("out-of-range variable accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
  CHECK_THROWS_AS(P5("x1 x2", 2), SyntaxError);
  CHECK_THROWS_AS(P5("", 2), SyntaxError);
  CHECK_THROWS_AS(P5("a*x1", 1), SyntaxError);  // no generator over a prime field

  const Field F25 = Field::of_degree(5, 2);
  const auto A = parse("a*x1 + 3", F25, 1);
  CHECK(A.coefficient({{1}}) == 5);  // the generator has code 5 (digit 1 at p^1)
  CHECK(A.coefficient({{0}}) == 3);
  CHECK(parse("a^2", F25, 1).coefficient({{0}}) == 3);  // a^2 = -2 = 3
}

TEST_CASE("printer round trip") {
  std::mt19937_64 gen(7);
  for (const Field& f : {Field::prime(5), Field::prime(7), Field::of_degree(3, 2), Field::of_degree(5, 2)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto P = random_poly(f, 3, 4, gen);
      const auto text = to_string(P);
      REQUIRE_MESSAGE(parse(text, f, 3) == P, text);
    }
  }
  CHECK(to_string(P5("x2 + x1^2 + 3", 2)) == "x1^2 + x2 + 3");
  CHECK(to_string(Polynomial(Field::prime(5), 2)) == "0");
}

TEST_CASE("graded-lex order") {
  const auto monos = monomials_of_degree(3, 2);
  REQUIRE(monos.size() == 6);
  CHECK(monos.front().exps == std::vector<std::uint32_t>{2, 0, 0});
  CHECK(monos[1].exps == std::vector<std::uint32_t>{1, 1, 0});
  CHECK(monos.back().exps == std::vector<std::uint32_t>{0, 0, 2});
  CHECK(monomials_of_degree(2, 3).size() == 4);
  CHECK(monomials_of_degree(3, 3).size() == 10);
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(P5("x1^2 + x2^2", 2), pt({1, 2})) == 0);
  CHECK(evaluate(Polynomial(Field::prime(5), 2), pt({3, 4})) == 0);
  CHECK(evaluate(P5("x1*x2*x3", 3), pt({1, 1, 1})) == 1);
  try {
    evaluate(P5("x1", 2), pt({1}));
    FAIL("wrong dimension accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("delta examples") {
  CHECK(delta(P5("x1^2", 1), pt({1})) == P5("2*x1 + 1", 1));
  CHECK(delta(P5("x1*x2", 2), pt({1, 0})) == P5("x2", 2));
  CHECK(delta(P5("x1^3*x2 + x2^2 + 4", 2), pt({0, 0})).is_zero());
}

TEST_CASE("derivative examples") {
  CHECK(directional_derivative(P5("x1*x2*x3", 3), pt({1, 0, 0})) == P5("x2*x3", 3));
  for (Elem c = 0; c < 5; ++c) {
    CHECK(directional_derivative(P5("x1^3", 1), pt({c})) == P5("x1^2", 1).scaled((3 * c) % 5));
  }
  const auto L = P5("2*x1 + 3*x2", 2);
  CHECK(directional_derivative(L, pt({4, 1})) == P5("1", 2));  // 8 + 3 = 11 = 1
}

TEST_CASE("homogeneous part examples") {
  CHECK(homogeneous_part(P5("x1^3 + x1", 1), 3) == P5("x1^3", 1));
  CHECK(homogeneous_part(P5("x1^3 + x1", 1), 2).is_zero());
  CHECK(homogeneous_part(P5("x1^2*x2 + x1*x2 + 1", 2), 3) == P5("x1^2*x2", 2));
}

TEST_CASE("value table examples") {
  const Field F = Field::prime(5);
  CHECK(value_table(Polynomial(F, 1)).values == std::vector<Elem>{0, 0, 0, 0, 0});
  CHECK(value_table(P5("x1", 1)).values == std::vector<Elem>{0, 1, 2, 3, 4});
  CHECK(value_table(P5("x1^2", 1)).values == std::vector<Elem>{0, 1, 4, 4, 1});
  try {
    value_table(P5("x1", 12), 1000);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCap);
  }
}

TEST_CASE("value table matches the oracle") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto P = random_poly(Field::prime(5), 3, 4, gen);
    const auto T = value_table(P);
    REQUIRE(oracle::table(P) == oracle::Table(T.values.begin(), T.values.end()));
  }
}

TEST_CASE("delta agrees with pointwise differences") {
  std::mt19937_64 gen(3);
  for (const Field& f : {Field::prime(5), Field::of_degree(3, 2)}) {
    const PointSpace V(f, 2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto P = random_poly(f, 2, 4, gen);
      const auto t = random_point(f, 2, gen);
      const auto D = delta(P, t);
      for (std::uint64_t i = 0; i < V.size(); ++i) {
        const auto x = V.decode(i);
        const auto xt = V.decode(V.add(i, V.encode(t)));
        REQUIRE(evaluate(D, x) == f.sub(evaluate(P, xt), evaluate(P, x)));
      }
    }
  }
}

TEST_CASE("top part of a difference is the derivative") {
  std::mt19937_64 gen(5);
  const Field f = Field::prime(7);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned d = 2 + trial % 4;
    Polynomial P(f, 3);
    for (const auto& m : monomials_of_degree(3, d)) P.add_term(m, static_cast<Elem>(gen() % 7));
    const auto t = random_point(f, 3, gen);
    REQUIRE(homogeneous_part(delta(P, t), d - 1) == directional_derivative(P, t));
  }
}

TEST_CASE("derivative is additive in t and in P") {
  std::mt19937_64 gen(9);
  const Field f = Field::prime(5);
  const PointSpace V(f, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto P = random_poly(f, 3, 4, gen);
    const auto Q = random_poly(f, 3, 4, gen);
    const auto s = random_point(f, 3, gen);
    const auto t = random_point(f, 3, gen);
    const auto st = V.decode(V.add(V.encode(s), V.encode(t)));
    CHECK(directional_derivative(P, st) == directional_derivative(P, s) + directional_derivative(P, t));
    CHECK(directional_derivative(P + Q, t) == directional_derivative(P, t) + directional_derivative(Q, t));
  }
}

TEST_CASE("differences commute") {
  std::mt19937_64 gen(13);
  const Field f = Field::prime(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto P = random_poly(f, 2, 4, gen);
    const auto s = random_point(f, 2, gen);
    const auto t = random_point(f, 2, gen);
    CHECK(delta(delta(P, s), t) == delta(delta(P, t), s));
  }
}

TEST_CASE("linear change of variables") {
  const auto P = P5("x1*x2", 2);
  // x1 -> x1 + x2, x2 -> x1 - x2 gives x1^2 - x2^2
  CHECK(compose_linear(P, {{1, 1}, {1, 4}}) == P5("x1^2 - x2^2", 2));
  CHECK(linear_form(Field::prime(5), {1, 0, 3}) == P5("x1 + 3*x3", 3));
}

TEST_CASE("projective points") {
  const PointSpace V(Field::prime(5), 3);
  const auto pts = V.projective_points();
  CHECK(pts.size() == 31);
  CHECK(pts.front() == pt({1, 0, 0}));
  CHECK(pts.back() == pt({0, 0, 1}));
  for (const auto& x : pts) {
    const auto first = std::find_if(x.coords.begin(), x.coords.end(), [](Elem c) { return c != 0; });
    REQUIRE(first != x.coords.end());
    CHECK(*first == 1);
  }
}

TEST_CASE("arithmetic") {
  const auto A = P5("x1 + x2", 2);
  const auto B = P5("x1 - x2", 2);
  CHECK(A * B == P5("x1^2 - x2^2", 2));
  CHECK(A - A == Polynomial(Field::prime(5), 2));
  CHECK(-A == A.scaled(4));
  CHECK((A * B).degree() == 2u);
  CHECK_FALSE(Polynomial(Field::prime(5), 2).degree().has_value());
  CHECK(P5("x1^2 + x2^2", 2).is_homogeneous());
  CHECK_FALSE(P5("x1^2 + x2", 2).is_homogeneous());
  CHECK_THROWS_AS(A + P5("x1", 1), Error);
}
