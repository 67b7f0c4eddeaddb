#include <doctest.h>

#include "strengthlab/error.hpp"
#include "strengthlab/field.hpp"
#include "strengthlab/util.hpp"

using namespace strengthlab;

namespace {

bool has_root(std::uint32_t p, const std::vector<Elem>& monic) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t k = monic.size(); k-- > 0;) acc = (acc * x + monic[k]) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("inverse examples") {
  CHECK(PrimeModulus(5).inv(2) == 3);
  CHECK(PrimeModulus(7).inv(4) == 2);
  for (std::uint64_t p : {2, 3, 5, 7, 101}) CHECK(PrimeModulus(p).inv(1) == 1);
  CHECK(inv(FieldElement(2, PrimeModulus(5))).residue() == 3);
}

TEST_CASE("inverse is exhaustive for small primes") {
  for (std::uint64_t p = 2; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    const PrimeModulus m(p);
    for (Elem a = 1; a < p; ++a) REQUIRE(m.mul(m.inv(a), a) == 1);
  }
}

TEST_CASE("zero has no inverse and composites are rejected") {
  CHECK_THROWS_AS(PrimeModulus(5).inv(0), Error);
  try {
    PrimeModulus(5).inv(0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroInverse);
  }
  try {
    PrimeModulus m(9);
    FAIL("composite accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
}

TEST_CASE("find_irreducible picks the lex-smallest polynomial") {
  CHECK(find_irreducible(PrimeModulus(5), 2) == std::vector<Elem>{2, 0, 1});
  CHECK(find_irreducible(PrimeModulus(3), 2) == std::vector<Elem>{1, 0, 1});
  try {
    find_irreducible(PrimeModulus(5), 1);
    FAIL("s = 1 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDegree);
  }
}

TEST_CASE("find_irreducible output has no roots") {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (unsigned s = 2; s <= 4; ++s) {
      if (saturating_power(p, s) > (1u << 20)) continue;
      const auto f = find_irreducible(PrimeModulus(p), s);
      CHECK(f.size() == s + 1);
      CHECK(f.back() == 1);
      CHECK_FALSE(has_root(static_cast<std::uint32_t>(p), f));
      CHECK(is_irreducible(PrimeModulus(p), f));
    }
  }
  // x^4 + 1 has no roots over F_3 but factors as (x^2+x+2)(x^2+2x+2).
  CHECK_FALSE(is_irreducible(PrimeModulus(3), {1, 0, 0, 0, 1}));
}

TEST_CASE("size cap on extensions") {
  try {
    Field::of_degree(2, 21);
    FAIL("2^21 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCap);
  }
}

TEST_CASE("trace examples in F_25") {
  const ExtensionField F(PrimeModulus(5), 2);
  CHECK(F.modulus_poly() == std::vector<Elem>{2, 0, 1});
  const ExtElement alpha = F.generator();
  CHECK(F.mul(alpha, alpha) == F.embed(3));
  CHECK(trace(F, alpha).residue() == 0);
  CHECK(trace(F, F.embed(0)).residue() == 0);
  for (Elem a = 0; a < 5; ++a) CHECK(trace(F, F.embed(a)).residue() == (2 * a) % 5);
}

TEST_CASE("trace is additive and Frobenius-invariant") {
  for (auto [p, s] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}, {3, 3}, {5, 2}, {5, 4}, {7, 2}}) {
    const Field F = Field::of_degree(p, s);
    const auto* ext = F.extension();
    REQUIRE(ext != nullptr);
    for (Elem a = 0; a < F.size(); ++a) {
      REQUIRE(F.trace(a) == ext->trace(ext->decode(a)).residue());
      REQUIRE(F.trace(F.pow(a, p)) == F.trace(a));
      for (Elem b = 0; b < F.size(); b += 7) {
        REQUIRE(F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % p);
      }
    }
  }
}

TEST_CASE("extension arithmetic agrees with the polynomial model") {
  const Field F = Field::of_degree(3, 3);
  const auto* ext = F.extension();
  for (Elem a = 0; a < F.size(); ++a) {
    for (Elem b = 0; b < F.size(); ++b) {
      REQUIRE(F.mul(a, b) == ext->encode(ext->mul(ext->decode(a), ext->decode(b))));
      REQUIRE(F.add(a, b) == ext->encode(ext->add(ext->decode(a), ext->decode(b))));
      REQUIRE(F.add(F.sub(a, b), b) == a);
    }
    if (a != 0) REQUIRE(F.mul(a, F.inv(a)) == 1);
  }
}

TEST_CASE("square roots") {
  const Field F5 = Field::prime(5);
  CHECK(F5.sqrt(4) == Elem{2});
  CHECK(F5.sqrt(1) == Elem{1});
  CHECK_FALSE(F5.sqrt(2).has_value());
  CHECK(F5.sqrt(0) == Elem{0});
  const Field F13 = Field::prime(13);
  for (Elem a = 1; a < 13; ++a) {
    const auto r = F13.sqrt(F13.mul(a, a));
    REQUIRE(r.has_value());
    CHECK(F13.mul(*r, *r) == F13.mul(a, a));
  }
  const Field F9 = Field::of_degree(3, 2);
  for (Elem a = 0; a < 9; ++a) {
    const auto r = F9.sqrt(a);
    if (r) CHECK(F9.mul(*r, *r) == a);
  }
  // every element of F_3 is a square in F_9
  for (Elem a = 0; a < 3; ++a) CHECK(F9.sqrt(a).has_value());
}

TEST_CASE("characteristic precondition") {
  CHECK_NOTHROW(PrimeModulus(5).require_char_above(4, "test"));
  try {
    PrimeModulus(5).require_char_above(5, "test");
    FAIL("char 5 accepted for degree 5");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CharTooSmall);
  }
}
