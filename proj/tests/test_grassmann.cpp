#include "doctest.h"
#include "gen.hpp"
#include "nsvosa/error.hpp"

using namespace nsvosa;

namespace {
Grassmann e(int i, int L = 2) { return Grassmann::generator(i, L); }
}  // namespace

TEST_CASE("generator products follow the wedge rule") {
  CHECK(e(1) * e(2) == Grassmann::monomial(0b11, 1, 2));
  CHECK(e(2) * e(1) == Grassmann::monomial(0b11, -1, 2));
  CHECK((e(1) * e(2) * e(1)).is_zero());
  Grassmann one(1);
  CHECK((one + e(1)) * (one + e(2)) == one + e(1) + e(2) + e(1) * e(2));
}

TEST_CASE("parity") {
  CHECK(e(1).parity() == Parity::Odd);
  CHECK((Grassmann(3) + 2 * (e(1) * e(2))).parity() == Parity::Even);
  CHECK_THROWS_AS((e(1) + e(1) * e(2)).parity(), Error);
  CHECK(Grassmann::zero(2).parity(Parity::Odd) == Parity::Odd);
  CHECK(Grassmann::zero(2).parity(Parity::Even) == Parity::Even);
}

TEST_CASE("body") {
  CHECK((Grassmann(3) + 2 * (e(1) * e(2))).body() == 3);
  CHECK(e(1).body() == 0);
  CHECK(Grassmann::zero(0).body() == 0);
}

TEST_CASE("embedding") {
  CHECK(e(1).embed(3).generators() == 3);
  CHECK(e(1).embed(3).terms() == e(1).terms());
  CHECK((e(1) * e(2)).embed(2) == e(1) * e(2));
  try {
    (e(1) * e(2)).embed(1);
    FAIL("expected ShrinkNotAllowed");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ShrinkNotAllowed);
  }
  CHECK(e(1, 3).embed(1).generators() == 1);
}

TEST_CASE("text form round trip") {
  Grassmann g = Rational(1, 2) * e(1, 3) + Grassmann(-3) + Rational(-2, 5) * (e(1, 3) * e(3, 3));
  CHECK(g.to_string() == "-3+1/2*e1+-2/5*e1e3");
  CHECK(Grassmann::parse(g.to_string(), 3) == g);
  CHECK(Grassmann::parse("e2e1", 2) == -(e(1) * e(2)));
  CHECK(Grassmann::parse("0", 2).is_zero());
  CHECK_THROWS_AS(Grassmann::parse("2*x1", 2), Error);
}

TEST_CASE("inverse of an element with nonzero body") {
  Grassmann a = Grassmann(2) + e(1) * e(2) + Rational(3) * e(1);
  CHECK(a * a.inverse() == Grassmann(1, 2));
  CHECK_THROWS_AS(e(1).inverse(), Error);
}

TEST_CASE("property: supercommutativity, body homomorphism, associativity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Parity pa = parity_of(trial), pb = parity_of(trial / 2);
    Grassmann a = gen::homogeneous(rng, 4, pa), b = gen::homogeneous(rng, 4, pb);
    Grassmann ab = a * b, ba = b * a;
    CHECK(ab == ((is_odd(pa) && is_odd(pb)) ? -ba : ba));
    Grassmann x = gen::element(rng, 4), y = gen::element(rng, 4), z = gen::element(rng, 4);
    CHECK((x * y).body() == x.body() * y.body());
    CHECK((x * y) * z == x * (y * z));
    CHECK((x - x).terms().empty());
    CHECK(x.even_part() + x.odd_part() == x);
  }
}

TEST_CASE("property: embedding is a ring homomorphism") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Grassmann a = gen::element(rng, 3), b = gen::element(rng, 3);
    CHECK((a * b).embed(5) == a.embed(5) * b.embed(5));
    CHECK((a + b).embed(5) == a.embed(5) + b.embed(5));
  }
}
