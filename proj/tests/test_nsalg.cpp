#include "doctest.h"
#include "gen.hpp"
#include "nsvosa/nsalg.hpp"

using namespace nsvosa;

namespace {
Grassmann q(long n, long d = 1) { return Grassmann(Rational(n, d)); }
NSSymbol G(int r2) { return NSSymbol::G2(r2); }
NSSymbol L(int n) { return NSSymbol::L(n); }
}  // namespace

TEST_CASE("basic brackets") {
  CHECK(ns_bracket(L(1), L(-1)) == NSElement(L(0), q(2)));
  CHECK(ns_bracket(L(2), L(-2)) == NSElement(L(0), q(4)) + NSElement(NSSymbol::d(), q(1, 2)));
  CHECK(ns_bracket(G(-1), G(-1)) == NSElement(L(-1), q(2)));
  CHECK(ns_bracket(G(3), G(-3)) == NSElement(L(0), q(2)) + NSElement(NSSymbol::d(), q(2, 3)));
  CHECK(ns_bracket(G(1), L(1)).is_zero());
  CHECK(ns_bracket(L(-1), G(3)) == NSElement(G(1), q(-2)));
}

TEST_CASE("G-L bracket vanishes exactly when m = (n-1)/2") {
  for (int m = -5; m <= 5; ++m)
    for (int n = -5; n <= 5; ++n) {
      bool zero = ns_bracket(G(2 * m + 1), L(n)).is_zero();
      CHECK(zero == (2 * m == n - 1));
    }
}

TEST_CASE("d is central") {
  for (int i2 = -6; i2 <= 6; ++i2) {
    NSSymbol x = i2 & 1 ? G(i2) : NSSymbol{NSSymbol::Kind::L, i2};
    CHECK(ns_bracket(NSSymbol::d(), x).is_zero());
    CHECK(ns_bracket(x, NSSymbol::d()).is_zero());
  }
}

TEST_CASE("symbol text") {
  CHECK(to_string(G(-3)) == "G(-3/2)");
  CHECK(to_string(L(-2)) == "L(-2)");
  CHECK(parse_ns_symbol("G(-3/2)") == G(-3));
  CHECK(parse_ns_symbol("L(4)") == L(4));
  CHECK(parse_ns_symbol("d") == NSSymbol::d());
  CHECK_THROWS_AS(parse_ns_symbol("L(1/2)"), Error);
  CHECK_THROWS_AS(parse_ns_symbol("G(1)"), Error);
  CHECK(to_string(ns_bracket(L(2), L(-2))) == "4*L(0) + 1/2*d");
}

TEST_CASE("axioms hold and the count grows with the bound") {
  auto r4 = ns_check_axioms(4);
  CHECK(r4.status == Status::Pass);
  auto r1 = ns_check_axioms(1);
  CHECK(r1.status == Status::Pass);
  CHECK(r1.checked < r4.checked);
  CHECK_THROWS_AS(ns_check_axioms(0), Error);
}

TEST_CASE("corrupted central coefficient fails with a witness triple") {
  NSConstants k;
  k.ns = Rational(1, 4);
  auto r = ns_check_axioms(4, k);
  CHECK(r.status == Status::Fail);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().exponent.size() == 6);
  NSConstants kv;
  kv.virasoro = Rational(1, 6);
  CHECK(ns_check_axioms(3, kv).status == Status::Fail);
}

TEST_CASE("super Jacobi with Grassmann coefficients") {
  std::mt19937 rng(7);
  auto random_elem = [&](Parity p) {
    NSElement x;
    for (int t = 0; t < 3; ++t) {
      int i2 = static_cast<int>(rng() % 9) - 4;
      NSSymbol s = i2 & 1 ? G(i2) : NSSymbol{NSSymbol::Kind::L, i2};
      x.add(s, gen::homogeneous(rng, 3, p + s.parity()));
    }
    return x;
  };
  for (int t = 0; t < 40; ++t) {
    Parity pa = parity_of(static_cast<int>(rng() & 1)), pb = parity_of(static_cast<int>(rng() & 1)),
           pc = parity_of(static_cast<int>(rng() & 1));
    NSElement a = random_elem(pa), b = random_elem(pb), c = random_elem(pc);
    auto s = [](bool neg) { return Grassmann(Rational(neg ? -1 : 1)); };
    NSElement j = s(is_odd(pa) && is_odd(pc)) * ns_bracket(ns_bracket(a, b), c) +
                  s(is_odd(pb) && is_odd(pa)) * ns_bracket(ns_bracket(b, c), a) +
                  s(is_odd(pc) && is_odd(pb)) * ns_bracket(ns_bracket(c, a), b);
    CHECK(j.is_zero());
    NSElement skew = ns_bracket(b, a);
    if (is_odd(pa) && is_odd(pb)) skew = -skew;
    CHECK(ns_bracket(a, b) == -skew);
  }
}
