#include "doctest.h"
#include "gen.hpp"

using namespace nsvosa;

namespace {
Grassmann e(int i) { return Grassmann::generator(i, 2); }
Grassmann q(long n, long d = 1) { return Grassmann(Rational(n, d)); }

SuperSeries<Grassmann> delta_x(int N) {
  SuperSeries<Grassmann> s({"x"}, {});
  for (int n = -N; n <= N; ++n) s.add({{"x", n}}, {}, q(1));
  s.set_window("x", VarWindow{Interval::all(), Interval{-N, N}});
  return s;
}

Mono mono(std::initializer_list<int> e, std::uint32_t odd = 0) {
  Mono m;
  int i = 0;
  for (int v : e) m.e[i++] = v;
  m.odd = odd;
  return m;
}
}  // namespace

TEST_CASE("Koszul sign when an odd variable passes an odd coefficient") {
  SuperSeries<Grassmann> a({}, {"phi1"}), b({}, {"phi2"});
  a.add({}, {"phi1"}, q(1));
  b.add({}, {"phi2"}, e(1));
  auto p = ss_mul(a, b);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->first.odd == 0b11);
  CHECK(p.terms().begin()->second == -e(1));
}

TEST_CASE("x^-1 times x") {
  SuperSeries<Grassmann> a({"x"}, {}), b({"x"}, {});
  a.add({{"x", -1}}, {}, q(1));
  b.add({{"x", 1}}, {}, q(1));
  a.fit_support_to_terms();
  b.fit_support_to_terms();
  auto p = ss_mul(a, b);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->first.e[0] == 0);
  CHECK(p.window("x").support == Interval::point(0));
}

TEST_CASE("(x1 - x2) delta(x1/x2) vanishes on the exact window") {
  const int N = 8;
  SuperSeries<Grassmann> d({"x1", "x2"}, {});
  for (int n = -N; n <= N; ++n) d.add({{"x1", n}, {"x2", -n}}, {}, q(1));
  d.set_window("x1", VarWindow{Interval::all(), Interval{-N, N}});
  d.set_window("x2", VarWindow{Interval::all(), Interval{-N, N}});
  d.set_band(Interval::point(0));
  SuperSeries<Grassmann> f({"x1", "x2"}, {});
  f.add({{"x1", 1}}, {}, q(1));
  f.add({{"x2", 1}}, {}, q(-1));
  f.fit_support_to_terms();
  auto p = ss_mul(f, d);
  CHECK(p.terms().empty());
  CHECK(!p.empty_window());
  CHECK(p.window("x1").exact.size() > 10);
  SuperSeries<Grassmann> zero({"x1", "x2"}, {});
  auto rep = ss_compare(p, zero);
  CHECK(rep.passed());
}

TEST_CASE("coefficient lookup") {
  auto d = delta_x(8);
  CHECK(*d.coeff(mono({5})) == q(1));
  CHECK(!d.coeff(mono({9})).has_value());
  SuperSeries<Grassmann> s({"x"}, {"phi1", "phi2"});
  s.add({{"x", 2}}, {}, q(1));
  s.add({{"x", 1}}, {"phi1", "phi2"}, q(2));
  CHECK(*s.coeff(mono({1}, 0b11)) == q(2));
}

TEST_CASE("derivatives") {
  auto d = delta_x(8);
  auto dd = ss_derive(d, "x", false);
  CHECK(*dd.coeff(mono({4})) == q(5));
  CHECK(*dd.coeff(mono({-3})) == q(-2));
  CHECK(dd.window("x").exact == Interval{-9, 7});

  SuperSeries<Grassmann> s({}, {"phi1", "phi2"});
  Grassmann c = e(1);
  s.add({}, {"phi1", "phi2"}, c);
  auto d1 = ss_derive(s, "phi1", true);
  auto d2 = ss_derive(s, "phi2", true);
  // c phi1 phi2 = -phi1 c phi2 for odd c, so d/dphi1 gives -c phi2.
  CHECK(*d1.coeff(mono({}, 0b10)) == -c);
  CHECK(*d2.coeff(mono({}, 0b01)) == c);
  SuperSeries<Grassmann> t({}, {"phi1", "phi2"});
  t.add({}, {"phi1", "phi2"}, q(3));
  CHECK(*ss_derive(t, "phi1", true).coeff(mono({}, 0b10)) == q(3));
  CHECK(*ss_derive(t, "phi2", true).coeff(mono({}, 0b01)) == q(-3));

  SuperSeries<Grassmann> x2({"x"}, {"phi"});
  x2.add({{"x", 2}}, {}, q(1));
  CHECK(ss_derive(x2, "phi", true).terms().empty());
}

TEST_CASE("nilpotent shifts") {
  SuperSeries<Grassmann> eps({}, {"phi1", "phi2"});
  eps.add({}, {"phi1", "phi2"}, q(1));
  SuperSeries<Grassmann> f({"x"}, {});
  f.add({{"x", -1}}, {}, q(1));
  f.fit_support_to_terms();
  auto g = ss_nilpotent_shift(f, "x", eps);
  CHECK(*g.coeff(mono({-1})) == q(1));
  CHECK(*g.coeff(mono({-2}, 0b11)) == q(-1));

  SuperSeries<Grassmann> h({"x"}, {});
  h.add({{"x", 2}}, {}, q(1));
  h.fit_support_to_terms();
  auto k = ss_nilpotent_shift(h, "x", eps);
  CHECK(*k.coeff(mono({1}, 0b11)) == q(2));
  auto back = ss_nilpotent_shift(k, "x", -eps);
  CHECK(ss_compare(back, h).passed());

  SuperSeries<Grassmann> odd_shift({}, {"phi1"});
  odd_shift.add({}, {"phi1"}, q(1));
  CHECK_THROWS_AS(ss_nilpotent_shift(h, "x", odd_shift), Error);
}

TEST_CASE("binomial shift in positive powers of the tail") {
  SuperSeries<Grassmann> f({"x"}, {});
  f.add({{"x", -1}}, {}, q(1));
  f.fit_support_to_terms();
  auto g = ss_shift_subst(f, "x", ShiftSpec{"x", "y", 1, 6});
  // (x + y)^-1 = sum_j (-1)^j x^{-1-j} y^j
  for (int j = 0; j <= 6; ++j) CHECK(*g.coeff(mono({-1 - j, j})) == q(j % 2 ? -1 : 1));
  CHECK(!g.coeff(mono({-8, 7})).has_value());
  CHECK_THROWS_AS(ss_shift_subst(f, "x", ShiftSpec{"", "y", 1, 2}), Error);
}

TEST_CASE("residue") {
  auto d = delta_x(8);
  auto r = ss_residue(d, "x");
  CHECK(r.even_vars().empty());
  CHECK(*r.coeff(Mono{}) == q(1));
  SuperSeries<Grassmann> x2({"x"}, {});
  x2.add({{"x", 2}}, {}, q(1));
  CHECK(ss_residue(x2, "x").terms().empty());
  SuperSeries<Grassmann> w({"x"}, {});
  w.add({{"x", 3}}, {}, q(1));
  w.set_window("x", VarWindow{Interval::all(), Interval{0, 8}});
  try {
    ss_residue(w, "x");
    FAIL("expected WindowMiss");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::WindowMiss);
  }
}

TEST_CASE("comparison reports") {
  auto d = delta_x(8);
  auto rep = ss_compare(d, d);
  CHECK(rep.passed());
  CHECK(rep.checked == 17);
  auto d3 = d;
  d3.add({{"x", 3}}, {}, q(1));
  auto bad = ss_compare(d, d3);
  REQUIRE(bad.failed());
  CHECK(bad.witnesses[0].exponent == std::vector<long>{3});
  auto lo = d, hi = d;
  lo.set_exact("x", Interval{-8, -1});
  hi.set_exact("x", Interval{0, 8});
  lo.prune();
  hi.prune();
  CHECK(ss_compare(lo, hi).status == Status::Inconclusive);
}

TEST_CASE("property: associativity on exact windows") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = gen::series(rng, {"x", "y"}, {"p", "q"}, -3, 3);
    auto b = gen::series(rng, {"x", "y"}, {"p", "q"}, -3, 3);
    auto c = gen::series(rng, {"x", "y"}, {"p", "q"}, -3, 3);
    for (auto* s : {&a, &b, &c}) {
      s->set_support("x", Interval{-3, 3});
      s->set_support("y", Interval{-3, 3});
    }
    auto l = ss_mul(ss_mul(a, b), c);
    auto r = ss_mul(a, ss_mul(b, c));
    auto rep = ss_compare(l, r);
    CHECK(rep.passed());
  }
}

TEST_CASE("property: odd derivative is an odd superderivation") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = gen::series(rng, {"x"}, {"p", "q"}, -2, 2);
    auto b = gen::series(rng, {"x"}, {"p", "q"}, -2, 2);
    a.set_support("x", Interval{-2, 2});
    b.set_support("x", Interval{-2, 2});
    // restrict a to a parity-homogeneous element: coefficient parity plus monomial parity fixed
    Parity want = parity_of(trial);
    SuperSeries<Grassmann> ah(a.even_vars(), a.odd_vars());
    ah.set_window("x", a.window("x"));
    for (const auto& [m, c] : a.terms()) {
      bool mono_odd = std::popcount(m.odd) & 1;
      Grassmann part = (is_odd(want) != mono_odd) ? c.odd_part() : c.even_part();
      ah.add(m, part);
    }
    auto lhs = ss_derive(ss_mul(ah, b), "p", true);
    auto t1 = ss_mul(ss_derive(ah, "p", true), b);
    auto t2 = ss_mul(ah, ss_derive(b, "p", true));
    auto rhs = is_odd(want) ? t1 - t2 : t1 + t2;
    CHECK(ss_compare(lhs, rhs).passed());
  }
}

TEST_CASE("property: D squared is the even derivative") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = gen::series(rng, {"x"}, {"p"}, -4, 4);
    SuperSeries<Grassmann> p({}, {"p"});
    p.add({}, {"p"}, Grassmann(Rational(1)));
    auto D = [&](const SuperSeries<Grassmann>& f) {
      return ss_derive(f, "p", true) + ss_mul(p, ss_derive(f, "x", false));
    };
    CHECK(ss_compare(D(D(s)), ss_derive(s, "x", false)).passed());
  }
}

TEST_CASE("property: window soundness under wider windows") {
  // Products of truncations of one infinite series agree wherever both claim exactness.
  auto geom = [](int N) {
    SuperSeries<Grassmann> s({"x", "y"}, {});
    for (int m = 0; m <= N; ++m) s.add({{"x", -m - 1}, {"y", m}}, {}, Grassmann(Rational(1)));
    s.set_window("x", VarWindow{Interval::at_most(-1), Interval{-N - 1, -1}});
    s.set_window("y", VarWindow{Interval::at_least(0), Interval{0, N}});
    s.set_band(Interval::point(-1));
    return s;
  };
  auto small = ss_mul(geom(5), geom(5));
  auto big = ss_mul(geom(12), geom(12));
  auto rep = ss_compare(small, big);
  CHECK(rep.passed());
  CHECK(rep.checked > 0);
}

TEST_CASE("renaming keeps windows and coefficients") {
  SuperSeries<Grassmann> s({"a", "b"}, {"p"});
  s.add({{"a", 2}, {"b", -1}}, {"p"}, Grassmann(Rational(3)));
  s.set_window("a", VarWindow{Interval{0, 9}, Interval{-4, 4}});
  s.set_window("b", VarWindow{Interval::all(), Interval{-2, 7}});
  const auto r = ss_rename_even(s, "a", "z");
  CHECK(r.even_vars() == std::vector<std::string>{"b", "z"});
  CHECK(r.window("z") == s.window("a"));
  CHECK(r.window("b") == s.window("b"));
  Mono m;
  m.e[r.even_index("z")] = 2;
  m.e[r.even_index("b")] = -1;
  m.odd = 1;
  CHECK(r.coeff(m) == std::optional<Grassmann>(Grassmann(Rational(3))));
  CHECK_THROWS_AS(ss_rename_even(s, "a", "b"), Error);
}

TEST_CASE("a constant factor keeps the other factor's windows") {
  SuperSeries<Grassmann> s({"x"}, {"p", "q"});
  s.add({{"x", -3}}, {}, Grassmann(Rational(1)));
  s.set_window("x", VarWindow{Interval::at_most(5), Interval{-20, 2}});
  SuperSeries<Grassmann> eps({}, {"p", "q"});
  eps.add({}, {"p", "q"}, Grassmann(Rational(1)));
  const auto r = ss_mul(eps, s);
  CHECK(r.window("x").exact.lo == -20);
  CHECK(r.window("x").exact.hi == 2);
}
