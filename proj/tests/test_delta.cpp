#include "doctest.h"
#include "gen.hpp"
#include "nsvosa/delta.hpp"

using namespace nsvosa;

namespace {
Grassmann q(long n, long d = 1) { return Grassmann(Rational(n, d)); }

DeltaSpec spec(SignedVar lead, std::optional<SignedVar> tail, std::optional<SignedVar> den,
               std::optional<DeltaSpec::Nil> nil = std::nullopt, int deriv = 0) {
  DeltaSpec s;
  s.lead = lead;
  s.tail = tail;
  s.denom = den;
  s.nil = nil;
  s.derivative = deriv;
  return s;
}

Mono at(const Series& s, std::initializer_list<std::pair<const char*, int>> e, std::uint32_t odd = 0) {
  Mono m;
  for (auto [n, k] : e) m.e[s.even_index(n)] = k;
  m.odd = odd;
  return m;
}
}  // namespace

TEST_CASE("three-variable delta coefficient") {
  WindowConfig w;
  w.N = 6;
  Series d = build_delta(spec({1, "x1"}, SignedVar{-1, "x2"}, SignedVar{1, "x0"}), w);
  CHECK(*d.coeff(at(d, {{"x0", -2}, {"x1", 1}, {"x2", 1}})) == q(-2));
  CHECK(*d.coeff(at(d, {{"x0", -2}, {"x1", 2}})) == q(1));
  CHECK(*d.coeff(at(d, {{"x0", -3}, {"x1", 1}, {"x2", 1}})) == q(0));
  CHECK(*d.coeff(at(d, {{"x0", 2}, {"x1", -3}, {"x2", 1}})) == q(2));
  CHECK(*d.coeff(at(d, {{"x0", 0}, {"x1", 1}, {"x2", -1}})) == q(0));
  CHECK_FALSE(d.coeff(at(d, {{"x0", -7}, {"x1", 7}})).has_value());
}

TEST_CASE("one-variable delta is the all-ones series") {
  WindowConfig w;
  w.N = 8;
  Series d = build_delta(spec({1, "x"}, std::nullopt, std::nullopt), w);
  CHECK(*d.coeff(at(d, {{"x", 5}})) == q(1));
  CHECK(*d.coeff(at(d, {{"x", -8}})) == q(1));
  CHECK_FALSE(d.coeff(at(d, {{"x", 9}})).has_value());
  Series dp = build_delta(spec({1, "x"}, std::nullopt, std::nullopt, std::nullopt, 1), w);
  CHECK(*dp.coeff(at(dp, {{"x", 4}})) == q(5));
  CHECK(ss_compare(ss_derive_even(d, "x"), dp).status == Status::Pass);
}

TEST_CASE("degenerate delta specs") {
  WindowConfig w;
  CHECK_THROWS_AS(build_delta(spec({1, "x"}, std::nullopt, SignedVar{1, "x"}), w), Error);
  try {
    build_delta(spec({1, "x"}, std::nullopt, SignedVar{1, "x"}), w);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadSpec);
  }
  CHECK_THROWS_AS(build_delta(spec({1, "x"}, SignedVar{1, "x"}, SignedVar{1, "y"}), w), Error);
  CHECK_THROWS_AS(build_delta(spec({1, "x"}, SignedVar{1, "z"}, SignedVar{1, "z"}), w), Error);
  CHECK_THROWS_AS(build_delta(spec({1, "x"}, std::nullopt, SignedVar{1, "y"}, DeltaSpec::Nil{1, "p", "p"}), w),
                  Error);
  CHECK_THROWS_AS(build_delta(spec({1, ""}, std::nullopt, SignedVar{1, "y"}), w), Error);
}

TEST_CASE("nilpotent numerator equals delta minus phi1 phi2 x0^-1 delta'") {
  WindowConfig w;
  w.N = 7;
  Series with_nil = build_delta(spec({1, "x1"}, SignedVar{-1, "x2"}, SignedVar{1, "x0"},
                                     DeltaSpec::Nil{-1, "phi1", "phi2"}), w);
  Series plain = build_delta(spec({1, "x1"}, SignedVar{-1, "x2"}, SignedVar{1, "x0"}), w);
  Series deriv = build_delta(spec({1, "x1"}, SignedVar{-1, "x2"}, SignedVar{1, "x0"}, std::nullopt, 1), w);
  Series pp = monomial({{"x0", -1}}, {"phi1", "phi2"}, q(1));
  Series expect = plain - ss_mul(pp, deriv);
  auto r = ss_compare(with_nil, expect);
  CHECK(r.status == Status::Pass);
  CHECK(r.checked > 100);
}

TEST_CASE("two-variable spec is the three-variable spec at denominator 1") {
  WindowConfig w;
  w.N = 6;
  WindowConfig wide = w;
  wide.per_var["x0"] = {-20, 20};
  Series three = build_delta(spec({1, "x1"}, SignedVar{-1, "x2"}, SignedVar{1, "x0"}), wide);
  Series two = build_delta(spec({1, "x1"}, SignedVar{-1, "x2"}, std::nullopt), w);
  Series collapsed({"x1", "x2"}, {});
  for (const auto& [m, c] : three.terms()) {
    Mono n;
    n.e[0] = m.e[three.even_index("x1")];
    n.e[1] = m.e[three.even_index("x2")];
    collapsed.add(n, c);
  }
  collapsed.set_window("x1", VarWindow{Interval::all(), {-6, 6}});
  collapsed.set_window("x2", VarWindow{Interval::at_least(0), {-6, 6}});
  auto r = ss_compare(two, collapsed);
  CHECK(r.status == Status::Pass);
  CHECK(r.checked == 13 * 13);
}

TEST_CASE("all delta identities hold at N = 4, 8, 16") {
  for (long N : {4L, 8L, 16L}) {
    for (const auto& id : delta_identity_ids()) {
      DeltaCheckOptions o;
      o.N = N;
      auto r = check_delta_identity(id, o);
      INFO(id << " N=" << N << " " << r.detail);
      CHECK(r.status == Status::Pass);
      CHECK(r.checked > 0);
    }
  }
}

TEST_CASE("fault injection fails every delta identity with a witness") {
  for (const auto& id : delta_identity_ids()) {
    DeltaCheckOptions o;
    o.N = 4;
    o.fault = true;
    auto r = check_delta_identity(id, o);
    INFO(id);
    CHECK(r.status == Status::Fail);
    CHECK_FALSE(r.witnesses.empty());
  }
}

TEST_CASE("unknown identity id") {
  DeltaCheckOptions o;
  CHECK_THROWS_AS(check_delta_identity("four-term", o), Error);
}

TEST_CASE("deriv-two-term is the x0 derivative of two-term") {
  WindowConfig w;
  w.N = 8;
  Series lhs = times_monomial(build_delta(spec({1, "x2"}, SignedVar{1, "x0"}, SignedVar{1, "x1"}), w), {{"x1", -1}});
  Series dl = times_monomial(
      build_delta(spec({1, "x2"}, SignedVar{1, "x0"}, SignedVar{1, "x1"}, std::nullopt, 1), w), {{"x1", -2}});
  CHECK(ss_compare(ss_derive_even(lhs, "x0"), dl).status == Status::Pass);
  Series rhs = times_monomial(build_delta(spec({1, "x1"}, SignedVar{-1, "x0"}, SignedVar{1, "x2"}), w), {{"x2", -1}});
  Series dr = -times_monomial(
      build_delta(spec({1, "x1"}, SignedVar{-1, "x0"}, SignedVar{1, "x2"}, std::nullopt, 1), w), {{"x2", -2}});
  CHECK(ss_compare(ss_derive_even(rhs, "x0"), dr).status == Status::Pass);
}

TEST_CASE("mult-principle with random operands") {
  std::mt19937 rng(11);
  for (int t = 0; t < 5; ++t) {
    Series M = gen::series(rng, {"x1", "x2"}, {}, -2, 2, 2, 4);
    M.fit_support_to_terms();
    M.set_exact("x1", Interval::all());
    M.set_exact("x2", Interval::all());
    Series diff = polynomial({"x1", "x2"}, {}, {{{{"x1", 1}}, {{}, q(1)}}, {{{"x2", 1}}, {{}, q(-1)}}});
    Series X = ss_mul(diff, M);
    DeltaCheckOptions o;
    o.N = 6;
    o.operand = &X;
    CHECK(check_delta_identity("mult-principle", o).status == Status::Pass);
  }
}

TEST_CASE("superconformal shifts") {
  Series xt = polynomial({"x1", "x2"}, {"phi1", "phi2"},
                         {{{{"x1", 1}}, {{}, q(1)}}, {{{"x2", 1}}, {{}, q(-1)}}, {{}, {{"phi1", "phi2"}, q(-1)}}});
  Series pt = polynomial({"x1", "x2"}, {"phi1", "phi2"}, {{{}, {{"phi1"}, q(1)}}, {{}, {{"phi2"}, q(-1)}}});
  CHECK(check_superconformal(xt, pt, "x1", "phi1").status == Status::Pass);

  Series x = polynomial({"x"}, {"phi"}, {{{{"x", 1}}, {{}, q(1)}}});
  Series p = polynomial({"x"}, {"phi"}, {{{}, {{"phi"}, q(1)}}});
  CHECK(check_superconformal(x, p, "x", "phi").status == Status::Pass);

  Series bad = polynomial({"x"}, {"phi"}, {{{{"x", 1}}, {{}, q(1)}}, {{{"x", 2}}, {{}, q(1)}}});
  auto r = check_superconformal(bad, p, "x", "phi");
  CHECK(r.status == Status::Fail);
  CHECK_FALSE(r.witnesses.empty());
}
