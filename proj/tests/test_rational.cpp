#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "nsvosa/delta.hpp"
#include "nsvosa/error.hpp"
#include "nsvosa/freefield.hpp"
#include "nsvosa/ratfn.hpp"

using namespace nsvosa;

namespace {

Grassmann q(long a, long b = 1) { return Grassmann(Rational(a) / b); }

Series constant(long c) { return polynomial({}, {}, {{{}, {{}, q(c)}}}); }

RationalSuperFn over(Series num, std::vector<std::pair<LinearForm, int>> den) { return {std::move(num), std::move(den)}; }

const LinearForm& diff() {
  static const LinearForm f = LinearForm::make("x1", "x2", -1, 0, "phi1", "phi2");
  return f;
}
const LinearForm& diff_nil() {
  static const LinearForm f = LinearForm::make("x1", "x2", -1, -1, "phi1", "phi2");
  return f;
}

WindowConfig window(long N) {
  WindowConfig w;
  w.N = N;
  return w;
}

// Coefficient of x1^a x2^b (times the odd word) read off a series, zero when absent.
Grassmann at(const Series& s, long a, long b, std::vector<std::string> odd = {}) {
  Series probe(s.even_vars(), s.odd_vars());
  probe.add({{"x1", a}, {"x2", b}}, odd, q(1));
  REQUIRE(probe.terms().size() == 1);
  const Mono m = probe.terms().begin()->first;
  const Grassmann sign = probe.terms().begin()->second;
  auto it = s.terms().find(m);
  return it == s.terms().end() ? Grassmann() : sign * it->second;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::BadSpec;
}

const VosaData& super() {
  static const VosaData V = functor_Fphi(ff_build(6));
  return V;
}

DualVector dual(int index) {
  DualVector d;
  d.coeffs[index] = q(1);
  return d;
}

}  // namespace

TEST_CASE("iota_12 of 1/(x1 - x2) expands in positive powers of x2") {
  const long N = 5;
  const Series s = iota_expand(over(constant(1), {{diff(), 1}}), {"x1", "x2"}, window(N));
  for (long a = -N; a <= N; ++a)
    for (long b = -N; b <= N; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      const long m = b;
      CHECK(at(s, a, b) == (m >= 0 && a == -m - 1 ? q(1) : Grassmann()));
    }
  CHECK(s.window("x1").exact.contains(Interval{-N, N}));
  CHECK(s.window("x2").exact.contains(Interval{-N, N}));
}

TEST_CASE("iota_21 of 1/(x1 - x2) expands in positive powers of x1") {
  const long N = 5;
  const Series s = iota_expand(over(constant(1), {{diff(), 1}}), {"x2", "x1"}, window(N));
  for (long a = -N; a <= N; ++a)
    for (long b = -N; b <= N; ++b) CHECK(at(s, a, b) == (a >= 0 && b == -a - 1 ? q(-1) : Grassmann()));
}

TEST_CASE("the nilpotent part peels off as a squared denominator") {
  const long N = 6;
  const Series s = iota_expand(over(constant(1), {{diff_nil(), 1}}), {"x1", "x2"}, window(N));
  for (long m = 0; m < N; ++m) CHECK(at(s, -m - 1, m) == q(1));
  for (long m = 0; m + 1 < N; ++m) CHECK(at(s, -m - 2, m, {"phi1", "phi2"}) == q(m + 1));
  CHECK(s.terms().size() == static_cast<std::size_t>(2 * N - 1));
}

TEST_CASE("Grassmann coefficients in the lead are inverted") {
  // ((1 + e1e2) x1 - x2) * iota(1 / that) = 1
  LinearForm f;
  f.even = {{"x1", Grassmann::parse("1+e1e2", 2)}, {"x2", q(-1)}};
  const Series s = iota_expand(over(constant(1), {{f, 1}}), {"x1", "x2"}, window(6));
  const Series back = ss_mul(f.series(), s);
  CHECK(ss_compare(back, constant(1), {{"x1", Interval{-4, 4}}, {"x2", Interval{-4, 4}}}).passed());
}

TEST_CASE("forms without an invertible body are rejected") {
  LinearForm nil_only;
  nil_only.nil = {{"phi1", "phi2", q(1)}};
  CHECK(kind_of([&] { iota_expand(over(constant(1), {{nil_only, 1}}), {"x1", "x2"}, window(4)); }) ==
        ErrorKind::NotInSPrime);
  LinearForm nilpotent_coeff;
  nilpotent_coeff.even = {{"x1", Grassmann::parse("e1e2", 2)}};
  CHECK(kind_of([&] { iota_expand(over(constant(1), {{nilpotent_coeff, 1}}), {"x1", "x2"}, window(4)); }) ==
        ErrorKind::NotInSPrime);
}

TEST_CASE("text form") {
  CHECK(over(constant(1), {{diff_nil(), 1}}).to_string() == "1 / (x1 - x2 - p1p2)");
  const Series x1x2 = polynomial({"x1", "x2"}, {}, {{{{"x1", 1}, {"x2", 1}}, {{}, q(1)}}});
  CHECK(over(x1x2, {}).to_string() == "x1*x2");
  CHECK(over(constant(-2), {{LinearForm::var("x1"), 2}, {diff_nil(), 3}}).to_string() ==
        "-2 / x1^2 (x1 - x2 - p1p2)^3");
}

TEST_CASE("reconstruct 1/(x1 - x2 - phi1 phi2)") {
  const Series s = iota_expand(over(constant(1), {{diff_nil(), 1}}), {"x1", "x2"}, window(8));
  const Reconstruction r = reconstruct(s, {3, 3, 3});
  CHECK(r.r == 0);
  CHECK(r.s == 0);
  CHECK(r.t == 1);
  CHECK(r.f.to_string() == "1 / (x1 - x2 - p1p2)");
  CHECK(r.checked > 0);
}

TEST_CASE("reconstruct a polynomial") {
  const Series s = polynomial({"x1", "x2"}, {}, {{{{"x1", 1}, {"x2", 1}}, {{}, q(1)}}});
  const Reconstruction r = reconstruct(s, {3, 3, 3});
  CHECK((r.r == 0 && r.s == 0 && r.t == 0));
  CHECK(r.f.to_string() == "x1*x2");
}

TEST_CASE("the formal delta function has no rational form") {
  DeltaSpec d;
  d.lead = {1, "x1"};
  d.denom = {1, "x2"};
  const Series s = build_delta(d, window(8));
  CHECK(kind_of([&] { reconstruct(s, {3, 3, 3}); }) == ErrorKind::NoRationalForm);
  CHECK(kind_of([&] { reconstruct(s, {0, 0, 6}); }) == ErrorKind::NoRationalForm);
}

TEST_CASE("a window that cannot show the numerator's degree is too narrow") {
  const Series x2sq = polynomial({"x2"}, {}, {{{{"x2", 2}}, {{}, q(1)}}});
  const RationalSuperFn f = over(x2sq, {{diff_nil(), 1}});
  CHECK(kind_of([&] { reconstruct(iota_expand(f, {"x1", "x2"}, window(2)), {3, 3, 3}); }) ==
        ErrorKind::WindowTooNarrow);
  const Reconstruction r = reconstruct(iota_expand(f, {"x1", "x2"}, window(8)), {3, 3, 3});
  CHECK(r.t == 1);
  CHECK(compare_functions(r.f, f).passed());
}

TEST_CASE("property: reconstruct undoes iota_expand") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pw(0, 2), deg(0, 2), nterms(1, 3);
  const std::array<LinearForm, 3> forms = ReconstructSpec::products().forms;
  for (int trial = 0; trial < 20; ++trial) {
    Series g({"x1", "x2"}, {"phi1", "phi2"});
    for (int i = nterms(rng); i > 0; --i) {
      std::vector<std::string> odd;
      if (std::bernoulli_distribution(0.3)(rng)) odd = {"phi1", "phi2"};
      const Grassmann c = gen::small_rational(rng) + gen::homogeneous(rng, 2, Parity::Even);
      g.add({{"x1", deg(rng)}, {"x2", deg(rng)}}, odd, c);
    }
    if (g.terms().empty()) continue;
    g.fit_support_to_terms();
    const std::array<int, 3> e{pw(rng), pw(rng), pw(rng)};
    RationalSuperFn f = over(g, {});
    for (int i = 0; i < 3; ++i)
      if (e[i]) f.denominator.emplace_back(forms[i], e[i]);
    CAPTURE(f.to_string());
    const Reconstruction r = reconstruct(iota_expand(f, {"x1", "x2"}, window(10)), {2, 2, 2});
    CHECK(compare_functions(r.f, f).passed());
    const std::array<int, 3> got{r.t, r.r, r.s}, given{e[2], e[0], e[1]};
    CHECK(got <= given);
  }
}

TEST_CASE("property: iota is multiplicative") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> pw(1, 2);
  const std::array<LinearForm, 3> forms = ReconstructSpec::products().forms;
  const WindowConfig w = window(6);
  const std::map<std::string, Interval> inner{{"x1", Interval{-3, 3}}, {"x2", Interval{-3, 3}}};
  for (int trial = 0; trial < 10; ++trial) {
    const int i = trial % 3, j = (trial + 1) % 3;
    const RationalSuperFn f = over(constant(1), {{forms[i], pw(rng)}});
    const RationalSuperFn g = over(constant(1), {{forms[j], pw(rng)}});
    RationalSuperFn fg = f;
    fg.denominator.push_back(g.denominator[0]);
    const Series lhs = iota_expand(fg, {"x1", "x2"}, w);
    const Series rhs = ss_mul(iota_expand(f, {"x1", "x2"}, w), iota_expand(g, {"x1", "x2"}, w));
    CHECK(ss_compare(lhs, rhs, inner).passed());
  }
}

TEST_CASE("substituting x0 = x1 - x2 - phi1 phi2 into 1/x0") {
  const RationalSuperFn h = over(constant(1), {{LinearForm::var("x0"), 1}});
  const RationalSuperFn hs = substitute(h, "x0", diff_nil());
  CHECK(hs.to_string() == "1 / (x1 - x2 - p1p2)");
  CHECK(compare_functions(hs, over(constant(1), {{diff_nil(), 1}})).passed());
  const ComparisonReport bad = compare_functions(hs, over(constant(1), {{diff(), 1}}));
  CHECK(bad.failed());
  CHECK_FALSE(bad.witnesses.empty());
}

TEST_CASE("duality on the two-point function of psi") {
  const VosaData& V = super();
  const ModuleVector psi = V.vec(ff_psi_hat()), vac = V.vec(ff_vacuum());
  const CheckConfig cfg;
  for (const auto& kind : duality_kinds()) {
    CAPTURE(kind);
    const DualityResult d = check_duality(V, kind, psi, psi, vac, dual(ff_vacuum()), cfg);
    CHECK(d.report.passed());
    CHECK(d.sign == -1);
    if (d.f) {
      CHECK(d.f->f.to_string() == "1 / (x1 - x2 - p1p2)");
      CHECK((d.f->r == 0 && d.f->s == 0 && d.f->t == 1));
    }
    if (d.h) CHECK(d.h->f.to_string() == "1 / x0");
  }
}

TEST_CASE("duality on the two-point function of alpha") {
  const VosaData& V = super();
  const ModuleVector a = V.vec(ff_alpha_hat()), vac = V.vec(ff_vacuum());
  const DualityResult d = check_duality(V, "supercommutativity", a, a, vac, dual(ff_vacuum()), CheckConfig{});
  CHECK(d.report.passed());
  CHECK(d.sign == 1);
  CHECK(d.f->f.to_string() == "1 / (x1 - x2 - p1p2)^2");
}

TEST_CASE("duality checks reject bad arguments") {
  const VosaData& V = super();
  const ModuleVector psi = V.vec(ff_psi_hat());
  CHECK(kind_of([&] { check_duality(V, "nope", psi, psi, psi, dual(0), CheckConfig{}); }) ==
        ErrorKind::UnknownIdentity);
  const VosaData P = ff_build(6);
  CHECK(kind_of([&] {
          check_duality(P, "supercommutativity", P.vec(ff_psi_hat()), P.vec(ff_psi_hat()), P.vec(0), dual(0),
                        CheckConfig{});
        }) == ErrorKind::WrongFlavor);
  const ModuleVector mixed = psi + V.vec(ff_alpha_hat());
  CHECK(kind_of([&] { check_duality(V, "supercommutativity", mixed, psi, psi, dual(0), CheckConfig{}); }) ==
        ErrorKind::NonHomogeneous);
}

TEST_CASE("a corrupted creation mode breaks associativity") {
  const VosaData& V = super();
  const VosaData bad = corrupt_mode(V, ff_psi_hat(), -2, ff_vacuum(), V.vec(ff_psi_hat()));
  const ModuleVector psi = bad.vec(ff_psi_hat()), vac = bad.vec(ff_vacuum());
  const DualityResult d = check_duality(bad, "associativity", psi, psi, vac, dual(ff_vacuum()), CheckConfig{});
  CHECK(d.report.failed());
  CHECK_FALSE(d.report.witnesses.empty());
}

TEST_CASE("duality implies Jacobi on sampled tuples") {
  const VosaData& V = super();
  const CheckConfig cfg;
  const std::vector<int> small{ff_vacuum(), ff_psi_hat(), ff_alpha_hat()};
  int covered = 0;
  for (int u : small)
    for (int v : small)
      for (int w : small)
        for (int p = 0; p < V.size(); ++p) {
          if (V.basis[p].weight2 > 3) continue;
          bool all = true;
          for (const char* kind : {"rationality-products", "rationality-iterates", "supercommutativity", "associativity"})
            all = all && check_duality(V, kind, V.vec(u), V.vec(v), V.vec(w), dual(p), cfg).report.passed();
          if (!all) continue;
          ++covered;
          const std::string tuple =
              V.basis[u].label + "," + V.basis[v].label + "," + V.basis[w].label + "," + V.basis[p].label;
          CAPTURE(tuple);
          CHECK(check_jacobi(V, V.vec(u), V.vec(v), V.vec(w), dual(p), cfg).passed());
        }
  CHECK(covered >= 27);
}
