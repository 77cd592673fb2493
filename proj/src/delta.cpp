#include "nsvosa/delta.hpp"

#include <algorithm>
#include <set>

namespace nsvosa {

namespace {

Integer falling(long n, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

Series perturb(const Series& s) {
  Series t = s;
  Mono m;
  m.e[0] = 3;
  if (!s.even_vars().empty() && t.in_exact(m)) t.add(m, Grassmann(Rational(1)));
  return t;
}

Series phi_pair(const std::string& a, const std::string& b, int sign) {
  return monomial({}, {a, b}, Grassmann(Rational(sign)));
}

}  // namespace

Series monomial(const std::vector<std::pair<std::string, long>>& even, const std::vector<std::string>& odd,
                const Grassmann& c) {
  std::vector<std::string> ev;
  for (const auto& [n, k] : even) ev.push_back(n);
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
  Series s(ev, odd);
  s.add(even, odd, c);
  s.fit_support_to_terms();
  return s;
}

Series polynomial(
    const std::vector<std::string>& even, const std::vector<std::string>& odd,
    const std::vector<std::pair<std::vector<std::pair<std::string, long>>, std::pair<std::vector<std::string>, Grassmann>>>&
        terms) {
  Series s(even, odd);
  for (const auto& [ev, od] : terms) s.add(ev, od.first, od.second);
  s.fit_support_to_terms();
  return s;
}

Series build_delta(const DeltaSpec& spec, const WindowConfig& window) {
  const std::string& l = spec.lead.var;
  if (l.empty()) throw Error(ErrorKind::BadSpec, "delta numerator needs a lead variable");
  std::set<std::string> names{l};
  std::vector<std::string> even{l};
  if (spec.tail) {
    if (spec.tail->var.empty() || !names.insert(spec.tail->var).second)
      throw Error(ErrorKind::BadSpec, "tail variable repeats the numerator");
    even.push_back(spec.tail->var);
  }
  if (spec.denom) {
    if (spec.denom->var.empty() || !names.insert(spec.denom->var).second)
      throw Error(ErrorKind::BadSpec, "denominator variable " + spec.denom->var + " appears in the numerator");
    even.push_back(spec.denom->var);
  }
  for (const SignedVar* sv : {&spec.lead, spec.tail ? &*spec.tail : nullptr, spec.denom ? &*spec.denom : nullptr})
    if (sv && sv->sign != 1 && sv->sign != -1) throw Error(ErrorKind::BadSpec, "signs must be +1 or -1");
  if (spec.derivative < 0 || spec.derivative > 1) throw Error(ErrorKind::BadSpec, "derivative order must be 0 or 1");
  std::vector<std::string> odd;
  if (spec.nil) {
    if (spec.nil->phi_i.empty() || spec.nil->phi_i == spec.nil->phi_j)
      throw Error(ErrorKind::BadSpec, "nilpotent term needs two distinct odd variables");
    odd = {spec.nil->phi_i, spec.nil->phi_j};
  }

  Series s(even, odd);
  const Interval bl = window.for_var(l);
  const Interval bt = spec.tail ? intersect(window.for_var(spec.tail->var), Interval::at_least(0)) : Interval::point(0);
  const Interval bd = spec.denom ? window.for_var(spec.denom->var) : Interval::all();
  for (const Interval* b : {&bl, &bt}) {
    if (b->is_empty() || !b->bounded()) throw Error(ErrorKind::BadSpec, "delta window must be nonempty and bounded");
  }
  Interval prange = minkowski(bl, bt);
  if (spec.denom) {
    if (bd.is_empty() || !bd.bounded()) throw Error(ErrorKind::BadSpec, "delta window must be nonempty and bounded");
    prange = intersect(prange, negated(bd));
  }
  const int k = spec.derivative;
  const int sl = spec.lead.sign, st = spec.tail ? spec.tail->sign : 1, sd = spec.denom ? spec.denom->sign : 1;
  const int il = s.even_index(l);
  const int it = spec.tail ? s.even_index(spec.tail->var) : -1;
  const int id = spec.denom ? s.even_index(spec.denom->var) : -1;
  for (long p = prange.lo; p <= prange.hi; ++p) {
    Integer f = falling(p + k, k);
    if (f == 0) continue;
    for (long m = bt.lo; m <= bt.hi; ++m) {
      if (!bl.contains(p - m)) continue;
      Integer c = f * binomial(p, m);
      if (c == 0) continue;
      if (sl < 0 && ((p - m) & 1)) c = -c;
      if (st < 0 && (m & 1)) c = -c;
      if (sd < 0 && (p & 1)) c = -c;
      Mono mo;
      mo.e[il] = static_cast<std::int32_t>(p - m);
      if (it >= 0) mo.e[it] = static_cast<std::int32_t>(m);
      if (id >= 0) mo.e[id] = static_cast<std::int32_t>(-p);
      s.add(mo, Grassmann(Rational(c)));
    }
  }
  s.set_window(l, VarWindow{Interval::all(), bl});
  if (spec.tail) s.set_window(spec.tail->var, VarWindow{Interval::at_least(0), window.for_var(spec.tail->var)});
  if (spec.denom) {
    s.set_window(spec.denom->var, VarWindow{Interval::all(), bd});
    s.set_band(Interval::point(-k));
  }
  if (spec.nil) {
    Series eps = phi_pair(spec.nil->phi_i, spec.nil->phi_j, spec.nil->sign * sl);
    s = ss_nilpotent_shift(s, l, eps);
  }
  return s;
}

Series default_mult_operand(bool with_phi, int L) {
  Grassmann e1 = Grassmann::generator(1, L), e2 = Grassmann::generator(2, L), one(Rational(1), L);
  std::vector<std::string> odd;
  if (with_phi) odd = {"phi1", "phi2"};
  Series diff = polynomial({"x1", "x2"}, {}, {{{{"x1", 1}}, {{}, one}}, {{{"x2", 1}}, {{}, -one}}});
  Series M = polynomial({"x1", "x2"}, odd,
                        {{{}, {{}, e1}},
                         {{{"x1", 1}, {"x2", -1}}, {{}, Rational(2) * one}},
                         {{{"x1", 2}}, {{}, Rational(3) * (e1 * e2)}}});
  Series c = polynomial({"x1", "x2"}, odd,
                        {{{}, {{}, one}}, {{{"x2", -1}}, {{}, e2}}, {{{"x2", 2}}, {{}, Rational(5) * one}}});
  if (with_phi) {
    M = M + polynomial({"x1", "x2"}, odd,
                       {{{{"x2", 1}}, {{"phi1"}, e1}}, {{{"x1", -1}}, {{"phi2", "phi1"}, one}}});
    c = c + polynomial({"x1", "x2"}, odd,
                       {{{}, {{"phi2"}, e2}}, {{{"x2", -2}}, {{"phi1", "phi2"}, Rational(-1, 2) * one}}});
  }
  return ss_mul(diff, M) + c;
}

Series default_subst_operand(long N, int L) {
  Grassmann e1 = Grassmann::generator(1, L), e2 = Grassmann::generator(2, L), one(Rational(1), L);
  Series A = polynomial({"x1"}, {"phi1", "phi2"},
                        {{{}, {{}, one}},
                         {{{"x1", -1}}, {{"phi1"}, e1}},
                         {{{"x1", 2}}, {{"phi2"}, Rational(2) * one}},
                         {{{"x1", -3}}, {{"phi1", "phi2"}, e1 * e2}},
                         {{{"x1", -1}}, {{}, one}}});
  Series B({"x2"}, {});
  const long top = 5 * N + 12;
  for (long k = -2; k <= top; ++k) B.add({{"x2", k}}, {}, Grassmann(Rational(k + 3), L));
  B.set_window("x2", VarWindow{Interval::at_least(-2), Interval::at_most(top)});
  return ss_mul(A, B);
}

const std::vector<std::string>& delta_identity_ids() {
  static const std::vector<std::string> ids{"mult-principle", "mult-principle-phi", "two-term",
                                            "three-term",     "deriv-two-term",     "deriv-three-term",
                                            "two-term-phi",   "three-term-phi",     "substitution"};
  return ids;
}

ComparisonReport check_delta_identity(const std::string& id, const DeltaCheckOptions& opt) {
  const long N = opt.N;
  if (N < 1) throw Error(ErrorKind::BadSpec, "window must be positive");
  WindowConfig wide;
  wide.N = N + 2;
  std::map<std::string, Interval> target{{"x0", {-N, N}}, {"x1", {-N, N}}, {"x2", {-N, N}}};
  MulOptions mo;
  mo.target = target;
  auto D = [&](SignedVar lead, std::optional<SignedVar> tail, std::optional<SignedVar> den,
               std::optional<DeltaSpec::Nil> nil = std::nullopt, int deriv = 0) {
    DeltaSpec s;
    s.lead = lead;
    s.tail = tail;
    s.denom = den;
    s.nil = nil;
    s.derivative = deriv;
    return build_delta(s, wide);
  };
  const SignedVar x0{1, "x0"}, x1{1, "x1"}, x2{1, "x2"}, mx0{-1, "x0"}, mx1{-1, "x1"}, mx2{-1, "x2"};
  const DeltaSpec::Nil mpp{-1, "phi1", "phi2"}, ppp{1, "phi1", "phi2"};
  Series lhs, rhs;

  if (id == "mult-principle" || id == "mult-principle-phi") {
    const bool phi = id == "mult-principle-phi";
    Series X = opt.operand ? *opt.operand : default_mult_operand(phi, opt.grassmann_generators);
    Series X22 = ss_even_subst(X, "x1", ShiftSpec{"x2", "", 1, 0});
    Series d = D(x1, std::nullopt, x2);
    lhs = ss_mul(X, d, mo);
    rhs = ss_mul(X22, d, mo);
  } else if (id == "two-term") {
    lhs = times_monomial(D(x2, x0, x1), {{"x1", -1}});
    rhs = times_monomial(D(x1, mx0, x2), {{"x2", -1}});
  } else if (id == "three-term") {
    lhs = times_monomial(D(x1, mx2, x0), {{"x0", -1}}) - times_monomial(D(x2, mx1, mx0), {{"x0", -1}});
    rhs = times_monomial(D(x1, mx0, x2), {{"x2", -1}});
  } else if (id == "deriv-two-term") {
    lhs = times_monomial(D(x2, x0, x1, std::nullopt, 1), {{"x1", -2}});
    rhs = -times_monomial(D(x1, mx0, x2, std::nullopt, 1), {{"x2", -2}});
  } else if (id == "deriv-three-term") {
    lhs = times_monomial(D(x1, mx2, x0, std::nullopt, 1), {{"x0", -2}}) -
          times_monomial(D(x2, mx1, mx0, std::nullopt, 1), {{"x0", -2}});
    rhs = times_monomial(D(x1, mx0, x2, std::nullopt, 1), {{"x2", -2}});
  } else if (id == "two-term-phi") {
    lhs = times_monomial(D(x2, x0, x1, ppp), {{"x1", -1}});
    rhs = times_monomial(D(x1, mx0, x2, mpp), {{"x2", -1}});
  } else if (id == "three-term-phi") {
    lhs = times_monomial(D(x1, mx2, x0, mpp), {{"x0", -1}}) - times_monomial(D(x2, mx1, mx0, ppp), {{"x0", -1}});
    rhs = times_monomial(D(x1, mx0, x2, mpp), {{"x2", -1}});
  } else if (id == "substitution") {
    Series X = opt.operand ? *opt.operand : default_subst_operand(N, opt.grassmann_generators);
    wide.per_var["x1"] = {-N - 6, N + 6};
    wide.per_var["x2"] = {-3 * N - 8, 3 * N + 8};
    Series d = D(x2, x0, x1, ppp);
    Series eps = phi_pair("phi1", "phi2", 1);
    std::map<std::string, Interval> sub_target{{"x0", {0, N}}, {"x2", {-3 * N - 4, 3 * N + 4}}};
    Series Xs = ss_shift_subst(X, "x1", ShiftSpec{"x2", "x0", 1, 2 * N + 8}, &eps, sub_target);
    lhs = ss_mul(d, X, mo);
    rhs = ss_mul(d, Xs, mo);
  } else {
    throw Error(ErrorKind::UnknownIdentity, id);
  }
  if (opt.fault) lhs = perturb(lhs);
  return ss_compare(lhs, rhs, target);
}

ComparisonReport check_superconformal(const Series& xt, const Series& pt, const std::string& x, const std::string& phi) {
  Series p = monomial({}, {phi}, Grassmann(Rational(1)));
  auto D = [&](const Series& f0) {
    Series f = f0.extended(merge_names(f0.even_vars(), {x}), merge_names(f0.odd_vars(), {phi}));
    return ss_derive_odd(f, phi) + ss_mul(p, ss_derive_even(f, x));
  };
  return ss_compare(D(xt), ss_mul(pt, D(pt)));
}

}  // namespace nsvosa
