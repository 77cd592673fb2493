#include "nsvosa/ratfn.hpp"

#include <algorithm>
#include <map>

#include "nsvosa/error.hpp"

namespace nsvosa {

namespace {

std::string short_name(const std::string& n) { return n.rfind("phi", 0) == 0 ? "p" + n.substr(3) : n; }

bool is_one(const Grassmann& c) { return c == Grassmann(Rational(1)); }

std::string coeff_prefix(const Grassmann& c, bool& negative) {
  negative = false;
  if (is_one(c)) return "";
  if (c == Grassmann(Rational(-1))) {
    negative = true;
    return "";
  }
  std::string s = c.to_string();
  if (c.terms().size() == 1 && s.front() == '-') {
    negative = true;
    s = (-c).to_string();
  }
  if (c.terms().size() > 1) s = "(" + s + ")";
  return s + "*";
}

Series one_in(const std::vector<std::string>& even, const std::vector<std::string>& odd) {
  Series r(even, odd);
  r.add(Mono{}, Grassmann(Rational(1)));
  r.fit_support_to_terms();
  return r;
}

Series power(const Series& p, int k) {
  Series r = one_in(p.even_vars(), p.odd_vars());
  for (int i = 0; i < k; ++i) r = ss_mul(p, r);
  return r;
}

// Smallest j with c^j = 0 for nilpotent c, otherwise 0.
int nil_degree(const Grassmann& c) {
  if (c.body() != 0 || c.is_zero()) return 0;
  Grassmann p = c;
  int j = 1;
  while (!p.is_zero()) p = p * c, ++j;
  return j;
}

Grassmann coeff_of(const LinearForm& f, const std::string& x) {
  for (const auto& [n, a] : f.even)
    if (n == x) return a;
  return Grassmann();
}

void check_polynomial(const Series& p, const char* what) {
  for (const auto& [m, c] : p.terms())
    for (std::size_t v = 0; v < p.even_vars().size(); ++v)
      if (m.e[v] < 0) throw Error(ErrorKind::BadSpec, std::string(what) + " has a negative exponent");
}

int degree(const Series& p, const std::string& x) {
  if (!p.has_even(x)) return 0;
  const int i = p.even_index(x);
  int d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, static_cast<int>(m.e[i]));
  return d;
}

struct Factor {
  LinearForm form;
  int p = 1;
  std::string lead;
  std::size_t rank = 0;
  int K = 0;
  bool trivial = false;  // a bare monomial in the lead
};

// a^{-p} x^{-p} sum_{k <= K} C(-p, k) T^k with T = (F - a x) / (a x).
Series expand_factor(const Factor& f) {
  const Grassmann a = coeff_of(f.form, f.lead);
  const Grassmann ainv = a.inverse();
  LinearForm rest;
  for (const auto& [n, c] : f.form.even)
    if (n != f.lead) rest.even.emplace_back(n, c * ainv);
  for (const auto& [i, j, c] : f.form.nil) rest.nil.emplace_back(i, j, c * ainv);
  Series T = times_monomial(rest.series(), {{f.lead, -1}});
  Series sum = one_in(T.even_vars(), T.odd_vars());
  Series Tk = sum;
  for (int k = 1; k <= f.K; ++k) {
    Tk = ss_mul(T, Tk);
    Series term = scaled(Grassmann(Rational(binomial(-f.p, k))), Tk);
    sum = sum + term;
  }
  Grassmann ap(Rational(1));
  for (int i = 0; i < f.p; ++i) ap = ap * ainv;
  Series out(sum.even_vars(), sum.odd_vars());
  for (const auto& [m, c] : sum.terms()) out.add(m, ap * c);
  out = times_monomial(out, {{f.lead, -f.p}});
  for (const auto& x : out.even_vars()) {
    if (x == f.lead)
      out.set_window(x, {Interval::at_most(-f.p), Interval::at_least(-f.p - f.K)});
    else
      out.set_window(x, {Interval::at_least(0), Interval::all()});
  }
  out.set_band(Interval::all());
  if (f.trivial) out.fit_support_to_terms();
  out.normalize_exact();
  return out;
}

std::map<std::string, Interval> widen(std::map<std::string, Interval> box, long by) {
  for (auto& [n, iv] : box) iv = Interval{iv.lo - by, iv.hi + by};
  return box;
}

}  // namespace

LinearForm LinearForm::var(const std::string& x) { return LinearForm{{{x, Grassmann(Rational(1))}}, {}}; }

LinearForm LinearForm::make(const std::string& a, const std::string& b, int sb, int nil, const std::string& phi_i,
                            const std::string& phi_j) {
  LinearForm f;
  f.even = {{a, Grassmann(Rational(1))}, {b, Grassmann(Rational(sb))}};
  if (nil != 0) f.nil = {{phi_i, phi_j, Grassmann(Rational(nil))}};
  return f.canonical();
}

LinearForm LinearForm::canonical() const {
  std::map<std::string, Grassmann> ev;
  for (const auto& [n, c] : even) ev[n] = ev[n] + c;
  std::map<std::pair<std::string, std::string>, Grassmann> nl;
  for (auto [i, j, c] : nil) {
    if (i == j) continue;
    if (j < i) std::swap(i, j), c = -c;
    nl[{i, j}] = nl[{i, j}] + c;
  }
  LinearForm r;
  for (const auto& [n, c] : ev)
    if (!c.is_zero()) r.even.emplace_back(n, c);
  for (const auto& [k, c] : nl)
    if (!c.is_zero()) r.nil.emplace_back(k.first, k.second, c);
  return r;
}

Series LinearForm::series() const {
  LinearForm f = canonical();
  std::vector<std::string> ev, od;
  for (const auto& [n, c] : f.even) ev.push_back(n);
  for (const auto& [i, j, c] : f.nil) od.push_back(i), od.push_back(j);
  std::sort(od.begin(), od.end());
  od.erase(std::unique(od.begin(), od.end()), od.end());
  Series s(ev, od);
  for (const auto& [n, c] : f.even) s.add({{n, 1}}, {}, c);
  for (const auto& [i, j, c] : f.nil) s.add({}, {i, j}, c);
  s.fit_support_to_terms();
  return s;
}

std::string LinearForm::to_string() const {
  LinearForm f = canonical();
  std::string out;
  auto piece = [&](const Grassmann& c, const std::string& body) {
    bool neg = false;
    std::string pre = coeff_prefix(c, neg);
    if (out.empty())
      out = (neg ? "-" : "") + pre + body;
    else
      out += (neg ? " - " : " + ") + pre + body;
  };
  for (const auto& [n, c] : f.even) piece(c, short_name(n));
  for (const auto& [i, j, c] : f.nil) piece(c, short_name(i) + short_name(j));
  return out.empty() ? "0" : out;
}

std::string polynomial_string(const Series& p) {
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    std::string mono;
    for (std::size_t v = 0; v < p.even_vars().size(); ++v) {
      if (m.e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += short_name(p.even_vars()[v]);
      if (m.e[v] != 1) mono += "^" + std::to_string(m.e[v]);
    }
    std::string odd;
    for (std::size_t v = 0; v < p.odd_vars().size(); ++v)
      if (m.odd & (1u << v)) odd += short_name(p.odd_vars()[v]);
    if (!odd.empty()) mono += (mono.empty() ? "" : "*") + odd;
    bool neg = false;
    std::string pre = coeff_prefix(c, neg);
    std::string term;
    if (mono.empty())
      term = pre.empty() ? "1" : pre.substr(0, pre.size() - 1);
    else
      term = pre + mono;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string RationalSuperFn::to_string() const {
  std::string num = polynomial_string(numerator);
  if (denominator.empty()) return num;
  if (numerator.terms().size() > 1) num = "(" + num + ")";
  std::string den;
  for (const auto& [form, p] : denominator) {
    if (p == 0) continue;
    LinearForm f = form.canonical();
    std::string b = f.to_string();
    if (!(f.even.size() == 1 && f.nil.empty() && is_one(f.even[0].second))) b = "(" + b + ")";
    if (p != 1) b += "^" + std::to_string(p);
    den += (den.empty() ? "" : " ") + b;
  }
  return den.empty() ? num : num + " / " + den;
}

Series iota_expand(const RationalSuperFn& f, const std::vector<std::string>& order, const WindowConfig& window) {
  check_polynomial(f.numerator, "numerator");
  std::vector<Factor> fs;
  for (const auto& [form, p] : f.denominator) {
    if (p == 0) continue;
    if (p < 0) throw Error(ErrorKind::BadSpec, "negative denominator power");
    Factor fac;
    fac.form = form.canonical();
    fac.p = p;
    for (const auto& [n, c] : fac.form.even)
      if (std::find(order.begin(), order.end(), n) == order.end())
        throw Error(ErrorKind::UnknownVariable, n + " is not in the expansion order");
    for (std::size_t i = 0; i < order.size() && fac.lead.empty(); ++i)
      if (coeff_of(fac.form, order[i]).body() != 0) fac.lead = order[i], fac.rank = i;
    if (fac.lead.empty()) throw Error(ErrorKind::NotInSPrime, "(" + fac.form.to_string() + ") has no invertible body");
    fac.trivial = fac.form.even.size() == 1 && fac.form.nil.empty();
    fs.push_back(std::move(fac));
  }
  std::stable_sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.rank < b.rank; });

  std::vector<std::string> vars = f.numerator.even_vars();
  for (const auto& fac : fs)
    for (const auto& [n, c] : fac.form.even) vars.push_back(n);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::map<std::string, Interval> target;
  for (const auto& x : vars) {
    target[x] = window.for_var(x);
    if (!target[x].bounded()) throw Error(ErrorKind::BadSpec, "expansion window for " + x + " must be bounded");
  }

  long slack = 0;
  for (std::size_t a = 0; a < fs.size(); ++a) {
    Factor& A = fs[a];
    if (A.trivial) continue;
    long need = -target[A.lead].lo - A.p + degree(f.numerator, A.lead);
    for (std::size_t b = 0; b < fs.size(); ++b) {
      if (b == a) continue;
      const Grassmann c = coeff_of(fs[b].form, A.lead);
      if (c.is_zero() || fs[b].lead == A.lead) continue;
      need += fs[b].rank < A.rank ? fs[b].K : nil_degree(c);
    }
    A.K = static_cast<int>(std::max(0L, need));
    slack += A.K + A.p;
  }
  slack += 2;
  for (const auto& x : vars) slack += degree(f.numerator, x);

  Series acc = f.numerator;
  const auto wide = widen(target, slack);
  for (std::size_t a = 0; a < fs.size(); ++a)
    acc = ss_mul(expand_factor(fs[a]), acc, MulOptions{a + 1 == fs.size() ? target : wide, false});
  if (fs.empty()) acc = ss_mul(one_in(vars, {}), acc, MulOptions{target, false});
  return acc;
}

RationalSuperFn substitute(const RationalSuperFn& f, const std::string& var, const LinearForm& by) {
  const Series rep = by.series();
  RationalSuperFn out;
  Series num(merge_names(f.numerator.even_vars(), rep.even_vars()), merge_names(f.numerator.odd_vars(), rep.odd_vars()));
  const int vi = f.numerator.has_even(var) ? f.numerator.even_index(var) : -1;
  for (const auto& [m, c] : f.numerator.terms()) {
    Mono rest = m;
    int e = 0;
    if (vi >= 0) e = rest.e[vi], rest.e[vi] = 0;
    Series one(f.numerator.even_vars(), f.numerator.odd_vars());
    one.add(rest, c);
    one.fit_support_to_terms();
    Series t = ss_mul(power(rep, e), one).extended(num.even_vars(), num.odd_vars());
    for (const auto& [k, ck] : t.terms()) num.add(k, ck);
  }
  num.fit_support_to_terms();
  out.numerator = num;
  for (const auto& [form, p] : f.denominator) {
    LinearForm g;
    const Grassmann a = coeff_of(form.canonical(), var);
    for (const auto& [n, c] : form.even)
      if (n != var) g.even.emplace_back(n, c);
    for (const auto& t : form.nil) g.nil.push_back(t);
    if (!a.is_zero()) {
      for (const auto& [n, c] : by.even) g.even.emplace_back(n, a * c);
      for (const auto& [i, j, c] : by.nil) g.nil.emplace_back(i, j, a * c);
    }
    out.denominator.emplace_back(g.canonical(), p);
  }
  return out;
}

ComparisonReport compare_functions(const RationalSuperFn& f, const RationalSuperFn& g) {
  auto cross = [](const Series& num, const RationalSuperFn& other) {
    Series r = num;
    for (const auto& [form, p] : other.denominator) r = ss_mul(power(form.series(), p), r);
    return r;
  };
  return ss_compare(cross(f.numerator, g), cross(g.numerator, f));
}

ReconstructSpec ReconstructSpec::products(std::array<int, 3> bounds) {
  ReconstructSpec s;
  s.forms = {LinearForm::var("x1"), LinearForm::var("x2"), LinearForm::make("x1", "x2", -1, -1, "phi1", "phi2")};
  s.order = {"x1", "x2"};
  s.bounds = bounds;
  return s;
}

ReconstructSpec ReconstructSpec::iterates(std::array<int, 3> bounds) {
  ReconstructSpec s;
  s.forms = {LinearForm::var("x0"), LinearForm::var("x2"), LinearForm::make("x0", "x2", 1, 1, "phi1", "phi2")};
  s.order = {"x2", "x0"};
  s.bounds = bounds;
  return s;
}

Reconstruction reconstruct(const Series& S, std::array<int, 3> bounds) {
  return reconstruct(S, ReconstructSpec::products(bounds));
}

Reconstruction reconstruct(const Series& S, const ReconstructSpec& spec) {
  if (S.empty_window()) throw Error(ErrorKind::WindowTooNarrow, "series has an empty exact window");
  for (int b : spec.bounds)
    if (b < 0) throw Error(ErrorKind::BadSpec, "negative exponent bound");
  std::array<Series, 3> F;
  for (int i = 0; i < 3; ++i) F[i] = spec.forms[i].series();

  // Verification window: the series' exact box, with open sides closed at the support or a far bound.
  long far = spec.margin + 8;
  for (std::size_t v = 0; v < S.even_vars().size(); ++v)
    for (auto e : {S.window(static_cast<int>(v)).exact.lo, S.window(static_cast<int>(v)).exact.hi,
                   S.window(static_cast<int>(v)).support.lo, S.window(static_cast<int>(v)).support.hi})
      if (e > -Interval::kInf && e < Interval::kInf) far = std::max(far, 2 * std::abs(static_cast<long>(e)));
  WindowConfig wc;
  std::map<std::string, Interval> region;
  for (std::size_t v = 0; v < S.even_vars().size(); ++v) {
    const VarWindow& w = S.window(static_cast<int>(v));
    Interval iv = w.exact;
    if (!iv.lo_finite()) iv.lo = w.support.lo_finite() ? std::max<std::int64_t>(w.support.lo, -far) : -far;
    if (!iv.hi_finite()) iv.hi = w.support.hi_finite() ? std::min<std::int64_t>(w.support.hi, far) : far;
    if (iv.is_empty()) throw Error(ErrorKind::WindowTooNarrow, "no exact coefficients in " + S.even_vars()[v]);
    wc.per_var[S.even_vars()[v]] = iv;
    region[S.even_vars()[v]] = iv;
  }
  for (const auto& form : spec.forms)
    for (const auto& [n, c] : form.even)
      if (!wc.per_var.count(n)) wc.per_var[n] = Interval{-far, far};

  bool unsettled = false;
  std::string unsettled_why;
  for (int t = 0; t <= spec.bounds[2]; ++t)
    for (int r = 0; r <= spec.bounds[0]; ++r)
      for (int s = 0; s <= spec.bounds[1]; ++s) {
        Series D = ss_mul(ss_mul(power(F[0], r), power(F[1], s)), power(F[2], t));
        Series P = ss_mul(D, S);
        if (P.empty_window()) throw Error(ErrorKind::WindowTooNarrow, "window too small for the denominator");
        bool poly = true;
        std::vector<int> deg(P.even_vars().size(), 0);
        Series g(P.even_vars(), P.odd_vars());
        for (const auto& [m, c] : P.terms()) {
          if (!P.in_exact(m)) continue;
          for (std::size_t v = 0; v < P.even_vars().size() && poly; ++v) {
            if (m.e[v] < 0) poly = false;
            deg[v] = std::max(deg[v], static_cast<int>(m.e[v]));
          }
          if (!poly) break;
          g.add(m, c);
        }
        if (!poly) continue;
        for (std::size_t v = 0; v < P.even_vars().size(); ++v) {
          const Interval ex = P.window(static_cast<int>(v)).exact;
          if (ex.lo > -spec.margin || ex.hi < deg[v] + spec.margin)
            throw Error(ErrorKind::WindowTooNarrow, "exact window of " + P.even_vars()[v] + " is " + nsvosa::to_string(ex) +
                                                        " but the candidate of degree " + std::to_string(deg[v]) +
                                                        " needs a margin of " + std::to_string(spec.margin));
        }
        g.fit_support_to_terms();
        Reconstruction out;
        out.f.numerator = g;
        const std::array<int, 3> pw{r, s, t};
        for (int i = 0; i < 3; ++i)
          if (pw[i] > 0) out.f.denominator.emplace_back(spec.forms[i].canonical(), pw[i]);
        out.r = r, out.s = s, out.t = t;
        ComparisonReport rep = ss_compare(iota_expand(out.f, spec.order, wc), S, region);
        if (rep.status == Status::Pass) {
          out.checked = rep.checked;
          return out;
        }
        if (rep.status == Status::Inconclusive) unsettled = true, unsettled_why = rep.detail;
      }
  if (unsettled) throw Error(ErrorKind::WindowTooNarrow, "re-expansion could not be compared: " + unsettled_why);
  throw Error(ErrorKind::NoRationalForm, "no denominator within bounds (" + std::to_string(spec.bounds[0]) + ", " +
                                             std::to_string(spec.bounds[1]) + ", " + std::to_string(spec.bounds[2]) +
                                             ") clears the series");
}

}  // namespace nsvosa
