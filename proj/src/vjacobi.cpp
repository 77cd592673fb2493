#include "nsvosa/error.hpp"
#include "vcommon.hpp"

namespace nsvosa {

using namespace detail;

Grassmann DualVector::pair(const ModuleVector& v) const {
  Grassmann r;
  for (const auto& [k, c] : v.terms()) {
    auto it = coeffs.find(k.index);
    if (it != coeffs.end()) r = r + c * it->second;
  }
  return r;
}

namespace {

const std::string X0 = "x0", X1 = "x1", X2 = "x2", P1 = "phi1", P2 = "phi2";

bool odd_vec(const ModuleVector& v) { return is_odd(parity_of(v)); }

struct Terms {
  VosaData W;
  int Wd = 0, Wmid = 0;
  int uw = 0, vw = 0, ww = 0;
  bool phi = true;
  VecSeries P12, P21, R;
  std::string note;
};

OddArg arg(bool phi, const std::string& p) { return phi ? OddArg::var(p) : OddArg::none(); }

// Raises V to cover intermediate weights; exact windows shrink when it cannot.
Terms prepare(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
              const CheckConfig& cfg, bool phi) {
  Terms t;
  t.phi = phi;
  t.uw = weight2_of(u), t.vw = weight2_of(v), t.ww = weight2_of(w);
  const int pair = std::max({t.uw + t.vw, t.vw + t.ww, t.uw + t.ww});
  const int want = pair + 2 * static_cast<int>(cfg.N) + (phi ? 1 : 0);
  t.W = V.at_weight(std::max(want, cfg.dual_weight2));
  t.Wmid = std::min(want, t.W.max_weight2);
  t.Wd = std::min(cfg.dual_weight2, t.W.max_weight2);
  if (t.Wmid < want) t.note = "intermediate weights capped at " + to_string(Rational(t.Wmid) / 2);
  return t;
}

VecSeries product(const Terms& t, const ModuleVector& a, const std::string& xa, const std::string& pa,
                  const ModuleVector& b, const std::string& xb, const std::string& pb, const ModuleVector& w) {
  const int ab = weight2_of(b) + t.ww;
  VecSeries S = apply_vertex(t.W, b, xb, arg(t.phi, pb), constant_series(w), t.ww, t.Wmid);
  restrict_to_complete(S, xb, ab, t.Wmid, t.phi ? 1 : 0);
  return apply_vertex(t.W, a, xa, arg(t.phi, pa), S, ab, t.Wd);
}

void build_products(Terms& t, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w) {
  t.P12 = product(t, u, X1, P1, v, X2, P2, w);
  t.P21 = product(t, v, X2, P2, u, X1, P1, w);
}

void build_iterate(Terms& t, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w) {
  OddArg a = t.phi ? OddArg{{{1, P1}, {-1, P2}}} : OddArg::none();
  VecSeries Q = apply_vertex(t.W, u, X0, a, constant_series(v), t.vw, t.Wmid);
  restrict_to_complete(Q, X0, t.uw + t.vw, t.Wmid, t.phi ? 1 : 0);
  t.R = apply_vertex_series(t.W, Q, t.uw + t.vw, X2, arg(t.phi, P2), w, t.Wd);
}

WindowConfig delta_window(const Terms& t, long N) {
  WindowConfig wc;
  wc.N = N;
  const long span = 3 * N + t.Wmid + 8;
  for (const auto& x : {X0, X1, X2}) wc.per_var[x] = Interval{-span, span};
  return wc;
}

Series delta(const Terms& t, long N, SignedVar lead, SignedVar tail, SignedVar den, int nil_sign) {
  DeltaSpec s;
  s.lead = lead;
  s.tail = tail;
  s.denom = den;
  if (t.phi) s.nil = DeltaSpec::Nil{nil_sign, P1, P2};
  WindowConfig wc = delta_window(t, N);
  wc.per_var[den.var] = Interval{-N - 1, N + 1};
  wc.per_var[tail.var] = Interval{0, 2 * N + t.Wmid + 4};
  return times_monomial(build_delta(s, wc), {{den.var, -1}});
}

std::map<std::string, Interval> cube(long N) { return box({X0, X1, X2}, Interval{-N, N}); }

ComparisonReport compare_terms(const Terms& t, const VecSeries& lhs, const VecSeries& rhs,
                               const std::map<std::string, Interval>& region, const std::optional<DualVector>& vp) {
  ComparisonReport r;
  if (vp) {
    r = ss_compare(pair_series(lhs, *vp), pair_series(rhs, *vp), region);
  } else {
    r = compare_vec(t.W, lhs, rhs, region);
  }
  if (!t.note.empty() && r.status != Status::Fail) r.detail += (r.detail.empty() ? "" : "; ") + t.note;
  return r;
}

ComparisonReport jacobi_impl(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                             const std::optional<DualVector>& vp, const CheckConfig& cfg, bool phi) {
  if (cfg.N < 0) throw Error(ErrorKind::EmptyWindow, "negative window");
  parity_of(u), parity_of(v);
  Terms t = prepare(V, u, v, w, cfg, phi);
  build_products(t, u, v, w);
  build_iterate(t, u, v, w);
  const long N = cfg.N;
  const MulOptions mo{cube(N), false};
  const SignedVar x0{1, X0}, x1{1, X1}, x2{1, X2};
  const SignedVar mx0{-1, X0}, mx1{-1, X1}, mx2{-1, X2};
  VecSeries a = ss_mul(delta(t, N, x1, mx2, x0, -1), t.P12, mo);
  VecSeries b = ss_mul(delta(t, N, x2, mx1, mx0, 1), t.P21, mo);
  VecSeries lhs = odd_vec(u) && odd_vec(v) ? a + b : a - b;
  VecSeries rhs = ss_mul(delta(t, N, x1, mx0, x2, -1), t.R, mo);
  return compare_terms(t, lhs, rhs, cube(N), vp);
}

// (x1 - x2 - phi1 phi2) or (x0 + x2 + phi1 phi2) as a polynomial.
Series linear(const std::string& a, const std::string& b, int sb, int nil) {
  return polynomial({a, b}, {P1, P2},
                    {{{{a, 1}}, {{}, Grassmann(Rational(1))}},
                     {{{b, 1}}, {{}, Grassmann(Rational(sb))}},
                     {{}, {{P1, P2}, Grassmann(Rational(nil))}}});
}

Series power(const Series& p, int k) {
  Series r = polynomial(p.even_vars(), p.odd_vars(), {{{}, {{}, Grassmann(Rational(1))}}});
  for (int i = 0; i < k; ++i) r = ss_mul(p, r);
  return r;
}

std::string weak_detail(int k, int proof) {
  return "k = " + std::to_string(k) + ", proof bound " + std::to_string(proof);
}

}  // namespace

ComparisonReport check_jacobi(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                              const std::optional<DualVector>& vp, const CheckConfig& cfg) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "check_jacobi needs odd variables");
  return jacobi_impl(V, u, v, w, vp, cfg, true);
}

ComparisonReport check_jacobi_plain(const VosaData& V, const ModuleVector& u, const ModuleVector& v,
                                    const ModuleVector& w, const CheckConfig& cfg) {
  if (V.flavor != Flavor::WithoutPhi) throw Error(ErrorKind::WrongFlavor, "check_jacobi_plain needs the plain flavor");
  return jacobi_impl(V, u, v, w, std::nullopt, cfg, false);
}

namespace detail {

Series pair_series(const VecSeries& s, const DualVector& d) {
  Series r(s.even_vars(), s.odd_vars());
  for (std::size_t v = 0; v < s.even_vars().size(); ++v) r.set_window(static_cast<int>(v), s.window(static_cast<int>(v)));
  r.set_band(s.band());
  r.flag_empty_window(s.empty_window());
  for (const auto& [m, c] : s.terms()) r.add(m, d.pair(c));
  return r;
}

Correlators correlators(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                        const CheckConfig& cfg) {
  Terms t = prepare(V, u, v, w, cfg, true);
  build_products(t, u, v, w);
  build_iterate(t, u, v, w);
  return {std::move(t.W), t.Wmid, std::move(t.P12), std::move(t.P21), std::move(t.R), std::move(t.note)};
}

ComparisonReport jacobi_sweep(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  for (int u : sample(V, cfg.pair_weight2))
    for (int v : sample(V, cfg.pair_weight2))
      for (int w : sample(V, cfg.target_weight2)) {
        ComparisonReport r = V.flavor == Flavor::WithPhi
                                 ? check_jacobi(V, V.vec(u), V.vec(v), V.vec(w), std::nullopt, cfg)
                                 : check_jacobi_plain(V, V.vec(u), V.vec(v), V.vec(w), cfg);
        if (r.status != Status::Pass)
          r.detail = "(" + V.basis[u].label + ", " + V.basis[v].label + ", " + V.basis[w].label + ") " + r.detail;
        rep.merge(r);
      }
  return finish(rep);
}

ComparisonReport supercommutator_sweep(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const long N = cfg.N;
  for (int ui : sample(V, cfg.pair_weight2))
    for (int vi : sample(V, cfg.pair_weight2))
      for (int wi : sample(V, cfg.target_weight2)) {
        const ModuleVector u = V.vec(ui), v = V.vec(vi), w = V.vec(wi);
        Terms t = prepare(V, u, v, w, cfg, true);
        build_products(t, u, v, w);
        build_iterate(t, u, v, w);
        VecSeries lhs = odd_vec(u) && odd_vec(v) ? t.P12 + t.P21 : t.P12 - t.P21;
        auto target = cube(N);
        target[X0] = Interval::point(-1);
        VecSeries full = ss_mul(delta(t, N, {1, X1}, {-1, X0}, {1, X2}, -1), t.R, MulOptions{target, false});
        ComparisonReport r;
        try {
          r = compare_terms(t, lhs, ss_residue(full, X0), box({X1, X2}, Interval{-N, N}), std::nullopt);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::WindowMiss) throw;
          r = ComparisonReport::inconclusive(e.what());
        }
        if (r.status != Status::Pass)
          r.detail = "[Y(" + V.basis[ui].label + "), Y(" + V.basis[vi].label + ")] on " + V.basis[wi].label + ": " +
                     r.detail;
        rep.merge(r);
      }
  return finish(rep);
}

}  // namespace detail

WeakResult weak_supercomm_k(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const CheckConfig& cfg) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "weak supercommutativity needs odd variables");
  const bool sign = odd_vec(u) && odd_vec(v);
  const ModuleVector w = V.vec(V.vacuum);
  WeakResult out;
  {
    const int uw = weight2_of(u), vw = weight2_of(v);
    VosaData W = V.at_weight(uw + vw);
    int lmax2 = std::numeric_limits<int>::min();
    for (int l2 = uw + vw - 2; l2 >= -3 && lmax2 == std::numeric_limits<int>::min(); --l2)
      if (!W.mode(u, l2, v).is_zero()) lmax2 = l2;
    out.proof_bound = lmax2 == std::numeric_limits<int>::min() ? 1 : std::max(1, (lmax2 + 3) / 2 + 1);
  }
  // Operator identities are compared on every sampled w.
  std::vector<Terms> ts;
  for (int wi : sample(V, cfg.target_weight2)) {
    Terms t = prepare(V, u, v, V.vec(wi), cfg, true);
    build_products(t, u, v, V.vec(wi));
    ts.push_back(std::move(t));
  }
  (void)w;
  const Series p = linear(X1, X2, -1, -1);
  const auto region = box({X1, X2}, Interval{-cfg.N, cfg.N});
  std::optional<ComparisonReport> at_proof;
  for (int k = 1; k <= cfg.k_limit; ++k) {
    const Series pk = power(p, k);
    ComparisonReport rep = open_report();
    for (const auto& t : ts) {
      VecSeries a = ss_mul(pk, t.P12, MulOptions{region, false});
      VecSeries b = ss_mul(pk, t.P21, MulOptions{region, false});
      rep.merge(compare_terms(t, a, sign ? -b : b, region, std::nullopt));
    }
    rep = finish(rep);
    if (k == out.proof_bound) at_proof = rep;
    if (rep.status == Status::Pass) {
      out.k = k;
      rep.detail = weak_detail(k, out.proof_bound);
      out.report = rep;
      return out;
    }
  }
  if (at_proof) {
    out.k = out.proof_bound;
    out.report = *at_proof;
    out.report.detail = std::string(out.report.failed() ? "fails" : "undecided") + " at the proof bound: " + out.report.detail;
    return out;
  }
  throw Error(ErrorKind::NotFound, "no k <= " + std::to_string(cfg.k_limit));
}

WeakResult weak_assoc_k(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                        const CheckConfig& cfg) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "weak associativity needs odd variables");
  WeakResult out;
  {
    const int uw = weight2_of(u), ww = weight2_of(w);
    VosaData W = V.at_weight(uw + ww);
    int nmax = std::numeric_limits<int>::min();
    for (int n2 = uw + ww - 2; n2 >= -3 * (uw + ww) - 4; --n2) {
      if (W.mode(u, n2, w).is_zero()) continue;
      nmax = std::max(nmax, n2 & 1 ? (n2 + 1) / 2 : n2 / 2);
    }
    out.proof_bound = nmax == std::numeric_limits<int>::min() ? 1 : std::max(1, nmax + 2);
  }
  Terms t = prepare(V, u, v, w, cfg, true);
  const long N = cfg.N;
  t.P12 = product(t, u, X1, P1, v, X2, P2, w);
  build_iterate(t, u, v, w);
  const auto region = box({X0, X2}, Interval{-N, N});
  const Series eps = polynomial({}, {P1, P2}, {{{}, {{P1, P2}, Grassmann(Rational(1))}}});
  const auto wide = box({X0, X2}, Interval{-N - cfg.k_limit, N});
  VecSeries sub =
      ss_shift_subst(t.P12, X1, ShiftSpec{X0, X2, 1, 2 * N + cfg.k_limit + t.Wmid + 4}, &eps, wide);
  const Series p = linear(X0, X2, 1, 1);
  std::optional<ComparisonReport> at_proof;
  for (int k = 1; k <= cfg.k_limit; ++k) {
    const Series pk = power(p, k);
    ComparisonReport rep = compare_terms(t, ss_mul(pk, t.R, MulOptions{region, false}),
                                         ss_mul(pk, sub, MulOptions{region, false}), region, std::nullopt);
    if (k == out.proof_bound) at_proof = rep;
    if (rep.status == Status::Pass) {
      out.k = k;
      rep.detail = weak_detail(k, out.proof_bound);
      out.report = rep;
      return out;
    }
  }
  if (at_proof) {
    out.k = out.proof_bound;
    out.report = *at_proof;
    out.report.detail = std::string(out.report.failed() ? "fails" : "undecided") + " at the proof bound: " + out.report.detail;
    return out;
  }
  throw Error(ErrorKind::NotFound, "no k <= " + std::to_string(cfg.k_limit));
}

namespace {

ComparisonReport hom_impl(const ModuleMap& gamma, const VosaData& V1, const VosaData& V2, const CheckConfig& cfg,
                          int odd_sign, const ModuleVector& tau_image) {
  if (V1.flavor != V2.flavor) throw Error(ErrorKind::WrongFlavor, "homomorphism between different flavors");
  const auto basis = sample(V1, cfg.weight_bound2);
  std::map<int, ModuleVector> img;
  for (int b : basis) {
    ModuleVector g = gamma(V1.vec(b));
    for (const auto& [k, c] : g.terms())
      if (k.weight2 != V1.basis[b].weight2 || k.parity + c.parity() != V1.basis[b].parity)
        throw Error(ErrorKind::GradingViolation, "image of " + V1.basis[b].label + " changes weight or parity");
    img[b] = g;
  }
  ComparisonReport rep = open_report();
  expect_eq(rep, V2, gamma(V1.vec(V1.vacuum)), V2.vec(V2.vacuum), {}, "vacuum not preserved");
  expect_eq(rep, V2, gamma(V1.tau), tau_image, {}, "tau not preserved");
  const int top = std::min(V1.max_weight2, V2.max_weight2);
  const int step = V1.flavor == Flavor::WithPhi ? 1 : 2;
  for (int u : basis)
    for (int v : basis) {
      const int hi = V1.basis[u].weight2 + V1.basis[v].weight2 - 2;
      int lo = hi - top;
      if (step == 2 && (lo & 1)) ++lo;
      for (int n2 = lo; n2 <= hi; n2 += step) {
        ModuleVector a = gamma(V1.mode(u, n2, v).projected(top));
        ModuleVector b = V2.mode(img[u], n2, img[v]).projected(top);
        if ((n2 & 1) && odd_sign < 0) b = -b;
        expect_eq(rep, V2, a, b, {u, n2, v},
                  "intertwining at " + V1.basis[u].label + "_" + to_string(Rational(n2) / 2) + " " + V1.basis[v].label);
      }
    }
  return finish(rep);
}

}  // namespace

ComparisonReport check_hom(const ModuleMap& gamma, const VosaData& V1, const VosaData& V2, const CheckConfig& cfg) {
  return hom_impl(gamma, V1, V2, cfg, 1, V2.tau);
}

SignFlipResult sign_flip(const VosaData& V, const CheckConfig& cfg) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "sign flip needs odd variables");
  SignFlipResult out{sign_flip_data(V), open_report()};
  for (const auto& id : axiom_ids(Flavor::WithPhi)) {
    ComparisonReport r = check_axiom(out.data, id, cfg);
    if (r.status != Status::Pass) r.detail = id + ": " + r.detail;
    out.report.merge(r);
  }
  // The identity intertwines Y(., (x, phi)) with the flipped Y(., (x, -phi)) and sends tau to -(-tau).
  ComparisonReport h = hom_impl([](const ModuleVector& x) { return x; }, V, out.data, cfg, -1, -out.data.tau);
  if (h.status != Status::Pass) h.detail = "isomorphism: " + h.detail;
  out.report.merge(h);
  return out;
}

}  // namespace nsvosa
