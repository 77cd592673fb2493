#include <functional>

#include "nsvosa/error.hpp"
#include "nsvosa/nsalg.hpp"
#include "vcommon.hpp"

namespace nsvosa {

using namespace detail;

namespace {

const std::string kX = "x", kPhi = "phi", kX0 = "x0", kPhi0 = "phi0";

std::string mode_name(const VosaData& V, int u, int n2, int w) {
  return V.basis[u].label + "_" + to_string(Rational(n2) / 2) + " " + V.basis[w].label;
}

// Raises the truncation, marking the report inconclusive when that is impossible.
VosaData raised(const VosaData& V, int need2, ComparisonReport& rep) {
  VosaData r = V.at_weight(need2);
  if (r.max_weight2 < need2) {
    rep.status = rep.status == Status::Fail ? Status::Fail : Status::Inconclusive;
    rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("table too small for weight ") +
                  to_string(Rational(need2) / 2);
  }
  return r;
}

OddArg odd_arg(const VosaData& V) { return V.flavor == Flavor::WithPhi ? OddArg::var(kPhi) : OddArg::none(); }

VecSeries Yw(const VosaData& V, const ModuleVector& v, const ModuleVector& w, int out) {
  return apply_vertex(V, v, kX, odd_arg(V), constant_series(w), weight2_of(w), out);
}

void merge_cmp(ComparisonReport& rep, const ComparisonReport& c, const std::string& what) {
  ComparisonReport t = c;
  if (t.status != Status::Pass) t.detail = what + ": " + t.detail;
  rep.merge(t);
}

ModuleVector ns_apply(const VosaData& V, NSSymbol s, const ModuleVector& w) {
  switch (s.kind) {
    case NSSymbol::Kind::L: return V.L(s.index2 / 2, w);
    case NSSymbol::Kind::G: return V.G(s.index2, w);
    case NSSymbol::Kind::D: break;
  }
  return scalar(V.rank) * w;
}

int ns_raise2(NSSymbol s) { return s.kind == NSSymbol::Kind::D ? 0 : -s.index2; }

// ---- axioms ----

ComparisonReport ax_truncation(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int step = V.flavor == Flavor::WithPhi ? 1 : 2;
  for (int u : sample(V, cfg.weight_bound2))
    for (int w : sample(V, cfg.weight_bound2)) {
      int lo = V.basis[u].weight2 + V.basis[w].weight2 - 1;
      if (step == 2 && (lo & 1)) ++lo;
      for (int n2 = lo; n2 <= 2 * cfg.N; n2 += step)
        expect_eq(rep, V, V.provider->mode(V, u, n2, w), {}, {u, n2, w}, "nonzero below weight 0: " + mode_name(V, u, n2, w));
    }
  return finish(rep);
}

ComparisonReport ax_vacuum(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  for (int w : sample(V, cfg.weight_bound2))
    for (long e = -cfg.N; e <= cfg.N; ++e) {
      const int n = static_cast<int>(-e - 1);
      expect_eq(rep, V, V.mode(V.vacuum, 2 * n, w), n == -1 ? V.vec(w) : ModuleVector{}, {e, 0, w},
                "vacuum mode " + mode_name(V, V.vacuum, 2 * n, w));
      if (V.flavor == Flavor::WithPhi)
        expect_eq(rep, V, V.mode(V.vacuum, 2 * n - 1, w), {}, {e, 1, w},
                  "vacuum mode " + mode_name(V, V.vacuum, 2 * n - 1, w));
    }
  return finish(rep);
}

ComparisonReport ax_creation(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int step = V.flavor == Flavor::WithPhi ? 1 : 2;
  for (int v : sample(V, cfg.weight_bound2)) {
    for (int n2 = step == 1 ? -1 : 0; n2 <= 2 * cfg.N; n2 += step)
      expect_eq(rep, V, V.mode(v, n2, V.vacuum), {}, {v, n2}, "negative power in Y(v)1: " + mode_name(V, v, n2, V.vacuum));
    expect_eq(rep, V, V.mode(v, -2, V.vacuum), V.vec(v), {v, -2}, "creation limit for " + V.basis[v].label);
  }
  return finish(rep);
}

ComparisonReport ax_grading(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const VosaData W = V.flavor == Flavor::WithPhi ? V : raised(V, 4, rep);
  for (int v : sample(V, cfg.weight_bound2))
    expect_eq(rep, W, W.L(0, W.vec(v)), scalar(Rational(V.basis[v].weight2) / 2) * W.vec(v), {v},
              "L(0) on " + V.basis[v].label);
  return finish(rep);
}

ComparisonReport ax_ns_relations(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int B = cfg.ns_index_bound2;
  const int bound = std::min(cfg.weight_bound2, V.max_weight2);
  VosaData W = V.at_weight(std::max(bound + B, V.flavor == Flavor::WithPhi ? 0 : 4));
  std::vector<NSSymbol> syms;
  for (int i = -B; i <= B; ++i) syms.push_back(i & 1 ? NSSymbol::G2(i) : NSSymbol::L(i / 2));
  std::size_t skipped = 0;
  for (int w : sample(V, bound)) {
    const ModuleVector wv = W.vec(w);
    const int ww = V.basis[w].weight2;
    std::map<int, ModuleVector> single;
    for (std::size_t i = 0; i < syms.size(); ++i)
      if (ww + ns_raise2(syms[i]) <= W.max_weight2) single[static_cast<int>(i)] = ns_apply(W, syms[i], wv);
    for (std::size_t a = 0; a < syms.size(); ++a)
      for (std::size_t b = 0; b < syms.size(); ++b) {
        const NSSymbol sa = syms[a], sb = syms[b];
        if (!single.count(static_cast<int>(a)) || !single.count(static_cast<int>(b))) {
          ++skipped;
          continue;
        }
        ModuleVector lhs = ns_apply(W, sa, single[static_cast<int>(b)]);
        ModuleVector ba = ns_apply(W, sb, single[static_cast<int>(a)]);
        if (is_odd(sa.parity()) && is_odd(sb.parity())) lhs += ba;
        else lhs -= ba;
        ModuleVector rhs;
        const NSElement br = ns_bracket(sa, sb);
        for (const auto& [s, c] : br.terms()) rhs += c * ns_apply(W, s, wv);
        expect_eq(rep, W, lhs, rhs, {sa.index2, sb.index2, w},
                  "[" + to_string(sa) + ", " + to_string(sb) + "] on " + V.basis[w].label);
      }
  }
  if (skipped && rep.status == Status::Pass && rep.checked == 0) return ComparisonReport::inconclusive("table too small");
  return finish(rep);
}

ComparisonReport ax_g_derivative(const VosaData& V, const CheckConfig& cfg) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "g-derivative needs odd variables");
  ComparisonReport rep = open_report();
  const int bound = std::min(cfg.weight_bound2, V.max_weight2);
  VosaData W = raised(V, bound + 1, rep);
  const Series phi = monomial({}, {kPhi}, scalar(1));
  for (int v : sample(V, std::min(bound, W.max_weight2 - 1)))
    for (int w : sample(V, bound)) {
      VecSeries S = Yw(W, W.vec(v), W.vec(w), V.max_weight2);
      VecSeries lhs = ss_derive_odd(S, kPhi) + times(phi, ss_derive_even(S, kX));
      VecSeries rhs = Yw(W, W.G(-1, W.vec(v)), W.vec(w), V.max_weight2);
      merge_cmp(rep, compare_vec(W, lhs, rhs), "Y(G(-1/2)" + V.basis[v].label + ") on " + V.basis[w].label);
    }
  return finish(rep);
}

ComparisonReport l_derivative(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int bound = std::min(cfg.weight_bound2, V.max_weight2);
  VosaData W = raised(V, std::max(bound + 2, V.flavor == Flavor::WithPhi ? 0 : 4), rep);
  for (int v : sample(V, std::min(bound, W.max_weight2 - 2)))
    for (int w : sample(V, bound)) {
      VecSeries lhs = ss_derive_even(Yw(W, W.vec(v), W.vec(w), V.max_weight2), kX);
      VecSeries rhs = Yw(W, W.L(-1, W.vec(v)), W.vec(w), V.max_weight2);
      merge_cmp(rep, compare_vec(W, lhs, rhs), "Y(L(-1)" + V.basis[v].label + ") on " + V.basis[w].label);
    }
  return finish(rep);
}

// ---- consequences ----

void require_phi(const VosaData& V) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "consequence checks need odd variables");
}

ComparisonReport c_vacuum_annihilation(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const ModuleVector one = V.vec(V.vacuum);
  for (int n = -1; 2 * n <= cfg.ns_index_bound2; ++n) {
    expect_eq(rep, V, V.L(n, one), {}, {0, 2 * n}, "L(" + std::to_string(n) + ")1");
    expect_eq(rep, V, V.G(2 * n + 1, one), {}, {1, 2 * n + 1}, "G(" + to_string(Rational(2 * n + 1) / 2) + ")1");
  }
  return finish(rep);
}

ComparisonReport c_tau_from_vacuum(const VosaData& V, const CheckConfig&) {
  ComparisonReport rep = open_report();
  expect_eq(rep, V, V.G(-3, V.vec(V.vacuum)), V.tau, {-3}, "G(-3/2)1");
  return finish(rep);
}

ComparisonReport c_tau_weight(const VosaData& V, const CheckConfig&) {
  ComparisonReport rep = open_report();
  expect_eq(rep, V, V.L(0, V.tau), scalar(Rational(3, 2)) * V.tau, {0}, "L(0)tau");
  return finish(rep);
}

ComparisonReport c_creation_exponential(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int out = V.max_weight2;
  for (int v : sample(V, cfg.weight_bound2)) {
    VecSeries lhs = Yw(V, V.vec(v), V.vec(V.vacuum), out);
    VecSeries rhs = apply_exp(V, 1, kX, kPhi, constant_series(V.vec(v)), out);
    merge_cmp(rep, compare_vec(V, lhs, rhs), "Y(" + V.basis[v].label + ")1");
  }
  return finish(rep);
}

ComparisonReport c_omega(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  VosaData W = raised(V, 4, rep);
  if (W.max_weight2 < 4) return rep;
  const ModuleVector omega = W.omega();
  ++rep.checked;
  if (omega.is_zero() || weight2_of(omega) != 4) {
    rep.status = Status::Fail;
    rep.detail = "omega is not of weight 2";
    rep.witnesses.push_back({{}, W.render(omega), "weight 2"});
    return rep;
  }
  const int out = W.max_weight2;
  const Series phi = monomial({}, {kPhi}, scalar(1));
  for (int w : sample(V, cfg.weight_bound2)) {
    const ModuleVector wv = W.vec(w);
    const int ww = V.basis[w].weight2;
    VecSeries lhs = Yw(W, omega, wv, out);
    VecSeries L({kX}, {}), G({kX}, {});
    for (int n = (ww - out) / 2 - 2; 2 * n <= ww + 2; ++n) {
      L.add({{kX, -n - 2}}, {}, W.L(n, wv).projected(out));
      G.add({{kX, -n - 2}}, {}, scalar(Rational(-(n + 1)) / 2) * W.G(2 * n - 1, wv).projected(out));
    }
    VecSeries rhs = L + times(phi, G);
    merge_cmp(rep, compare_vec(W, lhs, rhs), "Y(omega) on " + V.basis[w].label);
  }
  return finish(rep);
}

ComparisonReport c_weight_rule(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  for (int u : sample(V, cfg.weight_bound2))
    for (int w : sample(V, cfg.weight_bound2))
      for (int n2 = V.basis[u].weight2 + V.basis[w].weight2 - 2 - V.max_weight2; n2 <= 2 * cfg.N; ++n2) {
        const int wr = V.mode_weight2(u, n2, w);
        if (wr < 0) break;
        const ModuleVector r = V.provider->mode(V, u, n2, w);
        const Parity expect = V.basis[u].parity + V.basis[w].parity + parity_of(n2);
        ModuleVector bad;
        for (const auto& [k, c] : r.terms())
          if (k.weight2 != wr || !c.homogeneous() || k.parity + c.parity() != expect) bad.add(k, c);
        expect_eq(rep, V, bad, {}, {u, n2, w}, "grading of " + mode_name(V, u, n2, w));
      }
  return finish(rep);
}

ComparisonReport c_tau_tau(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  VosaData W = raised(V, 4, rep);
  const int out = W.max_weight2;
  VecSeries T = Yw(W, W.tau, W.tau, out);
  VecSeries E({kX}, {kPhi});
  E.add({{kX, -3}}, {}, scalar(Rational(2, 3) * W.rank) * W.vec(W.vacuum));
  E.add({{kX, -1}}, {}, scalar(2) * W.omega());
  // phi c = (-1)^{|c|} c phi with c odd
  E.add({{kX, -2}}, {kPhi}, scalar(-3) * W.tau);
  E.add({{kX, -1}}, {kPhi}, scalar(-2) * W.L(-1, W.tau));
  merge_cmp(rep, compare_vec(W, T, project(E, out), {{kX, Interval{-cfg.N, -1}}}), "Y(tau)tau singular part");
  return finish(rep);
}

ComparisonReport c_odd_relationship(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  VosaData W = raised(V, V.max_weight2 + 1, rep);
  for (int v : sample(V, cfg.weight_bound2)) {
    const bool vodd = is_odd(V.basis[v].parity);
    for (int w : sample(V, cfg.weight_bound2)) {
      const ModuleVector wv = W.vec(w), Gw = W.G(-1, wv);
      for (int n = -cfg.N - 1; n <= cfg.N; ++n) {
        const int wr = V.mode_weight2(v, 2 * n, w);
        if (wr < -1 || wr > V.max_weight2) continue;
        if (wr + 1 > W.max_weight2 || W.basis[w].weight2 + 1 > W.max_weight2) continue;
        ModuleVector lhs = W.mode(v, 2 * n - 1, w);
        ModuleVector rhs = W.G(-1, W.mode(W.vec(v), 2 * n, wv));
        ModuleVector b = W.mode(W.vec(v), 2 * n, Gw);
        rhs = vodd ? rhs + b : rhs - b;
        expect_eq(rep, W, lhs, rhs, {v, 2 * n - 1, w}, "odd mode " + mode_name(V, v, 2 * n - 1, w));
      }
    }
  }
  return finish(rep);
}

ComparisonReport c_u_half_lie(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  VosaData W = raised(V, std::max(V.max_weight2, 2 * cfg.pair_weight2 + cfg.target_weight2), rep);
  auto pu = [&](int u) { return V.basis[u].parity + Parity::Odd; };
  for (int u : sample(V, cfg.pair_weight2))
    for (int v : sample(V, cfg.pair_weight2)) {
      const ModuleVector uv = W.mode(u, -1, v);
      for (int w : sample(V, cfg.target_weight2)) {
        const ModuleVector wv = W.vec(w), uw = W.mode(u, -1, w);
        for (int n2 = -3; n2 <= 2 * cfg.N; ++n2) {
          if (V.mode_weight2(v, n2, w) < 0 && V.mode_weight2(v, n2, w) + V.basis[u].weight2 - 1 < 0) continue;
          const int top = std::max({V.mode_weight2(v, n2, w), V.basis[u].weight2 + V.basis[w].weight2 - 1,
                                    V.basis[u].weight2 + V.basis[v].weight2 - 1});
          if (top > W.max_weight2) continue;
          const Parity pv = V.basis[v].parity + parity_of(n2);
          ModuleVector lhs = W.mode(W.vec(u), -1, W.mode(W.vec(v), n2, wv));
          ModuleVector b = W.mode(W.vec(v), n2, uw);
          lhs = is_odd(pu(u)) && is_odd(pv) ? lhs + b : lhs - b;
          ModuleVector rhs = W.mode(uv, n2, wv);
          expect_eq(rep, W, lhs, rhs, {u, v, n2, w},
                    "[" + V.basis[u].label + "_-1/2, " + V.basis[v].label + "_" + to_string(Rational(n2) / 2) + "] on " +
                        V.basis[w].label);
        }
      }
    }
  return finish(rep);
}

ComparisonReport c_taylor(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const long N = cfg.N;
  const int Wd = std::min(cfg.dual_weight2, V.max_weight2);
  const Series eps = monomial({}, {kPhi0, kPhi}, scalar(1));  // phi0 phi
  for (int v : sample(V, cfg.pair_weight2)) {
    const int vw = V.basis[v].weight2;
    const int Wmid = vw + 2 * static_cast<int>(N) + 1;
    VosaData W = raised(V, std::max(Wmid, Wd), rep);
    if (W.max_weight2 < Wmid) continue;
    for (int w : sample(V, cfg.target_weight2)) {
      const ModuleVector wv = W.vec(w);
      VecSeries Y0 = Yw(W, W.vec(v), wv, Wd);
      for (int variant = 0; variant < 3; ++variant) {
        const bool use_x = variant != 1, use_phi = variant != 0;
        VecSeries E = use_x ? apply_exp(W, 1, kX0, use_phi ? kPhi0 : "", constant_series(W.vec(v)), Wmid)
                            : apply_exp(W, 1, kX0, kPhi0, constant_series(W.vec(v)), vw + 1);
        if (!use_x) {
          // drop the x0 part by keeping only x0^0
          E.set_exact(kX0, Interval::all());
          VecSeries only(E.even_vars(), E.odd_vars());
          for (const auto& [m, c] : E.terms())
            if (m.e[E.even_index(kX0)] == 0) only.add(m, c);
          only.set_support(kX0, Interval::point(0));
          E = only;
        } else {
          restrict_to_complete(E, kX0, vw, Wmid, use_phi ? 1 : 0);
        }
        VecSeries lhs = apply_vertex_series(W, E, vw, kX, OddArg::var(kPhi), wv, Wd);
        VecSeries rhs = Y0;
        if (use_phi) rhs = ss_odd_subst(rhs, kPhi, {{1, kPhi0}, {1, kPhi}});
        if (use_x) {
          rhs = ss_shift_subst(rhs, kX, ShiftSpec{kX, kX0, 1, N}, use_phi ? &eps : nullptr,
                               {{kX0, Interval{0, N}}});
        } else {
          rhs = ss_nilpotent_shift(rhs, kX, eps);
        }
        const char* name[] = {"Y(exp(x0 L(-1))v)", "Y(exp(phi0 G(-1/2))v)", "Y(exp(x0 L(-1) + phi0 G(-1/2))v)"};
        std::map<std::string, Interval> region{{kX, Interval{-N, N}}};
        if (use_x) region[kX0] = Interval{0, N};
        merge_cmp(rep, compare_vec(W, lhs, rhs, region),
                  std::string(name[variant]) + " for " + V.basis[v].label + " on " + V.basis[w].label);
      }
    }
  }
  return finish(rep);
}

ComparisonReport c_conjugation(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const long N = cfg.N;
  const int Wd = std::min(cfg.dual_weight2, V.max_weight2);
  const Series eps = monomial({}, {kPhi, kPhi0}, scalar(1));  // phi phi0
  for (int w : sample(V, cfg.target_weight2)) {
    const int ww = V.basis[w].weight2;
    const int Wmid = ww + 2 * static_cast<int>(N) + 1;
    VosaData W = raised(V, std::max(Wmid, Wd), rep);
    if (W.max_weight2 < Wmid) continue;
    const ModuleVector wv = W.vec(w);
    for (int variant = 0; variant < 3; ++variant) {
      const bool use_x = variant != 1, use_phi = variant != 0;
      const std::string p0 = use_phi ? kPhi0 : "";
      VecSeries S1 = apply_exp(W, -1, kX0, p0, constant_series(wv), use_x ? Wmid : ww + 1);
      if (use_x) restrict_to_complete(S1, kX0, ww, Wmid, use_phi ? 1 : 0);
      for (int v : sample(V, cfg.pair_weight2)) {
        VecSeries S2 = apply_vertex(W, W.vec(v), kX, OddArg::var(kPhi), S1, ww, Wd);
        VecSeries lhs = apply_exp(W, 1, kX0, p0, S2, Wd);
        VecSeries rhs = Yw(W, W.vec(v), wv, Wd);
        if (use_phi) rhs = ss_odd_subst(rhs, kPhi, {{1, kPhi}, {1, kPhi0}});
        if (use_x) {
          rhs = ss_shift_subst(rhs, kX, ShiftSpec{kX, kX0, 1, N}, use_phi ? &eps : nullptr, {{kX0, Interval{0, N}}});
        } else {
          rhs = ss_nilpotent_shift(rhs, kX, eps);
        }
        std::map<std::string, Interval> region{{kX, Interval{-N, N}}, {kX0, Interval{0, use_x ? N : 0}}};
        const char* name[] = {"exp(x0 L(-1)) conjugation", "exp(phi0 G(-1/2)) conjugation",
                              "exp(x0 L(-1) + phi0 G(-1/2)) conjugation"};
        merge_cmp(rep, compare_vec(W, lhs, rhs, region),
                  std::string(name[variant]) + " of Y(" + V.basis[v].label + ") on " + V.basis[w].label);
      }
    }
  }
  return finish(rep);
}

ComparisonReport c_bracket_ladder(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int out = std::min(cfg.dual_weight2, V.max_weight2);
  VosaData W = raised(V, std::max({out + 2, cfg.pair_weight2 + 2, cfg.target_weight2 + 2}), rep);
  if (W.max_weight2 < out + 2) return rep;
  auto mono = [](long xe, bool phi, const Rational& c) {
    return xe ? monomial({{kX, xe}}, phi ? std::vector<std::string>{kPhi} : std::vector<std::string>{}, scalar(c))
              : monomial({}, phi ? std::vector<std::string>{kPhi} : std::vector<std::string>{}, scalar(c));
  };
  for (int v : sample(V, cfg.pair_weight2)) {
    const ModuleVector vv = W.vec(v);
    const bool vodd = is_odd(V.basis[v].parity);
    const ModuleVector Lm1 = W.L(-1, vv), L0 = W.L(0, vv), L1 = W.L(1, vv), Gm = W.G(-1, vv), Gp = W.G(1, vv);
    for (int w : sample(V, cfg.target_weight2)) {
      const ModuleVector wv = W.vec(w);
      const VecSeries Ymid = Yw(W, vv, wv, out + 2);
      auto Y = [&](const ModuleVector& a) { return Yw(W, a, wv, out); };
      struct Case {
        std::string name;
        bool odd;
        std::function<ModuleVector(const ModuleVector&)> op;
        VecSeries rhs;
      };
      std::vector<Case> cases;
      cases.push_back({"L(-1)", false, [&](const ModuleVector& a) { return W.L(-1, a); }, Y(Lm1)});
      cases.push_back({"G(-1/2)", true, [&](const ModuleVector& a) { return W.G(-1, a); },
                       Y(Gm) + times(mono(0, true, -2), Y(Lm1))});
      cases.push_back({"L(0)", false, [&](const ModuleVector& a) { return W.L(0, a); },
                       Y(L0) + times(mono(0, true, Rational(1, 2)), Y(Gm)) + times(mono(1, false, 1), Y(Lm1))});
      cases.push_back({"G(1/2)", true, [&](const ModuleVector& a) { return W.G(1, a); },
                       Y(Gp) + times(mono(0, true, -2), Y(L0)) + times(mono(1, false, 1), Y(Gm)) +
                           times(mono(1, true, -2), Y(Lm1))});
      cases.push_back({"L(1)", false, [&](const ModuleVector& a) { return W.L(1, a); },
                       Y(L1) + times(mono(0, true, 1), Y(Gp)) + times(mono(1, false, 2), Y(L0)) +
                           times(mono(1, true, 1), Y(Gm)) + times(mono(2, false, 1), Y(Lm1))});
      for (const auto& c : cases) {
        VecSeries xy = project(apply_operator(Ymid, c.op), out);
        VecSeries yx = Yw(W, vv, c.op(wv), out);
        VecSeries lhs = c.odd && vodd ? xy + yx : xy - yx;
        merge_cmp(rep, compare_vec(W, lhs, project(c.rhs, out)),
                  "[" + c.name + ", Y(" + V.basis[v].label + ")] on " + V.basis[w].label);
      }
    }
  }
  return finish(rep);
}

ComparisonReport c_skew(const VosaData& V, const CheckConfig& cfg) {
  ComparisonReport rep = open_report();
  const int out = V.max_weight2;
  for (int u : sample(V, cfg.pair_weight2))
    for (int v : sample(V, cfg.pair_weight2)) {
      VecSeries T = apply_vertex(V, V.vec(v), kX, OddArg::var(kPhi, -1), constant_series(V.vec(u)),
                                 V.basis[u].weight2, out);
      VecSeries lhs = apply_exp(V, 1, kX, kPhi, ss_negate_even(T, kX), out);
      VecSeries rhs = Yw(V, V.vec(u), V.vec(v), out);
      if (is_odd(V.basis[u].parity) && is_odd(V.basis[v].parity)) rhs = -rhs;
      merge_cmp(rep, compare_vec(V, lhs, rhs), "skew-supersymmetry for " + V.basis[u].label + ", " + V.basis[v].label);
    }
  return finish(rep);
}

}  // namespace

const std::vector<std::string>& axiom_ids(Flavor f) {
  static const std::vector<std::string> with{"truncation", "vacuum",       "creation", "grading",
                                             "ns-relations", "g-derivative", "jacobi"};
  static const std::vector<std::string> without{"truncation", "vacuum",       "creation", "grading",
                                                "ns-relations", "l-derivative", "jacobi"};
  return f == Flavor::WithPhi ? with : without;
}

ComparisonReport check_axiom(const VosaData& V, const std::string& id, const CheckConfig& cfg) {
  const auto& ids = axiom_ids(V.flavor);
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    const auto& other = axiom_ids(V.flavor == Flavor::WithPhi ? Flavor::WithoutPhi : Flavor::WithPhi);
    if (std::find(other.begin(), other.end(), id) != other.end())
      throw Error(ErrorKind::WrongFlavor, "axiom " + id + " does not apply to flavor " + flavor_name(V.flavor));
    throw Error(ErrorKind::UnknownAxiom, id);
  }
  if (id == "truncation") return ax_truncation(V, cfg);
  if (id == "vacuum") return ax_vacuum(V, cfg);
  if (id == "creation") return ax_creation(V, cfg);
  if (id == "grading") return ax_grading(V, cfg);
  if (id == "ns-relations") return ax_ns_relations(V, cfg);
  if (id == "g-derivative") return ax_g_derivative(V, cfg);
  if (id == "l-derivative") return l_derivative(V, cfg);
  return jacobi_sweep(V, cfg);
}

const std::vector<std::string>& consequence_ids() {
  static const std::vector<std::string> ids{
      "vacuum-annihilation", "tau-from-vacuum", "tau-weight",       "creation-exponential", "omega",
      "weight-rule",         "l-derivative",    "tau-tau",          "supercommutator",      "odd-relationship",
      "u-half-lie",          "taylor-conjugation", "bracket-ladder", "conjugation-ladder",   "skew-supersymmetry"};
  return ids;
}

ComparisonReport check_consequence(const VosaData& V, const std::string& id, const CheckConfig& cfg) {
  const auto& ids = consequence_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw Error(ErrorKind::UnknownConsequence, id);
  require_phi(V);
  static const std::map<std::string, std::function<ComparisonReport(const VosaData&, const CheckConfig&)>> table{
      {"vacuum-annihilation", c_vacuum_annihilation},
      {"tau-from-vacuum", c_tau_from_vacuum},
      {"tau-weight", c_tau_weight},
      {"creation-exponential", c_creation_exponential},
      {"omega", c_omega},
      {"weight-rule", c_weight_rule},
      {"l-derivative", l_derivative},
      {"tau-tau", c_tau_tau},
      {"supercommutator", supercommutator_sweep},
      {"odd-relationship", c_odd_relationship},
      {"u-half-lie", c_u_half_lie},
      {"taylor-conjugation", c_taylor},
      {"bracket-ladder", c_bracket_ladder},
      {"conjugation-ladder", c_conjugation},
      {"skew-supersymmetry", c_skew},
  };
  return table.at(id)(V, cfg);
}

}  // namespace nsvosa
