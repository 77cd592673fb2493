#include <algorithm>
#include <bit>

#include "nsvosa/error.hpp"
#include "nsvosa/vosa.hpp"

namespace nsvosa {

namespace {

long floor_half(long a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }
long ceil_half(long a) { return -floor_half(-a); }

std::vector<std::string> phi_names(const OddArg& phi) {
  std::vector<std::string> r;
  for (const auto& [s, n] : phi.terms) r.push_back(n);
  std::sort(r.begin(), r.end());
  return r;
}

bool fully_exact(const VecSeries& S) {
  for (std::size_t v = 0; v < S.even_vars().size(); ++v)
    if (S.window(static_cast<int>(v)).exact != Interval::all()) return false;
  return !S.empty_window();
}

// Weight band of a graded series with the given doubled offset and output cap.
Interval graded_band(long off2, long out2, std::size_t nodd) {
  return Interval{ceil_half(-off2 - static_cast<long>(nodd)), floor_half(out2 - off2)};
}

// Adds c * (mono word) * m where the word is a single odd variable bit placed left of m.
void add_left_odd(VecSeries& r, Mono m, std::uint32_t bit, int sign, const ModuleVector& c) {
  int w = wedge_sign(bit, m.odd);
  if (w == 0) return;
  m.odd |= bit;
  r.add(m, sign * w < 0 ? -c : c);
}

}  // namespace

VecSeries constant_series(const ModuleVector& w) {
  VecSeries s({}, {});
  s.add(Mono{}, w);
  return s;
}

VecSeries apply_vertex(const VosaData& V, const ModuleVector& u, const std::string& x, const OddArg& phi,
                       const VecSeries& S, int s_weight2, int out_weight2) {
  if (out_weight2 > V.max_weight2)
    throw Error(ErrorKind::TableIncomplete, "output weight " + std::to_string(out_weight2) + "/2 exceeds the table");
  if (V.flavor == Flavor::WithoutPhi && !phi.terms.empty())
    throw Error(ErrorKind::WrongFlavor, "odd argument given to a vertex operator without odd variables");
  if (S.has_even(x)) throw Error(ErrorKind::BadSpec, "variable " + x + " already present");
  const auto even = merge_names(S.even_vars(), {x});
  const auto odd = merge_names(S.odd_vars(), phi_names(phi));
  const VecSeries src = S.extended(even, odd);
  VecSeries r(even, odd);
  const int xi = r.even_index(x);
  for (std::size_t v = 0; v < even.size(); ++v) r.set_window(static_cast<int>(v), src.window(static_cast<int>(v)));
  r.set_window(xi, VarWindow{Interval::all(), Interval::all()});
  r.flag_empty_window(S.empty_window());
  std::vector<std::pair<int, std::uint32_t>> bits;
  for (const auto& [sg, n] : phi.terms) bits.emplace_back(sg, 1u << r.odd_index(n));

  const int u_w2 = weight2_of(u);
  Interval xs = Interval::empty();
  for (const auto& [m, s] : src.terms()) {
    for (int part = 0; part < 2; ++part) {
      const ModuleVector sp = part ? s.odd_part() : s.even_part();
      if (sp.is_zero()) continue;
      int lo = 1 << 30, hi = -(1 << 30);
      for (const auto& [k, c] : sp.terms()) {
        lo = std::min(lo, k.weight2);
        hi = std::max(hi, k.weight2);
      }
      for (const auto& [ku, cu] : u.terms()) {
        const ModuleVector uc(ku, cu);
        const int nlo = ku.weight2 + lo - 2 - out_weight2, nhi = ku.weight2 + hi - 2;
        for (int n2 = nlo; n2 <= nhi; ++n2) {
          if ((n2 & 1) && bits.empty()) continue;
          ModuleVector res = V.mode(uc, n2, sp);
          res.truncate_above(out_weight2);
          if (res.is_zero()) continue;
          Mono mm = m;
          if (!(n2 & 1)) {
            mm.e[xi] = -n2 / 2 - 1;
            r.add(mm, res);
          } else {
            const int n = (n2 + 1) / 2;
            mm.e[xi] = -n - 1;
            const int sign = (is_odd(ku.parity) ? 1 : -1) * (part ? -1 : 1);
            for (const auto& [sg, bit] : bits) add_left_odd(r, mm, bit, sign * sg, res);
          }
          xs = hull(xs, Interval::point(mm.e[xi]));
        }
      }
    }
  }
  if (fully_exact(src)) r.set_support(x, xs.is_empty() ? Interval::point(0) : xs);
  r.set_band(graded_band(u_w2 + s_weight2, out_weight2, odd.size()));
  return r;
}

VecSeries apply_vertex_series(const VosaData& V, const VecSeries& Q, int q_weight2, const std::string& x,
                              const OddArg& phi, const ModuleVector& w, int out_weight2) {
  if (Q.has_even(x)) throw Error(ErrorKind::BadSpec, "variable " + x + " already present");
  const auto even = merge_names(Q.even_vars(), {x});
  const auto odd = merge_names(Q.odd_vars(), phi_names(phi));
  const VecSeries src = Q.extended(even, odd);
  VecSeries r(even, odd);
  for (std::size_t v = 0; v < even.size(); ++v) r.set_window(static_cast<int>(v), src.window(static_cast<int>(v)));
  const int xi = r.even_index(x);
  r.set_window(xi, VarWindow{Interval::all(), Interval::all()});
  r.flag_empty_window(Q.empty_window());
  const VecSeries W = constant_series(w);
  const int w_w2 = weight2_of(w);
  std::map<int, VecSeries> cache;
  auto Yb = [&](int b) -> const VecSeries& {
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    VecSeries y = apply_vertex(V, V.vec(b), x, phi, W, w_w2, out_weight2).extended(even, odd);
    return cache.emplace(b, std::move(y)).first->second;
  };
  for (const auto& [m, q] : src.terms()) {
    const bool m_odd = std::popcount(m.odd) & 1;
    for (const auto& [kb, c] : q.terms()) {
      for (const auto& [n, rv] : Yb(kb.index).terms()) {
        const int ws = wedge_sign(m.odd, n.odd);
        if (ws == 0) continue;
        Mono mn;
        for (std::size_t v = 0; v < even.size(); ++v) mn.e[v] = m.e[v] + n.e[v];
        mn.odd = m.odd | n.odd;
        if (!m_odd) {
          r.add(mn, ws < 0 ? -(c * rv) : c * rv);
          continue;
        }
        // (-1)^{|m|(|b| + |r|)}
        const ModuleVector re = rv.even_part(), ro = rv.odd_part();
        const int sb = is_odd(kb.parity) ? -1 : 1;
        if (!re.is_zero()) r.add(mn, sb * ws < 0 ? -(c * re) : c * re);
        if (!ro.is_zero()) r.add(mn, -sb * ws < 0 ? -(c * ro) : c * ro);
      }
    }
  }
  r.set_band(graded_band(q_weight2 + w_w2, out_weight2, odd.size()));
  return r;
}

void restrict_to_complete(VecSeries& S, const std::string& var, int s_weight2, int max_weight2, int max_odd) {
  const long E = floor_half(max_weight2 - s_weight2 - max_odd);
  S.set_exact(var, intersect(S.window(var).exact, Interval::at_most(E)));
  // Past E the projection dropped terms, so neither the support nor the band bounds x from above.
  S.set_support(var, Interval::at_least(S.window(var).support.lo));
  S.set_band(Interval::at_least(S.band().lo));
  S.prune();
}

VecSeries apply_operator(const VecSeries& S, const std::function<ModuleVector(const ModuleVector&)>& op) {
  VecSeries r = S;
  r.mutable_terms().clear();
  for (const auto& [m, c] : S.terms()) r.add(m, op(c));
  return r;
}

VecSeries apply_exp(const VosaData& V, int sign, const std::string& x0, const std::string& phi0, const VecSeries& S,
                    int out_weight2) {
  const bool has_x = S.has_even(x0);
  const auto even = merge_names(S.even_vars(), {x0});
  auto odd = S.odd_vars();
  if (!phi0.empty()) odd = merge_names(odd, {phi0});
  const VecSeries src = S.extended(even, odd);
  const int xi = src.even_index(x0);
  VecSeries t(even, odd);
  for (std::size_t v = 0; v < even.size(); ++v) t.set_window(static_cast<int>(v), src.window(static_cast<int>(v)));
  for (const auto& [m, c] : src.terms()) {
    t.add(m, c);
    if (phi0.empty()) continue;
    const std::uint32_t bit = 1u << t.odd_index(phi0);
    for (int part = 0; part < 2; ++part) {
      const ModuleVector cp = part ? c.odd_part() : c.even_part();
      if (cp.is_zero()) continue;
      ModuleVector g = V.G(-1, cp).projected(out_weight2);
      if (g.is_zero()) continue;
      // phi0 G(c) = (-1)^{|c|+1} G(c) phi0
      add_left_odd(t, m, bit, sign * (part ? 1 : -1), g);
    }
  }
  VecSeries r(even, odd);
  for (std::size_t v = 0; v < even.size(); ++v) r.set_window(static_cast<int>(v), src.window(static_cast<int>(v)));
  r.flag_empty_window(S.empty_window());
  if (!has_x) {
    r.set_window(xi, VarWindow{Interval::at_least(0), Interval::all()});
  } else {
    VarWindow w = src.window(xi);
    w.exact = w.exact.lo <= w.support.lo ? Interval::at_most(w.exact.hi) : Interval::empty();
    w.support = minkowski(w.support, Interval::at_least(0));
    if (w.exact.is_empty()) r.flag_empty_window();
    r.set_window(xi, w);
  }
  r.set_band(minkowski(src.band(), Interval::at_least(0)));
  for (const auto& [m, c] : t.terms()) {
    ModuleVector cur = c.projected(out_weight2);
    Mono mm = m;
    for (long k = 0; !cur.is_zero(); ++k) {
      r.add(mm, cur);
      cur = Grassmann(Rational(sign) / (k + 1)) * V.L(-1, cur).projected(out_weight2);
      ++mm.e[xi];
    }
  }
  return r;
}

VecSeries project(const VecSeries& S, int max_weight2) {
  return apply_operator(S, [&](const ModuleVector& c) { return c.projected(max_weight2); });
}

ComparisonReport compare_vec(const VosaData& V, const VecSeries& a, const VecSeries& b,
                             const std::map<std::string, Interval>& restrict_to) {
  for (const auto& [var, iv] : restrict_to) {
    for (const VecSeries* s : {&a, &b}) {
      if (!s->has_even(var)) continue;
      if (!s->window(var).exact.contains(iv))
        return ComparisonReport::inconclusive("exact window of " + var + " " + to_string(s->window(var).exact) +
                                              " does not cover " + to_string(iv));
    }
  }
  ComparisonReport rep = ss_compare(a, b, restrict_to);
  for (auto& w : rep.witnesses) {
    w.lhs = V.render_witness(w.lhs);
    w.rhs = V.render_witness(w.rhs);
  }
  return rep;
}

ModuleVector Operator::apply(const VosaData& V, const ModuleVector& w) const {
  ModuleVector r;
  for (const auto& [k, c] : w.terms()) {
    auto it = columns.find(k.index);
    if (it == columns.end())
      throw Error(ErrorKind::TableIncomplete, "operator has no column for " + V.basis[k.index].label);
    r += (is_odd(parity) ? c.twisted() : c) * it->second;
  }
  return r;
}

OperatorSeries vertex_op(const VosaData& V, const ModuleVector& v, long N) {
  OperatorSeries S;
  S.exact = Interval{-N, N};
  const Parity pv = parity_of(v);
  for (long e = -N; e <= N; ++e) {
    const int n = static_cast<int>(-e - 1);
    for (int k = 0; k < (V.flavor == Flavor::WithPhi ? 2 : 1); ++k) {
      Operator op;
      op.parity = k ? pv + Parity::Odd : pv;
      const int n2 = k ? 2 * n - 1 : 2 * n;
      bool any = false;
      for (int b = 0; b < V.size(); ++b) {
        ModuleVector col = V.mode(v, n2, V.vec(b));
        any = any || !col.is_zero();
        op.columns.emplace(b, std::move(col));
      }
      if (any) S.terms.emplace(std::make_pair(e, k), std::move(op));
    }
  }
  return S;
}

}  // namespace nsvosa
