#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsvosa/error.hpp"
#include "nsvosa/grassmann.hpp"
#include "nsvosa/report.hpp"
#include "nsvosa/window.hpp"

namespace nsvosa {

constexpr int kMaxEven = 6;
constexpr int kMaxOdd = 8;

// Even exponent vector plus odd monomial bitmask, both indexed by the owning series' sorted variable lists.
struct Mono {
  std::array<std::int32_t, kMaxEven> e{};
  std::uint32_t odd = 0;
  auto operator<=>(const Mono&) const = default;
};

template <class C>
C twisted(const C& c) {
  return even_part(c) - odd_part(c);
}

// Windowed formal Laurent series in sorted even variables and sorted odd variables.
// A term (m, c) stands for c * x^m.e * (odd monomial m.odd), coefficient on the left.
template <class C>
class SuperSeries {
 public:
  using Coeff = C;
  using Terms = std::map<Mono, C>;

  SuperSeries() = default;
  SuperSeries(std::vector<std::string> even, std::vector<std::string> odd) {
    std::sort(even.begin(), even.end());
    std::sort(odd.begin(), odd.end());
    if (std::adjacent_find(even.begin(), even.end()) != even.end() ||
        std::adjacent_find(odd.begin(), odd.end()) != odd.end())
      throw Error(ErrorKind::BadSpec, "duplicate variable name");
    if (even.size() > static_cast<std::size_t>(kMaxEven) || odd.size() > static_cast<std::size_t>(kMaxOdd))
      throw Error(ErrorKind::BadSpec, "too many variables");
    even_ = std::move(even);
    odd_ = std::move(odd);
    win_.assign(even_.size(), VarWindow{});
  }

  const std::vector<std::string>& even_vars() const { return even_; }
  const std::vector<std::string>& odd_vars() const { return odd_; }
  const Terms& terms() const { return terms_; }
  Terms& mutable_terms() { return terms_; }
  const VarWindow& window(int v) const { return win_[v]; }
  const VarWindow& window(const std::string& name) const { return win_[even_index(name)]; }
  const Interval& band() const { return band_; }
  bool empty_window() const { return empty_window_; }
  void flag_empty_window(bool f = true) { empty_window_ = f; }

  int even_index(const std::string& name) const {
    auto it = std::lower_bound(even_.begin(), even_.end(), name);
    if (it == even_.end() || *it != name) throw Error(ErrorKind::UnknownVariable, name);
    return static_cast<int>(it - even_.begin());
  }
  int odd_index(const std::string& name) const {
    auto it = std::lower_bound(odd_.begin(), odd_.end(), name);
    if (it == odd_.end() || *it != name) throw Error(ErrorKind::UnknownVariable, name);
    return static_cast<int>(it - odd_.begin());
  }
  bool has_even(const std::string& name) const {
    return std::binary_search(even_.begin(), even_.end(), name);
  }
  bool has_odd(const std::string& name) const { return std::binary_search(odd_.begin(), odd_.end(), name); }

  void set_window(const std::string& name, VarWindow w) { win_[even_index(name)] = w; }
  void set_window(int v, VarWindow w) { win_[v] = w; }
  void set_support(const std::string& name, Interval s) { win_[even_index(name)].support = s; }
  void set_exact(const std::string& name, Interval e) { win_[even_index(name)].exact = e; }
  void set_band(Interval b) { band_ = b; }

  void add(const Mono& m, const C& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  // Adds c * prod x^k * (odd word) where the odd word is given in any order.
  void add(const std::vector<std::pair<std::string, long>>& even, const std::vector<std::string>& odd_word,
           const C& c) {
    Mono m;
    for (const auto& [name, k] : even) m.e[even_index(name)] += static_cast<std::int32_t>(k);
    int sign = 1;
    for (const auto& name : odd_word) {
      std::uint32_t bit = 1u << odd_index(name);
      int s = wedge_sign(m.odd, bit);
      if (s == 0) return;
      sign *= s;
      m.odd |= bit;
    }
    add(m, sign < 0 ? C(-c) : c);
  }

  bool in_exact(const Mono& m) const {
    for (std::size_t v = 0; v < even_.size(); ++v)
      if (!win_[v].exact.contains(m.e[v])) return false;
    return true;
  }
  bool in_support(const Mono& m) const {
    std::int64_t s = 0;
    for (std::size_t v = 0; v < even_.size(); ++v) {
      if (!win_[v].support.contains(m.e[v])) return false;
      s += m.e[v];
    }
    return band_.contains(s);
  }

  // Exact coefficient, or nullopt when the exponent lies outside the exact windows.
  std::optional<C> coeff(const Mono& m) const {
    if (!in_support(m)) return C{};
    if (!in_exact(m)) return std::nullopt;
    auto it = terms_.find(m);
    return it == terms_.end() ? C{} : it->second;
  }

  // Drops stored terms outside the exact windows.
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = in_exact(it->first) ? std::next(it) : terms_.erase(it);
  }

  // Support box and band tightened to the stored terms; exactness left untouched.
  void fit_support_to_terms() {
    std::vector<Interval> box(even_.size(), Interval::empty());
    Interval b = Interval::empty();
    for (const auto& [m, c] : terms_) {
      std::int64_t s = 0;
      for (std::size_t v = 0; v < even_.size(); ++v) {
        box[v] = hull(box[v], Interval::point(m.e[v]));
        s += m.e[v];
      }
      b = hull(b, Interval::point(s));
    }
    for (std::size_t v = 0; v < even_.size(); ++v) win_[v].support = box[v];
    band_ = b;
  }

  // Points outside the support are known zeros, so an exact side that reaches the support bound extends to infinity.
  void normalize_exact() {
    for (auto& w : win_) {
      if (w.exact.is_empty()) continue;
      if (w.support.is_empty()) {
        w.exact = Interval::all();
        continue;
      }
      if (w.exact.lo <= w.support.lo) w.exact.lo = -Interval::kInf;
      if (w.exact.hi >= w.support.hi) w.exact.hi = Interval::kInf;
    }
  }

  // Same series in a larger sorted variable context.
  SuperSeries extended(const std::vector<std::string>& even, const std::vector<std::string>& odd) const {
    SuperSeries r(even, odd);
    std::vector<int> emap(even_.size()), omap(odd_.size());
    for (std::size_t v = 0; v < even_.size(); ++v) emap[v] = r.even_index(even_[v]);
    for (std::size_t v = 0; v < odd_.size(); ++v) omap[v] = r.odd_index(odd_[v]);
    for (std::size_t v = 0; v < r.even_.size(); ++v) r.win_[v] = {Interval::point(0), Interval::all()};
    for (std::size_t v = 0; v < even_.size(); ++v) r.win_[emap[v]] = win_[v];
    r.band_ = band_;
    r.empty_window_ = empty_window_;
    for (const auto& [m, c] : terms_) {
      Mono n;
      for (std::size_t v = 0; v < even_.size(); ++v) n.e[emap[v]] = m.e[v];
      for (std::size_t v = 0; v < odd_.size(); ++v)
        if (m.odd & (1u << v)) n.odd |= 1u << omap[v];
      r.terms_.emplace(n, c);
    }
    return r;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + nsvosa::to_string(c) + ")";
      for (std::size_t v = 0; v < even_.size(); ++v)
        if (m.e[v] != 0) out += "*" + even_[v] + "^" + std::to_string(m.e[v]);
      for (std::size_t v = 0; v < odd_.size(); ++v)
        if (m.odd & (1u << v)) out += "*" + odd_[v];
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<std::string> even_, odd_;
  std::vector<VarWindow> win_;
  Interval band_ = Interval::all();
  Terms terms_;
  bool empty_window_ = false;
};

template <class C>
std::string to_string(const SuperSeries<C>& s) {
  return s.to_string();
}

inline std::vector<std::string> merge_names(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

template <class A, class B>
std::pair<std::vector<std::string>, std::vector<std::string>> union_context(const SuperSeries<A>& a,
                                                                             const SuperSeries<B>& b) {
  return {merge_names(a.even_vars(), b.even_vars()), merge_names(a.odd_vars(), b.odd_vars())};
}

// Exactness of the convolution coefficient at e: every decomposition e = i + j allowed by the
// support boxes and degree bands must have i exact in a and j exact in b.
bool convolution_exact(const std::int64_t* e, int k, const Interval* sa, const Interval* sb, const Interval* ea,
                       const Interval* eb, const Interval& band_a, const Interval& band_b);

// Largest box inside `cand` on which pred holds, found by greedily peeling the face with the most
// failures. Returns an empty box (first interval empty) when nothing survives.
std::vector<Interval> shrink_box(std::vector<Interval> cand, const std::function<bool(const std::int64_t*)>& pred);

std::int64_t box_volume(const std::vector<Interval>& box);

struct MulOptions {
  // Per-variable target for the result's exact window; variables not listed are unconstrained.
  std::map<std::string, Interval> target;
  bool parallel = true;
};

namespace detail {

template <class A, class B, class R, class Mul>
void mul_kernel(const std::vector<std::pair<Mono, const A*>>& ta, const std::vector<Mono>& mb,
                const std::vector<std::pair<B, B>>& cb, const std::vector<Interval>& box, int k, const Mul& mul,
                std::size_t begin, std::size_t end, std::map<Mono, R>& out) {
  for (std::size_t i = begin; i < end; ++i) {
    const Mono& ma = ta[i].first;
    const A& ca = *ta[i].second;
    const bool a_odd = std::popcount(ma.odd) & 1;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      Mono m;
      bool inside = true;
      for (int v = 0; v < k; ++v) {
        m.e[v] = ma.e[v] + mb[j].e[v];
        if (!box[v].contains(m.e[v])) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      int s = wedge_sign(ma.odd, mb[j].odd);
      if (s == 0) continue;
      m.odd = ma.odd | mb[j].odd;
      R c{};
      if (!is_zero(cb[j].first)) c = mul(ca, cb[j].first);
      if (!is_zero(cb[j].second)) {
        R t = mul(ca, cb[j].second);
        c = a_odd ? R(c - t) : R(c + t);
      }
      if (is_zero(c)) continue;
      if (s < 0) c = -c;
      auto [it, ins] = out.try_emplace(m, c);
      if (!ins) {
        it->second = it->second + c;
        if (is_zero(it->second)) out.erase(it);
      }
    }
  }
}

template <class R>
void merge_into(std::map<Mono, R>& dst, std::map<Mono, R>&& src) {
  for (auto& [m, c] : src) {
    auto [it, ins] = dst.try_emplace(m, std::move(c));
    if (!ins) {
      it->second = it->second + c;
      if (is_zero(it->second)) dst.erase(it);
    }
  }
}

}  // namespace detail

// Serial and OpenMP term products over prepared operands; results are identical.
template <class A, class B, class R, class Mul>
std::map<Mono, R> mul_terms_serial(const std::vector<std::pair<Mono, const A*>>& ta, const std::vector<Mono>& mb,
                                   const std::vector<std::pair<B, B>>& cb, const std::vector<Interval>& box, int k,
                                   const Mul& mul) {
  std::map<Mono, R> out;
  detail::mul_kernel<A, B, R>(ta, mb, cb, box, k, mul, 0, ta.size(), out);
  return out;
}

template <class A, class B, class R, class Mul>
std::map<Mono, R> mul_terms_parallel(const std::vector<std::pair<Mono, const A*>>& ta, const std::vector<Mono>& mb,
                                     const std::vector<std::pair<B, B>>& cb, const std::vector<Interval>& box, int k,
                                     const Mul& mul) {
  std::map<Mono, R> out;
#if defined(_OPENMP)
  const long n = static_cast<long>(ta.size());
#pragma omp parallel
  {
    std::map<Mono, R> local;
#pragma omp for schedule(dynamic, 8) nowait
    for (long i = 0; i < n; ++i)
      detail::mul_kernel<A, B, R>(ta, mb, cb, box, k, mul, static_cast<std::size_t>(i),
                                  static_cast<std::size_t>(i) + 1, local);
#pragma omp critical(nsvosa_mul_merge)
    detail::merge_into(out, std::move(local));
  }
#else
  detail::mul_kernel<A, B, R>(ta, mb, cb, box, k, mul, 0, ta.size(), out);
#endif
  return out;
}

struct DefaultMul {
  template <class A, class B>
  auto operator()(const A& a, const B& b) const {
    return a * b;
  }
};

// Product with Koszul signs: (ca ma)(cb mb) = (-1)^{|ma||cb|} (ca cb) (ma mb).
template <class A, class B, class Mul = DefaultMul>
auto ss_mul(const SuperSeries<A>& a0, const SuperSeries<B>& b0, const MulOptions& opt = {}, const Mul& mul = {}) {
  using R = std::decay_t<decltype(mul(std::declval<const A&>(), std::declval<const B&>()))>;
  auto [even, odd] = union_context(a0, b0);
  SuperSeries<A> a = a0.extended(even, odd);
  SuperSeries<B> b = b0.extended(even, odd);
  SuperSeries<R> r(even, odd);
  const int k = static_cast<int>(even.size());

  std::vector<Interval> sa(k), sb(k), ea(k), eb(k);
  bool all_exact = true;
  for (int v = 0; v < k; ++v) {
    sa[v] = a.window(v).support;
    sb[v] = b.window(v).support;
    ea[v] = a.window(v).exact;
    eb[v] = b.window(v).exact;
    for (auto [e, sp] : {std::pair{&ea[v], &sa[v]}, std::pair{&eb[v], &sb[v]}}) {
      if (e->is_empty()) continue;
      if (sp->is_empty()) {
        *e = Interval::all();
        continue;
      }
      if (e->lo <= sp->lo) e->lo = -Interval::kInf;
      if (e->hi >= sp->hi) e->hi = Interval::kInf;
    }
    if (ea[v] != Interval::all() || eb[v] != Interval::all()) all_exact = false;
    r.set_window(v, VarWindow{minkowski(sa[v], sb[v]), Interval::all()});
  }
  r.set_band(minkowski(a.band(), b.band()));

  std::vector<std::pair<Mono, const A*>> ta;
  ta.reserve(a.terms().size());
  for (const auto& [m, c] : a.terms()) ta.emplace_back(m, &c);
  std::vector<Mono> mb;
  std::vector<std::pair<B, B>> cb;
  for (const auto& [m, c] : b.terms()) {
    mb.push_back(m);
    cb.emplace_back(even_part(c), odd_part(c));
  }

  // A factor that is exact everywhere with bounded support (a polynomial, or a single monomial) only
  // shifts the other factor's exact box.
  auto polylike = [&](const std::vector<Interval>& s, const std::vector<Interval>& e) {
    for (int v = 0; v < k; ++v)
      if (!s[v].bounded() || (e[v] != Interval::all() && !(s[v].size() == 1 && e[v].contains(s[v])))) return false;
    return true;
  };
  const bool a_poly = polylike(sa, ea), b_poly = !a_poly && polylike(sb, eb);
  std::vector<Interval> box(k, Interval::all());
  if (a_poly || b_poly) {
    for (int v = 0; v < k; ++v) {
      const Interval& s = a_poly ? sa[v] : sb[v];
      const Interval& e = a_poly ? eb[v] : ea[v];
      box[v] = s.is_empty() ? Interval::all() : Interval{sat_add(e.lo, s.hi), sat_add(e.hi, s.lo)};
      if (e.is_empty()) box[v] = Interval::empty();
      auto it = opt.target.find(even[v]);
      if (it != opt.target.end()) box[v] = intersect(box[v], it->second);
    }
  } else if (!all_exact || !opt.target.empty()) {
    std::vector<Interval> ext(k, Interval::empty());
    for (const auto& [m, c] : a.terms())
      for (int v = 0; v < k; ++v) ext[v] = hull(ext[v], Interval::point(m.e[v]));
    std::vector<Interval> extb(k, Interval::empty());
    for (const auto& m : mb)
      for (int v = 0; v < k; ++v) extb[v] = hull(extb[v], Interval::point(m.e[v]));
    for (int v = 0; v < k; ++v) {
      Interval cand = minkowski(ea[v], eb[v]);
      auto it = opt.target.find(even[v]);
      if (it != opt.target.end()) cand = intersect(cand, it->second);
      if (!cand.bounded()) {
        Interval stored = minkowski(ext[v], extb[v]);
        if (stored.is_empty()) stored = Interval::point(0);
        cand = intersect(cand, stored);
      }
      box[v] = cand;
    }
    if (!all_exact) {
      box = shrink_box(box, [&](const std::int64_t* e) {
        return convolution_exact(e, k, sa.data(), sb.data(), ea.data(), eb.data(), a.band(), b.band());
      });
    }
  }
  bool empty = k > 0 && (box.empty() || box[0].is_empty());
  for (int v = 0; v < k && !empty; ++v) empty = box[v].is_empty();
  if (empty) {
    for (int v = 0; v < k; ++v) r.set_exact(even[v], Interval::empty());
    r.flag_empty_window();
    return r;
  }
  for (int v = 0; v < k; ++v) r.set_exact(even[v], box[v]);
  r.normalize_exact();

  const bool par = opt.parallel && ta.size() * mb.size() > 4096;
  r.mutable_terms() = par ? mul_terms_parallel<A, B, R>(ta, mb, cb, box, k, mul)
                          : mul_terms_serial<A, B, R>(ta, mb, cb, box, k, mul);
  return r;
}

// Sum and difference keep the intersection of exact windows and the hull of supports.
template <class C>
SuperSeries<C> ss_combine(const SuperSeries<C>& a0, const SuperSeries<C>& b0, int sign) {
  auto [even, odd] = union_context(a0, b0);
  SuperSeries<C> a = a0.extended(even, odd);
  SuperSeries<C> b = b0.extended(even, odd);
  SuperSeries<C> r(even, odd);
  for (std::size_t v = 0; v < even.size(); ++v)
    r.set_window(static_cast<int>(v), VarWindow{hull(a.window(v).support, b.window(v).support),
                                                intersect(a.window(v).exact, b.window(v).exact)});
  r.set_band(hull(a.band(), b.band()));
  for (const auto& [m, c] : a.terms())
    if (r.in_exact(m)) r.add(m, c);
  for (const auto& [m, c] : b.terms())
    if (r.in_exact(m)) r.add(m, sign < 0 ? C(-c) : c);
  r.flag_empty_window(a.empty_window() || b.empty_window());
  return r;
}

template <class C>
SuperSeries<C> operator+(const SuperSeries<C>& a, const SuperSeries<C>& b) {
  return ss_combine(a, b, 1);
}
template <class C>
SuperSeries<C> operator-(const SuperSeries<C>& a, const SuperSeries<C>& b) {
  return ss_combine(a, b, -1);
}
template <class C>
SuperSeries<C> operator-(const SuperSeries<C>& a) {
  SuperSeries<C> r = a;
  for (auto& [m, c] : r.mutable_terms()) c = -c;
  return r;
}

// Left scaling by a Grassmann element: g * (c m) = (g c) m.
template <class C>
SuperSeries<C> scaled(const Grassmann& g, const SuperSeries<C>& s) {
  SuperSeries<C> r = s;
  r.mutable_terms().clear();
  for (const auto& [m, c] : s.terms()) r.add(m, C(g * c));
  return r;
}

// Multiplication by a monomial x^shift (shift by variable name) on the left; windows shift along.
template <class C>
SuperSeries<C> times_monomial(const SuperSeries<C>& s, const std::vector<std::pair<std::string, long>>& shift) {
  std::vector<std::string> names;
  for (const auto& [n, k] : shift) names.push_back(n);
  std::sort(names.begin(), names.end());
  SuperSeries<C> r = s.extended(merge_names(s.even_vars(), names), s.odd_vars());
  SuperSeries<C> out(r.even_vars(), r.odd_vars());
  std::array<std::int32_t, kMaxEven> d{};
  std::int64_t total = 0;
  for (const auto& [n, k] : shift) {
    d[r.even_index(n)] += static_cast<std::int32_t>(k);
    total += k;
  }
  for (std::size_t v = 0; v < r.even_vars().size(); ++v)
    out.set_window(static_cast<int>(v),
                   VarWindow{shifted(r.window(v).support, d[v]), shifted(r.window(v).exact, d[v])});
  out.set_band(shifted(r.band(), total));
  for (const auto& [m, c] : r.terms()) {
    Mono n = m;
    for (int v = 0; v < kMaxEven; ++v) n.e[v] += d[v];
    out.add(n, c);
  }
  out.flag_empty_window(s.empty_window());
  return out;
}

template <class C>
SuperSeries<C> ss_derive_even(const SuperSeries<C>& s, const std::string& var) {
  const int x = s.even_index(var);
  SuperSeries<C> r(s.even_vars(), s.odd_vars());
  for (std::size_t v = 0; v < s.even_vars().size(); ++v) r.set_window(static_cast<int>(v), s.window(v));
  r.set_window(x, VarWindow{shifted(s.window(x).support, -1), shifted(s.window(x).exact, -1)});
  r.set_band(shifted(s.band(), -1));
  for (const auto& [m, c] : s.terms()) {
    if (m.e[x] == 0) continue;
    Mono n = m;
    n.e[x] -= 1;
    r.add(n, C(Grassmann(Rational(m.e[x])) * c));
  }
  r.flag_empty_window(s.empty_window());
  return r;
}

// Left derivative: d/dphi (c phi_1..phi_p..) moves phi_p to the front of the monomial and past c.
template <class C>
SuperSeries<C> ss_derive_odd(const SuperSeries<C>& s, const std::string& var) {
  const int p = s.odd_index(var);
  SuperSeries<C> r(s.even_vars(), s.odd_vars());
  for (std::size_t v = 0; v < s.even_vars().size(); ++v) r.set_window(static_cast<int>(v), s.window(v));
  r.set_band(s.band());
  const std::uint32_t bit = 1u << p;
  for (const auto& [m, c] : s.terms()) {
    if (!(m.odd & bit)) continue;
    Mono n = m;
    n.odd &= ~bit;
    int before = std::popcount(m.odd & (bit - 1));
    C t = twisted(c);
    r.add(n, (before & 1) ? C(-t) : t);
  }
  r.flag_empty_window(s.empty_window());
  return r;
}

template <class C>
SuperSeries<C> ss_derive(const SuperSeries<C>& s, const std::string& var, bool odd) {
  return odd ? ss_derive_odd(s, var) : ss_derive_even(s, var);
}

// Coefficient of var^{-1}, with var removed.
template <class C>
SuperSeries<C> ss_residue(const SuperSeries<C>& s, const std::string& var) {
  const int x = s.even_index(var);
  if (!s.window(x).exact.contains(-1) && s.window(x).support.contains(-1))
    throw Error(ErrorKind::WindowMiss, "exponent -1 of " + var + " is outside the exact window " +
                                           to_string(s.window(x).exact));
  std::vector<std::string> even;
  for (const auto& n : s.even_vars())
    if (n != var) even.push_back(n);
  SuperSeries<C> r(even, s.odd_vars());
  for (std::size_t v = 0, w = 0; v < s.even_vars().size(); ++v) {
    if (static_cast<int>(v) == x) continue;
    r.set_window(static_cast<int>(w++), s.window(v));
  }
  r.set_band(shifted(s.band(), 1));
  for (const auto& [m, c] : s.terms()) {
    if (m.e[x] != -1) continue;
    Mono n;
    n.odd = m.odd;
    for (std::size_t v = 0, w = 0; v < s.even_vars().size(); ++v)
      if (static_cast<int>(v) != x) n.e[w++] = m.e[v];
    r.add(n, c);
  }
  r.flag_empty_window(s.empty_window());
  return r;
}

// Substitution var -> lead + tail_sign * tail, binomially expanded in positive powers of tail up to
// tail_order. lead may equal var (a shift), be a fresh name, or another variable of the series; an
// empty tail makes this a plain change of variable.
struct ShiftSpec {
  std::string lead;
  std::string tail;
  int tail_sign = 1;
  long tail_order = 0;
};

template <class C>
SuperSeries<C> ss_even_subst(const SuperSeries<C>& s0, const std::string& var, const ShiftSpec& sh,
                             const std::map<std::string, Interval>& target = {}) {
  SuperSeries<C> s = s0;
  s.normalize_exact();
  const int x = s.even_index(var);
  if (sh.lead.empty()) throw Error(ErrorKind::IllFormedShift, "missing lead variable");
  if (!sh.tail.empty() && (sh.tail == sh.lead || sh.tail == var))
    throw Error(ErrorKind::IllFormedShift, "tail must differ from the substituted and lead variables");
  if (!sh.tail.empty() && sh.tail_order < 0) throw Error(ErrorKind::IllFormedShift, "negative tail order");
  const bool lead_is_var = sh.lead == var;
  const bool lead_in_s = !lead_is_var && s.has_even(sh.lead);
  const bool has_tail = !sh.tail.empty();
  const bool tail_in_s = has_tail && s.has_even(sh.tail);
  if (lead_in_s && tail_in_s) throw Error(ErrorKind::IllFormedShift, "substitution mixes two existing variables");
  const long J = has_tail ? sh.tail_order : 0;

  std::vector<std::string> even;
  for (const auto& n : s.even_vars())
    if (n != var) even.push_back(n);
  even.push_back(sh.lead);
  if (has_tail) even.push_back(sh.tail);
  std::sort(even.begin(), even.end());
  even.erase(std::unique(even.begin(), even.end()), even.end());
  SuperSeries<C> r(even, s.odd_vars());
  const int k = static_cast<int>(even.size());
  const int ks = static_cast<int>(s.even_vars().size());
  // Source index of each result variable, -1 for fresh ones.
  std::vector<int> src(k, -1);
  for (int v = 0; v < k; ++v)
    if (s.has_even(even[v]) && (even[v] != var || lead_is_var)) src[v] = s.even_index(even[v]);
  const int rl = r.even_index(sh.lead);
  const int rt = has_tail ? r.even_index(sh.tail) : -1;
  const int sl = lead_in_s ? s.even_index(sh.lead) : -1;
  const int st = tail_in_s ? s.even_index(sh.tail) : -1;

  // Source exponents as E0 + t*D with j = j0 + dj*t, for a result exponent e.
  auto family = [&](const std::int64_t* e, std::array<std::int64_t, kMaxEven>& E0, std::array<int, kMaxEven>& D,
                    std::int64_t& j0, int& dj, bool& free) {
    E0.fill(0);
    D.fill(0);
    for (int v = 0; v < k; ++v)
      if (src[v] >= 0 && v != rl && v != rt) E0[src[v]] = e[v];
    free = false;
    dj = 0;
    if (lead_in_s) {
      j0 = has_tail ? e[rt] : 0;
      // free a: E_x = t, E_lead = e_lead + j - t
      free = true;
      E0[x] = 0;
      D[x] = 1;
      E0[sl] = e[rl] + j0;
      D[sl] = -1;
    } else if (tail_in_s) {
      // free j = t: E_x = e_lead + t, E_tail = e_tail - t
      free = true;
      j0 = 0;
      dj = 1;
      E0[x] = e[rl];
      D[x] = 1;
      E0[st] = e[rt];
      D[st] = -1;
    } else {
      j0 = has_tail ? e[rt] : 0;
      E0[x] = e[rl] + j0;
    }
  };

  Interval band = s.band();
  auto exact_at = [&](const std::int64_t* e) -> bool {
    std::array<std::int64_t, kMaxEven> E0;
    std::array<int, kMaxEven> D;
    std::int64_t j0;
    int dj;
    bool free;
    family(e, E0, D, j0, dj, free);
    Interval t = free ? Interval::all() : Interval::point(0);
    std::int64_t sum = 0;
    for (int v = 0; v < ks; ++v) sum += E0[v];
    if (!band.contains(sum)) return true;
    // j >= 0
    if (dj == 0) {
      if (j0 < 0) return true;
    } else {
      t = intersect(t, Interval::at_least(-j0));
    }
    for (int v = 0; v < ks; ++v) {
      const Interval& sup = s.window(v).support;
      if (D[v] == 0) {
        if (!sup.contains(E0[v])) return true;
      } else if (D[v] > 0) {
        t = intersect(t, shifted(sup, -E0[v]));
      } else {
        t = intersect(t, negated(shifted(sup, -E0[v])));
      }
    }
    if (t.is_empty()) return true;
    if (!t.bounded()) return false;
    for (std::int64_t tv : {t.lo, t.hi}) {
      if (j0 + dj * tv > J) return false;
      for (int v = 0; v < ks; ++v)
        if (!s.window(v).exact.contains(E0[v] + D[v] * tv)) return false;
    }
    return true;
  };

  // Supports of the result.
  std::vector<Interval> sup(k, Interval::point(0));
  for (int v = 0; v < k; ++v)
    if (src[v] >= 0) sup[v] = s.window(src[v]).support;
  const Interval& sx = s.window(x).support;
  Interval lead_part = sx, tail_part = Interval::point(0);
  if (has_tail) {
    if (sx.lo >= 0) {
      lead_part = Interval{0, sx.hi};
      tail_part = Interval{0, sx.hi};
    } else {
      lead_part = Interval::at_most(sx.hi);
      tail_part = Interval::at_least(0);
    }
  }
  sup[rl] = lead_in_s ? minkowski(s.window(sl).support, lead_part) : lead_part;
  if (has_tail) sup[rt] = tail_in_s ? minkowski(s.window(st).support, tail_part) : tail_part;
  bool s_exact_everywhere = true;
  for (int v = 0; v < ks; ++v) s_exact_everywhere = s_exact_everywhere && s.window(v).exact == Interval::all();
  const bool finite_expansion = !has_tail || (sx.lo >= 0 && sx.hi <= J);
  // Generated terms.
  std::map<Mono, C> raw;
  std::vector<Interval> ext(k, Interval::empty());
  for (const auto& [m, c] : s.terms()) {
    const long a = m.e[x];
    long jmax = J;
    if (a >= 0) jmax = std::min<long>(jmax, a);
    for (long j = 0; j <= jmax; ++j) {
      Integer b = binomial(a, j);
      if (sh.tail_sign < 0 && (j & 1)) b = -b;
      if (b == 0) continue;
      Mono n;
      n.odd = m.odd;
      for (int v = 0; v < k; ++v)
        if (src[v] >= 0 && v != rl && v != rt) n.e[v] = m.e[src[v]];
      n.e[rl] = static_cast<std::int32_t>((lead_in_s ? m.e[sl] : 0) + a - j);
      if (has_tail) n.e[rt] = static_cast<std::int32_t>((tail_in_s ? m.e[st] : 0) + j);
      C cc = Grassmann(Rational(b)) * c;
      auto [it, ins] = raw.try_emplace(n, cc);
      if (!ins) {
        it->second = it->second + cc;
        if (is_zero(it->second)) raw.erase(it);
      }
      for (int v = 0; v < k; ++v) ext[v] = hull(ext[v], Interval::point(n.e[v]));
    }
  }

  std::vector<Interval> box(k);
  if (s_exact_everywhere && (finite_expansion || !tail_in_s) && (!lead_in_s || sx.bounded())) {
    // Each result coefficient comes from one source term per tail power; only the truncation bites.
    for (int v = 0; v < k; ++v) r.set_window(v, VarWindow{sup[v], Interval::all()});
    if (!finite_expansion) r.set_exact(sh.tail, Interval::at_most(J));
    r.set_band(band);
    for (auto& [m, c] : raw)
      if (r.in_exact(m)) r.add(m, c);
    r.flag_empty_window(s.empty_window());
    return r;
  }
  for (int v = 0; v < k; ++v) {
    auto it = target.find(even[v]);
    Interval cand = it != target.end() ? it->second : Interval::all();
    if (!cand.bounded()) {
      Interval guess = ext[v].is_empty() ? Interval::point(0) : ext[v];
      if (src[v] >= 0 && v != rl && v != rt && s.window(src[v]).exact.bounded())
        guess = s.window(src[v]).exact;
      cand = intersect(cand, guess);
    }
    box[v] = cand;
  }
  box = shrink_box(box, exact_at);
  bool empty = box.empty() || box[0].is_empty();
  for (int v = 0; v < k; ++v) {
    r.set_window(v, VarWindow{sup[v], empty ? Interval::empty() : box[v]});
  }
  r.set_band(band);
  if (empty) {
    r.flag_empty_window();
    return r;
  }
  for (auto& [m, c] : raw)
    if (r.in_exact(m)) r.add(m, c);
  r.flag_empty_window(s.empty_window());
  return r;
}

// var -> var + eps with eps even and nilpotent (eps^2 = 0): s + eps * ds/dvar.
template <class C>
SuperSeries<C> ss_nilpotent_shift(const SuperSeries<C>& s, const std::string& var, const SuperSeries<Grassmann>& eps) {
  for (const auto& [m, c] : eps.terms()) {
    bool even_mono = (std::popcount(m.odd) & 1) == 0;
    if (!c.homogeneous() || (is_odd(c.parity()) == even_mono))
      throw Error(ErrorKind::IllFormedShift, "shift is not even");
    for (int v = 0; v < static_cast<int>(eps.even_vars().size()); ++v)
      if (m.e[v] != 0) throw Error(ErrorKind::IllFormedShift, "nilpotent shift may not involve even variables");
  }
  SuperSeries<Grassmann> sq = ss_mul(eps, eps);
  if (!sq.terms().empty()) throw Error(ErrorKind::IllFormedShift, "shift does not square to zero");
  return s + ss_mul(eps, ss_derive_even(s, var));
}

// Full substitution var -> lead + sign*tail + eps, nilpotent part applied after the even part.
template <class C>
SuperSeries<C> ss_shift_subst(const SuperSeries<C>& s, const std::string& var, const ShiftSpec& sh,
                              const SuperSeries<Grassmann>* eps = nullptr,
                              const std::map<std::string, Interval>& target = {}) {
  if (sh.lead == var && sh.tail.empty()) {
    if (!eps) return s;
    return ss_nilpotent_shift(s, var, *eps);
  }
  SuperSeries<C> base = ss_even_subst(s, var, sh, target);
  if (!eps) return base;
  SuperSeries<C> d = ss_even_subst(ss_derive_even(s, var), var, sh, target);
  return base + ss_mul(*eps, d);
}

// Odd substitution var -> sum of sign_k * phi_k.
template <class C>
SuperSeries<C> ss_odd_subst(const SuperSeries<C>& s, const std::string& var,
                            const std::vector<std::pair<int, std::string>>& repl) {
  const int p = s.odd_index(var);
  std::vector<std::string> odd;
  for (const auto& n : s.odd_vars())
    if (n != var) odd.push_back(n);
  for (const auto& [sg, n] : repl) odd.push_back(n);
  std::sort(odd.begin(), odd.end());
  odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
  SuperSeries<C> r(s.even_vars(), odd);
  for (std::size_t v = 0; v < s.even_vars().size(); ++v) r.set_window(static_cast<int>(v), s.window(v));
  r.set_band(s.band());
  std::vector<int> omap(s.odd_vars().size());
  for (std::size_t v = 0; v < s.odd_vars().size(); ++v)
    omap[v] = static_cast<int>(v) == p ? -1 : r.odd_index(s.odd_vars()[v]);
  for (const auto& [m, c] : s.terms()) {
    auto emit = [&](int sign, int sub) {
      Mono n = m;
      n.odd = 0;
      int sg = sign;
      for (std::size_t v = 0; v < s.odd_vars().size(); ++v) {
        if (!(m.odd & (1u << v))) continue;
        int idx = omap[v] < 0 ? sub : omap[v];
        int w = wedge_sign(n.odd, 1u << idx);
        if (w == 0) return;
        sg *= w;
        n.odd |= 1u << idx;
      }
      r.add(n, sg < 0 ? C(-c) : c);
    };
    if (!(m.odd & (1u << p))) {
      emit(1, -1);
    } else {
      for (const auto& [sg, n] : repl) emit(sg, r.odd_index(n));
    }
  }
  r.flag_empty_window(s.empty_window());
  return r;
}

// x -> -x.
template <class C>
SuperSeries<C> ss_negate_even(const SuperSeries<C>& s, const std::string& var) {
  const int x = s.even_index(var);
  SuperSeries<C> r = s;
  r.mutable_terms().clear();
  for (const auto& [m, c] : s.terms()) r.add(m, (m.e[x] & 1) ? C(-c) : c);
  return r;
}

template <class C>
SuperSeries<C> ss_rename_even(const SuperSeries<C>& s, const std::string& from, const std::string& to) {
  if (from == to) return s;
  if (s.has_even(to)) throw Error(ErrorKind::BadSpec, "rename target " + to + " already present");
  const int x = s.even_index(from);
  std::vector<std::string> names = s.even_vars();
  names[x] = to;
  SuperSeries<C> r(names, s.odd_vars());
  std::vector<int> map(names.size());
  for (std::size_t v = 0; v < names.size(); ++v) {
    map[v] = r.even_index(names[v]);
    r.set_window(map[v], s.window(static_cast<int>(v)));
  }
  r.set_band(s.band());
  r.flag_empty_window(s.empty_window());
  for (const auto& [m, c] : s.terms()) {
    Mono n = m;
    n.e.fill(0);
    for (std::size_t v = 0; v < names.size(); ++v) n.e[map[v]] = m.e[v];
    r.add(n, c);
  }
  return r;
}

namespace detail {
std::int64_t count_even_vectors(const std::vector<Interval>& region, std::size_t present);
}

// Coefficientwise comparison on the intersection of exact windows, optionally restricted further.
template <class C>
ComparisonReport ss_compare(const SuperSeries<C>& a0, const SuperSeries<C>& b0,
                            const std::map<std::string, Interval>& restrict_to = {}) {
  auto [even, odd] = union_context(a0, b0);
  SuperSeries<C> a = a0.extended(even, odd);
  SuperSeries<C> b = b0.extended(even, odd);
  const std::size_t k = even.size();
  std::vector<Interval> region(k);
  for (std::size_t v = 0; v < k; ++v) {
    region[v] = intersect(a.window(v).exact, b.window(v).exact);
    auto it = restrict_to.find(even[v]);
    if (it != restrict_to.end()) region[v] = intersect(region[v], it->second);
    if (region[v].is_empty())
      return ComparisonReport::inconclusive("exact windows of " + even[v] + " do not overlap");
  }
  if (a.empty_window() || b.empty_window()) return ComparisonReport::inconclusive("empty exact window");
  auto inside = [&](const Mono& m) {
    for (std::size_t v = 0; v < k; ++v)
      if (!region[v].contains(m.e[v])) return false;
    return true;
  };
  std::map<Mono, std::pair<C, C>> diff;
  for (const auto& [m, c] : a.terms())
    if (inside(m)) diff[m].first = c;
  for (const auto& [m, c] : b.terms())
    if (inside(m)) diff[m].second = c;
  ComparisonReport rep = ComparisonReport::pass(0);
  std::size_t present = 0;
  std::optional<std::array<std::int32_t, kMaxEven>> last;
  for (const auto& [m, pr] : diff) {
    if (!last || *last != m.e) {
      ++present;
      last = m.e;
    }
    if (is_zero(C(pr.first - pr.second))) continue;
    Witness w;
    for (std::size_t v = 0; v < k; ++v) w.exponent.push_back(m.e[v]);
    for (std::size_t v = 0; v < odd.size(); ++v) w.exponent.push_back((m.odd >> v) & 1u);
    w.lhs = to_string(pr.first);
    w.rhs = to_string(pr.second);
    rep.status = Status::Fail;
    if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back(std::move(w));
  }
  rep.checked = static_cast<std::size_t>(detail::count_even_vectors(region, present));
  std::string vars;
  for (std::size_t v = 0; v < k; ++v) vars += (v ? "," : "") + even[v] + to_string(region[v]);
  for (std::size_t v = 0; v < odd.size(); ++v) vars += "," + odd[v];
  rep.detail = "variables " + vars;
  return rep;
}

}  // namespace nsvosa
