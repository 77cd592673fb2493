#include "nsvosa/error.hpp"
#include "nsvosa/ratfn.hpp"
#include "vcommon.hpp"

namespace nsvosa {

using namespace detail;

namespace {

const std::string X0 = "x0", X1 = "x1", X2 = "x2", P1 = "phi1", P2 = "phi2";

WindowConfig window_of(const Series& s, long N) {
  WindowConfig wc;
  wc.N = N;
  for (std::size_t v = 0; v < s.even_vars().size(); ++v)
    wc.per_var[s.even_vars()[v]] = intersect(s.window(static_cast<int>(v)).exact, Interval{-N, N});
  return wc;
}

std::string describe(const DualityResult& r) {
  std::string d;
  if (r.f) d = "f = " + r.f->f.to_string();
  if (r.h) d += (d.empty() ? "" : "; ") + ("h = " + r.h->f.to_string());
  return d;
}

}  // namespace

const std::vector<std::string>& duality_kinds() {
  static const std::vector<std::string> ids{"rationality-products", "supercommutativity", "rationality-iterates",
                                            "iterate-product-match", "associativity"};
  return ids;
}

DualityResult check_duality(const VosaData& V, const std::string& kind, const ModuleVector& u, const ModuleVector& v,
                            const ModuleVector& w, const DualVector& vp, const CheckConfig& cfg,
                            std::array<int, 3> bounds) {
  const auto& kinds = duality_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
    throw Error(ErrorKind::UnknownIdentity, "unknown duality check " + kind);
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "duality checks need odd variables");
  const bool both_odd = is_odd(parity_of(u)) && is_odd(parity_of(v));
  const long N = cfg.N;

  Correlators c = correlators(V, u, v, w, cfg);
  DualityResult out;
  out.sign = both_odd ? -1 : 1;
  const Series p12 = pair_series(c.P12, vp);
  const bool need_f = kind != "rationality-iterates" && kind != "iterate-product-match";
  const bool need_h = kind != "rationality-products" && kind != "supercommutativity";
  if (need_f) out.f = reconstruct(p12, ReconstructSpec::products(bounds));
  if (need_h) out.h = reconstruct(pair_series(c.R, vp), ReconstructSpec::iterates(bounds));

  ComparisonReport rep;
  if (kind == "rationality-products") {
    rep = ComparisonReport::pass(out.f->checked);
  } else if (kind == "rationality-iterates") {
    rep = ComparisonReport::pass(out.h->checked);
  } else if (kind == "supercommutativity") {
    const Series p21 = pair_series(c.P21, vp);
    Series e = iota_expand(out.f->f, {X2, X1}, window_of(p21, N));
    if (both_odd) e = -e;
    rep = ss_compare(e, p21, box({X1, X2}, Interval{-N, N}));
  } else if (kind == "iterate-product-match") {
    const Series eps = polynomial({}, {P1, P2}, {{{}, {{P1, P2}, Grassmann(Rational(1))}}});
    const auto region = box({X0, X2}, Interval{-N, N});
    Series sub = ss_shift_subst(p12, X1, ShiftSpec{X0, X2, 1, 2 * N + c.Wmid + 4}, &eps, region);
    rep = ss_compare(iota_expand(out.h->f, {X0, X2}, window_of(sub, N)), sub, region);
  } else {
    RationalSuperFn hs = substitute(out.h->f, X0, LinearForm::make(X1, X2, -1, -1, P1, P2));
    rep = compare_functions(hs, out.f->f);
  }
  const std::string d = describe(out);
  if (!d.empty()) rep.detail = rep.detail.empty() ? d : d + "; " + rep.detail;
  if (!c.note.empty() && rep.status != Status::Fail) rep.detail += "; " + c.note;
  out.report = rep;
  return out;
}

}  // namespace nsvosa
