// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "nsvosa/delta.hpp"
#include "nsvosa/error.hpp"
#include "nsvosa/freefield.hpp"
#include "nsvosa/nsalg.hpp"
#include "nsvosa/ratfn.hpp"
#include "nsvosa/vosa.hpp"
#include "suite.hpp"

using namespace nsvosa;

namespace {

Grassmann q(long a, long b = 1) { return Grassmann(Rational(a) / b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) note.clear();
    ok = false;
    note += (note.empty() ? "" : "; ") + what;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("threw ") + e.what();
  }
  if (!o.ok) ++failures;
  std::printf("criterion %2d  %s  %s%s%s\n", n, o.ok ? "PASS" : "FAIL", title.c_str(), o.note.empty() ? "" : "  ",
              o.note.c_str());
  std::fflush(stdout);
}

VosaData super_free(int w2) { return functor_Fphi(ff_build(w2)); }

CheckConfig config(long N) {
  CheckConfig c;
  c.N = N;
  return c;
}

}  // namespace

int main() {
  criterion(1, "delta identities at N = 4, 8, 16", [] {
    Outcome o;
    double t16 = 0;
    for (long N : {4L, 8L, 16L}) {
      const auto t0 = std::chrono::steady_clock::now();
      for (const auto& id : delta_identity_ids()) {
        DeltaCheckOptions opt;
        opt.N = N;
        o.require(check_delta_identity(id, opt).passed(), id + " at N = " + std::to_string(N));
      }
      if (N == 16) t16 = seconds_since(t0);
    }
    o.require(t16 < 10, "N = 16 took " + std::to_string(t16) + " s");
    if (o.ok) o.note = "N = 16 in " + std::to_string(t16) + " s";
    return o;
  });

  criterion(2, "superconformal shift and a perturbed pair", [] {
    Outcome o;
    const Series xt = polynomial({"x1", "x2"}, {"phi1", "phi2"},
                                 {{{{"x1", 1}}, {{}, q(1)}}, {{{"x2", 1}}, {{}, q(-1)}}, {{}, {{"phi1", "phi2"}, q(-1)}}});
    const Series pt = polynomial({"x1", "x2"}, {"phi1", "phi2"}, {{{}, {{"phi1"}, q(1)}}, {{}, {{"phi2"}, q(-1)}}});
    o.require(check_superconformal(xt, pt, "x1", "phi1").passed(), "(x1 - x2 - phi1 phi2, phi1 - phi2)");
    const Series bad = polynomial({"x"}, {"phi"}, {{{{"x", 1}}, {{}, q(1)}}, {{{"x", 2}}, {{}, q(1)}}});
    const Series p = polynomial({"x"}, {"phi"}, {{{}, {{"phi"}, q(1)}}});
    const ComparisonReport r = check_superconformal(bad, p, "x", "phi");
    o.require(r.failed() && !r.witnesses.empty(), "perturbed pair (x + x^2, phi) did not fail with a witness");
    if (o.ok) o.note = "perturbed witness at x^" + std::to_string(r.witnesses.front().exponent.front());
    return o;
  });

  criterion(3, "Neveu-Schwarz axioms at bound 4 and four brackets", [] {
    Outcome o;
    o.require(ns_check_axioms(4).passed(), "axioms");
    const auto L = NSSymbol::L;
    const auto G = NSSymbol::G2;
    o.require(ns_bracket(L(1), L(-1)) == NSElement(L(0), q(2)), "[L(1),L(-1)]");
    o.require(ns_bracket(L(2), L(-2)) == NSElement(L(0), q(4)) + NSElement(NSSymbol::d(), q(1, 2)), "[L(2),L(-2)]");
    o.require(ns_bracket(G(-1), G(-1)) == NSElement(L(-1), q(2)), "[G(-1/2),G(-1/2)]");
    o.require(ns_bracket(G(1), L(1)).is_zero(), "[G(1/2),L(1)]");
    return o;
  });

  criterion(4, "free field rank, dimensions and tau", [] {
    Outcome o;
    for (int w2 = 3; w2 <= 6; ++w2) o.require(ff_rank(w2) == Rational(3, 2), "rank at W/2 = " + std::to_string(w2));
    const VosaData V = ff_build(5);
    const std::vector<long> want{1, 1, 1, 2, 3, 4};
    std::vector<long> got(6, 0);
    for (const auto& b : V.basis) ++got[b.weight2];
    o.require(got == want, "dimensions");
    o.require(V.G(-1, V.tau) == V.parse_vector("a(-1)a(-1) + p(-3/2)p(-1/2)"), "G(-1/2) tau");
    o.require(V.G(3, V.tau) == V.vec(V.vacuum), "G(3/2) tau");
    for (int i = 0; i < V.size(); ++i)
      if (V.basis[i].weight2 <= 3)
        o.require(V.G(-1, V.G(-1, V.vec(i))) == V.L(-1, V.vec(i)), "G(-1/2)^2 on " + V.basis[i].label);
    return o;
  });

  criterion(5, "axiom suite and Jacobi sweep on F_phi(free field), W/2 = 3, N = 6", [] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const VosaData V = super_free(6);
    CheckConfig cfg = config(6);
    for (const auto& id : axiom_ids(Flavor::WithPhi)) o.require(check_axiom(V, id, cfg).passed(), id);
    cfg.dual_weight2 = 4;
    const int L = V.generators;
    std::vector<ModuleVector> us;
    for (int i = 0; i < V.size(); ++i)
      if (V.basis[i].weight2 <= 3) us.push_back(V.vec(i));
    // Homogeneous vectors with nilpotent coefficients.
    us.push_back(V.vec(V.index("p(-1/2)"), Grassmann::parse("e1", L)));
    us.push_back(V.vec(V.index("a(-1)p(-1/2)")) + V.vec(V.index("p(-3/2)"), Grassmann::parse("1/2+e1e2", L)));
    const std::vector<ModuleVector> ws{V.vec(ff_vacuum()), V.vec(ff_psi_hat()), V.vec(ff_alpha_hat())};
    std::size_t n = 0;
    for (const auto& u : us)
      for (const auto& v : us)
        for (const auto& w : ws) {
          ++n;
          o.require(check_jacobi(V, u, v, w, std::nullopt, cfg).passed(),
                    "Jacobi (" + V.render(u) + ", " + V.render(v) + ", " + V.render(w) + ")");
        }
    const double t = seconds_since(t0);
    o.require(t < 60, "took " + std::to_string(t) + " s");
    if (o.ok) o.note = std::to_string(n) + " Jacobi triples in " + std::to_string(t) + " s";
    return o;
  });

  criterion(6, "consequences", [] {
    Outcome o;
    const VosaData V = super_free(6);
    for (const auto& id : consequence_ids()) o.require(check_consequence(V, id, config(6)).passed(), id);
    return o;
  });

  criterion(7, "functor round trips and sign flip", [] {
    Outcome o;
    const VosaData P = ff_build(6);
    const VosaData S = functor_Fphi(P);
    o.require(dump_vosa(functor_F0(S)) == dump_vosa(P), "F_0(F_phi(V)) != V");
    o.require(dump_vosa(functor_Fphi(functor_F0(S))) == dump_vosa(S), "F_phi(F_0(W)) != W");
    const SignFlipResult f = sign_flip(S, config(6));
    o.require(f.report.passed(), "sign flip: " + f.report.detail);
    o.require(dump_vosa(sign_flip_data(f.data)) == dump_vosa(S), "sign flip is not an involution");
    return o;
  });

  criterion(8, "weak supercommutativity and associativity", [] {
    Outcome o;
    const VosaData V = super_free(6);
    const CheckConfig cfg = config(6);
    const ModuleVector psi = V.vec(ff_psi_hat()), vac = V.vec(ff_vacuum());
    const WeakResult sc = weak_supercomm_k(V, psi, psi, cfg);
    o.require(sc.report.passed() && sc.proof_bound == 2, "weak_supercomm_k(psi, psi) proof bound " +
                                                             std::to_string(sc.proof_bound));
    const WeakResult as = weak_assoc_k(V, psi, psi, vac, cfg);
    o.require(as.report.passed() && as.k == 1, "weak_assoc_k(psi, psi, 1) = " + std::to_string(as.k));
    std::size_t both = 0;
    for (int u : {ff_vacuum(), ff_psi_hat(), ff_alpha_hat()})
      for (int v : {ff_vacuum(), ff_psi_hat(), ff_alpha_hat()})
        for (int w : {ff_vacuum(), ff_psi_hat(), ff_alpha_hat()}) {
          const bool weak = weak_supercomm_k(V, V.vec(u), V.vec(v), cfg).report.passed() &&
                            weak_assoc_k(V, V.vec(u), V.vec(v), V.vec(w), cfg).report.passed();
          if (!weak) continue;
          ++both;
          o.require(check_jacobi(V, V.vec(u), V.vec(v), V.vec(w), std::nullopt, cfg).passed(),
                    "Jacobi after weak checks (" + V.basis[u].label + ", " + V.basis[v].label + ", " +
                        V.basis[w].label + ")");
        }
    o.require(both > 0, "no triple passed both weak checks");
    if (o.ok)
      o.note = "psi-hat: series k = " + std::to_string(sc.k) + ", proof bound " + std::to_string(sc.proof_bound) +
               "; weak => Jacobi on " + std::to_string(both) + " triples";
    return o;
  });

  criterion(9, "duality on (psi-hat, psi-hat, 1, 1')", [] {
    Outcome o;
    const VosaData V = super_free(6);
    const CheckConfig cfg = config(6);
    const ModuleVector psi = V.vec(ff_psi_hat()), vac = V.vec(ff_vacuum());
    DualVector vp;
    vp.coeffs[ff_vacuum()] = q(1);
    const DualityResult rp = check_duality(V, "rationality-products", psi, psi, vac, vp, cfg);
    o.require(rp.report.passed() && rp.f && rp.f->f.to_string() == "1 / (x1 - x2 - p1p2)" &&
                  rp.f->r == 0 && rp.f->s == 0 && rp.f->t == 1,
              "f = " + (rp.f ? rp.f->f.to_string() : std::string("none")));
    const DualityResult sc = check_duality(V, "supercommutativity", psi, psi, vac, vp, cfg);
    o.require(sc.report.passed() && sc.sign == -1, "supercommutativity");
    for (const char* kind : {"rationality-iterates", "iterate-product-match", "associativity"})
      o.require(check_duality(V, kind, psi, psi, vac, vp, cfg).report.passed(), kind);

    std::size_t covered = 0;
    for (int u = 0; u < V.size(); ++u)
      for (int v = 0; v < V.size(); ++v)
        for (int w : {ff_vacuum(), ff_psi_hat(), ff_alpha_hat()})
          for (int p = 0; p < V.size(); ++p) {
            if (V.basis[u].weight2 > 2 || V.basis[v].weight2 > 2 || V.basis[p].weight2 > 3) continue;
            DualVector d;
            d.coeffs[p] = q(1);
            bool all = true;
            for (const char* kind :
                 {"rationality-products", "rationality-iterates", "supercommutativity", "associativity"}) {
              all = check_duality(V, kind, V.vec(u), V.vec(v), V.vec(w), d, cfg).report.passed();
              if (!all) break;
            }
            if (!all) continue;
            ++covered;
            o.require(check_jacobi(V, V.vec(u), V.vec(v), V.vec(w), d, cfg).passed(),
                      "Jacobi after duality (" + V.basis[u].label + ", " + V.basis[v].label + ", " +
                          V.basis[w].label + ", " + V.basis[p].label + "')");
          }
    o.require(covered > 0, "no tuple passed all duality checks");
    if (o.ok) o.note = "f = " + rp.f->f.to_string() + "; duality => Jacobi on " + std::to_string(covered) + " tuples";
    return o;
  });

  criterion(10, "fault injection fails every suite with a witness", [] {
    Outcome o;
    std::string seen;
    for (const char* suite : {"delta", "nsalg", "freefield", "vosa", "rational"}) {
      suite::SuiteConfig cfg;
      cfg.fault = true;
      cfg.window = 6;
      cfg.checks = {std::string(suite) + ":*"};
      const suite::SuiteReport r = suite::run_suite(cfg);
      std::size_t witnessed = 0;
      for (const auto& c : r.results)
        if (c.report.failed() && !c.report.witnesses.empty() && c.report.witnesses.front().lhs != c.report.witnesses.front().rhs)
          ++witnessed;
      o.require(witnessed > 0, std::string(suite) + " reported no failure with a witness");
      seen += (seen.empty() ? "" : ", ") + std::string(suite) + " " + std::to_string(witnessed);
    }
    if (o.ok) o.note = "failing checks with witnesses: " + seen;
    return o;
  });

  return failures == 0 ? 0 : 1;
}
