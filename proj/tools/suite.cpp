#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "nsvosa/delta.hpp"
#include "nsvosa/error.hpp"
#include "nsvosa/freefield.hpp"
#include "nsvosa/nsalg.hpp"
#include "nsvosa/ratfn.hpp"
#include "nsvosa/vosa.hpp"

namespace nsvosa::suite {

namespace {

Grassmann q(long a, long b = 1) { return Grassmann(Rational(a) / b); }

void record(ComparisonReport& rep, std::vector<long> at, const std::string& lhs, const std::string& rhs, bool ok,
            const std::string& what) {
  ++rep.checked;
  if (ok) return;
  if (rep.status != Status::Fail) rep.detail = what;
  rep.status = Status::Fail;
  if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back({std::move(at), lhs, rhs});
}

ComparisonReport opened() { return ComparisonReport::pass(0); }

class Context {
 public:
  explicit Context(const SuiteConfig& c) : cfg(c) {
    check.N = c.window;
    check.k_limit = c.k_limit;
    check.weight_bound2 = std::min(check.weight_bound2, c.max_weight2);
  }

  const SuiteConfig& cfg;
  CheckConfig check;

  // Free field without odd variables; the freefield suite always uses it.
  const VosaData& free_plain() {
    if (!ff_) {
      ff_ = ff_build(cfg.max_weight2, cfg.generators);
      if (cfg.fault) ff_ = corrupt_tau(*ff_);
    }
    return *ff_;
  }

  const VosaData& super() {
    if (!super_) {
      super_ = source_super();
      if (cfg.fault) super_ = corrupt_vacuum(corrupt_tau(*super_));
    }
    return *super_;
  }

  const VosaData& plain() {
    if (!plain_) {
      VosaData s = source_super();
      plain_ = functor_F0(s);
      if (cfg.fault) plain_ = corrupt_vacuum(*plain_);
    }
    return *plain_;
  }

  const VosaData& clean_super() {
    if (!clean_) clean_ = source_super();
    return *clean_;
  }

  // Data for duality checks: a creation mode of u is doubled under fault injection.
  const VosaData& duality_data() {
    if (!dual_) {
      dual_ = clean_super();
      if (cfg.fault) {
        const int u = dual_->index(cfg.samples.front()[0]);
        dual_ = corrupt_mode(*dual_, u, -2, dual_->vacuum, dual_->vec(u));
      }
    }
    return *dual_;
  }

  ModuleVector sample_vec(const VosaData& V, std::size_t s, int i) { return V.vec(V.index(cfg.samples[s][i])); }
  DualVector sample_dual(const VosaData& V, std::size_t s) {
    DualVector d;
    d.coeffs[V.index(cfg.samples[s][3])] = q(1);
    return d;
  }

 private:
  VosaData source_super() {
    if (cfg.load) {
      std::ifstream in(*cfg.load);
      if (!in) throw Error(ErrorKind::ConfigError, "load: cannot read " + *cfg.load);
      std::stringstream ss;
      ss << in.rdbuf();
      VosaData V = load_vosa(ss.str());
      return V.flavor == Flavor::WithPhi ? V : functor_Fphi(V);
    }
    return functor_Fphi(ff_build(cfg.max_weight2, cfg.generators));
  }

  static int single_index(const ModuleVector& v) {
    if (v.terms().size() != 1) return -1;
    return v.terms().begin()->first.index;
  }

  // G(3/2) tau picks up an extra vacuum.
  static VosaData corrupt_tau(const VosaData& V) {
    const int t = single_index(V.tau);
    if (t < 0) return V;
    return corrupt_mode(V, t, 4, t, V.vec(V.vacuum));
  }

  // 1_{-1} b = 2b for the first basis vector after the vacuum.
  static VosaData corrupt_vacuum(const VosaData& V) {
    for (int b = 0; b < V.size(); ++b)
      if (b != V.vacuum) return corrupt_mode(V, V.vacuum, -2, b, V.vec(b));
    return V;
  }

  std::optional<VosaData> ff_, super_, plain_, clean_, dual_;
};

using CheckFn = std::function<ComparisonReport(Context&)>;

ComparisonReport delta_superconformal(Context& c) {
  std::vector<std::pair<std::vector<std::pair<std::string, long>>, std::pair<std::vector<std::string>, Grassmann>>>
      terms{{{{"x1", 1}}, {{}, q(1)}}, {{{"x2", 1}}, {{}, q(-1)}}, {{}, {{"phi1", "phi2"}, q(-1)}}};
  if (c.cfg.fault) terms.push_back({{{"x1", 2}}, {{}, q(1)}});
  const Series xt = polynomial({"x1", "x2"}, {"phi1", "phi2"}, terms);
  const Series pt = polynomial({"x1", "x2"}, {"phi1", "phi2"}, {{{}, {{"phi1"}, q(1)}}, {{}, {{"phi2"}, q(-1)}}});
  return check_superconformal(xt, pt, "x1", "phi1");
}

NSConstants ns_constants(const Context& c) {
  NSConstants k;
  if (c.cfg.fault) {
    k.virasoro = Rational(1) / 6;
    k.ns = Rational(1) / 4;
  }
  return k;
}

ComparisonReport ns_brackets(Context& c) {
  const NSConstants k = ns_constants(c);
  using S = NSSymbol;
  ComparisonReport rep = opened();
  NSElement l0(S::L(0)), lm1(S::L(-1));
  NSElement l22 = q(4) * l0 + NSElement(S::d(), q(1, 2));
  const std::vector<std::tuple<S, S, NSElement>> cases{
      {S::L(1), S::L(-1), q(2) * l0},
      {S::L(2), S::L(-2), l22},
      {S::G2(-1), S::G2(-1), q(2) * lm1},
      {S::G2(1), S::L(1), NSElement()},
  };
  for (const auto& [a, b, want] : cases) {
    const NSElement got = ns_bracket(a, b, k);
    record(rep, {a.index2, b.index2}, to_string(got), to_string(want), got == want,
           "[" + to_string(a) + ", " + to_string(b) + "]");
  }
  return rep;
}

ComparisonReport ff_rank_check(Context& c) {
  const VosaData& V = c.free_plain();
  ComparisonReport rep = opened();
  const Rational want(Rational(3) / 2);
  for (int w : {3, c.cfg.max_weight2}) {
    const Rational got = ff_rank(w);
    record(rep, {w}, to_string(got), to_string(want), got == want, "rank at weight " + std::to_string(w) + "/2");
  }
  // G(3/2) G(-3/2) 1 = (2c/3) 1 read off the tables.
  const Grassmann vac_coeff = V.G(3, V.tau).coeff(V.vacuum);
  const Rational got = Rational(3) / 2 * vac_coeff.body();
  record(rep, {3}, to_string(got), to_string(want), got == want && V.rank == want, "rank from G(3/2) tau");
  return rep;
}

ComparisonReport ff_dimensions(Context& c) {
  const VosaData& V = c.free_plain();
  ComparisonReport rep = opened();
  const std::vector<long> gf = fock_dimensions_by_generating_function(V.max_weight2);
  const std::vector<long> listed{1, 1, 1, 2, 3, 4};
  for (int w = 0; w <= V.max_weight2; ++w) {
    long n = 0;
    for (const auto& b : V.basis) n += b.weight2 == w;
    const long want = w < static_cast<int>(listed.size()) ? listed[w] : gf[w];
    record(rep, {w}, std::to_string(n), std::to_string(want), n == gf[w] && n == want,
           "dimension of weight " + to_string(Rational(w) / 2));
  }
  return rep;
}

ComparisonReport ff_g_tau(Context& c) {
  const VosaData& V = c.free_plain();
  ComparisonReport rep = opened();
  const ModuleVector got = V.G(-1, V.tau), want = V.parse_vector("a(-1)a(-1) + p(-3/2)p(-1/2)");
  record(rep, {-1}, V.render(got), V.render(want), got == want, "G(-1/2) tau");
  return rep;
}

ComparisonReport ff_g_three_halves(Context& c) {
  const VosaData& V = c.free_plain();
  ComparisonReport rep = opened();
  const ModuleVector got = V.G(3, V.tau), want = V.vec(V.vacuum);
  record(rep, {3}, V.render(got), V.render(want), got == want, "G(3/2) tau");
  return rep;
}

ComparisonReport ff_g_squared(Context& c) {
  const VosaData& V = c.free_plain();
  ComparisonReport rep = opened();
  for (int i = 0; i < V.size(); ++i) {
    if (V.basis[i].weight2 + 2 > V.max_weight2) continue;
    const ModuleVector a = V.G(-1, V.G(-1, V.vec(i))), b = V.L(-1, V.vec(i));
    record(rep, {i}, V.render(a), V.render(b), a == b, "G(-1/2)^2 on " + V.basis[i].label);
  }
  return rep;
}

// Entrywise comparison of two mode tables over the range a dump would write. Entries one side
// cannot produce (tables without a way to raise their truncation) are skipped and counted.
ComparisonReport compare_tables(const VosaData& A, const VosaData& B, const std::string& what) {
  ComparisonReport rep = opened();
  if (A.size() != B.size() || A.flavor != B.flavor)
    return ComparisonReport::fail({{}, std::to_string(A.size()), std::to_string(B.size())}, what + ": bases differ");
  const int step = A.flavor == Flavor::WithPhi ? 1 : 2;
  std::size_t skipped = 0;
  for (int u = 0; u < A.size(); ++u)
    for (int w = 0; w < A.size(); ++w) {
      const int top = A.basis[u].weight2 + A.basis[w].weight2 - 2;
      int lo = top - A.max_weight2;
      if (step == 2 && (lo & 1)) ++lo;
      for (int n2 = lo; n2 <= top; n2 += step) {
        ModuleVector a, b;
        try {
          a = A.mode(u, n2, w);
          b = B.mode(u, n2, w);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::TableIncomplete) throw;
          ++skipped;
          continue;
        }
        record(rep, {u, n2, w}, A.render(a), B.render(b), a == b,
               what + ": " + A.basis[u].label + "_(" + to_string(Rational(n2) / 2) + ") " + A.basis[w].label);
      }
    }
  if (skipped && rep.status == Status::Pass)
    rep.detail = std::to_string(skipped) + " entries above the table skipped";
  return rep;
}

ComparisonReport functors(Context& c) {
  const VosaData& V = c.super();
  const VosaData down = functor_F0(V);
  ComparisonReport rep = compare_tables(functor_Fphi(down), V, "F_phi(F_0(V))");
  rep.merge(compare_tables(functor_F0(functor_Fphi(down)), down, "F_0(F_phi(F_0(V)))"));
  return rep;
}

ComparisonReport sign_flip_check(Context& c) {
  const VosaData& V = c.super();
  SignFlipResult r = sign_flip(V, c.check);
  ComparisonReport rep = r.report;
  ComparisonReport inv = opened();
  record(inv, {0}, "flip(flip(V))", "V", dump_vosa(sign_flip_data(r.data)) == dump_vosa(V), "flip is not an involution");
  rep.merge(inv);
  return rep;
}

std::string sample_name(const SuiteConfig& cfg, std::size_t s) {
  const auto& t = cfg.samples[s];
  return "(" + t[0] + ", " + t[1] + ", " + t[2] + ", " + t[3] + "')";
}

// Runs one check per sample and merges; details are prefixed with the sample when there are several.
ComparisonReport over_samples(Context& c, const std::function<ComparisonReport(std::size_t)>& one) {
  ComparisonReport rep = opened();
  std::vector<std::string> notes;
  for (std::size_t s = 0; s < c.cfg.samples.size(); ++s) {
    ComparisonReport r = one(s);
    if (!r.detail.empty()) notes.push_back(c.cfg.samples.size() > 1 ? sample_name(c.cfg, s) + " " + r.detail : r.detail);
    rep.merge(r);
  }
  rep.detail.clear();
  for (const auto& n : notes) rep.detail += (rep.detail.empty() ? "" : "; ") + n;
  return rep;
}

ComparisonReport weak_supercomm(Context& c) {
  const VosaData& V = c.super();
  return over_samples(c, [&](std::size_t s) {
    return weak_supercomm_k(V, c.sample_vec(V, s, 0), c.sample_vec(V, s, 1), c.check).report;
  });
}

ComparisonReport weak_assoc(Context& c) {
  const VosaData& V = c.super();
  return over_samples(c, [&](std::size_t s) {
    return weak_assoc_k(V, c.sample_vec(V, s, 0), c.sample_vec(V, s, 1), c.sample_vec(V, s, 2), c.check).report;
  });
}

CheckFn duality(const std::string& kind) {
  return [kind](Context& c) {
    const VosaData& V = c.duality_data();
    return over_samples(c, [&](std::size_t s) {
      return check_duality(V, kind, c.sample_vec(V, s, 0), c.sample_vec(V, s, 1), c.sample_vec(V, s, 2),
                           c.sample_dual(V, s), c.check, c.cfg.rst_bounds)
          .report;
    });
  };
}

ComparisonReport round_trip(Context& c) {
  ComparisonReport rep = opened();
  const auto forms = ReconstructSpec::products().forms;
  const Series one = polynomial({}, {}, {{{}, {{}, q(1)}}});
  const Series x2sq = polynomial({"x2"}, {}, {{{{"x2", 2}}, {{}, q(1)}}});
  const std::vector<RationalSuperFn> fs{
      {one, {{forms[2], 1}}},
      {x2sq, {{forms[0], 1}, {forms[2], 2}}},
      {one, {{forms[0], 1}, {forms[1], 1}, {forms[2], 1}}},
  };
  WindowConfig wc;
  wc.N = std::max(c.cfg.window, 6L);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Series s = iota_expand(fs[i], {"x1", "x2"}, wc);
    if (c.cfg.fault) s = s + polynomial({"x1", "x2"}, {}, {{{{"x1", -1}, {"x2", -1}}, {{}, q(1)}}});
    const Reconstruction r = reconstruct(s, c.cfg.rst_bounds);
    ComparisonReport one_rep = compare_functions(r.f, fs[i]);
    if (one_rep.status == Status::Fail) one_rep.detail = "reconstructed " + r.f.to_string() + " from " + fs[i].to_string();
    rep.merge(one_rep);
  }
  return rep;
}

// For every sampled (u, v, w, v') passing all four duality checks, Jacobi holds.
ComparisonReport duality_implies_jacobi(Context& c) {
  const VosaData& V = c.duality_data();
  ComparisonReport rep = opened();
  std::size_t covered = 0;
  for (int u = 0; u < V.size(); ++u) {
    if (V.basis[u].weight2 > c.check.pair_weight2) continue;
    for (int v = 0; v < V.size(); ++v) {
      if (V.basis[v].weight2 > c.check.pair_weight2) continue;
      for (int w = 0; w < V.size(); ++w) {
        if (V.basis[w].weight2 > c.check.target_weight2) continue;
        for (int p = 0; p < V.size(); ++p) {
          if (V.basis[p].weight2 > c.check.dual_weight2) continue;
          DualVector d;
          d.coeffs[p] = q(1);
          bool all = true;
          for (const char* kind :
               {"rationality-products", "rationality-iterates", "supercommutativity", "associativity"}) {
            try {
              all = check_duality(V, kind, V.vec(u), V.vec(v), V.vec(w), d, c.check, c.cfg.rst_bounds).report.passed();
            } catch (const Error&) {
              all = false;
            }
            if (!all) break;
          }
          if (!all) continue;
          ++covered;
          ComparisonReport j = check_jacobi(V, V.vec(u), V.vec(v), V.vec(w), d, c.check);
          if (j.status != Status::Pass)
            j.detail = "(" + V.basis[u].label + ", " + V.basis[v].label + ", " + V.basis[w].label + ", " +
                       V.basis[p].label + "') " + j.detail;
          rep.merge(j);
        }
      }
    }
  }
  if (covered == 0) return ComparisonReport::inconclusive("no tuple passed all four duality checks");
  if (rep.status == Status::Pass) rep.detail = std::to_string(covered) + " tuples";
  return rep;
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> r = [] {
    std::map<std::string, CheckFn> m;
    for (const auto& id : delta_identity_ids())
      m["delta:" + id] = [id](Context& c) {
        DeltaCheckOptions o;
        o.N = c.cfg.window;
        o.fault = c.cfg.fault;
        o.grassmann_generators = c.cfg.generators;
        return check_delta_identity(id, o);
      };
    m["delta:superconformal"] = delta_superconformal;
    m["nsalg:axioms"] = [](Context& c) { return ns_check_axioms(4, ns_constants(c)); };
    m["nsalg:brackets"] = ns_brackets;
    m["freefield:rank"] = ff_rank_check;
    m["freefield:dimensions"] = ff_dimensions;
    m["freefield:g-tau"] = ff_g_tau;
    m["freefield:g-three-halves-tau"] = ff_g_three_halves;
    m["freefield:g-squared"] = ff_g_squared;
    for (const auto& id : axiom_ids(Flavor::WithPhi))
      m["vosa:axiom:" + id] = [id](Context& c) { return check_axiom(c.super(), id, c.check); };
    for (const auto& id : axiom_ids(Flavor::WithoutPhi))
      m["vosa:plain-axiom:" + id] = [id](Context& c) { return check_axiom(c.plain(), id, c.check); };
    for (const auto& id : consequence_ids())
      m["vosa:consequence:" + id] = [id](Context& c) { return check_consequence(c.super(), id, c.check); };
    m["vosa:functors"] = functors;
    m["vosa:sign-flip"] = sign_flip_check;
    m["vosa:weak-supercomm"] = weak_supercomm;
    m["vosa:weak-assoc"] = weak_assoc;
    for (const auto& kind : duality_kinds()) m["rational:" + kind] = duality(kind);
    m["rational:round-trip"] = round_trip;
    m["rational:duality-implies-jacobi"] = duality_implies_jacobi;
    return m;
  }();
  return r;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long r = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, key + ": expected an integer, got '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    if (!trim(part).empty()) out.push_back(trim(part));
  return out;
}

}  // namespace

bool SuiteReport::any_failed() const {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.report.failed(); });
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> r;
    for (const auto& [k, f] : registry()) r.push_back(k);
    return r;
  }();
  return ids;
}

std::vector<std::string> resolve(const std::vector<std::string>& patterns) {
  if (patterns.empty()) return check_ids();
  std::vector<std::string> out;
  for (const auto& p : patterns) {
    std::size_t before = out.size();
    if (p == "*" || p == "all") {
      out.insert(out.end(), check_ids().begin(), check_ids().end());
    } else if (p.size() >= 2 && p.ends_with("*")) {
      const std::string prefix = p.substr(0, p.size() - 1);
      for (const auto& id : check_ids())
        if (id.starts_with(prefix)) out.push_back(id);
    } else if (registry().count(p)) {
      out.push_back(p);
    }
    if (out.size() == before) throw Error(ErrorKind::ConfigError, "check: unknown check '" + p + "'");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::array<int, 3> parse_rst(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 1 && parts.size() != 3)
    throw Error(ErrorKind::ConfigError, "rst-bounds: expected one integer or r,s,t");
  std::array<int, 3> r{};
  for (int i = 0; i < 3; ++i)
    r[i] = static_cast<int>(parse_long("rst-bounds", parts[parts.size() == 1 ? 0 : i]));
  return r;
}

SuiteConfig apply_config_file(const std::string& text, SuiteConfig c) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "check" || key == "checks") c.checks = split(val, ',');
    else if (key == "window") c.window = parse_long(key, val);
    else if (key == "max-weight") c.max_weight2 = static_cast<int>(parse_long(key, val));
    else if (key == "generators") c.generators = static_cast<int>(parse_long(key, val));
    else if (key == "k-limit") c.k_limit = static_cast<int>(parse_long(key, val));
    else if (key == "rst-bounds") c.rst_bounds = parse_rst(val);
    else if (key == "format") c.format = val;
    else if (key == "fault-inject") c.fault = val == "1" || val == "true" || val == "yes";
    else if (key == "load") c.load = val;
    else if (key == "dump") c.dump = val;
    else if (key == "tuple") {
      c.samples.clear();
      for (const auto& one : split(val, '|')) {
        const auto parts = split(one, ';');
        if (parts.size() != 4) throw Error(ErrorKind::ConfigError, "tuple: expected u;v;w;v' in '" + one + "'");
        c.samples.push_back({parts[0], parts[1], parts[2], parts[3]});
      }
      if (c.samples.empty()) throw Error(ErrorKind::ConfigError, "tuple: empty");
    } else
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return c;
}

void validate(const SuiteConfig& c) {
  if (c.window <= 0) throw Error(ErrorKind::ConfigError, "window: must be positive");
  if (c.max_weight2 < 3) throw Error(ErrorKind::ConfigError, "max-weight: must be at least 3 (tau has weight 3/2)");
  if (c.generators <= 0 || c.generators > Grassmann::kMaxGenerators)
    throw Error(ErrorKind::ConfigError, "generators: must be in 1.." + std::to_string(Grassmann::kMaxGenerators));
  if (c.k_limit <= 0) throw Error(ErrorKind::ConfigError, "k-limit: must be positive");
  for (int b : c.rst_bounds)
    if (b < 0) throw Error(ErrorKind::ConfigError, "rst-bounds: must be nonnegative");
  if (c.format != "json" && c.format != "text") throw Error(ErrorKind::ConfigError, "format: json or text");
  resolve(c.checks);
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  SuiteReport out;
  out.suite = cfg.checks.empty() ? "all" : "";
  for (const auto& p : cfg.checks) out.suite += (out.suite.empty() ? "" : ",") + p;
  std::string tuples;
  for (const auto& t : cfg.samples) tuples += (tuples.empty() ? "" : "|") + t[0] + ";" + t[1] + ";" + t[2] + ";" + t[3];
  out.params = {{"window", std::to_string(cfg.window)},
                {"max_weight", std::to_string(cfg.max_weight2)},
                {"generators", std::to_string(cfg.generators)},
                {"k_limit", std::to_string(cfg.k_limit)},
                {"rst_bounds", std::to_string(cfg.rst_bounds[0]) + "," + std::to_string(cfg.rst_bounds[1]) + "," +
                                   std::to_string(cfg.rst_bounds[2])},
                {"fault_inject", cfg.fault ? "true" : "false"},
                {"data", cfg.load ? *cfg.load : "freefield"},
                {"tuple", tuples}};
  Context ctx(cfg);
  for (const auto& t : cfg.samples)
    for (const auto& label : t)
      if (ctx.super().find(label) < 0) throw Error(ErrorKind::ConfigError, "tuple: no basis vector labelled " + label);
  if (cfg.dump) {
    std::ofstream o(*cfg.dump);
    if (!o) throw Error(ErrorKind::ConfigError, "dump: cannot write " + *cfg.dump);
    o << dump_vosa(ctx.super());
  }
  for (const auto& id : resolve(cfg.checks)) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.id = id;
    try {
      r.report = registry().at(id)(ctx);
    } catch (const Error& e) {
      r.report = ComparisonReport{Status::Fail, 0, {}, e.what()};
    }
    r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    out.results.push_back(std::move(r));
  }
  return out;
}

std::string emit_json(const SuiteReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["suite"] = r.suite;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  json results = json::array();
  for (const auto& c : r.results) {
    json e;
    e["id"] = c.id;
    e["status"] = status_name(c.report.status);
    json ws = json::array();
    for (const auto& w : c.report.witnesses) ws.push_back({{"exponent", w.exponent}, {"lhs", w.lhs}, {"rhs", w.rhs}});
    e["witnesses"] = ws;
    e["checked"] = c.report.checked;
    e["detail"] = c.report.detail;
    e["ms"] = c.ms;
    results.push_back(e);
  }
  j["results"] = results;
  return j.dump(2) + "\n";
}

std::string emit_text(const SuiteReport& r) {
  std::size_t width = 2;
  for (const auto& c : r.results) width = std::max(width, c.id.size());
  std::ostringstream o;
  o << "suite " << r.suite << "\n";
  for (const auto& [k, v] : r.params) o << "  " << k << " = " << v << "\n";
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : r.results) {
    ++counts[static_cast<int>(c.report.status)];
    o << std::left << std::setw(static_cast<int>(width)) << c.id << "  " << std::setw(12)
      << status_name(c.report.status) << std::right << std::setw(8) << c.ms << " ms";
    if (!c.report.detail.empty()) o << "  " << c.report.detail;
    o << "\n";
    for (const auto& w : c.report.witnesses) {
      o << "    at (";
      for (std::size_t i = 0; i < w.exponent.size(); ++i) o << (i ? ", " : "") << w.exponent[i];
      o << "): " << w.lhs << "  vs  " << w.rhs << "\n";
    }
  }
  o << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " inconclusive\n";
  return o.str();
}

}  // namespace nsvosa::suite
