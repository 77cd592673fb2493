#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsvosa/module.hpp"
#include "nsvosa/report.hpp"
#include "nsvosa/superseries.hpp"

namespace nsvosa {

enum class Flavor { WithPhi, WithoutPhi };
std::string flavor_name(Flavor f);

struct BasisEntry {
  std::string label;
  int weight2 = 0;
  Parity parity = Parity::Even;
};

struct VosaData;

// Supplies u_{n2/2} w for basis vectors u, w. Results of negative weight must be zero; results above
// the owner's truncation are dropped by VosaData::mode.
class ModeProvider {
 public:
  virtual ~ModeProvider() = default;
  virtual ModuleVector mode(const VosaData& V, int u, int n2, int w) const = 0;
};

struct VosaData {
  Flavor flavor = Flavor::WithoutPhi;
  std::vector<BasisEntry> basis;
  int max_weight2 = 0;
  int generators = 2;
  int vacuum = 0;
  ModuleVector tau;
  Rational rank;
  std::shared_ptr<const ModeProvider> provider;
  // The same algebra truncated at a larger weight, when the source can produce one.
  std::function<VosaData(int)> rebuild;

  int size() const { return static_cast<int>(basis.size()); }
  Ket ket(int i) const;
  ModuleVector vec(int i, const Grassmann& c = Grassmann(Rational(1))) const;
  int find(const std::string& label) const;
  // Throws TableIncomplete for labels not in the basis.
  int index(const std::string& label) const;
  ModuleVector parse_vector(const std::string& text) const;
  std::string render(const ModuleVector& v) const;
  std::string render_witness(const std::string& s) const;

  // Weight of u_{n2/2} w, doubled.
  int mode_weight2(int u, int n2, int w) const { return basis[u].weight2 - n2 - 2 + basis[w].weight2; }
  ModuleVector mode(int u, int n2, int w) const;
  // Bilinear extension with the Koszul sign for Grassmann coefficients on w.
  ModuleVector mode(const ModuleVector& u, int n2, const ModuleVector& w) const;

  // Neveu-Schwarz operators read off from tau.
  ModuleVector G(int r2, const ModuleVector& w) const;
  ModuleVector L(int n, const ModuleVector& w) const;
  ModuleVector omega() const;

  // Truncation raised to at least weight2 when possible; otherwise this object.
  VosaData at_weight(int weight2) const;
  bool can_raise() const { return static_cast<bool>(rebuild); }
};

// Weight2 and parity of a homogeneous vector; throws NonHomogeneous otherwise.
int weight2_of(const ModuleVector& v);
Parity parity_of(const ModuleVector& v);

// Interchange format.
std::string dump_vosa(const VosaData& V);
VosaData load_vosa(const std::string& text);
VosaData table_copy(const VosaData& V);

// Functors and variants.
VosaData functor_F0(const VosaData& V);
VosaData functor_Fphi(const VosaData& V);
struct SignFlipResult {
  VosaData data;
  ComparisonReport report;
};
VosaData sign_flip_data(const VosaData& V);
// Adds delta to one table entry u_{n2/2} w.
VosaData corrupt_mode(const VosaData& V, int u, int n2, int w, const ModuleVector& delta);
VosaData reassign_weight(const VosaData& V, int index, int weight2);

// ---- vertex operators as series ----

using VecSeries = SuperSeries<ModuleVector>;

// Signed sum of odd variables, such as phi1 - phi2.
struct OddArg {
  std::vector<std::pair<int, std::string>> terms;
  static OddArg none() { return {}; }
  static OddArg var(const std::string& name, int sign = 1) { return {{{sign, name}}}; }
};

VecSeries constant_series(const ModuleVector& w);

// Y(u,(x,phi)) S. S must be weight graded with offset s_weight2: the coefficient of a monomial m has
// weight s_weight2/2 + sum of even exponents + (number of odd variables in m)/2. Only output components of
// weight <= out_weight2/2 are kept; x is exact everywhere and S's windows carry over.
VecSeries apply_vertex(const VosaData& V, const ModuleVector& u, const std::string& x, const OddArg& phi,
                       const VecSeries& S, int s_weight2, int out_weight2);
// Y(Q,(x,phi)) w for a graded vector series Q (offset q_weight2).
VecSeries apply_vertex_series(const VosaData& V, const VecSeries& Q, int q_weight2, const std::string& x,
                              const OddArg& phi, const ModuleVector& w, int out_weight2);
// Marks as inexact the monomials of var whose coefficients may have lost components above max_weight2.
void restrict_to_complete(VecSeries& S, const std::string& var, int s_weight2, int max_weight2, int max_odd);
// Applies a module operator to every coefficient (the operator acts from the left of the monomials).
VecSeries apply_operator(const VecSeries& S, const std::function<ModuleVector(const ModuleVector&)>& op);
// e^{sign (x0 L(-1) + phi0 G(-1/2))} S, keeping output weights <= out_weight2/2.
VecSeries apply_exp(const VosaData& V, int sign, const std::string& x0, const std::string& phi0, const VecSeries& S,
                    int out_weight2);
VecSeries project(const VecSeries& S, int max_weight2);
ComparisonReport compare_vec(const VosaData& V, const VecSeries& a, const VecSeries& b,
                             const std::map<std::string, Interval>& restrict_to = {});

// Operator-valued view of Y(v,(x,phi)) on the truncated module with x exponents in window.
struct Operator {
  std::map<int, ModuleVector> columns;  // image of each basis vector
  Parity parity = Parity::Even;
  ModuleVector apply(const VosaData& V, const ModuleVector& w) const;
};
struct OperatorSeries {
  // (monomial x^e phi^k) -> operator, k in {0,1}; phi is to the left of the operator.
  std::map<std::pair<long, int>, Operator> terms;
  Interval exact;
};
OperatorSeries vertex_op(const VosaData& V, const ModuleVector& v, long N);

// ---- checks ----

struct CheckConfig {
  int weight_bound2 = 6;  // basis vectors of weight <= bound/2 are sampled
  long N = 6;             // symmetric exponent window
  int dual_weight2 = 4;   // comparisons against all dual vectors of weight <= dual/2
  int pair_weight2 = 3;   // u, v sampled up to this weight in two- and three-vector checks
  int target_weight2 = 2; // w sampled up to this weight in three-vector checks
  int ns_index_bound2 = 8;
  int k_limit = 8;
};

const std::vector<std::string>& axiom_ids(Flavor f);
ComparisonReport check_axiom(const VosaData& V, const std::string& id, const CheckConfig& cfg);

const std::vector<std::string>& consequence_ids();
ComparisonReport check_consequence(const VosaData& V, const std::string& id, const CheckConfig& cfg);

struct DualVector {
  std::map<int, Grassmann> coeffs;
  Grassmann pair(const ModuleVector& v) const;
};

// Jacobi identity for basis-combination vectors u, v, w (with odd variables). Without v', compares
// against every dual vector of weight <= cfg.dual_weight2/2.
ComparisonReport check_jacobi(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                              const std::optional<DualVector>& vp, const CheckConfig& cfg);
// Jacobi identity without odd variables.
ComparisonReport check_jacobi_plain(const VosaData& V, const ModuleVector& u, const ModuleVector& v,
                                    const ModuleVector& w, const CheckConfig& cfg);

struct WeakResult {
  int k = 0;
  int proof_bound = 0;
  ComparisonReport report;
};
WeakResult weak_supercomm_k(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const CheckConfig& cfg);
WeakResult weak_assoc_k(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                        const CheckConfig& cfg);

using ModuleMap = std::function<ModuleVector(const ModuleVector&)>;
ComparisonReport check_hom(const ModuleMap& gamma, const VosaData& V1, const VosaData& V2, const CheckConfig& cfg);
SignFlipResult sign_flip(const VosaData& V, const CheckConfig& cfg);

}  // namespace nsvosa
