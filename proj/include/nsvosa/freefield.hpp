#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nsvosa/grassmann.hpp"

namespace nsvosa {

// alpha(-n_1)...alpha(-n_k) psi(-r_1)...psi(-r_l) 1 with n weakly decreasing and r strictly decreasing.
// Fermion modes are stored doubled (r = 1/2 is 1).
struct FockState {
  std::vector<int> bosons;
  std::vector<int> fermions2;
  int weight2() const;
  Parity parity() const { return parity_of(static_cast<int>(fermions2.size())); }
  auto operator<=>(const FockState&) const = default;
};

std::string fock_label(const FockState& s);
FockState parse_fock_label(const std::string& label);

using SparseVec = std::map<int, Rational>;

// Process-wide lazily grown Fock space with memoized vertex-operator modes. States are appended one
// whole weight level at a time, so indices below any weight bound are stable.
class FockSpace {
 public:
  static FockSpace& instance();

  void ensure(int weight2);
  int count_upto(int weight2);
  FockState state(int index) const;
  int weight2(int index) const;
  Parity parity(int index) const;
  int index_of(const FockState& s);
  int vacuum() { return index_of({}); }

  SparseVec alpha(int n, int index);
  SparseVec psi(int r2, int index);
  SparseVec alpha(int n, const SparseVec& v);
  SparseVec psi(int r2, const SparseVec& v);
  SparseVec G(int r2, const SparseVec& v);
  SparseVec L(int n, const SparseVec& v);

  // u_(p) z for basis vectors u, z via the normal-ordered product recursion.
  SparseVec mode(int u, int p, int z);
  SparseVec mode(int u, int p, const SparseVec& z);

 private:
  FockSpace();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Dimension of the weight-n/2 space by the product formula prod (1+q^r)/(1-q^n), independent of the
// enumeration above.
std::vector<long> fock_dimensions_by_generating_function(int max_weight2);

struct VosaData;
// Free boson plus free fermion, without odd variables, basis of weight <= max_weight2/2.
VosaData ff_build(int max_weight2, int generators = 2);
Rational ff_rank(int max_weight2 = 3);

int ff_vacuum();
int ff_psi_hat();    // psi(-1/2) 1
int ff_alpha_hat();  // alpha(-1) 1
int ff_tau();        // alpha(-1) psi(-1/2) 1

}  // namespace nsvosa
