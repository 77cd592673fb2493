#pragma once

#include <string>
#include <vector>

#include "nsvosa/delta.hpp"
#include "nsvosa/vosa.hpp"

namespace nsvosa::detail {

inline std::vector<int> sample(const VosaData& V, int max_weight2) {
  std::vector<int> r;
  for (int i = 0; i < V.size(); ++i)
    if (V.basis[i].weight2 <= max_weight2) r.push_back(i);
  return r;
}

inline int sign_of(bool negative) { return negative ? -1 : 1; }

inline Grassmann scalar(const Rational& q) { return Grassmann(q); }

// Records one vector comparison.
inline void expect_eq(ComparisonReport& rep, const VosaData& V, const ModuleVector& lhs, const ModuleVector& rhs,
                      std::vector<long> at, const std::string& what) {
  ++rep.checked;
  if (lhs == rhs) return;
  if (rep.status != Status::Fail) rep.detail = what;
  rep.status = Status::Fail;
  if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back({std::move(at), V.render(lhs), V.render(rhs)});
}

// Starts a report that passes unless something is recorded.
inline ComparisonReport open_report() { return ComparisonReport::pass(0); }

inline ComparisonReport finish(ComparisonReport rep) {
  if (rep.status == Status::Pass && rep.checked == 0) return ComparisonReport::inconclusive("nothing in range to check");
  return rep;
}

inline std::map<std::string, Interval> box(std::initializer_list<std::string> vars, Interval iv) {
  std::map<std::string, Interval> r;
  for (const auto& v : vars) r[v] = iv;
  return r;
}

// Left multiplication by a scalar monomial.
inline VecSeries times(const Series& m, const VecSeries& s) { return ss_mul(m, s, MulOptions{{}, false}); }

inline std::string label(const VosaData& V, const ModuleVector& v) { return V.render(v); }

}  // namespace nsvosa::detail

namespace nsvosa::detail {
ComparisonReport jacobi_sweep(const VosaData& V, const CheckConfig& cfg);
ComparisonReport supercommutator_sweep(const VosaData& V, const CheckConfig& cfg);

// Y(u,(x1,phi1))Y(v,(x2,phi2))w, the swapped product, and the iterate in (x0, x2).
struct Correlators {
  VosaData W;
  int Wmid = 0;
  VecSeries P12, P21, R;
  std::string note;
};
Correlators correlators(const VosaData& V, const ModuleVector& u, const ModuleVector& v, const ModuleVector& w,
                        const CheckConfig& cfg);
Series pair_series(const VecSeries& s, const DualVector& d);
}  // namespace nsvosa::detail
