#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nsvosa/delta.hpp"
#include "nsvosa/report.hpp"
#include "nsvosa/vosa.hpp"

namespace nsvosa {

// sum a_i x_i + sum a_ij phi_i phi_j with even coefficients.
struct LinearForm {
  std::vector<std::pair<std::string, Grassmann>> even;
  std::vector<std::tuple<std::string, std::string, Grassmann>> nil;

  static LinearForm var(const std::string& x);
  // x_a + sb*x_b + nil*phi_i phi_j
  static LinearForm make(const std::string& a, const std::string& b, int sb, int nil, const std::string& phi_i,
                         const std::string& phi_j);

  // Merges repeated variables, drops zero coefficients and sorts.
  LinearForm canonical() const;
  Series series() const;
  std::string to_string() const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// numerator / prod form^power; the numerator is a polynomial (no negative exponents).
struct RationalSuperFn {
  Series numerator;
  std::vector<std::pair<LinearForm, int>> denominator;

  std::string to_string() const;
};

std::string polynomial_string(const Series& p);

// Expands each inverted form in positive powers of every variable but its lead, the first
// variable of `order` whose coefficient has nonzero body.
Series iota_expand(const RationalSuperFn& f, const std::vector<std::string>& order, const WindowConfig& window);

// Replaces the even variable `var` by a linear form, in the numerator and every factor.
RationalSuperFn substitute(const RationalSuperFn& f, const std::string& var, const LinearForm& by);

// Compares f and g by cross-multiplying their numerators with the other's denominator.
ComparisonReport compare_functions(const RationalSuperFn& f, const RationalSuperFn& g);

struct ReconstructSpec {
  std::array<LinearForm, 3> forms;  // raised to r, s, t
  std::vector<std::string> order;   // expansion the series is expected to come from
  std::array<int, 3> bounds{3, 3, 3};
  int margin = 2;

  // x1, x2, x1 - x2 - phi1 phi2 expanded in positive powers of x2.
  static ReconstructSpec products(std::array<int, 3> bounds = {3, 3, 3});
  // x0, x2, x0 + x2 + phi1 phi2 expanded in positive powers of x0.
  static ReconstructSpec iterates(std::array<int, 3> bounds = {3, 3, 3});
};

struct Reconstruction {
  RationalSuperFn f;
  int r = 0, s = 0, t = 0;
  std::size_t checked = 0;
};

// Least (t, r, s) in lexicographic order whose denominator clears the series to a polynomial
// that expands back to the series.
Reconstruction reconstruct(const Series& series, const ReconstructSpec& spec);
Reconstruction reconstruct(const Series& series, std::array<int, 3> bounds);

const std::vector<std::string>& duality_kinds();

struct DualityResult {
  ComparisonReport report;
  std::optional<Reconstruction> f;  // products
  std::optional<Reconstruction> h;  // iterates
  int sign = 1;
};

DualityResult check_duality(const VosaData& V, const std::string& kind, const ModuleVector& u, const ModuleVector& v,
                            const ModuleVector& w, const DualVector& vp, const CheckConfig& cfg,
                            std::array<int, 3> bounds = {3, 3, 3});

}  // namespace nsvosa
