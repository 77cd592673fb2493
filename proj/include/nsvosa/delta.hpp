#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsvosa/superseries.hpp"

namespace nsvosa {

using Series = SuperSeries<Grassmann>;

struct SignedVar {
  int sign = 1;
  std::string var;
};

// delta((sign_l*lead + sign_t*tail + nil) / (sign_d*denom)), with (lead + tail)^n expanded in
// positive powers of tail. tail and denominator are optional; nil is sign * phi_i phi_j.
struct DeltaSpec {
  SignedVar lead;
  std::optional<SignedVar> tail;
  std::optional<SignedVar> denom;
  struct Nil {
    int sign = 1;
    std::string phi_i, phi_j;
  };
  std::optional<Nil> nil;
  int derivative = 0;  // 0 for delta, 1 for delta'
};

// Symmetric exact window [-N, N] in every even variable unless overridden per variable.
struct WindowConfig {
  long N = 8;
  std::map<std::string, Interval> per_var;
  Interval for_var(const std::string& v) const {
    auto it = per_var.find(v);
    return it != per_var.end() ? it->second : Interval{-N, N};
  }
};

Series build_delta(const DeltaSpec& spec, const WindowConfig& window);

// Monomial c * x^k... as an exact series.
Series monomial(const std::vector<std::pair<std::string, long>>& even, const std::vector<std::string>& odd,
                const Grassmann& c);
// Polynomial from terms; exact everywhere, support fitted to its terms.
Series polynomial(const std::vector<std::string>& even, const std::vector<std::string>& odd,
                  const std::vector<std::pair<std::vector<std::pair<std::string, long>>, std::pair<std::vector<std::string>, Grassmann>>>& terms);

const std::vector<std::string>& delta_identity_ids();

struct DeltaCheckOptions {
  long N = 8;
  bool fault = false;            // perturb one side with + x0^3 (or the nearest analogue)
  const Series* operand = nullptr;  // overrides the default X where the identity takes one
  int grassmann_generators = 2;
};

ComparisonReport check_delta_identity(const std::string& id, const DeltaCheckOptions& opt);

// Default operands for the multiplication principle and the substitution identity.
Series default_mult_operand(bool with_phi, int L);
Series default_subst_operand(long N, int L);

// Compares D xt against pt * D pt with D = d/dphi + phi d/dx.
ComparisonReport check_superconformal(const Series& xt, const Series& pt, const std::string& x, const std::string& phi);

}  // namespace nsvosa
