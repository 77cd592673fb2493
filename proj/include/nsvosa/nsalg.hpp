#pragma once

#include <map>
#include <string>

#include "nsvosa/grassmann.hpp"
#include "nsvosa/report.hpp"

namespace nsvosa {

// Basis symbol of the Neveu-Schwarz algebra. Indices are doubled: L(n) has index2 = 2n, G(r) has index2 = 2r.
struct NSSymbol {
  enum class Kind { L, G, D };
  Kind kind = Kind::D;
  int index2 = 0;

  static NSSymbol L(int n) { return {Kind::L, 2 * n}; }
  static NSSymbol G2(int r2);
  static NSSymbol d() { return {Kind::D, 0}; }
  Parity parity() const { return kind == Kind::G ? Parity::Odd : Parity::Even; }
  auto operator<=>(const NSSymbol&) const = default;
};

std::string to_string(const NSSymbol& s);
NSSymbol parse_ns_symbol(const std::string& text);

// Central-term coefficients; defaults are the true values, tests corrupt them for fault injection.
struct NSConstants {
  Rational virasoro{1, 12};
  Rational ns{1, 3};
};

class NSElement {
 public:
  NSElement() = default;
  explicit NSElement(NSSymbol s, const Grassmann& c = Grassmann(Rational(1)));

  const std::map<NSSymbol, Grassmann>& terms() const { return terms_; }
  void add(NSSymbol s, const Grassmann& c);
  bool is_zero() const { return terms_.empty(); }
  Grassmann coeff(NSSymbol s) const;

  NSElement operator+(const NSElement& o) const;
  NSElement operator-(const NSElement& o) const;
  NSElement operator-() const;
  friend NSElement operator*(const Grassmann& c, const NSElement& x);
  bool operator==(const NSElement& o) const { return terms_ == o.terms_; }

 private:
  std::map<NSSymbol, Grassmann> terms_;
};

std::string to_string(const NSElement& x);

NSElement ns_bracket(NSSymbol a, NSSymbol b, const NSConstants& k = {});
NSElement ns_bracket(const NSElement& a, const NSElement& b, const NSConstants& k = {});

// Parity closure, skew-symmetry and super Jacobi over all basis symbols with |index2| <= 2*bound, plus d.
ComparisonReport ns_check_axioms(int index_bound, const NSConstants& k = {});

}  // namespace nsvosa
