#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsvosa/rational.hpp"

namespace nsvosa {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}
inline bool is_odd(Parity p) { return p == Parity::Odd; }
inline Parity parity_of(int n) { return (n & 1) ? Parity::Odd : Parity::Even; }

// Sign for reordering the generators of mask b past those of mask a in the word a*b.
// Returns 0 when the masks overlap.
int wedge_sign(std::uint32_t a, std::uint32_t b);

// Element of the Grassmann algebra on L generators e1..eL over Q. Generator i
// is bit i-1 of a term mask; terms are kept sorted by mask with no zero coefficients.
class Grassmann {
 public:
  using Term = std::pair<std::uint32_t, Rational>;
  static constexpr int kMaxGenerators = 30;

  Grassmann() = default;
  Grassmann(const Rational& scalar, int generators = 0);

  static Grassmann zero(int generators);

  static Grassmann generator(int i, int generators);
  static Grassmann monomial(std::uint32_t mask, const Rational& c, int generators);

  int generators() const { return L_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  Rational body() const;
  Rational coeff(std::uint32_t mask) const;
  // Parity of a homogeneous element; zero reports `zero_default`.
  Parity parity(Parity zero_default = Parity::Even) const;
  bool homogeneous() const;
  Grassmann even_part() const;
  Grassmann odd_part() const;
  // Flips the sign of the odd part: the sign picked up when an odd symbol passes this element.
  Grassmann twisted() const;
  Grassmann embed(int generators) const;
  bool invertible() const { return body() != 0; }
  Grassmann inverse() const;

  Grassmann& operator+=(const Grassmann& o);
  Grassmann& operator-=(const Grassmann& o);
  Grassmann& operator*=(const Rational& q);
  Grassmann operator-() const;
  friend Grassmann operator+(Grassmann a, const Grassmann& b) { return a += b; }
  friend Grassmann operator-(Grassmann a, const Grassmann& b) { return a -= b; }
  friend Grassmann operator*(const Grassmann& a, const Grassmann& b);
  friend Grassmann operator*(Grassmann a, const Rational& q) { return a *= q; }
  friend Grassmann operator*(const Rational& q, Grassmann a) { return a *= q; }
  friend bool operator==(const Grassmann& a, const Grassmann& b) { return a.terms_ == b.terms_; }

  // Accumulates c*m into this element.
  void add_term(std::uint32_t mask, const Rational& c);

  std::string to_string() const;
  static Grassmann parse(std::string_view text, int generators = 0);

 private:
  int L_ = 0;
  std::vector<Term> terms_;
};

inline Rational body(const Grassmann& a) { return a.body(); }
inline Grassmann embed(const Grassmann& a, int generators) { return a.embed(generators); }
inline bool is_zero(const Grassmann& a) { return a.is_zero(); }
inline Grassmann even_part(const Grassmann& a) { return a.even_part(); }
inline Grassmann odd_part(const Grassmann& a) { return a.odd_part(); }
inline std::string to_string(const Grassmann& a) { return a.to_string(); }

}  // namespace nsvosa
