#pragma once

#include <map>
#include <string>

#include "nsvosa/grassmann.hpp"

namespace nsvosa {

// Basis vector of a graded module: index into the owner's basis plus its grading, carried along so
// vectors know their own parity without a back-reference.
struct Ket {
  int index = 0;
  int weight2 = 0;
  Parity parity = Parity::Even;
  bool operator<(const Ket& o) const { return index < o.index; }
  bool operator==(const Ket& o) const { return index == o.index; }
};

// Finite Grassmann-coefficient combination sum c_i b_i, written with coefficients on the left.
class ModuleVector {
 public:
  ModuleVector() = default;
  explicit ModuleVector(const Ket& k, const Grassmann& c = Grassmann(Rational(1)));

  const std::map<Ket, Grassmann>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Grassmann coeff(int index) const;
  void add(const Ket& k, const Grassmann& c);

  ModuleVector even_part() const;
  ModuleVector odd_part() const;
  // Drops components of weight above max_weight2; returns true if anything was dropped.
  bool truncate_above(int max_weight2);
  ModuleVector projected(int max_weight2) const;

  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  ModuleVector operator-() const;
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Grassmann& c, const ModuleVector& v);
  friend bool operator==(const ModuleVector& a, const ModuleVector& b);

 private:
  std::map<Ket, Grassmann> terms_;
};

inline bool is_zero(const ModuleVector& v) { return v.is_zero(); }
inline ModuleVector even_part(const ModuleVector& v) { return v.even_part(); }
inline ModuleVector odd_part(const ModuleVector& v) { return v.odd_part(); }
// Basis vectors print as #index; callers that know the labels substitute them.
std::string to_string(const ModuleVector& v);

}  // namespace nsvosa
