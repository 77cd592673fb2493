#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

namespace nsvosa {

// Integer interval with saturating infinite endpoints. lo > hi means empty.
struct Interval {
  static constexpr std::int64_t kInf = std::int64_t(1) << 50;

  std::int64_t lo = -kInf;
  std::int64_t hi = kInf;

  static Interval all() { return {}; }
  static Interval empty() { return {1, 0}; }
  static Interval point(std::int64_t v) { return {v, v}; }
  static Interval at_least(std::int64_t v) { return {v, kInf}; }
  static Interval at_most(std::int64_t v) { return {-kInf, v}; }

  bool is_empty() const { return lo > hi; }
  bool lo_finite() const { return lo > -kInf; }
  bool hi_finite() const { return hi < kInf; }
  bool bounded() const { return lo_finite() && hi_finite(); }
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return o.is_empty() || (lo <= o.lo && o.hi <= hi); }
  std::int64_t size() const { return is_empty() ? 0 : hi - lo + 1; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::int64_t sat(std::int64_t v) {
  return std::clamp(v, -Interval::kInf, Interval::kInf);
}
inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a <= -Interval::kInf || b <= -Interval::kInf) {
    if (a >= Interval::kInf || b >= Interval::kInf) return 0;
    return -Interval::kInf;
  }
  if (a >= Interval::kInf || b >= Interval::kInf) return Interval::kInf;
  return sat(a + b);
}
inline std::int64_t sat_neg(std::int64_t a) { return -a; }

inline Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}
inline Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}
inline Interval minkowski(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return {sat_add(a.lo, b.lo), sat_add(a.hi, b.hi)};
}
inline Interval shifted(const Interval& a, std::int64_t d) {
  if (a.is_empty()) return a;
  return {sat_add(a.lo, d), sat_add(a.hi, d)};
}
inline Interval negated(const Interval& a) {
  if (a.is_empty()) return a;
  return {-a.hi, -a.lo};
}

std::string to_string(const Interval& i);

// Per even variable: where nonzero coefficients may live, and where stored coefficients are correct.
struct VarWindow {
  Interval support;
  Interval exact;
  friend bool operator==(const VarWindow&, const VarWindow&) = default;
};

}  // namespace nsvosa
