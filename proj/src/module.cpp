#include "nsvosa/module.hpp"

namespace nsvosa {

ModuleVector::ModuleVector(const Ket& k, const Grassmann& c) { add(k, c); }

Grassmann ModuleVector::coeff(int index) const {
  auto it = terms_.find(Ket{index});
  return it == terms_.end() ? Grassmann(Rational(0)) : it->second;
}

void ModuleVector::add(const Ket& k, const Grassmann& c) {
  if (c.is_zero()) return;
  auto [it, ins] = terms_.try_emplace(k, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ModuleVector ModuleVector::even_part() const {
  ModuleVector r;
  for (const auto& [k, c] : terms_) r.add(k, is_odd(k.parity) ? c.odd_part() : c.even_part());
  return r;
}

ModuleVector ModuleVector::odd_part() const {
  ModuleVector r;
  for (const auto& [k, c] : terms_) r.add(k, is_odd(k.parity) ? c.even_part() : c.odd_part());
  return r;
}

bool ModuleVector::truncate_above(int max_weight2) {
  bool dropped = false;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.weight2 > max_weight2) {
      it = terms_.erase(it);
      dropped = true;
    } else {
      ++it;
    }
  }
  return dropped;
}

ModuleVector ModuleVector::projected(int max_weight2) const {
  ModuleVector r = *this;
  r.truncate_above(max_weight2);
  return r;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ModuleVector ModuleVector::operator-() const {
  ModuleVector r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

ModuleVector operator*(const Grassmann& c, const ModuleVector& v) {
  ModuleVector r;
  if (c.is_zero()) return r;
  for (const auto& [k, x] : v.terms_) r.add(k, c * x);
  return r;
}

bool operator==(const ModuleVector& a, const ModuleVector& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end(); ++i, ++j)
    if (i->first.index != j->first.index || !(i->second == j->second)) return false;
  return true;
}

std::string to_string(const ModuleVector& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : v.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*#" + std::to_string(k.index);
  }
  return out;
}

}  // namespace nsvosa
