#include "nsvosa/grassmann.hpp"

#include <algorithm>
#include <bit>

#include "nsvosa/error.hpp"

namespace nsvosa {

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(j >= 31 ? 0u : (a >> (j + 1)));
  }
  return (swaps & 1) ? -1 : 1;
}

Grassmann Grassmann::zero(int generators) {
  if (generators < 0 || generators > kMaxGenerators)
    throw Error(ErrorKind::BadSpec, "generator count out of range");
  Grassmann g;
  g.L_ = generators;
  return g;
}

Grassmann::Grassmann(const Rational& scalar, int generators) {
  *this = zero(generators);
  add_term(0u, scalar);
}

Grassmann Grassmann::generator(int i, int generators) {
  if (i < 1 || i > generators) throw Error(ErrorKind::BadSpec, "generator index out of range");
  return monomial(1u << (i - 1), Rational(1), generators);
}

Grassmann Grassmann::monomial(std::uint32_t mask, const Rational& c, int generators) {
  Grassmann g = zero(generators);
  if (generators < 32 && (mask >> generators) != 0)
    throw Error(ErrorKind::BadSpec, "monomial uses generators beyond L");
  g.add_term(mask, c);
  return g;
}

Rational Grassmann::body() const { return coeff(0); }

Rational Grassmann::coeff(std::uint32_t mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, std::uint32_t m) { return t.first < m; });
  if (it != terms_.end() && it->first == mask) return it->second;
  return 0;
}

bool Grassmann::homogeneous() const {
  for (const auto& t : terms_)
    if ((std::popcount(t.first) & 1) != (std::popcount(terms_.front().first) & 1)) return false;
  return true;
}

Parity Grassmann::parity(Parity zero_default) const {
  if (terms_.empty()) return zero_default;
  if (!homogeneous()) throw Error(ErrorKind::NonHomogeneous, "mixed parity element " + to_string());
  return parity_of(std::popcount(terms_.front().first));
}

Grassmann Grassmann::even_part() const {
  Grassmann r = Grassmann::zero(L_);
  for (const auto& t : terms_)
    if (!(std::popcount(t.first) & 1)) r.terms_.push_back(t);
  return r;
}

Grassmann Grassmann::odd_part() const {
  Grassmann r = Grassmann::zero(L_);
  for (const auto& t : terms_)
    if (std::popcount(t.first) & 1) r.terms_.push_back(t);
  return r;
}

Grassmann Grassmann::twisted() const {
  Grassmann r = *this;
  for (auto& t : r.terms_)
    if (std::popcount(t.first) & 1) t.second = -t.second;
  return r;
}

Grassmann Grassmann::embed(int generators) const {
  if (generators < L_) {
    for (const auto& t : terms_)
      if (generators >= 32 || (t.first >> generators) != 0)
        throw Error(ErrorKind::ShrinkNotAllowed, to_string() + " uses generators above " +
                                                     std::to_string(generators));
  }
  Grassmann r = *this;
  r.L_ = generators;
  return r;
}

Grassmann Grassmann::inverse() const {
  Rational b = body();
  if (b == 0) throw Error(ErrorKind::NotInSPrime, "element with zero body is not invertible");
  Grassmann nil = *this;
  nil.add_term(0, -b);
  nil *= Rational(-1) / b;
  Grassmann sum(Rational(1), L_), power(Rational(1), L_);
  while (true) {
    power = power * nil;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * (Rational(1) / b);
}

void Grassmann::add_term(std::uint32_t mask, const Rational& c0) {
  if (c0 == 0) return;
  Rational c = c0;
  c.canonicalize();
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, std::uint32_t m) { return t.first < m; });
  if (it != terms_.end() && it->first == mask) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term(mask, c));
  }
}

Grassmann& Grassmann::operator+=(const Grassmann& o) {
  L_ = std::max(L_, o.L_);
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.cbegin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Grassmann& Grassmann::operator-=(const Grassmann& o) { return *this += -o; }

Grassmann& Grassmann::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= q;
  return *this;
}

Grassmann Grassmann::operator-() const {
  Grassmann r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Grassmann operator*(const Grassmann& a, const Grassmann& b) {
  Grassmann r = Grassmann::zero(std::max(a.L_, b.L_));
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && a.terms_[0].first == 0) {
    r.terms_ = b.terms_;
    return r *= a.terms_[0].second;
  }
  if (b.terms_.size() == 1 && b.terms_[0].first == 0) {
    r.terms_ = a.terms_;
    return r *= b.terms_[0].second;
  }
  std::vector<Grassmann::Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      int s = wedge_sign(ta.first, tb.first);
      if (s == 0) continue;
      Rational c = ta.second * tb.second;
      if (s < 0) c = -c;
      raw.emplace_back(ta.first | tb.first, std::move(c));
    }
  std::sort(raw.begin(), raw.end(),
            [](const Grassmann::Term& x, const Grassmann::Term& y) { return x.first < y.first; });
  for (auto& t : raw) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
      if (r.terms_.back().second == 0) r.terms_.pop_back();
    } else {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

std::string Grassmann::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [mask, c] : terms_) {
    if (!out.empty()) out += "+";
    out += nsvosa::to_string(c);
    if (mask == 0) continue;
    out += "*";
    for (int i = 0; i < 32; ++i)
      if (mask & (1u << i)) out += "e" + std::to_string(i + 1);
  }
  return out;
}

Grassmann Grassmann::parse(std::string_view text, int generators) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty Grassmann element");
  Grassmann g = zero(generators);
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('+', pos);
    if (next == std::string::npos) next = s.size();
    std::string term = s.substr(pos, next - pos);
    if (term.empty()) throw Error(ErrorKind::ParseError, "empty term in '" + s + "'");
    Rational c(1);
    std::string mono;
    auto star = term.find('*');
    auto epos = term.find('e');
    if (star != std::string::npos) {
      c = parse_rational(term.substr(0, star));
      mono = term.substr(star + 1);
    } else if (epos != std::string::npos) {
      std::string head = term.substr(0, epos);
      if (head == "-") c = -1;
      else if (!head.empty()) throw Error(ErrorKind::ParseError, "bad term '" + term + "'");
      mono = term.substr(epos);
    } else {
      c = parse_rational(term);
    }
    std::uint32_t mask = 0;
    int sign = 1;
    std::size_t i = 0;
    while (i < mono.size()) {
      if (mono[i] != 'e') throw Error(ErrorKind::ParseError, "bad monomial '" + mono + "'");
      std::size_t j = i + 1;
      while (j < mono.size() && mono[j] >= '0' && mono[j] <= '9') ++j;
      if (j == i + 1) throw Error(ErrorKind::ParseError, "bad monomial '" + mono + "'");
      int gen = std::stoi(mono.substr(i + 1, j - i - 1));
      if (gen < 1 || gen > kMaxGenerators) throw Error(ErrorKind::ParseError, "generator out of range");
      std::uint32_t bit = 1u << (gen - 1);
      int ws = wedge_sign(mask, bit);
      if (ws == 0) {
        sign = 0;
      } else {
        sign *= ws;
        mask |= bit;
      }
      g.L_ = std::max(g.L_, gen);
      i = j;
    }
    if (sign != 0) g.add_term(mask, sign * c);
    pos = next + 1;
  }
  return g;
}

}  // namespace nsvosa
