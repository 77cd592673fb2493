#include "nsvosa/nsalg.hpp"

#include <array>
#include <vector>

#include "nsvosa/error.hpp"

namespace nsvosa {

NSSymbol NSSymbol::G2(int r2) {
  if ((r2 & 1) == 0) throw Error(ErrorKind::BadSpec, "G index must be a half-integer");
  return {Kind::G, r2};
}

std::string to_string(const NSSymbol& s) {
  switch (s.kind) {
    case NSSymbol::Kind::L:
      return "L(" + std::to_string(s.index2 / 2) + ")";
    case NSSymbol::Kind::G:
      return "G(" + std::to_string(s.index2) + "/2)";
    case NSSymbol::Kind::D:
      break;
  }
  return "d";
}

NSSymbol parse_ns_symbol(const std::string& text) {
  if (text == "d") return NSSymbol::d();
  if (text.size() < 4 || (text[0] != 'L' && text[0] != 'G') || text[1] != '(' || text.back() != ')')
    throw Error(ErrorKind::ParseError, "bad basis symbol: " + text);
  Rational r = parse_rational(text.substr(2, text.size() - 3));
  Rational twice = 2 * r;
  if (twice.get_den() != 1) throw Error(ErrorKind::ParseError, "bad index: " + text);
  int r2 = static_cast<int>(twice.get_num().get_si());
  if (text[0] == 'L') {
    if (r2 & 1) throw Error(ErrorKind::ParseError, "L index must be an integer: " + text);
    return {NSSymbol::Kind::L, r2};
  }
  if (!(r2 & 1)) throw Error(ErrorKind::ParseError, "G index must be a half-integer: " + text);
  return {NSSymbol::Kind::G, r2};
}

NSElement::NSElement(NSSymbol s, const Grassmann& c) { add(s, c); }

void NSElement::add(NSSymbol s, const Grassmann& c) {
  if (nsvosa::is_zero(c)) return;
  auto [it, ins] = terms_.try_emplace(s, c);
  if (!ins) {
    it->second += c;
    if (nsvosa::is_zero(it->second)) terms_.erase(it);
  }
}

Grassmann NSElement::coeff(NSSymbol s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Grassmann(Rational(0)) : it->second;
}

NSElement NSElement::operator+(const NSElement& o) const {
  NSElement r = *this;
  for (const auto& [s, c] : o.terms_) r.add(s, c);
  return r;
}

NSElement NSElement::operator-() const {
  NSElement r;
  for (const auto& [s, c] : terms_) r.add(s, -c);
  return r;
}

NSElement NSElement::operator-(const NSElement& o) const { return *this + (-o); }

NSElement operator*(const Grassmann& c, const NSElement& x) {
  NSElement r;
  for (const auto& [s, v] : x.terms_) r.add(s, c * v);
  return r;
}

std::string to_string(const NSElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [s, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    std::string cs = to_string(c);
    if (cs != "1") out += (c.terms().size() > 1 ? "(" + cs + ")" : cs) + "*";
    out += to_string(s);
  }
  return out;
}

NSElement ns_bracket(NSSymbol a, NSSymbol b, const NSConstants& k) {
  using K = NSSymbol::Kind;
  NSElement r;
  if (a.kind == K::D || b.kind == K::D) return r;
  if (a.kind == K::L && b.kind == K::L) {
    long m = a.index2 / 2, n = b.index2 / 2;
    r.add(NSSymbol::L(static_cast<int>(m + n)), Grassmann(Rational(m - n)));
    if (m + n == 0) r.add(NSSymbol::d(), Grassmann(k.virasoro * Rational(m * m * m - m)));
    return r;
  }
  if (a.kind == K::G && b.kind == K::L) {
    // G(m+1/2) with m = (index2-1)/2
    Rational m(a.index2 - 1, 2), n(b.index2 / 2);
    r.add(NSSymbol::G2(a.index2 + b.index2), Grassmann(m - (n - 1) / 2));
    return r;
  }
  if (a.kind == K::L && b.kind == K::G) return -ns_bracket(b, a, k);
  long m = (a.index2 - 1) / 2, n = (b.index2 + 1) / 2;
  r.add(NSSymbol::L(static_cast<int>(m + n)), Grassmann(Rational(2)));
  if (m + n == 0) r.add(NSSymbol::d(), Grassmann(k.ns * Rational(m * m + m)));
  return r;
}

NSElement ns_bracket(const NSElement& a, const NSElement& b, const NSConstants& k) {
  NSElement r;
  for (const auto& [sa, ca] : a.terms()) {
    const bool xa = is_odd(sa.parity());
    for (const auto& [sb, cb] : b.terms()) {
      NSElement br = ns_bracket(sa, sb, k);
      if (br.is_zero()) continue;
      Grassmann c = ca * (xa ? cb.twisted() : cb);
      r = r + c * br;
    }
  }
  return r;
}

namespace {

std::vector<long> encode(std::initializer_list<NSSymbol> syms) {
  std::vector<long> e;
  for (const auto& s : syms) {
    e.push_back(static_cast<long>(s.kind));
    e.push_back(s.index2);
  }
  return e;
}

int sgn(bool neg) { return neg ? -1 : 1; }

}  // namespace

ComparisonReport ns_check_axioms(int index_bound, const NSConstants& k) {
  if (index_bound < 1) throw Error(ErrorKind::BadSpec, "index bound must be at least 1");
  std::vector<NSSymbol> basis;
  for (int i2 = -2 * index_bound; i2 <= 2 * index_bound; ++i2)
    basis.push_back(i2 & 1 ? NSSymbol{NSSymbol::Kind::G, i2} : NSSymbol{NSSymbol::Kind::L, i2});
  basis.push_back(NSSymbol::d());
  const long nb = static_cast<long>(basis.size());

  ComparisonReport total = ComparisonReport::pass(0);
  std::vector<ComparisonReport> per(nb, ComparisonReport::pass(0));

#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nb; ++i) {
    ComparisonReport& rep = per[i];
    const NSSymbol x = basis[i];
    const bool px = is_odd(x.parity());
    auto fail = [&](std::vector<long> e, const NSElement& lhs, const NSElement& rhs, const std::string& what) {
      rep.status = Status::Fail;
      if (rep.detail.empty()) rep.detail = what;
      if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back({std::move(e), to_string(lhs), to_string(rhs)});
    };
    for (const NSSymbol& y : basis) {
      const bool py = is_odd(y.parity());
      NSElement xy = ns_bracket(x, y, k);
      ++rep.checked;
      for (const auto& [s, c] : xy.terms())
        if (s.parity() != x.parity() + y.parity())
          fail(encode({x, y}), xy, NSElement(), "parity closure fails for " + to_string(x) + ", " + to_string(y));
      NSElement skew = Grassmann(Rational(-sgn(px && py))) * ns_bracket(y, x, k);
      if (!(xy == skew)) fail(encode({x, y}), xy, skew, "skew-symmetry fails for " + to_string(x) + ", " + to_string(y));
      for (const NSSymbol& z : basis) {
        const bool pz = is_odd(z.parity());
        ++rep.checked;
        NSElement j = Grassmann(Rational(sgn(px && pz))) * ns_bracket(xy, NSElement(z), k) +
                      Grassmann(Rational(sgn(py && px))) * ns_bracket(ns_bracket(NSElement(y), NSElement(z), k), NSElement(x), k) +
                      Grassmann(Rational(sgn(pz && py))) * ns_bracket(ns_bracket(NSElement(z), NSElement(x), k), NSElement(y), k);
        if (!j.is_zero())
          fail(encode({x, y, z}), j, NSElement(),
               "Jacobi fails for " + to_string(x) + ", " + to_string(y) + ", " + to_string(z));
      }
    }
  }
  for (auto& r : per) total.merge(r);
  return total;
}

}  // namespace nsvosa
