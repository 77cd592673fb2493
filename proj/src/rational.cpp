#include "nsvosa/rational.hpp"

#include "nsvosa/error.hpp"

namespace nsvosa {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::ShrinkNotAllowed: return "ShrinkNotAllowed";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::IllFormedShift: return "IllFormedShift";
    case ErrorKind::WindowMiss: return "WindowMiss";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::UnknownIdentity: return "UnknownIdentity";
    case ErrorKind::TableIncomplete: return "TableIncomplete";
    case ErrorKind::WrongFlavor: return "WrongFlavor";
    case ErrorKind::UnknownAxiom: return "UnknownAxiom";
    case ErrorKind::UnknownConsequence: return "UnknownConsequence";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotInSPrime: return "NotInSPrime";
    case ErrorKind::NoRationalForm: return "NoRationalForm";
    case ErrorKind::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorKind::GradingViolation: return "GradingViolation";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  std::string t(s);
  if (t[0] == '+') t.erase(0, 1);
  auto slash = t.find('/');
  auto valid_int = [](const std::string& x) {
    std::size_t i = (!x.empty() && x[0] == '-') ? 1 : 0;
    if (i >= x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(t)) throw Error(ErrorKind::ParseError, "bad rational '" + t + "'");
    return Rational(Integer(t));
  }
  std::string n = t.substr(0, slash), d = t.substr(slash + 1);
  if (!valid_int(n) || !valid_int(d) || d[0] == '-')
    throw Error(ErrorKind::ParseError, "bad rational '" + t + "'");
  Integer den(d);
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rational q(Integer(n), den);
  q.canonicalize();
  return q;
}

Integer binomial(long n, long k) {
  if (k < 0) return 0;
  Integer num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

}  // namespace nsvosa
