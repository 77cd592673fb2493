#pragma once

#include <random>

#include "nsvosa/grassmann.hpp"
#include "nsvosa/superseries.hpp"

namespace gen {

using namespace nsvosa;

inline Rational small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Grassmann element(std::mt19937& rng, int L, int max_terms = 4) {
  std::uniform_int_distribution<int> count(0, max_terms);
  std::uniform_int_distribution<std::uint32_t> mask(0, (1u << L) - 1);
  Grassmann g = Grassmann::zero(L);
  for (int i = count(rng); i > 0; --i) g.add_term(mask(rng), small_rational(rng));
  return g;
}

inline Grassmann homogeneous(std::mt19937& rng, int L, Parity p) {
  Grassmann g = element(rng, L);
  return is_odd(p) ? g.odd_part() : g.even_part();
}

// Random windowed series in the given variables: exact box [lo, hi] in each even variable.
inline SuperSeries<Grassmann> series(std::mt19937& rng, const std::vector<std::string>& even,
                                     const std::vector<std::string>& odd, int lo, int hi, int L = 2,
                                     int terms = 10) {
  SuperSeries<Grassmann> s(even, odd);
  std::uniform_int_distribution<int> ex(lo, hi);
  std::uniform_int_distribution<std::uint32_t> om(0, (1u << odd.size()) - 1);
  for (int i = 0; i < terms; ++i) {
    Mono m;
    for (std::size_t v = 0; v < even.size(); ++v) m.e[v] = ex(rng);
    m.odd = om(rng);
    s.add(m, element(rng, L, 2));
  }
  for (const auto& n : s.even_vars()) s.set_window(n, VarWindow{Interval::all(), Interval{lo, hi}});
  return s;
}

}  // namespace gen
