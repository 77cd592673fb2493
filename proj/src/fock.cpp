#include <algorithm>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "nsvosa/error.hpp"
#include "nsvosa/freefield.hpp"
#include "nsvosa/rational.hpp"

namespace nsvosa {

int FockState::weight2() const {
  int w = 0;
  for (int n : bosons) w += 2 * n;
  for (int r : fermions2) w += r;
  return w;
}

std::string fock_label(const FockState& s) {
  if (s.bosons.empty() && s.fermions2.empty()) return "vac";
  std::string out;
  for (int n : s.bosons) out += "a(-" + std::to_string(n) + ")";
  for (int r : s.fermions2) out += "p(-" + std::to_string(r) + "/2)";
  return out;
}

FockState parse_fock_label(const std::string& label) {
  FockState s;
  if (label == "vac") return s;
  std::size_t i = 0;
  auto bad = [&] { return Error(ErrorKind::ParseError, "bad Fock label: " + label); };
  while (i < label.size()) {
    if (i + 3 > label.size() || (label[i] != 'a' && label[i] != 'p') || label[i + 1] != '(' || label[i + 2] != '-')
      throw bad();
    const char kind = label[i];
    std::size_t close = label.find(')', i);
    if (close == std::string::npos) throw bad();
    std::string num = label.substr(i + 3, close - i - 3);
    try {
      if (kind == 'a') {
        s.bosons.push_back(std::stoi(num));
      } else {
        if (num.size() < 3 || num.substr(num.size() - 2) != "/2") throw bad();
        s.fermions2.push_back(std::stoi(num.substr(0, num.size() - 2)));
      }
    } catch (const std::logic_error&) {
      throw bad();
    }
    i = close + 1;
  }
  for (int n : s.bosons)
    if (n < 1) throw bad();
  for (int r : s.fermions2)
    if (r < 1 || !(r & 1)) throw bad();
  if (!std::is_sorted(s.bosons.rbegin(), s.bosons.rend())) throw bad();
  for (std::size_t j = 1; j < s.fermions2.size(); ++j)
    if (s.fermions2[j] >= s.fermions2[j - 1]) throw bad();
  return s;
}

namespace {

struct Key {
  int u, p, z;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<int>()(k.u);
    h = h * 1000003u ^ std::hash<int>()(k.p);
    return h * 1000003u ^ std::hash<int>()(k.z);
  }
};

void add_to(SparseVec& dst, int i, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = dst.try_emplace(i, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) dst.erase(it);
  }
}

void axpy(SparseVec& dst, const Rational& a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [i, c] : x) add_to(dst, i, a * c);
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

// Strict partitions of n (doubled units) into odd parts below `below`.
void odd_strict(int n, int below, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  int start = std::min(n, below - 1);
  if (!(start & 1)) --start;
  for (int r = start; r >= 1; r -= 2) {
    cur.push_back(r);
    odd_strict(n - r, r, cur, out);
    cur.pop_back();
  }
}

}  // namespace

struct FockSpace::Impl {
  mutable std::shared_mutex states_m;
  std::vector<FockState> states;
  std::vector<int> w2;
  std::map<FockState, int> index;
  std::vector<int> level_end;  // level_end[w] = number of states of weight2 <= w

  mutable std::shared_mutex memo_m;
  std::unordered_map<Key, SparseVec, KeyHash> memo;

  void ensure(int weight2) {
    {
      std::shared_lock lk(states_m);
      if (static_cast<int>(level_end.size()) > weight2) return;
    }
    std::unique_lock lk(states_m);
    while (static_cast<int>(level_end.size()) <= weight2) {
      const int w = static_cast<int>(level_end.size());
      for (int a = w / 2; a >= 0; --a) {
        std::vector<std::vector<int>> bs, fs;
        std::vector<int> cur;
        partitions(a, a, cur, bs);
        cur.clear();
        odd_strict(w - 2 * a, w - 2 * a + 2, cur, fs);
        for (const auto& b : bs)
          for (const auto& f : fs) {
            FockState s{b, f};
            index.emplace(s, static_cast<int>(states.size()));
            states.push_back(s);
            w2.push_back(w);
          }
      }
      level_end.push_back(static_cast<int>(states.size()));
    }
  }
};

FockSpace::FockSpace() : impl_(std::make_unique<Impl>()) { impl_->ensure(0); }

FockSpace& FockSpace::instance() {
  static FockSpace space;
  return space;
}

void FockSpace::ensure(int weight2) { impl_->ensure(weight2); }

int FockSpace::count_upto(int weight2) {
  if (weight2 < 0) return 0;
  ensure(weight2);
  std::shared_lock lk(impl_->states_m);
  return impl_->level_end[weight2];
}

FockState FockSpace::state(int index) const {
  std::shared_lock lk(impl_->states_m);
  return impl_->states.at(index);
}

int FockSpace::weight2(int index) const {
  std::shared_lock lk(impl_->states_m);
  return impl_->w2.at(index);
}

Parity FockSpace::parity(int index) const { return state(index).parity(); }

int FockSpace::index_of(const FockState& s) {
  {
    std::shared_lock lk(impl_->states_m);
    auto it = impl_->index.find(s);
    if (it != impl_->index.end()) return it->second;
  }
  ensure(s.weight2());
  std::shared_lock lk(impl_->states_m);
  return impl_->index.at(s);
}

SparseVec FockSpace::alpha(int n, int index) {
  SparseVec r;
  if (n == 0) return r;
  FockState s = state(index);
  if (n < 0) {
    s.bosons.insert(std::upper_bound(s.bosons.begin(), s.bosons.end(), -n, std::greater<int>()), -n);
    r.emplace(index_of(s), Rational(1));
    return r;
  }
  auto it = std::find(s.bosons.begin(), s.bosons.end(), n);
  if (it == s.bosons.end()) return r;
  const long k = std::count(s.bosons.begin(), s.bosons.end(), n);
  s.bosons.erase(it);
  r.emplace(index_of(s), Rational(n * k));
  return r;
}

SparseVec FockSpace::psi(int r2, int index) {
  if (!(r2 & 1)) throw Error(ErrorKind::BadSpec, "fermion mode must be a half-integer");
  SparseVec r;
  FockState s = state(index);
  auto& f = s.fermions2;
  if (r2 < 0) {
    const int c = -r2;
    if (std::find(f.begin(), f.end(), c) != f.end()) return r;
    auto pos = std::upper_bound(f.begin(), f.end(), c, std::greater<int>());
    const long before = pos - f.begin();
    f.insert(pos, c);
    r.emplace(index_of(s), Rational(before & 1 ? -1 : 1));
    return r;
  }
  auto it = std::find(f.begin(), f.end(), r2);
  if (it == f.end()) return r;
  const long j = it - f.begin();
  f.erase(it);
  r.emplace(index_of(s), Rational(j & 1 ? -1 : 1));
  return r;
}

SparseVec FockSpace::alpha(int n, const SparseVec& v) {
  SparseVec r;
  for (const auto& [i, c] : v) axpy(r, c, alpha(n, i));
  return r;
}

SparseVec FockSpace::psi(int r2, const SparseVec& v) {
  SparseVec r;
  for (const auto& [i, c] : v) axpy(r, c, psi(r2, i));
  return r;
}

SparseVec FockSpace::G(int r2, const SparseVec& v) {
  SparseVec r;
  for (const auto& [i, c] : v) {
    const FockState s = state(i);
    std::vector<int> ns(s.bosons.begin(), s.bosons.end());
    for (int f : s.fermions2) ns.push_back((r2 - f) / 2);
    for (int n = r2 / 2; n < 0; ++n)
      if (2 * n > r2) ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    SparseVec one{{i, c}};
    for (int n : ns) {
      if (n == 0) continue;
      axpy(r, Rational(1), alpha(n, psi(r2 - 2 * n, one)));
    }
  }
  return r;
}

SparseVec FockSpace::L(int n, const SparseVec& v) {
  SparseVec r = G(1, G(2 * n - 1, v));
  axpy(r, Rational(1), G(2 * n - 1, G(1, v)));
  for (auto& [i, c] : r) c /= 2;
  return r;
}

SparseVec FockSpace::mode(int u, int p, int z) {
  const int wu = weight2(u), wz = weight2(z);
  const int wr = wu - 2 * p - 2 + wz;
  if (wr < 0) return {};
  ensure(wr);
  const Key key{u, p, z};
  {
    std::shared_lock lk(impl_->memo_m);
    auto it = impl_->memo.find(key);
    if (it != impl_->memo.end()) return it->second;
  }
  SparseVec out;
  FockState us = state(u);
  if (us.bosons.empty() && us.fermions2.empty()) {
    if (p == -1) out.emplace(z, Rational(1));
  } else {
    const bool fermion = us.bosons.empty();
    int k;
    if (!fermion) {
      k = us.bosons.front();
      us.bosons.erase(us.bosons.begin());
    } else {
      k = (us.fermions2.front() + 1) / 2;
      us.fermions2.erase(us.fermions2.begin());
    }
    const int wp = index_of(us);
    const int wwp = weight2(wp);
    auto a_mode = [&](int n, const SparseVec& v) { return fermion ? psi(2 * n + 1, v) : alpha(n, v); };
    const Rational sign = (fermion && is_odd(us.parity())) ? Rational(-1) : Rational(1);
    const int m_max = (wwp + wz - 2) >= 0 ? (wwp + wz - 2) / 2 : -1;
    for (int n = -k; p - n - k <= m_max; --n) {
      SparseVec inner = mode(wp, p - n - k, z);
      if (inner.empty()) continue;
      axpy(out, Rational(binomial(-n - 1, k - 1)), a_mode(n, inner));
    }
    for (int n = 0; 2 * n <= wz; ++n) {
      SparseVec az = a_mode(n, SparseVec{{z, Rational(1)}});
      if (az.empty()) continue;
      axpy(out, sign * Rational(binomial(-n - 1, k - 1)), mode(wp, p - n - k, az));
    }
  }
  std::unique_lock lk(impl_->memo_m);
  return impl_->memo.emplace(key, std::move(out)).first->second;
}

SparseVec FockSpace::mode(int u, int p, const SparseVec& z) {
  SparseVec r;
  for (const auto& [i, c] : z) axpy(r, c, mode(u, p, i));
  return r;
}

std::vector<long> fock_dimensions_by_generating_function(int max_weight2) {
  std::vector<long> d(max_weight2 + 1, 0);
  d[0] = 1;
  for (int n = 1; 2 * n <= max_weight2; ++n)
    for (int w = 2 * n; w <= max_weight2; ++w) d[w] += d[w - 2 * n];
  for (int r = 1; r <= max_weight2; r += 2)
    for (int w = max_weight2; w >= r; --w) d[w] += d[w - r];
  return d;
}

}  // namespace nsvosa
