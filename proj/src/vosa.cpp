#include "nsvosa/vosa.hpp"

#include <mutex>
#include <regex>
#include <sstream>
#include <tuple>

#include "nsvosa/error.hpp"

namespace nsvosa {

std::string flavor_name(Flavor f) { return f == Flavor::WithPhi ? "with-phi" : "without-phi"; }

Ket VosaData::ket(int i) const {
  if (i < 0 || i >= size()) throw Error(ErrorKind::TableIncomplete, "basis index out of range");
  return Ket{i, basis[i].weight2, basis[i].parity};
}

ModuleVector VosaData::vec(int i, const Grassmann& c) const { return ModuleVector(ket(i), c); }

int VosaData::find(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (basis[i].label == label) return i;
  return -1;
}

int VosaData::index(const std::string& label) const {
  int i = find(label);
  if (i < 0) throw Error(ErrorKind::TableIncomplete, "no basis vector labelled " + label);
  return i;
}

namespace {

std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s.compare(i, 3, " + ") == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 3;
      i += 2;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ModuleVector VosaData::parse_vector(const std::string& text0) const {
  std::string text = trim(text0);
  ModuleVector v;
  if (text == "0") return v;
  for (std::string term : split_terms(text)) {
    term = trim(term);
    Grassmann c(Rational(1), generators);
    std::string label = term;
    if (!term.empty() && term[0] == '(') {
      int depth = 0;
      std::size_t close = 0;
      for (std::size_t i = 0; i < term.size(); ++i) {
        if (term[i] == '(') ++depth;
        if (term[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == 0 || close + 1 >= term.size() || term[close + 1] != '*')
        throw Error(ErrorKind::ParseError, "bad vector term: " + term);
      c = Grassmann::parse(term.substr(1, close - 1), generators);
      label = term.substr(close + 2);
    } else if (auto star = term.rfind('*'); star != std::string::npos) {
      c = Grassmann::parse(term.substr(0, star), generators);
      label = term.substr(star + 1);
    }
    int i = find(label);
    if (i < 0) throw Error(ErrorKind::ParseError, "unknown basis label: " + label);
    v.add(ket(i), c);
  }
  return v;
}

std::string VosaData::render(const ModuleVector& v) const {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : v.terms()) {
    if (!out.empty()) out += " + ";
    std::string cs = c.to_string();
    if (cs != "1") out += (c.terms().size() > 1 || c.terms().front().first != 0 ? "(" + cs + ")" : cs) + "*";
    out += basis[k.index].label;
  }
  return out;
}

std::string VosaData::render_witness(const std::string& s) const {
  static const std::regex re("\\(([^()]*)\\)\\*#([0-9]+)");
  std::string out;
  auto begin = std::sregex_iterator(s.begin(), s.end(), re);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out += s.substr(last, m.position() - last);
    int idx = std::stoi(m[2].str());
    std::string lab = idx < size() ? basis[idx].label : "#" + m[2].str();
    std::string c = m[1].str();
    out += (c == "1" ? "" : "(" + c + ")*") + lab;
    last = m.position() + m.length();
  }
  out += s.substr(last);
  return out;
}

ModuleVector VosaData::mode(int u, int n2, int w) const {
  if (flavor == Flavor::WithoutPhi && (n2 & 1))
    throw Error(ErrorKind::WrongFlavor, "half-integer mode requested without odd variables");
  const int wr = mode_weight2(u, n2, w);
  if (wr < 0 || wr > max_weight2) return {};
  return provider->mode(*this, u, n2, w);
}

ModuleVector VosaData::mode(const ModuleVector& u, int n2, const ModuleVector& w) const {
  ModuleVector r;
  for (const auto& [ku, cu] : u.terms()) {
    const bool odd_mode = is_odd(ku.parity) != static_cast<bool>(n2 & 1);
    for (const auto& [kw, cw] : w.terms()) {
      ModuleVector m = mode(ku.index, n2, kw.index);
      if (m.is_zero()) continue;
      r += (cu * (odd_mode ? cw.twisted() : cw)) * m;
    }
  }
  return r;
}

ModuleVector VosaData::G(int r2, const ModuleVector& w) const { return mode(tau, r2 + 1, w); }

ModuleVector VosaData::omega() const {
  return Grassmann(Rational(1, 2)) * mode(tau, 0, tau);
}

ModuleVector VosaData::L(int n, const ModuleVector& w) const {
  if (flavor == Flavor::WithPhi) return Grassmann(Rational(1, 2)) * mode(tau, 2 * n + 1, w);
  return mode(omega(), 2 * n + 2, w);
}

VosaData VosaData::at_weight(int weight2) const {
  if (weight2 <= max_weight2 || !rebuild) return *this;
  return rebuild(weight2);
}

int weight2_of(const ModuleVector& v) {
  if (v.is_zero()) return 0;
  int w = v.terms().begin()->first.weight2;
  for (const auto& [k, c] : v.terms())
    if (k.weight2 != w) throw Error(ErrorKind::NonHomogeneous, "vector mixes weights");
  return w;
}

Parity parity_of(const ModuleVector& v) {
  std::optional<Parity> p;
  for (const auto& [k, c] : v.terms()) {
    Parity q = k.parity + c.parity();
    if (p && *p != q) throw Error(ErrorKind::NonHomogeneous, "vector mixes parities");
    p = q;
  }
  return p.value_or(Parity::Even);
}

// ---- providers ----

namespace {

using EntryKey = std::tuple<int, int, int>;

class TableProvider : public ModeProvider {
 public:
  std::map<EntryKey, ModuleVector> table;
  ModuleVector mode(const VosaData& V, int u, int n2, int w) const override {
    auto it = table.find({u, n2, w});
    if (it == table.end() && V.mode_weight2(u, n2, w) < 0) return {};
    if (it == table.end())
      throw Error(ErrorKind::TableIncomplete, "missing entry " + V.basis[u].label + " " + std::to_string(n2) + " " +
                                                  V.basis[w].label);
    return it->second;
  }
};

class FphiProvider : public ModeProvider {
 public:
  explicit FphiProvider(VosaData base) : base_(std::move(base)), plus_(base_.at_weight(base_.max_weight2 + 1)) {}
  ModuleVector mode(const VosaData&, int u, int n2, int w) const override {
    if (!(n2 & 1)) return base_.mode(u, n2, w);
    if (base_.basis[u].weight2 + 1 <= plus_.max_weight2)
      return plus_.mode(g_of(u), n2 + 1, plus_.vec(w)).projected(base_.max_weight2);
    // [G(-1/2), u_n] w, which stays inside the table when w is not at the top.
    if (base_.basis[w].weight2 + 1 > base_.max_weight2)
      throw Error(ErrorKind::TableIncomplete, "odd mode of " + base_.basis[u].label + " on " + base_.basis[w].label +
                                                  " needs weight above the table");
    const int n2e = n2 + 1;
    ModuleVector a = base_.mode(base_.tau, 0, base_.mode(base_.vec(u), n2e, base_.vec(w)));
    ModuleVector b = base_.mode(base_.vec(u), n2e, base_.mode(base_.tau, 0, base_.vec(w)));
    return is_odd(base_.basis[u].parity) ? a + b : a - b;
  }

 private:
  const ModuleVector& g_of(int u) const {
    std::lock_guard lk(m_);
    auto it = g_.find(u);
    if (it != g_.end()) return it->second;
    return g_.emplace(u, plus_.mode(plus_.tau, 0, plus_.vec(u))).first->second;
  }
  VosaData base_, plus_;
  mutable std::mutex m_;
  mutable std::map<int, ModuleVector> g_;
};

class PassProvider : public ModeProvider {
 public:
  PassProvider(VosaData base, int odd_sign) : base_(std::move(base)), odd_sign_(odd_sign) {}
  ModuleVector mode(const VosaData&, int u, int n2, int w) const override {
    ModuleVector r = base_.provider->mode(base_, u, n2, w);
    return (n2 & 1) && odd_sign_ < 0 ? -r : r;
  }

 private:
  VosaData base_;
  int odd_sign_;
};

class CorruptProvider : public ModeProvider {
 public:
  CorruptProvider(VosaData base, EntryKey key, ModuleVector delta)
      : base_(std::move(base)), key_(key), delta_(std::move(delta)) {}
  ModuleVector mode(const VosaData&, int u, int n2, int w) const override {
    ModuleVector r = base_.provider->mode(base_, u, n2, w);
    if (EntryKey{u, n2, w} == key_) r += delta_;
    return r;
  }

 private:
  VosaData base_;
  EntryKey key_;
  ModuleVector delta_;
};

Parity parse_parity(const std::string& s) {
  if (s == "0") return Parity::Even;
  if (s == "1") return Parity::Odd;
  throw Error(ErrorKind::ParseError, "parity must be 0 or 1: " + s);
}

}  // namespace

// ---- interchange ----

std::string dump_vosa(const VosaData& V) {
  std::ostringstream o;
  o << "VOSA flavor=" << flavor_name(V.flavor) << " rank=" << to_string(V.rank)
    << " maxweight=" << to_string(Rational(V.max_weight2) / 2) << " generators=" << V.generators << "\n";
  for (const auto& b : V.basis) o << "BASIS " << b.label << " " << b.weight2 << " " << (is_odd(b.parity) ? 1 : 0) << "\n";
  o << "VAC " << V.basis[V.vacuum].label << "\n";
  o << "TAU " << V.render(V.tau) << "\n";
  const int step = V.flavor == Flavor::WithPhi ? 1 : 2;
  for (int u = 0; u < V.size(); ++u)
    for (int w = 0; w < V.size(); ++w) {
      const int top = V.basis[u].weight2 + V.basis[w].weight2 - 2;
      int lo = top - V.max_weight2;
      if (step == 2 && (lo & 1)) ++lo;
      for (int n2 = lo; n2 <= top; n2 += step)
        o << "MODE " << V.basis[u].label << " " << n2 << " " << V.basis[w].label << " = " << V.render(V.mode(u, n2, w))
          << "\n";
    }
  return o.str();
}

VosaData load_vosa(const std::string& text) {
  VosaData V;
  auto table = std::make_shared<TableProvider>();
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::string vac, tau;
  std::vector<std::string> modes;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    auto fail = [&](const std::string& why) {
      return Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    if (kw == "VOSA") {
      std::string field;
      while (ls >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw fail("bad header field " + field);
        std::string k = field.substr(0, eq), val = field.substr(eq + 1);
        if (k == "flavor") {
          if (val == "with-phi") V.flavor = Flavor::WithPhi;
          else if (val == "without-phi") V.flavor = Flavor::WithoutPhi;
          else throw fail("unknown flavor " + val);
        } else if (k == "rank") {
          V.rank = parse_rational(val);
        } else if (k == "maxweight") {
          Rational w = 2 * parse_rational(val);
          if (w.get_den() != 1) throw fail("max weight must be a half-integer");
          V.max_weight2 = static_cast<int>(w.get_num().get_si());
        } else if (k == "generators") {
          V.generators = std::stoi(val);
        } else {
          throw fail("unknown header field " + k);
        }
      }
      header = true;
    } else if (!header) {
      throw fail("missing VOSA header");
    } else if (kw == "BASIS") {
      BasisEntry b;
      std::string p;
      if (!(ls >> b.label >> b.weight2 >> p)) throw fail("bad BASIS line");
      b.parity = parse_parity(p);
      if (V.find(b.label) >= 0) throw fail("duplicate label " + b.label);
      V.basis.push_back(b);
    } else if (kw == "VAC") {
      ls >> vac;
    } else if (kw == "TAU") {
      std::getline(ls, tau);
    } else if (kw == "MODE") {
      modes.push_back(line);
    } else {
      throw fail("unknown keyword " + kw);
    }
  }
  if (!header) throw Error(ErrorKind::ParseError, "missing VOSA header");
  V.vacuum = V.find(vac);
  if (V.vacuum < 0) throw Error(ErrorKind::ParseError, "unknown vacuum " + vac);
  V.tau = V.parse_vector(tau);
  if (V.basis[V.vacuum].weight2 != 0 || is_odd(V.basis[V.vacuum].parity))
    throw Error(ErrorKind::GradingViolation, "vacuum must be even of weight 0");
  if (weight2_of(V.tau) != 3 || !is_odd(parity_of(V.tau)))
    throw Error(ErrorKind::GradingViolation, "tau must be odd of weight 3/2");
  for (const auto& m : modes) {
    std::istringstream ls(m);
    std::string kw, ul, wl, eq;
    int n2;
    if (!(ls >> kw >> ul >> n2 >> wl >> eq) || eq != "=") throw Error(ErrorKind::ParseError, "bad MODE line: " + m);
    std::string rhs;
    std::getline(ls, rhs);
    int u = V.find(ul), w = V.find(wl);
    if (u < 0 || w < 0) throw Error(ErrorKind::ParseError, "unknown label in: " + m);
    if (V.flavor == Flavor::WithoutPhi && (n2 & 1))
      throw Error(ErrorKind::GradingViolation, "half-integer mode without odd variables: " + m);
    ModuleVector val = V.parse_vector(rhs);
    const int wr = V.mode_weight2(u, n2, w);
    if (wr < 0 || wr > V.max_weight2) {
      if (!val.is_zero()) throw Error(ErrorKind::GradingViolation, "entry outside the weight range: " + m);
      continue;
    }
    const Parity expect = V.basis[u].parity + V.basis[w].parity + parity_of(n2);
    for (const auto& [k, c] : val.terms()) {
      if (k.weight2 != wr) throw Error(ErrorKind::GradingViolation, "weight rule violated: " + m);
      if (!c.homogeneous() || k.parity + c.parity() != expect)
        throw Error(ErrorKind::GradingViolation, "parity rule violated: " + m);
    }
    table->table[{u, n2, w}] = val;
  }
  V.provider = table;
  return V;
}

VosaData table_copy(const VosaData& V) { return load_vosa(dump_vosa(V)); }

// ---- functors and variants ----

VosaData functor_F0(const VosaData& V) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "F0 needs odd variables");
  VosaData r = V;
  r.flavor = Flavor::WithoutPhi;
  r.provider = std::make_shared<PassProvider>(V, 1);
  if (V.rebuild) r.rebuild = [b = V.rebuild](int w) { return functor_F0(b(w)); };
  return r;
}

VosaData functor_Fphi(const VosaData& V) {
  if (V.flavor != Flavor::WithoutPhi) throw Error(ErrorKind::WrongFlavor, "F_phi needs a table without odd variables");
  VosaData r = V;
  r.flavor = Flavor::WithPhi;
  r.provider = std::make_shared<FphiProvider>(V);
  if (V.rebuild) r.rebuild = [b = V.rebuild](int w) { return functor_Fphi(b(w)); };
  return r;
}

VosaData sign_flip_data(const VosaData& V) {
  if (V.flavor != Flavor::WithPhi) throw Error(ErrorKind::WrongFlavor, "sign flip needs odd variables");
  VosaData r = V;
  r.tau = -V.tau;
  r.provider = std::make_shared<PassProvider>(V, -1);
  if (V.rebuild) r.rebuild = [b = V.rebuild](int w) { return sign_flip_data(b(w)); };
  return r;
}

VosaData corrupt_mode(const VosaData& V, int u, int n2, int w, const ModuleVector& delta) {
  VosaData r = V;
  r.provider = std::make_shared<CorruptProvider>(V, EntryKey{u, n2, w}, delta);
  if (V.rebuild) r.rebuild = [b = V.rebuild, u, n2, w, delta](int W) { return corrupt_mode(b(W), u, n2, w, delta); };
  return r;
}

VosaData reassign_weight(const VosaData& V, int index, int weight2) {
  VosaData r = V;
  r.basis.at(index).weight2 = weight2;
  if (V.rebuild) r.rebuild = [b = V.rebuild, index, weight2](int W) { return reassign_weight(b(W), index, weight2); };
  return r;
}

}  // namespace nsvosa
