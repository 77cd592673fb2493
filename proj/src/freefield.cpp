#include "nsvosa/freefield.hpp"

#include "nsvosa/error.hpp"
#include "nsvosa/vosa.hpp"

namespace nsvosa {

namespace {

class FreeFieldProvider : public ModeProvider {
 public:
  ModuleVector mode(const VosaData& V, int u, int n2, int w) const override {
    ModuleVector r;
    for (const auto& [i, c] : FockSpace::instance().mode(u, n2 / 2, w))
      r.add(V.ket(i), Grassmann(c, V.generators));
    return r;
  }
};

}  // namespace

VosaData ff_build(int max_weight2, int generators) {
  if (max_weight2 < 3) throw Error(ErrorKind::TooSmall, "the free field needs weight at least 3/2 to hold tau");
  auto& F = FockSpace::instance();
  VosaData V;
  V.flavor = Flavor::WithoutPhi;
  V.max_weight2 = max_weight2;
  V.generators = generators;
  const int n = F.count_upto(max_weight2);
  V.basis.reserve(n);
  for (int i = 0; i < n; ++i) V.basis.push_back({fock_label(F.state(i)), F.weight2(i), F.parity(i)});
  V.vacuum = F.vacuum();
  V.tau = V.vec(ff_tau());
  V.provider = std::make_shared<FreeFieldProvider>();
  V.rank = ff_rank(max_weight2);
  V.rebuild = [generators](int w) { return ff_build(w, generators); };
  return V;
}

Rational ff_rank(int max_weight2) {
  if (max_weight2 < 3) throw Error(ErrorKind::TooSmall, "rank is read off tau_2 tau");
  SparseVec r = FockSpace::instance().mode(ff_tau(), 2, ff_tau());
  auto it = r.find(ff_vacuum());
  return it == r.end() ? Rational(0) : Rational(3, 2) * it->second;
}

int ff_vacuum() { return FockSpace::instance().vacuum(); }
int ff_psi_hat() { return FockSpace::instance().index_of({{}, {1}}); }
int ff_alpha_hat() { return FockSpace::instance().index_of({{1}, {}}); }
int ff_tau() { return FockSpace::instance().index_of({{1}, {1}}); }

}  // namespace nsvosa
