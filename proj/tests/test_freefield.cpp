#include "doctest.h"
#include "nsvosa/error.hpp"
#include "nsvosa/freefield.hpp"
#include "nsvosa/vosa.hpp"

using namespace nsvosa;

namespace {

// Number of (boson partition, odd strict fermion partition) pairs of total weight w2/2, counted by brute force.
long brute_dim(int w2) {
  // bosons: partitions of a into parts >= 1; fermions: distinct odd parts summing to w2 - 2a (doubled).
  std::vector<long> p(w2 / 2 + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= w2 / 2; ++part)
    for (int n = part; n <= w2 / 2; ++n) p[n] += p[n - part];
  std::vector<long> q(w2 + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << ((w2 + 1) / 2)); ++mask) {
    int s = 0;
    for (int i = 0; i < 16; ++i)
      if (mask >> i & 1) s += 2 * i + 1;
    if (s <= w2) ++q[s];
  }
  long total = 0;
  for (int a = 0; 2 * a <= w2; ++a) total += p[a] * q[w2 - 2 * a];
  return total;
}

int idx(const std::string& label) { return FockSpace::instance().index_of(parse_fock_label(label)); }

SparseVec unit(int i) { return {{i, Rational(1)}}; }

}  // namespace

TEST_CASE("graded dimensions") {
  auto& F = FockSpace::instance();
  const std::vector<long> expect{1, 1, 1, 2, 3, 4};
  auto gf = fock_dimensions_by_generating_function(14);
  for (int w = 0; w <= 14; ++w) {
    const long enumerated = F.count_upto(w) - F.count_upto(w - 1);
    CHECK(enumerated == brute_dim(w));
    CHECK(gf[w] == enumerated);
    if (w < 6) CHECK(enumerated == expect[w]);
  }
}

TEST_CASE("labels round trip") {
  auto& F = FockSpace::instance();
  for (int i = 0; i < F.count_upto(8); ++i) CHECK(parse_fock_label(fock_label(F.state(i))) == F.state(i));
  CHECK(fock_label(F.state(ff_tau())) == "a(-1)p(-1/2)");
  CHECK_THROWS_AS(parse_fock_label("p(-1/2)p(-3/2)"), Error);
  CHECK_THROWS_AS(parse_fock_label("a(0)"), Error);
}

TEST_CASE("oscillator actions") {
  auto& F = FockSpace::instance();
  const int vac = ff_vacuum();
  CHECK(F.psi(1, F.psi(-1, unit(vac))) == unit(vac));
  CHECK(F.alpha(1, F.alpha(-1, unit(vac))) == unit(vac));
  CHECK(F.alpha(2, F.alpha(-2, unit(vac))) == SparseVec{{vac, Rational(2)}});
  CHECK(F.alpha(1, unit(idx("a(-1)a(-1)"))) == SparseVec{{idx("a(-1)"), Rational(2)}});
  // psi(-3/2) psi(-1/2): removing psi(-1/2) passes psi(-3/2) once
  CHECK(F.psi(1, unit(idx("p(-3/2)p(-1/2)"))) == SparseVec{{idx("p(-3/2)"), Rational(-1)}});
  CHECK(F.psi(-1, F.psi(-3, unit(vac))) == SparseVec{{idx("p(-3/2)p(-1/2)"), Rational(-1)}});
  CHECK(F.psi(-1, unit(idx("p(-1/2)"))).empty());
}

TEST_CASE("superconformal structure on tau") {
  auto& F = FockSpace::instance();
  const SparseVec tau = unit(ff_tau());
  SparseVec expect{{idx("a(-1)a(-1)"), Rational(1)}, {idx("p(-3/2)p(-1/2)"), Rational(1)}};
  CHECK(F.G(-1, tau) == expect);
  CHECK(F.G(3, tau) == unit(ff_vacuum()));
  CHECK(F.G(-3, unit(ff_vacuum())) == tau);
  CHECK(F.L(0, tau) == SparseVec{{ff_tau(), Rational(3, 2)}});
}

TEST_CASE("L(0) grades every state") {
  auto& F = FockSpace::instance();
  CHECK(F.L(0, unit(ff_vacuum())).empty());
  for (int i = 1; i < F.count_upto(7); ++i) {
    INFO(fock_label(F.state(i)));
    CHECK(F.L(0, unit(i)) == SparseVec{{i, Rational(F.weight2(i)) / 2}});
  }
}

TEST_CASE("G(-1/2) squared is L(-1)") {
  auto& F = FockSpace::instance();
  for (int i = 0; i < F.count_upto(6); ++i) CHECK(F.G(-1, F.G(-1, unit(i))) == F.L(-1, unit(i)));
}

TEST_CASE("vertex modes agree with oscillators") {
  auto& F = FockSpace::instance();
  for (int z = 0; z < F.count_upto(5); ++z) {
    for (int n = -3; n <= 3; ++n) {
      CHECK(F.mode(ff_alpha_hat(), n, z) == F.alpha(n, unit(z)));
      SparseVec p = F.psi(2 * n + 1, unit(z));
      CHECK(F.mode(ff_psi_hat(), n, z) == p);
    }
    CHECK(F.mode(ff_vacuum(), -1, z) == unit(z));
    CHECK(F.mode(z, -1, ff_vacuum()) == unit(z));
    // tau_0 = G(-1/2), tau_1 = G(1/2)
    CHECK(F.mode(ff_tau(), 0, z) == F.G(-1, unit(z)));
    CHECK(F.mode(ff_tau(), 1, z) == F.G(1, unit(z)));
  }
}

TEST_CASE("rank and construction") {
  CHECK(ff_rank(3) == Rational(3, 2));
  CHECK(ff_rank(6) == Rational(3, 2));
  CHECK_THROWS_AS(ff_build(2), Error);
  for (int W : {3, 6, 9}) {
    VosaData V = ff_build(W);
    CHECK(V.rank == Rational(3, 2));
    CHECK(V.size() == FockSpace::instance().count_upto(W));
    CHECK(V.basis[V.vacuum].label == "vac");
    CHECK(V.render(V.tau) == "a(-1)p(-1/2)");
  }
}

TEST_CASE("VOSA-level operators") {
  VosaData V = ff_build(6);
  const ModuleVector tau = V.tau;
  CHECK(V.render(V.G(-1, tau)) == "a(-1)a(-1) + p(-3/2)p(-1/2)");
  CHECK(V.G(3, tau) == V.vec(V.vacuum));
  CHECK(V.L(0, tau) == Grassmann(Rational(3, 2)) * tau);
  CHECK(V.render(V.omega()) == "1/2*a(-1)a(-1) + 1/2*p(-3/2)p(-1/2)");
  for (int i = 0; i < V.size(); ++i) CHECK(V.L(0, V.vec(i)) == Grassmann(Rational(V.basis[i].weight2) / 2) * V.vec(i));
  for (int i = 0; V.basis[i].weight2 <= 4; ++i) CHECK(V.G(-1, V.G(-1, V.vec(i))) == V.L(-1, V.vec(i)));
}
