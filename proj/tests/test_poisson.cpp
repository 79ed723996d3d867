#include <doctest.h>

#include "isomon/certificates.hpp"
#include "isomon/errors.hpp"
#include "isomon/flows.hpp"
#include "isomon/poisson.hpp"
#include "isomon/presets.hpp"
#include "oracles.hpp"

using namespace isomon;
using oracle::diag2;
using oracle::m2;

TEST_CASE("generating relation, direct cases") {
  const auto L = oracle::fuchsian({0.0}, {m2(0.0, 1.0, 0.0, 0.0)});
  CHECK(std::abs(bracket_generating(L, 0, 1, 1.0, 1, 1, 2.0) + 0.5) < 1e-15);
  CHECK(std::abs(bracket_generating(L, 1, 1, 0.3, 1, 1, 2.0)) == 0.0);

  const Mat B = m2(1.0, 2.0, 3.0, 4.0);
  const RationalLaxMatrix constant(2, {}, {1, {-B}});
  CHECK(std::abs(bracket_generating(constant, 0, 1, 0.4, 1, 0, -0.7)) < 1e-15);
  CHECK_THROWS_AS(bracket_generating(L, 0, 1, 1.0, 1, 1, 1.0), CoincidentPointError);
}

TEST_CASE("coefficient brackets") {
  const Mat A = m2(0.3, 0.7, -0.2, 0.1);
  const auto L = oracle::fuchsian({0.0, 1.0}, {A, m2(0.5, 0.0, 0.4, -0.2)});
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const auto i = CoefficientIndex::finite_pole(0, 1, a, b);
          const auto k = CoefficientIndex::finite_pole(0, 1, c, d);
          // coefficient of (z-c)^-1 (w-c)^-1 in the generating relation
          const cplx expected = -(A(a, d) * double(c == b) - A(c, b) * double(a == d));
          CHECK(std::abs(bracket_coefficients(L, i, k) - expected) < 1e-15);
          CHECK(std::abs(bracket_coefficients(L, i, CoefficientIndex::finite_pole(1, 1, c, d))) == 0.0);
        }
      }
      CHECK(std::abs(bracket_coefficients(L, CoefficientIndex::finite_pole(0, 1, a, a),
                                          CoefficientIndex::finite_pole(0, 1, a, a))) == 0.0);
    }
  }
}

TEST_CASE("bracket tower on random shapes") {
  Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const auto L = random_lax(random_shape(rng), rng);
    const auto cert = bracket_tower_certificate(L, 20, rng);
    CHECK(cert.pass);
  }
}

TEST_CASE("Poisson axioms") {
  Rng rng(4);
  const auto L = random_lax({3, {1}, 1}, rng);
  for (const auto& c : poisson_axiom_certificates(L, 10, rng)) {
    INFO(c.name << " " << c.value);
    CHECK(c.pass);
  }
}

TEST_CASE("function brackets") {
  const auto S = make_preset("schlesinger").L;
  const PhaseSpace space(S);
  const auto f = coordinate_observable(space, 1);
  CHECK(std::abs(bracket_functions(S, f, f)) == 0.0);

  ScalarObservable h1{"H_c1", [](const RationalLaxMatrix& L) { return hamiltonian_c(L, 0); }, nullptr};
  ScalarObservable h2{"H_c2", [](const RationalLaxMatrix& L) { return hamiltonian_c(L, 1); }, nullptr};
  CHECK(std::abs(bracket_functions(S, h1, h2)) < 1e-8);

  const auto g = invariant_gradients(S);
  Rng rng(1);
  CHECK(casimir_certificate(g, 20, rng).pass);
  CHECK(commutation_certificate(g).pass);
}

TEST_CASE("gradient of a linear coordinate") {
  const auto S = make_preset("schlesinger").L;
  const PhaseSpace space(S);
  for (int i = 0; i < space.size(); ++i) {
    const auto grad = observable_gradient(S, coordinate_observable(space, i));
    for (int k = 0; k < space.size(); ++k) CHECK(std::abs(grad(k) - double(i == k)) < 1e-10);
  }
}

TEST_CASE("Schlesinger Hamiltonian vector field is Schlesinger") {
  const auto S = make_preset("schlesinger").L;
  ScalarObservable h1{"H_c1", [](const RationalLaxMatrix& L) { return hamiltonian_c(L, 0); }, nullptr};
  const PhaseSpace space(S);
  const Eigen::VectorXcd xh = hamiltonian_vector_field(S, h1);
  // dL^2/dt along H_c1 is [L^2, L^1]/(c2 - c1) up to the sign fixed by {L, H} = [V, L]
  const Mat expected = schlesinger_rhs(S, 1, 0);
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const int i = space.index_of(CoefficientIndex::finite_pole(1, 1, a, b));
      worst = std::max(worst, std::abs(xh(i) - expected(a, b)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Hamiltonian fields match the deformation matrices") {
  Rng rng(6);
  for (int trial = 0; trial < 3; ++trial) {
    const auto L = random_lax(random_shape(rng), rng);
    const auto g = invariant_gradients(L);
    for (const auto& c : hamiltonian_field_certificates(L, g)) {
      INFO(c.name << " " << c.value);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("rank of the Poisson matrix") {
  for (const char* name : {"pII", "pII2", "fuchsian_inf"}) {
    const auto L = make_preset(name).L;
    CHECK(poisson_rank(L) == symplectic_dimension(L));
  }
}
