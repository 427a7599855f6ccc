#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qfilter/channel.hpp"
#include "qfilter/qstate.hpp"
#include "test_support.hpp"

namespace qfilter {
namespace {

using testing::binary_entropy;
using testing::random_state;
using testing::random_unitary;

DensityMatrix bit_flip_033() { return pauli_channel_state(PauliNoiseSpec::bit_flip(0.33)); }
DensityMatrix phase_flip(double p) { return pauli_channel_state(PauliNoiseSpec::phase_flip(p)); }

TEST(BellState, PhiPlusCorners) {
  const auto rho = bell_state(BellState::PhiPlus);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      EXPECT_NEAR(std::abs(rho(i, j) - Complex(corner ? 0.5 : 0.0)), 0.0, 1e-15);
    }
}

TEST(BellState, PsiPlusCenterBlock) {
  const auto rho = bell_state(BellState::PsiPlus);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool inner = (i == 1 || i == 2) && (j == 1 || j == 2);
      EXPECT_NEAR(std::abs(rho(i, j) - Complex(inner ? 0.5 : 0.0)), 0.0, 1e-15);
    }
}

TEST(BellState, PhiMinusSignedCorners) {
  const auto rho = bell_state(BellState::PhiMinus);
  EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(3, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(0, 3).real(), -0.5, 1e-15);
  EXPECT_NEAR(rho(3, 0).real(), -0.5, 1e-15);
}

TEST(BellState, ParsesLabels) {
  EXPECT_EQ(parse_bell_state("phi+"), BellState::PhiPlus);
  EXPECT_EQ(parse_bell_state("ψ⁻"), BellState::PsiMinus);
  EXPECT_THROW(parse_bell_state("chi+"), std::invalid_argument);
}

TEST(DensityMatrix, RejectsInvalidStates) {
  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::identity(2)), std::invalid_argument);  // trace 2
  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.5, -0.5})), std::invalid_argument);
  ComplexMatrix m = 0.5 * ComplexMatrix::identity(2);
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::from_matrix(m), std::invalid_argument);  // not Hermitian
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(bell_state(BellState::PhiPlus)), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(maximally_mixed(4)), 2.0, 1e-12);
  // Binary entropy of the eigenvalues {0.835, 0.165}: 0.646138075864746.
  EXPECT_NEAR(binary_entropy(0.835), 0.646138075864746, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(bit_flip_033()), 0.646138075864746, 1e-12);
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(bell_state(BellState::PhiPlus)), 2.0, 1e-12);
  std::mt19937_64 rng(2);
  EXPECT_NEAR(mutual_information(product_state(random_state(rng, 2), random_state(rng, 2))), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(bit_flip_033()), 1.353861924135254, 1e-12);
}

TEST(MutualInformation, NonNegativeOnRandomStates) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto rho = random_state(rng, 4, 1 + static_cast<std::size_t>(trial % 4));
    const double mi = mutual_information(rho);
    ASSERT_GE(mi, 0.0);
    ASSERT_LE(mi, 2.0);
  }
}

TEST(MutualInformation, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rho = random_state(rng, 4);
    const ComplexMatrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint());
    EXPECT_NEAR(mutual_information(DensityMatrix::from_matrix(rotated)), mutual_information(rho), 1e-9);
  }
}

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence(bell_state(BellState::PhiPlus)), 1.0, 1e-12);
  EXPECT_NEAR(concurrence(maximally_mixed(4)), 0.0, 1e-12);
  // Bell-diagonal closed form 2 w_max - 1 = 1 - p.
  EXPECT_NEAR(concurrence(bit_flip_033()), 0.67, 1e-12);
  EXPECT_NEAR(testing::rank2_concurrence(bit_flip_033()), 0.67, 1e-12);
}

TEST(Concurrence, MatchesNonHermitianReferenceOnRandomStates) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = random_state(rng, 4, 1 + static_cast<std::size_t>(trial % 4));
    EXPECT_NEAR(concurrence(rho), testing::wootters_reference(rho), 1e-6);
  }
}

TEST(Concurrence, MatchesRank2OracleTightly) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = random_state(rng, 4, 2);
    EXPECT_NEAR(concurrence(rho), testing::rank2_concurrence(rho), 1e-9);
  }
}

TEST(Concurrence, BellDiagonalClosedForm) {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    BellWeights w{u(rng), u(rng), u(rng), u(rng)};
    // Make some states rank-deficient.
    if (trial % 3 == 0) w.psi_minus = 0.0;
    if (trial % 5 == 0) w.phi_minus = 0.0;
    const double s = w.sum();
    w = {w.phi_plus / s, w.phi_minus / s, w.psi_plus / s, w.psi_minus / s};
    const auto rho = bell_mixture(w);
    EXPECT_NEAR(concurrence(rho), std::max(0.0, 2.0 * w.max() - 1.0), 1e-9);
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_state(rng, 4, 2);
    const ComplexMatrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint());
    EXPECT_NEAR(concurrence(DensityMatrix::from_matrix(rotated)), concurrence(rho), 1e-9);
  }
}

TEST(CorrelationMatrix, PhiPlus) {
  // Direct traces: <XX> = 1, <YY> = -1, <ZZ> = 1 on (|HH> + |VV>)/sqrt 2.
  const auto t = correlation_matrix(bell_state(BellState::PhiPlus));
  EXPECT_NEAR(t(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(t(1, 1), -1.0, 1e-15);
  EXPECT_NEAR(t(2, 2), 1.0, 1e-15);
  EXPECT_TRUE(t.is_diagonal());
}

TEST(CorrelationMatrix, PhaseFlipIsLinearMixOfBellCorrelations) {
  for (double p : {0.0, 0.2, 0.33, 0.7, 1.0}) {
    // (1 - p/2) diag(1,-1,1) + (p/2) diag(-1,1,1)
    const auto t = correlation_matrix(phase_flip(p));
    EXPECT_NEAR(t(0, 0), 1.0 - p, 1e-14);
    EXPECT_NEAR(t(1, 1), -(1.0 - p), 1e-14);
    EXPECT_NEAR(t(2, 2), 1.0, 1e-14);
    EXPECT_TRUE(t.is_diagonal());
  }
}

TEST(CorrelationMatrix, MaximallyMixedIsZero) {
  const auto t = correlation_matrix(maximally_mixed(4));
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(t(j, k), 0.0, 1e-15);
}

TEST(CorrelationMatrix, Rank2NoiseHasOneUnitAndTwoConcurrenceEntries) {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    for (const auto& spec : {PauliNoiseSpec::bit_flip(p), PauliNoiseSpec::phase_flip(p)}) {
      const auto rho = pauli_channel_state(spec);
      const auto t = correlation_matrix(rho);
      const double c = concurrence(rho);
      ASSERT_TRUE(t.is_diagonal());
      int unit = 0, at_c = 0;
      for (std::size_t j = 0; j < 3; ++j) {
        const double a = std::abs(t(j, j));
        ASSERT_LE(a, 1.0 + 1e-9);
        if (std::abs(a - 1.0) < 1e-9) {
          ++unit;
        } else if (std::abs(a - c) < 1e-9) {
          ++at_c;
        }
      }
      // At p = 0 all three entries are 1 = C.
      if (p == 0.0) {
        EXPECT_EQ(unit, 3);
      } else {
        EXPECT_EQ(unit, 1) << "p=" << p;
        EXPECT_EQ(at_c, 2) << "p=" << p;
      }
    }
  }
}

TEST(BellWeights, NoiseStates) {
  const auto bf = bell_diagonal_weights(bit_flip_033());
  EXPECT_NEAR(bf.weights.phi_plus, 0.835, 1e-14);
  EXPECT_NEAR(bf.weights.psi_plus, 0.165, 1e-14);
  EXPECT_NEAR(bf.weights.phi_minus, 0.0, 1e-14);
  EXPECT_NEAR(bf.weights.psi_minus, 0.0, 1e-14);
  EXPECT_TRUE(bf.bell_diagonal);

  const auto pf = bell_diagonal_weights(phase_flip(0.33));
  EXPECT_NEAR(pf.weights.phi_plus, 0.835, 1e-14);
  EXPECT_NEAR(pf.weights.phi_minus, 0.165, 1e-14);
  EXPECT_NEAR(pf.weights.psi_plus, 0.0, 1e-14);
  EXPECT_NEAR(pf.weights.psi_minus, 0.0, 1e-14);

  const auto pure = bell_diagonal_weights(bell_state(BellState::PhiPlus));
  EXPECT_NEAR(pure.weights.phi_plus, 1.0, 1e-14);
  EXPECT_NEAR(pure.weights.sum(), 1.0, 1e-14);
}

TEST(BellWeights, FlagsCoherentStates) {
  // |HH><HH| has Bell populations (1/2, 1/2, 0, 0) but phi+/phi- coherence.
  const auto hh = DensityMatrix::from_matrix(ComplexMatrix::diagonal({1, 0, 0, 0}));
  const auto d = bell_diagonal_weights(hh);
  EXPECT_NEAR(d.weights.sum(), 1.0, 1e-14);
  EXPECT_FALSE(d.bell_diagonal);
}

TEST(Fidelity, PureTargets) {
  const auto phi = bell_state(BellState::PhiPlus);
  EXPECT_NEAR(fidelity_pure(phi, phi), 1.0, 1e-14);
  EXPECT_NEAR(fidelity_pure(bit_flip_033(), phi), 0.835, 1e-14);
  EXPECT_NEAR(fidelity_pure(maximally_mixed(4), bell_state(BellState::PsiMinus)), 0.25, 1e-14);
  EXPECT_THROW(fidelity_pure(phi, maximally_mixed(4)), std::invalid_argument);
}

TEST(Fidelity, UhlmannAgreesWithPureFormAndIsSymmetric) {
  std::mt19937_64 rng(107);
  const auto phi = bell_state(BellState::PhiPlus);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_state(rng, 4);
    const auto sigma = random_state(rng, 4);
    EXPECT_NEAR(fidelity(rho, phi), fidelity_pure(rho, phi), 1e-7);
    EXPECT_NEAR(fidelity(rho, sigma), fidelity(sigma, rho), 1e-9);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace qfilter
