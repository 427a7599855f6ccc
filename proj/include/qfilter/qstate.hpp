#pragma once

// Two-qubit states and the entanglement / information measures used to score
// a filtered channel.

#include <array>
#include <string_view>

#include "qfilter/qmat.hpp"

namespace qfilter {

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Accepts "phi+", "phi-", "psi+", "psi-" (also "phi_plus" etc. and the
/// unicode forms). Throws std::invalid_argument for anything else.
BellState parse_bell_state(std::string_view label);
std::string_view to_string(BellState s);

/// Amplitudes in the |HH>, |HV>, |VH>, |VV> basis.
std::vector<Complex> bell_vector(BellState s);

/// Unit-trace, Hermitian, positive semidefinite 2x2 or 4x4 matrix.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates the state invariants and throws std::invalid_argument on failure.
  static DensityMatrix from_matrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }
  Complex operator()(std::size_t row, std::size_t col) const { return mat_(row, col); }

 private:
  explicit DensityMatrix(const ComplexMatrix& m) : mat_(m) {}
  ComplexMatrix mat_;
};

DensityMatrix bell_state(BellState s);
DensityMatrix maximally_mixed(std::size_t dim);
DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix reduced_state(const DensityMatrix& rho, Qubit keep);

/// S(rho) = -sum lambda log2 lambda in bits; eigenvalues below 1e-12 are
/// dropped so 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(A) + S(B) - S(AB) in bits, clamped to [0, 2].
double mutual_information(const DensityMatrix& rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i are the singular
/// values of sqrt(rho) sqrt(rho~) (equivalently square roots of the
/// eigenvalues of sqrt(rho) rho~ sqrt(rho)).
double concurrence(const DensityMatrix& rho);

/// t_jk = Tr[rho (sigma_j x sigma_k)], j on qubit A and k on qubit B.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  static CorrelationMatrix diagonal(double t1, double t2, double t3);

  double operator()(std::size_t j, std::size_t k) const { return t_[j][k]; }
  double& operator()(std::size_t j, std::size_t k) { return t_[j][k]; }

  /// Qubit-B Stokes vector (T a)_k = sum_j a_j t_jk for a qubit-A direction a.
  Vec3 propagate(Vec3 a) const;
  /// The bilinear form sum_jk a_j t_jk b_k.
  double form(Vec3 a, Vec3 b) const { return dot(propagate(a), b); }
  bool is_diagonal(double tol = 1e-9) const;

 private:
  std::array<std::array<double, 3>, 3> t_{};
};

CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// Populations <B_i|rho|B_i> of the four Bell states.
struct BellWeights {
  double phi_plus = 0.0;
  double phi_minus = 0.0;
  double psi_plus = 0.0;
  double psi_minus = 0.0;

  double sum() const { return phi_plus + phi_minus + psi_plus + psi_minus; }
  double max() const;
  double weight(BellState s) const;
};

struct BellDecomposition {
  BellWeights weights;
  /// True when rho equals the Bell mixture of its weights within 1e-9 (Frobenius),
  /// i.e. the state has no Bell-basis coherences.
  bool bell_diagonal = false;
};

BellDecomposition bell_diagonal_weights(const DensityMatrix& rho);

/// sum_i w_i |B_i><B_i|; weights must be non-negative and sum to 1.
DensityMatrix bell_mixture(const BellWeights& w);

/// Tr[rho target] for a pure target. Throws std::invalid_argument when
/// Tr[target^2] differs from 1 by more than 1e-9.
double fidelity_pure(const DensityMatrix& rho, const DensityMatrix& target);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qfilter
