#include "qfilter/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfilter {

namespace {

constexpr double kEntropyCutoff = 1e-12;
// Eigenvalues of rho below this are treated as exact zeros when forming
// sqrt(rho) for the concurrence; otherwise rounding noise of ~1e-17 would
// surface as ~3e-9 after the square root.
constexpr double kConcurrenceRankCutoff = 1e-13;

double shannon_bits(const std::vector<double>& probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p > kEntropyCutoff) s -= p * std::log2(p);
  }
  return s;
}

const ComplexMatrix& spin_flip() {
  static const ComplexMatrix yy = kron(pauli(2), pauli(2));
  return yy;
}

}  // namespace

BellState parse_bell_state(std::string_view label) {
  if (label == "phi+" || label == "phi_plus" || label == "φ⁺" || label == "φ+") return BellState::PhiPlus;
  if (label == "phi-" || label == "phi_minus" || label == "φ⁻" || label == "φ-") return BellState::PhiMinus;
  if (label == "psi+" || label == "psi_plus" || label == "ψ⁺" || label == "ψ+") return BellState::PsiPlus;
  if (label == "psi-" || label == "psi_minus" || label == "ψ⁻" || label == "ψ-") return BellState::PsiMinus;
  throw std::invalid_argument("unknown Bell state label '" + std::string(label) + "'");
}

std::string_view to_string(BellState s) {
  switch (s) {
    case BellState::PhiPlus: return "phi+";
    case BellState::PhiMinus: return "phi-";
    case BellState::PsiPlus: return "psi+";
    case BellState::PsiMinus: return "psi-";
  }
  return "?";
}

std::vector<Complex> bell_vector(BellState s) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (s) {
    case BellState::PhiPlus: return {h, 0.0, 0.0, h};
    case BellState::PhiMinus: return {h, 0.0, 0.0, -h};
    case BellState::PsiPlus: return {0.0, h, h, 0.0};
    case BellState::PsiMinus: return {0.0, h, -h, 0.0};
  }
  throw std::invalid_argument("invalid Bell state");
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  if (!m.is_finite()) throw std::invalid_argument("density matrix has non-finite entries");
  const double herr = hermiticity_error(m);
  if (herr > kTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian (error " + std::to_string(herr) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTolerance) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const auto eig = hermitian_eig(m);
  if (eig.eigenvalues.back() < -kTolerance) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(eig.eigenvalues.back()));
  }
  return DensityMatrix(m);
}

DensityMatrix bell_state(BellState s) { return DensityMatrix::from_matrix(ComplexMatrix::projector(bell_vector(s))); }

DensityMatrix maximally_mixed(std::size_t dim) {
  return DensityMatrix::from_matrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix reduced_state(const DensityMatrix& rho, Qubit keep) {
  return DensityMatrix::from_matrix(partial_trace(rho.matrix(), keep));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const double s = shannon_bits(hermitian_eig(rho.matrix()).eigenvalues);
  return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.dim())));
}

double mutual_information(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("mutual_information expects a two-qubit state");
  const double sa = von_neumann_entropy(reduced_state(rho, Qubit::A));
  const double sb = von_neumann_entropy(reduced_state(rho, Qubit::B));
  const double sab = von_neumann_entropy(rho);
  return std::clamp(sa + sb - sab, 0.0, 2.0);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("concurrence expects a two-qubit state");
  const auto eig = hermitian_eig(rho.matrix());
  const ComplexMatrix sqrt_rho = apply_spectral(
      eig, [](double lambda) { return lambda > kConcurrenceRankCutoff ? std::sqrt(lambda) : 0.0; });
  const ComplexMatrix& yy = spin_flip();
  const ComplexMatrix sqrt_flipped = yy * sqrt_rho.conjugate() * yy;
  const auto sv = singular_values(sqrt_rho * sqrt_flipped);
  return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

CorrelationMatrix CorrelationMatrix::diagonal(double t1, double t2, double t3) {
  CorrelationMatrix t;
  t(0, 0) = t1;
  t(1, 1) = t2;
  t(2, 2) = t3;
  return t;
}

Vec3 CorrelationMatrix::propagate(Vec3 a) const {
  Vec3 out;
  out.x = a.x * t_[0][0] + a.y * t_[1][0] + a.z * t_[2][0];
  out.y = a.x * t_[0][1] + a.y * t_[1][1] + a.z * t_[2][1];
  out.z = a.x * t_[0][2] + a.y * t_[1][2] + a.z * t_[2][2];
  return out;
}

bool CorrelationMatrix::is_diagonal(double tol) const {
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      if (j != k && std::abs(t_[j][k]) > tol) return false;
  return true;
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("correlation_matrix expects a two-qubit state");
  CorrelationMatrix t;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      t(j - 1, k - 1) = (rho.matrix() * kron(pauli(j), pauli(k))).trace().real();
    }
  return t;
}

double BellWeights::max() const { return std::max({phi_plus, phi_minus, psi_plus, psi_minus}); }

double BellWeights::weight(BellState s) const {
  switch (s) {
    case BellState::PhiPlus: return phi_plus;
    case BellState::PhiMinus: return phi_minus;
    case BellState::PsiPlus: return psi_plus;
    case BellState::PsiMinus: return psi_minus;
  }
  return 0.0;
}

BellDecomposition bell_diagonal_weights(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("bell_diagonal_weights expects a two-qubit state");
  auto overlap = [&](BellState s) {
    const auto v = bell_vector(s);
    Complex acc{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) acc += std::conj(v[i]) * rho(i, j) * v[j];
    return acc.real();
  };
  BellDecomposition out;
  out.weights.phi_plus = overlap(BellState::PhiPlus);
  out.weights.phi_minus = overlap(BellState::PhiMinus);
  out.weights.psi_plus = overlap(BellState::PsiPlus);
  out.weights.psi_minus = overlap(BellState::PsiMinus);

  ComplexMatrix mixture(4);
  for (BellState s : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus}) {
    mixture += out.weights.weight(s) * ComplexMatrix::projector(bell_vector(s));
  }
  out.bell_diagonal = frobenius_distance(mixture, rho.matrix()) <= 1e-9;
  return out;
}

DensityMatrix bell_mixture(const BellWeights& w) {
  ComplexMatrix m(4);
  for (BellState s : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus}) {
    if (w.weight(s) < 0.0) throw std::invalid_argument("Bell weights must be non-negative");
    m += w.weight(s) * ComplexMatrix::projector(bell_vector(s));
  }
  return DensityMatrix::from_matrix(m);
}

double fidelity_pure(const DensityMatrix& rho, const DensityMatrix& target) {
  if (rho.dim() != target.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const double purity = (target.matrix() * target.matrix()).trace().real();
  if (std::abs(purity - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity_pure: target is not a pure state (purity " + std::to_string(purity) + ")");
  }
  return std::clamp((rho.matrix() * target.matrix()).trace().real(), 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const ComplexMatrix sqrt_rho = matrix_sqrt_psd(rho.matrix());
  ComplexMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint());
  double root_trace = 0.0;
  for (double lambda : hermitian_eig(inner).eigenvalues) {
    if (lambda > 0.0) root_trace += std::sqrt(lambda);
  }
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

}  // namespace qfilter
