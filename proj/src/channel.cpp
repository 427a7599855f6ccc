#include "qfilter/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfilter {

namespace {

Vec3 require_unit(Vec3 v, const char* what) {
  const double n = norm(v);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance) {
    throw std::invalid_argument(std::string(what) + " must be a unit vector (norm " + std::to_string(n) + ")");
  }
  return v;
}

}  // namespace

FilterElement::FilterElement(double magnitude, Vec3 orientation)
    : magnitude_(magnitude), orientation_(require_unit(orientation, "filter orientation")) {
  if (!std::isfinite(magnitude) || magnitude < 0.0) {
    throw std::invalid_argument("filter magnitude must be finite and >= 0, got " + std::to_string(magnitude));
  }
}

FilterElement FilterElement::along(double magnitude, Vec3 direction) {
  return FilterElement(magnitude, normalized(direction));
}

PauliNoiseSpec::PauliNoiseSpec(Vec3 axis, double p) : axis_(require_unit(axis, "noise axis")), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise weight p must lie in [0, 1], got " + std::to_string(p));
}

BirefringenceSpec::BirefringenceSpec(double dgd, Vec3 axis, double spectral_width)
    : dgd_(dgd), axis_(require_unit(axis, "birefringence axis")), spectral_width_(spectral_width) {
  if (!std::isfinite(dgd) || dgd < 0.0) throw std::invalid_argument("DGD must be finite and >= 0");
  if (!(spectral_width > 0.0)) throw std::invalid_argument("spectral width must be > 0");
}

ComplexMatrix filter_operator(const FilterElement& f) {
  const double half = 0.5 * f.magnitude();
  return std::cosh(half) * ComplexMatrix::identity(2) + std::sinh(half) * stokes_operator(f.orientation());
}

ComplexMatrix passive_filter_operator(const FilterElement& f) {
  // e^{-g/2} cosh(g/2) = (1 + e^{-g}) / 2 and e^{-g/2} sinh(g/2) = (1 - e^{-g}) / 2
  // stay finite for large g.
  const double decay = std::exp(-f.magnitude());
  return (0.5 * (1.0 + decay)) * ComplexMatrix::identity(2) + (0.5 * (1.0 - decay)) * stokes_operator(f.orientation());
}

ComplexMatrix unitary_operator(Vec3 axis, double angle) {
  require_unit(axis, "rotation axis");
  using namespace std::complex_literals;
  return std::cos(0.5 * angle) * ComplexMatrix::identity(2) - (1i * std::sin(0.5 * angle)) * stokes_operator(axis);
}

ComplexMatrix apply_pauli_map(const ComplexMatrix& rho, const PauliNoiseSpec& spec) {
  if (rho.dim() != 2) throw std::invalid_argument("apply_pauli_map expects a 2x2 operator");
  const ComplexMatrix n = stokes_operator(spec.axis());
  return (1.0 - 0.5 * spec.p()) * rho + (0.5 * spec.p()) * (n * rho * n);
}

DensityMatrix pauli_channel_state(const PauliNoiseSpec& spec) {
  const ComplexMatrix signal = bell_state(BellState::PhiPlus).matrix();
  const ComplexMatrix flip = kron(stokes_operator(spec.axis()), ComplexMatrix::identity(2));
  ComplexMatrix out = (1.0 - 0.5 * spec.p()) * signal + (0.5 * spec.p()) * (flip * signal * flip);
  return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()));
}

PauliNoiseSpec dephasing_from_spectrum(const BirefringenceSpec& spec) {
  const double spread = spec.dgd() * spec.spectral_width();
  const double coherence = std::exp(-0.5 * spread * spread);
  return PauliNoiseSpec(spec.axis(), 1.0 - coherence);
}

FilteredState apply_filters(const DensityMatrix& rho_in, const FilterElement& filter_a, const FilterElement& filter_b) {
  if (rho_in.dim() != 4) throw std::invalid_argument("apply_filters expects a two-qubit state");
  // The passive operators differ from P_A x P_B by the scalar e^{-(gA+gB)/2},
  // which cancels in the normalized state.
  const ComplexMatrix k = kron(passive_filter_operator(filter_a), passive_filter_operator(filter_b));
  ComplexMatrix out = k * rho_in.matrix() * k.adjoint();
  const double transmission = out.trace().real();
  if (!(transmission >= kBlockedThreshold)) {
    throw BlockedStateError("filters block the state (transmission " + std::to_string(transmission) + ")");
  }
  out *= Complex(1.0 / transmission, 0.0);
  out = 0.5 * (out + out.adjoint());
  return {DensityMatrix::from_matrix(out), std::min(transmission, 1.0)};
}

std::array<double, 3> bloch_ellipsoid(const PauliNoiseSpec& spec) {
  const double transverse = 1.0 - spec.p();
  return {1.0, transverse, transverse};
}

}  // namespace qfilter
