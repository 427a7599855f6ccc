#pragma once

// Polarization channel elements: partial polarizers (PDL filters), birefringent
// rotations, the Pauli noise they induce, and the local-filter map on a
// two-qubit state.

#include <array>
#include <stdexcept>

#include "qfilter/qmat.hpp"
#include "qfilter/qstate.hpp"

namespace qfilter {

inline constexpr double kUnitTolerance = 1e-12;

/// Mode filter with magnitude gamma >= 0 along a unit Stokes direction.
/// The favored mode is the +orientation eigenstate; e.g. +z keeps |H> and
/// attenuates |V>.
class FilterElement {
 public:
  FilterElement(double magnitude, Vec3 orientation);

  /// Normalizes an arbitrary non-zero direction.
  static FilterElement along(double magnitude, Vec3 direction);
  /// gamma = 0 (identity); the orientation is irrelevant and set to +z.
  static FilterElement none() { return FilterElement(0.0, kAxisZ); }

  double magnitude() const { return magnitude_; }
  Vec3 orientation() const { return orientation_; }

 private:
  double magnitude_;
  Vec3 orientation_;
};

/// rho -> (1 - p/2) rho + (p/2) (n.sigma) rho (n.sigma) about a unit axis n.
class PauliNoiseSpec {
 public:
  PauliNoiseSpec(Vec3 axis, double p);

  /// sigma_1 noise: birefringence on the equator, perpendicular to the channel filter.
  static PauliNoiseSpec bit_flip(double p) { return {kAxisX, p}; }
  /// sigma_3 noise: birefringence at the pole, collinear with the channel filter.
  static PauliNoiseSpec phase_flip(double p) { return {kAxisZ, p}; }

  Vec3 axis() const { return axis_; }
  double p() const { return p_; }

 private:
  Vec3 axis_;
  double p_;
};

/// Fixed differential group delay (ps) about a unit axis, seen by a photon
/// with a Gaussian power spectrum of RMS angular width spectral_width (rad/ps).
class BirefringenceSpec {
 public:
  BirefringenceSpec(double dgd, Vec3 axis, double spectral_width);

  double dgd() const { return dgd_; }
  Vec3 axis() const { return axis_; }
  double spectral_width() const { return spectral_width_; }

 private:
  double dgd_;
  Vec3 axis_;
  double spectral_width_;
};

/// P = exp(gamma/2 * n.sigma) = cosh(gamma/2) I + sinh(gamma/2) n.sigma.
ComplexMatrix filter_operator(const FilterElement& f);

/// e^{-gamma/2} P: the passive version whose favored mode is transmitted with
/// probability 1.
ComplexMatrix passive_filter_operator(const FilterElement& f);

/// U = exp(-i angle/2 * n.sigma) = cos(angle/2) I - i sin(angle/2) n.sigma.
ComplexMatrix unitary_operator(Vec3 axis, double angle);

/// Single-qubit Pauli noise map applied to a 2x2 operator.
ComplexMatrix apply_pauli_map(const ComplexMatrix& rho, const PauliNoiseSpec& spec);

/// Choi state of the Pauli noise map: the map applied to qubit A of |phi+>.
DensityMatrix pauli_channel_state(const PauliNoiseSpec& spec);

/// Pauli noise equivalent to averaging the birefringent rotation over the
/// photon spectrum: p = 1 - exp(-(dgd * spectral_width)^2 / 2), same axis.
PauliNoiseSpec dephasing_from_spectrum(const BirefringenceSpec& spec);

/// Raised when the filters leave (numerically) nothing of the input.
class BlockedStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FilteredState {
  DensityMatrix state;
  /// Pair survival probability through the passive filters, in (0, 1].
  double transmission;
};

inline constexpr double kBlockedThreshold = 1e-14;

/// rho_f = K rho K^dagger / Tr[K rho K^dagger] with K = P_A x P_B.
FilteredState apply_filters(const DensityMatrix& rho_in, const FilterElement& filter_a, const FilterElement& filter_b);

/// Semi-axes of the image of the Bloch sphere under the noise map:
/// {along the noise axis, transverse, transverse}.
std::array<double, 3> bloch_ellipsoid(const PauliNoiseSpec& spec);

}  // namespace qfilter
