#pragma once

// Simulated two-photon polarization tomography.
//
// Each setting pairs one analyzer per photon; an analyzer projects onto the
// +n eigenstate of n.sigma. The standard scheme uses the six Pauli
// eigenstates on each side (36 settings), which lets every Stokes parameter
// S_jk = Tr[rho sigma_j x sigma_k] be estimated from count ratios within a
// basis pair.
//
// Counts are Poisson draws from a std::mt19937_64 seeded per setting with
// std::seed_seq{seed_lo, seed_hi, setting_index}. They are reproducible for a
// given seed and standard library implementation.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qfilter/qmat.hpp"
#include "qfilter/qstate.hpp"

namespace qfilter {

/// Dark-count probability per detector gate of the reference InGaAs detectors.
inline constexpr double kDefaultDarkProb = 4e-5;

struct MeasurementSetting {
  MeasurementSetting(Vec3 a, Vec3 b);

  Vec3 proj_a;
  Vec3 proj_b;

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
};

struct TomographyRecord {
  std::vector<MeasurementSetting> settings;
  /// Coincidences per setting. Sampled records hold integers; records built
  /// from exact expectations hold the expected values themselves.
  std::vector<double> counts;
  double exposure = 0.0;
  double dark_prob = 0.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when the record is inconsistent.
  void validate() const;
};

/// Raised when a basis pair collected no coincidences at all.
class InsufficientStatistics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All pairs from {+z, -z, +x, -x, +y, -y} x {same}, A-major; first is (+z, +z).
std::vector<MeasurementSetting> standard_settings();

/// (I + n.sigma) / 2
ComplexMatrix analyzer_projector(Vec3 n);

/// Tr[rho (Pi_a x Pi_b)]
double coincidence_probability(const DensityMatrix& rho, const MeasurementSetting& setting);

/// mu = exposure * (probability + dark_prob), count ~ Poisson(mu).
TomographyRecord simulate_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                 double exposure, double dark_prob, std::uint64_t seed);

/// Same record with every count replaced by its expectation mu.
TomographyRecord expected_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                 double exposure, double dark_prob);

/// Linear inversion from difference-over-sum Stokes estimates, then
/// projection onto the physical states by clipping negative eigenvalues and
/// renormalizing. Settings must be Pauli-axis analyzers covering all nine
/// basis pairs with both signs.
DensityMatrix reconstruct(const TomographyRecord& record);

}  // namespace qfilter
