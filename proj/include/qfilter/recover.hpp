#pragma once

// Recovering entanglement with a compensating filter on qubit B.
//
// For a state with maximally mixed marginals and correlation matrix T, local
// filters (gA, a) on A and (gB, b) on B produce concurrence
//
//   C = C0 / (cosh gA cosh gB + (T a).b sinh gA sinh gB)
//
// which is maximized over b by b = -T a / |T a| and over gB by
// gB = atanh(|T a| tanh gA).
//
// Geometry used by the sweeps: the channel filter on A always points along +z
// (|H> of photon A is defined by it). Bit-flip noise then has its axis on the
// equator (x) and phase-flip noise at the pole (z).

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfilter/channel.hpp"
#include "qfilter/qstate.hpp"

namespace qfilter {

inline constexpr Vec3 kChannelFilterAxis = kAxisZ;

/// Closed-form concurrence after local filtering. Requires C0 in [0, 1];
/// throws std::domain_error when the denominator is not positive.
double concurrence_after_filtering(double c0, const CorrelationMatrix& t, const FilterElement& filter_a,
                                   const FilterElement& filter_b);

/// b = -T a / |T a|. Throws std::domain_error when |T a| < 1e-12.
Vec3 optimal_orientation(const CorrelationMatrix& t, Vec3 gamma_a_hat);

/// atanh(|T a| tanh gA). Throws std::invalid_argument for gA < 0 or
/// |T a| > 1 + 1e-9.
double optimal_magnitude(const CorrelationMatrix& t, Vec3 gamma_a_hat, double gamma_a);

struct RecoveryPlan {
  double gamma_b_opt = 0.0;
  Vec3 orientation_b = -kChannelFilterAxis;
  double predicted_concurrence = 0.0;
  /// Set for separable inputs (C0 = 0): no filter can add entanglement.
  bool nothing_to_recover = false;
};

/// Optimal compensating filter for a state with maximally mixed marginals.
RecoveryPlan plan_recovery(const DensityMatrix& rho, const FilterElement& filter_a);

enum class Strategy { None, Match, Optimal, Ratio };

std::string_view to_string(Strategy s);
/// "none", "match" or "optimal"; throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view name);

struct SweepPoint {
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  Strategy strategy = Strategy::None;
  double mutual_info = 0.0;
  double concurrence = 0.0;
  double transmission = 1.0;
};

/// One point per gA: noise state, compensating filter chosen by `strategy`,
/// filtered figures of merit. Mutual information is scaled by `normalization`.
std::vector<SweepPoint> sweep(const PauliNoiseSpec& noise, std::span<const double> gamma_a_grid, Strategy strategy,
                              double normalization = 1.0);

/// gB = ratio * gA with the optimal orientation for each ratio. Points carry
/// Strategy::Ratio and unnormalized mutual information.
std::vector<SweepPoint> ratio_scan(const PauliNoiseSpec& noise, double gamma_a, std::span<const double> ratio_grid);

enum class FigureOfMerit { MutualInformation, Concurrence };

/// Index of the first maximum of the chosen figure over the points.
std::size_t argmax(std::span<const SweepPoint> points, FigureOfMerit figure);

/// concurrence(rho_f) * transmission.
double average_entanglement(const DensityMatrix& rho_in, const FilterElement& filter_a, const FilterElement& filter_b);

/// n evenly spaced values over [lo, hi], n >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qfilter
