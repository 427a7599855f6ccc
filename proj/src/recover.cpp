#include "qfilter/recover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfilter {

namespace {

constexpr double kDegenerate = 1e-12;

// |T a|, snapped to 1 when it differs from 1 only by rounding.
double correlation_strength(const CorrelationMatrix& t, Vec3 a) {
  const double c = norm(t.propagate(a));
  if (c > 1.0 + 1e-9) {
    throw std::invalid_argument("|T a| = " + std::to_string(c) + " exceeds 1; not a valid correlation matrix");
  }
  return std::abs(c - 1.0) <= 1e-12 ? 1.0 : std::min(c, 1.0);
}

Vec3 orientation_or_fallback(const CorrelationMatrix& t, Vec3 a) {
  return norm(t.propagate(a)) < kDegenerate ? -a : optimal_orientation(t, a);
}

SweepPoint evaluate(const DensityMatrix& rho, double gamma_a, double gamma_b, Vec3 orientation_b, Strategy strategy,
                    double normalization) {
  const FilterElement fa(gamma_a, kChannelFilterAxis);
  const FilterElement fb(gamma_b, orientation_b);
  const auto filtered = apply_filters(rho, fa, fb);
  SweepPoint pt;
  pt.gamma_a = gamma_a;
  pt.gamma_b = gamma_b;
  pt.strategy = strategy;
  pt.mutual_info = normalization * mutual_information(filtered.state);
  pt.concurrence = concurrence(filtered.state);
  pt.transmission = filtered.transmission;
  return pt;
}

}  // namespace

double concurrence_after_filtering(double c0, const CorrelationMatrix& t, const FilterElement& filter_a,
                                   const FilterElement& filter_b) {
  if (!(c0 >= 0.0 && c0 <= 1.0)) throw std::invalid_argument("C0 must lie in [0, 1]");
  const double ga = filter_a.magnitude();
  const double gb = filter_b.magnitude();
  const double denom = std::cosh(ga) * std::cosh(gb) +
                       t.form(filter_a.orientation(), filter_b.orientation()) * std::sinh(ga) * std::sinh(gb);
  if (!(denom > 0.0)) {
    throw std::domain_error("unphysical filter configuration (denominator " + std::to_string(denom) + ")");
  }
  if (c0 == 0.0) return 0.0;
  return c0 / denom;
}

Vec3 optimal_orientation(const CorrelationMatrix& t, Vec3 gamma_a_hat) {
  const Vec3 v = t.propagate(gamma_a_hat);
  const double n = norm(v);
  if (n < kDegenerate) {
    throw std::domain_error("T a vanishes; the compensating orientation is undefined");
  }
  // + 0.0 turns -0.0 into 0.0 for stable output.
  return Vec3{-v.x / n + 0.0, -v.y / n + 0.0, -v.z / n + 0.0};
}

double optimal_magnitude(const CorrelationMatrix& t, Vec3 gamma_a_hat, double gamma_a) {
  if (!(gamma_a >= 0.0) || !std::isfinite(gamma_a)) throw std::invalid_argument("gamma_a must be finite and >= 0");
  const double c = correlation_strength(t, gamma_a_hat);
  if (c == 1.0) return gamma_a;
  return std::atanh(c * std::tanh(gamma_a));
}

RecoveryPlan plan_recovery(const DensityMatrix& rho, const FilterElement& filter_a) {
  const double c0 = concurrence(rho);
  const CorrelationMatrix t = correlation_matrix(rho);
  RecoveryPlan plan;
  plan.orientation_b = orientation_or_fallback(t, filter_a.orientation());
  if (c0 < kDegenerate) {
    plan.nothing_to_recover = true;
    return plan;
  }
  plan.gamma_b_opt = optimal_magnitude(t, filter_a.orientation(), filter_a.magnitude());
  plan.predicted_concurrence =
      concurrence_after_filtering(c0, t, filter_a, FilterElement(plan.gamma_b_opt, plan.orientation_b));
  return plan;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::Match: return "match";
    case Strategy::Optimal: return "optimal";
    case Strategy::Ratio: return "ratio";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "none") return Strategy::None;
  if (name == "match") return Strategy::Match;
  if (name == "optimal") return Strategy::Optimal;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (expected none, match or optimal)");
}

std::vector<SweepPoint> sweep(const PauliNoiseSpec& noise, std::span<const double> gamma_a_grid, Strategy strategy,
                              double normalization) {
  if (!(normalization > 0.0 && normalization <= 1.0)) throw std::invalid_argument("normalization must lie in (0, 1]");
  if (strategy == Strategy::Ratio) throw std::invalid_argument("use ratio_scan for fixed-ratio scans");
  const DensityMatrix rho = pauli_channel_state(noise);
  const CorrelationMatrix t = correlation_matrix(rho);
  const Vec3 orientation = orientation_or_fallback(t, kChannelFilterAxis);

  std::vector<SweepPoint> out;
  out.reserve(gamma_a_grid.size());
  for (double ga : gamma_a_grid) {
    if (!(ga >= 0.0)) throw std::invalid_argument("gamma_a grid values must be >= 0");
    double gb = 0.0;
    switch (strategy) {
      case Strategy::None: break;
      case Strategy::Match: gb = ga; break;
      case Strategy::Optimal: gb = plan_recovery(rho, FilterElement(ga, kChannelFilterAxis)).gamma_b_opt; break;
      case Strategy::Ratio: break;
    }
    out.push_back(evaluate(rho, ga, gb, orientation, strategy, normalization));
  }
  return out;
}

std::vector<SweepPoint> ratio_scan(const PauliNoiseSpec& noise, double gamma_a, std::span<const double> ratio_grid) {
  if (!(gamma_a > 0.0)) throw std::invalid_argument("ratio_scan needs gamma_a > 0");
  const DensityMatrix rho = pauli_channel_state(noise);
  const Vec3 orientation = orientation_or_fallback(correlation_matrix(rho), kChannelFilterAxis);
  std::vector<SweepPoint> out;
  out.reserve(ratio_grid.size());
  for (double r : ratio_grid) {
    if (!(r >= 0.0)) throw std::invalid_argument("ratios must be >= 0");
    out.push_back(evaluate(rho, gamma_a, r * gamma_a, orientation, Strategy::Ratio, 1.0));
  }
  return out;
}

std::size_t argmax(std::span<const SweepPoint> points, FigureOfMerit figure) {
  if (points.empty()) throw std::invalid_argument("argmax of an empty scan");
  auto value = [figure](const SweepPoint& p) {
    return figure == FigureOfMerit::MutualInformation ? p.mutual_info : p.concurrence;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (value(points[i]) > value(points[best])) best = i;
  }
  return best;
}

double average_entanglement(const DensityMatrix& rho_in, const FilterElement& filter_a, const FilterElement& filter_b) {
  const auto filtered = apply_filters(rho_in, filter_a, filter_b);
  return concurrence(filtered.state) * filtered.transmission;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace needs at least 2 points");
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace qfilter
