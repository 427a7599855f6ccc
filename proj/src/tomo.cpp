#include "qfilter/tomo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

namespace qfilter {

namespace {

struct AxisSign {
  int axis;  // 0 = x, 1 = y, 2 = z
  int sign;  // +1 / -1
};

AxisSign classify(Vec3 n) {
  for (int j = 0; j < 3; ++j) {
    const double c = n[static_cast<std::size_t>(j)];
    if (std::abs(std::abs(c) - 1.0) < 1e-9) return {j, c > 0.0 ? 1 : -1};
  }
  throw std::invalid_argument("reconstruct supports Pauli-axis analyzers only");
}

void require_unit_analyzer(Vec3 n) {
  if (std::abs(norm(n) - 1.0) > 1e-12) throw std::invalid_argument("analyzer direction must be a unit vector");
}

}  // namespace

MeasurementSetting::MeasurementSetting(Vec3 a, Vec3 b) : proj_a(a), proj_b(b) {
  require_unit_analyzer(a);
  require_unit_analyzer(b);
}

void TomographyRecord::validate() const {
  if (counts.size() != settings.size()) {
    throw std::invalid_argument("record has " + std::to_string(counts.size()) + " counts for " +
                                std::to_string(settings.size()) + " settings");
  }
  for (double c : counts) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("counts must be finite and non-negative");
  }
  if (!(exposure > 0.0)) throw std::invalid_argument("exposure must be > 0");
  if (!(dark_prob >= 0.0)) throw std::invalid_argument("dark_prob must be >= 0");
}

std::vector<MeasurementSetting> standard_settings() {
  const std::array<Vec3, 6> states{kAxisZ, -kAxisZ, kAxisX, -kAxisX, kAxisY, -kAxisY};
  std::vector<MeasurementSetting> out;
  out.reserve(36);
  for (Vec3 a : states)
    for (Vec3 b : states) out.emplace_back(a, b);
  return out;
}

ComplexMatrix analyzer_projector(Vec3 n) { return 0.5 * (ComplexMatrix::identity(2) + stokes_operator(n)); }

double coincidence_probability(const DensityMatrix& rho, const MeasurementSetting& setting) {
  if (rho.dim() != 4) throw std::invalid_argument("coincidence_probability expects a two-qubit state");
  const ComplexMatrix proj = kron(analyzer_projector(setting.proj_a), analyzer_projector(setting.proj_b));
  return std::max(0.0, (rho.matrix() * proj).trace().real());
}

TomographyRecord expected_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                 double exposure, double dark_prob) {
  TomographyRecord rec;
  rec.settings = settings;
  rec.exposure = exposure;
  rec.dark_prob = dark_prob;
  rec.counts.reserve(settings.size());
  for (const auto& s : settings) rec.counts.push_back(exposure * (coincidence_probability(rho, s) + dark_prob));
  rec.validate();
  return rec;
}

TomographyRecord simulate_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                 double exposure, double dark_prob, std::uint64_t seed) {
  TomographyRecord rec = expected_counts(rho, settings, exposure, dark_prob);
  rec.seed = seed;
  for (std::size_t i = 0; i < rec.counts.size(); ++i) {
    const double mu = rec.counts[i];
    if (mu <= 0.0) {
      rec.counts[i] = 0.0;
      continue;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::poisson_distribution<long long> draw(mu);
    rec.counts[i] = static_cast<double>(draw(rng));
  }
  return rec;
}

DensityMatrix reconstruct(const TomographyRecord& record) {
  record.validate();

  // cells[j][k][a][b]: counts for analyzer axis j (sign index a) on A and
  // axis k (sign index b) on B; sign index 0 is +, 1 is -.
  double cells[3][3][2][2] = {};
  bool seen[3][3][2][2] = {};
  for (std::size_t i = 0; i < record.settings.size(); ++i) {
    const AxisSign a = classify(record.settings[i].proj_a);
    const AxisSign b = classify(record.settings[i].proj_b);
    const int sa = a.sign > 0 ? 0 : 1;
    const int sb = b.sign > 0 ? 0 : 1;
    cells[a.axis][b.axis][sa][sb] += record.counts[i];
    seen[a.axis][b.axis][sa][sb] = true;
  }

  double stokes[4][4] = {};
  stokes[0][0] = 1.0;
  static const char* const kAxisName = "xyz";
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      double total = 0.0;
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
          if (!seen[j][k][sa][sb]) {
            throw std::invalid_argument(std::string("settings do not cover the ") + kAxisName[j] + kAxisName[k] +
                                        " basis pair with both analyzer signs");
          }
          total += cells[j][k][sa][sb];
        }
      if (total <= 0.0) {
        throw InsufficientStatistics(std::string("no coincidences recorded in the ") + kAxisName[j] + kAxisName[k] +
                                     " basis pair");
      }
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
          const double prob = cells[j][k][sa][sb] / total;
          const double ea = sa == 0 ? 1.0 : -1.0;
          const double eb = sb == 0 ? 1.0 : -1.0;
          stokes[j + 1][k + 1] += ea * eb * prob;
          stokes[j + 1][0] += ea * prob / 3.0;
          stokes[0][k + 1] += eb * prob / 3.0;
        }
    }
  }

  ComplexMatrix lin(4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      if (stokes[j][k] != 0.0) lin += (0.25 * stokes[j][k]) * kron(pauli(j), pauli(k));
    }
  lin = 0.5 * (lin + lin.adjoint());

  const auto eig = hermitian_eig(lin);
  double kept = 0.0;
  for (double lambda : eig.eigenvalues) kept += std::max(lambda, 0.0);
  if (!(kept > 0.0)) throw InsufficientStatistics("reconstructed operator has no positive spectrum");
  ComplexMatrix physical = apply_spectral(eig, [kept](double lambda) { return std::max(lambda, 0.0) / kept; });
  physical = 0.5 * (physical + physical.adjoint());
  return DensityMatrix::from_matrix(physical);
}

}  // namespace qfilter
