#pragma once

// File formats shared by the library and the command-line tool.
//
// Density matrix:
//   {"basis": ["HH","HV","VH","VV"], "matrix": [[[re, im], ...], ...]}
//   (2x2 states use "basis": ["H","V"])
// Tomography record:
//   {"settings": [[[ax,ay,az],[bx,by,bz]], ...], "counts": [...],
//    "exposure": N, "dark_prob": d, "seed": s}
// Sweep CSV header:
//   gamma_a,gamma_b,strategy,mutual_info_bits,concurrence,transmission

#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qfilter/qstate.hpp"
#include "qfilter/recover.hpp"
#include "qfilter/tomo.hpp"

namespace qfilter::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSweepCsvHeader = "gamma_a,gamma_b,strategy,mutual_info_bits,concurrence,transmission";

Json to_json(const DensityMatrix& rho);
/// Throws std::invalid_argument on schema violations or an invalid state.
DensityMatrix density_matrix_from_json(const Json& j);

Json to_json(const TomographyRecord& record);
TomographyRecord record_from_json(const Json& j);

Json to_json(const SweepPoint& point);
Json to_json(std::span<const SweepPoint> points);

/// Shortest round-trip decimal form of a double.
std::string format_number(double x);

/// Header line plus one row per point, '\n' terminated.
std::string to_csv(std::span<const SweepPoint> points);

/// Parses a document, rethrowing parser errors as std::invalid_argument.
Json parse_json(std::string_view text);

}  // namespace qfilter::io
