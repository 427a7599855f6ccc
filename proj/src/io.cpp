#include "qfilter/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qfilter::io {

namespace {

Json vec_to_json(Vec3 v) { return Json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-component Stokes vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename F>
auto schema_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const DensityMatrix& rho) {
  Json out;
  out["basis"] = rho.dim() == 4 ? Json::array({"HH", "HV", "VH", "VV"}) : Json::array({"H", "V"});
  Json rows = Json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < rho.dim(); ++j) row.push_back(Json::array({rho(i, j).real(), rho(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  out["matrix"] = std::move(rows);
  return out;
}

DensityMatrix density_matrix_from_json(const Json& j) {
  return schema_guard("density matrix", [&] {
    const Json& rows = j.at("matrix");
    const std::size_t n = rows.size();
    if (n != 2 && n != 4) throw std::invalid_argument("density matrix must be 2x2 or 4x4");
    if (j.contains("basis") && j.at("basis").size() != n) throw std::invalid_argument("basis length mismatch");
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) throw std::invalid_argument("density matrix rows must be square");
      for (std::size_t c = 0; c < n; ++c) {
        const Json& z = rows[r][c];
        if (!z.is_array() || z.size() != 2) throw std::invalid_argument("entries must be [re, im] pairs");
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    return DensityMatrix::from_matrix(m);
  });
}

Json to_json(const TomographyRecord& record) {
  Json out;
  Json settings = Json::array();
  for (const auto& s : record.settings) settings.push_back(Json::array({vec_to_json(s.proj_a), vec_to_json(s.proj_b)}));
  out["settings"] = std::move(settings);
  Json counts = Json::array();
  for (double c : record.counts) {
    // Integral counts are written as integers.
    if (c == std::floor(c) && c < 9.0e15) {
      counts.push_back(static_cast<std::int64_t>(c));
    } else {
      counts.push_back(c);
    }
  }
  out["counts"] = std::move(counts);
  out["exposure"] = record.exposure;
  out["dark_prob"] = record.dark_prob;
  out["seed"] = record.seed;
  return out;
}

TomographyRecord record_from_json(const Json& j) {
  return schema_guard("tomography record", [&] {
    TomographyRecord rec;
    for (const Json& s : j.at("settings")) {
      if (!s.is_array() || s.size() != 2) throw std::invalid_argument("each setting must be a pair of Stokes vectors");
      rec.settings.emplace_back(vec_from_json(s[0]), vec_from_json(s[1]));
    }
    for (const Json& c : j.at("counts")) rec.counts.push_back(c.get<double>());
    rec.exposure = j.at("exposure").get<double>();
    rec.dark_prob = j.at("dark_prob").get<double>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.validate();
    return rec;
  });
}

Json to_json(const SweepPoint& p) {
  Json out;
  out["gamma_a"] = p.gamma_a;
  out["gamma_b"] = p.gamma_b;
  out["strategy"] = std::string(to_string(p.strategy));
  out["mutual_info_bits"] = p.mutual_info;
  out["concurrence"] = p.concurrence;
  out["transmission"] = p.transmission;
  return out;
}

Json to_json(std::span<const SweepPoint> points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(to_json(p));
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string to_csv(std::span<const SweepPoint> points) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& p : points) {
    out += format_number(p.gamma_a);
    out += ',';
    out += format_number(p.gamma_b);
    out += ',';
    out += to_string(p.strategy);
    out += ',';
    out += format_number(p.mutual_info);
    out += ',';
    out += format_number(p.concurrence);
    out += ',';
    out += format_number(p.transmission);
    out += '\n';
  }
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace qfilter::io
