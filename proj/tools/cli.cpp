#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qfilter/channel.hpp"
#include "qfilter/io.hpp"
#include "qfilter/qstate.hpp"
#include "qfilter/recover.hpp"
#include "qfilter/tomo.hpp"

namespace qfilter::cli {

namespace {

using io::Json;

const std::map<std::string, std::string> kNoiseNames{{"bitflip", "bitflip"}, {"phaseflip", "phaseflip"}};

PauliNoiseSpec make_noise(const std::string& type, double p) {
  if (type == "bitflip") return PauliNoiseSpec::bit_flip(p);
  if (type == "phaseflip") return PauliNoiseSpec::phase_flip(p);
  throw std::invalid_argument("unknown noise type '" + type + "'");
}

void write_artifact(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << content;
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

struct CurvesOptions {
  std::string noise = "bitflip";
  double p = 0.33;
  double gamma_a_max = 1.2;
  std::size_t steps = 60;
  std::string strategy = "none";
  double normalization = 0.9;
  std::string output = "-";
  std::string format = "csv";
};

struct InsetOptions {
  std::vector<double> gamma_a{0.820, 0.857, 0.869};
  double ratio_max = 2.0;
  std::size_t steps = 2001;
  std::string noise = "bitflip";
  double p = 0.33;
  double normalization = 0.9;
  std::string output = "-";
  std::string format = "csv";
};

struct OptimizeOptions {
  std::string noise = "bitflip";
  double p = 0.33;
  double gamma_a = 0.857;
};

struct SimulateOptions {
  std::string state = "phi+";
  double p = 0.33;
  double exposure = 1e5;
  double dark_prob = kDefaultDarkProb;
  std::uint64_t seed = 0;
  bool exact = false;
  std::string output = "-";
};

struct ReconstructOptions {
  std::string input;
  std::string output = "-";
  std::string target = "phi+";
};

void cmd_curves(const CurvesOptions& o, std::ostream& out) {
  const auto grid = linspace(0.0, o.gamma_a_max, o.steps);
  const auto points = sweep(make_noise(o.noise, o.p), grid, parse_strategy(o.strategy), o.normalization);
  const std::string content = o.format == "json" ? io::to_json(points).dump(2) + "\n" : io::to_csv(points);
  write_artifact(o.output, content, out);
}

void cmd_inset(const InsetOptions& o, std::ostream& out) {
  const PauliNoiseSpec noise = make_noise(o.noise, o.p);
  const auto ratios = linspace(0.0, o.ratio_max, o.steps);
  const DensityMatrix rho = pauli_channel_state(noise);

  Json series = Json::array();
  std::string csv = "gamma_a,ratio,gamma_b,mutual_info_bits,concurrence,transmission\n";
  std::string summary;
  for (double ga : o.gamma_a) {
    if (!(ga > 0.0)) throw std::invalid_argument("inset gamma_a values must be > 0");
    auto points = ratio_scan(noise, ga, ratios);
    for (auto& pt : points) pt.mutual_info *= o.normalization;
    const std::size_t best_mi = argmax(points, FigureOfMerit::MutualInformation);
    const std::size_t best_c = argmax(points, FigureOfMerit::Concurrence);
    const double closed_form = plan_recovery(rho, FilterElement(ga, kChannelFilterAxis)).gamma_b_opt / ga;

    Json jp = Json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      csv += io::format_number(ga) + ',' + io::format_number(ratios[i]) + ',' + io::format_number(pt.gamma_b) + ',' +
             io::format_number(pt.mutual_info) + ',' + io::format_number(pt.concurrence) + ',' +
             io::format_number(pt.transmission) + '\n';
      jp.push_back({{"ratio", ratios[i]},
                    {"gamma_b", pt.gamma_b},
                    {"mutual_info_bits", pt.mutual_info},
                    {"concurrence", pt.concurrence},
                    {"transmission", pt.transmission}});
    }
    summary += "# argmax gamma_a=" + io::format_number(ga) + " ratio=" + io::format_number(ratios[best_mi]) +
               " mutual_info_bits=" + io::format_number(points[best_mi].mutual_info) +
               " concurrence_ratio=" + io::format_number(ratios[best_c]) +
               " closed_form_ratio=" + io::format_number(closed_form) + '\n';
    series.push_back({{"gamma_a", ga},
                      {"argmax_ratio", ratios[best_mi]},
                      {"argmax_concurrence_ratio", ratios[best_c]},
                      {"closed_form_ratio", closed_form},
                      {"points", std::move(jp)}});
  }

  std::string content;
  if (o.format == "json") {
    Json doc;
    doc["noise"] = o.noise;
    doc["p"] = o.p;
    doc["normalization"] = o.normalization;
    doc["series"] = std::move(series);
    content = doc.dump(2) + "\n";
  } else {
    content = csv + summary;
  }
  write_artifact(o.output, content, out);
}

void cmd_optimize(const OptimizeOptions& o, std::ostream& out) {
  const DensityMatrix rho = pauli_channel_state(make_noise(o.noise, o.p));
  const FilterElement fa(o.gamma_a, kChannelFilterAxis);
  const RecoveryPlan plan = plan_recovery(rho, fa);
  const auto filtered = apply_filters(rho, fa, FilterElement(plan.gamma_b_opt, plan.orientation_b));

  Json doc;
  doc["noise"] = o.noise;
  doc["p"] = o.p;
  doc["gamma_a"] = o.gamma_a;
  doc["gamma_b_opt"] = plan.gamma_b_opt;
  doc["ratio"] = o.gamma_a > 0.0 ? Json(plan.gamma_b_opt / o.gamma_a) : Json(nullptr);
  doc["orientation_b"] = Json::array({plan.orientation_b.x, plan.orientation_b.y, plan.orientation_b.z});
  doc["predicted_concurrence"] = plan.predicted_concurrence;
  doc["predicted_mutual_info_bits"] = mutual_information(filtered.state);
  doc["transmission"] = filtered.transmission;
  doc["nothing_to_recover"] = plan.nothing_to_recover;
  out << doc.dump(2) << '\n';
}

DensityMatrix named_state(const std::string& name, double p) {
  if (name == "bitflip") return pauli_channel_state(PauliNoiseSpec::bit_flip(p));
  if (name == "phaseflip") return pauli_channel_state(PauliNoiseSpec::phase_flip(p));
  return bell_state(parse_bell_state(name));
}

void cmd_tomo_simulate(const SimulateOptions& o, std::ostream& out) {
  const DensityMatrix rho = named_state(o.state, o.p);
  const auto settings = standard_settings();
  const TomographyRecord rec = o.exact ? expected_counts(rho, settings, o.exposure, o.dark_prob)
                                       : simulate_counts(rho, settings, o.exposure, o.dark_prob, o.seed);
  write_artifact(o.output, io::to_json(rec).dump(2) + "\n", out);
}

void cmd_tomo_reconstruct(const ReconstructOptions& o, std::ostream& out) {
  const TomographyRecord rec = io::record_from_json(io::parse_json(read_file(o.input)));
  const DensityMatrix rho = reconstruct(rec);
  const BellState target = parse_bell_state(o.target);
  const auto bell = bell_diagonal_weights(rho);

  Json doc;
  doc["density_matrix"] = io::to_json(rho);
  doc["concurrence"] = concurrence(rho);
  doc["mutual_info_bits"] = mutual_information(rho);
  doc["bell_weights"] = {{"phi+", bell.weights.phi_plus},
                         {"psi+", bell.weights.psi_plus},
                         {"phi-", bell.weights.phi_minus},
                         {"psi-", bell.weights.psi_minus}};
  doc["bell_diagonal"] = bell.bell_diagonal;
  doc["target"] = std::string(to_string(target));
  doc["fidelity"] = fidelity_pure(rho, bell_state(target));
  write_artifact(o.output, doc.dump(2) + "\n", out);
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-filter recovery of entanglement through a noisy polarization channel"};
  app.name(argv.empty() ? "qfilter" : argv.front());
  app.require_subcommand(1);

  const auto noise_check = CLI::IsMember(kNoiseNames);

  CurvesOptions curves;
  auto* c = app.add_subcommand("curves", "Mutual information vs channel filter strength");
  c->add_option("--noise", curves.noise, "bitflip or phaseflip")->check(noise_check)->capture_default_str();
  c->add_option("--p", curves.p, "noise weight")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  c->add_option("--gamma-a-max", curves.gamma_a_max, "largest channel filter magnitude")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c->add_option("--steps", curves.steps, "grid points over [0, gamma-a-max]")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
      ->capture_default_str();
  c->add_option("--strategy", curves.strategy, "none, match or optimal")
      ->check(CLI::IsMember({"none", "match", "optimal"}))
      ->capture_default_str();
  c->add_option("--normalization", curves.normalization, "multiplier on mutual information")
      ->check(CLI::Range(0.0, 1.0) & CLI::PositiveNumber)
      ->capture_default_str();
  c->add_option("-o,--output", curves.output, "output path, '-' for stdout")->capture_default_str();
  c->add_option("--format", curves.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  InsetOptions inset;
  auto* in = app.add_subcommand("inset", "Mutual information vs gamma_B / gamma_A");
  in->add_option("--gamma-a", inset.gamma_a, "channel filter magnitudes")->delimiter(',')->capture_default_str();
  in->add_option("--ratio-max", inset.ratio_max)->check(CLI::PositiveNumber)->capture_default_str();
  in->add_option("--steps", inset.steps, "grid points over [0, ratio-max]")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
      ->capture_default_str();
  in->add_option("--noise", inset.noise)->check(noise_check)->capture_default_str();
  in->add_option("--p", inset.p)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  in->add_option("--normalization", inset.normalization)
      ->check(CLI::Range(0.0, 1.0) & CLI::PositiveNumber)
      ->capture_default_str();
  in->add_option("-o,--output", inset.output)->capture_default_str();
  in->add_option("--format", inset.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  OptimizeOptions opt;
  auto* op = app.add_subcommand("optimize", "Optimal compensating filter as JSON");
  op->add_option("--noise", opt.noise)->check(noise_check)->capture_default_str();
  op->add_option("--p", opt.p)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  op->add_option("--gamma-a", opt.gamma_a)->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* tomo = app.add_subcommand("tomo", "Simulated state tomography");
  tomo->require_subcommand(1);

  SimulateOptions sim;
  auto* ts = tomo->add_subcommand("simulate", "Write a tomography record for a named state");
  ts->add_option("--state", sim.state, "phi+, phi-, psi+, psi-, bitflip or phaseflip")
      ->check(CLI::IsMember({"phi+", "phi-", "psi+", "psi-", "bitflip", "phaseflip"}))
      ->capture_default_str();
  ts->add_option("--p", sim.p)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  ts->add_option("--exposure", sim.exposure, "expected pairs per setting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ts->add_option("--dark-prob", sim.dark_prob)->check(CLI::NonNegativeNumber)->capture_default_str();
  ts->add_option("--seed", sim.seed)->capture_default_str();
  ts->add_flag("--exact", sim.exact, "store expected counts instead of Poisson draws");
  ts->add_option("-o,--output", sim.output)->capture_default_str();

  ReconstructOptions rec;
  auto* tr = tomo->add_subcommand("reconstruct", "Reconstruct a density matrix from a record");
  tr->add_option("-i,--input", rec.input, "tomography record JSON")->required();
  tr->add_option("-o,--output", rec.output)->capture_default_str();
  tr->add_option("--target", rec.target, "Bell state for the reported fidelity")
      ->check(CLI::IsMember({"phi+", "phi-", "psi+", "psi-"}))
      ->capture_default_str();

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) cmd_curves(curves, out);
    if (in->parsed()) cmd_inset(inset, out);
    if (op->parsed()) cmd_optimize(opt, out);
    if (ts->parsed()) cmd_tomo_simulate(sim, out);
    if (tr->parsed()) cmd_tomo_reconstruct(rec, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace qfilter::cli
