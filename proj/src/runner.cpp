#include "ifm/runner.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "ifm/oscillator_well.hpp"
#include "ifm/shadow_scatter.hpp"
#include "ifm/trigger_model.hpp"
#include "ifm/version.hpp"

namespace ifm {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

struct CsvBuilder {
  std::string text;

  void row_metric(const std::string& name, double value) {
    text += name;
    text += ',';
    text += csv_double(value);
    text += '\n';
  }
};

ordered_json echo_mz(const MzConfig& cfg) {
  return {{"R", cfg.reflectivity},
          {"bomb", cfg.bomb_present},
          {"calibration_phase", cfg.calibration_phase}};
}

struct KindOutput {
  ordered_json config_echo;
  ordered_json results;
  std::vector<std::pair<std::string, std::string>> files;  // name -> bytes
};

KindOutput run_mz(const MzConfig& cfg) {
  const OutcomeDistribution dist = outcome_distribution(cfg);
  KindOutput out;
  out.config_echo = echo_mz(cfg);
  out.results = {{"p_bright", dist.p_bright},
                 {"p_dark", dist.p_dark},
                 {"p_absorbed", dist.p_absorbed}};
  std::string csv = "outcome,probability\n";
  csv += "bright," + csv_double(dist.p_bright) + "\n";
  csv += "dark," + csv_double(dist.p_dark) + "\n";
  csv += "absorbed," + csv_double(dist.p_absorbed) + "\n";
  out.files.emplace_back("outcomes.csv", std::move(csv));
  return out;
}

KindOutput run_trials_kind(const TrialsParams& params, std::uint64_t seed) {
  const TrialTally tally =
      run_trials(params.mz, params.n_trials, seed, thread_cap_from_env());
  const double n = static_cast<double>(tally.n_trials);
  KindOutput out;
  out.config_echo = echo_mz(params.mz);
  out.config_echo["n"] = params.n_trials;
  out.results = {{"bright", tally.bright},
                 {"dark", tally.dark},
                 {"absorbed", tally.absorbed},
                 {"freq_bright", static_cast<double>(tally.bright) / n},
                 {"freq_dark", static_cast<double>(tally.dark) / n},
                 {"freq_absorbed", static_cast<double>(tally.absorbed) / n}};
  std::string csv = "outcome,count,frequency\n";
  csv += "bright," + std::to_string(tally.bright) + "," +
         csv_double(static_cast<double>(tally.bright) / n) + "\n";
  csv += "dark," + std::to_string(tally.dark) + "," +
         csv_double(static_cast<double>(tally.dark) / n) + "\n";
  csv += "absorbed," + std::to_string(tally.absorbed) + "," +
         csv_double(static_cast<double>(tally.absorbed) / n) + "\n";
  out.files.emplace_back("tallies.csv", std::move(csv));
  return out;
}

KindOutput run_strategy(const StrategyParams& params) {
  MzConfig cfg;
  cfg.reflectivity = params.reflectivity;
  cfg.bomb_present = true;
  const StrategyReport report = sequential_strategy(cfg, params.max_photons);
  KindOutput out;
  out.config_echo = {{"R", params.reflectivity},
                     {"max_photons", params.max_photons}};
  out.results = {{"p_detect", report.p_detect},
                 {"p_explode", report.p_explode},
                 {"p_give_up", report.p_give_up},
                 {"expected_photons_sent", report.expected_photons_sent},
                 {"efficiency", efficiency(params.reflectivity)}};
  CsvBuilder csv;
  csv.text = "metric,value\n";
  csv.row_metric("p_detect", report.p_detect);
  csv.row_metric("p_explode", report.p_explode);
  csv.row_metric("p_give_up", report.p_give_up);
  csv.row_metric("expected_photons_sent", report.expected_photons_sent);
  out.files.emplace_back("strategy.csv", std::move(csv.text));
  return out;
}

KindOutput run_trigger(const TriggerParams& params) {
  const BombTrigger trigger(params.delta_x, params.p_th);
  const DiscriminationReport report = kick_discrimination(trigger, params.kick);
  const double q_min = minimum_detectable_kick(trigger, params.error_budget);
  KindOutput out;
  out.config_echo = {{"delta_x", params.delta_x},
                     {"p_th", params.p_th},
                     {"kick", params.kick},
                     {"error_budget", params.error_budget}};
  out.results = {{"sigma_p", trigger.sigma_p},
                 {"delta_p", trigger.delta_p},
                 {"false_trigger_two_sided", false_trigger_probability(trigger)},
                 {"false_trigger", report.false_trigger},
                 {"miss", report.miss},
                 {"min_error", report.min_error},
                 {"min_detectable_kick", q_min},
                 {"min_kick_times_delta_x", q_min * params.delta_x}};
  CsvBuilder csv;
  csv.text = "metric,value\n";
  csv.row_metric("sigma_p", trigger.sigma_p);
  csv.row_metric("delta_p", trigger.delta_p);
  csv.row_metric("false_trigger_two_sided", false_trigger_probability(trigger));
  csv.row_metric("false_trigger", report.false_trigger);
  csv.row_metric("miss", report.miss);
  csv.row_metric("min_error", report.min_error);
  csv.row_metric("min_detectable_kick", q_min);
  csv.row_metric("min_kick_times_delta_x", q_min * params.delta_x);
  out.files.emplace_back("trigger.csv", std::move(csv.text));
  return out;
}

KindOutput run_scatter(const ScatterParams& params) {
  const ApertureGrid grid(params.width, params.n_points, params.strip_width,
                          params.k_in);
  const AngularSpectrum spectrum = angular_spectrum(grid);
  const MomentumStats stats =
      momentum_transfer_stats(spectrum, grid.strip_width_eff);
  // The strip is also the position uncertainty needed to park the object
  // in the beam, so the classifying trigger uses delta_x = strip width.
  const BombTrigger trigger(grid.strip_width_eff, params.p_th);
  const ScatterOutcome outcome = classify_outcomes(spectrum, trigger);

  KindOutput out;
  out.config_echo = {{"width", params.width},
                     {"n_points", params.n_points},
                     {"strip_width", params.strip_width},
                     {"k_in", params.k_in},
                     {"p_th", params.p_th}};
  out.results = {{"strip_cells", grid.strip_cells},
                 {"strip_width_eff", grid.strip_width_eff},
                 {"p_absorbed", spectrum.p_absorbed},
                 {"p_forward", spectrum.p_forward},
                 {"p_scattered", spectrum.p_scattered},
                 {"scattered_over_absorbed",
                  spectrum.p_scattered / spectrum.p_absorbed},
                 {"median_k", stats.median_k},
                 {"mean_k", stats.mean_k},
                 {"median_k_times_a", stats.median_k_times_a},
                 {"mean_k_times_a", stats.mean_k_times_a},
                 {"p_inconclusive", outcome.p_inconclusive},
                 {"p_detect_safe", outcome.p_detect_safe},
                 {"p_boom", outcome.p_boom}};

  std::string csv = "mode_index,k,probability,cumulative\n";
  double cumulative = 0.0;
  for (std::size_t i = 0; i < spectrum.k.size(); ++i) {
    cumulative += spectrum.probability[i];
    csv += std::to_string(spectrum.mode_index[i]);
    csv += ',';
    csv += csv_double(spectrum.k[i]);
    csv += ',';
    csv += csv_double(spectrum.probability[i]);
    csv += ',';
    csv += csv_double(cumulative);
    csv += '\n';
  }
  out.files.emplace_back("spectrum.csv", std::move(csv));
  return out;
}

KindOutput run_well(const WellParams& params) {
  const WellBomb well(params.mass, params.omega);
  const double lambda =
      params.kick * params.kick / (2.0 * params.mass * params.omega);
  const std::size_t n_max =
      params.n_max > 0 ? params.n_max : suggested_n_max(lambda);
  const KickSpectrum spectrum = excitation_spectrum(well, params.kick, n_max);
  const double bound = well_trigger_bound(well);

  KindOutput out;
  out.config_echo = {{"mass", params.mass},
                     {"omega", params.omega},
                     {"kick", params.kick},
                     {"n_max", n_max}};
  out.results = {{"poisson_lambda", spectrum.poisson_lambda},
                 {"stay_probability", stay_probability(well, params.kick)},
                 {"excite_probability", 1.0 - stay_probability(well, params.kick)},
                 {"delta_x", well.delta_x()},
                 {"delta_p", well.delta_p()},
                 {"trigger_bound", bound},
                 {"trigger_bound_over_delta_p", bound / well.delta_p()},
                 {"trigger_bound_times_delta_x", bound * well.delta_x()},
                 {"total_probability", spectrum.total()}};

  std::string csv = "n,probability,cumulative\n";
  double cumulative = 0.0;
  for (std::size_t n = 0; n < spectrum.probability.size(); ++n) {
    cumulative += spectrum.probability[n];
    csv += std::to_string(n);
    csv += ',';
    csv += csv_double(spectrum.probability[n]);
    csv += ',';
    csv += csv_double(cumulative);
    csv += '\n';
  }
  out.files.emplace_back("spectrum.csv", std::move(csv));
  return out;
}

KindOutput run_optimize(const OptimizeParams& params) {
  const OptimizeResult result = optimize_reflectivity(params.lambda);
  KindOutput out;
  out.config_echo = {{"lambda", params.lambda}};
  out.results = {{"R_star", result.reflectivity},
                 {"objective", result.objective},
                 {"efficiency_at_R_star", efficiency(result.reflectivity)},
                 {"expected_photons_at_R_star",
                  expected_photons_unbounded(result.reflectivity)}};
  CsvBuilder csv;
  csv.text = "metric,value\n";
  csv.row_metric("R_star", result.reflectivity);
  csv.row_metric("objective", result.objective);
  out.files.emplace_back("optimum.csv", std::move(csv.text));
  return out;
}

}  // namespace

std::string csv_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 17);
  if (ec != std::errc{}) {
    throw std::runtime_error("csv_double: formatting failed");
  }
  return std::string(buffer, ptr);
}

unsigned thread_cap_from_env() {
  const char* raw = std::getenv("IFM_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  unsigned parsed = 0;
  const auto [ptr, ec] = std::from_chars(raw, raw + std::strlen(raw), parsed);
  if (ec != std::errc{} || *ptr != '\0') return 0;
  return parsed > 256 ? 256u : parsed;
}

nlohmann::ordered_json RunSummary::to_json() const {
  ordered_json summary;
  summary["kind"] = kind;
  summary["version"] = version;
  summary["config"] = config;
  summary["results"] = results;
  summary["data_files"] = data_files;
  summary["duration_ms"] = duration_ms;
  return summary;
}

RunSummary run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  KindOutput output;
  switch (config.kind) {
    case ExperimentKind::Mz:
      output = run_mz(std::get<MzConfig>(config.params));
      break;
    case ExperimentKind::Trials:
      output = run_trials_kind(std::get<TrialsParams>(config.params), config.seed);
      break;
    case ExperimentKind::Strategy:
      output = run_strategy(std::get<StrategyParams>(config.params));
      break;
    case ExperimentKind::Trigger:
      output = run_trigger(std::get<TriggerParams>(config.params));
      break;
    case ExperimentKind::Scatter:
      output = run_scatter(std::get<ScatterParams>(config.params));
      break;
    case ExperimentKind::Well:
      output = run_well(std::get<WellParams>(config.params));
      break;
    case ExperimentKind::Optimize:
      output = run_optimize(std::get<OptimizeParams>(config.params));
      break;
  }

  RunSummary summary;
  summary.kind = kind_name(config.kind);
  summary.version = kVersion;
  summary.config = std::move(output.config_echo);
  summary.config["seed"] = config.seed;
  summary.results = std::move(output.results);

  const std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, bytes] : output.files) {
    write_file(out_dir / name, bytes);
    summary.data_files.push_back(name);
  }

  const auto stop = std::chrono::steady_clock::now();
  summary.duration_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  write_file(out_dir / "summary.json", summary.to_json().dump(2) + "\n");
  return summary;
}

}  // namespace ifm
