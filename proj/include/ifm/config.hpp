// config.hpp
// Experiment configuration: flat UTF-8 "key = value" lines with '#'
// comment lines, parsed into a typed, fully validated parameter block.
// Every module precondition is checked here first, so bad user input
// surfaces as a diagnostic naming the key and the violated constraint
// instead of an error deep inside a computation.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ifm/mz_protocol.hpp"

namespace ifm {

enum class ExperimentKind { Mz, Trials, Strategy, Trigger, Scatter, Well, Optimize };

struct TrialsParams {
  MzConfig mz;
  std::uint64_t n_trials = 0;
};

struct StrategyParams {
  double reflectivity = 0.5;
  std::uint64_t max_photons = 1;
};

struct TriggerParams {
  double delta_x = 1.0;
  double p_th = 1.0;         // default 1/delta_x
  double kick = 1.0;         // default 1/delta_x
  double error_budget = 0.1;
};

struct ScatterParams {
  double width = 64.0;
  std::uint64_t n_points = 1 << 16;
  double strip_width = 1.0;
  double k_in = 1000.0;
  double p_th = 0.0;         // default 2*pi/strip_width
};

struct WellParams {
  double mass = 1.0;
  double omega = 1.0;
  double kick = 0.0;
  std::uint64_t n_max = 0;   // 0 = pick from the truncation bound
};

struct OptimizeParams {
  double lambda = 0.0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Mz;
  std::variant<MzConfig, TrialsParams, StrategyParams, TriggerParams,
               ScatterParams, WellParams, OptimizeParams>
      params;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

enum class DiagCode {
  UnknownKind,
  MissingKey,
  Constraint,
  MalformedLine,
  UnknownKey,
};

struct Diagnostic {
  DiagCode code;
  std::string key;      // offending key (or kind name / raw line)
  std::string message;  // names the key and the violated constraint
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(Diagnostic diag)
      : std::runtime_error(diag.message), diag_(std::move(diag)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

const char* kind_name(ExperimentKind kind);
std::optional<ExperimentKind> kind_from_name(std::string_view name);
const char* diag_code_name(DiagCode code);

// Parses and validates. The `kind` key is required in the text unless
// default_kind supplies one; when both are present they must agree.
// Throws ConfigError carrying the diagnostic.
ExperimentConfig parse_config(const std::string& text,
                              std::optional<ExperimentKind> default_kind = {});

}  // namespace ifm
