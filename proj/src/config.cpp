#include "ifm/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <system_error>

namespace ifm {

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

[[noreturn]] void fail(DiagCode code, std::string key, std::string message) {
  throw ConfigError(Diagnostic{code, std::move(key), std::move(message)});
}

[[noreturn]] void fail_constraint(const std::string& key, const std::string& value,
                                  const std::string& constraint) {
  fail(DiagCode::Constraint, key,
       "constraint violation: " + key + " = " + value + " violates \"" +
           constraint + "\"");
}

class KeyValueDoc {
 public:
  explicit KeyValueDoc(const std::string& text) {
    std::istringstream stream(text);
    std::string raw;
    while (std::getline(stream, raw)) {
      const std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        fail(DiagCode::MalformedLine, std::string(line),
             "malformed line (expected key = value): " + std::string(line));
      }
      const std::string key{trim(line.substr(0, eq))};
      const std::string value{trim(line.substr(eq + 1))};
      if (key.empty()) {
        fail(DiagCode::MalformedLine, std::string(line),
             "malformed line (empty key): " + std::string(line));
      }
      if (!entries_.emplace(key, value).second) {
        fail_constraint(key, value, "each key may appear at most once");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second;
  }

  std::string require(const std::string& key) {
    auto value = take(key);
    if (!value) {
      fail(DiagCode::MissingKey, key, "missing required key: " + key);
    }
    return *value;
  }

  void reject_unconsumed() const {
    for (const auto& [key, value] : entries_) {
      if (!consumed_.count(key)) {
        fail(DiagCode::UnknownKey, key, "unknown key: " + key);
      }
    }
  }

 private:
  std::map<std::string, std::string> entries_;
  std::set<std::string> consumed_;
};

double to_double(const std::string& key, const std::string& value) {
  double parsed = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, parsed);
  if (ec != std::errc{} || ptr != end) {
    fail_constraint(key, value, key + " must be a real number");
  }
  return parsed;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t parsed = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, parsed);
  if (ec != std::errc{} || ptr != end) {
    fail_constraint(key, value, key + " must be an unsigned integer");
  }
  return parsed;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail_constraint(key, value, key + " must be true or false");
}

double required_double(KeyValueDoc& doc, const std::string& key) {
  return to_double(key, doc.require(key));
}

double optional_double(KeyValueDoc& doc, const std::string& key, double fallback) {
  auto value = doc.take(key);
  return value ? to_double(key, *value) : fallback;
}

std::uint64_t required_u64(KeyValueDoc& doc, const std::string& key) {
  return to_u64(key, doc.require(key));
}

bool required_bool(KeyValueDoc& doc, const std::string& key) {
  return to_bool(key, doc.require(key));
}

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check(bool ok, const std::string& key, double value,
           const std::string& constraint) {
  if (!ok) {
    std::ostringstream text;
    text << value;
    fail_constraint(key, text.str(), constraint);
  }
}

MzConfig read_mz(KeyValueDoc& doc) {
  MzConfig cfg;
  cfg.reflectivity = required_double(doc, "R");
  cfg.bomb_present = required_bool(doc, "bomb");
  cfg.calibration_phase =
      optional_double(doc, "calibration_phase", std::numbers::pi);
  check(cfg.reflectivity > 0.0 && cfg.reflectivity < 1.0, "R",
        cfg.reflectivity, "R in (0,1)");
  check(std::isfinite(cfg.calibration_phase), "calibration_phase",
        cfg.calibration_phase, "calibration_phase finite");
  return cfg;
}

TrialsParams read_trials(KeyValueDoc& doc) {
  TrialsParams params;
  params.mz = read_mz(doc);
  params.n_trials = required_u64(doc, "n");
  check(params.n_trials >= 1, "n", static_cast<double>(params.n_trials),
        "n >= 1");
  return params;
}

StrategyParams read_strategy(KeyValueDoc& doc) {
  StrategyParams params;
  params.reflectivity = required_double(doc, "R");
  params.max_photons = required_u64(doc, "max_photons");
  check(params.reflectivity > 0.0 && params.reflectivity < 1.0, "R",
        params.reflectivity, "R in (0,1)");
  check(params.max_photons >= 1, "max_photons",
        static_cast<double>(params.max_photons), "max_photons >= 1");
  return params;
}

TriggerParams read_trigger(KeyValueDoc& doc) {
  TriggerParams params;
  params.delta_x = required_double(doc, "delta_x");
  check(params.delta_x > 0.0 && std::isfinite(params.delta_x), "delta_x",
        params.delta_x, "delta_x > 0");
  params.p_th = optional_double(doc, "p_th", 1.0 / params.delta_x);
  params.kick = optional_double(doc, "kick", 1.0 / params.delta_x);
  params.error_budget = optional_double(doc, "error_budget", 0.1);
  check(params.p_th >= 0.0, "p_th", params.p_th, "p_th >= 0");
  check(params.kick >= 0.0, "kick", params.kick, "kick >= 0");
  check(params.error_budget > 0.0 && params.error_budget < 0.5, "error_budget",
        params.error_budget, "error_budget in (0, 0.5)");
  return params;
}

ScatterParams read_scatter(KeyValueDoc& doc) {
  ScatterParams params;
  params.width = required_double(doc, "width");
  params.n_points = required_u64(doc, "n_points");
  params.strip_width = required_double(doc, "strip_width");
  params.k_in = required_double(doc, "k_in");
  check(params.width > 0.0 && std::isfinite(params.width), "width",
        params.width, "width > 0");
  check(params.strip_width > 0.0 && std::isfinite(params.strip_width),
        "strip_width", params.strip_width, "strip_width > 0");
  check(params.k_in > 0.0 && std::isfinite(params.k_in), "k_in", params.k_in,
        "k_in > 0");
  check(is_power_of_two(params.n_points) && params.n_points >= 1024,
        "n_points", static_cast<double>(params.n_points),
        "n_points a power of two >= 1024");
  check(params.width >= 64.0 * params.strip_width, "width", params.width,
        "width >= 64 * strip_width");
  check(params.width / static_cast<double>(params.n_points) <
            params.strip_width / 16.0,
        "n_points", static_cast<double>(params.n_points),
        "width / n_points < strip_width / 16");
  params.p_th = optional_double(doc, "p_th",
                                2.0 * std::numbers::pi / params.strip_width);
  check(params.p_th >= 0.0, "p_th", params.p_th, "p_th >= 0");
  return params;
}

WellParams read_well(KeyValueDoc& doc) {
  WellParams params;
  params.mass = required_double(doc, "mass");
  params.omega = required_double(doc, "omega");
  params.kick = required_double(doc, "kick");
  check(params.mass > 0.0 && std::isfinite(params.mass), "mass", params.mass,
        "mass > 0");
  check(params.omega > 0.0 && std::isfinite(params.omega), "omega",
        params.omega, "omega > 0");
  check(params.kick >= 0.0, "kick", params.kick, "kick >= 0");
  if (auto n_max = doc.take("n_max")) {
    params.n_max = to_u64("n_max", *n_max);
    check(params.n_max >= 1, "n_max", static_cast<double>(params.n_max),
          "n_max >= 1");
  } else {
    params.n_max = 0;  // resolved from the truncation bound at run time
  }
  return params;
}

OptimizeParams read_optimize(KeyValueDoc& doc) {
  OptimizeParams params;
  params.lambda = required_double(doc, "lambda");
  check(std::isfinite(params.lambda) && params.lambda >= 0.0, "lambda",
        params.lambda, "lambda >= 0 and finite");
  return params;
}

}  // namespace

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Mz: return "mz";
    case ExperimentKind::Trials: return "trials";
    case ExperimentKind::Strategy: return "strategy";
    case ExperimentKind::Trigger: return "trigger";
    case ExperimentKind::Scatter: return "scatter";
    case ExperimentKind::Well: return "well";
    case ExperimentKind::Optimize: return "optimize";
  }
  return "unknown";
}

std::optional<ExperimentKind> kind_from_name(std::string_view name) {
  if (name == "mz") return ExperimentKind::Mz;
  if (name == "trials") return ExperimentKind::Trials;
  if (name == "strategy") return ExperimentKind::Strategy;
  if (name == "trigger") return ExperimentKind::Trigger;
  if (name == "scatter") return ExperimentKind::Scatter;
  if (name == "well") return ExperimentKind::Well;
  if (name == "optimize") return ExperimentKind::Optimize;
  return std::nullopt;
}

const char* diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::UnknownKind: return "unknown-kind";
    case DiagCode::MissingKey: return "missing-key";
    case DiagCode::Constraint: return "constraint";
    case DiagCode::MalformedLine: return "malformed-line";
    case DiagCode::UnknownKey: return "unknown-key";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& text,
                              std::optional<ExperimentKind> default_kind) {
  KeyValueDoc doc(text);

  ExperimentConfig config;
  if (auto kind_value = doc.take("kind")) {
    const auto parsed = kind_from_name(*kind_value);
    if (!parsed) {
      fail(DiagCode::UnknownKind, *kind_value,
           "unknown kind: " + *kind_value +
               " (expected mz | trials | strategy | trigger | scatter | "
               "well | optimize)");
    }
    if (default_kind && *default_kind != *parsed) {
      fail_constraint("kind", *kind_value,
                      std::string("kind must match the requested experiment ") +
                          kind_name(*default_kind));
    }
    config.kind = *parsed;
  } else if (default_kind) {
    config.kind = *default_kind;
  } else {
    fail(DiagCode::MissingKey, "kind", "missing required key: kind");
  }

  if (auto seed = doc.take("seed")) {
    config.seed = to_u64("seed", *seed);
  }
  if (auto out = doc.take("out")) {
    config.out_dir = *out;
  }

  switch (config.kind) {
    case ExperimentKind::Mz: config.params = read_mz(doc); break;
    case ExperimentKind::Trials: config.params = read_trials(doc); break;
    case ExperimentKind::Strategy: config.params = read_strategy(doc); break;
    case ExperimentKind::Trigger: config.params = read_trigger(doc); break;
    case ExperimentKind::Scatter: config.params = read_scatter(doc); break;
    case ExperimentKind::Well: config.params = read_well(doc); break;
    case ExperimentKind::Optimize: config.params = read_optimize(doc); break;
  }

  doc.reject_unconsumed();
  return config;
}

}  // namespace ifm
