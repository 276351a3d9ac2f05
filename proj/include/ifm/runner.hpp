// runner.hpp
// Dispatches a validated ExperimentConfig to its module, writes the CSV
// data files and a JSON summary into the output directory, and returns
// the headline scalars. Identical configs byte-reproduce every data file
// and the summary (minus wall-clock duration) across runs and across
// worker counts.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ifm/config.hpp"

namespace ifm {

struct RunSummary {
  std::string kind;
  std::string version;
  nlohmann::ordered_json config;   // effective parameters, defaults included
  nlohmann::ordered_json results;  // headline scalars per kind
  std::vector<std::string> data_files;  // basenames written to out_dir
  double duration_ms = 0.0;

  // Stable key order; duration_ms last so byte comparisons can strip it.
  nlohmann::ordered_json to_json() const;
};

// Runs the experiment and writes <out_dir>/summary.json plus the
// kind-specific CSV. Throws ConfigError for validation failures and
// std::runtime_error for I/O failures.
RunSummary run(const ExperimentConfig& config);

// Worker cap from the IFM_THREADS environment variable; 0 when unset
// (meaning: let the library pick).
unsigned thread_cap_from_env();

// Fixed-format float for CSV cells: 17 significant digits, locale-free.
std::string csv_double(double value);

}  // namespace ifm
