#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace schmidt_lens {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string summary;
  std::vector<std::pair<std::string, double>> metrics;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Used by the relations suite.
  std::size_t d = 3;
  std::size_t r = 2;
  // Lambda strength for the snac suite.
  double k = 0.5;
};

// Names accepted by run_suite, in the order run_all_suites executes them.
const std::vector<std::string>& suite_names();

// Throws UnknownFamily-style Error(ParamOutOfRange) for unknown names.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);
std::vector<SuiteResult> run_all_suites(const SuiteOptions& options);

// Individual property suites, sized by their trial counts.
SuiteResult linalg_suite(std::uint64_t seed);
SuiteResult states_suite(std::uint64_t seed);
SuiteResult channels_suite(std::uint64_t seed);
SuiteResult witness_nonnegativity_suite(std::uint64_t seed, std::size_t trials = 1000);
SuiteResult lambda_window_suite(std::uint64_t seed, std::size_t trials_per_r = 1000);
SuiteResult kron_rank_suite(std::uint64_t seed, std::size_t pairs = 200);
SuiteResult choi_round_trip_suite(std::uint64_t seed, std::size_t channels = 100);
SuiteResult threshold_suite();
SuiteResult certification_monotone_suite(std::uint64_t seed, std::size_t trials = 200);
SuiteResult snac_suite(std::uint64_t seed, double k);
SuiteResult relations_suite(std::size_t d, std::size_t r);

}  // namespace schmidt_lens
