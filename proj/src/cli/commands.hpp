#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schmidt_lens::cli {

// Exit codes: nothing else is ever returned.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Command { Sweep, Threshold, Snac, Verify };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Sweep;
  std::size_t d = 3;
  std::size_t r = 2;
  std::optional<std::string> family;        // depolarizing | dephasing
  std::optional<std::string> channel_file;  // JSON Kraus list
  std::size_t grid = 101;
  std::size_t p_grid = 50;
  std::size_t q_grid = 30;
  double k = 0.5;
  double tol = 1e-9;
  std::string criterion = "witness";  // threshold only: witness | ppt
  std::string suite = "all";           // verify only
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> output_path;
  unsigned threads = 1;
};

// Invalid configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UsageError when the config breaks its invariants.
void validate(const RunConfig& config);

// Report bodies, exactly as written to the output stream/file.
std::string sweep_report(const RunConfig& config);
std::string threshold_report(const RunConfig& config, bool* within_tolerance = nullptr);
std::string snac_report(const RunConfig& config);
// Human-readable summary in `summary`, JSON/CSV detail in the return value.
std::string verify_report(const RunConfig& config, std::string& summary, bool* all_passed = nullptr);

// Validates, runs, writes the report and maps failures onto exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11), reads SCHMIDT_LENS_THREADS and dispatches to run().
int main_with_args(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace schmidt_lens::cli
