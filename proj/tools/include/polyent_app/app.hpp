#pragma once

#include "polyent/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polyent::app {

enum class Format { json, csv };

/// Settings shared by every command. Everything except the output path is
/// echoed into reports so a run can be replayed from its own output.
struct RunConfig {
  std::uint64_t seed = 1;
  int restarts = 32;
  int max_iterations = 400;
  /// Outcomes per measured factor; 0 picks the size-based default.
  int povm_card = 0;
  /// Escalation ceiling; 0 means one above the starting count, -1 disables.
  int outcome_cap = 0;
  std::optional<double> tolerance;
  std::string out;
  Format format = Format::json;
  /// Write wall-clock runtime into reports (off keeps reports reproducible).
  bool timing = false;

  OptimConfig optim() const;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the end-to-end tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// ghz2, ghz3, ghz4, w3, w4, bell, remark1, max_mixed(d1,d2,...).
MultipartiteState builtin_state(const std::string& name);
std::vector<std::string> builtin_names();

/// Cut syntax: parts separated by '|', each a run of subsystem labels
/// ("A|BC"); without '|' every label is its own part ("AB" is A and B).
std::vector<std::vector<int>> parse_cut(const std::string& cut, const MultipartiteState& state);

std::string suite_report_json(const SuiteReport& report, const RunConfig& config, const SuiteConfig& suite);
std::string suite_report_csv(const SuiteReport& report);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace polyent::app
