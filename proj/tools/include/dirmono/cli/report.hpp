#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dirmono/checker.hpp"
#include "dirmono/cli/config.hpp"

namespace dirmono::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a run produces. The json form re-parses to an equal value.
struct ScanReport {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  RunConfig config;
  /// wall-clock time of the scan; excluded from determinism comparisons
  double elapsed_ms = 0.0;
  std::vector<DirectionVerdict> verdicts;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Runs the scan described by `config` and times it.
ScanReport execute(const RunConfig& config);

/// text: one row per direction; json: full structured report (schema_version 1);
/// csv: header plus one row per direction.
std::string format_report(const ScanReport& report, OutputFormat format);

/// Inverse of the json format. Throws UsageError on schema violations.
ScanReport parse_json_report(const std::string& text);

/// 3 if any method disagreement, else 1 if any direction refuted, else 2 if
/// any direction is unsupported by the requested method, else 0.
int exit_code(const ScanReport& report);

/// execute + format + write to config.out (or `out`). Returns the process exit
/// code; I/O failures return 2 after a message on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dirmono::cli
