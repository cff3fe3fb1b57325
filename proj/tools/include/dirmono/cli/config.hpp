#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirmono/checker.hpp"
#include "dirmono/core.hpp"
#include "dirmono/families.hpp"

namespace dirmono::cli {

/// Bad command line or config file. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was requested; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Text, Json, Csv };

const char* to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& s);
Method method_from_string(const std::string& s);
DependenceNotion notion_from_string(const std::string& s);

struct RunConfig {
  CopulaSpec spec;
  /// nullopt: every direction of the dimension.
  std::optional<std::vector<Direction>> directions;
  /// nullopt: GridSpec::default_for(spec.dim).
  std::optional<std::size_t> grid;
  Method method = Method::Both;
  DependenceNotion notion = DependenceNotion::Increasing;
  double tol = kDefaultTol;
  double eps_den = kDefaultEpsDen;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> out;
  bool allow_conjectural_pure = false;
  std::size_t threads = 0;

  GridSpec resolved_grid() const;
  std::vector<Direction> resolved_directions() const;
  CheckOptions check_options() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `check` and its flags (args exclude the program name). A --config
/// json file supplies defaults using the flag names as keys; flags win.
/// Throws UsageError or HelpRequested. The copula is validated here.
RunConfig parse_config(const std::vector<std::string>& args);

/// Builds a RunConfig from the json config-file schema alone.
RunConfig config_from_json_text(const std::string& text);

}  // namespace dirmono::cli
