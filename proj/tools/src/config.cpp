#include "dirmono/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dirmono/error.hpp"

namespace dirmono::cli {

namespace {

using json = nlohmann::json;

const char* const kParamKeys[] = {"lambda", "delta", "theta"};

const char* const kKnownKeys[] = {"family", "dim",    "lambda",    "delta",  "theta",
                                  "direction", "all-directions", "grid", "method", "notion",
                                  "tol",    "eps-den", "format", "out", "allow-conjectural-pure",
                                  "threads"};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys) {
    if (key == k) return true;
  }
  return false;
}

json parse_json_object(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(origin + ": invalid json: " + e.what());
  }
  if (!j.is_object()) throw UsageError(origin + ": config must be a json object");
  for (const auto& item : j.items()) {
    if (!known_key(item.key())) throw UsageError(origin + ": unknown config key '" + item.key() + "'");
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t as_count(const json& v, const char* key, std::size_t min) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw UsageError(std::string(key) + " must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < static_cast<long long>(min)) {
    throw UsageError(std::string(key) + " must be at least " + std::to_string(min));
  }
  return static_cast<std::size_t>(value);
}

double as_positive(const json& v, const char* key) {
  if (!v.is_number()) throw UsageError(std::string(key) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x <= 0.0) throw UsageError(std::string(key) + " must be a positive number");
  return x;
}

/// Turns the merged flag/file object into a validated RunConfig.
RunConfig resolve(const json& j) {
  try {
    RunConfig cfg;
    if (!j.contains("family")) throw UsageError("missing --family");
    const std::string tag = j.at("family").get<std::string>();
    const std::size_t dim = j.contains("dim") ? as_count(j.at("dim"), "dim", 2) : 2;

    std::optional<double> parameter;
    std::string given_name;
    for (const char* key : kParamKeys) {
      if (!j.contains(key)) continue;
      if (parameter) throw UsageError("only one of --lambda, --delta, --theta may be given");
      if (!j.at(key).is_number()) throw UsageError(std::string(key) + " must be a number");
      parameter = j.at(key).get<double>();
      given_name = key;
    }

    CopulaSpec spec;
    try {
      spec = CopulaSpec::parse(tag, dim, parameter);
    } catch (const SpecError& e) {
      throw UsageError(e.what());
    }
    const Family base = spec.family == Family::Survival ? spec.inner->family : spec.family;
    const auto expected = parameter_name(base);
    if (parameter && (!expected || *expected != given_name)) {
      throw UsageError("--" + given_name + " does not apply to family '" + tag + "'");
    }
    if (!parameter && expected) throw UsageError("family '" + tag + "' requires --" + *expected);
    try {
      validate(spec);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    cfg.spec = spec;

    const bool all = j.contains("all-directions") && j.at("all-directions").get<bool>();
    if (j.contains("direction")) {
      if (all) throw UsageError("--direction and --all-directions are mutually exclusive");
      const json& dj = j.at("direction");
      std::vector<std::string> tokens;
      if (dj.is_string()) {
        tokens.push_back(dj.get<std::string>());
      } else if (dj.is_array()) {
        for (const auto& t : dj) tokens.push_back(t.get<std::string>());
      } else {
        throw UsageError("direction must be a string or a list of strings");
      }
      std::vector<Direction> dirs;
      for (const auto& t : tokens) {
        try {
          dirs.push_back(Direction::parse(t));
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        if (dirs.back().dim() != dim) {
          throw UsageError("direction '" + t + "' has " + std::to_string(dirs.back().dim()) +
                           " entries, expected " + std::to_string(dim));
        }
      }
      cfg.directions = std::move(dirs);
    }

    if (j.contains("grid")) cfg.grid = as_count(j.at("grid"), "grid", 2);
    if (j.contains("method")) cfg.method = method_from_string(j.at("method").get<std::string>());
    if (j.contains("notion")) cfg.notion = notion_from_string(j.at("notion").get<std::string>());
    if (j.contains("tol")) cfg.tol = as_positive(j.at("tol"), "tol");
    if (j.contains("eps-den")) cfg.eps_den = as_positive(j.at("eps-den"), "eps-den");
    if (j.contains("format")) cfg.format = format_from_string(j.at("format").get<std::string>());
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("allow-conjectural-pure")) cfg.allow_conjectural_pure = j.at("allow-conjectural-pure").get<bool>();
    if (j.contains("threads")) cfg.threads = as_count(j.at("threads"), "threads", 0);

    // Surface lattice-size problems now rather than mid-run.
    (void)cfg.resolved_grid();
    return cfg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid configuration value: ") + e.what());
  }
}

}  // namespace

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw UsageError("unknown format '" + s + "' (expected text, json or csv)");
}

Method method_from_string(const std::string& s) {
  if (s == "inequality") return Method::Inequality;
  if (s == "oracle") return Method::Oracle;
  if (s == "both") return Method::Both;
  throw UsageError("unknown method '" + s + "' (expected inequality, oracle or both)");
}

DependenceNotion notion_from_string(const std::string& s) {
  if (s == "I") return DependenceNotion::Increasing;
  if (s == "D") return DependenceNotion::Decreasing;
  throw UsageError("unknown notion '" + s + "' (expected I or D)");
}

GridSpec RunConfig::resolved_grid() const {
  try {
    return grid ? GridSpec(*grid) : GridSpec::default_for(spec.dim);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<Direction> RunConfig::resolved_directions() const {
  return directions ? *directions : all_directions(spec.dim);
}

CheckOptions RunConfig::check_options() const {
  CheckOptions o;
  o.tol = tol;
  o.eps_den = eps_den;
  o.notion = notion;
  o.allow_conjectural_pure = allow_conjectural_pure;
  o.threads = threads;
  return o;
}

RunConfig config_from_json_text(const std::string& text) {
  return resolve(parse_json_object(text, "config"));
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Directional monotonicity checks for copulas", "dirmono"};
  app.require_subcommand(1);
  CLI::App* check = app.add_subcommand("check", "Classify sign directions of a copula on a grid");

  std::string family, method, notion, format, out, config_path;
  std::size_t dim = 2, grid = 0, threads = 0;
  double lambda = 0, delta = 0, theta = 0, tol = 0, eps_den = 0;
  std::vector<std::string> directions;
  bool all_dirs = false, conjectural = false;

  auto* o_family = check->add_option("--family", family,
                                     "product|m|w|fgm|amh|convexpim|survival-of:<family>");
  auto* o_dim = check->add_option("--dim", dim, "dimension n");
  auto* o_lambda = check->add_option("--lambda", lambda, "FGM parameter");
  auto* o_delta = check->add_option("--delta", delta, "AMH parameter");
  auto* o_theta = check->add_option("--theta", theta, "ConvexPiM weight of the product copula");
  auto* o_dir = check->add_option("--direction", directions, "sign tokens, e.g. +,-,+ (repeatable)");
  auto* o_all = check->add_flag("--all-directions", all_dirs, "check every direction (default)");
  auto* o_grid = check->add_option("--grid", grid, "lattice resolution g >= 2");
  auto* o_method = check->add_option("--method", method, "inequality|oracle|both");
  auto* o_notion = check->add_option("--notion", notion, "I|D");
  auto* o_tol = check->add_option("--tol", tol, "absolute tolerance");
  auto* o_eps = check->add_option("--eps-den", eps_den, "zero-mass guard for conditionals");
  auto* o_format = check->add_option("--format", format, "text|json|csv");
  auto* o_out = check->add_option("--out", out, "output path (default stdout)");
  check->add_option("--config", config_path, "json config file; flags override its values");
  auto* o_conj = check->add_flag("--allow-conjectural-pure", conjectural,
                                 "single-swap inequality for pure directions in n >= 4");
  auto* o_threads = check->add_option("--threads", threads, "worker threads (0 = hardware)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(check->parsed() ? check->help() : app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  json merged = json::object();
  if (!config_path.empty()) merged = parse_json_object(read_file(config_path), config_path);

  if (o_dir->count() > 0 || o_all->count() > 0) {
    merged.erase("direction");
    merged.erase("all-directions");
  }
  if (o_family->count()) merged["family"] = family;
  if (o_dim->count()) merged["dim"] = dim;
  if (o_lambda->count() || o_delta->count() || o_theta->count()) {
    for (const char* key : kParamKeys) merged.erase(key);
  }
  if (o_lambda->count()) merged["lambda"] = lambda;
  if (o_delta->count()) merged["delta"] = delta;
  if (o_theta->count()) merged["theta"] = theta;
  if (o_dir->count()) merged["direction"] = directions;
  if (o_all->count()) merged["all-directions"] = all_dirs;
  if (o_grid->count()) merged["grid"] = grid;
  if (o_method->count()) merged["method"] = method;
  if (o_notion->count()) merged["notion"] = notion;
  if (o_tol->count()) merged["tol"] = tol;
  if (o_eps->count()) merged["eps-den"] = eps_den;
  if (o_format->count()) merged["format"] = format;
  if (o_out->count()) merged["out"] = out;
  if (o_conj->count()) merged["allow-conjectural-pure"] = conjectural;
  if (o_threads->count()) merged["threads"] = threads;

  return resolve(merged);
}

}  // namespace dirmono::cli
