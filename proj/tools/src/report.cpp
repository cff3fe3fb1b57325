#include "dirmono/cli/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "dirmono/error.hpp"

namespace dirmono::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double x, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

std::string point_text(const UnitPoint& p, int precision, char sep) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += sep;
    s += num(p[i], precision);
  }
  return s + ")";
}

const char* basis(DependenceNotion n) {
  return n == DependenceNotion::Increasing ? "characterization" : "derived-by-duality";
}

// --- json encoding -----------------------------------------------------------

ojson finite_or_null(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson point_json(const UnitPoint& p) {
  ojson a = ojson::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

ojson index_list(const std::vector<std::size_t>& idx) {
  ojson a = ojson::array();
  for (std::size_t i : idx) a.push_back(i + 1);
  return a;
}

ojson counterexample_json(const std::optional<Counterexample>& cx) {
  if (!cx) return nullptr;
  ojson j;
  j["kind"] = to_string(cx->kind);
  j["notion"] = to_string(cx->notion);
  j["direction"] = cx->direction.to_token();
  j["uLow"] = point_json(cx->u_low);
  j["uHigh"] = point_json(cx->u_high);
  j["target"] = cx->target ? point_json(*cx->target) : ojson(nullptr);
  j["axis"] = cx->axis ? ojson(*cx->axis + 1) : ojson(nullptr);
  j["lhs"] = cx->lhs;
  j["rhs"] = cx->rhs;
  j["violation"] = cx->violation;
  return j;
}

ojson stats_json(const ScanStats& s) {
  ojson j;
  j["pairs_tested"] = s.pairs_tested;
  j["max_slack"] = finite_or_null(s.max_slack);
  j["min_slack"] = finite_or_null(s.min_slack);
  return j;
}

ojson method_json(const std::optional<MethodVerdict>& mv) {
  if (!mv) return nullptr;
  ojson j;
  j["method"] = to_string(mv->method);
  j["outcome"] = to_string(mv->outcome);
  j["conjectural"] = mv->conjectural;
  j["stats"] = stats_json(mv->stats);
  j["counterexample"] = counterexample_json(mv->counterexample);
  return j;
}

ojson verdict_json(const DirectionVerdict& v) {
  ojson j;
  j["direction"] = v.direction.to_token();
  j["negatives"] = index_list(v.direction.negatives());
  j["positives"] = index_list(v.direction.positives());
  j["method"] = to_string(v.method);
  j["notion"] = to_string(v.notion);
  j["basis"] = basis(v.notion);
  j["outcome"] = to_string(v.outcome);
  j["methods_disagree"] = v.methods_disagree;
  j["stats"] = stats_json(v.stats);
  j["counterexample"] = counterexample_json(v.counterexample);
  j["inequality"] = method_json(v.inequality);
  j["oracle"] = method_json(v.oracle);
  return j;
}

ojson config_json(const RunConfig& c) {
  ojson j;
  j["family"] = c.spec.tag();
  j["dim"] = c.spec.dim;
  const CopulaSpec& base = c.spec.inner ? *c.spec.inner : c.spec;
  if (auto name = parameter_name(base.family); name && base.parameter) j[*name] = *base.parameter;
  if (c.directions) {
    ojson a = ojson::array();
    for (const auto& d : *c.directions) a.push_back(d.to_token());
    j["directions"] = a;
  } else {
    j["directions"] = "all";
  }
  j["grid"] = c.grid ? ojson(*c.grid) : ojson(nullptr);
  j["grid_resolved"] = c.resolved_grid().resolution();
  j["method"] = to_string(c.method);
  j["notion"] = to_string(c.notion);
  j["tol"] = c.tol;
  j["eps_den"] = c.eps_den;
  j["format"] = to_string(c.format);
  j["out"] = c.out ? ojson(*c.out) : ojson(nullptr);
  j["allow_conjectural_pure"] = c.allow_conjectural_pure;
  j["threads"] = c.threads;
  return j;
}

// --- json decoding -----------------------------------------------------------

double slack_from(const ojson& j, double fallback) { return j.is_null() ? fallback : j.get<double>(); }

UnitPoint point_from(const ojson& j) { return UnitPoint(j.get<std::vector<double>>()); }

CheckKind kind_from(const std::string& s) {
  for (CheckKind k : {CheckKind::MixedInequality, CheckKind::PureInequality, CheckKind::Oracle}) {
    if (s == to_string(k)) return k;
  }
  throw UsageError("unknown counterexample kind '" + s + "'");
}

Outcome outcome_from(const std::string& s) {
  for (Outcome o : {Outcome::PassAtResolution, Outcome::Refuted, Outcome::Unsupported}) {
    if (s == to_string(o)) return o;
  }
  throw UsageError("unknown outcome '" + s + "'");
}

std::optional<Counterexample> counterexample_from(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  std::optional<UnitPoint> target;
  if (!j.at("target").is_null()) target = point_from(j.at("target"));
  std::optional<std::size_t> axis;
  if (!j.at("axis").is_null()) axis = j.at("axis").get<std::size_t>() - 1;
  return Counterexample{Direction::parse(j.at("direction").get<std::string>()),
                        kind_from(j.at("kind").get<std::string>()),
                        notion_from_string(j.at("notion").get<std::string>()),
                        point_from(j.at("uLow")),
                        point_from(j.at("uHigh")),
                        std::move(target),
                        axis,
                        j.at("lhs").get<double>(),
                        j.at("rhs").get<double>(),
                        j.at("violation").get<double>()};
}

ScanStats stats_from(const ojson& j) {
  ScanStats s;
  s.pairs_tested = j.at("pairs_tested").get<std::uint64_t>();
  s.max_slack = slack_from(j.at("max_slack"), -std::numeric_limits<double>::infinity());
  s.min_slack = slack_from(j.at("min_slack"), std::numeric_limits<double>::infinity());
  return s;
}

std::optional<MethodVerdict> method_from(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  MethodVerdict mv;
  mv.method = method_from_string(j.at("method").get<std::string>());
  mv.outcome = outcome_from(j.at("outcome").get<std::string>());
  mv.conjectural = j.at("conjectural").get<bool>();
  mv.stats = stats_from(j.at("stats"));
  mv.counterexample = counterexample_from(j.at("counterexample"));
  return mv;
}

DirectionVerdict verdict_from(const ojson& j) {
  return DirectionVerdict{Direction::parse(j.at("direction").get<std::string>()),
                          method_from_string(j.at("method").get<std::string>()),
                          notion_from_string(j.at("notion").get<std::string>()),
                          outcome_from(j.at("outcome").get<std::string>()),
                          counterexample_from(j.at("counterexample")),
                          stats_from(j.at("stats")),
                          method_from(j.at("inequality")),
                          method_from(j.at("oracle")),
                          j.at("methods_disagree").get<bool>()};
}

RunConfig config_from(const ojson& j) {
  RunConfig c;
  std::optional<double> parameter;
  for (const char* key : {"lambda", "delta", "theta"}) {
    if (j.contains(key)) parameter = j.at(key).get<double>();
  }
  c.spec = CopulaSpec::parse(j.at("family").get<std::string>(), j.at("dim").get<std::size_t>(), parameter);
  validate(c.spec);
  if (j.at("directions").is_array()) {
    std::vector<Direction> dirs;
    for (const auto& t : j.at("directions")) dirs.push_back(Direction::parse(t.get<std::string>()));
    c.directions = std::move(dirs);
  }
  if (!j.at("grid").is_null()) c.grid = j.at("grid").get<std::size_t>();
  c.method = method_from_string(j.at("method").get<std::string>());
  c.notion = notion_from_string(j.at("notion").get<std::string>());
  c.tol = j.at("tol").get<double>();
  c.eps_den = j.at("eps_den").get<double>();
  c.format = format_from_string(j.at("format").get<std::string>());
  if (!j.at("out").is_null()) c.out = j.at("out").get<std::string>();
  c.allow_conjectural_pure = j.at("allow_conjectural_pure").get<bool>();
  c.threads = j.at("threads").get<std::size_t>();
  return c;
}

// --- text / csv --------------------------------------------------------------

std::string outcome_word(Outcome o) {
  switch (o) {
    case Outcome::PassAtResolution: return "PASS";
    case Outcome::Refuted: return "REFUTED";
    case Outcome::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

std::string text_row(const DirectionVerdict& v, std::size_t g) {
  std::ostringstream row;
  row << v.direction.to_string() << ' ' << outcome_word(v.outcome) << "@g=" << g << ' ' << to_string(v.method);
  if (v.outcome == Outcome::PassAtResolution) {
    row << " slack=" << num(v.stats.max_slack, 6) << " pairs=" << v.stats.pairs_tested;
  } else if (v.outcome == Outcome::Refuted && v.counterexample) {
    const Counterexample& cx = *v.counterexample;
    row << " violation=" << num(cx.violation, 6) << " lhs=" << num(cx.lhs, 10) << " rhs=" << num(cx.rhs, 10)
        << " [" << to_string(cx.kind) << "] uLow=" << point_text(cx.u_low, 6, ',')
        << " uHigh=" << point_text(cx.u_high, 6, ',');
    if (cx.target) row << " target=" << point_text(*cx.target, 6, ',');
    if (cx.axis) row << " axis=" << *cx.axis + 1;
  } else if (v.outcome == Outcome::Unsupported) {
    row << " (pure direction with n >= 4: use the oracle or --allow-conjectural-pure)";
  }
  if (v.conjectural()) row << " [conjectural inequality]";
  if (v.methods_disagree) {
    row << " [METHOD DISAGREEMENT inequality=" << to_string(v.inequality->outcome)
        << " oracle=" << to_string(v.oracle->outcome) << "]";
  }
  return row.str();
}

std::string format_text(const ScanReport& r) {
  const std::size_t g = r.config.resolved_grid().resolution();
  std::ostringstream out;
  out << "dirmono " << r.tool_version << "  " << r.config.spec.describe() << "  notion=" << to_string(r.config.notion)
      << " (" << basis(r.config.notion) << ")  method=" << to_string(r.config.method) << "  grid=" << g
      << "  tol=" << num(r.config.tol, 3) << '\n';
  std::size_t pass = 0, refuted = 0, unsupported = 0;
  for (const auto& v : r.verdicts) {
    out << text_row(v, g) << '\n';
    pass += v.outcome == Outcome::PassAtResolution;
    refuted += v.outcome == Outcome::Refuted;
    unsupported += v.outcome == Outcome::Unsupported;
  }
  out << "summary: " << pass << " pass, " << refuted << " refuted, " << unsupported << " unsupported";
  out << "  (" << num(r.elapsed_ms, 4) << " ms)\n";
  return out.str();
}

std::string format_csv(const ScanReport& r) {
  const std::size_t g = r.config.resolved_grid().resolution();
  std::ostringstream out;
  out << "direction,outcome,method,notion,grid,pairs_tested,max_slack,min_slack,methods_disagree,conjectural,"
         "kind,u_low,u_high,target,axis,lhs,rhs,violation\n";
  for (const auto& v : r.verdicts) {
    out << '"' << v.direction.to_token() << "\"," << to_string(v.outcome) << ',' << to_string(v.method) << ','
        << to_string(v.notion) << ',' << g << ',' << v.stats.pairs_tested << ',' << num(v.stats.max_slack) << ','
        << num(v.stats.min_slack) << ',' << (v.methods_disagree ? "true" : "false") << ','
        << (v.conjectural() ? "true" : "false") << ',';
    if (v.counterexample) {
      const Counterexample& cx = *v.counterexample;
      out << to_string(cx.kind) << ',' << point_text(cx.u_low, 17, ';') << ',' << point_text(cx.u_high, 17, ';')
          << ',' << (cx.target ? point_text(*cx.target, 17, ';') : std::string()) << ','
          << (cx.axis ? std::to_string(*cx.axis + 1) : std::string()) << ',' << num(cx.lhs) << ',' << num(cx.rhs)
          << ',' << num(cx.violation);
    } else {
      out << ",,,,,,,";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

ScanReport execute(const RunConfig& config) {
  const Copula copula(config.spec);
  const auto start = std::chrono::steady_clock::now();
  ScanResult result = scan_directions(copula, config.resolved_directions(), config.resolved_grid(), config.method,
                                      config.check_options());
  const auto stop = std::chrono::steady_clock::now();

  ScanReport report;
  report.config = config;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  report.verdicts = std::move(result.verdicts);
  return report;
}

std::string format_report(const ScanReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text:
      return format_text(report);
    case OutputFormat::Csv:
      return format_csv(report);
    case OutputFormat::Json: {
      ojson j;
      j["schema_version"] = report.schema_version;
      j["tool_version"] = report.tool_version;
      j["config"] = config_json(report.config);
      j["timing"] = {{"elapsed_ms", report.elapsed_ms}};
      std::size_t pass = 0, refuted = 0, unsupported = 0;
      bool disagree = false;
      ojson verdicts = ojson::array();
      for (const auto& v : report.verdicts) {
        verdicts.push_back(verdict_json(v));
        pass += v.outcome == Outcome::PassAtResolution;
        refuted += v.outcome == Outcome::Refuted;
        unsupported += v.outcome == Outcome::Unsupported;
        disagree = disagree || v.methods_disagree;
      }
      j["summary"] = {{"passed", pass}, {"refuted", refuted}, {"unsupported", unsupported},
                      {"methods_disagree", disagree}, {"exit_code", exit_code(report)}};
      j["verdicts"] = std::move(verdicts);
      return j.dump(2) + "\n";
    }
  }
  return {};
}

ScanReport parse_json_report(const std::string& text) {
  try {
    const ojson j = ojson::parse(text);
    ScanReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw UsageError("unsupported report schema_version " + std::to_string(r.schema_version));
    }
    r.tool_version = j.at("tool_version").get<std::string>();
    r.config = config_from(j.at("config"));
    r.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from(v));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
}

int exit_code(const ScanReport& report) {
  bool refuted = false, unsupported = false;
  for (const auto& v : report.verdicts) {
    if (v.methods_disagree) return 3;
    refuted = refuted || v.outcome == Outcome::Refuted;
    unsupported = unsupported || v.outcome == Outcome::Unsupported;
  }
  if (refuted) return 1;
  if (unsupported) return 2;
  return 0;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ScanReport report;
  try {
    report = execute(config);
  } catch (const std::exception& e) {
    err << "dirmono: " << e.what() << '\n';
    return 2;
  }
  const std::string body = format_report(report, config.format);
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file || !(file << body) || !file.flush()) {
      err << "dirmono: cannot write report to '" << *config.out << "'\n";
      return 2;
    }
  } else {
    out << body;
    out.flush();
  }
  const int code = exit_code(report);
  if (code == 2) {
    err << "dirmono: some directions are unsupported by --method inequality "
           "(pure directions need n <= 3); see the report\n";
  } else if (code == 3) {
    err << "dirmono: inequality and oracle verdicts disagree; this is a defect\n";
  }
  return code;
}

}  // namespace dirmono::cli
