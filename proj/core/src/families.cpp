#include "dirmono/families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dirmono/error.hpp"

namespace dirmono {

namespace {

constexpr const char* kSurvivalPrefix = "survival-of:";

bool needs_parameter(Family f) {
  return f == Family::FGM || f == Family::AMH || f == Family::ConvexPiM;
}

void check_range(const std::string& name, double value, double lo, double hi) {
  if (!std::isfinite(value) || value < lo || value > hi) {
    std::ostringstream msg;
    msg << name << " = " << value << " is outside [" << lo << ", " << hi << "]";
    throw SpecError(msg.str());
  }
}

double product(std::span<const double> u) {
  double p = 1.0;
  for (double x : u) p *= x;
  return p;
}

double co_product(std::span<const double> u) {
  double p = 1.0;
  for (double x : u) p *= 1.0 - x;
  return p;
}

}  // namespace

std::string family_tag(Family family) {
  switch (family) {
    case Family::Product: return "product";
    case Family::UpperFrechet: return "m";
    case Family::LowerFrechet: return "w";
    case Family::FGM: return "fgm";
    case Family::AMH: return "amh";
    case Family::ConvexPiM: return "convexpim";
    case Family::Survival: return "survival-of";
  }
  return "?";
}

Family family_from_tag(const std::string& tag) {
  static const Family kTagged[] = {Family::Product, Family::UpperFrechet, Family::LowerFrechet,
                                   Family::FGM,     Family::AMH,          Family::ConvexPiM};
  for (Family f : kTagged) {
    if (family_tag(f) == tag) return f;
  }
  throw SpecError("unknown family '" + tag + "'");
}

std::optional<std::string> parameter_name(Family family) {
  switch (family) {
    case Family::FGM: return "lambda";
    case Family::AMH: return "delta";
    case Family::ConvexPiM: return "theta";
    default: return std::nullopt;
  }
}

CopulaSpec CopulaSpec::product(std::size_t dim) { return {Family::Product, dim, std::nullopt, nullptr}; }
CopulaSpec CopulaSpec::upper_frechet(std::size_t dim) {
  return {Family::UpperFrechet, dim, std::nullopt, nullptr};
}
CopulaSpec CopulaSpec::lower_frechet(std::size_t dim) {
  return {Family::LowerFrechet, dim, std::nullopt, nullptr};
}
CopulaSpec CopulaSpec::fgm(std::size_t dim, double lambda) { return {Family::FGM, dim, lambda, nullptr}; }
CopulaSpec CopulaSpec::amh(double delta) { return {Family::AMH, 2, delta, nullptr}; }
CopulaSpec CopulaSpec::convex_pi_m(std::size_t dim, double theta) {
  return {Family::ConvexPiM, dim, theta, nullptr};
}
CopulaSpec CopulaSpec::survival_of(CopulaSpec inner) {
  const std::size_t dim = inner.dim;
  return {Family::Survival, dim, std::nullopt, std::make_shared<const CopulaSpec>(std::move(inner))};
}

CopulaSpec CopulaSpec::parse(const std::string& tag, std::size_t dim, std::optional<double> parameter) {
  const std::string prefix = kSurvivalPrefix;
  if (tag.rfind(prefix, 0) == 0) {
    return survival_of(parse(tag.substr(prefix.size()), dim, parameter));
  }
  return {family_from_tag(tag), dim, parameter, nullptr};
}

std::string CopulaSpec::tag() const {
  if (family == Family::Survival) return kSurvivalPrefix + (inner ? inner->tag() : std::string("?"));
  return family_tag(family);
}

std::string CopulaSpec::describe() const {
  std::ostringstream out;
  switch (family) {
    case Family::Product: out << "Product"; break;
    case Family::UpperFrechet: out << "M"; break;
    case Family::LowerFrechet: out << "W"; break;
    case Family::FGM: out << "FGM"; break;
    case Family::AMH: out << "AMH"; break;
    case Family::ConvexPiM: out << "ConvexPiM"; break;
    case Family::Survival:
      return "SurvivalOf[" + (inner ? inner->describe() : std::string("?")) + "]";
  }
  out << "(n=" << dim;
  if (auto name = parameter_name(family); name && parameter) out << ", " << *name << "=" << *parameter;
  out << ")";
  return out.str();
}

bool operator==(const CopulaSpec& a, const CopulaSpec& b) {
  if (a.family != b.family || a.dim != b.dim || a.parameter != b.parameter) return false;
  if (static_cast<bool>(a.inner) != static_cast<bool>(b.inner)) return false;
  return !a.inner || *a.inner == *b.inner;
}

void validate(const CopulaSpec& spec) {
  if (spec.dim < 2 || spec.dim > kMaxDim) {
    throw DimensionError("copula dimension must be in [2, " + std::to_string(kMaxDim) + "], got " +
                         std::to_string(spec.dim));
  }
  if (spec.family == Family::Survival) {
    if (!spec.inner) throw SpecError("survival copula without an inner copula");
    if (spec.inner->family == Family::Survival) {
      throw SpecError("survival-of a survival copula is not supported (nesting depth 1)");
    }
    if (spec.inner->dim != spec.dim) throw SpecError("survival copula dimension differs from inner");
    if (spec.parameter) throw SpecError("survival copula carries its parameter on the inner family");
    validate(*spec.inner);
    return;
  }
  if (spec.inner) throw SpecError("only survival copulas have an inner copula");

  const auto name = parameter_name(spec.family);
  if (needs_parameter(spec.family) && !spec.parameter) {
    throw SpecError(family_tag(spec.family) + " requires parameter " + *name);
  }
  if (!needs_parameter(spec.family) && spec.parameter) {
    throw SpecError(family_tag(spec.family) + " takes no parameter");
  }

  switch (spec.family) {
    case Family::Product:
    case Family::UpperFrechet:
      break;
    case Family::LowerFrechet:
      if (spec.dim != 2) {
        throw SpecError("W^n is a copula only for n = 2, got n = " + std::to_string(spec.dim));
      }
      break;
    case Family::FGM:
      check_range("lambda", *spec.parameter, -1.0, 1.0);
      break;
    case Family::AMH:
      if (spec.dim != 2) {
        throw SpecError("AMH is a family of 2-copulas, got n = " + std::to_string(spec.dim));
      }
      check_range("delta", *spec.parameter, -1.0, 1.0);
      break;
    case Family::ConvexPiM:
      check_range("theta", *spec.parameter, 0.0, 1.0);
      break;
    case Family::Survival:
      break;
  }
}

Copula::Copula(CopulaSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  if (spec_.inner) inner_ = std::make_shared<const Copula>(*spec_.inner);
}

double Copula::operator()(std::span<const double> u) const {
  if (u.size() != spec_.dim) {
    throw DimensionError("copula of dimension " + std::to_string(spec_.dim) +
                         " evaluated at a point of dimension " + std::to_string(u.size()));
  }
  switch (spec_.family) {
    case Family::Product:
      return product(u);
    case Family::UpperFrechet:
      return upper_frechet_bound(u);
    case Family::LowerFrechet:
      return lower_frechet_bound(u);
    case Family::FGM:
      return product(u) * (1.0 + *spec_.parameter * co_product(u));
    case Family::AMH:
      return u[0] * u[1] / (1.0 + *spec_.parameter * (1.0 - u[0]) * (1.0 - u[1]));
    case Family::ConvexPiM: {
      const double theta = *spec_.parameter;
      return theta * product(u) + (1.0 - theta) * upper_frechet_bound(u);
    }
    case Family::Survival:
      return survival_transform(*inner_, u);
  }
  return 0.0;
}

double eval(const Copula& copula, const UnitPoint& u) { return copula(u.coords()); }

double survival_eval(const Copula& copula, std::span<const double> u) {
  if (u.size() != copula.dim()) throw DimensionError("survival_eval: dimension mismatch");
  return survival_transform(copula, u);
}

double survival_eval(const Copula& copula, const UnitPoint& u) {
  return survival_eval(copula, u.coords());
}

double lower_frechet_bound(std::span<const double> u) {
  const double s = std::accumulate(u.begin(), u.end(), 0.0);
  return std::max(0.0, s - static_cast<double>(u.size()) + 1.0);
}

double upper_frechet_bound(std::span<const double> u) {
  return *std::min_element(u.begin(), u.end());
}

}  // namespace dirmono
