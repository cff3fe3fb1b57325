#pragma once

// Closed-form copula families and the survival transform.
//
//   Product      Pi^n(u)   = prod u_i
//   UpperFrechet M^n(u)    = min u_i
//   LowerFrechet W^2(u,v)  = max(0, u + v - 1)            (n = 2 only)
//   FGM          C(u)      = prod u_i [1 + lambda prod (1 - u_i)],   lambda in [-1,1]
//   AMH          C(u,v)    = uv / (1 + delta (1-u)(1-v)),           delta in [-1,1], n = 2
//   ConvexPiM    C(u)      = theta Pi^n(u) + (1 - theta) M^n(u),   theta in [0,1]
//   Survival     C^(u)     = P[U_i >= 1 - u_i for all i] of an inner family

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirmono/core.hpp"

namespace dirmono {

enum class Family { Product, UpperFrechet, LowerFrechet, FGM, AMH, ConvexPiM, Survival };

/// Command-line tag of a family: "product", "m", "w", "fgm", "amh", "convexpim".
/// Survival has no tag of its own; see CopulaSpec::parse.
std::string family_tag(Family family);
/// Inverse of family_tag for the non-survival families. Throws SpecError.
Family family_from_tag(const std::string& tag);

/// Name of the family parameter ("lambda", "delta", "theta"), or nullopt.
std::optional<std::string> parameter_name(Family family);

/// Immutable description of a copula. Construction does not validate; see
/// validate() and Copula.
struct CopulaSpec {
  Family family = Family::Product;
  std::size_t dim = 2;
  std::optional<double> parameter;
  /// Set only for Family::Survival.
  std::shared_ptr<const CopulaSpec> inner;

  static CopulaSpec product(std::size_t dim);
  static CopulaSpec upper_frechet(std::size_t dim);
  static CopulaSpec lower_frechet(std::size_t dim = 2);
  static CopulaSpec fgm(std::size_t dim, double lambda);
  static CopulaSpec amh(double delta);
  static CopulaSpec convex_pi_m(std::size_t dim, double theta);
  static CopulaSpec survival_of(CopulaSpec inner);

  /// Builds a spec from a family tag ("fgm", "survival-of:amh", ...), a
  /// dimension and an optional parameter. Does not validate ranges.
  static CopulaSpec parse(const std::string& tag, std::size_t dim, std::optional<double> parameter);

  /// "fgm", "survival-of:fgm", ...
  std::string tag() const;
  /// Human-readable, e.g. "FGM(n=3, lambda=0.5)".
  std::string describe() const;

  friend bool operator==(const CopulaSpec& a, const CopulaSpec& b);
};

/// Throws SpecError (or DimensionError) unless every family invariant holds.
void validate(const CopulaSpec& spec);

/// A validated copula, ready for evaluation.
class Copula {
 public:
  explicit Copula(CopulaSpec spec);

  const CopulaSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return spec_.dim; }

  /// C(u). Throws DimensionError if u has the wrong size. Coordinates are not
  /// range-checked here; UnitPoint does that.
  double operator()(std::span<const double> u) const;

 private:
  CopulaSpec spec_;
  std::shared_ptr<const Copula> inner_;
};

double eval(const Copula& copula, const UnitPoint& u);

/// P[U_i >= 1 - u_i for all i] for any function treated as a copula, by
/// inclusion-exclusion over subsets S of the coordinates:
///   sum_S (-1)^|S| C(w_S),  (w_S)_i = 1 - u_i for i in S, 1 otherwise.
template <class Fn>
double survival_transform(const Fn& copula, std::span<const double> u) {
  const std::size_t n = u.size();
  std::vector<double> w(n);
  double total = 0.0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    int size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((subset >> i) & 1u) {
        w[i] = 1.0 - u[i];
        ++size;
      } else {
        w[i] = 1.0;
      }
    }
    const double term = copula(std::span<const double>(w));
    total += (size % 2 == 0) ? term : -term;
  }
  return total;
}

/// Survival copula of `copula` at u.
double survival_eval(const Copula& copula, const UnitPoint& u);
double survival_eval(const Copula& copula, std::span<const double> u);

/// Frechet-Hoeffding bounds as plain functions (W^n is not a copula for n >= 3).
double lower_frechet_bound(std::span<const double> u);
double upper_frechet_bound(std::span<const double> u);

}  // namespace dirmono
