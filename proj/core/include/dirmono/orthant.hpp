#pragma once

// Orthant probabilities of a copula in a sign direction.
//
// For a direction with negative set I and positive set J,
//
//   F_alpha(v) = P[U_j > v_j for j in J, U_i <= v_i for i in I]
//              = sum over S subset of J of (-1)^|S| C_{I u S}(v),
//
// where C_sigma is the sigma-marginal (arguments outside sigma set to 1) and
// C_{empty} = 1. Every characterization inequality and the conditional
// probability oracle are built from this quantity.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "dirmono/core.hpp"
#include "dirmono/families.hpp"

namespace dirmono {

/// Default absolute guard below which a conditioning probability is treated as zero.
inline constexpr double kDefaultEpsDen = 1e-12;

/// Sorted subset sigma of {0..n-1}. May be empty or full.
class MarginalSelector {
 public:
  /// Throws DimensionError for an index >= dim and DomainError for duplicates.
  MarginalSelector(std::size_t dim, std::vector<std::size_t> indices);
  MarginalSelector(std::size_t dim, std::initializer_list<std::size_t> indices);
  static MarginalSelector from_mask(std::size_t dim, std::uint32_t mask);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1u; }

  friend bool operator==(const MarginalSelector& a, const MarginalSelector& b) {
    return a.dim_ == b.dim_ && a.mask_ == b.mask_;
  }

 private:
  std::size_t dim_;
  std::vector<std::size_t> indices_;
  std::uint32_t mask_ = 0;
};

/// One term of the signed marginal expansion: sign * C_{I u S}.
struct SignedSumTerm {
  std::uint32_t subset = 0;  ///< S as a bitmask over J
  int sign = 1;              ///< (-1)^|S|
  MarginalSelector selector; ///< I u S
};

/// The 2^|J| terms of the expansion for direction d, ordered by |S| and then
/// by the bitmask of S.
std::vector<SignedSumTerm> signed_sum_terms(const Direction& d);

/// C_sigma evaluated at u: coordinates outside sigma are replaced by 1.
/// sigma empty gives 1.
double marginal_eval(const Copula& copula, const MarginalSelector& sigma, const UnitPoint& u);
double marginal_eval(const Copula& copula, std::uint32_t sigma_mask, std::span<const double> u);

/// F_alpha(v) by the signed marginal expansion. Not clamped: rounding may put
/// the value a few ulps outside [0,1].
double orthant_prob(const Copula& copula, const Direction& d, const UnitPoint& v);
double orthant_prob(const Copula& copula, const Direction& d, std::span<const double> v);

/// Clamps a probability to [0,1] for reporting.
double clamp_probability(double p);

/// P[alpha U > v | alpha U > v'] in copula coordinates:
/// F(join(v, v')) / F(v'); nullopt when F(v') < eps_den.
std::optional<double> conditional_prob(const Copula& copula, const Direction& d, const UnitPoint& v,
                                       const UnitPoint& v_cond, double eps_den = kDefaultEpsDen);

}  // namespace dirmono
