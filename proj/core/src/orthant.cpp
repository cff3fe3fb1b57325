#include "dirmono/orthant.hpp"

#include <algorithm>
#include <bit>

#include "dirmono/error.hpp"

namespace dirmono {

MarginalSelector::MarginalSelector(std::size_t dim, std::vector<std::size_t> indices)
    : dim_(dim), indices_(std::move(indices)) {
  if (dim_ > kMaxDim) throw DimensionError("selector dimension exceeds the supported maximum");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= dim_) {
      throw DimensionError("marginal index " + std::to_string(indices_[i] + 1) + " is out of range 1.." +
                           std::to_string(dim_));
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw DomainError("marginal index " + std::to_string(indices_[i] + 1) + " repeated");
    }
    mask_ |= 1u << indices_[i];
  }
}

MarginalSelector::MarginalSelector(std::size_t dim, std::initializer_list<std::size_t> indices)
    : MarginalSelector(dim, std::vector<std::size_t>(indices)) {}

MarginalSelector MarginalSelector::from_mask(std::size_t dim, std::uint32_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < 32; ++i) {
    if ((mask >> i) & 1u) idx.push_back(i);
  }
  return MarginalSelector(dim, std::move(idx));
}

std::vector<SignedSumTerm> signed_sum_terms(const Direction& d) {
  const auto& pos = d.positives();
  const std::uint32_t count = 1u << pos.size();
  std::vector<std::uint32_t> subsets(count);
  for (std::uint32_t s = 0; s < count; ++s) subsets[s] = s;
  std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });

  std::vector<SignedSumTerm> terms;
  terms.reserve(count);
  for (std::uint32_t local : subsets) {
    std::uint32_t subset = 0;
    for (std::size_t b = 0; b < pos.size(); ++b) {
      if ((local >> b) & 1u) subset |= 1u << pos[b];
    }
    const int sign = (std::popcount(local) % 2 == 0) ? 1 : -1;
    terms.push_back({subset, sign, MarginalSelector::from_mask(d.dim(), d.negative_mask() | subset)});
  }
  return terms;
}

double marginal_eval(const Copula& copula, std::uint32_t sigma_mask, std::span<const double> u) {
  if (u.size() != copula.dim()) throw DimensionError("marginal_eval: dimension mismatch");
  if (sigma_mask == 0) return 1.0;
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = ((sigma_mask >> i) & 1u) ? u[i] : 1.0;
  return copula(w);
}

double marginal_eval(const Copula& copula, const MarginalSelector& sigma, const UnitPoint& u) {
  if (sigma.dim() != copula.dim()) throw DimensionError("marginal_eval: selector dimension mismatch");
  return marginal_eval(copula, sigma.mask(), u.coords());
}

double orthant_prob(const Copula& copula, const Direction& d, std::span<const double> v) {
  const std::size_t n = d.dim();
  if (v.size() != n || copula.dim() != n) throw DimensionError("orthant_prob: dimension mismatch");

  // Walk the subsets of J as sub-masks of the positive mask.
  const std::uint32_t neg = d.negative_mask();
  const std::uint32_t pos = d.positive_mask();
  double total = 0.0;
  std::uint32_t s = pos;
  while (true) {
    const double term = marginal_eval(copula, neg | s, v);
    total += (std::popcount(s) % 2 == 0) ? term : -term;
    if (s == 0) break;
    s = (s - 1) & pos;
  }
  return total;
}

double orthant_prob(const Copula& copula, const Direction& d, const UnitPoint& v) {
  return orthant_prob(copula, d, v.coords());
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

std::optional<double> conditional_prob(const Copula& copula, const Direction& d, const UnitPoint& v,
                                       const UnitPoint& v_cond, double eps_den) {
  const double den = orthant_prob(copula, d, v_cond);
  if (den < eps_den) return std::nullopt;
  return orthant_prob(copula, d, join_direction(d, v, v_cond)) / den;
}

}  // namespace dirmono
