#pragma once

// Seeded random inputs for property tests.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "dirmono/core.hpp"
#include "dirmono/families.hpp"

namespace dirmono::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin() { return index(0, 1) == 1; }

  std::vector<double> coords(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform();
    return v;
  }
  UnitPoint point(std::size_t n) { return UnitPoint(coords(n)); }

  Direction direction(std::size_t n) {
    return Direction::from_mask(n, static_cast<std::uint32_t>(index(0, (std::size_t{1} << n) - 1)));
  }
  Direction mixed_direction(std::size_t n) {
    return Direction::from_mask(n, static_cast<std::uint32_t>(index(1, (std::size_t{1} << n) - 2)));
  }

  Box box(std::size_t n) {
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = uniform(), b = uniform();
      lo[i] = std::min(a, b);
      hi[i] = std::max(a, b);
    }
    return Box(UnitPoint(lo), UnitPoint(hi));
  }

  /// A valid spec of any family in dimension n (dimension-restricted families
  /// only when n = 2); occasionally wrapped in a survival transform.
  CopulaSpec spec(std::size_t n) {
    CopulaSpec base = base_spec(n);
    if (index(0, 3) == 0) return CopulaSpec::survival_of(base);
    return base;
  }

  CopulaSpec base_spec(std::size_t n) {
    const std::size_t pick = index(0, n == 2 ? 5 : 3);
    switch (pick) {
      case 0: return CopulaSpec::product(n);
      case 1: return CopulaSpec::upper_frechet(n);
      case 2: return CopulaSpec::fgm(n, uniform(-1.0, 1.0));
      case 3: return CopulaSpec::convex_pi_m(n, uniform());
      case 4: return CopulaSpec::lower_frechet(2);
      default: return CopulaSpec::amh(uniform(-1.0, 1.0));
    }
  }

  /// One spec of every family (including a survival wrapper) in dimension n.
  std::vector<CopulaSpec> every_family(std::size_t n) {
    std::vector<CopulaSpec> out{CopulaSpec::product(n), CopulaSpec::upper_frechet(n),
                                CopulaSpec::fgm(n, uniform(-1.0, 1.0)), CopulaSpec::convex_pi_m(n, uniform())};
    if (n == 2) {
      out.push_back(CopulaSpec::lower_frechet(2));
      out.push_back(CopulaSpec::amh(uniform(-1.0, 1.0)));
    }
    out.push_back(CopulaSpec::survival_of(CopulaSpec::fgm(n, uniform(-1.0, 1.0))));
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dirmono::testing
