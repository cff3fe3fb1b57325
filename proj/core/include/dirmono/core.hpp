#pragma once

// Foundational domain types: points of the unit hypercube, sign directions,
// boxes, and the n-increasing box measure used by the copula axiom tests.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dirmono {

/// Largest dimension the library handles. Index sets are stored as bitmasks.
inline constexpr std::size_t kMaxDim = 24;

/// A point of [0,1]^n, n >= 2.
class UnitPoint {
 public:
  explicit UnitPoint(std::vector<double> coords);
  UnitPoint(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Componentwise u <= v.
  bool precedes(const UnitPoint& other) const;

  friend bool operator==(const UnitPoint&, const UnitPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Sign vector alpha in {-1,+1}^n. `negatives()` is the index set I
/// (alpha_i = -1), `positives()` the set J. Indices are 0-based here; reports
/// print them 1-based.
class Direction {
 public:
  /// Throws MalformedDirection for entries other than +-1 and DimensionError
  /// for fewer than two entries.
  static Direction make(std::span<const int> signs);
  static Direction make(std::initializer_list<int> signs);

  /// Direction whose negative set is the bitmask `neg_mask`.
  static Direction from_mask(std::size_t dim, std::uint32_t neg_mask);

  /// Parses comma-separated "+"/"-" tokens, e.g. "+,+,-".
  static Direction parse(const std::string& text);

  std::size_t dim() const noexcept { return signs_.size(); }
  int sign(std::size_t i) const { return signs_[i]; }
  std::span<const int> signs() const noexcept { return signs_; }
  const std::vector<std::size_t>& negatives() const noexcept { return neg_; }
  const std::vector<std::size_t>& positives() const noexcept { return pos_; }
  std::uint32_t negative_mask() const noexcept { return neg_mask_; }
  std::uint32_t positive_mask() const noexcept;

  bool is_negative(std::size_t i) const { return (neg_mask_ >> i) & 1u; }
  /// All signs equal (I or J empty).
  bool is_pure() const noexcept { return neg_.empty() || pos_.empty(); }
  bool is_mixed() const noexcept { return !is_pure(); }

  /// "(+,-,+)".
  std::string to_string() const;
  /// "+,-,+", the command-line token form accepted by parse().
  std::string to_token() const;

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.signs_ == b.signs_;
  }

 private:
  Direction() = default;

  std::vector<int> signs_;
  std::vector<std::size_t> neg_;
  std::vector<std::size_t> pos_;
  std::uint32_t neg_mask_ = 0;
};

/// Every direction of dimension n, all-positive first, in lexicographic order
/// with '+' before '-'.
std::vector<Direction> all_directions(std::size_t dim);

/// Closed box [lower, upper] in [0,1]^n.
class Box {
 public:
  Box(UnitPoint lower, UnitPoint upper);

  const UnitPoint& lower() const noexcept { return lower_; }
  const UnitPoint& upper() const noexcept { return upper_; }
  std::size_t dim() const noexcept { return lower_.dim(); }

 private:
  UnitPoint lower_;
  UnitPoint upper_;
};

enum class DependenceNotion { Increasing, Decreasing };

/// "I" or "D".
const char* to_string(DependenceNotion notion);

/// Coordinates of the intersection of two directional events: max on J, min on I.
UnitPoint join_direction(const Direction& d, const UnitPoint& v, const UnitPoint& w);

using PointFunction = std::function<double(std::span<const double>)>;

/// Alternating vertex sum of `eval` over the box: sum over vertices of
/// (-1)^(number of lower coordinates) * eval(vertex).
double box_volume(const PointFunction& eval, const Box& box);

}  // namespace dirmono
