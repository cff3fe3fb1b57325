#pragma once

// Grid verification of directional monotonicity.
//
// Two independent routes decide whether a copula is I(alpha) (or D(alpha)) on
// a finite interior lattice:
//
//  * Inequality: the pairwise product characterization. For a mixed direction
//    (I and J non-empty), with F the orthant probability of the direction,
//        F(u) F(u') <= F(u <I u') F(u' <I u)      for all u <= u',
//    where (a <I b) takes the I-coordinates from b and the rest from a.
//    For a pure direction in n = 2, 3 the total-positivity form
//        H(u) H(u') >= H(u <1 u') H(u' <1 u)
//    is used with H = C (all -1) or H = survival copula (all +1) and the swap
//    set {first coordinate}.
//  * Oracle: the definition. The conditional probability
//        P[alpha U > v | alpha U > v']
//    must be nondecreasing (I) or nonincreasing (D) as v' moves one lattice
//    step "up" along any axis (up = +h on J axes, -h on I axes).
//
// A pass is reported as PassAtResolution: no violation on the lattice, which is
// evidence and not a proof of the continuum property.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dirmono/core.hpp"
#include "dirmono/families.hpp"
#include "dirmono/orthant.hpp"

namespace dirmono {

inline constexpr double kDefaultTol = 1e-9;

/// Open interior lattice { k/(g+1) : k = 1..g } on every axis.
class GridSpec {
 public:
  /// Throws DomainError if resolution < 2.
  explicit GridSpec(std::size_t resolution);

  std::size_t resolution() const noexcept { return g_; }
  /// Coordinate of lattice index k in 0..g-1.
  double point(std::size_t k) const noexcept {
    return static_cast<double>(k + 1) / static_cast<double>(g_ + 1);
  }
  double step() const noexcept { return 1.0 / static_cast<double>(g_ + 1); }

  /// 21 (n=2), 9 (n=3), 6 (n=4), 4 (n=5), 3 (n=6,7), 2 beyond.
  static GridSpec default_for(std::size_t dim);

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t g_;
};

enum class Method { Inequality, Oracle, Both };
enum class Outcome { PassAtResolution, Refuted, Unsupported };
enum class CheckKind { MixedInequality, PureInequality, Oracle };

const char* to_string(Method m);
const char* to_string(Outcome o);
const char* to_string(CheckKind k);

/// A violating configuration, normalized so that the checked inequality reads
/// lhs <= rhs (+ tol) and violation = lhs - rhs.
///
/// Inequality checks: u_low <= u_high is the checked pair.
/// Oracle checks: u_low and u_high are the two conditioning points (they differ
/// on `axis` only), `target` is the event point v.
struct Counterexample {
  Direction direction;
  CheckKind kind;
  DependenceNotion notion;
  UnitPoint u_low;
  UnitPoint u_high;
  std::optional<UnitPoint> target;
  std::optional<std::size_t> axis;
  double lhs;
  double rhs;
  double violation;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct ScanStats {
  std::uint64_t pairs_tested = 0;
  /// max and min of (rhs - lhs) over the tested pairs
  double max_slack = -std::numeric_limits<double>::infinity();
  double min_slack = std::numeric_limits<double>::infinity();

  void record(double slack) {
    ++pairs_tested;
    if (slack > max_slack) max_slack = slack;
    if (slack < min_slack) min_slack = slack;
  }
  void merge(const ScanStats& other);
  /// max |lhs - rhs| over the tested pairs; 0 when nothing was tested.
  double max_abs_gap() const;

  friend bool operator==(const ScanStats&, const ScanStats&) = default;
};

struct MethodVerdict {
  Method method = Method::Inequality;  ///< Inequality or Oracle
  Outcome outcome = Outcome::PassAtResolution;
  std::optional<Counterexample> counterexample;
  ScanStats stats;
  /// pure direction in n >= 4 checked with the single-swap inequality
  bool conjectural = false;

  friend bool operator==(const MethodVerdict&, const MethodVerdict&) = default;
};

struct DirectionVerdict {
  Direction direction;
  Method method;
  DependenceNotion notion;
  Outcome outcome;
  std::optional<Counterexample> counterexample;
  ScanStats stats;
  /// Per-method results; for Method::Both both are set (the inequality one may
  /// be Unsupported).
  std::optional<MethodVerdict> inequality;
  std::optional<MethodVerdict> oracle;
  bool methods_disagree = false;

  bool conjectural() const { return inequality && inequality->conjectural; }

  friend bool operator==(const DirectionVerdict&, const DirectionVerdict&) = default;
};

struct CheckOptions {
  double tol = kDefaultTol;
  double eps_den = kDefaultEpsDen;
  DependenceNotion notion = DependenceNotion::Increasing;
  bool allow_conjectural_pure = false;
  /// 0 = hardware concurrency. Results do not depend on this value.
  std::size_t threads = 0;
};

/// Outcome of one pairwise check; `counterexample` is set iff it failed.
struct PairResult {
  double lhs;
  double rhs;
  std::optional<Counterexample> counterexample;

  bool passed() const { return !counterexample; }
  double slack() const { return rhs - lhs; }
};

/// Mixed-direction product inequality at one pair u <= u'.
/// Throws UnsupportedDirection for pure directions, DomainError unless u <= u'.
PairResult check_pair_mixed(const Copula& copula, const Direction& d, const UnitPoint& u,
                            const UnitPoint& u_prime, double tol = kDefaultTol,
                            DependenceNotion notion = DependenceNotion::Increasing);

/// Pure-direction single-swap inequality at one pair u <= u'. sign = -1 uses
/// C, sign = +1 the survival copula. Throws UnsupportedDirection for n >= 4
/// unless `allow_conjectural` is set.
PairResult check_pair_pure(const Copula& copula, int sign, const UnitPoint& u, const UnitPoint& u_prime,
                           double tol = kDefaultTol,
                           DependenceNotion notion = DependenceNotion::Increasing,
                           bool allow_conjectural = false);

/// Scans every lattice pair u <= u' in lexicographic order of (u, u').
/// Pure directions with n >= 4 are Unsupported unless conjectural checks are
/// allowed.
DirectionVerdict check_direction_inequality(const Copula& copula, const Direction& d,
                                            const GridSpec& grid, const CheckOptions& options = {});

/// Scans every (target, condition, axis) triple in lexicographic order.
DirectionVerdict check_direction_oracle(const Copula& copula, const Direction& d, const GridSpec& grid,
                                        const CheckOptions& options = {});

/// Runs the requested method(s). For Method::Both the outcome is taken from the
/// methods that support the direction; `methods_disagree` is set when both
/// support it and their outcomes differ (the outcome is then Refuted).
DirectionVerdict check_direction(const Copula& copula, const Direction& d, const GridSpec& grid,
                                 Method method, const CheckOptions& options = {});

struct ScanResult {
  CopulaSpec spec;
  GridSpec grid;
  Method method;
  CheckOptions options;
  std::vector<DirectionVerdict> verdicts;

  bool any_disagreement() const;
  bool any_refuted() const;
  bool any_unsupported() const;
  std::vector<Direction> with_outcome(Outcome outcome) const;
};

ScanResult scan_directions(const Copula& copula, const std::vector<Direction>& directions,
                           const GridSpec& grid, Method method, const CheckOptions& options = {});

/// One verdict per alpha in {-1,+1}^n, in the order of all_directions().
ScanResult scan_all_directions(const Copula& copula, const GridSpec& grid, Method method,
                               const CheckOptions& options = {});

/// Both sides of a counterexample recomputed from scratch through the orthant
/// module (no lattice tables).
struct Recheck {
  double lhs;
  double rhs;
  double violation() const { return lhs - rhs; }
};
Recheck reverify(const Copula& copula, const Counterexample& cx, double eps_den = kDefaultEpsDen);

}  // namespace dirmono
