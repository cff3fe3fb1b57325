#include "dirmono/checker.hpp"

#include <algorithm>
#include <cmath>

#include "dirmono/error.hpp"
#include "lattice.hpp"
#include "parallel.hpp"

namespace dirmono {

using detail::Index;
using detail::Lattice;

GridSpec::GridSpec(std::size_t resolution) : g_(resolution) {
  if (resolution < 2) {
    throw DomainError("grid resolution must be at least 2, got " + std::to_string(resolution));
  }
}

GridSpec GridSpec::default_for(std::size_t dim) {
  switch (dim) {
    case 2: return GridSpec(21);
    case 3: return GridSpec(9);
    case 4: return GridSpec(6);
    case 5: return GridSpec(4);
    case 6:
    case 7: return GridSpec(3);
    default: return GridSpec(2);
  }
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Inequality: return "inequality";
    case Method::Oracle: return "oracle";
    case Method::Both: return "both";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::PassAtResolution: return "PassAtResolution";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Unsupported: return "Unsupported";
  }
  return "?";
}

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::MixedInequality: return "mixed-inequality";
    case CheckKind::PureInequality: return "pure-inequality";
    case CheckKind::Oracle: return "oracle";
  }
  return "?";
}

void ScanStats::merge(const ScanStats& other) {
  pairs_tested += other.pairs_tested;
  max_slack = std::max(max_slack, other.max_slack);
  min_slack = std::min(min_slack, other.min_slack);
}

double ScanStats::max_abs_gap() const {
  if (pairs_tested == 0) return 0.0;
  return std::max(std::abs(max_slack), std::abs(min_slack));
}

namespace {

bool increasing(DependenceNotion n) { return n == DependenceNotion::Increasing; }

/// Point whose coordinates in `swap_mask` come from `from`, the rest from `base`.
std::vector<double> swap_in(std::span<const double> base, std::span<const double> from,
                            std::uint32_t swap_mask) {
  std::vector<double> out(base.begin(), base.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if ((swap_mask >> k) & 1u) out[k] = from[k];
  }
  return out;
}

struct Sides {
  double lhs;
  double rhs;
};

/// Orders the pair product P = T(u)T(u') and swapped product Q into lhs <= rhs
/// form. Mixed directions require P <= Q for I, pure directions P >= Q.
Sides orient(double pair, double swapped, bool pure, DependenceNotion notion) {
  const bool pair_on_left = (pure != increasing(notion));
  return pair_on_left ? Sides{pair, swapped} : Sides{swapped, pair};
}

void require_ordered(const UnitPoint& u, const UnitPoint& u_prime) {
  if (!u.precedes(u_prime)) throw DomainError("pair check requires u <= u' componentwise");
}

void require_dim(const Copula& copula, std::size_t n) {
  if (copula.dim() != n) throw DimensionError("copula and direction dimensions differ");
}

Sides mixed_sides(const Copula& copula, const Direction& d, const UnitPoint& u, const UnitPoint& up,
                  DependenceNotion notion) {
  const std::uint32_t swap = d.negative_mask();
  const auto a1 = swap_in(u.coords(), up.coords(), swap);
  const auto a2 = swap_in(up.coords(), u.coords(), swap);
  const double pair = orthant_prob(copula, d, u) * orthant_prob(copula, d, up);
  const double swapped = orthant_prob(copula, d, std::span<const double>(a1)) *
                         orthant_prob(copula, d, std::span<const double>(a2));
  return orient(pair, swapped, false, notion);
}

Sides pure_sides(const Copula& copula, int sign, const UnitPoint& u, const UnitPoint& up,
                 DependenceNotion notion) {
  auto h = [&](std::span<const double> x) {
    return sign < 0 ? copula(x) : survival_eval(copula, x);
  };
  const auto a1 = swap_in(u.coords(), up.coords(), 1u);
  const auto a2 = swap_in(up.coords(), u.coords(), 1u);
  const double pair = h(u.coords()) * h(up.coords());
  const double swapped = h(a1) * h(a2);
  return orient(pair, swapped, true, notion);
}

PairResult finish_pair(const Direction& d, CheckKind kind, DependenceNotion notion, const UnitPoint& u,
                       const UnitPoint& up, Sides s, double tol) {
  PairResult result{s.lhs, s.rhs, std::nullopt};
  if (s.lhs - s.rhs > tol) {
    result.counterexample =
        Counterexample{d, kind, notion, u, up, std::nullopt, std::nullopt, s.lhs, s.rhs, s.lhs - s.rhs};
  }
  return result;
}

Direction pure_direction(std::size_t n, int sign) {
  if (sign != 1 && sign != -1) throw MalformedDirection("pure direction sign must be -1 or +1");
  return Direction::from_mask(n, sign < 0 ? ((n >= 32 ? ~0u : (1u << n) - 1u)) : 0u);
}

MethodVerdict to_method_verdict(Method method, detail::ChunkResult<Counterexample> r) {
  MethodVerdict v;
  v.method = method;
  v.stats = r.stats;
  if (r.hit) {
    v.outcome = Outcome::Refuted;
    v.counterexample = std::move(r.hit);
  }
  return v;
}

DirectionVerdict single_method(const Direction& d, Method method, DependenceNotion notion, MethodVerdict mv) {
  DirectionVerdict v{d, method, notion, mv.outcome, mv.counterexample, mv.stats, std::nullopt, std::nullopt, false};
  if (method == Method::Inequality) {
    v.inequality = std::move(mv);
  } else {
    v.oracle = std::move(mv);
  }
  return v;
}

/// Pair scan for the inequality route on a tabulated lattice function.
detail::ChunkResult<Counterexample> scan_pairs(const Lattice& lat, const std::vector<double>& table,
                                               const Direction& d, CheckKind kind, std::uint32_t swap_mask,
                                               const CheckOptions& opt) {
  const bool pure = kind == CheckKind::PureInequality;
  const std::size_t n = lat.dim();
  const std::uint32_t g = lat.g();

  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    detail::ChunkResult<Counterexample> out;
    Index iu, iup(n), a1(n), a2(n);
    for (std::size_t a = begin; a < end; ++a) {
      lat.decode(a, iu);
      iup = iu;
      const double tu = table[a];
      for (;;) {
        for (std::size_t k = 0; k < n; ++k) {
          const bool swap = (swap_mask >> k) & 1u;
          a1[k] = swap ? iup[k] : iu[k];
          a2[k] = swap ? iu[k] : iup[k];
        }
        const double pair = tu * table[lat.encode(iup)];
        const double swapped = table[lat.encode(a1)] * table[lat.encode(a2)];
        const Sides s = orient(pair, swapped, pure, opt.notion);
        out.stats.record(s.rhs - s.lhs);
        if (s.lhs - s.rhs > opt.tol) {
          out.hit = Counterexample{d,           kind,        opt.notion, lat.point(iu),
                                   lat.point(iup), std::nullopt, std::nullopt, s.lhs,
                                   s.rhs,       s.lhs - s.rhs};
          return out;
        }
        // odometer over iup >= iu in lexicographic order
        std::size_t k = n;
        while (k-- > 0) {
          if (++iup[k] < g) break;
          iup[k] = iu[k];
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
    return out;
  };
  return detail::first_hit_reduce<Counterexample>(lat.size(), opt.threads, run_chunk);
}

}  // namespace

PairResult check_pair_mixed(const Copula& copula, const Direction& d, const UnitPoint& u,
                            const UnitPoint& u_prime, double tol, DependenceNotion notion) {
  require_dim(copula, d.dim());
  if (d.is_pure()) {
    throw UnsupportedDirection("mixed-direction inequality needs I and J non-empty, got " + d.to_string());
  }
  require_ordered(u, u_prime);
  if (u.dim() != d.dim()) throw DimensionError("check_pair_mixed: dimension mismatch");
  return finish_pair(d, CheckKind::MixedInequality, notion, u, u_prime,
                     mixed_sides(copula, d, u, u_prime, notion), tol);
}

PairResult check_pair_pure(const Copula& copula, int sign, const UnitPoint& u, const UnitPoint& u_prime,
                           double tol, DependenceNotion notion, bool allow_conjectural) {
  const std::size_t n = copula.dim();
  if (n >= 4 && !allow_conjectural) {
    throw UnsupportedDirection("pure-direction inequality is characterized only for n = 2, 3; n = " +
                               std::to_string(n) + " needs the oracle or an explicit conjectural check");
  }
  if (u.dim() != n) throw DimensionError("check_pair_pure: dimension mismatch");
  require_ordered(u, u_prime);
  const Direction d = pure_direction(n, sign);
  return finish_pair(d, CheckKind::PureInequality, notion, u, u_prime,
                     pure_sides(copula, sign, u, u_prime, notion), tol);
}

DirectionVerdict check_direction_inequality(const Copula& copula, const Direction& d, const GridSpec& grid,
                                            const CheckOptions& options) {
  require_dim(copula, d.dim());
  const std::size_t n = d.dim();
  const Lattice lat(n, grid);

  if (d.is_mixed()) {
    const auto table = lat.tabulate([&](std::span<const double> v) { return orthant_prob(copula, d, v); });
    auto mv = to_method_verdict(Method::Inequality,
                                scan_pairs(lat, table, d, CheckKind::MixedInequality, d.negative_mask(), options));
    return single_method(d, Method::Inequality, options.notion, std::move(mv));
  }

  const bool conjectural = n >= 4;
  if (conjectural && !options.allow_conjectural_pure) {
    MethodVerdict mv;
    mv.method = Method::Inequality;
    mv.outcome = Outcome::Unsupported;
    return single_method(d, Method::Inequality, options.notion, std::move(mv));
  }
  const bool all_negative = d.positives().empty();
  const auto table = lat.tabulate([&](std::span<const double> v) {
    return all_negative ? copula(v) : survival_eval(copula, v);
  });
  auto mv = to_method_verdict(Method::Inequality,
                              scan_pairs(lat, table, d, CheckKind::PureInequality, 1u, options));
  mv.conjectural = conjectural;
  return single_method(d, Method::Inequality, options.notion, std::move(mv));
}

DirectionVerdict check_direction_oracle(const Copula& copula, const Direction& d, const GridSpec& grid,
                                        const CheckOptions& options) {
  require_dim(copula, d.dim());
  const std::size_t n = d.dim();
  const Lattice lat(n, grid);
  const std::uint32_t g = lat.g();
  const auto table = lat.tabulate([&](std::span<const double> v) { return orthant_prob(copula, d, v); });
  const bool inc = increasing(options.notion);

  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    detail::ChunkResult<Counterexample> out;
    Index iv, iw(n), join(n);
    for (std::size_t t = begin; t < end; ++t) {
      lat.decode(t, iv);
      std::fill(iw.begin(), iw.end(), 0u);
      for (std::size_t w = 0; w < lat.size(); ++w) {
        if (w > 0) {
          std::size_t k = n;
          while (k-- > 0) {
            if (++iw[k] < g) break;
            iw[k] = 0;
          }
        }
        const double den1 = table[w];
        for (std::size_t k = 0; k < n; ++k) {
          join[k] = d.is_negative(k) ? std::min(iv[k], iw[k]) : std::max(iv[k], iw[k]);
        }
        const std::size_t j1 = lat.encode(join);

        for (std::size_t k = 0; k < n; ++k) {
          const bool neg = d.is_negative(k);
          // one lattice step up in t-space along axis k
          if (neg ? iw[k] == 0 : iw[k] + 1 >= g) continue;
          const std::uint32_t moved = neg ? iw[k] - 1 : iw[k] + 1;
          // D: compare only along axes the join inherits from the condition
          if (!inc && (neg ? iv[k] < iw[k] : iv[k] > iw[k])) continue;
          const std::size_t w2 = neg ? w - lat.stride(k) : w + lat.stride(k);
          const double den2 = table[w2];
          if (den1 < options.eps_den || den2 < options.eps_den) continue;

          const std::uint32_t join2 = neg ? std::min(iv[k], moved) : std::max(iv[k], moved);
          const std::size_t j2 = j1 + join2 * lat.stride(k) - join[k] * lat.stride(k);
          const double c1 = table[j1] / den1;
          const double c2 = table[j2] / den2;
          const double lhs = inc ? c1 : c2;
          const double rhs = inc ? c2 : c1;
          out.stats.record(rhs - lhs);
          if (lhs - rhs > options.tol) {
            Index before = iw, after = iw;
            after[k] = moved;
            const Index& low = neg ? after : before;
            const Index& high = neg ? before : after;
            out.hit = Counterexample{d,           CheckKind::Oracle, options.notion, lat.point(low),
                                     lat.point(high), lat.point(iv), k,             lhs,
                                     rhs,         lhs - rhs};
            return out;
          }
        }
      }
    }
    return out;
  };

  auto mv = to_method_verdict(Method::Oracle,
                              detail::first_hit_reduce<Counterexample>(lat.size(), options.threads, run_chunk));
  return single_method(d, Method::Oracle, options.notion, std::move(mv));
}

DirectionVerdict check_direction(const Copula& copula, const Direction& d, const GridSpec& grid, Method method,
                                 const CheckOptions& options) {
  if (method == Method::Inequality) return check_direction_inequality(copula, d, grid, options);
  if (method == Method::Oracle) return check_direction_oracle(copula, d, grid, options);

  const DirectionVerdict iv = check_direction_inequality(copula, d, grid, options);
  const DirectionVerdict ov = check_direction_oracle(copula, d, grid, options);
  const MethodVerdict& im = *iv.inequality;
  const MethodVerdict& om = *ov.oracle;

  DirectionVerdict v{d, Method::Both, options.notion, om.outcome, om.counterexample, om.stats, im, om, false};
  if (im.outcome == Outcome::Unsupported || im.conjectural) return v;

  if (im.outcome == om.outcome) {
    v.outcome = im.outcome;
    v.counterexample = im.counterexample;
    v.stats = im.stats;
    return v;
  }
  v.methods_disagree = true;
  v.outcome = Outcome::Refuted;
  const MethodVerdict& refuting = im.outcome == Outcome::Refuted ? im : om;
  v.counterexample = refuting.counterexample;
  v.stats = refuting.stats;
  return v;
}

bool ScanResult::any_disagreement() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.methods_disagree; });
}

bool ScanResult::any_refuted() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const auto& v) { return v.outcome == Outcome::Refuted; });
}

bool ScanResult::any_unsupported() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const auto& v) { return v.outcome == Outcome::Unsupported; });
}

std::vector<Direction> ScanResult::with_outcome(Outcome outcome) const {
  std::vector<Direction> out;
  for (const auto& v : verdicts) {
    if (v.outcome == outcome) out.push_back(v.direction);
  }
  return out;
}

ScanResult scan_directions(const Copula& copula, const std::vector<Direction>& directions, const GridSpec& grid,
                           Method method, const CheckOptions& options) {
  ScanResult result{copula.spec(), grid, method, options, {}};
  result.verdicts.reserve(directions.size());
  for (const auto& d : directions) result.verdicts.push_back(check_direction(copula, d, grid, method, options));
  return result;
}

ScanResult scan_all_directions(const Copula& copula, const GridSpec& grid, Method method,
                               const CheckOptions& options) {
  return scan_directions(copula, all_directions(copula.dim()), grid, method, options);
}

Recheck reverify(const Copula& copula, const Counterexample& cx, double eps_den) {
  const Direction& d = cx.direction;
  switch (cx.kind) {
    case CheckKind::MixedInequality: {
      const Sides s = mixed_sides(copula, d, cx.u_low, cx.u_high, cx.notion);
      return {s.lhs, s.rhs};
    }
    case CheckKind::PureInequality: {
      const Sides s = pure_sides(copula, d.sign(0), cx.u_low, cx.u_high, cx.notion);
      return {s.lhs, s.rhs};
    }
    case CheckKind::Oracle: {
      if (!cx.target || !cx.axis) throw DomainError("oracle counterexample without target or axis");
      const bool neg = d.is_negative(*cx.axis);
      const UnitPoint& before = neg ? cx.u_high : cx.u_low;
      const UnitPoint& after = neg ? cx.u_low : cx.u_high;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const double c1 = conditional_prob(copula, d, *cx.target, before, eps_den).value_or(nan);
      const double c2 = conditional_prob(copula, d, *cx.target, after, eps_den).value_or(nan);
      return increasing(cx.notion) ? Recheck{c1, c2} : Recheck{c2, c1};
    }
  }
  return {0.0, 0.0};
}

}  // namespace dirmono
