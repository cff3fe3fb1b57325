#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "dirmono/checker.hpp"
#include "dirmono/error.hpp"
#include "oracles/brute_force.hpp"
#include "support/generators.hpp"

using namespace dirmono;

namespace {

std::vector<int> signs(const Direction& d) { return {d.signs().begin(), d.signs().end()}; }

std::set<std::string> passing(const ScanResult& r) {
  std::set<std::string> out;
  for (const auto& d : r.with_outcome(Outcome::PassAtResolution)) out.insert(d.to_token());
  return out;
}

std::set<std::string> tokens(std::initializer_list<const char*> list) { return {list.begin(), list.end()}; }

/// Specs with parameters away from zero so that verdicts do not hinge on the
/// tolerance.
std::vector<CopulaSpec> reference_specs(std::size_t n) {
  std::vector<CopulaSpec> out{CopulaSpec::product(n),          CopulaSpec::upper_frechet(n),
                              CopulaSpec::fgm(n, 0.5),         CopulaSpec::fgm(n, -0.5),
                              CopulaSpec::fgm(n, 1.0),         CopulaSpec::convex_pi_m(n, 0.5),
                              CopulaSpec::survival_of(CopulaSpec::fgm(n, 0.75))};
  if (n == 2) {
    out.push_back(CopulaSpec::lower_frechet());
    out.push_back(CopulaSpec::amh(0.5));
    out.push_back(CopulaSpec::amh(-0.5));
    out.push_back(CopulaSpec::survival_of(CopulaSpec::amh(0.8)));
  }
  return out;
}

}  // namespace

TEST_CASE("GridSpec lattice") {
  const GridSpec g(21);
  CHECK(g.point(0) == doctest::Approx(1.0 / 22.0));
  CHECK(g.point(20) == doctest::Approx(21.0 / 22.0));
  CHECK(g.step() == doctest::Approx(1.0 / 22.0));
  CHECK_THROWS_AS(GridSpec(1), DomainError);
  CHECK(GridSpec::default_for(2).resolution() == 21);
  CHECK(GridSpec::default_for(3).resolution() == 9);
  CHECK(GridSpec::default_for(4).resolution() == 6);
  CHECK(GridSpec::default_for(5).resolution() == 4);
}

TEST_CASE("mixed pair checks") {
  const Copula pi3(CopulaSpec::product(3));
  const auto r = check_pair_mixed(pi3, Direction::make({1, 1, -1}), {0.1, 0.3, 0.2}, {0.6, 0.4, 0.9});
  CHECK(r.passed());
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-15);

  const Copula fgm(CopulaSpec::fgm(2, -0.5));
  CHECK(check_pair_mixed(fgm, Direction::make({1, -1}), {0.25, 0.25}, {0.75, 0.75}).passed());

  CHECK_THROWS_AS(check_pair_mixed(fgm, Direction::make({1, 1}), {0.25, 0.25}, {0.75, 0.75}), UnsupportedDirection);
}

TEST_CASE("pure pair checks") {
  const Copula m2(CopulaSpec::upper_frechet(2));
  const auto r = check_pair_pure(m2, -1, {0.3, 0.4}, {0.6, 0.8});
  CHECK(r.passed());
  // swapped pair (0.6,0.4),(0.3,0.8): 0.4 * 0.3 <= 0.3 * 0.6
  CHECK(r.lhs == doctest::Approx(0.12));
  CHECK(r.rhs == doctest::Approx(0.18));

  const Copula pi3(CopulaSpec::product(3));
  const auto e = check_pair_pure(pi3, +1, {0.1, 0.5, 0.2}, {0.3, 0.7, 0.9});
  CHECK(e.passed());
  CHECK(std::abs(e.lhs - e.rhs) <= 1e-15);

  const Copula pi4(CopulaSpec::product(4));
  CHECK_THROWS_AS(check_pair_pure(pi4, 1, {0.1, 0.1, 0.1, 0.1}, {0.2, 0.2, 0.2, 0.2}), UnsupportedDirection);
  CHECK(check_pair_pure(pi4, 1, {0.1, 0.1, 0.1, 0.1}, {0.2, 0.2, 0.2, 0.2}, kDefaultTol,
                        DependenceNotion::Increasing, true)
            .passed());
}

TEST_CASE("trivariate FGM pure negative direction depends on the parameter sign") {
  const GridSpec g(9);
  const Direction neg = Direction::make({-1, -1, -1});
  CHECK(check_direction_inequality(Copula(CopulaSpec::fgm(3, -0.5)), neg, g).outcome == Outcome::Refuted);
  CHECK(check_direction_inequality(Copula(CopulaSpec::fgm(3, 0.5)), neg, g).outcome == Outcome::PassAtResolution);
}

TEST_CASE("single-direction examples") {
  CHECK(check_direction_inequality(Copula(CopulaSpec::amh(0.5)), Direction::make({-1, 1}), GridSpec(21)).outcome ==
        Outcome::PassAtResolution);
  CHECK(check_direction_inequality(Copula(CopulaSpec::amh(-0.5)), Direction::make({1, 1}), GridSpec(21)).outcome ==
        Outcome::PassAtResolution);
  CHECK(check_direction(Copula(CopulaSpec::fgm(4, 0.5)), Direction::make({1, 1, -1, -1}), GridSpec(6), Method::Both)
            .outcome == Outcome::PassAtResolution);
  const Copula m4(CopulaSpec::upper_frechet(4));
  CHECK(check_direction_oracle(m4, Direction::make({1, 1, 1, 1}), GridSpec(6)).outcome == Outcome::PassAtResolution);
  CHECK(check_direction_oracle(m4, Direction::make({-1, -1, -1, -1}), GridSpec(6)).outcome ==
        Outcome::PassAtResolution);
  const Copula w2(CopulaSpec::lower_frechet());
  for (const char* t : {"+,-", "-,+"}) {
    CHECK(check_direction(w2, Direction::parse(t), GridSpec(21), Method::Both).outcome == Outcome::PassAtResolution);
  }
}

TEST_CASE("pure directions in four or more dimensions need the oracle") {
  const Copula pi4(CopulaSpec::product(4));
  const Direction all_pos = Direction::make({1, 1, 1, 1});
  const auto v = check_direction_inequality(pi4, all_pos, GridSpec(4));
  CHECK(v.outcome == Outcome::Unsupported);
  CHECK_FALSE(v.counterexample.has_value());

  CheckOptions conj;
  conj.allow_conjectural_pure = true;
  const auto c = check_direction_inequality(pi4, all_pos, GridSpec(4), conj);
  CHECK(c.outcome == Outcome::PassAtResolution);
  CHECK(c.conjectural());

  const auto both = check_direction(pi4, all_pos, GridSpec(4), Method::Both);
  CHECK(both.outcome == Outcome::PassAtResolution);
  CHECK(both.inequality->outcome == Outcome::Unsupported);
  CHECK(both.oracle->outcome == Outcome::PassAtResolution);
  CHECK_FALSE(both.methods_disagree);
}

TEST_CASE("classification of bivariate and trivariate examples") {
  const auto fgm2 = scan_all_directions(Copula(CopulaSpec::fgm(2, 0.5)), GridSpec(21), Method::Both);
  CHECK(passing(fgm2) == tokens({"+,+", "-,-"}));
  CHECK_FALSE(fgm2.any_disagreement());

  const auto fgm3 = scan_all_directions(Copula(CopulaSpec::fgm(3, -0.5)), GridSpec(9), Method::Both);
  CHECK(passing(fgm3) == tokens({"+,+,+", "+,-,-", "-,+,-", "-,-,+"}));
  CHECK_FALSE(fgm3.any_disagreement());

  const auto cpm = scan_all_directions(Copula(CopulaSpec::convex_pi_m(3, 0.5)), GridSpec(9), Method::Both);
  CHECK(passing(cpm).count("+,+,+") == 1);
  CHECK(passing(cpm).count("-,-,-") == 1);
}

TEST_CASE("first counterexample for FGM(lambda=0.5) on (+,-) matches closed-form orthant values") {
  const auto v = check_direction_inequality(Copula(CopulaSpec::fgm(2, 0.5)), Direction::make({1, -1}), GridSpec(21));
  REQUIRE(v.outcome == Outcome::Refuted);
  REQUIRE(v.counterexample.has_value());
  const Counterexample& cx = *v.counterexample;
  CHECK(cx.u_low == UnitPoint({1.0 / 22.0, 1.0 / 22.0}));
  CHECK(cx.u_high == UnitPoint({2.0 / 22.0, 2.0 / 22.0}));
  const std::vector<int> s{1, -1};
  const double a = 1.0 / 22.0, b = 2.0 / 22.0;
  const double lhs = oracle::fgm_orthant(0.5, s, {a, a}) * oracle::fgm_orthant(0.5, s, {b, b});
  const double rhs = oracle::fgm_orthant(0.5, s, {a, b}) * oracle::fgm_orthant(0.5, s, {b, a});
  CHECK(cx.lhs == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(cx.rhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(cx.violation == doctest::Approx(lhs - rhs).epsilon(1e-9));
  CHECK(cx.violation > kDefaultTol);
  // pairs are visited in lexicographic order, so everything before the hit passed
  CHECK(v.stats.pairs_tested >= 1);
  CHECK(v.stats.min_slack == doctest::Approx(-cx.violation));
}

TEST_CASE("every counterexample re-verifies from scratch") {
  testing::Gen gen(31);
  int seen = 0;
  for (std::size_t n = 2; n <= 3; ++n) {
    for (const CopulaSpec& spec : reference_specs(n)) {
      const Copula c(spec);
      for (Method m : {Method::Inequality, Method::Oracle}) {
        for (DependenceNotion notion : {DependenceNotion::Increasing, DependenceNotion::Decreasing}) {
          CheckOptions opt;
          opt.notion = notion;
          const auto r = scan_all_directions(c, GridSpec(n == 2 ? 9 : 5), m, opt);
          for (const auto& v : r.verdicts) {
            if (v.outcome != Outcome::Refuted) continue;
            REQUIRE(v.counterexample.has_value());
            const Counterexample& cx = *v.counterexample;
            CAPTURE(spec.describe());
            CAPTURE(v.direction.to_string());
            CHECK(cx.u_low.precedes(cx.u_high));
            CHECK(cx.violation > opt.tol);
            CHECK(cx.violation == doctest::Approx(cx.lhs - cx.rhs));
            const Recheck again = reverify(c, cx);
            CHECK(again.violation() > opt.tol);
            CHECK(again.lhs == doctest::Approx(cx.lhs).epsilon(1e-12));
            CHECK(again.rhs == doctest::Approx(cx.rhs).epsilon(1e-12));
            ++seen;
          }
        }
      }
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("increasing-notion verdicts agree with the literal definition scan") {
  for (std::size_t n = 2; n <= 3; ++n) {
    const std::size_t g = n == 2 ? 6 : 3;
    for (const CopulaSpec& spec : reference_specs(n)) {
      const Copula c(spec);
      const auto ref = oracle::formula_fn(spec);
      for (const Direction& d : all_directions(n)) {
        CAPTURE(spec.describe());
        CAPTURE(d.to_string());
        const bool refuted = oracle::definition_refutes(ref, signs(d), g);
        const auto v = check_direction(c, d, GridSpec(g), Method::Both);
        CHECK(v.oracle->outcome == (refuted ? Outcome::Refuted : Outcome::PassAtResolution));
        CHECK_FALSE(v.methods_disagree);
        if (d.is_mixed()) {
          CHECK(oracle::mixed_inequality_refutes(ref, signs(d), g) == refuted);
        }
      }
    }
  }
}

TEST_CASE("inequality and oracle agree on mixed directions") {
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<std::size_t> grids;
    if (n == 2) grids = {6, 9, 21};
    if (n == 3) grids = {6, 9};
    if (n == 4) grids = {4};
    for (std::size_t g : grids) {
      for (const CopulaSpec& spec : reference_specs(n)) {
        const Copula c(spec);
        for (const Direction& d : all_directions(n)) {
          if (!d.is_mixed()) continue;
          const auto v = check_direction(c, d, GridSpec(g), Method::Both);
          CAPTURE(spec.describe());
          CAPTURE(d.to_string());
          CAPTURE(g);
          CHECK(v.inequality->outcome == v.oracle->outcome);
          CHECK_FALSE(v.methods_disagree);
        }
      }
    }
  }
}

TEST_CASE("a violation persists on a refined lattice containing it") {
  const Copula c(CopulaSpec::fgm(2, 0.5));
  const Direction d = Direction::make({1, -1});
  const auto coarse = check_direction_inequality(c, d, GridSpec(9));
  REQUIRE(coarse.outcome == Outcome::Refuted);
  const auto fine = check_direction_inequality(c, d, GridSpec(19));
  CHECK(fine.outcome == Outcome::Refuted);
  const Counterexample& cx = *coarse.counterexample;
  // k/10 == 2k/20, so the coarse pair is a fine-lattice pair with the same sides
  const auto again = check_pair_mixed(c, d, cx.u_low, cx.u_high);
  CHECK_FALSE(again.passed());
  CHECK(again.lhs == cx.lhs);
  CHECK(again.rhs == cx.rhs);
}

TEST_CASE("decreasing notion mirrors the parameter sign for bivariate FGM") {
  CheckOptions dec;
  dec.notion = DependenceNotion::Decreasing;
  const auto d_pos = scan_all_directions(Copula(CopulaSpec::fgm(2, 0.5)), GridSpec(21), Method::Both, dec);
  const auto i_neg = scan_all_directions(Copula(CopulaSpec::fgm(2, -0.5)), GridSpec(21), Method::Both);
  for (std::size_t k = 0; k < d_pos.verdicts.size(); ++k) {
    if (!d_pos.verdicts[k].direction.is_mixed()) continue;
    CHECK(d_pos.verdicts[k].outcome == i_neg.verdicts[k].outcome);
  }
  CHECK_FALSE(d_pos.any_disagreement());
}

TEST_CASE("product copula satisfies every inequality with equality") {
  for (std::size_t n = 2; n <= 4; ++n) {
    CheckOptions opt;
    opt.allow_conjectural_pure = true;
    const auto r = scan_all_directions(Copula(CopulaSpec::product(n)), GridSpec::default_for(n), Method::Inequality, opt);
    for (const auto& v : r.verdicts) {
      CHECK(v.outcome == Outcome::PassAtResolution);
      CHECK(v.stats.max_abs_gap() <= 1e-12);
    }
  }
}

TEST_CASE("pass statistics count every ordered lattice pair") {
  const auto v = check_direction_inequality(Copula(CopulaSpec::fgm(2, 0.5)), Direction::make({1, 1}), GridSpec(21));
  CHECK(v.stats.pairs_tested == 231u * 231u);
  const auto w = check_direction_inequality(Copula(CopulaSpec::product(3)), Direction::make({1, -1, 1}), GridSpec(5));
  CHECK(w.stats.pairs_tested == 15u * 15u * 15u);
}

TEST_CASE("results do not depend on the number of worker threads") {
  const std::vector<CopulaSpec> specs{CopulaSpec::fgm(3, 0.5), CopulaSpec::convex_pi_m(3, 0.3),
                                      CopulaSpec::fgm(4, -0.7)};
  for (const CopulaSpec& spec : specs) {
    const Copula c(spec);
    CheckOptions one;
    one.threads = 1;
    const auto base = scan_all_directions(c, GridSpec(spec.dim == 3 ? 7 : 4), Method::Both, one);
    for (std::size_t t : {2u, 3u, 8u}) {
      CheckOptions many;
      many.threads = t;
      const auto other = scan_all_directions(c, GridSpec(spec.dim == 3 ? 7 : 4), Method::Both, many);
      CHECK(other.verdicts == base.verdicts);
    }
  }
}

TEST_CASE("scan over an explicit empty direction list") {
  const auto r = scan_directions(Copula(CopulaSpec::product(2)), {}, GridSpec(5), Method::Both);
  CHECK(r.verdicts.empty());
  CHECK_FALSE(r.any_refuted());
}

TEST_CASE("dimension mismatches are rejected") {
  const Copula c(CopulaSpec::product(3));
  CHECK_THROWS_AS(check_direction(c, Direction::make({1, -1}), GridSpec(5), Method::Both), DimensionError);
}
