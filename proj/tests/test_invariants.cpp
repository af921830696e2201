#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "fibercone/artinian.hpp"
#include "fibercone/invariants.hpp"
#include "fibercone/sgpideal.hpp"
#include "fibercone/stabilize.hpp"

using namespace fibercone;

namespace {

using Sgp = std::shared_ptr<const NumericalSemigroup>;
using LL = long long;
using Vec = std::vector<long long>;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const CalcError& e) {
    return e.kind();
  }
  FAIL("expected a calculus error");
  return ErrorKind::ConsistencyError;
}

// ---------------------------------------------------------------------
// Independent oracle for two-variable monomial ideals: generators as
// exponent pairs, products by pairwise sums, colength by counting the
// lattice points no generator divides.
// ---------------------------------------------------------------------

using Mono2 = std::pair<int, int>;

std::vector<Mono2> mono_minimalize(std::vector<Mono2> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<Mono2> out;
  for (size_t i = 0; i < v.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < v.size() && !dominated; ++j) {
      if (j != i && v[j].first <= v[i].first && v[j].second <= v[i].second)
        dominated = true;
    }
    if (!dominated) out.push_back(v[i]);
  }
  return out;
}

std::vector<Mono2> mono_product(const std::vector<Mono2>& a,
                                const std::vector<Mono2>& b) {
  std::vector<Mono2> v;
  for (const auto& p : a)
    for (const auto& q : b)
      v.push_back({p.first + q.first, p.second + q.second});
  return mono_minimalize(v);
}

std::vector<Mono2> mono_power(const std::vector<Mono2>& a, int n) {
  std::vector<Mono2> out = {{0, 0}};
  for (int k = 0; k < n; ++k) out = mono_product(out, a);
  return out;
}

long long mono_colength(const std::vector<Mono2>& gens, int box) {
  // Every point on the far edges of the box must be divisible by some
  // generator, otherwise the box was too small for this ideal.
  auto divides = [&](int a, int b) {
    for (const auto& g : gens)
      if (g.first <= a && g.second <= b) return true;
    return false;
  };
  long long count = 0;
  for (int a = 0; a < box; ++a) {
    for (int b = 0; b < box; ++b) {
      if (!divides(a, b)) {
        REQUIRE(a < box - 1);
        REQUIRE(b < box - 1);
        ++count;
      }
    }
  }
  return count;
}

// The staircase ideal (x^3, x^2 y, y^3) with reduction (x^3, y^3): the
// running two-dimensional example for the whole suite.
const std::vector<Mono2> kStairI = {{3, 0}, {2, 1}, {0, 3}};
const std::vector<Mono2> kStairJ = {{3, 0}, {0, 3}};

RawPoly mono_poly(int a, int b) { return RawPoly::monomial({a, b}); }

std::vector<RawPoly> stair_i_gens() {
  return {mono_poly(3, 0), mono_poly(2, 1), mono_poly(0, 3)};
}
std::vector<RawPoly> stair_j_gens() { return {mono_poly(3, 0), mono_poly(0, 3)}; }

}  // namespace

TEST_CASE("sequence stabilization helpers accept and reject correctly") {
  StabilizationPolicy pol;  // window 3, n_max 40

  SUBCASE("policy validation") {
    CHECK(kind_of([] { StabilizationPolicy{1, 10}.validate(); }) ==
          ErrorKind::BadParameters);
    CHECK(kind_of([] { StabilizationPolicy{3, 4}.validate(); }) ==
          ErrorKind::BadParameters);
    CHECK_NOTHROW(StabilizationPolicy{2, 4}.validate());
  }

  SUBCASE("a constant sequence is accepted at its first index") {
    auto r = stabilize_sequence([](int) { return 42LL; }, pol, "constant");
    CHECK(r.value == 42);
    CHECK(r.stabilized_at == 0);
  }

  SUBCASE("a ramp that flattens is accepted where it flattens") {
    auto r = stabilize_sequence(
        [](int n) { return static_cast<long long>(std::min(n, 6)); }, pol,
        "ramp");
    CHECK(r.value == 6);
    CHECK(r.stabilized_at == 6);
  }

  SUBCASE("an unbounded sequence fails") {
    CHECK(kind_of([&] {
            stabilize_sequence([](int n) { return static_cast<long long>(n); },
                               pol, "identity");
          }) == ErrorKind::StabilizationFailed);
  }

  SUBCASE("zero tails are located, oscillation is rejected") {
    auto stop = first_zero_tail(
        [](int n) { return n < 4 ? 5LL : 0LL; }, pol, "tail");
    CHECK(stop == 4);
    CHECK(first_zero_tail([](int) { return 0LL; }, pol, "all zero") == 0);
    CHECK(kind_of([&] {
            first_zero_tail([](int n) { return static_cast<long long>(n % 2); },
                            pol, "oscillation");
          }) == ErrorKind::StabilizationFailed);
  }
}

TEST_CASE("maximal ideal of a two-variable power-series ring") {
  auto ring = std::make_shared<const TruncatedRing<RationalField>>(
      2, 22, RationalField{});
  LocalCalculus<RationalField> calc(ring);
  FiberAnalysis<LocalCalculus<RationalField>> an(calc, calc.maximal_ideal(),
                                                 calc.maximal_ideal());

  SUBCASE("hilbert functions against closed forms") {
    for (int n = 0; n <= 6; ++n) {
      CHECK(an.hf_fiber(n) == n + 1);
      CHECK(an.hs_samuel(n) == n * (n + 1) / 2);
    }
    for (int r = 0; r <= 4; ++r)
      for (int s = 0; s <= 4; ++s)
        CHECK(an.bhattacharya(r, s) == (r + s) * (r + s + 1) / 2);
  }

  SUBCASE("multiplicities and the series") {
    auto e = an.multiplicity_e();
    CHECK(e.value == 1);
    CHECK(e.difference_route == 1);
    CHECK(e.reduction_route.has_value());
    CHECK(*e.reduction_route == 1);
    CHECK(e.routes_agree);
    CHECK(an.f0() == 1);
    CHECK(an.mixed_multiplicity(2, 0) == 1);
    CHECK(an.mixed_multiplicity(1, 1) == 1);
    CHECK(an.mixed_multiplicity(0, 2) == 1);
    CHECK(an.hilbert_numerator() == Vec{1});
  }

  SUBCASE("the length polynomial exists everywhere, so the predicted "
          "numerator is exact") {
    auto pred = an.mixed_series_prediction();
    std::map<std::pair<int, int>, long long> coef;
    for (const auto& c : pred.coefficients) coef[{c.i, c.j}] = c.value;
    CHECK(coef.at({2, 0}) == 1);
    CHECK(coef.at({1, 1}) == 1);
    CHECK(coef.at({0, 2}) == 1);
    CHECK(coef.at({1, 0}) == -2);
    CHECK(coef.at({0, 1}) == -2);
    CHECK(coef.at({0, 0}) == 1);
    CHECK(pred.weights == Vec{0, 1});
    CHECK(pred.predicted == Vec{1});
    CHECK(pred.actual == Vec{1});
    CHECK(pred.matches);
  }

  SUBCASE("the ideal reduces itself at once and the fiber cone is a "
          "polynomial ring") {
    CHECK(an.reduction_number() == 0);
    CHECK(an.fiber_quotient_lengths() == Vec{1});
    auto cm = an.cm_test();
    CHECK(cm.verdict);
    CHECK(cm.f0 == 1);
    CHECK(cm.fiber_quotient_total == 1);
    auto gor = an.gorenstein_test();
    CHECK(gor.verdict);
    CHECK(gor.criterion == "polynomial_ring");
    CHECK(gor.socle_lengths == Vec{1});
    CHECK(kind_of([&] { an.socle_decomposition(); }) ==
          ErrorKind::BadParameters);
  }

  SUBCASE("classification flags") {
    auto f = an.classify();
    CHECK(f.sally_length == 0);
    CHECK_FALSE(f.sally);
    CHECK(f.minimal_multiplicity);  // e = mu - d + colength = 2 - 2 + 1
    CHECK(f.stable_products_equal);
    CHECK(f.stable_product_length == 0);
    CHECK_FALSE(f.almost_minimal_multiplicity);
    CHECK(f.mixed_value == 1);
    CHECK(f.minimal_mixed);  // e_(1,1) = mu - d + 1 = 1
    CHECK_FALSE(f.almost_minimal_mixed);
    CHECK(kind_of([&] { an.sally_suite(); }) == ErrorKind::NotSally);
  }

  SUBCASE("self-reduction makes the graded criterion and the bound "
          "checks trivial") {
    auto vv = an.valabrega_valla();
    CHECK(vv.ok);
    CHECK(vv.failed_at == 0);
    auto gb = an.gorbound_check();
    CHECK(gb.colon_length == 1);
    CHECK(gb.colength_i == 1);
    CHECK(gb.lengths_equal);
    CHECK(gb.mu_i == 2);
    CHECK(gb.mu_m_plus_d == 4);
    CHECK(gb.mu_within_bound);
  }
}

TEST_CASE("monomial curve with generators 4,5,6,7: the maximal ideal") {
  auto sgp = NumericalSemigroup::from_generators({4, 5, 6, 7});
  SemigroupCalculus calc(sgp);
  FiberAnalysis<SemigroupCalculus> an(calc, calc.maximal_ideal(),
                                      calc.principal(4));

  CHECK(an.reduction_number() == 1);
  auto e = an.multiplicity_e();
  CHECK(e.value == 4);
  CHECK(e.difference_route == 4);
  CHECK(e.routes_agree);
  CHECK(an.f0() == 4);
  CHECK(an.mixed_multiplicity(1, 0) == 4);
  CHECK(an.mixed_multiplicity(0, 1) == 4);
  CHECK(an.hilbert_numerator() == Vec{1, 3});
  CHECK(an.fiber_quotient_lengths() == Vec{1, 3});
  CHECK(an.cm_test().verdict);

  auto gor = an.gorenstein_test();
  CHECK_FALSE(gor.verdict);
  CHECK(gor.criterion == "socle_length");
  CHECK(gor.socle_lengths == Vec{3});
  CHECK(gor.socle_total == 3);
  REQUIRE(gor.witness.has_value());
  CHECK(*gor.witness == "t^5");

  auto f = an.classify();
  CHECK(f.sally_length == 0);
  CHECK_FALSE(f.sally);
  CHECK(f.minimal_multiplicity);  // e = 4 = mu - d + colength = 4 - 1 + 1
  CHECK(f.stable_products_equal);
  CHECK(f.minimal_mixed);  // e_(1,0) = 4 = mu - d + 1
  CHECK(an.valabrega_valla().ok);

  auto gb = an.gorbound_check();
  CHECK(gb.colength_i == 1);
  CHECK(gb.mu_i == 4);
  CHECK(gb.mu_m_plus_d == 5);
  CHECK(gb.mu_within_bound);

  SUBCASE("limit route to the fiber multiplicity") {
    auto sup = an.superficial_limit_check(
        {}, calc.principal(4), SuperficialVariant::last_in_maximal);
    CHECK(sup.limit == 0);
    CHECK(sup.reference == 4);
    CHECK(sup.f0 == 4);
    CHECK(sup.consistent);
    auto sup2 = an.superficial_limit_check(
        {}, calc.principal(4), SuperficialVariant::last_in_ideal);
    CHECK(sup2.reference == 4);
    CHECK(sup2.consistent);
  }

  SUBCASE("first-order coefficient of the bigraded length") {
    CHECK(an.g1_coefficient(calc.principal(4)) == -1);
    FiberAnalysis<SemigroupCalculus> principal(calc, calc.principal(4));
    CHECK(principal.g1_coefficient(calc.principal(4)) == -1);
    CHECK(principal.f0() == 1);
    CHECK(principal.hilbert_numerator() == Vec{1});
  }
}

TEST_CASE("monomial curve with generators 4,5,6,7: a two-generated ideal "
          "with reduction number three") {
  auto sgp = NumericalSemigroup::from_generators({4, 5, 6, 7});
  SemigroupCalculus calc(sgp);
  auto i = ideal_from_monomials(sgp, {4, 5});
  FiberAnalysis<SemigroupCalculus> an(calc, i, calc.principal(4));

  CHECK(an.reduction_number() == 3);
  auto e = an.multiplicity_e();
  CHECK(e.value == 4);
  CHECK(e.routes_agree);
  CHECK(an.f0() == 4);
  CHECK(an.hf_fiber(1) == 2);
  CHECK(an.hf_fiber(2) == 3);
  CHECK(an.hf_fiber(3) == 4);
  CHECK(an.hf_fiber(4) == 4);
  CHECK(an.hilbert_numerator() == Vec{1, 1, 1, 1});
  CHECK(an.fiber_quotient_lengths() == Vec{1, 1, 1, 1});
  CHECK(an.cm_test().verdict);
  // Cohen-Macaulay, so the numerator and the quotient lengths agree.
  CHECK(an.hilbert_numerator() == an.fiber_quotient_lengths());

  auto f = an.classify();
  CHECK(f.sally);
  CHECK(f.sally_length == 1);
  CHECK(f.e_value == 4);
  CHECK(f.colength_value == 3);
  CHECK(f.minimal_multiplicity);  // 4 = 2 - 1 + 3
  CHECK(f.stable_products_equal);
  CHECK_FALSE(f.almost_minimal_multiplicity);

  SUBCASE("socle concentrates at the top and the cone is Gorenstein") {
    CHECK(an.socle_decomposition() == Vec{0, 0, 1});
    auto gor = an.gorenstein_test();
    CHECK(gor.verdict);
    CHECK(gor.criterion == "socle_length");
    CHECK(gor.socle_total == 1);
  }

  SUBCASE("all equivalent Cohen-Macaulayness conditions hold at once") {
    auto suite = an.sally_suite();
    CHECK(suite.cm);
    CHECK(suite.stable_square);
    CHECK(suite.numerator_shape);
    CHECK(suite.f0_formula);
    REQUIRE(suite.power_mu_chain.has_value());
    CHECK(*suite.power_mu_chain);
    CHECK(suite.all_true);
  }

  SUBCASE("the graded criterion fails even though the fiber cone is "
          "Cohen-Macaulay") {
    auto vv = an.valabrega_valla();
    CHECK_FALSE(vv.ok);
    CHECK(vv.failed_at == 2);
    REQUIRE(vv.witness.has_value());
    CHECK(*vv.witness == "t^10");
  }

  SUBCASE("report-only bound checks") {
    auto gb = an.gorbound_check();
    CHECK(gb.colon_length == 3);
    CHECK(gb.colength_i == 3);
    CHECK(gb.lengths_equal);
    CHECK(gb.mu_i == 2);
    CHECK(gb.mu_within_bound);
  }

  SUBCASE("limit route to the fiber multiplicity") {
    auto sup = an.superficial_limit_check({}, calc.principal(4),
                                          SuperficialVariant::last_in_ideal);
    CHECK(sup.limit == 0);
    CHECK(sup.stabilized_at == 3);
    CHECK(sup.reference == 4);
    CHECK(sup.consistent);
    CHECK(an.g1_coefficient(calc.principal(4)) == -1);
  }
}

TEST_CASE("monomial curve with generators 5,6,7,8: reduction number two "
          "and a Gorenstein fiber cone") {
  auto sgp = NumericalSemigroup::from_generators({5, 6, 7, 8});
  REQUIRE(sgp->is_symmetric());
  REQUIRE(sgp->conductor() == 10);
  SemigroupCalculus calc(sgp);
  FiberAnalysis<SemigroupCalculus> an(calc, calc.maximal_ideal(),
                                      calc.principal(5));

  CHECK(an.reduction_number() == 2);
  CHECK(an.multiplicity_e().value == 5);
  CHECK(an.f0() == 5);
  CHECK(an.hilbert_numerator() == Vec{1, 3, 1});
  CHECK(an.fiber_quotient_lengths() == Vec{1, 3, 1});
  CHECK(an.cm_test().verdict);
  CHECK(an.hilbert_numerator() == an.fiber_quotient_lengths());

  auto f = an.classify();
  CHECK(f.sally);
  CHECK(f.sally_length == 1);
  CHECK(f.mu_value == 4);
  CHECK(f.almost_minimal_multiplicity);
  CHECK(f.stable_product_length == 1);

  SUBCASE("the quadratic-reduction ideal test certifies Gorenstein") {
    auto gor = an.gorenstein_test();
    CHECK(gor.verdict);
    CHECK(gor.criterion == "quadratic_reduction_ideal_test");
    CHECK(gor.socle_lengths == Vec{0, 1});
    CHECK(gor.socle_total == 1);
    CHECK_FALSE(gor.witness.has_value());
  }

  SUBCASE("the W-comparison applies and agrees") {
    auto amm = an.amm_gorenstein_criterion();
    CHECK(amm.fiber_cm);
    CHECK(amm.graded_cm);
    CHECK(amm.almost_minimal_multiplicity);
    CHECK(amm.reduction_number_two);
    CHECK(amm.applicable);
    CHECK(amm.equal);
    CHECK_FALSE(amm.witness.has_value());
  }

  SUBCASE("necessary equalities for the Gorenstein property hold") {
    auto gb = an.gorbound_check();
    CHECK(gb.colon_length == 1);
    CHECK(gb.colength_i == 1);
    CHECK(gb.lengths_equal);
    CHECK(gb.mu_i == 4);
    CHECK(gb.mu_m_plus_d == 5);
    CHECK(gb.mu_within_bound);
  }

  SUBCASE("all equivalent Cohen-Macaulayness conditions hold at once") {
    auto suite = an.sally_suite();
    CHECK(suite.all_true);
    REQUIRE(suite.power_mu_chain.has_value());
    CHECK(*suite.power_mu_chain);
  }

  SUBCASE("a one-variable prediction ignores the correction terms and "
          "misses, while recording the true numerator") {
    auto pred = an.mixed_series_prediction();
    CHECK(pred.weights == Vec{5});
    CHECK(pred.predicted == Vec{5});
    CHECK(pred.actual == Vec{1, 3, 1});
    CHECK_FALSE(pred.matches);
  }

  SUBCASE("the assembled report is coherent") {
    auto rep = an.report();
    CHECK(rep.dimension == 1);
    CHECK(rep.mu_i == 4);
    CHECK(rep.e_i.value == 5);
    CHECK(rep.e_i.routes_agree);
    CHECK(rep.f0 == 5);
    CHECK(rep.red_num == 2);
    CHECK(rep.numerator == Vec{1, 3, 1});
    CHECK(rep.h_lengths == Vec{1, 3, 1});
    CHECK(rep.socle_lengths == Vec{0, 1});
    CHECK(rep.gorenstein.verdict);
    CHECK(rep.cm.verdict);
    CHECK(rep.graded_cm.ok);
    CHECK(rep.flags.sally);
    REQUIRE(rep.mixed.size() == 2);
    CHECK(rep.mixed[0].value == 5);
    CHECK(rep.mixed[1].value == 5);
    // Gorenstein, so the numerator reads the same in both directions.
    Vec rev = rep.numerator;
    std::reverse(rev.begin(), rev.end());
    CHECK(rev == rep.numerator);
  }
}

TEST_CASE("two-variable staircase ideal against the lattice oracle") {
  auto ring = std::make_shared<const TruncatedRing<RationalField>>(
      2, 40, RationalField{});
  LocalCalculus<RationalField> calc(ring);
  auto i = calc.from_polys(stair_i_gens());
  auto j = calc.from_polys(stair_j_gens());
  FiberAnalysis<LocalCalculus<RationalField>> an(calc, i, j);

  SUBCASE("two-variable lengths match the counting oracle") {
    for (int r = 0; r <= 3; ++r) {
      for (int s = 0; s <= 3; ++s) {
        auto gens = mono_product(mono_power({{1, 0}, {0, 1}}, r),
                                 mono_power(kStairI, s));
        CHECK(an.bhattacharya(r, s) == mono_colength(gens, 32));
      }
    }
    CHECK(mono_colength(mono_power(kStairJ, 1), 32) == 9);
  }

  SUBCASE("reduction, multiplicities, and the series") {
    CHECK(an.reduction_number() == 2);
    auto e = an.multiplicity_e();
    CHECK(e.value == 9);
    CHECK(e.difference_route == 9);
    CHECK(e.routes_agree);
    CHECK(an.f0() == 3);
    CHECK(an.mixed_multiplicity(2, 0) == 1);
    CHECK(an.mixed_multiplicity(1, 1) == 3);
    CHECK(an.mixed_multiplicity(0, 2) == 9);
    CHECK(an.hilbert_numerator() == Vec{1, 1, 1});
    CHECK(an.fiber_quotient_lengths() == Vec{1, 1, 1});
    CHECK(an.cm_test().verdict);
    CHECK(an.hilbert_numerator() == an.fiber_quotient_lengths());
  }

  SUBCASE("multiplicity of the stable product expands bilinearly") {
    FiberAnalysis<LocalCalculus<RationalField>> prod_an(
        calc, calc.product(calc.maximal_ideal(), i));
    // e(mI) = e(m) + 2 e_(1,1) + e(I) = 1 + 6 + 9.
    CHECK(prod_an.multiplicity_e().value == 16);
  }

  SUBCASE("three generators in dimension two give a hypersurface fiber "
          "cone, hence Gorenstein") {
    CHECK(calc.mu(i) == 3);
    auto gor = an.gorenstein_test();
    CHECK(gor.verdict);
    CHECK(gor.criterion == "quadratic_reduction_ideal_test");
    CHECK(gor.socle_lengths == Vec{0, 1});
    CHECK_FALSE(gor.witness.has_value());
  }

  SUBCASE("the graded criterion fails, which disables the W-comparison") {
    auto vv = an.valabrega_valla();
    CHECK_FALSE(vv.ok);
    CHECK(vv.failed_at == 2);
    REQUIRE(vv.witness.has_value());
    CHECK(*vv.witness == "x^4*y^2");
    auto amm = an.amm_gorenstein_criterion();
    CHECK(amm.fiber_cm);
    CHECK_FALSE(amm.graded_cm);
    CHECK(amm.almost_minimal_multiplicity);
    CHECK(amm.reduction_number_two);
    CHECK_FALSE(amm.applicable);
    // W = I here, so the comparison fails on the middle generator even
    // though the fiber cone is Gorenstein: the graded hypothesis earns
    // its keep.
    CHECK_FALSE(amm.equal);
    REQUIRE(amm.witness.has_value());
    CHECK(*amm.witness == "x^2*y");
  }

  SUBCASE("classification flags") {
    auto f = an.classify();
    CHECK(f.sally);
    CHECK(f.e_value == 9);
    CHECK(f.colength_value == 7);
    CHECK_FALSE(f.minimal_multiplicity);  // 9 > 3 - 2 + 7
    CHECK(f.almost_minimal_multiplicity);
    CHECK(f.stable_product_length == 1);
    CHECK(f.mixed_value == 3);
    CHECK_FALSE(f.minimal_mixed);
    CHECK(f.almost_minimal_mixed);  // 3 = mu - d + 2
  }

  SUBCASE("all equivalent Cohen-Macaulayness conditions hold at once") {
    auto suite = an.sally_suite();
    CHECK(suite.cm);
    CHECK(suite.stable_square);
    CHECK(suite.numerator_shape);
    CHECK(suite.f0_formula);
    CHECK_FALSE(suite.power_mu_chain.has_value());
    CHECK(suite.all_true);
  }

  SUBCASE("necessary equalities for the Gorenstein property hold") {
    auto gb = an.gorbound_check();
    CHECK(gb.colon_length == 7);
    CHECK(gb.colength_i == 7);
    CHECK(gb.lengths_equal);
    CHECK(gb.mu_i == 3);
    CHECK(gb.mu_m_plus_d == 4);
    CHECK(gb.mu_within_bound);
  }

  SUBCASE("the length function disagrees with its polynomial near the "
          "origin, and the prediction records the miss") {
    auto pred = an.mixed_series_prediction();
    REQUIRE(pred.weights.size() == 2);
    CHECK(pred.weights[1] == 3);  // g(1) = e_(1,1)
    CHECK(pred.actual == Vec{1, 1, 1});
    // The predicted numerator has degree < 2, so it cannot match.
    CHECK(pred.predicted.size() <= 2);
    CHECK_FALSE(pred.matches);
  }
}

TEST_CASE("staircase analysis is stable under field change and extra "
          "precision") {
  auto run = [](auto calc) {
    using Calc = decltype(calc);
    auto i = calc.from_polys(stair_i_gens());
    auto j = calc.from_polys(stair_j_gens());
    FiberAnalysis<Calc> an(calc, i, j);
    auto rep = an.report();
    return std::make_tuple(rep.mu_i, rep.e_i.value, rep.f0, rep.red_num,
                           rep.numerator, rep.socle_lengths,
                           rep.cm.verdict, rep.gorenstein.verdict,
                           rep.flags.almost_minimal_multiplicity,
                           rep.mixed[1].value);
  };
  auto ring_q = std::make_shared<const TruncatedRing<RationalField>>(
      2, 40, RationalField{});
  auto base = run(LocalCalculus<RationalField>(ring_q));

  SUBCASE("a larger truncation order changes nothing") {
    auto ring_big = std::make_shared<const TruncatedRing<RationalField>>(
        2, 43, RationalField{});
    CHECK(run(LocalCalculus<RationalField>(ring_big)) == base);
  }

  SUBCASE("a large prime field computes the same integers") {
    auto ring_p = std::make_shared<const TruncatedRing<PrimeField>>(
        2, 40, PrimeField{32003});
    CHECK(run(LocalCalculus<PrimeField>(ring_p)) == base);
  }

  SUBCASE("the retry loop lands on a sufficient truncation order") {
    PrecisionPolicy pol{6, 2, 4};
    auto got = with_auto_precision(
        2, RationalField{}, pol, [](auto ring) {
          LocalCalculus<RationalField> calc(ring);
          auto i = calc.from_polys(stair_i_gens());
          auto j = calc.from_polys(stair_j_gens());
          FiberAnalysis<LocalCalculus<RationalField>> an(calc, i, j);
          return std::make_tuple(an.reduction_number(),
                                 an.multiplicity_e().value, an.f0(),
                                 an.hilbert_numerator(),
                                 an.gorenstein_test().verdict);
        });
    CHECK(got == std::make_tuple(2, 9LL, 3LL, Vec{1, 1, 1}, true));
  }

  SUBCASE("a zero budget reports the failure instead of retrying") {
    PrecisionPolicy pol{6, 2, 0};
    CHECK(kind_of([&] {
            with_auto_precision(2, RationalField{}, pol, [](auto ring) {
              LocalCalculus<RationalField> calc(ring);
              auto i = calc.from_polys(stair_i_gens());
              auto j = calc.from_polys(stair_j_gens());
              FiberAnalysis<LocalCalculus<RationalField>> an(calc, i, j);
              return an.reduction_number();
            });
          }) == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("invariant layer rejects bad inputs with the right error kinds") {
  auto sgp = NumericalSemigroup::from_generators({4, 5, 6, 7});
  SemigroupCalculus calc(sgp);
  auto i = ideal_from_monomials(sgp, {4, 5});

  SUBCASE("negative indices and mismatched degrees") {
    FiberAnalysis<SemigroupCalculus> an(calc, i);
    CHECK(kind_of([&] { an.hf_fiber(-1); }) == ErrorKind::BadParameters);
    CHECK(kind_of([&] { an.hs_samuel(-2); }) == ErrorKind::BadParameters);
    CHECK(kind_of([&] { an.bhattacharya(-1, 0); }) ==
          ErrorKind::BadParameters);
    CHECK(kind_of([&] { an.mixed_multiplicity(1, 1); }) ==
          ErrorKind::BadDegrees);
    CHECK(kind_of([&] { an.mixed_multiplicity(0, 0); }) ==
          ErrorKind::BadDegrees);
  }

  SUBCASE("operations that need a reduction demand one") {
    FiberAnalysis<SemigroupCalculus> an(calc, i);
    CHECK(kind_of([&] { an.reduction_number(); }) ==
          ErrorKind::BadParameters);
    CHECK(kind_of([&] { an.classify(); }) == ErrorKind::BadParameters);
  }

  SUBCASE("reduction candidates are verified") {
    FiberAnalysis<SemigroupCalculus> not_inside(calc, i, calc.principal(6));
    CHECK(kind_of([&] { not_inside.reduction_number(); }) ==
          ErrorKind::NotAReduction);
    FiberAnalysis<SemigroupCalculus> too_many(calc, i, i);
    CHECK(kind_of([&] { too_many.reduction_number(); }) ==
          ErrorKind::NotAReduction);
    FiberAnalysis<SemigroupCalculus> never(calc, calc.maximal_ideal(),
                                           calc.principal(5));
    CHECK(kind_of([&] { never.reduction_number(); }) ==
          ErrorKind::NotAReductionWithin);
  }

  SUBCASE("the equivalence suite needs its length hypothesis") {
    FiberAnalysis<SemigroupCalculus> an(calc, calc.maximal_ideal(),
                                        calc.principal(4));
    CHECK(kind_of([&] { an.sally_suite(); }) == ErrorKind::NotSally);
  }

  SUBCASE("sequence arguments are validated") {
    FiberAnalysis<SemigroupCalculus> an(calc, i, calc.principal(4));
    CHECK(kind_of([&] {
            an.superficial_limit_check({calc.principal(4)}, calc.principal(4),
                                       SuperficialVariant::last_in_ideal);
          }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] {
            an.superficial_limit_check({}, calc.principal(6),
                                       SuperficialVariant::last_in_ideal);
          }) == ErrorKind::NotContained);
    CHECK(kind_of([&] {
            an.superficial_limit_check({}, i,
                                       SuperficialVariant::last_in_ideal);
          }) == ErrorKind::BadParameters);
    CHECK(kind_of([&] { an.g1_coefficient(calc.principal(6)); }) ==
          ErrorKind::NotAReduction);
    CHECK(kind_of([&] { an.g1_coefficient(i); }) == ErrorKind::NotAReduction);
  }

  SUBCASE("the one-dimensional coefficient formula refuses other "
          "dimensions, principal sequences are enforced") {
    auto ring = std::make_shared<const TruncatedRing<RationalField>>(
        2, 12, RationalField{});
    LocalCalculus<RationalField> lc(ring);
    FiberAnalysis<LocalCalculus<RationalField>> an(lc, lc.maximal_ideal(),
                                                   lc.maximal_ideal());
    CHECK(kind_of([&] { an.g1_coefficient(lc.principal(mono_poly(1, 0))); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] {
            an.superficial_limit_check({lc.maximal_ideal()},
                                       lc.principal(mono_poly(1, 0)),
                                       SuperficialVariant::last_in_ideal);
          }) == ErrorKind::BadParameters);
  }

  SUBCASE("stabilization budgets are enforced at construction") {
    CHECK(kind_of([&] {
            FiberAnalysis<SemigroupCalculus> bad(calc, i,
                                                 StabilizationPolicy{1, 40});
          }) == ErrorKind::BadParameters);
  }
}

TEST_CASE("free-standing analyze builds the same report as a session") {
  auto sgp = NumericalSemigroup::from_generators({5, 6, 7, 8});
  SemigroupCalculus calc(sgp);
  auto rep = analyze(calc, calc.maximal_ideal(), calc.principal(5));
  CHECK(rep.red_num == 2);
  CHECK(rep.e_i.value == 5);
  CHECK(rep.f0 == 5);
  CHECK(rep.numerator == Vec{1, 3, 1});
  CHECK(rep.gorenstein.verdict);
  CHECK(rep.gorbound.lengths_equal);
}
