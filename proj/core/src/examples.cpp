#include "fibercone/examples.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>

#include "fibercone/artinian.hpp"
#include "fibercone/invariants.hpp"
#include "fibercone/numsgp.hpp"
#include "fibercone/sgpideal.hpp"

namespace fibercone {
namespace {

std::string join_ll(const std::vector<long long>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(v[k]);
  }
  return s;
}

bool palindrome(const std::vector<long long>& v) {
  return std::equal(v.begin(), v.end(), v.rbegin());
}

/// Records named pass/fail checks into an ExampleOutcome.
class Battery {
 public:
  explicit Battery(ExampleOutcome& out) : out_(&out) {}

  void check(const std::string& name, bool pass,
             const std::string& detail = {}) {
    out_->checks.push_back({name, pass, pass ? std::string{} : detail});
  }
  void eq(const std::string& name, long long got, long long want) {
    check(name, got == want,
          "got " + std::to_string(got) + ", expected " + std::to_string(want));
  }
  void eq(const std::string& name, const std::vector<long long>& got,
          const std::vector<long long>& want) {
    check(name, got == want,
          "got [" + join_ll(got) + "], expected [" + join_ll(want) + "]");
  }
  void eq(const std::string& name, const std::optional<std::string>& got,
          const std::string& want) {
    check(name, got.has_value() && *got == want,
          "got " + (got ? "\"" + *got + "\"" : std::string("nothing")) +
              ", expected \"" + want + "\"");
  }
  void yes(const std::string& name, bool got) {
    check(name, got, "expected true");
  }
  void no(const std::string& name, bool got) {
    check(name, !got, "expected false");
  }

  /// Mark/rollback so a retried computation (e.g. after a precision
  /// escalation) does not leave duplicate check lines behind.
  std::size_t mark() const { return out_->checks.size(); }
  void rollback(std::size_t m) {
    if (m <= out_->checks.size()) out_->checks.resize(m);
  }

 private:
  ExampleOutcome* out_;
};

/// Properties every worked example must satisfy, read off the full
/// report: the two multiplicity routes agree, the series numerator sums
/// to the fiber multiplicity, the multiplicity respects its general
/// lower bound, the boundary slots of the top-degree two-variable
/// coefficients reproduce e(m) and e(I), and a Gorenstein fiber cone
/// has a palindromic numerator.
void standard_checks(Battery& b, const FiberReport& rep,
                     long long expected_e_of_m) {
  b.yes("multiplicity_routes_agree", rep.e_i.routes_agree);
  long long sum =
      std::accumulate(rep.numerator.begin(), rep.numerator.end(), 0LL);
  b.eq("series_numerator_sums_to_f0", sum, rep.f0);
  b.yes("multiplicity_lower_bound",
        rep.e_i.value >=
            rep.mu_i - rep.dimension + rep.flags.colength_value);
  auto slot = [&](int i, int j) -> std::optional<long long> {
    for (const auto& c : rep.mixed)
      if (c.i == i && c.j == j) return c.value;
    return std::nullopt;
  };
  auto all_i = slot(0, rep.dimension);
  auto all_m = slot(rep.dimension, 0);
  b.check("mixed_slot_all_ideal", all_i && *all_i == rep.e_i.value,
          "top coefficient with every slot the ideal must equal e(I)");
  b.check("mixed_slot_all_maximal", all_m && *all_m == expected_e_of_m,
          "top coefficient with every slot the maximal ideal must equal "
          "e(m) = " +
              std::to_string(expected_e_of_m));
  b.check("palindromic_when_gorenstein",
          !rep.gorenstein.verdict || palindrome(rep.numerator),
          "a Gorenstein verdict requires a palindromic numerator [" +
              join_ll(rep.numerator) + "]");
}

template <class Fn>
ExampleOutcome run_one(const std::string& id, const std::string& title,
                       Fn&& fn) {
  ExampleOutcome out;
  out.id = id;
  out.title = title;
  Battery b(out);
  try {
    fn(b);
    b.check("completed", true);
  } catch (const CalcError& e) {
    b.check("completed", false,
            std::string(to_string(e.kind())) + ": " + e.detail());
  } catch (const std::exception& e) {
    b.check("completed", false, e.what());
  }
  return out;
}

/// Monomial curve k[[t^6, t^11, t^15, t^31]] with I = (t^6, t^11, t^31)
/// and J = (t^6): the fiber cone fails to be Cohen-Macaulay, and every
/// equivalent Cohen-Macaulayness characterization fails with it.
ExampleOutcome curve_6_11_15_31() {
  return run_one(
      "curve-6-11-15-31",
      "semigroup 6 11 15 31, I = (t^6, t^11, t^31), J = (t^6)",
      [](Battery& b) {
        auto sgp = NumericalSemigroup::from_generators({6, 11, 15, 31});
        SemigroupCalculus calc(sgp);
        auto i = ideal_from_monomials(sgp, {6, 11, 31});
        auto j = calc.principal(6);
        FiberAnalysis<SemigroupCalculus> an(calc, i, j);
        auto rep = an.report();

        b.eq("square_over_stable_square_length", rep.flags.sally_length, 1);
        b.eq("reduction_number", rep.red_num, 2);
        b.yes("graded_filtration_clean", rep.graded_cm.ok);

        auto p37 = calc.principal(37);
        auto m = calc.maximal_ideal();
        b.yes("exponent_37_in_m_i_squared",
              calc.subset(p37, calc.product(m, an.ideal_power(2))));
        b.no("exponent_37_in_m_j_i",
             calc.subset(p37, calc.product(m, calc.product(j, i))));

        b.no("fiber_cone_cohen_macaulay", rep.cm.verdict);
        b.no("gorenstein", rep.gorenstein.verdict);
        b.eq("gorenstein_rule", std::optional<std::string>(
                                    rep.gorenstein.criterion),
             "not_cohen_macaulay");

        auto suite = an.sally_suite();
        b.no("suite_cm", suite.cm);
        b.no("suite_stable_square", suite.stable_square);
        b.no("suite_numerator_shape", suite.numerator_shape);
        b.no("suite_f0_formula", suite.f0_formula);
        b.check("suite_power_mu_chain",
                suite.power_mu_chain.has_value() && !*suite.power_mu_chain,
                "the one-dimensional generator-count chain must fail");
        b.no("suite_all_true", suite.all_true);

        standard_checks(b, rep, 6);
      });
}

/// Monomial curve k[[t^7, t^15, t^17, t^33]] with I = (t^7, t^17, t^33)
/// and J = (t^7): Cohen-Macaulay fiber cone with palindromic numerator
/// 1 2 1, yet not Gorenstein, witnessed by t^33 in the socle.
ExampleOutcome curve_7_15_17_33() {
  return run_one(
      "curve-7-15-17-33",
      "semigroup 7 15 17 33, I = (t^7, t^17, t^33), J = (t^7)",
      [](Battery& b) {
        auto sgp = NumericalSemigroup::from_generators({7, 15, 17, 33});
        SemigroupCalculus calc(sgp);
        auto i = ideal_from_monomials(sgp, {7, 17, 33});
        auto j = calc.principal(7);
        FiberAnalysis<SemigroupCalculus> an(calc, i, j);
        auto rep = an.report();

        b.eq("square_over_stable_square_length", rep.flags.sally_length, 1);
        b.eq("reduction_number", rep.red_num, 2);
        b.yes("graded_filtration_clean", rep.graded_cm.ok);

        auto m = calc.maximal_ideal();
        auto i2 = an.ideal_power(2);
        b.yes("stable_square_products_equal",
              calc.equals(calc.product(m, i2),
                          calc.product(m, calc.product(j, i))));

        b.yes("fiber_cone_cohen_macaulay", rep.cm.verdict);
        b.eq("series_numerator", rep.numerator, {1, 2, 1});
        b.eq("fiber_multiplicity", rep.f0, 4);

        b.no("gorenstein", rep.gorenstein.verdict);
        b.eq("gorenstein_rule",
             std::optional<std::string>(rep.gorenstein.criterion),
             "quadratic_reduction_ideal_test");
        b.eq("socle_witness", rep.gorenstein.witness, "t^33");
        auto p33 = calc.principal(33);
        auto socle_src = calc.intersect(
            calc.colon(calc.sum(calc.product(m, i2), calc.product(j, i)), i),
            i);
        b.yes("witness_in_socle_source", calc.subset(p33, socle_src));
        b.no("witness_in_socle_target",
             calc.subset(p33, calc.sum(j, calc.product(m, i))));

        b.check("palindromic_yet_not_gorenstein",
                palindrome(rep.numerator) && !rep.gorenstein.verdict,
                "the numerator must be palindromic while the Gorenstein "
                "verdict is negative");

        b.yes("suite_all_true", an.sally_suite().all_true);

        standard_checks(b, rep, 7);
      });
}

/// Monomial curve k[[t^4, t^5, t^6, t^7]] with I = (t^4, t^5, t^6) and
/// J = (t^4): minimal multiplicity, a Gorenstein fiber cone, and a
/// graded filtration that fails at level two with witness t^11.
ExampleOutcome curve_4_5_6_7() {
  return run_one(
      "curve-4-5-6-7",
      "semigroup 4 5 6 7, I = (t^4, t^5, t^6), J = (t^4)",
      [](Battery& b) {
        auto sgp = NumericalSemigroup::from_generators({4, 5, 6, 7});
        SemigroupCalculus calc(sgp);
        auto i = ideal_from_monomials(sgp, {4, 5, 6});
        auto j = calc.principal(4);
        FiberAnalysis<SemigroupCalculus> an(calc, i, j);
        auto rep = an.report();

        b.eq("square_over_stable_square_length", rep.flags.sally_length, 1);
        b.eq("reduction_number", rep.red_num, 2);
        b.yes("stable_products_equal", rep.flags.stable_products_equal);
        b.yes("minimal_multiplicity", rep.flags.minimal_multiplicity);
        b.yes("fiber_cone_cohen_macaulay", rep.cm.verdict);

        b.no("graded_filtration_clean", rep.graded_cm.ok);
        b.eq("graded_failure_level", rep.graded_cm.failed_at, 2);
        b.eq("graded_failure_witness", rep.graded_cm.witness, "t^11");
        auto p11 = calc.principal(11);
        b.yes("witness_in_intersection",
              calc.subset(p11,
                          calc.intersect(an.ideal_power(2), j)));
        b.no("witness_in_shifted_product",
             calc.subset(p11, calc.product(j, i)));

        b.yes("gorenstein", rep.gorenstein.verdict);
        b.eq("gorenstein_rule",
             std::optional<std::string>(rep.gorenstein.criterion),
             "quadratic_reduction_ideal_test");

        b.yes("suite_all_true", an.sally_suite().all_true);

        standard_checks(b, rep, 4);
      });
}

/// k[[x, y]] with I = (x^3, x^2 y, y^3) and J = (x^3, y^3): three
/// generators in dimension two make the fiber cone a hypersurface, hence
/// Gorenstein, while the graded filtration fails (witness x^4 y^2) and
/// the socle-source comparison is strict.
ExampleOutcome plane_staircase() {
  return run_one(
      "plane-staircase",
      "k[[x,y]], I = (x^3, x^2*y, y^3), J = (x^3, y^3)", [](Battery& b) {
        PrecisionPolicy pol;  // start at order 10, double as needed
        const std::size_t mark = b.mark();
        auto checks = [&b, mark](
                          std::shared_ptr<const TruncatedRing<RationalField>>
                              ring) {
          b.rollback(mark);  // drop checks from an abandoned attempt
          LocalCalculus<RationalField> calc(ring);
          auto mono = [](int a, int bb) {
            return RawPoly::monomial({a, bb});
          };
          auto i = calc.from_polys({mono(3, 0), mono(2, 1), mono(0, 3)});
          auto j = calc.from_polys({mono(3, 0), mono(0, 3)});
          FiberAnalysis<LocalCalculus<RationalField>> an(calc, i, j);
          auto rep = an.report();

          b.eq("square_over_stable_square_length", rep.flags.sally_length,
               1);
          b.eq("reduction_number", rep.red_num, 2);
          b.eq("stable_product_quotient_length",
               rep.flags.stable_product_length, 1);
          b.yes("almost_minimal_multiplicity",
                rep.flags.almost_minimal_multiplicity);

          auto m = calc.maximal_ideal();
          auto i2 = an.ideal_power(2);
          b.yes("stable_square_products_equal",
                calc.equals(calc.product(m, i2),
                            calc.product(m, calc.product(j, i))));

          b.eq("generator_count_is_dim_plus_one", rep.mu_i, 3);
          b.yes("fiber_cone_cohen_macaulay", rep.cm.verdict);
          b.yes("gorenstein", rep.gorenstein.verdict);

          b.no("graded_filtration_clean", rep.graded_cm.ok);
          b.eq("graded_failure_level", rep.graded_cm.failed_at, 2);
          auto w = calc.principal(mono(4, 2));
          b.yes("witness_in_intersection",
                calc.subset(w, calc.intersect(i2, j)));
          b.no("witness_in_shifted_product",
               calc.subset(w, calc.product(j, i)));

          auto amm = an.amm_gorenstein_criterion();
          b.yes("comparison_hypothesis_fiber_cm", amm.fiber_cm);
          b.yes("comparison_hypothesis_almost_minimal",
                amm.almost_minimal_multiplicity);
          b.yes("comparison_hypothesis_quadratic_reduction",
                amm.reduction_number_two);
          b.no("comparison_hypothesis_graded_cm", amm.graded_cm);
          b.no("comparison_applicable", amm.applicable);
          b.no("comparison_equal", amm.equal);

          b.yes("suite_all_true", an.sally_suite().all_true);

          standard_checks(b, rep, 1);
          return 0;
        };
        with_auto_precision(2, RationalField{}, pol, checks);
      });
}

/// k[[x, y, z]] with I = (x^3, y^3, z^3, xy, yz, zx) and J =
/// (x^3 + yz, y^3 + z^3 + xz, xz + xy): reduction number one, minimal
/// top-degree mixed coefficient, Cohen-Macaulay fiber cone with
/// numerator 1 3, not Gorenstein (z^3 separates the comparison), and
/// both bound identities hold with equality.
ExampleOutcome space_six_generators() {
  return run_one(
      "space-six-generators",
      "k[[x,y,z]], I = (x^3, y^3, z^3, x*y, y*z, z*x), "
      "J = (x^3 + y*z, y^3 + z^3 + x*z, x*z + x*y)",
      [](Battery& b) {
        PrecisionPolicy pol;
        const std::size_t mark = b.mark();
        auto checks = [&b, mark](
                          std::shared_ptr<const TruncatedRing<RationalField>>
                              ring) {
          b.rollback(mark);  // drop checks from an abandoned attempt
          LocalCalculus<RationalField> calc(ring);
          auto mono = [](int a, int bb, int c) {
            return RawPoly::monomial({a, bb, c});
          };
          auto i = calc.from_polys({mono(3, 0, 0), mono(0, 3, 0),
                                    mono(0, 0, 3), mono(1, 1, 0),
                                    mono(0, 1, 1), mono(1, 0, 1)});
          auto j = calc.from_polys({mono(3, 0, 0) + mono(0, 1, 1),
                                    mono(0, 3, 0) + mono(0, 0, 3) +
                                        mono(1, 0, 1),
                                    mono(1, 0, 1) + mono(1, 1, 0)});
          FiberAnalysis<LocalCalculus<RationalField>> an(calc, i, j);
          auto rep = an.report();

          b.eq("reduction_number", rep.red_num, 1);
          b.eq("stable_product_quotient_length",
               rep.flags.stable_product_length, 1);
          b.yes("almost_minimal_multiplicity",
                rep.flags.almost_minimal_multiplicity);
          b.yes("fiber_cone_cohen_macaulay", rep.cm.verdict);
          b.yes("graded_filtration_clean", rep.graded_cm.ok);

          b.eq("series_numerator", rep.numerator, {1, 3});
          b.eq("fiber_multiplicity", rep.f0, 4);
          b.eq("generator_count", rep.mu_i, 6);
          b.yes("minimal_mixed_coefficient", rep.flags.minimal_mixed);
          b.eq("mixed_one_maximal_two_ideal", rep.flags.mixed_value, 4);

          b.no("gorenstein", rep.gorenstein.verdict);
          b.check("gorenstein_witness_present",
                  rep.gorenstein.witness.has_value(),
                  "a negative verdict must carry a witness");

          auto m = calc.maximal_ideal();
          auto z3 = calc.principal(mono(0, 0, 3));
          b.yes("z_cubed_in_comparison_source",
                calc.subset(z3, calc.intersect(
                                    i, calc.colon(calc.product(m, j), i))));
          b.no("z_cubed_in_comparison_target",
               calc.subset(z3, calc.sum(calc.product(m, i), j)));

          auto amm = an.amm_gorenstein_criterion();
          b.yes("comparison_applicable", amm.applicable);
          b.no("comparison_equal", amm.equal);

          b.eq("bound_colon_length", rep.gorbound.colon_length, 7);
          b.eq("bound_colength", rep.gorbound.colength_i, 7);
          b.yes("bound_lengths_equal", rep.gorbound.lengths_equal);
          b.eq("bound_generator_count", rep.gorbound.mu_i, 6);
          b.eq("bound_generator_cap", rep.gorbound.mu_m_plus_d, 6);
          b.yes("bound_generator_count_at_cap",
                rep.gorbound.mu_i == rep.gorbound.mu_m_plus_d);

          standard_checks(b, rep, 1);
          return 0;
        };
        with_auto_precision(3, RationalField{}, pol, checks);
      });
}

/// Maximal ideal of the monomial curve on the integer interval
/// [e, 2e-2]: a symmetric semigroup with conductor 2e whose maximal
/// ideal has e-1 generators, reduction number at most two relative to
/// (t^e), and a Gorenstein fiber cone.
ExampleOutcome interval_curve(long long e) {
  return run_one(
      "interval-curve-" + std::to_string(e),
      "semigroup generated by " + std::to_string(e) + ".." +
          std::to_string(2 * e - 2) + ", I = m, J = (t^" +
          std::to_string(e) + ")",
      [e](Battery& b) {
        std::vector<long long> gens;
        for (long long g = e; g <= 2 * e - 2; ++g) gens.push_back(g);
        auto sgp = NumericalSemigroup::from_generators(gens);
        b.yes("symmetric_semigroup", sgp->is_symmetric());
        b.eq("conductor", sgp->conductor(), 2 * e);
        b.eq("maximal_ideal_generator_count", sgp->embedding_dimension(),
             e - 1);

        SemigroupCalculus calc(sgp);
        auto m = calc.maximal_ideal();
        auto j = calc.principal(e);
        FiberAnalysis<SemigroupCalculus> an(calc, m, j);
        auto rep = an.report();

        b.check("reduction_number_at_most_two", rep.red_num <= 2,
                "got " + std::to_string(rep.red_num));
        b.yes("cube_equals_shifted_square",
              calc.equals(an.ideal_power(3),
                          calc.product(j, an.ideal_power(2))));
        b.yes("fiber_cone_cohen_macaulay", rep.cm.verdict);
        b.yes("gorenstein", rep.gorenstein.verdict);

        standard_checks(b, rep, e);
      });
}

bool id_matches(const std::string& id, const std::string& only) {
  if (only.empty()) return true;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  return lower(id).find(lower(only)) != std::string::npos;
}

}  // namespace

std::vector<std::string> builtin_example_ids() {
  std::vector<std::string> ids = {
      "curve-6-11-15-31", "curve-7-15-17-33", "curve-4-5-6-7",
      "plane-staircase",  "space-six-generators",
  };
  for (long long e = 4; e <= 8; ++e)
    ids.push_back("interval-curve-" + std::to_string(e));
  return ids;
}

std::vector<ExampleOutcome> run_builtin_examples(const std::string& only) {
  std::vector<ExampleOutcome> out;
  auto want = [&](const std::string& id) { return id_matches(id, only); };
  if (want("curve-6-11-15-31")) out.push_back(curve_6_11_15_31());
  if (want("curve-7-15-17-33")) out.push_back(curve_7_15_17_33());
  if (want("curve-4-5-6-7")) out.push_back(curve_4_5_6_7());
  if (want("plane-staircase")) out.push_back(plane_staircase());
  if (want("space-six-generators")) out.push_back(space_six_generators());
  for (long long e = 4; e <= 8; ++e) {
    if (want("interval-curve-" + std::to_string(e)))
      out.push_back(interval_curve(e));
  }
  return out;
}

bool print_example_outcomes(std::ostream& os,
                            const std::vector<ExampleOutcome>& outcomes) {
  long long passed = 0, failed = 0;
  for (const auto& ex : outcomes) {
    os << "# " << ex.title << "\n";
    for (const auto& c : ex.checks) {
      os << ex.id << "." << c.name << " = " << (c.pass ? "PASS" : "FAIL");
      if (!c.pass && !c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
      ++(c.pass ? passed : failed);
    }
  }
  os << "summary.examples = " << outcomes.size() << "\n";
  os << "summary.checks_passed = " << passed << "\n";
  os << "summary.checks_failed = " << failed << "\n";
  return failed == 0 && passed > 0;
}

}  // namespace fibercone
