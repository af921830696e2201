#ifndef FIBERCONE_INVARIANTS_HPP
#define FIBERCONE_INVARIANTS_HPP

#include <algorithm>
#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibercone/errors.hpp"
#include "fibercone/stabilize.hpp"

namespace fibercone {

/// The backend surface the invariant layer is written against.  Both the
/// one-dimensional monomial-curve backend (SemigroupCalculus) and the
/// truncated power-series backend (LocalCalculus) model it.
template <class C>
concept IdealCalculus = requires(const C& c, const typename C::Ideal& a,
                                 const typename C::Ideal& b, long long n) {
  typename C::Ideal;
  { c.dimension() } -> std::convertible_to<int>;
  { c.maximal_ideal() } -> std::same_as<typename C::Ideal>;
  { c.unit_ideal() } -> std::same_as<typename C::Ideal>;
  { c.sum(a, b) } -> std::same_as<typename C::Ideal>;
  { c.product(a, b) } -> std::same_as<typename C::Ideal>;
  { c.power(a, n) } -> std::same_as<typename C::Ideal>;
  { c.colon(a, b) } -> std::same_as<typename C::Ideal>;
  { c.intersect(a, b) } -> std::same_as<typename C::Ideal>;
  { c.subset(a, b) } -> std::convertible_to<bool>;
  { c.equals(a, b) } -> std::convertible_to<bool>;
  { c.length_quotient(a, b) } -> std::convertible_to<long long>;
  { c.colength(a) } -> std::convertible_to<long long>;
  { c.mu(a) } -> std::convertible_to<long long>;
  {
    c.witness_in_difference(a, b)
  } -> std::same_as<std::optional<std::string>>;
};

namespace detail {

inline long long binom_ll(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace detail

/// e(I) with its two computation routes: the colength of a supplied
/// d-generated reduction and the eventual d-th forward difference of
/// n -> ell(R/I^n).  The difference route is always computed.
struct MultiplicityResult {
  long long value = 0;
  std::optional<long long> reduction_route;
  long long difference_route = 0;
  int stabilized_at = 0;
  bool routes_agree = true;
};

/// Ideal-class flags relative to a verified reduction J, together with
/// the numbers they were decided from.
struct ClassifyFlags {
  bool sally = false;                       // ell(I^2/JI) = 1
  bool minimal_multiplicity = false;        // e(I) = mu(I) - d + ell(R/I)
  bool almost_minimal_multiplicity = false; // ell(mI/mJ) = 1
  bool minimal_mixed = false;               // e_(1,d-1) = mu(I) - d + 1
  bool almost_minimal_mixed = false;        // e_(1,d-1) = mu(I) - d + 2
  bool stable_products_equal = false;       // mI = mJ, recorded alongside
  long long sally_length = 0;               // ell(I^2/JI)
  long long stable_product_length = 0;      // ell(mI/mJ)
  long long e_value = 0;
  long long mu_value = 0;
  long long colength_value = 0;             // ell(R/I)
  long long mixed_value = 0;                // e_(1,d-1)
};

/// Verdict of the multiplicity test for Cohen-Macaulayness of the fiber
/// cone: f0(I) against the total length of the quotient by a reduction.
struct CmResult {
  bool verdict = false;
  long long f0 = 0;
  long long fiber_quotient_total = 0;
  std::vector<long long> h_lengths;
};

/// Gorenstein verdict with the rule that produced it and, when the
/// verdict is negative, a basis element witnessing the failure.
struct GorensteinResult {
  bool verdict = false;
  std::string criterion;  // not_cohen_macaulay | polynomial_ring |
                          // quadratic_reduction_ideal_test | socle_length
  std::vector<long long> socle_lengths;
  long long socle_total = 0;
  std::optional<std::string> witness;
};

/// The comparison W = I cap (mJ : I) versus mI + J, which decides the
/// Gorenstein property for ideals of almost minimal multiplicity with
/// reduction number at most two and Cohen-Macaulay fiber and graded
/// cones.  The hypothesis checks are reported separately from the
/// comparison; reduction_number_two records whether the reduction
/// number is exactly two (the boundary case of the hypothesis).
struct AmmGorensteinResult {
  bool equal = false;
  bool fiber_cm = false;
  bool graded_cm = false;
  bool almost_minimal_multiplicity = false;
  bool reduction_number_two = false;
  bool applicable = false;
  std::optional<std::string> witness;
};

/// Report-only data for the necessary conditions satisfied by Gorenstein
/// fiber cones of ideals of almost minimal multiplicity:
/// ell((J:I)/J) = ell(R/I) and mu(I) <= mu(m) + d.
struct GorboundResult {
  long long colon_length = 0;  // ell((J:I)/J)
  long long colength_i = 0;    // ell(R/I)
  long long mu_i = 0;
  long long mu_m_plus_d = 0;
  bool lengths_equal = false;
  bool mu_within_bound = false;
};

/// Certificate that I^n cap J = J I^(n-1) holds for n = 1..r+1 (the
/// criterion for the associated graded ring to be Cohen-Macaulay
/// relative to J), with the first failing index and a witness otherwise.
struct GradedCmResult {
  bool ok = false;
  int failed_at = 0;  // 0 when ok
  std::optional<std::string> witness;
};

enum class SuperficialVariant {
  last_in_maximal,  // x in m;  f0 = e_(1,d-1) - limit
  last_in_ideal,    // x in I;  f0 = e(I) - limit
};

/// Consistency report for the limit formula
/// f0 = reference - lim_n ell(mI^n / (xI^n + L mI^(n-1))), where L is
/// generated by the supplied d-1 elements of I.  The toolkit cannot
/// certify that the supplied elements form a Rees-superficial sequence,
/// so this is a consistency check, not a proof.
struct SuperficialResult {
  long long limit = 0;
  int stabilized_at = 0;
  long long f0 = 0;
  long long reference = 0;
  SuperficialVariant variant = SuperficialVariant::last_in_maximal;
  bool consistent = false;
};

/// One coefficient of the two-variable length polynomial
/// ell(R/m^r I^s) ~ sum e_(i,j) C(r+i,i) C(s+j,j):  i copies of m and
/// j copies of I.
struct MixedCoefficient {
  int i = 0;
  int j = 0;
  long long value = 0;
};

/// Numerator of the fiber-cone Hilbert series as predicted from the
/// two-variable length polynomial alone, next to the actual numerator.
/// Disagreement is diagnostic (the prediction assumes the length
/// function agrees with its polynomial everywhere), not an error.
struct SeriesPrediction {
  std::vector<MixedCoefficient> coefficients;  // all i + j <= d, top first
  std::vector<long long> weights;              // index j = 0..d-1
  std::vector<long long> predicted;
  std::vector<long long> actual;
  bool matches = false;
};

/// The equivalent characterizations of a Cohen-Macaulay fiber cone for
/// an ideal with ell(I^2/JI) = 1, evaluated independently.  They are
/// required to agree (all true or all false).
struct SallySuiteResult {
  bool cm = false;
  bool stable_square = false;     // m I^2 = m J I
  bool numerator_shape = false;   // numerator = [1, mu-d, 1, ..., 1]
  bool f0_formula = false;        // f0 = mu - d + r
  std::optional<bool> power_mu_chain;  // d = 1 only: mu(I^k) = mu + k - 1
  bool all_true = false;
};

/// Everything the toolkit can say about (I, J) in one structure.
struct FiberReport {
  int dimension = 0;
  long long mu_i = 0;
  MultiplicityResult e_i;
  long long f0 = 0;
  int f0_stabilized_at = 0;
  std::vector<MixedCoefficient> mixed;  // i + j = d
  int red_num = 0;
  std::vector<long long> h_lengths;
  std::vector<long long> numerator;
  ClassifyFlags flags;
  GradedCmResult graded_cm;
  CmResult cm;
  std::vector<long long> socle_lengths;
  GorensteinResult gorenstein;
  GorboundResult gorbound;
};

/// One analysis session for a fixed ideal I (and optionally a candidate
/// reduction J) over a fixed calculus.  Ideal powers, products with J,
/// and two-variable colengths are memoized; every entry point that uses
/// J first verifies that J is a d-generated reduction of I.
///
/// Methods are non-const because of the memo tables; an instance must be
/// confined to one thread.
template <class C>
  requires IdealCalculus<C>
class FiberAnalysis {
 public:
  using Ideal = typename C::Ideal;

  FiberAnalysis(const C& calc, Ideal i, StabilizationPolicy policy = {})
      : calc_(&calc),
        d_(calc.dimension()),
        pol_(policy),
        i_(std::move(i)),
        m_(calc.maximal_ideal()),
        unit_(calc.unit_ideal()) {
    pol_.validate();
    ipow_.push_back(unit_);
    mpow_.push_back(unit_);
  }

  FiberAnalysis(const C& calc, Ideal i, Ideal j,
                StabilizationPolicy policy = {})
      : FiberAnalysis(calc, std::move(i), policy) {
    j_ = std::move(j);
  }

  const C& calc() const { return *calc_; }
  int dimension() const { return d_; }
  const StabilizationPolicy& policy() const { return pol_; }
  const Ideal& ideal() const { return i_; }
  const Ideal& reduction() const {
    require(j_.has_value(), ErrorKind::BadParameters,
            "this operation needs a reduction ideal J");
    return *j_;
  }

  /// ell(I^n / m I^n) = mu(I^n): the Hilbert function of the fiber cone.
  long long hf_fiber(long long n) {
    require(n >= 0, ErrorKind::BadParameters,
            "fiber Hilbert function index must be nonnegative");
    return calc_->mu(ipow(n));
  }

  /// ell(R / I^n).
  long long hs_samuel(long long n) {
    require(n >= 0, ErrorKind::BadParameters,
            "length function index must be nonnegative");
    return calc_->colength(ipow(n));
  }

  /// I^n, memoized across every entry point of this analysis.
  const Ideal& ideal_power(long long n) {
    require(n >= 0, ErrorKind::BadParameters, "power must be nonnegative");
    return ipow(n);
  }

  /// ell(R / m^r I^s).
  long long bhattacharya(long long r, long long s) {
    require(r >= 0 && s >= 0, ErrorKind::BadParameters,
            "two-variable length function indices must be nonnegative");
    auto key = std::make_pair(r, s);
    auto it = bf_.find(key);
    if (it != bf_.end()) return it->second;
    long long v = calc_->colength(calc_->product(mpow(r), ipow(s)));
    bf_.emplace(key, v);
    return v;
  }

  /// e(I): eventual d-th forward difference of n -> ell(R/I^n), checked
  /// against ell(R/J) when a reduction is available.
  MultiplicityResult multiplicity_e() {
    if (e_) return *e_;
    MultiplicityResult res;
    auto diff = stabilize_sequence(
        [this](int n) { return forward_difference(d_, n); }, pol_,
        "multiplicity difference sequence");
    res.difference_route = diff.value;
    res.stabilized_at = diff.stabilized_at;
    res.value = diff.value;
    if (j_) {
      reduction_number();  // verify J before trusting its colength
      res.reduction_route = calc_->colength(*j_);
      res.routes_agree = (*res.reduction_route == res.difference_route);
      res.value = *res.reduction_route;
    }
    e_ = res;
    return res;
  }

  /// f0(I): eventual (d-1)-st forward difference of n -> mu(I^n), the
  /// normalized leading coefficient of the fiber-cone Hilbert function.
  StabilizedValue f0_details() {
    if (!f0_) {
      f0_ = stabilize_sequence(
          [this](int n) {
            long long acc = 0;
            for (int k = 0; k <= d_ - 1; ++k) {
              long long term = detail::binom_ll(d_ - 1, k) * hf_fiber(n + k);
              acc += ((d_ - 1 - k) % 2 == 0) ? term : -term;
            }
            return acc;
          },
          pol_, "fiber multiplicity difference sequence");
    }
    return *f0_;
  }

  long long f0() { return f0_details().value; }

  /// e_(i,j) for i + j = d: the top-degree coefficients of the
  /// two-variable length polynomial.  Slot convention: i counts copies
  /// of m and j copies of I, so e_(1,d-1) is the one used in the
  /// minimal-mixed-multiplicity criteria.
  long long mixed_multiplicity(int i, int j) {
    require(i >= 0 && j >= 0 && i + j == d_, ErrorKind::BadDegrees,
            "mixed multiplicity degrees must be nonnegative and sum to the "
            "ring dimension");
    auto key = std::make_pair(i, j);
    auto it = mixed_.find(key);
    if (it != mixed_.end()) return it->second;
    long long v = layered_coefficient(i, j, {});
    mixed_.emplace(key, v);
    return v;
  }

  /// Least n with J I^n = I^(n+1); verifies that J is d-generated and
  /// contained in I, and that the equality persists one step further.
  int reduction_number() {
    if (red_num_) return *red_num_;
    const Ideal& j = reduction();
    require(calc_->subset(j, i_), ErrorKind::NotAReduction,
            "the candidate reduction is not contained in the ideal");
    require(calc_->mu(j) == d_, ErrorKind::NotAReduction,
            "a reduction must be generated by dim-many elements; got mu = " +
                std::to_string(calc_->mu(j)));
    for (int n = 0; n <= pol_.n_max; ++n) {
      if (calc_->equals(jipow(n), ipow(n + 1))) {
        require(calc_->equals(jipow(n + 1), ipow(n + 2)),
                ErrorKind::ConsistencyError,
                "J I^n = I^(n+1) did not persist at the next exponent");
        red_num_ = n;
        return n;
      }
    }
    fail(ErrorKind::NotAReductionWithin,
         "J I^n = I^(n+1) holds for no n <= " + std::to_string(pol_.n_max));
  }

  /// The five ideal-class flags relative to the verified reduction.
  ClassifyFlags classify() {
    if (flags_) return *flags_;
    reduction_number();
    const Ideal& j = *j_;
    ClassifyFlags f;
    f.mu_value = calc_->mu(i_);
    f.colength_value = calc_->colength(i_);
    f.e_value = multiplicity_e().value;
    f.sally_length = calc_->length_quotient(ipow(2), jipow(1));
    f.sally = (f.sally_length == 1);
    f.minimal_multiplicity =
        (f.e_value == f.mu_value - d_ + f.colength_value);
    require(f.e_value >= f.mu_value - d_ + f.colength_value,
            ErrorKind::ConsistencyError,
            "multiplicity fell below mu(I) - dim + ell(R/I)");
    Ideal mi = calc_->product(m_, i_);
    Ideal mj = calc_->product(m_, j);
    f.stable_product_length = calc_->length_quotient(mi, mj);
    f.almost_minimal_multiplicity = (f.stable_product_length == 1);
    f.stable_products_equal = (f.stable_product_length == 0);
    f.mixed_value = mixed_multiplicity(1, d_ - 1);
    f.minimal_mixed = (f.mixed_value == f.mu_value - d_ + 1);
    f.almost_minimal_mixed = (f.mixed_value == f.mu_value - d_ + 2);
    flags_ = f;
    return f;
  }

  /// ell(I^n / (m I^n + J I^(n-1))) for n = 0..r, starting with
  /// ell(R/m) = 1.  Entries vanish beyond the reduction number.
  std::vector<long long> fiber_quotient_lengths() {
    if (h_lengths_) return *h_lengths_;
    int r = reduction_number();
    std::vector<long long> h;
    h.push_back(1);
    for (int n = 1; n <= r; ++n) {
      h.push_back(calc_->length_quotient(
          ipow(n), calc_->sum(calc_->product(m_, ipow(n)), jipow(n - 1))));
    }
    h_lengths_ = h;
    return h;
  }

  /// Multiplicity test for Cohen-Macaulayness of the fiber cone:
  /// true iff f0(I) equals the total of fiber_quotient_lengths.
  CmResult cm_test() {
    if (cm_) return *cm_;
    CmResult res;
    res.h_lengths = fiber_quotient_lengths();
    res.fiber_quotient_total = 0;
    for (long long h : res.h_lengths) res.fiber_quotient_total += h;
    res.f0 = f0();
    res.verdict = (res.f0 == res.fiber_quotient_total);
    cm_ = res;
    return res;
  }

  /// Coefficients of HF(fiber)(t) * (1-t)^d, truncated at the first
  /// run of vanishing coefficients.  Their sum is checked against f0.
  std::vector<long long> hilbert_numerator() {
    if (numerator_) return *numerator_;
    auto coeff = [this](int n) {
      long long acc = 0;
      for (int k = 0; k <= d_; ++k) {
        if (n - k < 0) break;  // hf_fiber vanishes at negative indices
        long long term = detail::binom_ll(d_, k) * hf_fiber(n - k);
        acc += (k % 2 == 0) ? term : -term;
      }
      return acc;
    };
    int stop = first_zero_tail(coeff, pol_, "fiber series numerator tail");
    std::vector<long long> num;
    for (int n = 0; n < stop; ++n) num.push_back(coeff(n));
    if (num.empty()) num.push_back(coeff(0));
    long long total = 0;
    for (long long c : num) total += c;
    require(total == f0(), ErrorKind::ConsistencyError,
            "fiber series numerator does not sum to the fiber multiplicity");
    numerator_ = num;
    return num;
  }

  /// Lengths of the graded pieces of the socle of F(I)/JF(I):
  /// entries n = 1..r-1 are
  /// ell(((I^(n+1) m + J I^n : I) cap I^n) / (I^n m + J I^(n-1))) and the
  /// top entry is ell(I^r / (m I^r + J I^(r-1))).  Requires r >= 1.
  std::vector<long long> socle_decomposition() {
    if (socle_) return *socle_;
    int r = reduction_number();
    require(r >= 1, ErrorKind::BadParameters,
            "socle decomposition needs a positive reduction number");
    std::vector<long long> lengths;
    for (int n = 1; n <= r - 1; ++n) {
      Ideal numer = socle_piece_numerator(n);
      Ideal denom = calc_->sum(calc_->product(ipow(n), m_), jipow(n - 1));
      lengths.push_back(calc_->length_quotient(numer, denom));
    }
    lengths.push_back(calc_->length_quotient(
        ipow(r), calc_->sum(calc_->product(m_, ipow(r)), jipow(r - 1))));
    socle_ = lengths;
    return lengths;
  }

  /// Gorenstein test: Cohen-Macaulay with total socle length one.  For
  /// reduction number two the equivalent ideal-theoretic test is run and
  /// required to agree; the necessary conditions at other reduction
  /// numbers are checked as internal consistency assertions.
  GorensteinResult gorenstein_test() {
    if (gorenstein_) return *gorenstein_;
    GorensteinResult res;
    auto cm = cm_test();
    if (!cm.verdict) {
      res.verdict = false;
      res.criterion = "not_cohen_macaulay";
      gorenstein_ = res;
      return res;
    }
    int r = reduction_number();
    if (r == 0) {
      // I equals its own d-generated reduction, so the fiber cone is a
      // polynomial ring.
      res.verdict = true;
      res.criterion = "polynomial_ring";
      res.socle_lengths = {1};
      res.socle_total = 1;
      gorenstein_ = res;
      return res;
    }
    res.socle_lengths = socle_decomposition();
    res.socle_total = 0;
    for (long long s : res.socle_lengths) res.socle_total += s;
    res.verdict = (res.socle_total == 1);
    res.criterion = "socle_length";
    const long long mu_i = calc_->mu(i_);
    if (r == 2) {
      Ideal e_ideal = socle_piece_numerator(1);
      Ideal target = calc_->sum(calc_->product(m_, i_), *j_);
      bool ideal_eq = calc_->equals(e_ideal, target);
      bool top_one =
          (calc_->length_quotient(
               ipow(2), calc_->sum(calc_->product(m_, ipow(2)), jipow(1))) ==
           1);
      require((ideal_eq && top_one) == res.verdict,
              ErrorKind::ConsistencyError,
              "socle route and quadratic-reduction ideal test disagree");
      res.criterion = "quadratic_reduction_ideal_test";
      if (!ideal_eq) {
        res.witness = calc_->witness_in_difference(e_ideal, target);
        if (!res.witness)
          res.witness = calc_->witness_in_difference(target, e_ideal);
      }
    } else if (!res.verdict) {
      // witness from the first socle piece that is too large
      res.witness = calc_->witness_in_difference(
          i_, calc_->sum(calc_->product(m_, i_), *j_));
    }
    if (res.verdict && r == 1) {
      require(mu_i == d_ + 1, ErrorKind::ConsistencyError,
              "a Gorenstein fiber cone at reduction number one forces "
              "mu(I) = dim + 1");
    }
    if (mu_i == d_ + 1) {
      // d+1 generators and a Cohen-Macaulay fiber cone make it a
      // hypersurface, hence Gorenstein.
      require(res.verdict, ErrorKind::ConsistencyError,
              "a Cohen-Macaulay hypersurface fiber cone must be Gorenstein");
    }
    if (res.verdict && r >= 3) {
      long long top = calc_->length_quotient(
          ipow(r - 1),
          calc_->sum(calc_->product(m_, ipow(r - 1)), jipow(r - 2)));
      require(mu_i == d_ + top, ErrorKind::ConsistencyError,
              "Gorenstein symmetry forces mu(I) = dim + ell(I^(r-1)/"
              "(m I^(r-1) + J I^(r-2)))");
      if (classify().sally) {
        require(mu_i == d_ + 1, ErrorKind::ConsistencyError,
                "a Gorenstein fiber cone of an ideal with ell(I^2/JI) = 1 "
                "and r >= 3 forces mu(I) = dim + 1");
      }
    }
    gorenstein_ = res;
    return res;
  }

  /// W = I cap (mJ : I) compared against mI + J, with the four
  /// hypotheses under which the comparison decides the Gorenstein
  /// property reported separately.
  AmmGorensteinResult amm_gorenstein_criterion() {
    reduction_number();
    AmmGorensteinResult res;
    Ideal w = calc_->intersect(i_, calc_->colon(calc_->product(m_, *j_), i_));
    Ideal target = calc_->sum(calc_->product(m_, i_), *j_);
    res.equal = calc_->equals(w, target);
    res.fiber_cm = cm_test().verdict;
    res.graded_cm = valabrega_valla().ok;
    res.almost_minimal_multiplicity =
        (calc_->length_quotient(calc_->product(m_, i_),
                                calc_->product(m_, *j_)) == 1);
    res.reduction_number_two = (reduction_number() == 2);
    res.applicable = res.fiber_cm && res.graded_cm &&
                     res.almost_minimal_multiplicity &&
                     reduction_number() <= 2;
    if (!res.equal) {
      res.witness = calc_->witness_in_difference(w, target);
      if (!res.witness)
        res.witness = calc_->witness_in_difference(target, w);
    }
    if (res.applicable) {
      require(res.equal == gorenstein_test().verdict,
              ErrorKind::ConsistencyError,
              "the W-comparison disagrees with the Gorenstein verdict even "
              "though all of its hypotheses hold");
    }
    return res;
  }

  /// ell((J:I)/J) versus ell(R/I), and mu(I) versus mu(m) + d: the two
  /// relations that hold when the fiber cone of an ideal of almost
  /// minimal multiplicity is Gorenstein.  Report only.
  GorboundResult gorbound_check() {
    reduction_number();
    GorboundResult res;
    res.colon_length =
        calc_->length_quotient(calc_->colon(*j_, i_), *j_);
    res.colength_i = calc_->colength(i_);
    res.mu_i = calc_->mu(i_);
    res.mu_m_plus_d = calc_->mu(m_) + d_;
    res.lengths_equal = (res.colon_length == res.colength_i);
    res.mu_within_bound = (res.mu_i <= res.mu_m_plus_d);
    return res;
  }

  /// I^n cap J = J I^(n-1) for n = 1..r+1: certifies that the
  /// associated graded ring is Cohen-Macaulay relative to J.
  GradedCmResult valabrega_valla() {
    if (vv_) return *vv_;
    int r = reduction_number();
    GradedCmResult res;
    res.ok = true;
    for (int n = 1; n <= r + 1; ++n) {
      Ideal lhs = calc_->intersect(ipow(n), *j_);
      const Ideal& rhs = jipow(n - 1);
      if (!calc_->equals(lhs, rhs)) {
        res.ok = false;
        res.failed_at = n;
        res.witness = calc_->witness_in_difference(lhs, rhs);
        break;
      }
    }
    vv_ = res;
    return res;
  }

  /// Consistency check of the limit formula for f0 along a supplied
  /// sequence: a_list gives d-1 principal ideals inside I, x a principal
  /// ideal inside m (or inside I for the second variant, which compares
  /// against e(I) instead of e_(1,d-1)).
  SuperficialResult superficial_limit_check(const std::vector<Ideal>& a_list,
                                            const Ideal& x,
                                            SuperficialVariant variant) {
    require(static_cast<int>(a_list.size()) == d_ - 1,
            ErrorKind::DimensionMismatch,
            "need exactly dim - 1 sequence elements inside the ideal; got " +
                std::to_string(a_list.size()));
    for (const Ideal& a : a_list) {
      require(calc_->mu(a) == 1, ErrorKind::BadParameters,
              "sequence entries must be principal ideals");
      require(calc_->subset(a, i_), ErrorKind::NotContained,
              "sequence entries must lie inside the ideal");
    }
    require(calc_->mu(x) == 1, ErrorKind::BadParameters,
            "the final sequence entry must be a principal ideal");
    if (variant == SuperficialVariant::last_in_ideal) {
      require(calc_->subset(x, i_), ErrorKind::NotContained,
              "the final sequence entry must lie inside the ideal for the "
              "multiplicity variant");
    } else {
      require(calc_->subset(x, m_), ErrorKind::NotContained,
              "the final sequence entry must lie inside the maximal ideal");
    }
    std::optional<Ideal> l;
    for (const Ideal& a : a_list) l = l ? calc_->sum(*l, a) : a;
    auto term = [&](int n) {
      Ideal denom = calc_->product(x, ipow(n));
      if (l)
        denom = calc_->sum(
            denom, calc_->product(*l, calc_->product(m_, ipow(n - 1))));
      return calc_->length_quotient(calc_->product(m_, ipow(n)), denom);
    };
    auto lim = stabilize_sequence([&](int k) { return term(k + 1); }, pol_,
                                  "superficial limit sequence");
    SuperficialResult res;
    res.limit = lim.value;
    res.stabilized_at = lim.stabilized_at + 1;
    res.f0 = f0();
    res.variant = variant;
    res.reference = (variant == SuperficialVariant::last_in_ideal)
                        ? multiplicity_e().value
                        : mixed_multiplicity(1, d_ - 1);
    res.consistent = (res.f0 == res.reference - res.limit);
    return res;
  }

  /// d = 1 only: the first-order coefficient of the polynomial of
  /// n -> ell(R/m I^n), computed as sum_n ell(m I^n / x m I^(n-1)) - 1
  /// for a principal reduction (x) of I.
  long long g1_coefficient(const Ideal& x) {
    require(d_ == 1, ErrorKind::DimensionMismatch,
            "this coefficient formula is specific to dimension one");
    require(calc_->mu(x) == 1, ErrorKind::NotAReduction,
            "the reduction must be principal");
    require(calc_->subset(x, i_), ErrorKind::NotAReduction,
            "the principal reduction must lie inside the ideal");
    bool reduces = false;
    for (int n = 0; n <= pol_.n_max; ++n) {
      if (calc_->equals(calc_->product(x, ipow(n)), ipow(n + 1))) {
        reduces = true;
        break;
      }
    }
    require(reduces, ErrorKind::NotAReductionWithin,
            "x I^n = I^(n+1) holds for no n <= " + std::to_string(pol_.n_max));
    auto term = [&](int n) {
      return calc_->length_quotient(
          calc_->product(m_, ipow(n + 1)),
          calc_->product(x, calc_->product(m_, ipow(n))));
    };
    int stop = first_zero_tail(term, pol_, "first-order coefficient tail");
    long long total = 0;
    for (int n = 0; n < stop; ++n) total += term(n);
    return total - 1;
  }

  /// Extract every coefficient of the two-variable length polynomial,
  /// form the weights g(j) = sum_i i * e_(i,j), and predict the fiber
  /// series numerator as sum_j g(j) (1-t)^(d-1-j).  The prediction is
  /// exact when the length function agrees with its polynomial at all
  /// nonnegative arguments; the comparison against the actual numerator
  /// is recorded either way.
  SeriesPrediction mixed_series_prediction() {
    SeriesPrediction res;
    std::map<std::pair<int, int>, long long> known;
    for (int total = d_; total >= 0; --total) {
      std::map<std::pair<int, int>, long long> layer;
      for (int i = 0; i <= total; ++i) {
        layer[{i, total - i}] = layered_coefficient(i, total - i, known);
      }
      for (const auto& [key, value] : layer) known[key] = value;
    }
    for (int total = d_; total >= 0; --total) {
      for (int i = total; i >= 0; --i) {
        res.coefficients.push_back(
            MixedCoefficient{i, total - i, known[{i, total - i}]});
      }
    }
    res.weights.assign(d_, 0);
    for (int j = 0; j <= d_ - 1; ++j) {
      for (int i = 1; i <= d_ - j; ++i) {
        res.weights[j] += i * known[{i, j}];
      }
    }
    std::vector<long long> pred(d_, 0);
    for (int j = 0; j <= d_ - 1; ++j) {
      int pow = d_ - 1 - j;
      for (int c = 0; c <= pow; ++c) {
        long long coef = detail::binom_ll(pow, c);
        pred[c] += res.weights[j] * ((c % 2 == 0) ? coef : -coef);
      }
    }
    while (pred.size() > 1 && pred.back() == 0) pred.pop_back();
    res.predicted = std::move(pred);
    res.actual = hilbert_numerator();
    res.matches = (res.predicted == res.actual);
    return res;
  }

  /// The equivalent Cohen-Macaulayness conditions for an ideal with
  /// ell(I^2/JI) = 1, each evaluated from scratch, with the equivalence
  /// asserted.
  SallySuiteResult sally_suite() {
    require(classify().sally, ErrorKind::NotSally,
            "the suite needs ell(I^2/JI) = 1");
    int r = reduction_number();
    long long mu_i = calc_->mu(i_);
    SallySuiteResult res;
    res.cm = cm_test().verdict;
    res.stable_square =
        calc_->equals(calc_->product(m_, ipow(2)),
                      calc_->product(m_, jipow(1)));
    std::vector<long long> expected;
    expected.push_back(1);
    expected.push_back(mu_i - d_);
    for (int n = 2; n <= r; ++n) expected.push_back(1);
    res.numerator_shape = (hilbert_numerator() == expected);
    res.f0_formula = (f0() == mu_i - d_ + r);
    bool all = res.cm && res.stable_square && res.numerator_shape &&
               res.f0_formula;
    bool any = res.cm || res.stable_square || res.numerator_shape ||
               res.f0_formula;
    if (d_ == 1) {
      bool chain = true;
      for (int k = 2; k <= r; ++k) {
        if (calc_->mu(ipow(k)) != mu_i + k - 1) {
          chain = false;
          break;
        }
      }
      res.power_mu_chain = chain;
      all = all && chain;
      any = any || chain;
    }
    require(all || !any, ErrorKind::ConsistencyError,
            "the equivalent Cohen-Macaulayness conditions disagree");
    res.all_true = all;
    return res;
  }

  /// Run the whole battery against (I, J) and assemble the report.
  FiberReport report() {
    reduction_number();
    FiberReport rep;
    rep.dimension = d_;
    rep.mu_i = calc_->mu(i_);
    rep.e_i = multiplicity_e();
    auto f0d = f0_details();
    rep.f0 = f0d.value;
    rep.f0_stabilized_at = f0d.stabilized_at;
    for (int i = 0; i <= d_; ++i) {
      rep.mixed.push_back(
          MixedCoefficient{i, d_ - i, mixed_multiplicity(i, d_ - i)});
    }
    rep.red_num = reduction_number();
    rep.h_lengths = fiber_quotient_lengths();
    rep.numerator = hilbert_numerator();
    rep.flags = classify();
    rep.graded_cm = valabrega_valla();
    rep.cm = cm_test();
    rep.socle_lengths =
        (rep.red_num >= 1) ? socle_decomposition() : std::vector<long long>{1};
    rep.gorenstein = gorenstein_test();
    rep.gorbound = gorbound_check();
    int last_nonzero = 0;
    for (int n = 0; n < static_cast<int>(rep.h_lengths.size()); ++n) {
      if (rep.h_lengths[n] != 0) last_nonzero = n;
    }
    require(last_nonzero == rep.red_num, ErrorKind::ConsistencyError,
            "the last nonvanishing fiber quotient must sit at the "
            "reduction number");
    return rep;
  }

 private:
  const Ideal& ipow(long long n) {
    while (static_cast<long long>(ipow_.size()) <= n) {
      ipow_.push_back(calc_->product(ipow_.back(), i_));
    }
    return ipow_[static_cast<std::size_t>(n)];
  }

  const Ideal& mpow(long long n) {
    while (static_cast<long long>(mpow_.size()) <= n) {
      mpow_.push_back(calc_->product(mpow_.back(), m_));
    }
    return mpow_[static_cast<std::size_t>(n)];
  }

  /// J I^n with J the (not yet necessarily verified) candidate.
  const Ideal& jipow(long long n) {
    const Ideal& j = reduction();
    while (static_cast<long long>(jipow_.size()) <= n) {
      jipow_.push_back(
          calc_->product(j, ipow(static_cast<long long>(jipow_.size()))));
    }
    return jipow_[static_cast<std::size_t>(n)];
  }

  /// (I^(n+1) m + J I^n : I) cap I^n - the n-th socle piece numerator.
  Ideal socle_piece_numerator(int n) {
    Ideal top = calc_->sum(calc_->product(ipow(n + 1), m_), jipow(n));
    return calc_->intersect(calc_->colon(top, i_), ipow(n));
  }

  /// k-th forward difference of ell(R/I^n) at n.
  long long forward_difference(int k, int n) {
    long long acc = 0;
    for (int t = 0; t <= k; ++t) {
      long long term = detail::binom_ll(k, t) * hs_samuel(n + t);
      acc += ((k - t) % 2 == 0) ? term : -term;
    }
    return acc;
  }

  /// Coefficient e_(i,j) of the two-variable length polynomial, given
  /// all coefficients of strictly higher total degree.  The iterated
  /// forward difference annihilates every remaining basis term except
  /// C(r+i,i)C(s+j,j) itself, whose difference is the constant 1.
  long long layered_coefficient(
      int i, int j, const std::map<std::pair<int, int>, long long>& higher) {
    auto residual = [&](long long r, long long s) {
      long long v = bhattacharya(r, s);
      for (const auto& [key, e] : higher) {
        v -= e * detail::binom_ll(r + key.first, key.first) *
             detail::binom_ll(s + key.second, key.second);
      }
      return v;
    };
    auto diffed = [&](int t) {
      long long acc = 0;
      for (int a = 0; a <= i; ++a) {
        for (int b = 0; b <= j; ++b) {
          long long term = detail::binom_ll(i, a) * detail::binom_ll(j, b) *
                           residual(t + a, t + b);
          acc += (((i - a) + (j - b)) % 2 == 0) ? term : -term;
        }
      }
      return acc;
    };
    return stabilize_sequence(diffed, pol_,
                              "two-variable length difference (" +
                                  std::to_string(i) + "," +
                                  std::to_string(j) + ")")
        .value;
  }

  const C* calc_;
  int d_;
  StabilizationPolicy pol_;
  Ideal i_;
  Ideal m_;
  Ideal unit_;
  std::optional<Ideal> j_;

  std::vector<Ideal> ipow_;
  std::vector<Ideal> mpow_;
  std::vector<Ideal> jipow_;
  std::map<std::pair<long long, long long>, long long> bf_;
  std::map<std::pair<int, int>, long long> mixed_;
  std::optional<int> red_num_;
  std::optional<MultiplicityResult> e_;
  std::optional<StabilizedValue> f0_;
  std::optional<ClassifyFlags> flags_;
  std::optional<std::vector<long long>> h_lengths_;
  std::optional<CmResult> cm_;
  std::optional<std::vector<long long>> numerator_;
  std::optional<std::vector<long long>> socle_;
  std::optional<GradedCmResult> vv_;
  std::optional<GorensteinResult> gorenstein_;
};

/// Convenience entry point: analyze (I, J) over calc in one call.
template <class C>
  requires IdealCalculus<C>
FiberReport analyze(const C& calc, const typename C::Ideal& i,
                    const typename C::Ideal& j,
                    const StabilizationPolicy& policy = {}) {
  FiberAnalysis<C> session(calc, i, j, policy);
  return session.report();
}

}  // namespace fibercone

#endif  // FIBERCONE_INVARIANTS_HPP
