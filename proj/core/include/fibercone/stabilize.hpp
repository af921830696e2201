#ifndef FIBERCONE_STABILIZE_HPP
#define FIBERCONE_STABILIZE_HPP

#include <string>
#include <utility>
#include <vector>

#include "fibercone/errors.hpp"

namespace fibercone {

/// Knobs for detecting that an integer sequence has become constant.
/// Several invariants are defined as "the eventual value" of a sequence
/// with no effective bound on where the tail starts, so acceptance is
/// heuristic: a value is accepted once it repeats over `window`
/// consecutive indices and still holds at two further indices.  Failure
/// to find such a run below `n_max` is loud (StabilizationFailed).
struct StabilizationPolicy {
  int window = 3;
  int n_max = 40;

  void validate() const {
    require(window >= 2, ErrorKind::BadParameters,
            "stabilization window must be at least 2");
    require(n_max >= window + 2, ErrorKind::BadParameters,
            "stabilization budget n_max must be at least window + 2");
  }
};

/// An accepted eventual value together with the first index of the
/// constant run that produced it.
struct StabilizedValue {
  long long value = 0;
  int stabilized_at = 0;
};

/// Accept the first value of f that is constant on [n0, n0 + window - 1]
/// and re-verify it at the two following indices.  Evaluates f lazily at
/// 0, 1, ..., up to n_max.  `what` names the sequence in error messages.
template <class Fn>
StabilizedValue stabilize_sequence(Fn&& f, const StabilizationPolicy& pol,
                                   const std::string& what) {
  pol.validate();
  std::vector<long long> values;
  int run = 0;  // length of the current constant suffix of `values`
  for (int n = 0; n <= pol.n_max; ++n) {
    const long long v = f(n);
    if (!values.empty() && values.back() == v) {
      ++run;
    } else {
      run = 1;
    }
    values.push_back(v);
    // run counts indices n - run + 1 .. n; acceptance at run ==
    // window + 2 covers the window plus the two re-verification points.
    if (run >= pol.window + 2) {
      return StabilizedValue{v, n - run + 1};
    }
  }
  fail(ErrorKind::StabilizationFailed,
       what + " did not become constant over a window of " +
           std::to_string(pol.window) + " (plus re-verification) within " +
           std::to_string(pol.n_max) + " terms");
}

/// First index n0 such that f vanishes on [n0, n0 + window + 1] (window
/// plus two re-verification indices); used to truncate series whose
/// coefficients are eventually zero.  f is evaluated at 0..n_max.
template <class Fn>
int first_zero_tail(Fn&& f, const StabilizationPolicy& pol,
                    const std::string& what) {
  pol.validate();
  int run = 0;
  for (int n = 0; n <= pol.n_max; ++n) {
    if (f(n) == 0) {
      ++run;
    } else {
      run = 0;
    }
    if (run >= pol.window + 2) {
      return n - run + 1;
    }
  }
  fail(ErrorKind::StabilizationFailed,
       what + " did not reach a zero run of length " +
           std::to_string(pol.window) + " (plus re-verification) within " +
           std::to_string(pol.n_max) + " terms");
}

}  // namespace fibercone

#endif  // FIBERCONE_STABILIZE_HPP
