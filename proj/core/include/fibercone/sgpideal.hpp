#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibercone/numsgp.hpp"

namespace fibercone {

/// A monomial ideal of the one-dimensional semigroup ring k[[t^g : g in S]],
/// identified with its exponent set E, a subset of S that is closed under
/// adding members of S.
///
/// Representation: a bit table on [0, stable_from) plus the rule that every
/// exponent >= stable_from belongs to E (nonzero ideals are eventually full
/// because exponents are eventually in max(monomials) + S).  The zero ideal
/// carries a flag instead.  All observable behaviour is independent of the
/// amount of padding in the table.
class SemigroupIdeal {
 public:
  const std::shared_ptr<const NumericalSemigroup>& parent() const {
    return parent_;
  }
  bool is_zero() const { return zero_; }
  long long stable_from() const { return stable_from_; }

  bool contains(long long n) const {
    if (zero_ || n < 0) return false;
    if (n >= stable_from_) return true;
    return table_[static_cast<size_t>(n)];
  }

  /// Minimal monomial generators: members of E that are not reachable as
  /// (nonzero member of S) + (member of E).  Increasing, finite.
  const std::vector<long long>& min_gens() const { return min_gens_; }

  /// Same ideal with the bit table enlarged by `extra` positions; used to
  /// exercise padding invariance.
  SemigroupIdeal with_padding(long long extra) const;

 private:
  friend class SemigroupCalculus;
  friend SemigroupIdeal ideal_from_monomials(
      std::shared_ptr<const NumericalSemigroup>,
      const std::vector<long long>&);
  friend SemigroupIdeal maximal_ideal(
      std::shared_ptr<const NumericalSemigroup>);
  friend SemigroupIdeal unit_ideal(std::shared_ptr<const NumericalSemigroup>);
  friend SemigroupIdeal sum(const SemigroupIdeal&, const SemigroupIdeal&);
  friend SemigroupIdeal product(const SemigroupIdeal&, const SemigroupIdeal&);
  friend SemigroupIdeal power(const SemigroupIdeal&, long long);
  friend SemigroupIdeal colon(const SemigroupIdeal&, const SemigroupIdeal&);
  friend SemigroupIdeal intersect(const SemigroupIdeal&, const SemigroupIdeal&);
  friend bool subset(const SemigroupIdeal&, const SemigroupIdeal&);
  friend bool equals(const SemigroupIdeal&, const SemigroupIdeal&);
  friend long long length_quotient(const SemigroupIdeal&,
                                   const SemigroupIdeal&);
  friend long long colength(const SemigroupIdeal&);
  friend long long mu(const SemigroupIdeal&);
  friend std::optional<long long> first_difference(const SemigroupIdeal&,
                                                   const SemigroupIdeal&);

  SemigroupIdeal(std::shared_ptr<const NumericalSemigroup> parent, bool zero,
                 long long stable_from, std::vector<bool> table);

  void compute_min_gens();

  std::shared_ptr<const NumericalSemigroup> parent_;
  bool zero_ = true;
  long long stable_from_ = 0;
  std::vector<bool> table_;  // membership on [0, stable_from)
  std::vector<long long> min_gens_;
};

/// Ideal generated by the monomials t^e, e in `exponents`.  Every exponent
/// must lie in S (ExponentNotInSemigroup otherwise).  An empty list yields
/// the zero ideal.
SemigroupIdeal ideal_from_monomials(
    std::shared_ptr<const NumericalSemigroup> parent,
    const std::vector<long long>& exponents);

/// The maximal ideal m = (t^g : g a generator of S).
SemigroupIdeal maximal_ideal(std::shared_ptr<const NumericalSemigroup> parent);

/// The unit ideal (all of the ring); exponent set is S itself.
SemigroupIdeal unit_ideal(std::shared_ptr<const NumericalSemigroup> parent);

SemigroupIdeal sum(const SemigroupIdeal& a, const SemigroupIdeal& b);
SemigroupIdeal product(const SemigroupIdeal& a, const SemigroupIdeal& b);
SemigroupIdeal power(const SemigroupIdeal& a, long long n);

/// (A : B) = { n in S : n + b in E_A for every minimal generator b of B }.
/// B must be nonzero (ZeroIdeal otherwise).
SemigroupIdeal colon(const SemigroupIdeal& a, const SemigroupIdeal& b);

SemigroupIdeal intersect(const SemigroupIdeal& a, const SemigroupIdeal& b);
bool subset(const SemigroupIdeal& a, const SemigroupIdeal& b);
bool equals(const SemigroupIdeal& a, const SemigroupIdeal& b);

/// ell(A/B) for B contained in A (NotContained otherwise); the count of
/// exponents in E_A \ E_B, finite for nonzero B.
long long length_quotient(const SemigroupIdeal& a, const SemigroupIdeal& b);

/// ell(R/A) for nonzero A: members of S outside E_A.
long long colength(const SemigroupIdeal& a);

/// Number of minimal monomial generators.
long long mu(const SemigroupIdeal& a);

/// Smallest exponent in E_A \ E_B, if any; a witness for non-containment.
std::optional<long long> first_difference(const SemigroupIdeal& a,
                                          const SemigroupIdeal& b);

/// Ideal-calculus facade over a fixed semigroup: the uniform interface the
/// invariant computations are written against (d = 1 backend).
class SemigroupCalculus {
 public:
  using Ideal = SemigroupIdeal;

  explicit SemigroupCalculus(std::shared_ptr<const NumericalSemigroup> s)
      : sgp_(std::move(s)) {}

  const std::shared_ptr<const NumericalSemigroup>& semigroup() const {
    return sgp_;
  }

  int dimension() const { return 1; }
  Ideal maximal_ideal() const { return fibercone::maximal_ideal(sgp_); }
  Ideal unit_ideal() const { return fibercone::unit_ideal(sgp_); }
  Ideal principal(long long e) const {
    return ideal_from_monomials(sgp_, {e});
  }

  Ideal sum(const Ideal& a, const Ideal& b) const {
    return fibercone::sum(a, b);
  }
  Ideal product(const Ideal& a, const Ideal& b) const {
    return fibercone::product(a, b);
  }
  Ideal power(const Ideal& a, long long n) const {
    return fibercone::power(a, n);
  }
  Ideal colon(const Ideal& a, const Ideal& b) const {
    return fibercone::colon(a, b);
  }
  Ideal intersect(const Ideal& a, const Ideal& b) const {
    return fibercone::intersect(a, b);
  }
  bool subset(const Ideal& a, const Ideal& b) const {
    return fibercone::subset(a, b);
  }
  bool equals(const Ideal& a, const Ideal& b) const {
    return fibercone::equals(a, b);
  }
  long long length_quotient(const Ideal& a, const Ideal& b) const {
    return fibercone::length_quotient(a, b);
  }
  long long colength(const Ideal& a) const { return fibercone::colength(a); }
  long long mu(const Ideal& a) const { return fibercone::mu(a); }

  std::string describe_element(long long e) const {
    return "t^" + std::to_string(e);
  }
  std::optional<std::string> witness_in_difference(const Ideal& a,
                                                   const Ideal& b) const {
    auto w = first_difference(a, b);
    if (!w) return std::nullopt;
    return describe_element(*w);
  }

 private:
  std::shared_ptr<const NumericalSemigroup> sgp_;
};

}  // namespace fibercone
