#pragma once

#include <memory>
#include <vector>

#include "fibercone/errors.hpp"

namespace fibercone {

/// A numerical semigroup S = <g1, ..., gk>: the set of all non-negative
/// integer combinations of coprime positive generators.
///
/// Values are immutable after construction and safe to share between
/// concurrent readers.  Membership below the conductor is answered from a
/// sieve table; at or above the conductor every integer is a member.
class NumericalSemigroup {
 public:
  /// Builds the semigroup, discarding redundant generators.  The stored
  /// generator list is the unique minimal one, sorted increasingly.
  ///
  /// Throws EmptyInput for an empty list, BadParameters for non-positive
  /// entries and NotCoprime when gcd(g1, ..., gk) != 1.
  static std::shared_ptr<const NumericalSemigroup> from_generators(
      const std::vector<long long>& generators);

  const std::vector<long long>& generators() const { return gens_; }

  /// Largest integer not in S; -1 when S is all of N (i.e. 1 is a generator).
  long long frobenius() const { return frobenius_; }

  /// frobenius() + 1: least c such that every n >= c lies in S.
  long long conductor() const { return conductor_; }

  bool contains(long long n) const {
    if (n < 0) return false;
    if (n >= conductor_) return true;
    return member_[static_cast<size_t>(n)];
  }

  /// Apery set of S with respect to a nonzero member m: for each residue
  /// r mod m the least member congruent to r, listed by residue 0..m-1.
  /// Throws NotMember when m is not a positive member of S.
  std::vector<long long> apery_set(long long m) const;

  /// True when the gaps of S mirror the members: for every integer x,
  /// x in S iff frobenius() - x is not in S.
  bool is_symmetric() const;

  /// The finitely many positive integers outside S, increasing.
  std::vector<long long> gaps() const;

  /// Multiplicity of the semigroup ring k[[t^g1, ..., t^gk]]: the least
  /// positive member.
  long long ring_multiplicity() const { return gens_.front(); }

  /// Number of minimal generators.
  long long embedding_dimension() const {
    return static_cast<long long>(gens_.size());
  }

  bool same_semigroup(const NumericalSemigroup& other) const {
    return gens_ == other.gens_;
  }

 private:
  NumericalSemigroup() = default;

  std::vector<long long> gens_;
  long long frobenius_ = -1;
  long long conductor_ = 0;
  std::vector<bool> member_;  // membership on [0, conductor)
};

}  // namespace fibercone
