#include "fibercone/sgpideal.hpp"

#include <algorithm>

namespace fibercone {

namespace {

void check_parents(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  require(a.parent()->same_semigroup(*b.parent()), ErrorKind::MixedParents,
          "ideals live over different semigroups");
}

}  // namespace

SemigroupIdeal::SemigroupIdeal(std::shared_ptr<const NumericalSemigroup> parent,
                               bool zero, long long stable_from,
                               std::vector<bool> table)
    : parent_(std::move(parent)),
      zero_(zero),
      stable_from_(stable_from),
      table_(std::move(table)) {
  if (!zero_) compute_min_gens();
}

void SemigroupIdeal::compute_min_gens() {
  // e is a minimal generator iff e lies in E but no e - g does, g running
  // over the semigroup generators.  Beyond stable_from + min(gens) every
  // member has e - min(gens) >= stable_from in E, so the scan is finite.
  min_gens_.clear();
  const auto& gens = parent_->generators();
  const long long bound = stable_from_ + gens.front();
  for (long long e = 0; e < bound; ++e) {
    if (!contains(e)) continue;
    bool reachable = false;
    for (long long g : gens) {
      if (contains(e - g)) {
        reachable = true;
        break;
      }
    }
    if (!reachable) min_gens_.push_back(e);
  }
}

SemigroupIdeal SemigroupIdeal::with_padding(long long extra) const {
  if (zero_) return *this;
  long long sf = stable_from_ + extra;
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long n = 0; n < sf; ++n)
    table[static_cast<size_t>(n)] = contains(n);
  return SemigroupIdeal(parent_, false, sf, std::move(table));
}

SemigroupIdeal ideal_from_monomials(
    std::shared_ptr<const NumericalSemigroup> parent,
    const std::vector<long long>& exponents) {
  if (exponents.empty())
    return SemigroupIdeal(std::move(parent), true, 0, {});
  long long mx = 0;
  for (long long e : exponents) {
    require(parent->contains(e), ErrorKind::ExponentNotInSemigroup,
            "exponent " + std::to_string(e) + " is not in the semigroup");
    mx = std::max(mx, e);
  }
  const long long sf = mx + parent->conductor();
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long e : exponents)
    for (long long n = e; n < sf; ++n)
      if (parent->contains(n - e)) table[static_cast<size_t>(n)] = true;
  return SemigroupIdeal(std::move(parent), false, sf, std::move(table));
}

SemigroupIdeal maximal_ideal(std::shared_ptr<const NumericalSemigroup> parent) {
  auto gens = parent->generators();
  return ideal_from_monomials(std::move(parent), gens);
}

SemigroupIdeal unit_ideal(std::shared_ptr<const NumericalSemigroup> parent) {
  const long long sf = parent->conductor();
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long n = 0; n < sf; ++n)
    table[static_cast<size_t>(n)] = parent->contains(n);
  return SemigroupIdeal(std::move(parent), false, sf, std::move(table));
}

SemigroupIdeal sum(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  check_parents(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long long sf = std::min(a.stable_from(), b.stable_from());
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long n = 0; n < sf; ++n)
    table[static_cast<size_t>(n)] = a.contains(n) || b.contains(n);
  return SemigroupIdeal(a.parent(), false, sf, std::move(table));
}

SemigroupIdeal product(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  check_parents(a, b);
  if (a.is_zero() || b.is_zero())
    return SemigroupIdeal(a.parent(), true, 0, {});
  const auto& gens = a.min_gens();
  const long long sf = gens.back() + b.stable_from();
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long g : gens)
    for (long long n = g; n < sf; ++n)
      if (b.contains(n - g)) table[static_cast<size_t>(n)] = true;
  return SemigroupIdeal(a.parent(), false, sf, std::move(table));
}

SemigroupIdeal power(const SemigroupIdeal& a, long long n) {
  require(n >= 0, ErrorKind::NegativePower,
          "cannot raise an ideal to power " + std::to_string(n));
  if (n == 0) return unit_ideal(a.parent());
  SemigroupIdeal r = a;
  for (long long i = 1; i < n; ++i) r = product(r, a);
  return r;
}

SemigroupIdeal colon(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  check_parents(a, b);
  require(!b.is_zero(), ErrorKind::ZeroIdeal,
          "colon by the zero ideal is the whole ring, not an ideal here");
  if (a.is_zero()) return a;
  const auto& parent = a.parent();
  const long long sf = std::max(a.stable_from(), parent->conductor());
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long n = 0; n < sf; ++n) {
    if (!parent->contains(n)) continue;
    bool ok = true;
    for (long long g : b.min_gens()) {
      if (!a.contains(n + g)) {
        ok = false;
        break;
      }
    }
    table[static_cast<size_t>(n)] = ok;
  }
  return SemigroupIdeal(parent, false, sf, std::move(table));
}

SemigroupIdeal intersect(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  check_parents(a, b);
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  const long long sf = std::max(a.stable_from(), b.stable_from());
  std::vector<bool> table(static_cast<size_t>(sf), false);
  for (long long n = 0; n < sf; ++n)
    table[static_cast<size_t>(n)] = a.contains(n) && b.contains(n);
  return SemigroupIdeal(a.parent(), false, sf, std::move(table));
}

bool subset(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  check_parents(a, b);
  if (a.is_zero()) return true;
  if (b.is_zero()) return false;
  const long long hi = std::max(a.stable_from(), b.stable_from());
  for (long long n = 0; n < hi; ++n)
    if (a.contains(n) && !b.contains(n)) return false;
  return true;
}

bool equals(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  check_parents(a, b);
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  const long long hi = std::max(a.stable_from(), b.stable_from());
  for (long long n = 0; n < hi; ++n)
    if (a.contains(n) != b.contains(n)) return false;
  return true;
}

long long length_quotient(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  require(subset(b, a), ErrorKind::NotContained,
          "length_quotient(A, B) needs B contained in A");
  if (b.is_zero()) {
    require(a.is_zero(), ErrorKind::ZeroIdeal,
            "A/0 has infinite length for nonzero A");
    return 0;
  }
  const long long hi = std::max(a.stable_from(), b.stable_from());
  long long count = 0;
  for (long long n = 0; n < hi; ++n)
    if (a.contains(n) && !b.contains(n)) ++count;
  return count;
}

long long colength(const SemigroupIdeal& a) {
  require(!a.is_zero(), ErrorKind::ZeroIdeal,
          "the zero ideal has infinite colength");
  long long count = 0;
  for (long long n = 0; n < a.stable_from(); ++n)
    if (a.parent()->contains(n) && !a.contains(n)) ++count;
  return count;
}

long long mu(const SemigroupIdeal& a) {
  require(!a.is_zero(), ErrorKind::ZeroIdeal, "mu of the zero ideal");
  return static_cast<long long>(a.min_gens().size());
}

std::optional<long long> first_difference(const SemigroupIdeal& a,
                                          const SemigroupIdeal& b) {
  check_parents(a, b);
  if (a.is_zero()) return std::nullopt;
  const long long hi =
      b.is_zero() ? a.stable_from() + 1
                  : std::max(a.stable_from(), b.stable_from());
  for (long long n = 0; n < hi; ++n)
    if (a.contains(n) && !b.contains(n)) return n;
  return std::nullopt;
}

}  // namespace fibercone
