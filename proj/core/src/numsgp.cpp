#include "fibercone/numsgp.hpp"

#include <algorithm>
#include <numeric>

namespace fibercone {

namespace {

// Reachability sieve for <gens> on [0, bound].
std::vector<bool> sieve(const std::vector<long long>& gens, long long bound) {
  std::vector<bool> reach(static_cast<size_t>(bound) + 1, false);
  reach[0] = true;
  for (long long n = 1; n <= bound; ++n) {
    for (long long g : gens) {
      if (g <= n && reach[static_cast<size_t>(n - g)]) {
        reach[static_cast<size_t>(n)] = true;
        break;
      }
    }
  }
  return reach;
}

}  // namespace

std::shared_ptr<const NumericalSemigroup> NumericalSemigroup::from_generators(
    const std::vector<long long>& generators) {
  require(!generators.empty(), ErrorKind::EmptyInput,
          "a numerical semigroup needs at least one generator");
  for (long long g : generators)
    require(g > 0, ErrorKind::BadParameters,
            "generators must be positive, got " + std::to_string(g));

  std::vector<long long> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  long long g = 0;
  for (long long v : gens) g = std::gcd(g, v);
  require(g == 1, ErrorKind::NotCoprime,
          "generators have gcd " + std::to_string(g) + ", expected 1");

  // A generator is redundant exactly when the smaller kept generators
  // already reach it.
  std::vector<long long> kept;
  for (long long cand : gens) {
    if (!kept.empty() && sieve(kept, cand)[static_cast<size_t>(cand)]) continue;
    kept.push_back(cand);
  }

  auto s = std::shared_ptr<NumericalSemigroup>(new NumericalSemigroup());
  s->gens_ = kept;

  // The Frobenius number is below min*max; sieve that far, then locate the
  // first run of max(gens) consecutive members.  Everything at or beyond
  // the run start is a member.
  const long long bound = kept.front() * kept.back() + kept.back() + 1;
  std::vector<bool> reach = sieve(kept, bound);
  const long long need = kept.back();
  long long run = 0;
  long long run_start = 0;
  for (long long n = 0; n <= bound; ++n) {
    if (reach[static_cast<size_t>(n)]) {
      if (run == 0) run_start = n;
      if (++run == need) break;
    } else {
      run = 0;
    }
  }
  require(run == need, ErrorKind::ConsistencyError,
          "sieve bound too small for generator set");

  long long frob = -1;
  for (long long n = run_start - 1; n >= 0; --n) {
    if (!reach[static_cast<size_t>(n)]) {
      frob = n;
      break;
    }
  }
  s->frobenius_ = frob;
  s->conductor_ = frob + 1;
  s->member_.assign(reach.begin(), reach.begin() + s->conductor_);
  return s;
}

std::vector<long long> NumericalSemigroup::apery_set(long long m) const {
  require(m > 0 && contains(m), ErrorKind::NotMember,
          std::to_string(m) + " is not a nonzero member of the semigroup");
  std::vector<long long> ap(static_cast<size_t>(m), -1);
  long long found = 0;
  for (long long n = 0; found < m; ++n) {
    if (!contains(n)) continue;
    long long r = n % m;
    if (ap[static_cast<size_t>(r)] < 0) {
      ap[static_cast<size_t>(r)] = n;
      ++found;
    }
  }
  return ap;
}

bool NumericalSemigroup::is_symmetric() const {
  for (long long x = 0; x <= frobenius_; ++x)
    if (contains(x) == contains(frobenius_ - x)) return false;
  return true;
}

std::vector<long long> NumericalSemigroup::gaps() const {
  std::vector<long long> out;
  for (long long n = 1; n <= frobenius_; ++n)
    if (!contains(n)) out.push_back(n);
  return out;
}

}  // namespace fibercone
