#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "fibercone/numsgp.hpp"

using fibercone::CalcError;
using fibercone::ErrorKind;
using fibercone::NumericalSemigroup;

namespace {

// Independent oracle: plain reachability table, no conductor logic shared
// with the library.  The Frobenius number of coprime generators is below
// min*max, so scanning that far (plus slack) finds it.
struct SieveOracle {
  std::vector<bool> reach;
  explicit SieveOracle(const std::vector<long long>& gens) {
    long long mn = *std::min_element(gens.begin(), gens.end());
    long long mx = *std::max_element(gens.begin(), gens.end());
    long long bound = mn * mx + 2 * mx + 2;
    reach.assign(bound + 1, false);
    reach[0] = true;
    for (long long n = 0; n <= bound; ++n) {
      if (!reach[n]) continue;
      for (long long g : gens)
        if (n + g <= bound) reach[n + g] = true;
    }
  }
  bool member(long long n) const {
    if (n < 0) return false;
    if (n < (long long)reach.size()) return reach[n];
    return true;
  }
  long long frobenius() const {
    for (long long n = (long long)reach.size() - 1; n >= 0; --n)
      if (!reach[n]) return n;
    return -1;
  }
};

const std::vector<std::vector<long long>> kSamples = {
    {1},          {2, 3},        {3, 5},         {4, 5, 6},
    {5, 6, 7, 8}, {4, 5, 6, 7},  {6, 11, 15, 31}, {7, 15, 17, 33},
    {6, 7, 16},   {9, 11, 14, 20}};

}  // namespace

TEST_CASE("construction validates input") {
  CHECK_THROWS_AS((void)NumericalSemigroup::from_generators({}), CalcError);
  try {
    (void)NumericalSemigroup::from_generators({});
  } catch (const CalcError& e) {
    CHECK(e.kind() == ErrorKind::EmptyInput);
  }
  try {
    (void)NumericalSemigroup::from_generators({4, 6});
  } catch (const CalcError& e) {
    CHECK(e.kind() == ErrorKind::NotCoprime);
  }
  try {
    (void)NumericalSemigroup::from_generators({3, 0, 5});
  } catch (const CalcError& e) {
    CHECK(e.kind() == ErrorKind::BadParameters);
  }
}

TEST_CASE("whole-numbers case") {
  auto s = NumericalSemigroup::from_generators({1});
  CHECK(s->frobenius() == -1);
  CHECK(s->conductor() == 0);
  CHECK(s->is_symmetric());
  CHECK(s->gaps().empty());
  CHECK(s->contains(0));
  CHECK(s->contains(17));
  CHECK_FALSE(s->contains(-1));
}

TEST_CASE("membership and frobenius match the sieve oracle") {
  for (const auto& gens : kSamples) {
    auto s = NumericalSemigroup::from_generators(gens);
    SieveOracle oracle(gens);
    CHECK(s->frobenius() == oracle.frobenius());
    for (long long n = -2; n <= s->conductor() + 40; ++n)
      CHECK(s->contains(n) == oracle.member(n));
  }
}

TEST_CASE("frozen frobenius values") {
  CHECK(NumericalSemigroup::from_generators({6, 11, 15, 31})->frobenius() ==
        25);
  CHECK(NumericalSemigroup::from_generators({7, 15, 17, 33})->frobenius() ==
        27);
  CHECK(NumericalSemigroup::from_generators({4, 5, 6, 7})->frobenius() == 3);
  CHECK(NumericalSemigroup::from_generators({2, 3})->frobenius() == 1);
  CHECK(NumericalSemigroup::from_generators({3, 5})->frobenius() == 7);
}

TEST_CASE("redundant generators are dropped") {
  auto s = NumericalSemigroup::from_generators({4, 5, 6, 7, 8, 9, 11});
  CHECK(s->generators() == std::vector<long long>{4, 5, 6, 7});
  CHECK(s->embedding_dimension() == 4);
  CHECK(s->ring_multiplicity() == 4);

  auto t = NumericalSemigroup::from_generators({6, 11, 15, 31, 17, 26});
  CHECK(t->generators() == std::vector<long long>{6, 11, 15, 31});
}

TEST_CASE("construction is idempotent on its own generator list") {
  for (const auto& gens : kSamples) {
    auto s = NumericalSemigroup::from_generators(gens);
    auto t = NumericalSemigroup::from_generators(s->generators());
    CHECK(s->generators() == t->generators());
    CHECK(s->frobenius() == t->frobenius());
  }
}

TEST_CASE("apery sets") {
  auto s = NumericalSemigroup::from_generators({5, 6, 7, 8});
  CHECK(s->apery_set(5) == std::vector<long long>{0, 6, 7, 8, 14});
  auto t = NumericalSemigroup::from_generators({4, 5, 6, 7});
  CHECK(t->apery_set(4) == std::vector<long long>{0, 5, 6, 7});
  try {
    (void)t->apery_set(3);
    CHECK(false);
  } catch (const CalcError& e) {
    CHECK(e.kind() == ErrorKind::NotMember);
  }
}

TEST_CASE("apery set properties") {
  for (const auto& gens : kSamples) {
    auto s = NumericalSemigroup::from_generators(gens);
    long long m = s->ring_multiplicity();
    auto ap = s->apery_set(m);
    REQUIRE((long long)ap.size() == m);
    std::set<long long> residues;
    for (long long i = 0; i < m; ++i) {
      CHECK(s->contains(ap[i]));
      CHECK(ap[i] % m == i);
      CHECK_FALSE(s->contains(ap[i] - m));
      residues.insert(ap[i] % m);
    }
    CHECK((long long)residues.size() == m);
    // The largest Apery element sits just past the last gap.
    CHECK(*std::max_element(ap.begin(), ap.end()) == s->frobenius() + m);
  }
}

TEST_CASE("symmetry equals the gap-count criterion") {
  for (const auto& gens : kSamples) {
    auto s = NumericalSemigroup::from_generators(gens);
    bool by_count =
        2 * (long long)s->gaps().size() == s->frobenius() + 1;
    CHECK(s->is_symmetric() == by_count);
  }
  CHECK(NumericalSemigroup::from_generators({3, 5})->is_symmetric());
  CHECK_FALSE(
      NumericalSemigroup::from_generators({6, 11, 15, 31})->is_symmetric());
}

TEST_CASE("symmetric family e, e+1, ..., 2e-2") {
  for (long long e = 4; e <= 8; ++e) {
    std::vector<long long> gens;
    for (long long g = e; g <= 2 * e - 2; ++g) gens.push_back(g);
    auto s = NumericalSemigroup::from_generators(gens);
    CHECK(s->is_symmetric());
    CHECK(s->conductor() == 2 * e);
    CHECK(s->embedding_dimension() == e - 1);
    CHECK(s->ring_multiplicity() == e);
  }
}

TEST_CASE("gaps list the non-members") {
  auto s = NumericalSemigroup::from_generators({3, 5});
  CHECK(s->gaps() == std::vector<long long>{1, 2, 4, 7});
  for (const auto& gens : kSamples) {
    auto t = NumericalSemigroup::from_generators(gens);
    for (long long g : t->gaps()) CHECK_FALSE(t->contains(g));
  }
}
