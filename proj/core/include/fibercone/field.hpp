#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "fibercone/errors.hpp"

namespace fibercone {

/// Exact rational arithmetic (the default coefficient field).
struct RationalField {
  using Elem = mpq_class;

  long long characteristic() const { return 0; }
  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return Elem(1) / a; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }
};

/// F_p for an odd prime p < 2^31; elements are canonical representatives
/// in [0, p).  Products of two elements fit in 64 bits.
struct PrimeField {
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p_) : p(p_) {
    require(p >= 2 && p < (1ull << 31), ErrorKind::BadParameters,
            "characteristic must be a prime below 2^31");
  }

  std::uint64_t p;

  long long characteristic() const { return static_cast<long long>(p); }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return static_cast<Elem>(r);
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    return a >= b ? a - b : a + p - b;
  }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % p; }
  Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
  Elem inv(const Elem& a) const {
    require(a != 0, ErrorKind::BadParameters, "inverse of zero");
    // Fermat: a^(p-2) mod p.
    Elem base = a, out = 1;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) out = mul(out, base);
      base = mul(base, base);
      e >>= 1;
    }
    return out;
  }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return std::to_string(a); }
};

}  // namespace fibercone
