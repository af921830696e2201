#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fibercone/errors.hpp"

namespace fibercone {

/// Multivariate polynomial with integer coefficients, independent of any
/// coefficient field or truncation order.  Ideals are described by these,
/// so the same description can be re-realized in a ring of higher
/// truncation order or different characteristic.
class RawPoly {
 public:
  using Exps = std::vector<int>;

  RawPoly() : nvars_(0) {}
  explicit RawPoly(int nvars) : nvars_(nvars) {}

  static RawPoly constant(long long c, int nvars) {
    RawPoly p(nvars);
    if (c != 0) p.terms_[Exps(static_cast<size_t>(nvars), 0)] = c;
    return p;
  }

  static RawPoly variable(int index, int nvars) {
    require(index >= 0 && index < nvars, ErrorKind::BadParameters,
            "variable index out of range");
    RawPoly p(nvars);
    Exps e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(index)] = 1;
    p.terms_[e] = 1;
    return p;
  }

  static RawPoly monomial(const Exps& exps, long long coeff = 1) {
    RawPoly p(static_cast<int>(exps.size()));
    for (int e : exps)
      require(e >= 0, ErrorKind::BadParameters, "negative exponent");
    if (coeff != 0) p.terms_[exps] = coeff;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exps, long long>& terms() const { return terms_; }

  long long constant_coeff() const {
    auto it = terms_.find(Exps(static_cast<size_t>(nvars_), 0));
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const Exps& exps, long long coeff) {
    require(static_cast<int>(exps.size()) == nvars_,
            ErrorKind::DimensionMismatch, "term has wrong variable count");
    long long& slot = terms_[exps];
    slot += coeff;
    if (slot == 0) terms_.erase(exps);
  }

  friend RawPoly operator+(const RawPoly& a, const RawPoly& b) {
    check_same_vars(a, b);
    RawPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend RawPoly operator-(const RawPoly& a, const RawPoly& b) {
    check_same_vars(a, b);
    RawPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }

  friend RawPoly operator-(const RawPoly& a) {
    RawPoly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.terms_[e] = -c;
    return out;
  }

  friend RawPoly operator*(const RawPoly& a, const RawPoly& b) {
    check_same_vars(a, b);
    RawPoly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exps e(ea);
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  RawPoly pow(long long n) const {
    require(n >= 0, ErrorKind::NegativePower, "negative polynomial power");
    RawPoly out = constant(1, nvars_);
    RawPoly base = *this;
    while (n) {
      if (n & 1) out = out * base;
      if (n >>= 1) base = base * base;
    }
    return out;
  }

  /// Deterministic rendering: terms ordered by total degree descending,
  /// then by exponent vector (lexicographically ascending).
  std::string to_string(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exps, long long>> items(terms_.begin(),
                                                  terms_.end());
    auto deg = [](const Exps& e) {
      return std::accumulate(e.begin(), e.end(), 0);
    };
    std::stable_sort(items.begin(), items.end(),
                     [&](const auto& x, const auto& y) {
                       int dx = deg(x.first), dy = deg(y.first);
                       if (dx != dy) return dx > dy;
                       return x.first < y.first;
                     });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : items) {
      long long mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) out += "-";
        first = false;
      } else {
        out += c < 0 ? " - " : " + ";
      }
      std::string mono;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var_names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += mono;
      }
    }
    return out;
  }

  friend bool operator==(const RawPoly& a, const RawPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  static void check_same_vars(const RawPoly& a, const RawPoly& b) {
    require(a.nvars_ == b.nvars_, ErrorKind::DimensionMismatch,
            "polynomials over different variable sets");
  }

  int nvars_;
  std::map<Exps, long long> terms_;
};

}  // namespace fibercone
