#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibercone/errors.hpp"
#include "fibercone/field.hpp"
#include "fibercone/rawpoly.hpp"

namespace fibercone {

/// Default variable names: x, y, z, w for small dimension, else x1..xd.
inline std::vector<std::string> default_var_names(int dim) {
  static const char* kShort[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) {
    if (dim <= 4)
      names.emplace_back(kShort[i]);
    else
      names.emplace_back("x" + std::to_string(i + 1));
  }
  return names;
}

/// The ring k[x_1..x_d] / (x_1..x_d)^N with its monomial basis.
///
/// Monomials of degree below N are indexed by total degree first, then by a
/// fixed tie-break inside each degree (first exponent descending).  The
/// index order therefore refines divisibility: multiplying by a variable
/// strictly increases the index, and the map is order-preserving inside a
/// degree, so sparse vectors sorted by index stay sorted under shifts.
template <class F>
class TruncatedRing {
 public:
  using Field = F;
  using Elem = typename F::Elem;
  using Term = std::pair<std::int32_t, Elem>;
  /// Sparse vector over the monomial basis, sorted by index ascending;
  /// the leading (largest) term is at the back.
  using Row = std::vector<Term>;

  TruncatedRing(int dim, int trunc, F field,
                std::vector<std::string> var_names = {})
      : dim_(dim), trunc_(trunc), field_(std::move(field)),
        var_names_(var_names.empty() ? default_var_names(dim)
                                     : std::move(var_names)) {
    require(dim_ >= 1, ErrorKind::BadParameters, "dimension must be >= 1");
    require(trunc_ >= 2, ErrorKind::BadParameters,
            "truncation order must be >= 2");
    require(static_cast<int>(var_names_.size()) == dim_,
            ErrorKind::BadParameters, "variable name count mismatch");
    build_tables();
  }

  int dim() const { return dim_; }
  int trunc() const { return trunc_; }
  const F& field() const { return field_; }
  const std::vector<std::string>& var_names() const { return var_names_; }

  /// Number of basis monomials (degree < trunc).
  std::int32_t basis_size() const { return basis_size_; }

  int degree_of(std::int32_t m) const { return degree_[m]; }
  std::int32_t degree_start(int deg) const { return offset_[deg]; }
  std::int32_t degree_count(int deg) const {
    return offset_[deg + 1] - offset_[deg];
  }

  std::vector<int> exponents(std::int32_t m) const {
    return std::vector<int>(exps_.begin() + static_cast<size_t>(m) * dim_,
                            exps_.begin() + static_cast<size_t>(m + 1) * dim_);
  }

  /// Index of the monomial with the given exponents; -1 when the total
  /// degree reaches the truncation order.
  std::int32_t index_of(const std::vector<int>& exps) const {
    int deg = 0;
    for (int e : exps) deg += e;
    if (deg >= trunc_) return -1;
    std::int64_t r = 0;
    int rem = deg;
    for (int j = 0; j + 1 < dim_; ++j) {
      int k = dim_ - 1 - j;
      int gap = rem - exps[static_cast<size_t>(j)] - 1;
      if (gap >= 0) r += choose(gap + k, k);
      rem -= exps[static_cast<size_t>(j)];
    }
    return static_cast<std::int32_t>(offset_[deg] + r);
  }

  /// Index of x_v * m, or -1 on truncation overflow.
  std::int32_t shift_var(std::int32_t m, int v) const {
    return var_step_[static_cast<size_t>(m) * dim_ + v];
  }

  /// Index of the product monomial, or -1 on truncation overflow.
  std::int32_t mono_mul(std::int32_t a, std::int32_t b) const {
    if (degree_[a] + degree_[b] >= trunc_) return -1;
    std::vector<int> e = exponents(a);
    const int* eb = &exps_[static_cast<size_t>(b) * dim_];
    for (int i = 0; i < dim_; ++i) e[static_cast<size_t>(i)] += eb[i];
    return index_of(e);
  }

  std::string mono_string(std::int32_t m) const {
    std::string out;
    const int* e = &exps_[static_cast<size_t>(m) * dim_];
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += var_names_[static_cast<size_t>(i)];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
  }

  std::string row_string(const Row& row) const {
    if (row.empty()) return "0";
    std::string out;
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
      if (!out.empty()) out += " + ";
      std::string c = field_.to_string(it->second);
      if (it->first == 0) {
        out += c;
      } else if (field_.is_one(it->second)) {
        out += mono_string(it->first);
      } else {
        out += c + "*" + mono_string(it->first);
      }
    }
    return out;
  }

  /// Realize an integer polynomial in this ring, dropping terms at or
  /// above the truncation order and coefficients that vanish in the field.
  Row realize(const RawPoly& p) const {
    require(p.nvars() == dim_, ErrorKind::DimensionMismatch,
            "polynomial has wrong variable count");
    Row row;
    for (const auto& [e, c] : p.terms()) {
      std::int32_t idx = index_of(e);
      if (idx < 0) continue;
      Elem coeff = field_.from_int(c);
      if (!field_.is_zero(coeff)) row.emplace_back(idx, coeff);
    }
    sort_and_combine(row);
    return row;
  }

  Row monomial_row(const std::vector<int>& exps) const {
    std::int32_t idx = index_of(exps);
    Row row;
    if (idx >= 0) row.emplace_back(idx, field_.one());
    return row;
  }

  /// row * x_v with truncation overflow dropped; stays sorted.
  Row shift_row(const Row& row, int v) const {
    Row out;
    out.reserve(row.size());
    for (const auto& [m, c] : row) {
      std::int32_t s = shift_var(m, v);
      if (s >= 0) out.emplace_back(s, c);
    }
    return out;
  }

  /// Product of two sparse vectors in the truncated ring.
  Row row_mul(const Row& a, const Row& b) const {
    Row out;
    out.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        std::int32_t m = mono_mul(ma, mb);
        if (m < 0) continue;
        Elem c = field_.mul(ca, cb);
        if (!field_.is_zero(c)) out.emplace_back(m, c);
      }
    sort_and_combine(out);
    return out;
  }

  /// a + c * b, both sorted ascending; result sorted, zero coefficients
  /// dropped.
  Row axpy(const Row& a, const Elem& c, const Row& b) const {
    Row out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        Elem v = field_.mul(c, b[j].second);
        if (!field_.is_zero(v)) out.emplace_back(b[j].first, v);
        ++j;
      } else {
        Elem v = field_.add(a[i].second, field_.mul(c, b[j].second));
        if (!field_.is_zero(v)) out.emplace_back(a[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }

  void scale_row(Row& row, const Elem& c) const {
    for (auto& [m, v] : row) v = field_.mul(v, c);
  }

  void sort_and_combine(Row& row) const {
    std::sort(row.begin(), row.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    Row out;
    out.reserve(row.size());
    for (const auto& [m, c] : row) {
      if (!out.empty() && out.back().first == m) {
        out.back().second = field_.add(out.back().second, c);
        if (field_.is_zero(out.back().second)) out.pop_back();
      } else if (!field_.is_zero(c)) {
        out.emplace_back(m, c);
      }
    }
    row = std::move(out);
  }

  bool rows_equal(const Row& a, const Row& b) const {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].first != b[i].first || !field_.eq(a[i].second, b[i].second))
        return false;
    return true;
  }

 private:
  static constexpr std::int64_t kMaxBasis = 10'000'000;

  std::int64_t choose(int n, int k) const {
    return pascal_[static_cast<size_t>(n)][static_cast<size_t>(k)];
  }

  void build_tables() {
    int top = trunc_ + dim_ + 1;
    size_t width = static_cast<size_t>(dim_) + 2;  // entries C(n, 0..dim+1)
    pascal_.assign(static_cast<size_t>(top + 1),
                   std::vector<std::int64_t>(width, 0));
    for (int n = 0; n <= top; ++n) {
      auto& row = pascal_[static_cast<size_t>(n)];
      row[0] = 1;
      if (n == 0) continue;
      const auto& prev = pascal_[static_cast<size_t>(n - 1)];
      for (size_t k = 1; k < width; ++k) row[k] = prev[k] + prev[k - 1];
    }
    offset_.assign(static_cast<size_t>(trunc_) + 1, 0);
    for (int deg = 0; deg <= trunc_; ++deg)
      offset_[static_cast<size_t>(deg)] =
          static_cast<std::int32_t>(choose(deg + dim_ - 1, dim_));
    std::int64_t total = choose(trunc_ - 1 + dim_, dim_);
    require(total <= kMaxBasis, ErrorKind::BadParameters,
            "truncation order too large for this dimension");
    basis_size_ = static_cast<std::int32_t>(total);

    exps_.reserve(static_cast<size_t>(basis_size_) * dim_);
    degree_.reserve(static_cast<size_t>(basis_size_));
    std::vector<int> cur(static_cast<size_t>(dim_), 0);
    for (int deg = 0; deg < trunc_; ++deg) emit_degree(0, deg, deg, cur);

    var_step_.assign(static_cast<size_t>(basis_size_) * dim_, -1);
    std::vector<int> e(static_cast<size_t>(dim_));
    for (std::int32_t m = 0; m < basis_size_; ++m) {
      const int* src = &exps_[static_cast<size_t>(m) * dim_];
      for (int v = 0; v < dim_; ++v) {
        std::copy(src, src + dim_, e.begin());
        ++e[static_cast<size_t>(v)];
        var_step_[static_cast<size_t>(m) * dim_ + v] = index_of(e);
      }
    }
  }

  void emit_degree(int pos, int rem, int deg, std::vector<int>& cur) {
    if (pos == dim_ - 1) {
      cur[static_cast<size_t>(pos)] = rem;
      exps_.insert(exps_.end(), cur.begin(), cur.end());
      degree_.push_back(deg);
      return;
    }
    for (int t = rem; t >= 0; --t) {
      cur[static_cast<size_t>(pos)] = t;
      emit_degree(pos + 1, rem - t, deg, cur);
    }
  }

  int dim_;
  int trunc_;
  F field_;
  std::vector<std::string> var_names_;
  std::int32_t basis_size_ = 0;
  std::vector<std::vector<std::int64_t>> pascal_;
  std::vector<std::int32_t> offset_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<std::int32_t> var_step_;
};

/// A subspace of the truncated ring in canonical reduced echelon form.
///
/// Each pivot monomial p carries a fully reduced tail supported on
/// non-pivot monomials strictly below p, so two objects represent the same
/// subspace exactly when their pivot sets and tails coincide.  A reduced
/// row whose pivot lies in a degree where every monomial is a pivot always
/// has an empty tail, which keeps monomial-generated spaces tail-free.
template <class F>
class Subspace {
 public:
  using Ring = TruncatedRing<F>;
  using Elem = typename F::Elem;
  using Row = typename Ring::Row;

  explicit Subspace(std::shared_ptr<const Ring> ring)
      : ring_(std::move(ring)),
        pivot_(static_cast<size_t>(ring_->basis_size()), 0),
        per_degree_(static_cast<size_t>(ring_->trunc()), 0) {}

  const std::shared_ptr<const Ring>& ring() const { return ring_; }
  std::int64_t dim() const { return dim_; }
  bool is_pivot(std::int32_t m) const {
    return pivot_[static_cast<size_t>(m)] != 0;
  }
  bool all_monomial() const { return tails_.empty(); }

  std::vector<std::int32_t> pivots() const {
    std::vector<std::int32_t> out;
    out.reserve(static_cast<size_t>(dim_));
    for (std::int32_t m = 0; m < ring_->basis_size(); ++m)
      if (pivot_[static_cast<size_t>(m)]) out.push_back(m);
    return out;
  }

  /// The canonical row with leading monomial p (coefficient one).
  Row pivot_row(std::int32_t p) const {
    Row out;
    auto it = tails_.find(p);
    if (it != tails_.end()) out = it->second;
    out.emplace_back(p, ring_->field().one());
    return out;
  }

  const Row* tail_of(std::int32_t p) const {
    auto it = tails_.find(p);
    return it == tails_.end() ? nullptr : &it->second;
  }

  /// Fully reduced normal form: the residue of v modulo this subspace,
  /// supported on non-pivot monomials.
  Row normal_form(Row v) const {
    ring_->sort_and_combine(v);
    Row kept;
    while (!v.empty()) {
      auto [m, c] = v.back();
      v.pop_back();
      if (!pivot_[static_cast<size_t>(m)]) {
        kept.push_back({m, c});
        continue;
      }
      auto it = tails_.find(m);
      if (it == tails_.end()) continue;
      v = ring_->axpy(v, ring_->field().neg(c), it->second);
    }
    std::reverse(kept.begin(), kept.end());
    return kept;
  }

  bool contains(Row v) const { return normal_form(std::move(v)).empty(); }

  /// Plain vector-space insertion; true if the dimension grew.
  bool insert(Row v) {
    Row w = normal_form(std::move(v));
    if (w.empty()) return false;
    install(std::move(w));
    return true;
  }

  /// Insert v together with everything needed to keep the span closed
  /// under multiplication by the variables.
  void insert_closed(Row v) {
    std::vector<Row> queue;
    queue.push_back(std::move(v));
    while (!queue.empty()) {
      Row w = std::move(queue.back());
      queue.pop_back();
      w = normal_form(std::move(w));
      if (w.empty()) continue;
      std::int32_t p = install(std::move(w));
      Row full = pivot_row(p);
      for (int var = 0; var < ring_->dim(); ++var) {
        Row child = ring_->shift_row(full, var);
        if (!child.empty()) queue.push_back(std::move(child));
      }
    }
  }

  /// Smallest s such that every monomial of degree in [s, trunc) is a
  /// pivot; disengaged when the top degree is not saturated.
  std::optional<int> saturation_degree() const {
    int n = ring_->trunc();
    int s = n;
    while (s > 0 && per_degree_[static_cast<size_t>(s - 1)] ==
                        ring_->degree_count(s - 1))
      --s;
    if (s == n) return std::nullopt;
    return s;
  }

  friend bool same_space(const Subspace& a, const Subspace& b) {
    if (a.dim_ != b.dim_ || a.pivot_ != b.pivot_) return false;
    if (a.tails_.size() != b.tails_.size()) return false;
    auto ia = a.tails_.begin();
    auto ib = b.tails_.begin();
    for (; ia != a.tails_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
      if (!a.ring_->rows_equal(ia->second, ib->second)) return false;
    }
    return true;
  }

 private:
  /// w must be a nonzero fully reduced row.  Installs its leading monomial
  /// as a pivot and re-reduces existing tails that mention it.
  std::int32_t install(Row w) {
    std::int32_t p = w.back().first;
    Elem lead = w.back().second;
    w.pop_back();
    if (!ring_->field().is_one(lead))
      ring_->scale_row(w, ring_->field().inv(lead));
    pivot_[static_cast<size_t>(p)] = 1;
    ++per_degree_[static_cast<size_t>(ring_->degree_of(p))];
    ++dim_;
    if (!w.empty()) {
      for (const auto& term : w) users_[term.first].insert(p);
      tails_[p] = std::move(w);
    }
    back_substitute(p);
    return p;
  }

  /// Remove the new pivot p from every tail that mentions it, splicing in
  /// p's own tail so all rows stay fully reduced.
  void back_substitute(std::int32_t p) {
    auto uit = users_.find(p);
    if (uit == users_.end()) return;
    std::set<std::int32_t> affected = std::move(uit->second);
    users_.erase(uit);
    const Row* ptail = tail_of(p);
    for (std::int32_t q : affected) {
      auto tit = tails_.find(q);
      if (tit == tails_.end()) continue;
      Row& tq = tit->second;
      auto pos = std::lower_bound(
          tq.begin(), tq.end(), p,
          [](const typename Ring::Term& t, std::int32_t key) {
            return t.first < key;
          });
      if (pos == tq.end() || pos->first != p) continue;  // stale index entry
      Elem c = pos->second;
      tq.erase(pos);
      if (ptail) {
        tq = ring_->axpy(tq, ring_->field().neg(c), *ptail);
        for (const auto& term : *ptail) users_[term.first].insert(q);
      }
      if (tq.empty()) tails_.erase(tit);
    }
  }

  std::shared_ptr<const Ring> ring_;
  std::vector<std::uint8_t> pivot_;
  std::map<std::int32_t, Row> tails_;
  // Monomial -> pivots whose tail has mentioned it; entries may be stale
  // (membership is re-checked on use) but never missing.
  std::map<std::int32_t, std::set<std::int32_t>> users_;
  std::vector<std::int32_t> per_degree_;
  std::int64_t dim_ = 0;
};

/// An ideal of the truncated ring, stored as a closed subspace together
/// with a minimal generating set and the saturation bound used to certify
/// that later operations are exact.
template <class F>
class ArtIdeal {
 public:
  using Ring = TruncatedRing<F>;
  using Row = typename Ring::Row;

  ArtIdeal() = default;

  static ArtIdeal finalize(std::shared_ptr<const Ring> ring,
                           Subspace<F>&& space) {
    auto impl = std::make_shared<Impl>(std::move(ring), std::move(space));
    impl->saturation = impl->space.saturation_degree();
    extract_min_gens(*impl);
    return ArtIdeal(std::move(impl));
  }

  bool valid() const { return impl_ != nullptr; }
  const std::shared_ptr<const Ring>& ring() const { return impl_->ring; }
  const Subspace<F>& space() const { return impl_->space; }
  std::int64_t space_dim() const { return impl_->space.dim(); }
  bool is_zero() const { return impl_->space.dim() == 0; }
  std::optional<int> saturation_degree() const { return impl_->saturation; }
  const std::vector<Row>& min_gen_rows() const { return impl_->min_gens; }

  /// The subspace provably equals the ideal generated by its rows exactly
  /// when some power m^s with s comfortably below the truncation order is
  /// contained in it.
  bool certified(int guard) const {
    return impl_->saturation.has_value() &&
           *impl_->saturation + guard <= impl_->ring->trunc();
  }

  friend bool operator==(const ArtIdeal& a, const ArtIdeal& b) {
    return a.impl_ == b.impl_ ||
           (a.impl_ && b.impl_ && a.impl_->ring == b.impl_->ring &&
            same_space(a.impl_->space, b.impl_->space));
  }

 private:
  struct Impl {
    Impl(std::shared_ptr<const Ring> r, Subspace<F>&& s)
        : ring(std::move(r)), space(std::move(s)) {}
    std::shared_ptr<const Ring> ring;
    Subspace<F> space;
    std::optional<int> saturation;
    std::vector<Row> min_gens;
  };

  explicit ArtIdeal(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  /// Nakayama: rows independent modulo (variables)*span form a minimal
  /// generating set; scanning pivots in ascending order makes it canonical.
  static void extract_min_gens(Impl& impl) {
    const auto& ring = impl.ring;
    Subspace<F> sub(ring);
    auto pivots = impl.space.pivots();
    for (std::int32_t p : pivots) {
      Row full = impl.space.pivot_row(p);
      for (int v = 0; v < ring->dim(); ++v) {
        Row child = ring->shift_row(full, v);
        if (!child.empty()) sub.insert(std::move(child));
      }
    }
    for (std::int32_t p : pivots) {
      Row full = impl.space.pivot_row(p);
      if (sub.insert(full)) impl.min_gens.push_back(std::move(full));
    }
    require(sub.dim() == impl.space.dim(), ErrorKind::ConsistencyError,
            "minimal generator extraction did not span the ideal");
  }

  std::shared_ptr<const Impl> impl_;
};

namespace detail {

template <class F>
void check_same_ring(const ArtIdeal<F>& a, const ArtIdeal<F>& b) {
  require(a.ring() == b.ring(), ErrorKind::MixedRings,
          "ideals live in different ring instances");
}

template <class F>
void require_certified(const ArtIdeal<F>& a, int guard,
                       const char* what) {
  if (!a.certified(guard))
    fail(ErrorKind::PrecisionExhausted,
         std::string(what) + ": truncation order " +
             std::to_string(a.ring()->trunc()) +
             " too small to certify the ideal");
}

}  // namespace detail

/// Build the ideal generated by integer polynomials.  Generators must lie
/// in the maximal ideal; terms beyond the truncation order are dropped.
template <class F>
ArtIdeal<F> ideal_from_polys(std::shared_ptr<const TruncatedRing<F>> ring,
                             const std::vector<RawPoly>& gens) {
  Subspace<F> sp(ring);
  for (const RawPoly& g : gens) {
    require(g.constant_coeff() == 0, ErrorKind::UnitGenerator,
            "generator has a nonzero constant term");
    auto row = ring->realize(g);
    require(!row.empty() || g.is_zero(), ErrorKind::PrecisionExhausted,
            "generator has no terms below the truncation order");
    if (!row.empty()) sp.insert_closed(std::move(row));
  }
  return ArtIdeal<F>::finalize(std::move(ring), std::move(sp));
}

template <class F>
ArtIdeal<F> unit_ideal(std::shared_ptr<const TruncatedRing<F>> ring) {
  Subspace<F> sp(ring);
  typename TruncatedRing<F>::Row one;
  one.emplace_back(0, ring->field().one());
  sp.insert_closed(std::move(one));
  return ArtIdeal<F>::finalize(std::move(ring), std::move(sp));
}

template <class F>
ArtIdeal<F> maximal_ideal(std::shared_ptr<const TruncatedRing<F>> ring) {
  std::vector<RawPoly> vars;
  for (int v = 0; v < ring->dim(); ++v)
    vars.push_back(RawPoly::variable(v, ring->dim()));
  return ideal_from_polys(std::move(ring), vars);
}

template <class F>
ArtIdeal<F> sum(const ArtIdeal<F>& a, const ArtIdeal<F>& b) {
  detail::check_same_ring(a, b);
  const ArtIdeal<F>& big = a.space_dim() >= b.space_dim() ? a : b;
  const ArtIdeal<F>& small = a.space_dim() >= b.space_dim() ? b : a;
  Subspace<F> sp = big.space();
  for (std::int32_t p : small.space().pivots())
    sp.insert_closed(small.space().pivot_row(p));
  return ArtIdeal<F>::finalize(a.ring(), std::move(sp));
}

template <class F>
ArtIdeal<F> product(const ArtIdeal<F>& a, const ArtIdeal<F>& b, int guard) {
  detail::check_same_ring(a, b);
  detail::require_certified(a, guard, "product");
  detail::require_certified(b, guard, "product");
  auto ring = a.ring();
  Subspace<F> sp(ring);
  for (const auto& ga : a.min_gen_rows())
    for (const auto& gb : b.min_gen_rows()) {
      auto row = ring->row_mul(ga, gb);
      if (!row.empty()) sp.insert_closed(std::move(row));
    }
  ArtIdeal<F> out = ArtIdeal<F>::finalize(ring, std::move(sp));
  detail::require_certified(out, guard, "product result");
  return out;
}

template <class F>
ArtIdeal<F> power(const ArtIdeal<F>& a, long long n, int guard) {
  require(n >= 0, ErrorKind::NegativePower, "negative ideal power");
  if (n == 0) return unit_ideal<F>(a.ring());
  ArtIdeal<F> out = a;
  for (long long i = 1; i < n; ++i) out = product(out, a, guard);
  return out;
}

template <class F>
bool subset(const ArtIdeal<F>& a, const ArtIdeal<F>& b, int guard) {
  detail::check_same_ring(a, b);
  // Only the containing side needs certification: generators of `a` are
  // exact below the truncation order, and once `b` is certified every tail
  // beyond that order already lies in `b`.  This lets containment queries
  // work even when `a` itself has infinite colength.
  detail::require_certified(b, guard, "subset");
  for (const auto& g : a.min_gen_rows())
    if (!b.space().contains(g)) return false;
  return true;
}

template <class F>
bool equals(const ArtIdeal<F>& a, const ArtIdeal<F>& b, int guard) {
  detail::check_same_ring(a, b);
  detail::require_certified(a, guard, "equals");
  detail::require_certified(b, guard, "equals");
  return same_space(a.space(), b.space());
}

template <class F>
ArtIdeal<F> intersect(const ArtIdeal<F>& a, const ArtIdeal<F>& b, int guard) {
  detail::check_same_ring(a, b);
  detail::require_certified(a, guard, "intersect");
  detail::require_certified(b, guard, "intersect");
  auto ring = a.ring();
  Subspace<F> sp(ring);
  if (a.space().all_monomial() && b.space().all_monomial()) {
    for (std::int32_t p : a.space().pivots())
      if (b.space().is_pivot(p)) {
        typename TruncatedRing<F>::Row row;
        row.emplace_back(p, ring->field().one());
        sp.insert(std::move(row));
      }
    return ArtIdeal<F>::finalize(ring, std::move(sp));
  }
  // Kernel of the reduction-mod-b map restricted to a: express each row of
  // a in b's residue basis and eliminate, tracking the combination.
  using Row = typename TruncatedRing<F>::Row;
  using Elem = typename F::Elem;
  std::vector<std::int32_t> stds;
  std::vector<std::int32_t> pos(static_cast<size_t>(ring->basis_size()), -1);
  for (std::int32_t m = 0; m < ring->basis_size(); ++m)
    if (!b.space().is_pivot(m)) {
      pos[static_cast<size_t>(m)] = static_cast<std::int32_t>(stds.size());
      stds.push_back(m);
    }
  struct Reducer {
    std::vector<Elem> dense;  // normalized: coefficient one at its lead
    Row combo;
  };
  std::map<std::int32_t, Reducer> by_lead;
  std::vector<Row> kernel;
  const F& fld = ring->field();
  auto top_nonzero = [&](const std::vector<Elem>& dense) {
    for (std::int32_t i = static_cast<std::int32_t>(dense.size()) - 1; i >= 0;
         --i)
      if (!fld.is_zero(dense[static_cast<size_t>(i)])) return i;
    return static_cast<std::int32_t>(-1);
  };
  for (std::int32_t p : a.space().pivots()) {
    Row r = a.space().pivot_row(p);
    Row nf = b.space().normal_form(r);
    std::vector<Elem> dense(stds.size(), fld.zero());
    for (const auto& [m, c] : nf)
      dense[static_cast<size_t>(pos[static_cast<size_t>(m)])] = c;
    Row combo = std::move(r);
    for (;;) {
      std::int32_t lead = top_nonzero(dense);
      if (lead < 0) {
        if (!combo.empty()) kernel.push_back(std::move(combo));
        break;
      }
      auto it = by_lead.find(lead);
      if (it == by_lead.end()) {
        Elem inv = fld.inv(dense[static_cast<size_t>(lead)]);
        for (auto& v : dense) v = fld.mul(v, inv);
        ring->scale_row(combo, inv);
        by_lead.emplace(lead, Reducer{std::move(dense), std::move(combo)});
        break;
      }
      Elem f = fld.neg(dense[static_cast<size_t>(lead)]);
      for (size_t i = 0; i <= static_cast<size_t>(lead); ++i)
        dense[i] = fld.add(dense[i], fld.mul(f, it->second.dense[i]));
      combo = ring->axpy(combo, f, it->second.combo);
    }
  }
  for (auto& k : kernel) sp.insert_closed(std::move(k));
  ArtIdeal<F> out = ArtIdeal<F>::finalize(ring, std::move(sp));
  detail::require_certified(out, guard, "intersect result");
  return out;
}

/// (a : b) — all ring elements whose product with every generator of b
/// falls in a.
template <class F>
ArtIdeal<F> colon(const ArtIdeal<F>& a, const ArtIdeal<F>& b, int guard) {
  detail::check_same_ring(a, b);
  require(!b.is_zero(), ErrorKind::ZeroIdeal, "colon by the zero ideal");
  detail::require_certified(a, guard, "colon");
  detail::require_certified(b, guard, "colon");
  using Row = typename TruncatedRing<F>::Row;
  using Elem = typename F::Elem;
  auto ring = a.ring();
  const F& fld = ring->field();
  // Residue monomials of a: candidates live in their span, modulo a.
  std::vector<std::int32_t> stds;
  std::vector<std::int32_t> pos(static_cast<size_t>(ring->basis_size()), -1);
  for (std::int32_t m = 0; m < ring->basis_size(); ++m)
    if (!a.space().is_pivot(m)) {
      pos[static_cast<size_t>(m)] = static_cast<std::int32_t>(stds.size());
      stds.push_back(m);
    }
  size_t c = stds.size();
  // Equations: for each generator g of b and residue coordinate t,
  // sum_i y_i * [NF_a(g * e_{std_i})]_t = 0.
  std::vector<std::vector<Elem>> eqs;
  for (const Row& g : b.min_gen_rows()) {
    std::vector<std::vector<Elem>> cols(c);
    for (size_t i = 0; i < c; ++i) {
      Row prod;
      for (const auto& [m, coeff] : g) {
        std::int32_t idx = ring->mono_mul(stds[i], m);
        if (idx >= 0) prod.emplace_back(idx, coeff);
      }
      ring->sort_and_combine(prod);
      Row nf = a.space().normal_form(std::move(prod));
      std::vector<Elem> dense(c, fld.zero());
      for (const auto& [m, coeff] : nf)
        dense[static_cast<size_t>(pos[static_cast<size_t>(m)])] = coeff;
      cols[i] = std::move(dense);
    }
    for (size_t t = 0; t < c; ++t) {
      std::vector<Elem> eq(c, fld.zero());
      bool nonzero = false;
      for (size_t i = 0; i < c; ++i) {
        eq[i] = cols[i][t];
        nonzero = nonzero || !fld.is_zero(eq[i]);
      }
      if (nonzero) eqs.push_back(std::move(eq));
    }
  }
  // Gaussian elimination for the nullspace of eqs * y = 0.
  std::vector<std::int32_t> pivot_col_of_row;
  std::vector<std::uint8_t> col_is_pivot(c, 0);
  size_t rank = 0;
  for (size_t col = 0; col < c && rank < eqs.size(); ++col) {
    size_t sel = rank;
    while (sel < eqs.size() && fld.is_zero(eqs[sel][col])) ++sel;
    if (sel == eqs.size()) continue;
    std::swap(eqs[rank], eqs[sel]);
    Elem inv = fld.inv(eqs[rank][col]);
    for (auto& v : eqs[rank]) v = fld.mul(v, inv);
    for (size_t r = 0; r < eqs.size(); ++r) {
      if (r == rank || fld.is_zero(eqs[r][col])) continue;
      Elem f = fld.neg(eqs[r][col]);
      for (size_t j = col; j < c; ++j)
        eqs[r][j] = fld.add(eqs[r][j], fld.mul(f, eqs[rank][j]));
    }
    pivot_col_of_row.push_back(static_cast<std::int32_t>(col));
    col_is_pivot[col] = 1;
    ++rank;
  }
  Subspace<F> sp = a.space();
  for (size_t free_col = 0; free_col < c; ++free_col) {
    if (col_is_pivot[free_col]) continue;
    Row lift;
    lift.emplace_back(stds[free_col], fld.one());
    for (size_t r = 0; r < rank; ++r) {
      const Elem& v = eqs[r][free_col];
      if (fld.is_zero(v)) continue;
      lift.emplace_back(stds[static_cast<size_t>(pivot_col_of_row[r])],
                        fld.neg(v));
    }
    ring->sort_and_combine(lift);
    sp.insert_closed(std::move(lift));
  }
  ArtIdeal<F> out = ArtIdeal<F>::finalize(ring, std::move(sp));
  detail::require_certified(out, guard, "colon result");
  return out;
}

template <class F>
long long colength(const ArtIdeal<F>& a, int guard) {
  detail::require_certified(a, guard, "colength");
  return a.ring()->basis_size() - a.space_dim();
}

template <class F>
long long length_quotient(const ArtIdeal<F>& a, const ArtIdeal<F>& b,
                          int guard) {
  detail::check_same_ring(a, b);
  require(subset(b, a, guard), ErrorKind::NotContained,
          "length of a quotient requires containment");
  return a.space_dim() - b.space_dim();
}

template <class F>
long long mu(const ArtIdeal<F>& a, int guard) {
  detail::require_certified(a, guard, "minimal generator count");
  return static_cast<long long>(a.min_gen_rows().size());
}

/// Leading monomials make the scan deterministic: the reported element is
/// the canonical row of the smallest pivot of a that does not lie in b.
template <class F>
std::optional<std::string> witness_in_difference(const ArtIdeal<F>& a,
                                                 const ArtIdeal<F>& b,
                                                 int guard) {
  detail::check_same_ring(a, b);
  detail::require_certified(a, guard, "difference witness");
  detail::require_certified(b, guard, "difference witness");
  for (std::int32_t p : a.space().pivots()) {
    auto row = a.space().pivot_row(p);
    if (!b.space().contains(row)) return a.ring()->row_string(row);
  }
  return std::nullopt;
}

/// Facade with the operation set shared by every coefficient backend.
template <class F>
class LocalCalculus {
 public:
  using Ideal = ArtIdeal<F>;
  using Ring = TruncatedRing<F>;

  explicit LocalCalculus(std::shared_ptr<const Ring> ring, int guard = 2)
      : ring_(std::move(ring)), guard_(guard),
        unit_(fibercone::unit_ideal<F>(ring_)),
        maximal_(fibercone::maximal_ideal<F>(ring_)) {
    require(guard_ >= 1, ErrorKind::BadParameters, "guard must be >= 1");
  }

  const std::shared_ptr<const Ring>& ring() const { return ring_; }
  int guard() const { return guard_; }
  int dimension() const { return ring_->dim(); }
  Ideal unit_ideal() const { return unit_; }
  Ideal maximal_ideal() const { return maximal_; }

  Ideal from_polys(const std::vector<RawPoly>& gens) const {
    return ideal_from_polys<F>(ring_, gens);
  }
  Ideal principal(const RawPoly& g) const { return from_polys({g}); }

  Ideal sum(const Ideal& a, const Ideal& b) const {
    return fibercone::sum(a, b);
  }
  Ideal product(const Ideal& a, const Ideal& b) const {
    return fibercone::product(a, b, guard_);
  }
  Ideal power(const Ideal& a, long long n) const {
    return fibercone::power(a, n, guard_);
  }
  Ideal intersect(const Ideal& a, const Ideal& b) const {
    return fibercone::intersect(a, b, guard_);
  }
  Ideal colon(const Ideal& a, const Ideal& b) const {
    return fibercone::colon(a, b, guard_);
  }
  bool subset(const Ideal& a, const Ideal& b) const {
    return fibercone::subset(a, b, guard_);
  }
  bool equals(const Ideal& a, const Ideal& b) const {
    return fibercone::equals(a, b, guard_);
  }
  long long colength(const Ideal& a) const {
    return fibercone::colength(a, guard_);
  }
  long long length_quotient(const Ideal& a, const Ideal& b) const {
    return fibercone::length_quotient(a, b, guard_);
  }
  long long mu(const Ideal& a) const { return fibercone::mu(a, guard_); }
  std::optional<std::string> witness_in_difference(const Ideal& a,
                                                   const Ideal& b) const {
    return fibercone::witness_in_difference(a, b, guard_);
  }

 private:
  std::shared_ptr<const Ring> ring_;
  int guard_;
  Ideal unit_;
  Ideal maximal_;
};

/// Knobs for the retry loop that grows the truncation order when a
/// computation cannot be certified at the current one.
struct PrecisionPolicy {
  int trunc0 = 10;
  int guard = 2;
  int budget = 4;  // maximum number of doublings
};

/// Run fn with rings of doubling truncation order until it succeeds
/// without precision loss.  fn must rebuild all of its ideals from
/// field-independent descriptions each attempt.
template <class F, class Fn>
auto with_auto_precision(int dim, const F& field, const PrecisionPolicy& pol,
                         Fn&& fn,
                         std::vector<std::string> var_names = {}) {
  require(pol.trunc0 >= 2 && pol.guard >= 1 && pol.budget >= 0,
          ErrorKind::BadParameters, "invalid precision policy");
  int trunc = pol.trunc0;
  for (int attempt = 0;; ++attempt) {
    auto ring = std::make_shared<const TruncatedRing<F>>(dim, trunc, field,
                                                         var_names);
    try {
      return fn(ring);
    } catch (const CalcError& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted) throw;
      if (attempt == pol.budget)
        fail(ErrorKind::BudgetExceeded,
             "could not certify the computation up to truncation order " +
                 std::to_string(trunc) + "; the ideal may fail to be " +
                 "zero-dimensional");
      trunc *= 2;
    }
  }
}

}  // namespace fibercone
