#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "multipoly/monomial.hpp"

namespace mkv::exactalg {

/// Truncated jet ring F[e_0..e_{n-1}] / (terms of degree > t). Elements are
/// dense coefficient vectors over the monomials of degree <= t; products drop
/// everything above the truncation order. A pairwise index product table is
/// precomputed once per ring.
template <class F>
class JetRing : public std::enable_shared_from_this<JetRing<F>> {
 public:
  using Elem = typename F::Elem;
  using Monomial = multipoly::Monomial;

  static std::shared_ptr<const JetRing> create(std::uint32_t nvars,
                                               std::uint32_t trunc, F field) {
    return std::shared_ptr<const JetRing>(new JetRing(nvars, trunc, field));
  }

  std::uint32_t nvars() const { return nvars_; }
  std::uint32_t truncation() const { return trunc_; }
  const F& field() const { return field_; }
  std::size_t size() const { return monos_.size(); }
  const std::vector<Monomial>& monomials() const { return monos_; }

  std::int32_t index_of(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : static_cast<std::int32_t>(it->second);
  }

  /// Index of monos_[i] * monos_[j], or -1 when truncated away.
  std::int32_t product_index(std::size_t i, std::size_t j) const {
    return prod_[i * monos_.size() + j];
  }

  friend bool operator==(const JetRing& a, const JetRing& b) {
    return a.nvars_ == b.nvars_ && a.trunc_ == b.trunc_ && a.field_ == b.field_;
  }

 private:
  JetRing(std::uint32_t nvars, std::uint32_t trunc, F field)
      : nvars_(nvars), trunc_(trunc), field_(std::move(field)) {
    if (nvars == 0 || nvars > multipoly::kMaxVars)
      throw std::invalid_argument("JetRing: bad variable count");
    // Graded enumeration, degree 0..t, lexicographic within a degree.
    std::vector<std::uint32_t> exp(nvars, 0);
    for (std::uint32_t d = 0; d <= trunc; ++d) enumerate(d, 0, d, exp);
    for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = i;
    prod_.assign(monos_.size() * monos_.size(), -1);
    for (std::size_t i = 0; i < monos_.size(); ++i)
      for (std::size_t j = 0; j < monos_.size(); ++j) {
        if (monos_[i].degree() + monos_[j].degree() > trunc_) continue;
        prod_[i * monos_.size() + j] = index_.at(monos_[i] * monos_[j]);
      }
  }

  void enumerate(std::uint32_t remaining, std::uint32_t var, std::uint32_t total,
                 std::vector<std::uint32_t>& exp) {
    if (var == nvars_ - 1) {
      Monomial m;
      for (std::uint32_t i = 0; i + 1 < nvars_; ++i)
        if (exp[i]) m.set_exponent(i, exp[i]);
      if (remaining) m.set_exponent(nvars_ - 1, remaining);
      monos_.push_back(m);
      return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
      exp[var] = e;
      enumerate(remaining - e, var + 1, total, exp);
    }
    exp[var] = 0;
  }

  std::uint32_t nvars_, trunc_;
  F field_;
  std::vector<Monomial> monos_;
  std::unordered_map<Monomial, std::size_t, multipoly::MonomialHash> index_;
  std::vector<std::int32_t> prod_;
};

template <class F>
using JetRingPtr = std::shared_ptr<const JetRing<F>>;

template <class F>
class Jet {
 public:
  using Elem = typename F::Elem;

  Jet() = default;
  explicit Jet(JetRingPtr<F> ring)
      : ring_(std::move(ring)),
        coeffs_(ring_->size(), ring_->field().zero()) {}

  static Jet constant(JetRingPtr<F> ring, Elem c) {
    Jet j(ring);
    j.coeffs_[0] = std::move(c);  // index 0 is the degree-0 monomial
    return j;
  }

  /// c + the first-order variable e_i.
  static Jet affine(JetRingPtr<F> ring, Elem c, std::uint32_t i) {
    Jet j = constant(ring, std::move(c));
    if (ring->truncation() >= 1) {
      auto idx = ring->index_of(multipoly::Monomial::variable(i));
      j.coeffs_[idx] = ring->field().one();
    }
    return j;
  }

  const JetRingPtr<F>& ring() const { return ring_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  std::vector<Elem>& coeffs() { return coeffs_; }

  Elem coeff(const multipoly::Monomial& m) const {
    auto idx = ring_->index_of(m);
    if (idx < 0) throw std::invalid_argument("Jet::coeff: beyond truncation");
    return coeffs_[idx];
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!F::is_zero(c)) return false;
    return true;
  }

  /// Lowest degree with a nonzero coefficient; t+1 when zero.
  std::uint32_t order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!F::is_zero(coeffs_[i])) return ring_->monomials()[i].degree();
    return ring_->truncation() + 1;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    a.require_same(b);
    Jet r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    a.require_same(b);
    Jet r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    a.require_same(b);
    Jet r(a.ring_);
    const auto n = a.coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (F::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        auto k = a.ring_->product_index(i, j);
        if (k < 0) continue;
        if (F::is_zero(b.coeffs_[j])) continue;
        r.coeffs_[k] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

  Jet scaled(const Elem& c) const {
    Jet r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
  }

  void require_same(const Jet& o) const {
    if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
      throw std::invalid_argument("jet ring mismatch");
  }

 private:
  JetRingPtr<F> ring_;
  std::vector<Elem> coeffs_;
};

}  // namespace mkv::exactalg
