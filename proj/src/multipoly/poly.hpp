#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "multipoly/ring.hpp"

namespace mkv::multipoly {

/// Sparse multivariate polynomial over the field F. Terms are kept strictly
/// decreasing in the ring's active monomial order and never carry zero
/// coefficients.
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  struct Term {
    Monomial m;
    Elem c;
  };

  Poly() = default;
  explicit Poly(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr<F> ring) { return Poly(std::move(ring)); }

  static Poly constant(RingPtr<F> ring, Elem c) {
    Poly p(ring);
    if (!F::is_zero(c)) p.terms_.push_back({Monomial(), std::move(c)});
    return p;
  }

  static Poly variable(RingPtr<F> ring, std::uint32_t i) {
    if (i >= ring->nvars) throw std::invalid_argument("variable index");
    Poly p(ring);
    p.terms_.push_back({Monomial::variable(i), ring->field.one()});
    return p;
  }

  static Poly monomial_term(RingPtr<F> ring, Monomial m, Elem c) {
    Poly p(ring);
    if (!F::is_zero(c)) p.terms_.push_back({m, std::move(c)});
    return p;
  }

  static Poly from_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Poly p(ring);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t nterms() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.degree()));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    std::uint32_t d = terms_.front().m.degree();
    for (const auto& t : terms_)
      if (t.m.degree() != d) return false;
    return true;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading_term of zero");
    return terms_.front();
  }

  /// Everything but the leading term.
  Poly tail() const {
    Poly r(ring_);
    if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
    return r;
  }
  const Monomial& leading_monomial() const { return leading_term().m; }
  const Elem& leading_coeff() const { return leading_term().c; }

  Elem coeff_of(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.m == m) return t.c;
    return ring_->field.zero();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c))
        return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.require_same_ring(b);
    Poly r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    const auto& ord = a.ring_->order;
    std::uint32_t n = a.ring_->nvars;
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
      int c = ord.compare(a.terms_[i].m, b.terms_[j].m, n);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        Elem s = a.terms_[i].c + b.terms_[j].c;
        if (!F::is_zero(s)) r.terms_.push_back({a.terms_[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator-(const Poly& a) {
    Poly r(a.ring_);
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) r.terms_.push_back({t.m, -t.c});
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_ring(b);
    Poly r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) r.terms_.push_back({ta.m * tb.m, ta.c * tb.c});
    r.normalize();
    return r;
  }

  Poly scaled(const Elem& c) const {
    Poly r(ring_);
    if (F::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m, t.c * c});
    return r;
  }

  /// this * c * m
  Poly times_term(const Monomial& m, const Elem& c) const {
    Poly r(ring_);
    if (F::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;  // order is multiplicative, sortedness is preserved
  }

  Poly pow(std::uint32_t e) const {
    Poly acc = constant(ring_, ring_->field.one());
    Poly base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      if (e >>= 1) base = base * base;
    }
    return acc;
  }

  Poly derivative(std::uint32_t var) const {
    Poly r(ring_);
    for (const auto& t : terms_) {
      std::uint32_t e = t.m.exponent(var);
      if (!e) continue;
      Elem c = t.c * ring_->field.from_int(e);
      if (F::is_zero(c)) continue;
      Monomial m = t.m;
      m.set_exponent(var, e - 1);
      r.terms_.push_back({m, std::move(c)});
    }
    r.normalize();
    return r;
  }

  Elem evaluate(std::span<const Elem> point) const {
    if (point.size() != ring_->nvars)
      throw std::invalid_argument("evaluate: point length != variable count");
    int dmax = degree();
    if (dmax < 0) return ring_->field.zero();
    // Per-variable power tables.
    std::vector<std::vector<Elem>> pows(ring_->nvars);
    for (std::uint32_t i = 0; i < ring_->nvars; ++i) {
      pows[i].push_back(ring_->field.one());
      for (int e = 1; e <= dmax; ++e) pows[i].push_back(pows[i].back() * point[i]);
    }
    Elem acc = ring_->field.zero();
    for (const auto& t : terms_) {
      Elem v = t.c;
      for (std::uint32_t i = 0; i < ring_->nvars; ++i) {
        std::uint32_t e = t.m.exponent(i);
        if (e) v *= pows[i][e];
      }
      acc += v;
    }
    return acc;
  }

  /// Substitution f(g_0, ..., g_{n-1}); the images live in a common ring
  /// (possibly different from this one). Monomial values are memoized.
  Poly compose(std::span<const Poly> images) const {
    if (images.size() != ring_->nvars)
      throw std::invalid_argument("compose: wrong image count");
    RingPtr<F> tgt = images.empty() ? ring_ : images[0].ring();
    for (const auto& g : images) g.require_ring(tgt);
    std::unordered_map<Monomial, Poly, MonomialHash> cache;
    cache.emplace(Monomial(), constant(tgt, tgt->field.one()));
    Poly acc = zero(tgt);
    for (const auto& t : terms_)
      acc = acc + eval_monomial(t.m, images, tgt, cache).scaled(t.c);
    return acc;
  }

  /// Same polynomial re-sorted under another active order.
  Poly reordered(const MonomialOrder& order) const {
    auto r2 = make_ring(ring_->nvars, ring_->field, order);
    Poly p(r2);
    p.terms_ = terms_;
    p.sort_only();
    return p;
  }

  /// Monic copy (leading coefficient 1).
  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field.inv(leading_coeff()));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += "+";
      s += F::to_string(t.c);
      if (!t.m.is_one()) s += "*" + t.m.str(ring_->nvars);
    }
    return s;
  }

  /// Sortedness / no-zero-coefficient invariant; used by tests.
  bool is_normalized() const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (F::is_zero(terms_[i].c)) return false;
      if (i + 1 < terms_.size() &&
          ring_->order.compare(terms_[i].m, terms_[i + 1].m, ring_->nvars) <= 0)
        return false;
    }
    return true;
  }

  void require_same_ring(const Poly& o) const {
    if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
      throw std::invalid_argument("polynomial ring mismatch");
  }
  void require_ring(const RingPtr<F>& r) const {
    if (!ring_ || !(*ring_ == *r))
      throw std::invalid_argument("polynomial ring mismatch");
  }

 private:
  static const Poly& eval_monomial(
      const Monomial& m, std::span<const Poly> images, const RingPtr<F>& tgt,
      std::unordered_map<Monomial, Poly, MonomialHash>& cache) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::uint32_t v = 0;
    while (m.exponent(v) == 0) ++v;
    Monomial rest = m / Monomial::variable(v);
    Poly val = eval_monomial(rest, images, tgt, cache) * images[v];
    return cache.emplace(m, std::move(val)).first->second;
  }

  void sort_only() {
    const auto& ord = ring_->order;
    std::uint32_t n = ring_->nvars;
    std::stable_sort(terms_.begin(), terms_.end(),
                     [&](const Term& a, const Term& b) {
                       return ord.compare(a.m, b.m, n) > 0;
                     });
  }

  void normalize() {
    sort_only();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m) {
        out.back().c += t.c;
        if (F::is_zero(out.back().c)) out.pop_back();
      } else if (!F::is_zero(t.c)) {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
  }

  RingPtr<F> ring_;
  std::vector<Term> terms_;
};

/// Parse the serialization produced by Poly::str: terms joined by '+', each
/// `coeff` or `coeff*xI^E*...` (exponent 1 may omit `^E`).
template <class F>
Poly<F> parse_poly(const RingPtr<F>& ring, const std::string& text) {
  using P = Poly<F>;
  if (text == "0" || text.empty()) return P::zero(ring);
  std::vector<typename P::Term> terms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('+', pos);
    if (end == std::string::npos) end = text.size();
    std::string term = text.substr(pos, end - pos);
    pos = end + 1;
    // split on '*'
    std::vector<std::string> parts;
    std::size_t q = 0;
    while (q < term.size()) {
      std::size_t e = term.find('*', q);
      if (e == std::string::npos) e = term.size();
      parts.push_back(term.substr(q, e - q));
      q = e + 1;
    }
    if (parts.empty()) throw std::invalid_argument("parse_poly: empty term");
    typename F::Elem c = ring->field.one();
    std::size_t first_var = 0;
    if (parts[0].empty() || parts[0][0] == 'x') {
      // coefficient omitted
    } else {
      c = ring->field.parse(parts[0]);
      first_var = 1;
    }
    Monomial m;
    for (std::size_t k = first_var; k < parts.size(); ++k) {
      const std::string& v = parts[k];
      if (v.empty() || v[0] != 'x')
        throw std::invalid_argument("parse_poly: bad factor '" + v + "'");
      std::size_t caret = v.find('^');
      std::uint32_t idx = static_cast<std::uint32_t>(
          std::stoul(v.substr(1, caret == std::string::npos ? std::string::npos
                                                            : caret - 1)));
      std::uint32_t exp = 1;
      if (caret != std::string::npos)
        exp = static_cast<std::uint32_t>(std::stoul(v.substr(caret + 1)));
      if (idx >= ring->nvars) throw std::invalid_argument("parse_poly: var index");
      m.set_exponent(idx, m.exponent(idx) + exp);
    }
    terms.push_back({m, c});
  }
  return P::from_terms(ring, std::move(terms));
}

}  // namespace mkv::multipoly
