#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multipoly/monomial.hpp"

namespace mkv::multipoly {

/// Monomial orders. All are total, multiplicative and well-founded.
///   grevlex          graded reverse lexicographic
///   lex              lexicographic, x0 > x1 > ...
///   block_elim(k)    grevlex block on x0..x{k-1}, then grevlex on the rest;
///                    eliminates the first k variables
///   weighted(w)      weight degree first, grevlex tiebreak
struct MonomialOrder {
  enum class Kind { grevlex, lex, block_elim, weighted };

  Kind kind = Kind::grevlex;
  std::uint32_t block = 0;            // block_elim only
  std::vector<std::int64_t> weights;  // weighted only

  static MonomialOrder grevlex() { return MonomialOrder{}; }
  static MonomialOrder lex() { return MonomialOrder{Kind::lex, 0, {}}; }
  static MonomialOrder block_elim(std::uint32_t k) {
    return MonomialOrder{Kind::block_elim, k, {}};
  }
  static MonomialOrder weighted(std::vector<std::int64_t> w) {
    return MonomialOrder{Kind::weighted, 0, std::move(w)};
  }

  /// +1 if a > b, -1 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b, std::uint32_t nvars) const {
    if (a == b) return 0;
    switch (kind) {
      case Kind::grevlex:
        return grevlex_cmp(a, b, 0, nvars);
      case Kind::lex: {
        for (std::uint32_t i = 0; i < nvars; ++i) {
          std::uint32_t ea = a.exponent(i), eb = b.exponent(i);
          if (ea != eb) return ea > eb ? 1 : -1;
        }
        return 0;
      }
      case Kind::block_elim: {
        int c = grevlex_cmp(a, b, 0, block);
        if (c) return c;
        return grevlex_cmp(a, b, block, nvars);
      }
      case Kind::weighted: {
        std::int64_t wa = 0, wb = 0;
        for (std::uint32_t i = 0; i < nvars; ++i) {
          std::int64_t w = i < weights.size() ? weights[i] : 1;
          wa += w * a.exponent(i);
          wb += w * b.exponent(i);
        }
        if (wa != wb) return wa > wb ? 1 : -1;
        return grevlex_cmp(a, b, 0, nvars);
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b, std::uint32_t nvars) const {
    return compare(a, b, nvars) < 0;
  }
  bool greater(const Monomial& a, const Monomial& b, std::uint32_t nvars) const {
    return compare(a, b, nvars) > 0;
  }

  /// True if the order makes generators free of vars [0, k) recoverable from
  /// a Groebner basis, i.e. the first k variables dominate.
  bool eliminates(std::uint32_t k) const {
    return (kind == Kind::lex) || (kind == Kind::block_elim && block >= k);
  }

  std::string cache_key() const {
    switch (kind) {
      case Kind::grevlex:
        return "grevlex";
      case Kind::lex:
        return "lex";
      case Kind::block_elim:
        return "elim" + std::to_string(block);
      case Kind::weighted: {
        std::string s = "w";
        for (auto w : weights) s += "_" + std::to_string(w);
        return s;
      }
    }
    return "?";
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && a.block == b.block && a.weights == b.weights;
  }

 private:
  static int grevlex_cmp(const Monomial& a, const Monomial& b,
                         std::uint32_t lo, std::uint32_t hi) {
    std::uint32_t da = 0, db = 0;
    for (std::uint32_t i = lo; i < hi; ++i) {
      da += a.exponent(i);
      db += b.exponent(i);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::uint32_t i = hi; i-- > lo;) {
      std::uint32_t ea = a.exponent(i), eb = b.exponent(i);
      if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
  }
};

}  // namespace mkv::multipoly
