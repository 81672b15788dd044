#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace mkv::exactalg {

/// Exact arbitrary-precision rational. GMP keeps the canonical form the
/// invariants ask for: denominator > 0, gcd(|num|, den) = 1.
using Rational = mpq_class;

inline Rational rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Exact integer value; caller guarantees integrality and 64-bit range.
inline std::int64_t to_int64(const Rational& r) {
  return static_cast<std::int64_t>(mpz_get_si(mpq_numref(r.get_mpq_t())));
}

/// The field Q, in the same shape as PrimeField so polynomial code can be
/// generic over the scalar field.
struct QQField {
  using Elem = Rational;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_int(std::int64_t k) const { return rational(k); }
  Rational operator()(std::int64_t k) const { return rational(k); }

  Rational parse(const std::string& s) const {
    Rational r(s);
    r.canonicalize();
    return r;
  }
  Rational inv(const Rational& x) const { return 1 / x; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }

  friend bool operator==(const QQField&, const QQField&) { return true; }
};

inline Rational inverse_of(const Rational& r) { return 1 / r; }

}  // namespace mkv::exactalg
