#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mkv::exactalg {

/// Element of a prime field F_p, canonical representative in [0, p).
/// The modulus travels with the value; mixing moduli is a logic error
/// (checked by assertion). Division by zero throws std::domain_error.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::uint32_t v, std::uint32_t p) : v_(v), p_(p) { assert(p > 0 && v < p); }

  std::uint32_t rep() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend bool operator==(const Fp& a, const Fp& b) {
    return a.v_ == b.v_ && a.p_ == b.p_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    assert(a.p_ == b.p_ && a.p_ != 0);
    std::uint32_t s = a.v_ + b.v_ >= a.p_ ? a.v_ + b.v_ - a.p_ : a.v_ + b.v_;
    return Fp(s, a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    assert(a.p_ == b.p_ && a.p_ != 0);
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Fp operator-(const Fp& a) {
    assert(a.p_ != 0);
    return Fp(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    assert(a.p_ == b.p_ && a.p_ != 0);
    return Fp(static_cast<std::uint32_t>(
                  (static_cast<std::uint64_t>(a.v_) * b.v_) % a.p_),
              a.p_);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  /// Multiplicative inverse by extended Euclid.
  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    std::int64_t t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    assert(r == 1);
    if (t < 0) t += p_;
    return Fp(static_cast<std::uint32_t>(t), p_);
  }

  Fp pow(std::uint64_t e) const {
    assert(p_ != 0);
    Fp acc(1 % p_, p_), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::string str() const { return std::to_string(v_); }

 private:
  std::uint32_t v_;
  std::uint32_t p_;
};

/// Deterministic Miller-Rabin, valid for all 32-bit inputs.
inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  auto powmod = [](std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t acc = 1;
    b %= m;
    while (e) {
      if (e & 1) acc = acc * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return acc;
  };
  for (std::uint32_t a : {2u, 3u, 5u, 7u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// The field F_p itself; the factory for its elements.
struct PrimeField {
  using Elem = Fp;

  std::uint32_t p = 0;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (!is_prime_u32(prime))
      throw std::invalid_argument("PrimeField: modulus " +
                                  std::to_string(prime) + " is not prime");
  }

  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1 % p, p); }
  Fp from_int(std::int64_t k) const {
    std::int64_t r = k % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return Fp(static_cast<std::uint32_t>(r), p);
  }
  Fp operator()(std::int64_t k) const { return from_int(k); }

  Fp parse(const std::string& s) const { return from_int(std::stoll(s)); }
  Fp inv(const Fp& x) const { return x.inverse(); }
  static std::string to_string(const Fp& x) { return x.str(); }
  static bool is_zero(const Fp& x) { return x.is_zero(); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p == b.p;
  }
};

}  // namespace mkv::exactalg
