#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <string>

namespace mkv::multipoly {

inline constexpr std::uint32_t kMaxVars = 16;

/// Monomial exponent vector, packed 8 bits per variable (<= 16 variables),
/// with the total degree cached. Exponents in this project stay far below
/// 255; mul asserts against byte overflow in debug builds.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::uint32_t i) {
    Monomial m;
    m.set_exponent(i, 1);
    return m;
  }

  std::uint32_t exponent(std::uint32_t i) const {
    assert(i < kMaxVars);
    return static_cast<std::uint32_t>((w_[i >> 3] >> ((i & 7) * 8)) & 0xff);
  }

  void set_exponent(std::uint32_t i, std::uint32_t e) {
    assert(i < kMaxVars && e <= 0xff);
    std::uint32_t old = exponent(i);
    w_[i >> 3] &= ~(std::uint64_t(0xff) << ((i & 7) * 8));
    w_[i >> 3] |= std::uint64_t(e) << ((i & 7) * 8);
    deg_ = deg_ - old + e;
  }

  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.w_ == b.w_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.w_[0] = a.w_[0] + b.w_[0];
    r.w_[1] = a.w_[1] + b.w_[1];
    r.deg_ = a.deg_ + b.deg_;
    assert(r.no_byte_overflow(a, b));
    return r;
  }

  bool divides(const Monomial& b) const {  // this | b
    for (int w = 0; w < 2; ++w) {
      // Per-byte a <= b without borrow: check each byte lane.
      std::uint64_t aa = w_[w], bb = b.w_[w];
      if (aa == 0) continue;
      for (int i = 0; i < 8; ++i) {
        if (((aa >> (i * 8)) & 0xff) > ((bb >> (i * 8)) & 0xff)) return false;
      }
    }
    return true;
  }

  /// Quotient b / this, precondition: this divides b.
  friend Monomial operator/(const Monomial& b, const Monomial& a) {
    assert(a.divides(b));
    Monomial r;
    r.w_[0] = b.w_[0] - a.w_[0];
    r.w_[1] = b.w_[1] - a.w_[1];
    r.deg_ = b.deg_ - a.deg_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::uint32_t i = 0; i < kMaxVars; ++i) {
      std::uint32_t e = std::max(a.exponent(i), b.exponent(i));
      if (e) r.set_exponent(i, e);
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::uint32_t i = 0; i < kMaxVars; ++i) {
      std::uint32_t e = std::min(a.exponent(i), b.exponent(i));
      if (e) r.set_exponent(i, e);
    }
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    return gcd(a, b).is_one();
  }

  /// Bitmask of variables with positive exponent; cheap divisibility filter.
  std::uint32_t support_mask() const {
    std::uint32_t m = 0;
    for (std::uint32_t i = 0; i < kMaxVars; ++i)
      if (exponent(i)) m |= 1u << i;
    return m;
  }

  std::size_t hash() const {
    std::uint64_t h = w_[0] * 0x9e3779b97f4a7c15ull;
    h ^= (w_[1] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    return static_cast<std::size_t>(h);
  }

  std::string str(std::uint32_t nvars) const {
    if (is_one()) return "1";
    std::string s;
    for (std::uint32_t i = 0; i < nvars; ++i) {
      std::uint32_t e = exponent(i);
      if (!e) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i);
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  bool no_byte_overflow(const Monomial& a, const Monomial& b) const {
    for (std::uint32_t i = 0; i < kMaxVars; ++i)
      if (a.exponent(i) + b.exponent(i) > 0xff) return false;
    return true;
  }

  std::array<std::uint64_t, 2> w_{0, 0};
  std::uint32_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace mkv::multipoly
