#pragma once

#include <stdexcept>
#include <string>

#include "core.hpp"

namespace mkv::varieties {

/// Numerical invariants of a smooth polarized surface: degree, sectional
/// genus, chi(O), canonical self-intersection and topological Euler number.
/// K.H is determined by adjunction: K.H = 2 pi - 2 - d.
struct SurfaceInvariants {
  enum class Source { derived, classical, calibrated };

  std::int64_t d = 0;
  std::int64_t pi = 0;
  Rational chi;
  std::int64_t K2 = 0;
  std::int64_t e = 0;
  Source source = Source::derived;

  std::int64_t KH() const { return 2 * pi - 2 - d; }

  /// Noether: chi(O) = (K^2 + e) / 12, exact.
  bool noether_holds() const { return Rational(12) * chi == Rational(K2 + e); }

  /// Double-point identity for smooth surfaces in P^4:
  /// d^2 - 10 d - 5 K.H - 2 K^2 + 12 chi = 0.
  bool double_point_identity() const {
    return Rational(d * d - 10 * d - 5 * KH() - 2 * K2) + Rational(12) * chi ==
           0;
  }
};

/// K^2 from the double-point identity (valid in P^4), e from Noether.
inline SurfaceInvariants derive_invariants_p4(std::int64_t d, std::int64_t pi,
                                              const Rational& chi) {
  SurfaceInvariants s;
  s.d = d;
  s.pi = pi;
  s.chi = chi;
  Rational k2 =
      (Rational(d * d - 10 * d - 5 * s.KH()) + Rational(12) * chi) / 2;
  if (!exactalg::is_integer(k2))
    throw std::domain_error("derive_invariants_p4: non-integral K^2");
  s.K2 = exactalg::to_int64(k2);
  Rational e = Rational(12) * chi - k2;
  if (!exactalg::is_integer(e))
    throw std::domain_error("derive_invariants_p4: non-integral e");
  s.e = exactalg::to_int64(e);
  s.source = SurfaceInvariants::Source::derived;
  if (!s.noether_holds())
    throw std::domain_error("derive_invariants_p4: Noether identity fails");
  return s;
}

inline SurfaceInvariants classical_invariants(std::int64_t d, std::int64_t pi,
                                              const Rational& chi,
                                              std::int64_t K2, std::int64_t e) {
  SurfaceInvariants s;
  s.d = d;
  s.pi = pi;
  s.chi = chi;
  s.K2 = K2;
  s.e = e;
  s.source = SurfaceInvariants::Source::classical;
  if (!s.noether_holds())
    throw std::domain_error("classical_invariants: Noether identity fails");
  return s;
}

}  // namespace mkv::varieties
