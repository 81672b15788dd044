#pragma once

#include <optional>
#include <vector>

#include "core.hpp"

namespace mkv::groebner {

/// Numerical data of a homogeneous ideal read off its Hilbert series
/// K(t)/(1-t)^n, computed combinatorially from a lead-term ideal:
/// K = (1-t)^codim * Q with Q(1) != 0, projective dimension, degree Q(1),
/// the Hilbert polynomial (exact rational coefficients), chi(O) = HP(0)
/// and, for surfaces, the sectional genus pi = deg/2 + 1 - (linear coeff).
struct HilbertData {
  bool unit_ideal = false;  // empty scheme marker
  std::uint32_t nvars = 0;
  std::vector<std::int64_t> numerator;  // K(t)
  int codim = 0;
  std::vector<std::int64_t> qpoly;  // Q(t)
  int proj_dim = -1;                // -1: empty
  std::int64_t degree = 0;          // Q(1), > 0 for nonempty schemes
  std::vector<Rational> hp;         // HP(d) = sum hp[i] d^i
  Rational chi;                     // HP(0)
  std::optional<Rational> sectional_genus;

  /// Exact Hilbert function of the quotient at degree d (valid for every
  /// d >= 0, straight from the series).
  std::int64_t hilbert_function(int d) const;

  /// Degree past which HP provably equals the Hilbert function.
  int regularity_bound() const;

  Rational hp_at(const Rational& d) const;
};

/// Hilbert series numerator of R/(monomial ideal) over (1-t)^nvars.
std::vector<std::int64_t> hilbert_numerator(std::uint32_t nvars,
                                            std::vector<Monomial> lead_terms);

HilbertData hilbert_from_lead_terms(std::uint32_t nvars,
                                    std::vector<Monomial> lead_terms);

}  // namespace mkv::groebner
