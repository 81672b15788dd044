#pragma once

#include <unordered_map>

#include "exactalg/fp.hpp"
#include "multipoly/linalg.hpp"
#include "multipoly/poly.hpp"

namespace mkv::multipoly {

/// All monomials of total degree d in n variables, sorted descending in the
/// given order.
std::vector<Monomial> monomials_of_degree(std::uint32_t nvars, std::uint32_t d,
                                          const MonomialOrder& order);

/// Index lookup table for a fixed monomial list.
using MonomialIndex = std::unordered_map<Monomial, std::size_t, MonomialHash>;
MonomialIndex index_monomials(const std::vector<Monomial>& monos);

struct GradedPiece {
  std::int64_t dim = 0;
  std::vector<Poly<exactalg::PrimeField>> basis;  // echelonized, monic pivots
};

/// Basis of the degree-d piece of the ideal generated by homogeneous gens:
/// the row space of the Macaulay matrix of all shifts m*g with deg(m*g) = d,
/// echelonized with deterministic pivoting.
GradedPiece graded_piece_basis(
    const RingPtr<exactalg::PrimeField>& ring,
    std::span<const Poly<exactalg::PrimeField>> gens, int d);

/// Dimension of the full degree-d monomial space minus the piece, i.e. the
/// Hilbert function of the quotient at d, via the same matrix.
std::int64_t quotient_dim_at_degree(
    const RingPtr<exactalg::PrimeField>& ring,
    std::span<const Poly<exactalg::PrimeField>> gens, int d);

}  // namespace mkv::multipoly
