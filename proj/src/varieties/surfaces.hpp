#pragma once

#include <span>
#include <vector>

#include "core.hpp"
#include "groebner/ideal.hpp"
#include "varieties/invariants.hpp"
#include "varieties/sampling.hpp"

namespace mkv::varieties {

/// Veronese surface in P^5: image of P^2 under the full quadric system,
/// computed as the elimination ideal of the graph. The parametrization is
/// kept for sampling.
struct VeroneseSurface {
  FpRingPtr plane;              // P^2 coordinates
  FpRingPtr ambient;            // P^5
  std::vector<FpPoly> param;    // six quadric monomials
  groebner::IdealHandle ideal;  // six quadrics
};
VeroneseSurface veronese_p5(std::uint32_t p);

/// Isomorphic projection of the Veronese to P^4: image of P^2 under five
/// random combinations of the quadric monomials. Degenerate projections
/// (wrong dimension or degree) are reseeded away.
struct ProjectedVeronese {
  FpRingPtr plane;
  FpRingPtr ambient;  // P^4
  std::vector<FpPoly> param;
  groebner::IdealHandle ideal;  // seven cubics
  groebner::HilbertData hilbert;
  int reseeds = 0;
};
ProjectedVeronese veronese_p4(std::uint32_t p, std::uint64_t seed);

/// The Veronese in the P^5-inside-P^6 model: its P^6 ideal is the lifted
/// quadrics plus the linear form cutting the span.
groebner::IdealHandle veronese_p6_model(const VeroneseSurface& v);

/// Surface linked to a Veronese inside a complete intersection:
///   g=7: CI of degrees (3,4) through the projected Veronese in P^4;
///   g=8: CI of degrees (2,2,3) through the Veronese in P^5, the first
///        quadric playing the ambient Q^4.
struct LinkedSurface {
  int genus = 0;
  FpRingPtr ring;
  groebner::IdealHandle veronese;
  std::vector<FpPoly> ci;  // complete-intersection forms
  groebner::IdealHandle ideal;
  groebner::HilbertData hilbert;
  SurfaceInvariants inv;
  std::vector<FpPoly> param_veronese;  // for point sampling of the Veronese
  int reseeds = 0;
};
LinkedSurface linked_surface(int genus, std::uint32_t p, std::uint64_t seed);

/// Jacobian matrix of the generators (rows: generators, cols: variables).
std::vector<std::vector<FpPoly>> jacobian(std::span<const FpPoly> gens);

/// All k x k minors of a polynomial matrix.
std::vector<FpPoly> minors_of(const std::vector<std::vector<FpPoly>>& mat,
                              int k);

/// Smoothness certificate over F_p: the ideal plus the rank-dropping minors
/// of the Jacobian has empty projective vanishing locus. codim is the
/// codimension of the subvariety (singular points are where the Jacobian has
/// rank < codim).
groebner::EmptinessResult smoothness_certificate(const groebner::IdealHandle& I,
                                                 int codim, int bound);

}  // namespace mkv::varieties
