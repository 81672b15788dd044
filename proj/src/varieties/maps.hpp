#pragma once

#include <optional>
#include <span>
#include <vector>

#include "core.hpp"
#include "groebner/ideal.hpp"
#include "varieties/sampling.hpp"

namespace mkv::varieties {

/// Rational map between projective spaces given by equal-degree forms.
struct RationalMap {
  FpRingPtr src;
  FpRingPtr tgt;
  std::vector<FpPoly> forms;
};

RationalMap make_map(const FpRingPtr& src, std::vector<FpPoly> forms);

/// Image of a point; nullopt on the base locus.
std::optional<Point> apply_map(const RationalMap& map, const Point& u);

/// The degree-d forms with double points along V(I): {c : c and all partials
/// of c lie in I}, computed exactly from normal-form conditions. The
/// echelonized basis is deterministic.
std::vector<FpPoly> double_point_system(const groebner::IdealHandle& I, int d);

/// Degree-d part of the image ideal by interpolation at sampled image
/// points; the nullspace must be stable under doubling the sample count.
struct Interpolation {
  std::vector<FpPoly> basis;
  std::int64_t dim = 0;
  bool stable = false;
};
Interpolation implicitize_by_interpolation(const RationalMap& map, int degree,
                                           Rng& rng);

/// The cubic c on the target with c(forms) = lambda * d3^7 as degree-21
/// forms, solved on evaluations at random points, normalized to lambda = 1.
struct ContractedCubic {
  FpPoly cubic;
  std::int64_t solution_space_dim = 0;  // expected: dim I_X(3) + 1
  bool lambda_nonzero = false;
};
ContractedCubic contracted_cubic(const RationalMap& map, const FpPoly& d3,
                                 Rng& rng, std::size_t samples = 500);

/// The cubic section with contact order >= 7 at the image of u: vanishing of
/// the order-<=6 jet of c(map(u + eps v)) in four affine directions gives 210
/// linear conditions on the 220 cubic coefficients; the solution is taken
/// modulo cubics vanishing on the image.
struct JetSection {
  FpPoly cubic;
  std::int64_t kernel_dim = 0;  // expected: dim I_X(3) + 1
};
JetSection cubic_section_at_point(const RationalMap& map,
                                  std::span<const FpPoly> ix3, const Point& u);

/// Jets of the map at u in 4 affine directions, truncation order `trunc`.
std::vector<FpJet> map_jets_at(const RationalMap& map, const Point& u,
                               std::uint32_t trunc);

/// Tangent-section scheme at a smooth point x of the quadric-cut fourfold:
/// restrict the quadrics to the embedded tangent space (rank-5 Jacobian) and
/// report its numerical data, plus the degree after saturating by the point.
struct TangentSection {
  int tangent_dim = 0;  // affine dimension of the tangent space, expected 5
  groebner::HilbertData scheme;
  bool point_on_scheme = false;
  std::int64_t saturated_degree = 0;
};
TangentSection lines_through_point(std::span<const FpPoly> quadrics,
                                   const Point& x, int bound = 0);

}  // namespace mkv::varieties
