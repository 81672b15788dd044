#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "core.hpp"
#include "multipoly/linalg.hpp"
#include "varieties/maps.hpp"
#include "varieties/sampling.hpp"

namespace mkv::cremona {

using varieties::Point;
using varieties::RationalMap;
using varieties::Rng;

/// A cubic threefold in P^4 with a distinguished double point: the cubic
/// form, the node, a basis of linear forms through it and the exact Hessian
/// rank. For a homogeneous cubic the 5x5 Hessian at a singular point always
/// kills the point itself (Euler), so an ordinary double point is rank 4
/// with kernel spanned by the node.
template <class F>
struct NodalCubic {
  multipoly::RingPtr<F> ring;
  multipoly::Poly<F> cubic;
  std::vector<typename F::Elem> node;
  std::vector<multipoly::Poly<F>> node_linears;  // l1..l4
  int hessian_rank = 0;
  bool kernel_is_node = false;
  std::vector<std::vector<typename F::Elem>> nodes;  // all nodes when known
};

/// The ten-node cubic threefold, in the coordinates where the P^5 model
/// sum x_i = sum x_i^3 = 0 is reduced to P^4: f = sum_{i<5} x_i^3 -
/// (sum x_i)^3. Nodes are the projections of the sign vectors with three
/// +1 and three -1 entries; the distinguished node is (1,1,1,-1,-1).
NodalCubic<PrimeField> build_segre_cubic_fp(std::uint32_t p);
NodalCubic<QQField> build_segre_cubic_qq();

/// Random cubic with an ordinary double point at a random point, for
/// property tests. Reseeds until the Hessian condition holds.
NodalCubic<PrimeField> random_nodal_cubic(std::uint32_t p, std::uint64_t seed);

/// Exact gradient / Hessian utilities.
template <class F>
std::vector<typename F::Elem> gradient_at(
    const multipoly::Poly<F>& f, const std::vector<typename F::Elem>& pt);

template <class F>
struct HessianInfo {
  int rank = 0;
  bool kernel_is_point = false;
};
template <class F>
HessianInfo<F> hessian_at(const multipoly::Poly<F>& f,
                          const std::vector<typename F::Elem>& pt);

/// A birational self-map of P^4 together with its solved inverse and the
/// exact composition certificates: inverse(map(x)) = factor * x and
/// map(inverse(y)) = cofactor * y, as polynomial identities.
struct CremonaStep {
  RationalMap map;
  RationalMap inverse;
  FpPoly factor;    // degree deg^2 - 1
  FpPoly cofactor;  // same, other direction
  bool certified = false;
};

/// Solve for a degree-bounded inverse by linear algebra on the composition
/// identity at sampled points, then certify the identity symbolically.
CremonaStep solve_inverse(const RationalMap& map, int inverse_degree, Rng& rng);

/// Step 1: the cubic transformation |g l1, g l2, g l3, g l4, f| attached to
/// a rank-4 quadric g singular at the node.
struct StepOne {
  FpPoly g;                  // the quadric Q
  int g_rank = 0;            // 4
  CremonaStep step;          // forward + inverse + certificates
  FpPoly image_of_w;         // linear form vanishing on Psi(W)
  std::int64_t image_of_w_fit_dim = 0;  // dimension of the fitted space (1)
  Point image_of_q;          // the single image point of Q
  bool q_image_single = false;
  bool q_image_off_pw = false;
  FpPoly q_prime;            // rank-4 quadric, total transform of the node
  int q_prime_rank = 0;
  bool q_prime_vertex_is_q_image = false;
  bool pullback_identity = false;   // Psi^*(Q') = g^2 * (Hessian quadric)
  bool cofactor_singular_at_node = false;
  bool inverse_contracts_qprime = false;  // inverse sends Q' samples to p
  FpPoly factor_g_part;  // factor = unit * g^a * f^b when it factors
  int factor_g_exp = 0, factor_f_exp = 0;
  bool factor_supported_on_w_union_q = false;
};
StepOne step1_cubic_cremona(const NodalCubic<PrimeField>& W, Rng& rng,
                            std::size_t samples = 200);

/// Step 2: the quadric transformation |h' l'_1, ..., h' l'_4, g'| attached
/// to a point q on P_W cut out of Q', with h' the tangent hyperplane there.
struct StepTwo {
  Point q;          // base point on P_W /\ Q'
  FpPoly h_prime;   // tangent hyperplane to Q' at q
  CremonaStep step;
  FpPoly p1, p2, p3;  // the three hyperplanes
  std::int64_t p1_fit_dim = 0, p3_fit_dim = 0;
  bool base_locus_transform_on_p2 = false;
  bool qprime_samples_map_to_p1 = false;
  bool factor_supported_on_three = false;  // h' u P_W u Q'
  int factor_h_exp = 0, factor_pw_exp = 0, factor_q_exp = 0;
};
StepTwo step2_quadric_cremona(const StepOne& s1, Rng& rng,
                              std::size_t samples = 200);

/// Explicit A^2-cylinder chart on the complement of three hyperplanes whose
/// intersection is a line (rank 3); the pencil case (rank 2, the coordinate
/// model) is charted through an auxiliary coordinate slot.
template <class F>
struct CylinderChart {
  multipoly::RingPtr<F> ring;
  int rank = 0;
  std::vector<multipoly::Poly<F>> planes;      // the three input forms
  std::vector<multipoly::Poly<F>> proj;        // three coordinates of pi_ell
  std::vector<multipoly::Poly<F>> fiber;       // two completing linear forms
  std::vector<std::vector<typename F::Elem>> inverse_matrix;  // 5x5, solves back
  // the three excluded lines of the base P^2, as coefficient vectors
  std::vector<std::array<typename F::Elem, 3>> base_lines;
};

template <class F>
CylinderChart<F> cylinder_chart(std::span<const multipoly::Poly<F>> planes);

/// Forward chart: base point in P^2 and the two affine fiber coordinates.
template <class F>
struct ChartImage {
  std::vector<typename F::Elem> base;  // length 3
  typename F::Elem u, v;
};
template <class F>
ChartImage<F> chart_forward(const CylinderChart<F>& chart,
                            const std::vector<typename F::Elem>& x);
template <class F>
std::vector<typename F::Elem> chart_inverse(const CylinderChart<F>& chart,
                                            const ChartImage<F>& w);
template <class F>
bool base_point_in_z(const CylinderChart<F>& chart,
                     const std::vector<typename F::Elem>& base);

/// End-to-end run: step 1, step 2 (reseeding q until the target point stays
/// inside the open set), the chart, and the membership certificates.
struct Pipeline {
  StepOne s1;
  StepTwo s2;
  CylinderChart<PrimeField> chart;
  FpPoly p_pullback;  // the hyperplane P with U = P^4 minus (P u Q u W)
  bool p_is_hyperplane = false;  // Psi^*(h') = g * linear
  bool x_in_u = false;
  std::array<int, 3> removed_degrees{0, 0, 0};
  bool chart_roundtrip_x = false;
  bool full_roundtrip_x = false;  // back through both inverse maps
  int q_reseeds = 0;
};
Pipeline full_pipeline(const NodalCubic<PrimeField>& W, const Point& x,
                       std::uint64_t seed);

/// Exact count over a small field for the coordinate model
/// P1 = V(x0), P2 = V(x1), P3 = V(x0+x1): |U| must equal |Z| p^2.
struct CountCheck {
  std::int64_t u_count = 0;
  std::int64_t z_count = 0;
  bool matches = false;
};
CountCheck coordinate_model_count(std::uint32_t p);

}  // namespace mkv::cremona
