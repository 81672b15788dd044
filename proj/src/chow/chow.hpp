#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"
#include "varieties/invariants.hpp"

namespace mkv::chow {

/// Numerical data attached to each genus g in {7,8,9,10}: the Fano fourfold
/// Y of index i and degree d(Y), the center surface F with its degree and
/// sectional genus, the line count l_g through a general point, and the
/// pairing c2(T_Y).[F]. For g in {7,8,9}, c2(T_Y) = gamma H^2 with gamma =
/// 10, 7, 5; the g=10 pairing is calibrated against the intersection table
/// rather than derived.
struct GenusData {
  int g = 0;
  int index_y = 0;
  std::int64_t deg_y = 0;
  std::int64_t deg_f = 0;
  std::int64_t pi_f = 0;
  std::int64_t lines = 0;
  std::int64_t c2_ty_dot_f = 0;
  bool c2_calibrated = false;

  static const GenusData& get(int g);
};

/// Surface invariants used for the Chern/Segre route to the blow-up table.
/// g=7 derives from (8, 6, 1) by the double-point identity; g=9 and g=10 are
/// the classical Veronese and sextic del Pezzo models; g=8 is solved from
/// the intersection table and flagged calibrated.
varieties::SurfaceInvariants surface_invariants_for_genus(int g);

/// Symmetric table of all degree-4 monomials in a finite list of divisor
/// class symbols, with exact rational values.
class IntersectionTable {
 public:
  explicit IntersectionTable(std::vector<std::string> symbols);

  const std::vector<std::string>& symbols() const { return syms_; }
  std::size_t nsyms() const { return syms_.size(); }

  void set(std::array<int, 4> mono, Rational v);
  const Rational& value(std::array<int, 4> mono) const;

  /// Every sorted 4-tuple has a value.
  bool complete() const;

 private:
  std::vector<std::string> syms_;
  std::map<std::array<int, 4>, Rational> vals_;
};

/// Formal rational linear combination of the symbols of a table.
struct ClassExpr {
  std::vector<Rational> coeffs;

  static ClassExpr sym(const IntersectionTable& t, int i);
  static ClassExpr combo(const IntersectionTable& t,
                         std::vector<std::pair<int, Rational>> terms);
  ClassExpr operator-(const ClassExpr& o) const;
  ClassExpr operator+(const ClassExpr& o) const;
  ClassExpr scaled(const Rational& c) const;
};

/// Multilinear expansion of a degree-4 product against the table.
Rational expand(const IntersectionTable& t, const ClassExpr& a,
                const ClassExpr& b, const ClassExpr& c, const ClassExpr& d);

Rational expand_pow4(const IntersectionTable& t, const ClassExpr& a);

/// Intersection table on the maximal blow-up model: symbols
/// (Lt, Dt, D_1..D_lg). Lt^4 = 2g-2; any monomial mixing Lt with an
/// exceptional symbol is 0; D_i^4 = 1; Dt^4 = l_g - 1; Dt^3 D_i = Dt D_i^3
/// = -1; Dt^2 D_i^2 = 1; distinct D_i, D_j never meet.
IntersectionTable table_lemma32(int g);

/// Push down to the intermediate model with symbols (phiL, D), by expanding
/// the pullbacks phiL -> Lt + sum D_i and D -> Dt + b sum D_i on the big
/// table. The structural coefficient is b = 2.
IntersectionTable push_to_xbar(const IntersectionTable& big, int g, int b = 2);

/// Route 1 to the (sigmaH, E) table: substitute sigmaH = phiL - 2D and
/// E = (i-2) phiL - (2i-3) D into the (phiL, D) table.
IntersectionTable sigma_e_from_push(const IntersectionTable& push, int g);

/// Route 2: blow-up of Y along the surface F, from Chern/Segre data:
/// (sH)^4 = d(Y), (sH)^3 E = 0, (sH)^2 E^2 = -d(F),
/// sH E^3 = -(K_F.H + i d(F)), E^4 = -(c1(N)^2 - c2(N)) with
/// c1(N) = K_F + i H|_F and c2(N) = c2(T_Y).F - e(F) + K_F.c1(N).
IntersectionTable blowup_surface_table(const GenusData& gd,
                                       const varieties::SurfaceInvariants& F);

/// The named quantities checked against the reference intersection table,
/// all evaluated on a (sigmaH, E) table.
struct TableTwoValues {
  Rational sH2E2, sHE3, E4;  // (sH)^2 E^2, sH E^3, E^4
  Rational L3D, D4, L4;      // Lbar^3 D, D^4, Lbar^4
  Rational sH4, sH3E;        // (sH)^4 = d(Y), (sH)^3 E = 0
  Rational L2D2, LD3;        // Lbar^2 D^2 = -1, Lbar D^3 = 1
  Rational genus_identity;   // (K + 3 Lbar) . Lbar^3 with K = -i sH + E
};
TableTwoValues table_two_values(const IntersectionTable& se, int g);

/// Reference values ((sH)^2E^2, sH E^3, E^4, L^3D, D^4, L^4) per genus.
std::array<std::int64_t, 6> table_two_reference(int g);

/// Coefficient relations between the two bases hold identically: substituting
/// sigmaH = phiL - 2D and E = (i-2) phiL - (2i-3) D back into
/// phiL = (2i-3) sigmaH - 2E and D = (i-2) sigmaH - E gives the identity, and
/// Lbar = (i-1) sigmaH - E simplifies to phiL - D.
struct RelationCheck {
  bool phi_l_identity = false;
  bool d_identity = false;
  bool lbar_is_phil_minus_d = false;
};
RelationCheck verify_prop_relations(int g);

/// Solve for the pullback coefficient b from (phiL)^3 . D = l_g (b - 1):
/// returns the unique b giving l_g.
std::int64_t solve_pullback_coefficient(int g);

/// Alternative evaluations that the source derivation states differently;
/// both are computed and reported, never silently corrected.
struct AlternativeReadings {
  Rational genus_identity_with_K_minus_2L;  // K = -2 phiL instead of -2 phiL + 3D
  Rational e4_as_phil_minus_3d;             // (phiL - 3D)^4
};
AlternativeReadings alternative_readings(int g);

}  // namespace mkv::chow
