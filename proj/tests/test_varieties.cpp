#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chow/chow.hpp"
#include "core.hpp"
#include "groebner/buchberger.hpp"
#include "multipoly/macaulay.hpp"
#include "varieties/betti.hpp"
#include "varieties/maps.hpp"
#include "varieties/surfaces.hpp"

using namespace mkv;
using namespace mkv::varieties;

namespace {
constexpr std::uint32_t kP = 10007;
}

TEST_CASE("Veronese in P^5: six quadrics cutting a degree-4 surface") {
  auto V = veronese_p5(kP);
  CHECK(V.ideal.gens().size() == 6);
  for (const auto& g : V.ideal.gens()) CHECK(g.degree() == 2);
  auto h = groebner::hilbert_data(V.ideal);
  CHECK(h.proj_dim == 2);
  CHECK(h.degree == 4);
  CHECK(h.sectional_genus.has_value());
  CHECK(*h.sectional_genus == 0);
  CHECK(h.chi == 1);

  // catalecticant-minor oracle
  auto w = [&](int i) { return FpPoly::variable(V.ambient, i); };
  std::vector<std::vector<FpPoly>> cat = {{w(0), w(1), w(2)},
                                          {w(1), w(3), w(4)},
                                          {w(2), w(4), w(5)}};
  groebner::IdealHandle minors(V.ambient, minors_of(cat, 2));
  CHECK(V.ideal.equals(minors));

  // parametrized points satisfy the ideal
  Rng rng(derive_seed(1, "test/veronese-pts"));
  auto pts = sample_parametrized(V.param, 50, rng);
  for (const auto& pt : pts) CHECK(all_vanish(V.ideal.gens(), pt));
}

TEST_CASE("projected Veronese in P^4: degree 4, genus 0, chi 1, smooth") {
  auto V = veronese_p4(kP, 1);
  CHECK(V.hilbert.degree == 4);
  CHECK(*V.hilbert.sectional_genus == 0);
  CHECK(V.hilbert.chi == 1);
  CHECK(V.ideal.gens().size() == 7);
  for (const auto& g : V.ideal.gens()) CHECK(g.degree() == 3);

  auto cert = smoothness_certificate(V.ideal, 2, 24);
  CHECK(cert.is_empty());

  Rng rng(derive_seed(1, "test/proj-veronese-pts"));
  auto pts = sample_parametrized(V.param, 30, rng);
  for (const auto& pt : pts) CHECK(all_vanish(V.ideal.gens(), pt));
}

TEST_CASE("g=7 linked surface: invariants, generators, liaison bookkeeping") {
  auto F = linked_surface(7, kP, 1);
  CHECK(F.hilbert.degree == 8);
  CHECK(*F.hilbert.sectional_genus == 6);
  CHECK(F.hilbert.chi == 1);
  CHECK(F.inv.K2 == -7);
  CHECK(F.inv.e == 19);
  CHECK(F.inv.noether_holds());
  CHECK(F.inv.double_point_identity());

  // generators: one cubic, four quartics
  auto gens = groebner::with_minimal_gens(F.ideal).gens();
  int cubics = 0, quartics = 0;
  for (const auto& g : gens) {
    if (g.degree() == 3) ++cubics;
    if (g.degree() == 4) ++quartics;
  }
  CHECK(cubics == 1);
  CHECK(quartics == 4);

  // unique cubic through F
  CHECK(multipoly::graded_piece_basis(F.ring, F.ideal.gens(), 3).dim == 1);

  // liaison degree additivity: 3*4 = 4 + 8
  auto hv = groebner::hilbert_data(F.veronese);
  CHECK(F.ci[0].degree() * F.ci[1].degree() == hv.degree + F.hilbert.degree);
  // genus additivity in P^4: pi(F) - pi(V) = (a+b-4)(dF-dV)/2
  CHECK(*F.hilbert.sectional_genus - *hv.sectional_genus ==
        exactalg::rational((3 + 4 - 4) * (8 - 4), 2));

  // cross-check the derived invariants against the intersection table route
  auto gd = chow::GenusData::get(7);
  auto route2 = chow::blowup_surface_table(gd, F.inv);
  CHECK(route2.value({1, 1, 1, 1}) == -149);
}

TEST_CASE("g=7 linked surface is smooth over F_p") {
  auto F = linked_surface(7, kP, 1);
  auto cert = smoothness_certificate(F.ideal, 2, 24);
  CHECK(cert.is_empty());
}

TEST_CASE("g=8 linked surface inside the quadric: degree 8, genus 4") {
  auto F = linked_surface(8, kP, 1);
  CHECK(F.hilbert.degree == 8);
  CHECK(*F.hilbert.sectional_genus == 4);
  CHECK(F.hilbert.chi == 1);

  // two quadrics through F (the CI quadrics), unique modulo the ambient
  auto q = multipoly::graded_piece_basis(F.ring, F.ideal.gens(), 2);
  CHECK(q.dim == 2);
  CHECK(F.ideal.contains(F.ci[0]));
  CHECK(F.ideal.contains(F.ci[1]));

  auto gens = groebner::with_minimal_gens(F.ideal).gens();
  int quadrics = 0, cubics = 0;
  for (const auto& g : gens) {
    if (g.degree() == 2) ++quadrics;
    if (g.degree() == 3) ++cubics;
  }
  CHECK(quadrics == 2);
  CHECK(cubics == 4);
}

TEST_CASE("Betti table of a (2,3) complete intersection is Koszul") {
  Rng rng(derive_seed(5, "test/koszul"));
  auto ring = fp_ring(4, kP);
  auto rnd = [&](int d) {
    std::vector<FpPoly::Term> terms;
    for (const auto& m : multipoly::monomials_of_degree(4, d, ring->order))
      terms.push_back({m, rng.field_elem(ring->field)});
    return FpPoly::from_terms(ring, terms);
  };
  groebner::IdealHandle ci(ring, {rnd(2), rnd(3)});
  auto b = betti_table(ci);
  CHECK(b.max_col == 2);
  CHECK(b.get(0, 0) == 1);
  CHECK(b.get(1, 2) == 1);
  CHECK(b.get(1, 3) == 1);
  CHECK(b.get(2, 5) == 1);

  // alternating sums reproduce the Hilbert numerator
  auto h = groebner::hilbert_data(ci);
  CHECK(alternating_sum_numerator(b) == h.numerator);
}

TEST_CASE("g=7 Betti table matches the reference display") {
  auto F = linked_surface(7, kP, 1);
  auto b = betti_table(F.ideal);
  CHECK(b.max_col == 3);
  CHECK(b.get(0, 0) == 1);
  CHECK(b.get(1, 3) == 1);  // row 2, column 1
  CHECK(b.get(1, 4) == 4);  // row 3, column 1
  CHECK(b.get(2, 5) == 5);  // row 3, column 2
  CHECK(b.get(3, 6) == 1);  // row 3, column 3
  std::int64_t total = 0;
  for (const auto& [k, v] : b.entries) total += v;
  CHECK(total == 1 + 1 + 4 + 5 + 1);

  auto h = groebner::hilbert_data(F.ideal);
  CHECK(alternating_sum_numerator(b) == h.numerator);
}

TEST_CASE("g=8 Betti table matches the reference display") {
  auto F = linked_surface(8, kP, 1);
  auto b = betti_table(F.ideal);
  CHECK(b.max_col == 3);
  CHECK(b.get(0, 0) == 1);
  CHECK(b.get(1, 2) == 2);
  CHECK(b.get(1, 3) == 4);
  CHECK(b.get(2, 4) == 9);
  CHECK(b.get(3, 5) == 4);
  auto h = groebner::hilbert_data(F.ideal);
  CHECK(alternating_sum_numerator(b) == h.numerator);
}

TEST_CASE("g=9 model: Veronese inside its span in P^6") {
  auto V = veronese_p5(kP);
  auto model = veronese_p6_model(V);
  auto b = betti_table(model);
  CHECK(b.max_col == 4);
  CHECK(b.get(0, 0) == 1);
  CHECK(b.get(1, 1) == 1);
  CHECK(b.get(1, 2) == 6);
  CHECK(b.get(2, 3) == 14);
  CHECK(b.get(3, 4) == 11);
  CHECK(b.get(4, 5) == 3);
  auto h = groebner::hilbert_data(model);
  CHECK(alternating_sum_numerator(b) == h.numerator);
  CHECK(h.degree == 4);
  CHECK(h.proj_dim == 2);
  // unique hyperplane through the surface
  CHECK(multipoly::graded_piece_basis(model.ring(), model.gens(), 1).dim == 1);
}

TEST_CASE("sampling: Segre cubic points satisfy the cubic") {
  auto ring = fp_ring(5, kP);
  FpPoly f = FpPoly::zero(ring), s = FpPoly::zero(ring);
  for (int i = 0; i < 5; ++i) {
    f = f + FpPoly::variable(ring, i).pow(3);
    s = s + FpPoly::variable(ring, i);
  }
  f = f - s.pow(3);
  Rng rng(derive_seed(9, "test/segre-pts"));
  auto pts = sample_hypersurface(f, 100, rng);
  CHECK(pts.size() == 100);
  for (const auto& pt : pts) CHECK(f.evaluate(pt).is_zero());
}

TEST_CASE("sampling a codimension-2 surface by plane sections") {
  auto F = linked_surface(7, kP, 1);
  Rng rng(derive_seed(9, "test/surface-pts"));
  auto pts = sample_subvariety(F.ideal, 2, 20, rng);
  CHECK(pts.size() == 20);
  for (const auto& pt : pts) CHECK(all_vanish(F.ideal.gens(), pt));
}

TEST_CASE("double-point system of a hyperplane: x0^2 times linears") {
  auto ring = fp_ring(5, kP);
  groebner::IdealHandle I(ring, {FpPoly::variable(ring, 0)});
  // at degree 3 the system is x0^2 * (linear): dimension 5 in P^4
  auto sys = double_point_system(I, 3);
  CHECK(sys.size() == 5);
  FpPoly x0sq = FpPoly::variable(ring, 0) * FpPoly::variable(ring, 0);
  groebner::IdealHandle Isq(ring, {x0sq});
  for (const auto& c : sys) {
    CHECK(Isq.contains(c));
    for (int v = 0; v < 5; ++v) CHECK(I.contains(c.derivative(v)));
  }
  // at degree 2 only x0^2 itself survives
  CHECK(double_point_system(I, 2).size() == 1);
}
