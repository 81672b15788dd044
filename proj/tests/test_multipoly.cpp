#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "core.hpp"
#include "multipoly/macaulay.hpp"

using namespace mkv;

namespace {

FpPoly random_homog(const FpRingPtr& ring, std::uint32_t d, std::mt19937_64& rng,
                    int keep_mod = 2) {
  std::vector<FpPoly::Term> terms;
  for (const auto& m : multipoly::monomials_of_degree(ring->nvars, d, ring->order))
    if (rng() % keep_mod == 0)
      terms.push_back({m, ring->field.from_int(static_cast<std::int64_t>(rng() % ring->field.p))});
  return FpPoly::from_terms(ring, std::move(terms));
}

std::vector<Fp> random_point(const FpRingPtr& ring, std::mt19937_64& rng) {
  std::vector<Fp> pt;
  for (std::uint32_t i = 0; i < ring->nvars; ++i)
    pt.push_back(ring->field.from_int(static_cast<std::int64_t>(rng() % ring->field.p)));
  return pt;
}

}  // namespace

TEST_CASE("grevlex orders degree-3 monomials in 3 variables classically") {
  // x^3 > x^2y > xy^2 > y^3 > x^2z > xyz > y^2z > xz^2 > yz^2 > z^3
  auto ring = fp_ring(3, 10007);
  auto monos = multipoly::monomials_of_degree(3, 3, ring->order);
  auto m = [&](int a, int b, int c) {
    Monomial r;
    if (a) r.set_exponent(0, a);
    if (b) r.set_exponent(1, b);
    if (c) r.set_exponent(2, c);
    return r;
  };
  std::vector<Monomial> expect = {m(3, 0, 0), m(2, 1, 0), m(1, 2, 0), m(0, 3, 0),
                                  m(2, 0, 1), m(1, 1, 1), m(0, 2, 1), m(1, 0, 2),
                                  m(0, 1, 2), m(0, 0, 3)};
  REQUIRE(monos.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(monos[i] == expect[i]);
}

TEST_CASE("lex and elimination orders") {
  auto lex = MonomialOrder::lex();
  Monomial x = Monomial::variable(0);
  Monomial y5;
  y5.set_exponent(1, 5);
  CHECK(lex.compare(x, y5, 3) > 0);

  auto elim = MonomialOrder::block_elim(1);
  // anything containing x0 beats anything free of it
  Monomial y3z2;
  y3z2.set_exponent(1, 3);
  y3z2.set_exponent(2, 2);
  CHECK(elim.compare(x, y3z2, 3) > 0);
  CHECK(elim.eliminates(1));
  CHECK(!MonomialOrder::grevlex().eliminates(1));
}

TEST_CASE("(x0 + x1)^2 expands to x0^2 + 2*x0*x1 + x1^2") {
  auto ring = fp_ring(4, 10007);
  FpPoly f = FpPoly::variable(ring, 0) + FpPoly::variable(ring, 1);
  FpPoly sq = f * f;
  CHECK(sq.nterms() == 3);
  CHECK(sq.str() == "1*x0^2+2*x0*x1+1*x1^2");
  CHECK(sq.is_homogeneous());
  CHECK(sq.is_normalized());
}

TEST_CASE("products of homogeneous polynomials add degrees") {
  std::mt19937_64 rng(3);
  auto ring = fp_ring(4, 10007);
  for (int i = 0; i < 20; ++i) {
    FpPoly f = random_homog(ring, 2 + rng() % 3, rng);
    FpPoly g = random_homog(ring, 1 + rng() % 4, rng);
    if (f.is_zero() || g.is_zero()) continue;
    FpPoly h = f * g;
    CHECK(h.is_homogeneous());
    CHECK(h.degree() == f.degree() + g.degree());
  }
}

TEST_CASE("composition degree bookkeeping: cubic of ten degree-7 forms has degree 21") {
  std::mt19937_64 rng(5);
  auto src = fp_ring(5, 10007);
  auto tgt = fp_ring(10, 10007);
  std::vector<FpPoly> images;
  for (int i = 0; i < 10; ++i) images.push_back(random_homog(src, 7, rng, 6));
  FpPoly cubic = random_homog(tgt, 3, rng, 8);
  REQUIRE(!cubic.is_zero());
  FpPoly composed = cubic.compose(images);
  REQUIRE(!composed.is_zero());
  CHECK(composed.degree() == 21);
  CHECK(composed.is_homogeneous());
}

TEST_CASE("evaluate: x0*x1 at (2,3) equals 6") {
  auto ring = fp_ring(2, 10007);
  FpPoly f = FpPoly::variable(ring, 0) * FpPoly::variable(ring, 1);
  std::vector<Fp> pt = {ring->field(2), ring->field(3)};
  CHECK(f.evaluate(pt) == ring->field(6));
}

TEST_CASE("homogeneous evaluation scales by lambda^deg") {
  std::mt19937_64 rng(9);
  auto ring = fp_ring(4, 10007);
  const PrimeField& F = ring->field;
  for (int i = 0; i < 25; ++i) {
    FpPoly f = random_homog(ring, 3, rng);
    if (f.is_zero()) continue;
    auto v = random_point(ring, rng);
    Fp lam = F.from_int(1 + static_cast<std::int64_t>(rng() % (F.p - 1)));
    std::vector<Fp> lv;
    for (const auto& c : v) lv.push_back(c * lam);
    CHECK(f.evaluate(lv) == f.evaluate(v) * lam.pow(3));
  }
}

TEST_CASE("evaluation is a ring homomorphism on random samples") {
  std::mt19937_64 rng(17);
  auto ring = fp_ring(3, 10007);
  for (int i = 0; i < 25; ++i) {
    FpPoly f = random_homog(ring, 2, rng);
    FpPoly g = random_homog(ring, 3, rng);
    auto pt = random_point(ring, rng);
    CHECK((f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt));
    CHECK((f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt));
  }
}

TEST_CASE("Segre cubic vanishes at its ten nodes (hyperplane-slice model)") {
  // sum of x_i^3 restricted to sum x_i = 0; nodes are the coordinate
  // permutations of (1,1,1,-1,-1,-1).
  auto ring = qq_ring(6);
  QQPoly cubic = QQPoly::zero(ring);
  for (int i = 0; i < 6; ++i) cubic = cubic + QQPoly::variable(ring, i).pow(3);
  int nodes = 0;
  std::vector<int> signs = {1, 1, 1, -1, -1, -1};
  std::sort(signs.begin(), signs.end());
  do {
    std::vector<Rational> pt;
    Rational sum(0);
    for (int s : signs) {
      pt.push_back(exactalg::rational(s));
      sum += pt.back();
    }
    CHECK(sum == 0);
    CHECK(cubic.evaluate(pt) == 0);
    ++nodes;
  } while (std::next_permutation(signs.begin(), signs.end()));
  CHECK(nodes == 20);  // 20 sign vectors, 10 projective nodes
}

TEST_CASE("term lists stay sorted; re-sorting is the identity") {
  std::mt19937_64 rng(23);
  auto ring = fp_ring(4, 10007);
  for (int i = 0; i < 20; ++i) {
    FpPoly f = random_homog(ring, 3, rng) + random_homog(ring, 2, rng);
    CHECK(f.is_normalized());
    FpPoly g = f.reordered(MonomialOrder::lex()).reordered(MonomialOrder::grevlex());
    CHECK(g.str() == f.str());
  }
}

TEST_CASE("serialization round-trips through parse") {
  std::mt19937_64 rng(31);
  auto ring = fp_ring(4, 10007);
  for (int i = 0; i < 20; ++i) {
    FpPoly f = random_homog(ring, 4, rng) + random_homog(ring, 1, rng);
    CHECK(multipoly::parse_poly(ring, f.str()).str() == f.str());
  }
  auto qring = qq_ring(3);
  QQPoly q = QQPoly::constant(qring, exactalg::rational(-3, 2)) *
                 QQPoly::variable(qring, 0) +
             QQPoly::variable(qring, 2).pow(2);
  CHECK(q.str() == "1*x2^2+-3/2*x0");
  CHECK(multipoly::parse_poly(qring, q.str()).str() == q.str());
}

TEST_CASE("graded piece of (x0) in five variables at degree 1 has dimension 1") {
  auto ring = fp_ring(5, 10007);
  std::vector<FpPoly> gens = {FpPoly::variable(ring, 0)};
  auto piece = multipoly::graded_piece_basis(ring, gens, 1);
  CHECK(piece.dim == 1);
  CHECK(piece.basis[0].str() == "1*x0");
  CHECK_THROWS_AS(multipoly::graded_piece_basis(ring, gens, -1),
                  std::invalid_argument);
}

TEST_CASE("graded piece dimension is independent of the monomial order") {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 10; ++iter) {
    auto r1 = fp_ring(3, 10007, MonomialOrder::grevlex());
    auto r2 = fp_ring(3, 10007, MonomialOrder::lex());
    std::vector<FpPoly> g1, g2;
    for (int k = 0; k < 3; ++k) {
      FpPoly f = random_homog(r1, 1 + rng() % 3, rng);
      if (f.is_zero()) continue;
      g1.push_back(f);
      g2.push_back(multipoly::parse_poly(r2, f.str()));
    }
    for (int d = 1; d <= 4; ++d) {
      auto p1 = multipoly::graded_piece_basis(r1, g1, d);
      auto p2 = multipoly::graded_piece_basis(r2, g2, d);
      CHECK(p1.dim == p2.dim);
    }
  }
}

TEST_CASE("ring mismatch raises") {
  auto r1 = fp_ring(3, 10007);
  auto r2 = fp_ring(4, 10007);
  FpPoly a = FpPoly::variable(r1, 0), b = FpPoly::variable(r2, 0);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("derivative") {
  auto ring = fp_ring(2, 10007);
  FpPoly f = FpPoly::variable(ring, 0).pow(3) * FpPoly::variable(ring, 1);
  CHECK(f.derivative(0).str() == "3*x0^2*x1");
  CHECK(f.derivative(1).str() == "1*x0^3");
}
