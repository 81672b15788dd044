#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core.hpp"
#include "multipoly/jet_eval.hpp"
#include "multipoly/macaulay.hpp"

using namespace mkv;

namespace {

// Independent extended-Euclid oracle for inverses mod p.
std::uint32_t euclid_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Fp random_elem(const PrimeField& F, std::mt19937_64& rng, bool nonzero = false) {
  for (;;) {
    Fp x = F.from_int(static_cast<std::int64_t>(rng() % F.p));
    if (!nonzero || !x.is_zero()) return x;
  }
}

}  // namespace

TEST_CASE("prime field basics over F_10007") {
  PrimeField F(10007);
  CHECK(euclid_inverse(3, 10007) == 3336);
  CHECK((F(3) * F(3336)).rep() == 1);
  CHECK(F(3).inverse() == F(3336));
  CHECK((F(5) + F(10006)) == F(4));
  CHECK((F(2) - F(5)) == F(-3));
  CHECK(F(2).pow(20) == F(1048576 % 10007));
  CHECK_THROWS_AS(F(0).inverse(), std::domain_error);
  CHECK_THROWS_AS(F(1) / F(0), std::domain_error);
  CHECK_THROWS_AS(PrimeField(10006), std::invalid_argument);
}

TEST_CASE("random inverses: a * a^-1 = 1 for 1000 nonzero a") {
  PrimeField F(10007);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    Fp a = random_elem(F, rng, true);
    CHECK(a * a.inverse() == F.one());
    CHECK(a.inverse() == F(euclid_inverse(a.rep(), F.p)));
  }
}

TEST_CASE("field axioms hold for random triples") {
  PrimeField F(10007);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Fp a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("rationals: exact arithmetic in lowest terms") {
  Rational a = exactalg::rational(2, 4);
  Rational b = exactalg::rational(1, 4);
  Rational s = a + b;
  CHECK(s == exactalg::rational(3, 4));
  CHECK(s.get_den() == 4);
  CHECK(s.get_num() == 3);
  Rational neg = exactalg::rational(3, -6);
  CHECK(neg == exactalg::rational(-1, 2));
  CHECK(neg.get_den() == 2);  // denominator stays positive
}

TEST_CASE("rationals agree with 64-bit integer arithmetic when exact") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::int64_t x = static_cast<std::int32_t>(rng());
    std::int64_t y = static_cast<std::int32_t>(rng());
    CHECK(exactalg::rational(x) + exactalg::rational(y) == exactalg::rational(x + y));
    CHECK(exactalg::rational(x) * exactalg::rational(y) ==
          Rational(mpz_class(x) * mpz_class(y)));
  }
}

TEST_CASE("rational field axioms on random triples") {
  std::mt19937_64 rng(13);
  auto rnd = [&]() {
    return exactalg::rational(static_cast<std::int16_t>(rng()),
                              1 + (rng() % 97));
  };
  for (int i = 0; i < 200; ++i) {
    Rational a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("jets: truncation drops higher order terms") {
  PrimeField F(10007);
  auto J = exactalg::JetRing<PrimeField>::create(1, 1, F);
  // (1 + x)(1 - x) = 1 - x^2 -> 1 at truncation order 1
  FpJet a = FpJet::affine(J, F(1), 0);
  FpJet one = FpJet::constant(J, F(1));
  FpJet b = one - (a - one);  // 1 - x
  FpJet prod = a * b;
  CHECK(prod.coeff(Monomial()) == F(1));
  CHECK(prod.coeff(Monomial::variable(0)) == F(0));

  auto J2 = exactalg::JetRing<PrimeField>::create(2, 2, F);
  // (x + y)^2 = x^2 + 2xy + y^2
  FpJet x = FpJet::affine(J2, F(0), 0);
  FpJet y = FpJet::affine(J2, F(0), 1);
  FpJet s = (x + y) * (x + y);
  Monomial x2;
  x2.set_exponent(0, 2);
  Monomial xy;
  xy.set_exponent(0, 1);
  xy.set_exponent(1, 1);
  Monomial y2;
  y2.set_exponent(1, 2);
  CHECK(s.coeff(x2) == F(1));
  CHECK(s.coeff(xy) == F(2));
  CHECK(s.coeff(y2) == F(1));
}

TEST_CASE("jet ring mismatch is an error") {
  PrimeField F(10007);
  auto J1 = exactalg::JetRing<PrimeField>::create(2, 3, F);
  auto J2 = exactalg::JetRing<PrimeField>::create(2, 4, F);
  FpJet a(J1), b(J2);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

// Oracle: compose symbolically with Poly, truncate, compare coefficients.
TEST_CASE("jets of f(linear args) match full symbolic expansion, 20 random cases") {
  PrimeField F(10007);
  std::mt19937_64 rng(101);
  const std::uint32_t n = 3;     // polynomial variables
  const std::uint32_t jn = 2;    // jet variables
  const std::uint32_t trunc = 3;
  auto pring = fp_ring(n, F.p);
  auto jring_poly = fp_ring(jn, F.p);
  auto J = exactalg::JetRing<PrimeField>::create(jn, trunc, F);

  for (int iter = 0; iter < 20; ++iter) {
    // random degree-3 polynomial f in n vars
    std::vector<FpPoly::Term> terms;
    auto monos3 = multipoly::monomials_of_degree(n, 3, pring->order);
    for (const auto& m : monos3)
      if (rng() % 2) terms.push_back({m, random_elem(F, rng)});
    FpPoly f = FpPoly::from_terms(pring, terms);

    // random affine-linear arguments gamma_i = c_i + a_i e0 + b_i e1
    std::vector<FpPoly> gamma_polys;
    std::vector<FpJet> gamma_jets;
    for (std::uint32_t i = 0; i < n; ++i) {
      Fp c = random_elem(F, rng), a = random_elem(F, rng), b = random_elem(F, rng);
      FpPoly g = FpPoly::constant(jring_poly, c) +
                 FpPoly::variable(jring_poly, 0).scaled(a) +
                 FpPoly::variable(jring_poly, 1).scaled(b);
      gamma_polys.push_back(g);
      FpJet jet = FpJet::constant(J, c);
      jet = jet + FpJet::affine(J, F(0), 0).scaled(a);
      jet = jet + FpJet::affine(J, F(0), 1).scaled(b);
      gamma_jets.push_back(jet);
    }

    FpPoly symbolic = f.compose(gamma_polys);
    FpJet via_jets = multipoly::jet_evaluate<PrimeField>(f, gamma_jets);

    // compare: every coefficient of degree <= trunc must agree, all
    // higher-degree jet coefficients are absent by construction
    for (const auto& m : J->monomials())
      CHECK(via_jets.coeff(m) == symbolic.coeff_of(m));
    for (const auto& t : symbolic.terms())
      if (t.m.degree() <= trunc) CHECK(via_jets.coeff(t.m) == t.c);
  }
}

TEST_CASE("jet products equal truncated polynomial products") {
  PrimeField F(10007);
  std::mt19937_64 rng(55);
  const std::uint32_t jn = 3, trunc = 4;
  auto jring_poly = fp_ring(jn, F.p);
  auto J = exactalg::JetRing<PrimeField>::create(jn, trunc, F);
  for (int iter = 0; iter < 30; ++iter) {
    auto random_jet_pair = [&]() {
      FpPoly p = FpPoly::zero(jring_poly);
      for (std::uint32_t d = 0; d <= trunc; ++d)
        for (const auto& m : multipoly::monomials_of_degree(jn, d, jring_poly->order))
          if (rng() % 3 == 0) p = p + FpPoly::monomial_term(jring_poly, m, random_elem(F, rng));
      FpJet j(J);
      for (const auto& t : p.terms()) j.coeffs()[J->index_of(t.m)] = t.c;
      return std::make_pair(p, j);
    };
    auto [pa, ja] = random_jet_pair();
    auto [pb, jb] = random_jet_pair();
    FpPoly prod = pa * pb;
    FpJet jprod = ja * jb;
    for (const auto& m : J->monomials()) CHECK(jprod.coeff(m) == prod.coeff_of(m));
  }
}
