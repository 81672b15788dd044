#include "groebner/hilbert.hpp"

#include <algorithm>
#include <stdexcept>

namespace mkv::groebner {

namespace {

using IPoly = std::vector<std::int64_t>;  // coefficients by degree

void ipoly_add(IPoly& a, const IPoly& b, int shift = 0, std::int64_t scale = 1) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += scale * b[i];
}

IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void ipoly_trim(IPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t ipoly_eval1(const IPoly& a) {
  std::int64_t s = 0;
  for (auto c : a) s += c;
  return s;
}

/// Exact division by (1 - t); requires K(1) = 0.
IPoly ipoly_div_1mt(const IPoly& a) {
  // If K = (1-t) Q then q_i = k_0 + k_1 + ... + k_i ... with K(1)=0 the
  // partial sums terminate in 0.
  IPoly q(a.size(), 0);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i + 1 <= a.size(); ++i) {
    acc += i < a.size() ? a[i] : 0;
    q[i] = acc;
  }
  ipoly_trim(q);
  return q;
}

constexpr std::uint32_t kMaxVarsLocal = multipoly::kMaxVars;

/// Remove redundant (divisible) monomials; deterministic result.
std::vector<Monomial> interreduce_monomials(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::uint32_t i = 0; i < kMaxVarsLocal; ++i) {
      if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
    }
    return false;
  });
  std::vector<Monomial> out;
  for (const auto& m : gens) {
    bool redundant = false;
    for (const auto& g : out)
      if (g.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  return out;
}

IPoly numerator_rec(std::vector<Monomial> gens) {
  gens = interreduce_monomials(std::move(gens));
  if (gens.empty()) return {1};
  if (gens.size() == 1 && gens[0].is_one()) return {0};
  // pairwise coprime => product formula
  bool coprime = true;
  for (std::size_t i = 0; i < gens.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size() && coprime; ++j)
      if (!Monomial::coprime(gens[i], gens[j])) coprime = false;
  if (coprime) {
    IPoly r = {1};
    for (const auto& m : gens) {
      IPoly f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] = -1;
      r = ipoly_mul(r, f);
    }
    ipoly_trim(r);
    return r;
  }
  // pivot: the variable occurring most often (ties: lowest index)
  std::array<int, kMaxVarsLocal> freq{};
  for (const auto& m : gens)
    for (std::uint32_t i = 0; i < kMaxVarsLocal; ++i)
      if (m.exponent(i)) ++freq[i];
  std::uint32_t pivot = 0;
  for (std::uint32_t i = 1; i < kMaxVarsLocal; ++i)
    if (freq[i] > freq[pivot]) pivot = i;

  // K(I) = K(I + (x)) + t * K(I : x)
  std::vector<Monomial> plus = {Monomial::variable(pivot)};
  for (const auto& m : gens)
    if (m.exponent(pivot) == 0) plus.push_back(m);
  std::vector<Monomial> colon;
  for (const auto& m : gens) {
    if (m.exponent(pivot) > 0) {
      Monomial q = m;
      q.set_exponent(pivot, m.exponent(pivot) - 1);
      colon.push_back(q);
    } else {
      colon.push_back(m);
    }
  }
  IPoly a = numerator_rec(std::move(plus));
  IPoly b = numerator_rec(std::move(colon));
  ipoly_add(a, b, /*shift=*/1);
  ipoly_trim(a);
  return a;
}

}  // namespace

std::vector<std::int64_t> hilbert_numerator(std::uint32_t nvars,
                                            std::vector<Monomial> lead_terms) {
  (void)nvars;
  return numerator_rec(std::move(lead_terms));
}

std::int64_t HilbertData::hilbert_function(int d) const {
  if (d < 0) return 0;
  // [t^d] K(t)/(1-t)^n = sum_j K_j * C(d - j + n - 1, n - 1)
  std::int64_t s = 0;
  for (std::size_t j = 0; j < numerator.size(); ++j) {
    std::int64_t k = d - static_cast<int>(j);
    if (k < 0) continue;
    // C(k + n - 1, n - 1)
    std::int64_t b = 1;
    for (std::uint32_t i = 1; i < nvars; ++i) b = b * (k + i) / i;
    s += numerator[j] * b;
  }
  return s;
}

int HilbertData::regularity_bound() const {
  return std::max<int>(0, static_cast<int>(numerator.size()));
}

Rational HilbertData::hp_at(const Rational& d) const {
  Rational acc(0), pw(1);
  for (const auto& c : hp) {
    acc += c * pw;
    pw *= d;
  }
  return acc;
}

HilbertData hilbert_from_lead_terms(std::uint32_t nvars,
                                    std::vector<Monomial> lead_terms) {
  HilbertData h;
  h.nvars = nvars;
  h.numerator = hilbert_numerator(nvars, std::move(lead_terms));
  if (h.numerator == IPoly{0} || h.numerator.empty()) {
    h.unit_ideal = true;
    h.numerator = {0};
    h.proj_dim = -1;
    h.degree = 0;
    h.chi = Rational(0);
    return h;
  }
  IPoly q = h.numerator;
  int codim = 0;
  while (ipoly_eval1(q) == 0) {
    q = ipoly_div_1mt(q);
    ++codim;
    if (codim > static_cast<int>(nvars))
      throw std::logic_error("hilbert: numerator divisible too often");
  }
  h.codim = codim;
  h.qpoly = q;
  int affine_dim = static_cast<int>(nvars) - codim;
  h.proj_dim = affine_dim - 1;
  h.degree = ipoly_eval1(q);

  // HP(d) = sum_j q_j C(d - j + D - 1, D - 1), D = affine dim.
  int D = affine_dim;
  h.hp.assign(std::max(D, 1), Rational(0));
  if (D == 0) {
    h.hp = {Rational(0)};
  } else {
    for (std::size_t j = 0; j < q.size(); ++j) {
      // expand prod_{s=1}^{D-1} (d - j + s) / (D-1)!
      std::vector<Rational> poly = {Rational(1)};
      for (int s = 1; s <= D - 1; ++s) {
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        Rational c0 = exactalg::rational(-(std::int64_t)j + s);
        for (std::size_t i = 0; i < poly.size(); ++i) {
          next[i] += poly[i] * c0;
          next[i + 1] += poly[i];
        }
        poly = std::move(next);
      }
      Rational fact(1);
      for (int s = 2; s <= D - 1; ++s) fact *= s;
      for (std::size_t i = 0; i < poly.size(); ++i)
        h.hp[i] += exactalg::rational(q[j]) * poly[i] / fact;
    }
  }
  h.chi = h.hp.empty() ? Rational(0) : h.hp[0];
  if (h.proj_dim == 2) {
    Rational lin = h.hp.size() > 1 ? h.hp[1] : Rational(0);
    h.sectional_genus = exactalg::rational(h.degree, 2) + 1 - lin;
  }
  return h;
}

}  // namespace mkv::groebner
