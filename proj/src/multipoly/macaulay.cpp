#include "multipoly/macaulay.hpp"

#include <algorithm>
#include <stdexcept>

namespace mkv::multipoly {

namespace {

void enumerate_rec(std::uint32_t nvars, std::uint32_t var,
                   std::uint32_t remaining, Monomial& acc,
                   std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    Monomial m = acc;
    if (remaining) m.set_exponent(var, remaining);
    out.push_back(m);
    return;
  }
  for (std::uint32_t e = 0; e <= remaining; ++e) {
    if (e) acc.set_exponent(var, e);
    enumerate_rec(nvars, var + 1, remaining - e, acc, out);
    if (e) acc.set_exponent(var, 0);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::uint32_t nvars, std::uint32_t d,
                                          const MonomialOrder& order) {
  std::vector<Monomial> out;
  Monomial acc;
  enumerate_rec(nvars, 0, d, acc, out);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return order.compare(a, b, nvars) > 0;
  });
  return out;
}

MonomialIndex index_monomials(const std::vector<Monomial>& monos) {
  MonomialIndex idx;
  idx.reserve(monos.size() * 2);
  for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
  return idx;
}

GradedPiece graded_piece_basis(const RingPtr<exactalg::PrimeField>& ring,
                               std::span<const Poly<exactalg::PrimeField>> gens,
                               int d) {
  using P = Poly<exactalg::PrimeField>;
  if (d < 0) throw std::invalid_argument("graded_piece_basis: negative degree");
  for (const auto& g : gens) {
    g.require_ring(ring);
    if (!g.is_homogeneous())
      throw std::invalid_argument("graded_piece_basis: generators must be homogeneous");
  }
  auto cols = monomials_of_degree(ring->nvars, d, ring->order);
  auto col_of = index_monomials(cols);

  std::vector<std::vector<exactalg::Fp>> rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int e = g.degree();
    if (e > d) continue;
    auto shifts = monomials_of_degree(ring->nvars, d - e, ring->order);
    for (const auto& m : shifts) {
      std::vector<exactalg::Fp> row(cols.size(), ring->field.zero());
      for (const auto& t : g.terms()) row[col_of.at(m * t.m)] = t.c;
      rows.push_back(std::move(row));
    }
  }

  DenseMat<exactalg::PrimeField> mat(ring->field, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) mat.at(r, c) = rows[r][c];
  std::size_t rank = rref(mat);

  GradedPiece out;
  out.dim = static_cast<std::int64_t>(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<typename P::Term> terms;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!mat.at(r, c).is_zero()) terms.push_back({cols[c], mat.at(r, c)});
    out.basis.push_back(P::from_terms(ring, std::move(terms)));
  }
  return out;
}

std::int64_t quotient_dim_at_degree(
    const RingPtr<exactalg::PrimeField>& ring,
    std::span<const Poly<exactalg::PrimeField>> gens, int d) {
  auto piece = graded_piece_basis(ring, gens, d);
  std::int64_t total = static_cast<std::int64_t>(
      monomials_of_degree(ring->nvars, d, ring->order).size());
  return total - piece.dim;
}

}  // namespace mkv::multipoly
