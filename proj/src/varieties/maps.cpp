#include "varieties/maps.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "multipoly/jet_eval.hpp"
#include "multipoly/linalg.hpp"
#include "multipoly/macaulay.hpp"

namespace mkv::varieties {

RationalMap make_map(const FpRingPtr& src, std::vector<FpPoly> forms) {
  if (forms.empty()) throw std::invalid_argument("make_map: no forms");
  int d = -1;
  bool any = false;
  for (const auto& f : forms) {
    f.require_ring(src);
    if (f.is_zero()) continue;
    if (!f.is_homogeneous())
      throw std::invalid_argument("make_map: forms must be homogeneous");
    if (d >= 0 && f.degree() != d)
      throw std::invalid_argument("make_map: unequal degrees");
    d = f.degree();
    any = true;
  }
  if (!any) throw std::invalid_argument("make_map: all forms vanish");
  auto tgt = fp_ring(static_cast<std::uint32_t>(forms.size()), src->field.p);
  return {src, tgt, std::move(forms)};
}

std::optional<Point> apply_map(const RationalMap& map, const Point& u) {
  Point img;
  img.reserve(map.forms.size());
  for (const auto& f : map.forms) img.push_back(f.evaluate(u));
  if (is_zero_point(img)) return std::nullopt;
  return img;
}

std::vector<FpPoly> double_point_system(const groebner::IdealHandle& I, int d) {
  const auto& ring = I.ring();
  const PrimeField& F = ring->field;
  auto cols = multipoly::monomials_of_degree(ring->nvars, d, ring->order);
  auto col_of = multipoly::index_monomials(cols);

  // Rows are indexed by (which check, support monomial of the normal form).
  std::map<std::pair<int, std::size_t>, std::size_t> row_of;
  std::unordered_map<Monomial, std::size_t, MonomialHash> support;
  std::vector<std::vector<std::pair<std::size_t, Fp>>> col_entries(cols.size());

  auto add_conditions = [&](int tag, std::size_t col, const FpPoly& nf) {
    for (const auto& t : nf.terms()) {
      auto [it, fresh] = support.emplace(t.m, support.size());
      std::size_t row_key = it->second;
      auto [rit, rfresh] =
          row_of.emplace(std::make_pair(tag, row_key), row_of.size());
      col_entries[col].push_back({rit->second, t.c});
    }
  };

  for (std::size_t c = 0; c < cols.size(); ++c) {
    FpPoly m = FpPoly::monomial_term(ring, cols[c], F.one());
    add_conditions(0, c, I.normal_form(m));
    for (std::uint32_t v = 0; v < ring->nvars; ++v)
      add_conditions(1 + static_cast<int>(v), c, I.normal_form(m.derivative(v)));
  }

  multipoly::DenseMat<PrimeField> M(F, row_of.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : col_entries[c]) M.at(r, c) = v;
  auto null = multipoly::nullspace(std::move(M));

  // Echelonize the kernel vectors for a deterministic monic basis.
  multipoly::DenseMat<PrimeField> K(F, null.size(), cols.size());
  for (std::size_t r = 0; r < null.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) K.at(r, c) = null[r][c];
  std::size_t rank = multipoly::rref(K);
  std::vector<FpPoly> basis;
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<FpPoly::Term> terms;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!K.at(r, c).is_zero()) terms.push_back({cols[c], K.at(r, c)});
    basis.push_back(FpPoly::from_terms(ring, std::move(terms)));
  }
  return basis;
}

namespace {

/// Evaluate all monomials of a fixed degree at a point, via power tables.
std::vector<Fp> eval_monomials(const std::vector<Monomial>& monos,
                               const Point& pt, const PrimeField& F, int maxdeg) {
  std::vector<std::vector<Fp>> pows(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) {
    pows[i].push_back(F.one());
    for (int e = 1; e <= maxdeg; ++e) pows[i].push_back(pows[i].back() * pt[i]);
  }
  std::vector<Fp> out;
  out.reserve(monos.size());
  for (const auto& m : monos) {
    Fp v = F.one();
    for (std::size_t i = 0; i < pt.size(); ++i) {
      std::uint32_t e = m.exponent(i);
      if (e) v *= pows[i][e];
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<Fp>> interpolation_kernel(
    const RationalMap& map, const std::vector<Monomial>& monos, int degree,
    std::size_t nsamples, Rng& rng) {
  const PrimeField& F = map.src->field;
  auto samples = sample_parametrized(map.forms, nsamples, rng);
  multipoly::DenseMat<PrimeField> M(F, samples.size(), monos.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    auto row = eval_monomials(monos, samples[r], F, degree);
    for (std::size_t c = 0; c < monos.size(); ++c) M.at(r, c) = row[c];
  }
  return multipoly::nullspace(std::move(M));
}

}  // namespace

Interpolation implicitize_by_interpolation(const RationalMap& map, int degree,
                                           Rng& rng) {
  auto monos =
      multipoly::monomials_of_degree(map.tgt->nvars, degree, map.tgt->order);
  std::size_t base = 2 * monos.size();
  auto k1 = interpolation_kernel(map, monos, degree, base, rng);
  auto k2 = interpolation_kernel(map, monos, degree, 2 * base, rng);
  Interpolation out;
  out.stable = (k1.size() == k2.size());
  if (!out.stable)
    throw std::runtime_error(
        "implicitize_by_interpolation: dimension did not stabilize");
  out.dim = static_cast<std::int64_t>(k2.size());
  for (const auto& v : k2) {
    std::vector<FpPoly::Term> terms;
    for (std::size_t c = 0; c < monos.size(); ++c)
      if (!v[c].is_zero()) terms.push_back({monos[c], v[c]});
    out.basis.push_back(FpPoly::from_terms(map.tgt, std::move(terms)));
  }
  return out;
}

ContractedCubic contracted_cubic(const RationalMap& map, const FpPoly& d3,
                                 Rng& rng, std::size_t samples) {
  const PrimeField& F = map.src->field;
  auto cubics =
      multipoly::monomials_of_degree(map.tgt->nvars, 3, map.tgt->order);
  const std::size_t n = cubics.size();
  multipoly::DenseMat<PrimeField> M(F, samples, n + 1);
  std::size_t row = 0;
  while (row < samples) {
    Point u = rng.point(map.src);
    auto img = apply_map(map, u);
    if (!img) continue;
    auto vals = eval_monomials(cubics, *img, F, 3);
    for (std::size_t c = 0; c < n; ++c) M.at(row, c) = vals[c];
    M.at(row, n) = F.zero() - d3.evaluate(u).pow(7);
    ++row;
  }
  auto null = multipoly::nullspace(std::move(M));
  ContractedCubic out;
  out.solution_space_dim = static_cast<std::int64_t>(null.size());
  for (const auto& v : null) {
    if (v[n].is_zero()) continue;
    Fp inv = v[n].inverse();
    std::vector<FpPoly::Term> terms;
    for (std::size_t c = 0; c < n; ++c)
      if (!v[c].is_zero()) terms.push_back({cubics[c], v[c] * inv});
    out.cubic = FpPoly::from_terms(map.tgt, std::move(terms));
    out.lambda_nonzero = true;
    break;
  }
  if (!out.lambda_nonzero)
    throw std::runtime_error("contracted_cubic: no solution with nonzero scale");
  return out;
}

std::vector<FpJet> map_jets_at(const RationalMap& map, const Point& u,
                               std::uint32_t trunc) {
  const PrimeField& F = map.src->field;
  auto J = exactalg::JetRing<PrimeField>::create(4, trunc, F);
  // directions: the four standard vectors other than the pivot of u
  Point un = normalize_projective(u);
  std::size_t pivot = 0;
  while (un[pivot].is_zero()) ++pivot;
  std::vector<std::size_t> dirs;
  for (std::size_t i = 0; i < un.size() && dirs.size() < 4; ++i)
    if (i != pivot) dirs.push_back(i);
  // coordinate jets u_i + eps_k [i == dirs[k]]
  std::vector<FpJet> coords;
  for (std::size_t i = 0; i < un.size(); ++i) {
    FpJet c = FpJet::constant(J, un[i]);
    for (std::size_t k = 0; k < dirs.size(); ++k)
      if (dirs[k] == i)
        c = c + FpJet::affine(J, F.zero(), static_cast<std::uint32_t>(k));
    coords.push_back(c);
  }
  std::vector<FpJet> out;
  for (const auto& f : map.forms)
    out.push_back(multipoly::jet_evaluate<PrimeField>(f, coords));
  return out;
}

JetSection cubic_section_at_point(const RationalMap& map,
                                  std::span<const FpPoly> ix3, const Point& u) {
  const PrimeField& F = map.src->field;
  const std::uint32_t trunc = 6;
  auto form_jets = map_jets_at(map, u, trunc);
  auto jring = form_jets[0].ring();

  // jets of all cubic monomials in the target coordinates, built bottom-up
  auto cubics =
      multipoly::monomials_of_degree(map.tgt->nvars, 3, map.tgt->order);
  std::unordered_map<Monomial, FpJet, MonomialHash> cache;
  cache.emplace(Monomial(), FpJet::constant(jring, F.one()));
  std::function<const FpJet&(const Monomial&)> jet_of =
      [&](const Monomial& m) -> const FpJet& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::uint32_t v = 0;
    while (m.exponent(v) == 0) ++v;
    FpJet val = jet_of(m / Monomial::variable(v)) * form_jets[v];
    return cache.emplace(m, std::move(val)).first->second;
  };

  const std::size_t rows = jring->size();  // 210 jet coefficients
  multipoly::DenseMat<PrimeField> M(F, rows, cubics.size());
  for (std::size_t c = 0; c < cubics.size(); ++c) {
    const FpJet& j = jet_of(cubics[c]);
    for (std::size_t r = 0; r < rows; ++r) M.at(r, c) = j.coeffs()[r];
  }
  auto null = multipoly::nullspace(std::move(M));

  JetSection out;
  out.kernel_dim = static_cast<std::int64_t>(null.size());

  // pick a kernel vector independent of the cubics through the image
  auto col_of = multipoly::index_monomials(cubics);
  multipoly::DenseMat<PrimeField> E(F, ix3.size() + 1, cubics.size());
  for (std::size_t r = 0; r < ix3.size(); ++r)
    for (const auto& t : ix3[r].terms()) E.at(r, col_of.at(t.m)) = t.c;
  std::size_t base_rank;
  {
    multipoly::DenseMat<PrimeField> E0(F, ix3.size(), cubics.size());
    for (std::size_t r = 0; r < ix3.size(); ++r)
      for (const auto& t : ix3[r].terms()) E0.at(r, col_of.at(t.m)) = t.c;
    base_rank = multipoly::rref(E0);
  }
  for (const auto& v : null) {
    for (std::size_t c = 0; c < cubics.size(); ++c)
      E.at(ix3.size(), c) = v[c];
    multipoly::DenseMat<PrimeField> Ecopy = E;
    if (multipoly::rref(Ecopy) == base_rank + 1) {
      std::vector<FpPoly::Term> terms;
      for (std::size_t c = 0; c < cubics.size(); ++c)
        if (!v[c].is_zero()) terms.push_back({cubics[c], v[c]});
      out.cubic = FpPoly::from_terms(map.tgt, std::move(terms)).monic();
      return out;
    }
  }
  throw std::runtime_error(
      "cubic_section_at_point: kernel adds nothing beyond the image cubics");
}

TangentSection lines_through_point(std::span<const FpPoly> quadrics,
                                   const Point& x, int bound) {
  (void)bound;
  const auto& ring = quadrics[0].ring();
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;

  // Jacobian at x
  multipoly::DenseMat<PrimeField> J(F, quadrics.size(), n);
  for (std::size_t r = 0; r < quadrics.size(); ++r)
    for (std::uint32_t c = 0; c < n; ++c)
      J.at(r, c) = quadrics[r].derivative(c).evaluate(x);
  auto tangent = multipoly::nullspace(J);

  TangentSection out;
  out.tangent_dim = static_cast<int>(tangent.size());
  if (out.tangent_dim != 5) return out;

  // basis of the tangent space containing x itself
  std::vector<Point> basis = {normalize_projective(x)};
  {
    multipoly::DenseMat<PrimeField> E(F, 6, n);
    for (std::uint32_t c = 0; c < n; ++c) E.at(0, c) = basis[0][c];
    std::size_t rank = 1;
    for (const auto& v : tangent) {
      for (std::uint32_t c = 0; c < n; ++c) E.at(rank, c) = v[c];
      multipoly::DenseMat<PrimeField> Ec = E;
      Ec.rows = rank + 1;
      if (multipoly::rref(Ec) == rank + 1) {
        basis.push_back(v);
        ++rank;
        if (rank == 5) break;
      }
    }
    if (rank != 5)
      throw std::runtime_error("lines_through_point: tangent basis defect");
  }

  // restrict the quadrics to the tangent P^4
  auto sub = fp_ring(5, F.p);
  std::vector<FpPoly> images;
  for (std::uint32_t i = 0; i < n; ++i) {
    FpPoly coord = FpPoly::zero(sub);
    for (std::size_t k = 0; k < 5; ++k)
      coord = coord + FpPoly::variable(sub, static_cast<std::uint32_t>(k))
                          .scaled(basis[k][i]);
    images.push_back(coord);
  }
  std::vector<FpPoly> restricted;
  for (const auto& q : quadrics) {
    FpPoly r = q.compose(images);
    if (!r.is_zero()) restricted.push_back(r);
  }
  groebner::IdealHandle scheme(sub, restricted);
  out.scheme = groebner::hilbert_data(scheme);

  // x has coordinates e_0 in the tangent frame
  Point e0(5, F.zero());
  e0[0] = F.one();
  out.point_on_scheme = all_vanish(scheme.gens(), e0);

  // saturate by the point's ideal and report the degree that remains
  std::vector<FpPoly> point_ideal;
  for (std::uint32_t i = 1; i < 5; ++i)
    point_ideal.push_back(FpPoly::variable(sub, i));
  auto sat = groebner::saturate(scheme, groebner::IdealHandle(sub, point_ideal));
  auto hs = groebner::hilbert_data(sat.ideal);
  out.saturated_degree = hs.unit_ideal ? 0 : hs.degree;
  return out;
}

}  // namespace mkv::varieties
