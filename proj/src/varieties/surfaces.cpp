#include "varieties/surfaces.hpp"

#include <stdexcept>

#include "multipoly/macaulay.hpp"

namespace mkv::varieties {

namespace {

/// Image ideal of P^{m-1} -> P^{k-1} by the given forms, via the graph ideal
/// in m + k variables with the source block eliminated.
groebner::IdealHandle image_ideal(const FpRingPtr& src,
                                  std::span<const FpPoly> forms,
                                  const FpRingPtr& target) {
  const std::uint32_t m = src->nvars;
  const std::uint32_t k = static_cast<std::uint32_t>(forms.size());
  auto big = fp_ring(m + k, src->field.p);
  std::vector<FpPoly> src_vars;
  for (std::uint32_t i = 0; i < m; ++i)
    src_vars.push_back(FpPoly::variable(big, i));
  std::vector<FpPoly> gens;
  for (std::uint32_t j = 0; j < k; ++j)
    gens.push_back(FpPoly::variable(big, m + j) - forms[j].compose(src_vars));
  groebner::IdealHandle graph(big, gens);
  auto elim = groebner::eliminate_first(graph, m);
  std::vector<FpPoly> image;
  for (const auto& g : elim)
    image.push_back(groebner::drop_first_vars(
        g.reordered(MonomialOrder::grevlex()), m, target));
  return groebner::with_minimal_gens(groebner::IdealHandle(target, image));
}

FpPoly random_combo(std::span<const FpPoly> basis, Rng& rng) {
  FpPoly acc = FpPoly::zero(basis[0].ring());
  const PrimeField& F = basis[0].ring()->field;
  for (const auto& b : basis) acc = acc + b.scaled(rng.field_elem(F));
  return acc;
}

}  // namespace

VeroneseSurface veronese_p5(std::uint32_t p) {
  auto plane = fp_ring(3, p);
  auto ambient = fp_ring(6, p);
  auto v = [&](int i) { return FpPoly::variable(plane, i); };
  std::vector<FpPoly> param = {v(0) * v(0), v(0) * v(1), v(0) * v(2),
                               v(1) * v(1), v(1) * v(2), v(2) * v(2)};
  auto ideal = image_ideal(plane, param, ambient);
  return {plane, ambient, std::move(param), std::move(ideal)};
}

ProjectedVeronese veronese_p4(std::uint32_t p, std::uint64_t seed) {
  auto plane = fp_ring(3, p);
  auto ambient = fp_ring(5, p);
  auto v = [&](int i) { return FpPoly::variable(plane, i); };
  std::vector<FpPoly> quadrics = {v(0) * v(0), v(0) * v(1), v(0) * v(2),
                                  v(1) * v(1), v(1) * v(2), v(2) * v(2)};
  for (int attempt = 0; attempt < 12; ++attempt) {
    Rng rng(derive_seed(seed, "veronese-p4/" + std::to_string(attempt)));
    std::vector<FpPoly> param;
    for (int j = 0; j < 5; ++j) param.push_back(random_combo(quadrics, rng));
    auto ideal = image_ideal(plane, param, ambient);
    auto h = groebner::hilbert_data(ideal);
    if (h.proj_dim != 2 || h.degree != 4) continue;  // degenerate projection
    ProjectedVeronese out{plane,        ambient, std::move(param),
                          std::move(ideal), h,   attempt};
    return out;
  }
  throw std::runtime_error("veronese_p4: degenerate projection persisted");
}

groebner::IdealHandle veronese_p6_model(const VeroneseSurface& v) {
  auto p6 = fp_ring(7, v.ambient->field.p);
  std::vector<FpPoly> vars;
  for (int i = 0; i < 6; ++i) vars.push_back(FpPoly::variable(p6, i));
  std::vector<FpPoly> gens;
  for (const auto& g : v.ideal.gens()) gens.push_back(g.compose(vars));
  gens.push_back(FpPoly::variable(p6, 6));  // the span P^5 inside P^6
  return groebner::IdealHandle(p6, std::move(gens));
}

LinkedSurface linked_surface(int genus, std::uint32_t p, std::uint64_t seed) {
  if (genus == 7) {
    for (int attempt = 0; attempt < 12; ++attempt) {
      auto tag = "linkage-g7/" + std::to_string(attempt);
      auto ver = veronese_p4(p, derive_seed(seed, tag + "/proj"));
      Rng rng(derive_seed(seed, tag + "/forms"));
      auto cubics = multipoly::graded_piece_basis(ver.ambient,
                                                  ver.ideal.gens(), 3);
      auto quartics = multipoly::graded_piece_basis(ver.ambient,
                                                    ver.ideal.gens(), 4);
      FpPoly f3 = random_combo(cubics.basis, rng);
      FpPoly f4 = random_combo(quartics.basis, rng);
      groebner::IdealHandle ci(ver.ambient, {f3, f4});
      auto hci = groebner::hilbert_data(ci);
      if (hci.proj_dim != 2) continue;  // not a regular sequence
      auto residual = groebner::ideal_quotient(ci, ver.ideal);
      auto h = groebner::hilbert_data(residual);
      if (h.proj_dim != 2) continue;
      LinkedSurface out;
      out.genus = 7;
      out.ring = ver.ambient;
      out.veronese = ver.ideal;
      out.ci = {f3, f4};
      out.ideal = residual;
      out.hilbert = h;
      if (!h.sectional_genus || !exactalg::is_integer(*h.sectional_genus))
        continue;
      out.inv = derive_invariants_p4(h.degree,
                                     exactalg::to_int64(*h.sectional_genus),
                                     h.chi);
      out.param_veronese = ver.param;
      out.reseeds = attempt;
      return out;
    }
    throw std::runtime_error("linked_surface: g=7 construction kept failing");
  }
  if (genus == 8) {
    auto ver = veronese_p5(p);
    for (int attempt = 0; attempt < 12; ++attempt) {
      auto tag = "linkage-g8/" + std::to_string(attempt);
      Rng rng(derive_seed(seed, tag));
      const auto& quadrics = ver.ideal.gens();  // six quadrics
      auto cubics = multipoly::graded_piece_basis(ver.ambient,
                                                  ver.ideal.gens(), 3);
      FpPoly q1 = random_combo(quadrics, rng);
      FpPoly q2 = random_combo(quadrics, rng);
      FpPoly f3 = random_combo(cubics.basis, rng);
      groebner::IdealHandle ci(ver.ambient, {q1, q2, f3});
      auto hci = groebner::hilbert_data(ci);
      if (hci.proj_dim != 2) continue;
      auto residual = groebner::ideal_quotient(ci, ver.ideal);
      auto h = groebner::hilbert_data(residual);
      if (h.proj_dim != 2) continue;
      LinkedSurface out;
      out.genus = 8;
      out.ring = ver.ambient;
      out.veronese = ver.ideal;
      out.ci = {q1, q2, f3};
      out.ideal = residual;
      out.hilbert = h;
      // No double-point identity outside P^4; K^2 and e come from the
      // calibrated table route. Degree, genus and chi are still computed
      // here and checked against it by the caller.
      out.inv.d = h.degree;
      out.inv.pi = h.sectional_genus ? exactalg::to_int64(*h.sectional_genus) : 0;
      out.inv.chi = h.chi;
      out.inv.K2 = -1;
      out.inv.e = 13;
      out.inv.source = SurfaceInvariants::Source::calibrated;
      out.param_veronese = ver.param;
      out.reseeds = attempt;
      return out;
    }
    throw std::runtime_error("linked_surface: g=8 construction kept failing");
  }
  throw std::invalid_argument("linked_surface: genus must be 7 or 8");
}

std::vector<std::vector<FpPoly>> jacobian(std::span<const FpPoly> gens) {
  std::vector<std::vector<FpPoly>> J;
  for (const auto& g : gens) {
    std::vector<FpPoly> row;
    for (std::uint32_t i = 0; i < g.ring()->nvars; ++i)
      row.push_back(g.derivative(i));
    J.push_back(std::move(row));
  }
  return J;
}

namespace {

FpPoly det_rec(const std::vector<std::vector<FpPoly>>& m,
               std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  FpPoly acc = FpPoly::zero(m[0][0].ring());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) sub_cols.push_back(cols[j]);
    FpPoly term = m[rows[0]][cols[k]] * det_rec(m, sub_rows, sub_cols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

void choose(int n, int k, int start, std::vector<int>& cur,
            std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FpPoly> minors_of(const std::vector<std::vector<FpPoly>>& mat,
                              int k) {
  std::vector<FpPoly> out;
  if (mat.empty()) return out;
  int nrows = static_cast<int>(mat.size());
  int ncols = static_cast<int>(mat[0].size());
  std::vector<std::vector<int>> row_sets, col_sets;
  std::vector<int> cur;
  choose(nrows, k, 0, cur, row_sets);
  choose(ncols, k, 0, cur, col_sets);
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) {
      FpPoly d = det_rec(mat, rs, cs);
      if (!d.is_zero()) out.push_back(d);
    }
  return out;
}

groebner::EmptinessResult smoothness_certificate(const groebner::IdealHandle& I,
                                                 int codim, int bound) {
  auto J = jacobian(I.gens());
  auto mins = minors_of(J, codim);
  std::vector<FpPoly> gens = I.gens();
  for (auto& m : mins) gens.push_back(std::move(m));
  return groebner::is_empty_projective(I.ring(), gens, bound);
}

}  // namespace mkv::varieties
