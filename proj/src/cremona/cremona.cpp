#include "cremona/cremona.hpp"

#include <algorithm>

#include "groebner/buchberger.hpp"
#include "multipoly/macaulay.hpp"

namespace mkv::cremona {

using multipoly::DenseMat;
using multipoly::Poly;
using multipoly::RingPtr;

namespace {

/// Division by a single polynomial; returns the quotient iff the remainder
/// vanishes.
std::optional<FpPoly> try_exact_divide(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) return std::nullopt;
  FpPoly q = FpPoly::zero(a.ring());
  FpPoly r = a;
  while (!r.is_zero()) {
    const auto& lt = r.leading_term();
    if (!b.leading_monomial().divides(lt.m)) return std::nullopt;
    Fp c = lt.c / b.leading_coeff();
    Monomial m = lt.m / b.leading_monomial();
    q = q + FpPoly::monomial_term(a.ring(), m, c);
    r = r - b.times_term(m, c);
  }
  return q;
}

template <class F>
std::vector<Poly<F>> linears_through(const RingPtr<F>& ring,
                                     const std::vector<typename F::Elem>& p) {
  // basis of the linear forms vanishing at p: x_i - (p_i / p_k) x_k for the
  // first nonzero coordinate p_k
  std::size_t k = 0;
  while (F::is_zero(p[k])) ++k;
  std::vector<Poly<F>> out;
  for (std::uint32_t i = 0; i < ring->nvars; ++i) {
    if (i == k) continue;
    auto coeff = p[i] * ring->field.inv(p[k]);
    out.push_back(Poly<F>::variable(ring, i) -
                  Poly<F>::variable(ring, static_cast<std::uint32_t>(k))
                      .scaled(coeff));
  }
  return out;
}

template <class F>
NodalCubic<F> build_segre_cubic_impl(const RingPtr<F>& ring) {
  using P = Poly<F>;
  P f = P::zero(ring), s = P::zero(ring);
  for (int i = 0; i < 5; ++i) {
    f = f + P::variable(ring, i).pow(3);
    s = s + P::variable(ring, i);
  }
  f = f - s.pow(3);

  NodalCubic<F> out;
  out.ring = ring;
  out.cubic = f;
  // nodes: choose 3 of 6 positions for +1 in the P^5 model, drop the last
  // coordinate; complementary sign patterns give the same projective point.
  std::vector<std::vector<typename F::Elem>> nodes;
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    if (!(mask & 1)) continue;  // fix the first sign: kills the +-1 duplicates
    std::vector<typename F::Elem> pt;
    for (int i = 0; i < 5; ++i)
      pt.push_back(ring->field.from_int((mask >> i) & 1 ? 1 : -1));
    nodes.push_back(std::move(pt));
  }
  out.nodes = std::move(nodes);
  out.node = {ring->field.from_int(1), ring->field.from_int(1),
              ring->field.from_int(1), ring->field.from_int(-1),
              ring->field.from_int(-1)};
  out.node_linears = linears_through(ring, out.node);
  auto h = hessian_at(f, out.node);
  out.hessian_rank = h.rank;
  out.kernel_is_node = h.kernel_is_point;
  return out;
}

}  // namespace

template <class F>
std::vector<typename F::Elem> gradient_at(
    const Poly<F>& f, const std::vector<typename F::Elem>& pt) {
  std::vector<typename F::Elem> g;
  for (std::uint32_t i = 0; i < f.ring()->nvars; ++i)
    g.push_back(f.derivative(i).evaluate(pt));
  return g;
}

template <class F>
HessianInfo<F> hessian_at(const Poly<F>& f,
                          const std::vector<typename F::Elem>& pt) {
  const std::uint32_t n = f.ring()->nvars;
  DenseMat<F> H(f.ring()->field, n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      H.at(i, j) = f.derivative(i).derivative(j).evaluate(pt);
  auto kernel = multipoly::nullspace(H);
  HessianInfo<F> info;
  info.rank = static_cast<int>(n - kernel.size());
  if (kernel.size() == 1) {
    // kernel vector proportional to pt?
    const auto& v = kernel[0];
    std::size_t k = 0;
    while (k < v.size() && F::is_zero(v[k])) ++k;
    std::size_t k2 = 0;
    while (k2 < pt.size() && F::is_zero(pt[k2])) ++k2;
    if (k == k2) {
      auto scale = pt[k] * f.ring()->field.inv(v[k]);
      info.kernel_is_point = true;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] * scale == pt[i])) info.kernel_is_point = false;
    }
  }
  return info;
}

template std::vector<Fp> gradient_at<PrimeField>(const FpPoly&,
                                                 const std::vector<Fp>&);
template std::vector<Rational> gradient_at<QQField>(
    const QQPoly&, const std::vector<Rational>&);
template HessianInfo<PrimeField> hessian_at<PrimeField>(const FpPoly&,
                                                        const std::vector<Fp>&);
template HessianInfo<QQField> hessian_at<QQField>(const QQPoly&,
                                                  const std::vector<Rational>&);

NodalCubic<PrimeField> build_segre_cubic_fp(std::uint32_t p) {
  return build_segre_cubic_impl<PrimeField>(fp_ring(5, p));
}

NodalCubic<QQField> build_segre_cubic_qq() {
  return build_segre_cubic_impl<QQField>(qq_ring(5));
}

NodalCubic<PrimeField> random_nodal_cubic(std::uint32_t p, std::uint64_t seed) {
  auto ring = fp_ring(5, p);
  const PrimeField& F = ring->field;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Rng rng(varieties::derive_seed(seed, "nodal-cubic/" + std::to_string(attempt)));
    Point node = rng.point(ring);
    auto ls = linears_through(ring, node);
    // random cubic in (l_i l_j) * coordinates: vanishes doubly at the node
    FpPoly f = FpPoly::zero(ring);
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i; j < ls.size(); ++j)
        for (std::uint32_t k = 0; k < 5; ++k)
          f = f + (ls[i] * ls[j] * FpPoly::variable(ring, k))
                      .scaled(rng.field_elem(F));
    if (f.is_zero()) continue;
    auto h = hessian_at(f, node);
    if (h.rank != 4 || !h.kernel_is_point) continue;
    NodalCubic<PrimeField> out;
    out.ring = ring;
    out.cubic = f;
    out.node = node;
    out.node_linears = ls;
    out.hessian_rank = h.rank;
    out.kernel_is_node = h.kernel_is_point;
    return out;
  }
  throw std::runtime_error("random_nodal_cubic: no ordinary double point found");
}

CremonaStep solve_inverse(const RationalMap& map, int inverse_degree, Rng& rng) {
  const PrimeField& F = map.src->field;
  const std::uint32_t n = map.src->nvars;
  auto monos = multipoly::monomials_of_degree(n, inverse_degree, map.src->order);
  const std::size_t m = monos.size();
  const std::size_t unknowns = n * m;  // n candidate forms

  // evaluation rows: c_j(y) x_k - c_k(y) x_j = 0 at y = map(x)
  const std::size_t points = 3 * unknowns / n + 40;
  std::vector<std::vector<Fp>> rows;
  std::size_t got = 0;
  while (got < points) {
    Point x = rng.point(map.src);
    auto y = varieties::apply_map(map, x);
    if (!y) continue;
    ++got;
    std::vector<Fp> mono_vals;
    {
      std::vector<std::vector<Fp>> pows(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        pows[i].push_back(F.one());
        for (int e = 1; e <= inverse_degree; ++e)
          pows[i].push_back(pows[i].back() * (*y)[i]);
      }
      for (const auto& mo : monos) {
        Fp v = F.one();
        for (std::uint32_t i = 0; i < n; ++i)
          if (mo.exponent(i)) v *= pows[i][mo.exponent(i)];
        mono_vals.push_back(v);
      }
    }
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = j + 1; k < n; ++k) {
        std::vector<Fp> row(unknowns, F.zero());
        for (std::size_t t = 0; t < m; ++t) {
          row[j * m + t] = mono_vals[t] * x[k];
          row[k * m + t] = F.zero() - mono_vals[t] * x[j];
        }
        rows.push_back(std::move(row));
      }
  }
  DenseMat<PrimeField> M(F, rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) M.at(r, c) = rows[r][c];
  auto kernel = multipoly::nullspace(std::move(M));
  if (kernel.empty())
    throw std::runtime_error("solve_inverse: no degree-" +
                             std::to_string(inverse_degree) + " candidate");

  CremonaStep out;
  out.map = map;
  const auto& v = kernel.front();
  std::vector<FpPoly> inv_forms;
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<FpPoly::Term> terms;
    for (std::size_t t = 0; t < m; ++t)
      if (!v[j * m + t].is_zero()) terms.push_back({monos[t], v[j * m + t]});
    inv_forms.push_back(FpPoly::from_terms(map.src, std::move(terms)));
  }
  out.inverse = varieties::make_map(map.src, inv_forms);

  // symbolic certificate: inverse(map(x)) = factor * x
  auto certify = [&](const RationalMap& a, const RationalMap& b,
                     FpPoly& factor_out) {
    std::vector<FpPoly> comp;
    for (const auto& c : b.forms) comp.push_back(c.compose(a.forms));
    // factor = comp_j / x_j for the first nonzero component, then check all
    int j0 = -1;
    for (std::size_t j = 0; j < comp.size(); ++j)
      if (!comp[j].is_zero()) {
        j0 = static_cast<int>(j);
        break;
      }
    if (j0 < 0) return false;
    auto q = try_exact_divide(comp[j0], FpPoly::variable(map.src, j0));
    if (!q) return false;
    for (std::size_t j = 0; j < comp.size(); ++j)
      if (comp[j] != *q * FpPoly::variable(map.src, static_cast<std::uint32_t>(j)))
        return false;
    factor_out = *q;
    return true;
  };
  out.certified = certify(map, out.inverse, out.factor) &&
                  certify(out.inverse, map, out.cofactor);
  if (!out.certified)
    throw std::runtime_error("solve_inverse: composition certificate failed");
  return out;
}

namespace {

/// Fit the common linear forms through a batch of points: nullspace of the
/// evaluation matrix. Returns (basis, dim).
std::pair<std::vector<FpPoly>, std::int64_t> fit_linear_forms(
    const FpRingPtr& ring, const std::vector<Point>& pts) {
  const PrimeField& F = ring->field;
  DenseMat<PrimeField> M(F, pts.size(), ring->nvars);
  for (std::size_t r = 0; r < pts.size(); ++r)
    for (std::uint32_t c = 0; c < ring->nvars; ++c) M.at(r, c) = pts[r][c];
  auto kernel = multipoly::nullspace(std::move(M));
  std::vector<FpPoly> forms;
  for (const auto& v : kernel) {
    std::vector<FpPoly::Term> terms;
    for (std::uint32_t c = 0; c < ring->nvars; ++c)
      if (!v[c].is_zero()) terms.push_back({Monomial::variable(c), v[c]});
    forms.push_back(FpPoly::from_terms(ring, std::move(terms)));
  }
  return {forms, static_cast<std::int64_t>(kernel.size())};
}

/// Express a quadratic form in the coordinates (l1..l4, mu) adapted to the
/// node; returns the form in the new variables. The mu-coefficients must
/// vanish when the quadric descends to the quotient by the node direction.
FpPoly rewrite_in_node_frame(const FpPoly& quad, const Point& node,
                             std::span<const FpPoly> ls) {
  const auto& ring = quad.ring();
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;
  // rows of B: the coefficient vectors of l1..l4 and mu = x_k / p_k
  DenseMat<PrimeField> B(F, n, n);
  for (std::size_t r = 0; r < ls.size(); ++r)
    for (std::uint32_t c = 0; c < n; ++c)
      B.at(r, c) = ls[r].coeff_of(Monomial::variable(c));
  std::size_t k = 0;
  while (node[k].is_zero()) ++k;
  B.at(n - 1, k) = node[k].inverse();
  // invert B by solving B X = I
  DenseMat<PrimeField> Aug(F, n, 2 * n);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < n; ++c) Aug.at(r, c) = B.at(r, c);
    Aug.at(r, n + r) = F.one();
  }
  if (multipoly::rref(Aug) != n)
    throw std::runtime_error("rewrite_in_node_frame: frame not invertible");
  // x = B^{-1} y : substitute x_i = sum_j Binv[i][j] y_j
  std::vector<FpPoly> images;
  for (std::uint32_t i = 0; i < n; ++i) {
    FpPoly xi = FpPoly::zero(ring);
    for (std::uint32_t j = 0; j < n; ++j)
      xi = xi + FpPoly::variable(ring, j).scaled(Aug.at(i, n + j));
    images.push_back(xi);
  }
  return quad.compose(images);
}

FpPoly hessian_quadric(const FpPoly& f, const Point& pt) {
  const auto& ring = f.ring();
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;
  Fp half = F.from_int(2).inverse();
  FpPoly h = FpPoly::zero(ring);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) {
      Fp hij = f.derivative(i).derivative(j).evaluate(pt);
      if (hij.is_zero()) continue;
      Fp c = (i == j) ? hij * half : hij;
      h = h + FpPoly::monomial_term(
                  ring, Monomial::variable(i) * Monomial::variable(j), c);
    }
  return h;
}

int quadric_rank(const FpPoly& q) {
  const auto& ring = q.ring();
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;
  DenseMat<PrimeField> M(F, n, n);
  Fp half = F.from_int(2).inverse();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Monomial m = Monomial::variable(i) * Monomial::variable(j);
      Fp c = q.coeff_of(m);
      M.at(i, j) = (i == j) ? c : c * half;
    }
  return static_cast<int>(multipoly::rank_of(std::move(M)));
}

}  // namespace

StepOne step1_cubic_cremona(const NodalCubic<PrimeField>& W, Rng& rng,
                            std::size_t samples) {
  const auto& ring = W.ring;
  const PrimeField& F = ring->field;
  StepOne out;

  // rank-4 quadric singular at the node: generic symmetric combination of
  // the products l_i l_j
  for (;;) {
    FpPoly g = FpPoly::zero(ring);
    DenseMat<PrimeField> A(F, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        Fp c = rng.field_elem(F);
        A.at(i, j) = c;
        A.at(j, i) = c;
        g = g + (W.node_linears[i] * W.node_linears[j]).scaled(c);
      }
    if (multipoly::rank_of(A) != 4) continue;
    out.g = g;
    out.g_rank = quadric_rank(g);
    if (out.g_rank == 4) break;
  }

  std::vector<FpPoly> forms;
  for (int i = 0; i < 4; ++i) forms.push_back(out.g * W.node_linears[i]);
  forms.push_back(W.cubic);
  RationalMap psi = varieties::make_map(ring, forms);
  // identify target coordinates with source coordinates (same P^4)
  psi.tgt = ring;

  out.step = solve_inverse(psi, 3, rng);

  // (a) images of W-points satisfy a common linear form
  {
    auto wpts = varieties::sample_hypersurface(W.cubic, samples, rng);
    std::vector<Point> images;
    for (const auto& x : wpts) {
      auto y = varieties::apply_map(psi, x);
      if (y) images.push_back(*y);
    }
    auto [basis, dim] = fit_linear_forms(ring, images);
    out.image_of_w_fit_dim = dim;
    if (dim >= 1) out.image_of_w = basis[0].monic();
  }

  // (b) images of Q-points coincide projectively, off the hyperplane
  {
    auto qpts = varieties::sample_hypersurface(out.g, samples, rng);
    std::optional<Point> img;
    out.q_image_single = true;
    for (const auto& x : qpts) {
      if (W.cubic.evaluate(x).is_zero()) continue;  // stay off the base locus
      auto y = varieties::apply_map(psi, x);
      if (!y) continue;
      if (!img)
        img = varieties::normalize_projective(*y);
      else if (!varieties::same_projective_point(*img, *y))
        out.q_image_single = false;
    }
    if (img) {
      out.image_of_q = *img;
      if (!out.image_of_w.is_zero())
        out.q_image_off_pw = !out.image_of_w.evaluate(*img).is_zero();
    }
  }

  // (c) the total transform of the node: the Hessian quadric rewritten in
  // the node frame; its pullback is exactly g^2 * (Hessian quadric).
  {
    FpPoly h = hessian_quadric(W.cubic, W.node);
    FpPoly htilde = rewrite_in_node_frame(h, W.node, W.node_linears);
    // no terms may involve the mu slot (last variable)
    for (const auto& t : htilde.terms())
      if (t.m.exponent(ring->nvars - 1) != 0)
        throw std::runtime_error("step1: node frame rewrite has a mu term");
    out.q_prime = htilde;
    out.q_prime_rank = quadric_rank(out.q_prime);
    if (!out.image_of_q.empty()) {
      // vertex of Q' = common zero of the partials; expect the image of Q
      auto grad = gradient_at(out.q_prime, out.image_of_q);
      out.q_prime_vertex_is_q_image = true;
      for (const auto& c : grad)
        if (!c.is_zero()) out.q_prime_vertex_is_q_image = false;
      if (!out.q_prime.evaluate(out.image_of_q).is_zero())
        out.q_prime_vertex_is_q_image = false;
    }
    FpPoly pullback = out.q_prime.compose(psi.forms);
    out.pullback_identity = (pullback == out.g * out.g * h);
    auto hgrad = gradient_at(h, W.node);
    out.cofactor_singular_at_node = true;
    for (const auto& c : hgrad)
      if (!c.is_zero()) out.cofactor_singular_at_node = false;
  }

  // inverse contracts Q' back to the node
  {
    auto qppts = varieties::sample_hypersurface(out.q_prime, 50, rng);
    out.inverse_contracts_qprime = true;
    int checked = 0;
    for (const auto& y : qppts) {
      auto x = varieties::apply_map(out.step.inverse, y);
      if (!x) continue;
      ++checked;
      if (!varieties::same_projective_point(*x, W.node))
        out.inverse_contracts_qprime = false;
    }
    if (checked == 0) out.inverse_contracts_qprime = false;
  }

  // factor structure: expect factor = unit * g^a * f^b with zero set in W u Q
  {
    FpPoly rest = out.step.factor;
    int ga = 0, fb = 0;
    for (;;) {
      auto q = try_exact_divide(rest, out.g);
      if (!q) break;
      rest = *q;
      ++ga;
    }
    for (;;) {
      auto q = try_exact_divide(rest, W.cubic);
      if (!q) break;
      rest = *q;
      ++fb;
    }
    out.factor_g_exp = ga;
    out.factor_f_exp = fb;
    out.factor_supported_on_w_union_q = (rest.degree() == 0);
    out.factor_g_part = rest;
    if (!out.factor_supported_on_w_union_q) {
      // sampled fallback: zeros of the factor lie on W u Q
      auto fpts = varieties::sample_hypersurface(out.step.factor, 100, rng);
      out.factor_supported_on_w_union_q = true;
      for (const auto& x : fpts)
        if (!W.cubic.evaluate(x).is_zero() && !out.g.evaluate(x).is_zero())
          out.factor_supported_on_w_union_q = false;
    }
  }
  return out;
}

StepTwo step2_quadric_cremona(const StepOne& s1, Rng& rng,
                              std::size_t samples) {
  const auto& ring = s1.step.map.src;
  const PrimeField& F = ring->field;
  StepTwo out;

  // sample q on P_W /\ Q', smooth on Q'
  {
    // parametrize the hyperplane P_W by four points, restrict Q'
    const FpPoly& pw = s1.image_of_w;
    std::uint32_t pivot = 0;
    while (pw.coeff_of(Monomial::variable(pivot)).is_zero()) ++pivot;
    auto sub = fp_ring(4, F.p);
    std::vector<FpPoly> images;  // P^3 -> P_W
    {
      std::uint32_t slot = 0;
      Fp inv_piv = pw.coeff_of(Monomial::variable(pivot)).inverse();
      std::vector<FpPoly> others(ring->nvars, FpPoly::zero(sub));
      for (std::uint32_t i = 0; i < ring->nvars; ++i)
        if (i != pivot) others[i] = FpPoly::variable(sub, slot++);
      FpPoly sum = FpPoly::zero(sub);
      for (std::uint32_t i = 0; i < ring->nvars; ++i) {
        if (i == pivot) continue;
        sum = sum + others[i].scaled(pw.coeff_of(Monomial::variable(i)));
      }
      for (std::uint32_t i = 0; i < ring->nvars; ++i)
        images.push_back(i == pivot ? sum.scaled(F.zero() - inv_piv) : others[i]);
    }
    FpPoly qp_restricted = s1.q_prime.compose(images);
    auto slice_pts = varieties::sample_hypersurface(qp_restricted, 50, rng);
    bool found = false;
    for (const auto& sp : slice_pts) {
      Point q(ring->nvars, F.zero());
      for (std::uint32_t i = 0; i < ring->nvars; ++i)
        q[i] = images[i].evaluate(sp);
      auto grad = gradient_at(s1.q_prime, q);
      bool smooth = false;
      for (const auto& c : grad)
        if (!c.is_zero()) smooth = true;
      if (!smooth) continue;
      out.q = varieties::normalize_projective(q);
      found = true;
      break;
    }
    if (!found) throw std::runtime_error("step2: no smooth point on P_W /\\ Q'");
  }

  // tangent hyperplane and the linear forms through q
  auto grad = gradient_at(s1.q_prime, out.q);
  FpPoly hp = FpPoly::zero(ring);
  for (std::uint32_t i = 0; i < ring->nvars; ++i)
    hp = hp + FpPoly::variable(ring, i).scaled(grad[i]);
  out.h_prime = hp.monic();
  auto ls = linears_through(ring, out.q);

  std::vector<FpPoly> forms;
  for (const auto& l : ls) forms.push_back(out.h_prime * l);
  forms.push_back(s1.q_prime);
  RationalMap psi = varieties::make_map(ring, forms);
  psi.tgt = ring;
  out.step = solve_inverse(psi, 2, rng);

  // image of Q' lies in a hyperplane P1
  {
    auto pts = varieties::sample_hypersurface(s1.q_prime, samples, rng);
    std::vector<Point> images;
    for (const auto& x : pts) {
      auto y = varieties::apply_map(psi, x);
      if (y) images.push_back(*y);
    }
    auto [basis, dim] = fit_linear_forms(ring, images);
    out.p1_fit_dim = dim;
    if (dim >= 1) out.p1 = basis[0].monic();
  }

  // total transform of the base locus: the hyperplane carrying h' in the
  // l'-frame, h' = sum lambda_i l'_i => P2 = V(sum lambda_i y_i)
  {
    DenseMat<PrimeField> M(F, ring->nvars, ls.size() + 1);
    for (std::uint32_t r = 0; r < ring->nvars; ++r) {
      for (std::size_t c = 0; c < ls.size(); ++c)
        M.at(r, c) = ls[c].coeff_of(Monomial::variable(r));
      M.at(r, ls.size()) = out.h_prime.coeff_of(Monomial::variable(r));
    }
    auto kernel = multipoly::nullspace(std::move(M));
    if (kernel.size() != 1)
      throw std::runtime_error("step2: tangent form not in the q-frame");
    const auto& v = kernel[0];
    Fp scale = F.zero() - v[ls.size()].inverse();
    FpPoly p2 = FpPoly::zero(ring);
    for (std::size_t c = 0; c < ls.size(); ++c)
      p2 = p2 + FpPoly::variable(ring, static_cast<std::uint32_t>(c))
                    .scaled(v[c] * scale);
    out.p2 = p2.monic();
    // verify on limit points of the base-locus surface V(h') /\ V(q'):
    // z on the surface, direction v: limit = (h'(v) l'_i(z), grad q'(z).v)
    auto hp_pts = varieties::sample_hypersurface(out.h_prime, 4 * samples, rng);
    int checked = 0;
    out.base_locus_transform_on_p2 = true;
    for (const auto& z : hp_pts) {
      if (!s1.q_prime.evaluate(z).is_zero()) continue;
      Point v = rng.point(ring);
      Point limit(ring->nvars, F.zero());
      Fp hv = out.h_prime.evaluate(v);
      for (std::size_t i = 0; i < ls.size(); ++i)
        limit[i] = hv * ls[i].evaluate(z);
      auto gq = gradient_at(s1.q_prime, z);
      Fp last = F.zero();
      for (std::uint32_t i = 0; i < ring->nvars; ++i) last += gq[i] * v[i];
      limit[ring->nvars - 1] = last;
      if (varieties::is_zero_point(limit)) continue;
      ++checked;
      if (!out.p2.evaluate(limit).is_zero())
        out.base_locus_transform_on_p2 = false;
    }
    if (checked < 10) out.base_locus_transform_on_p2 = false;
  }

  // image of P_W is a hyperplane P3
  {
    std::vector<Point> images;
    std::size_t got = 0;
    while (got < samples) {
      Point x = rng.point(ring);
      // project x onto P_W: adjust the pivot coordinate
      std::uint32_t pivot = 0;
      while (s1.image_of_w.coeff_of(Monomial::variable(pivot)).is_zero())
        ++pivot;
      Fp rest = F.zero();
      for (std::uint32_t i = 0; i < ring->nvars; ++i)
        if (i != pivot)
          rest += s1.image_of_w.coeff_of(Monomial::variable(i)) * x[i];
      x[pivot] =
          (F.zero() - rest) *
          s1.image_of_w.coeff_of(Monomial::variable(pivot)).inverse();
      if (varieties::is_zero_point(x)) continue;
      auto y = varieties::apply_map(psi, x);
      if (!y) continue;
      images.push_back(*y);
      ++got;
    }
    auto [basis, dim] = fit_linear_forms(ring, images);
    out.p3_fit_dim = dim;
    if (dim >= 1) out.p3 = basis[0].monic();
  }

  // Q'-samples map into P1 (restatement of the fitted claim on fresh points)
  {
    auto pts = varieties::sample_hypersurface(s1.q_prime, 50, rng);
    out.qprime_samples_map_to_p1 = !out.p1.is_zero();
    for (const auto& x : pts) {
      auto y = varieties::apply_map(psi, x);
      if (!y) continue;
      if (!out.p1.evaluate(*y).is_zero()) out.qprime_samples_map_to_p1 = false;
    }
  }

  // factor structure: supported on P' u P_W u Q'
  {
    FpPoly rest = out.step.factor;
    int ha = 0, pa = 0, qa = 0;
    for (;;) {
      auto q = try_exact_divide(rest, out.h_prime);
      if (!q) break;
      rest = *q;
      ++ha;
    }
    for (;;) {
      auto q = try_exact_divide(rest, s1.image_of_w);
      if (!q) break;
      rest = *q;
      ++pa;
    }
    for (;;) {
      auto q = try_exact_divide(rest, s1.q_prime);
      if (!q) break;
      rest = *q;
      ++qa;
    }
    out.factor_h_exp = ha;
    out.factor_pw_exp = pa;
    out.factor_q_exp = qa;
    out.factor_supported_on_three = (rest.degree() == 0);
    if (!out.factor_supported_on_three) {
      auto fpts = varieties::sample_hypersurface(out.step.factor, 100, rng);
      out.factor_supported_on_three = true;
      for (const auto& x : fpts)
        if (!out.h_prime.evaluate(x).is_zero() &&
            !s1.image_of_w.evaluate(x).is_zero() &&
            !s1.q_prime.evaluate(x).is_zero())
          out.factor_supported_on_three = false;
    }
  }
  return out;
}

template <class F>
CylinderChart<F> cylinder_chart(std::span<const Poly<F>> planes) {
  if (planes.size() != 3)
    throw std::invalid_argument("cylinder_chart: need three hyperplanes");
  const auto& ring = planes[0].ring();
  const auto& field = ring->field;
  const std::uint32_t n = ring->nvars;
  if (n != 5) throw std::invalid_argument("cylinder_chart: ambient must be P^4");

  DenseMat<F> M(field, 3, n);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::uint32_t c = 0; c < n; ++c)
      M.at(r, c) = planes[r].coeff_of(Monomial::variable(c));
  DenseMat<F> Mc = M;
  std::size_t rank = multipoly::rref(Mc);
  if (rank < 2)
    throw std::invalid_argument("cylinder_chart: degenerate configuration");

  CylinderChart<F> chart;
  chart.ring = ring;
  chart.rank = static_cast<int>(rank);
  chart.planes.assign(planes.begin(), planes.end());

  auto var_form = [&](std::uint32_t i) { return Poly<F>::variable(ring, i); };
  auto zero3 = [&]() {
    return std::array<typename F::Elem, 3>{field.zero(), field.zero(),
                                           field.zero()};
  };

  if (rank == 3) {
    chart.proj = {planes[0], planes[1], planes[2]};
    for (int i = 0; i < 3; ++i) {
      auto line = zero3();
      line[i] = field.one();
      chart.base_lines.push_back(line);
    }
  } else {
    // pencil: p3 = alpha p1 + beta p2; chart through an extra coordinate slot
    DenseMat<F> S(field, 3, 3);  // solve [p1 p2 | p3] on the pivot columns
    // find alpha, beta with alpha p1 + beta p2 = p3 via least structure:
    // use the first two independent coordinates of (p1, p2)
    std::vector<std::uint32_t> cols;
    for (std::uint32_t c = 0; c < n && cols.size() < 2; ++c) {
      DenseMat<F> T(field, 2, cols.size() + 1);
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j)
          T.at(r, j) = M.at(r, cols[j]);
        T.at(r, cols.size()) = M.at(r, c);
      }
      if (multipoly::rank_of(T) == cols.size() + 1) cols.push_back(c);
    }
    DenseMat<F> T(field, 2, 3);
    for (std::size_t r = 0; r < 2; ++r) {
      T.at(r, 0) = M.at(0, cols[r]);
      T.at(r, 1) = M.at(1, cols[r]);
      T.at(r, 2) = M.at(2, cols[r]);
    }
    multipoly::rref(T);
    auto alpha = T.at(0, 2), beta = T.at(1, 2);
    // auxiliary slot: first coordinate independent of span(p1, p2)
    std::uint32_t slot = 0;
    for (std::uint32_t c = 0; c < n; ++c) {
      DenseMat<F> T2(field, 3, n);
      for (std::uint32_t cc = 0; cc < n; ++cc) {
        T2.at(0, cc) = M.at(0, cc);
        T2.at(1, cc) = M.at(1, cc);
        T2.at(2, cc) = field.zero();
      }
      T2.at(2, c) = field.one();
      if (multipoly::rank_of(T2) == 3) {
        slot = c;
        break;
      }
    }
    chart.proj = {planes[0], planes[1], var_form(slot)};
    auto l1 = zero3(), l2 = zero3(), l3 = zero3();
    l1[0] = field.one();
    l2[1] = field.one();
    l3[0] = alpha;
    l3[1] = beta;
    chart.base_lines = {l1, l2, l3};
  }

  // two fiber coordinates completing proj to a frame of P^4
  {
    DenseMat<F> E(field, 5, n);
    for (int r = 0; r < 3; ++r)
      for (std::uint32_t c = 0; c < n; ++c)
        E.at(r, c) = chart.proj[r].coeff_of(Monomial::variable(c));
    std::size_t have = 3;
    for (std::uint32_t c = 0; c < n && have < 5; ++c) {
      for (std::uint32_t cc = 0; cc < n; ++cc) E.at(have, cc) = field.zero();
      E.at(have, c) = field.one();
      DenseMat<F> Ec = E;
      Ec.rows = have + 1;
      if (multipoly::rref(Ec) == have + 1) {
        chart.fiber.push_back(var_form(c));
        ++have;
      }
    }
    if (have != 5) throw std::runtime_error("cylinder_chart: frame defect");
    // inverse matrix of the 5x5 frame
    DenseMat<F> Aug(field, 5, 10);
    for (std::uint32_t r = 0; r < 5; ++r) {
      const Poly<F>& form = r < 3 ? chart.proj[r] : chart.fiber[r - 3];
      for (std::uint32_t c = 0; c < n; ++c)
        Aug.at(r, c) = form.coeff_of(Monomial::variable(c));
      Aug.at(r, 5 + r) = field.one();
    }
    if (multipoly::rref(Aug) != 5)
      throw std::runtime_error("cylinder_chart: frame not invertible");
    chart.inverse_matrix.assign(5, std::vector<typename F::Elem>(5, field.zero()));
    for (std::uint32_t r = 0; r < 5; ++r)
      for (std::uint32_t c = 0; c < 5; ++c)
        chart.inverse_matrix[r][c] = Aug.at(r, 5 + c);
  }
  return chart;
}

template <class F>
ChartImage<F> chart_forward(const CylinderChart<F>& chart,
                            const std::vector<typename F::Elem>& x) {
  ChartImage<F> out;
  for (int i = 0; i < 3; ++i) out.base.push_back(chart.proj[i].evaluate(x));
  auto w0 = out.base[0];
  if (F::is_zero(w0))
    throw std::domain_error("chart_forward: point not in the open set");
  auto inv = chart.ring->field.inv(w0);
  out.u = chart.fiber[0].evaluate(x) * inv;
  out.v = chart.fiber[1].evaluate(x) * inv;
  return out;
}

template <class F>
std::vector<typename F::Elem> chart_inverse(const CylinderChart<F>& chart,
                                            const ChartImage<F>& w) {
  // solve frame * x = (w0, w1, w2, u w0, v w0)
  std::vector<typename F::Elem> rhs = {w.base[0], w.base[1], w.base[2],
                                       w.u * w.base[0], w.v * w.base[0]};
  std::vector<typename F::Elem> x;
  for (std::uint32_t r = 0; r < 5; ++r) {
    auto acc = chart.ring->field.zero();
    for (std::uint32_t c = 0; c < 5; ++c)
      acc += chart.inverse_matrix[r][c] * rhs[c];
    x.push_back(acc);
  }
  return x;
}

template <class F>
bool base_point_in_z(const CylinderChart<F>& chart,
                     const std::vector<typename F::Elem>& base) {
  for (const auto& line : chart.base_lines) {
    auto acc = chart.ring->field.zero();
    for (int i = 0; i < 3; ++i) acc += line[i] * base[i];
    if (F::is_zero(acc)) return false;
  }
  return true;
}

template CylinderChart<PrimeField> cylinder_chart<PrimeField>(
    std::span<const FpPoly>);
template CylinderChart<QQField> cylinder_chart<QQField>(std::span<const QQPoly>);
template ChartImage<PrimeField> chart_forward<PrimeField>(
    const CylinderChart<PrimeField>&, const std::vector<Fp>&);
template ChartImage<QQField> chart_forward<QQField>(
    const CylinderChart<QQField>&, const std::vector<Rational>&);
template std::vector<Fp> chart_inverse<PrimeField>(
    const CylinderChart<PrimeField>&, const ChartImage<PrimeField>&);
template std::vector<Rational> chart_inverse<QQField>(
    const CylinderChart<QQField>&, const ChartImage<QQField>&);
template bool base_point_in_z<PrimeField>(const CylinderChart<PrimeField>&,
                                          const std::vector<Fp>&);
template bool base_point_in_z<QQField>(const CylinderChart<QQField>&,
                                       const std::vector<Rational>&);

Pipeline full_pipeline(const NodalCubic<PrimeField>& W, const Point& x,
                       std::uint64_t seed) {
  const auto& ring = W.ring;
  if (W.cubic.evaluate(x).is_zero())
    throw std::invalid_argument("full_pipeline: the point lies on the cubic");

  for (int attempt = 0; attempt < 24; ++attempt) {
    Rng rng(varieties::derive_seed(seed, "pipeline/" + std::to_string(attempt)));
    Pipeline out;
    out.q_reseeds = attempt;
    out.s1 = step1_cubic_cremona(W, rng);
    if (out.s1.g.evaluate(x).is_zero()) continue;  // x on Q: vary the quadric
    out.s2 = step2_quadric_cremona(out.s1, rng);

    // P = pullback of the tangent hyperplane: Psi^*(h') = g * (linear)
    FpPoly pullback = out.s2.h_prime.compose(out.s1.step.map.forms);
    auto lin = try_exact_divide(pullback, out.s1.g);
    if (!lin || lin->degree() != 1) continue;
    out.p_pullback = lin->monic();
    out.p_is_hyperplane = true;
    if (out.p_pullback.evaluate(x).is_zero()) continue;  // vary q

    out.x_in_u = !W.cubic.evaluate(x).is_zero() &&
                 !out.s1.g.evaluate(x).is_zero() &&
                 !out.p_pullback.evaluate(x).is_zero();
    out.removed_degrees = {out.p_pullback.degree(), out.s1.g.degree(),
                           W.cubic.degree()};

    std::vector<FpPoly> planes = {out.s2.p1, out.s2.p2, out.s2.p3};
    {
      DenseMat<PrimeField> M(ring->field, 3, 5);
      for (int r = 0; r < 3; ++r)
        for (std::uint32_t c = 0; c < 5; ++c)
          M.at(r, c) = planes[r].coeff_of(Monomial::variable(c));
      if (multipoly::rank_of(M) != 3) continue;  // degenerate; reseed
    }
    out.chart = cylinder_chart<PrimeField>(planes);

    // push x through both maps, chart it, and come back
    auto y1 = varieties::apply_map(out.s1.step.map, x);
    if (!y1) continue;
    auto y2 = varieties::apply_map(out.s2.step.map, *y1);
    if (!y2) continue;
    bool off_planes = true;
    for (const auto& pl : planes)
      if (pl.evaluate(*y2).is_zero()) off_planes = false;
    if (!off_planes) continue;

    auto img = chart_forward(out.chart, *y2);
    if (!base_point_in_z(out.chart, img.base)) continue;
    auto back = chart_inverse(out.chart, img);
    out.chart_roundtrip_x = varieties::same_projective_point(back, *y2);

    auto b1 = varieties::apply_map(out.s2.step.inverse, back);
    if (!b1) continue;
    auto b0 = varieties::apply_map(out.s1.step.inverse, *b1);
    if (!b0) continue;
    out.full_roundtrip_x = varieties::same_projective_point(*b0, x);
    return out;
  }
  throw std::runtime_error("full_pipeline: no admissible seed found");
}

CountCheck coordinate_model_count(std::uint32_t p) {
  PrimeField F(p);
  CountCheck out;
  // |U|: canonical representatives of P^4, first nonzero coordinate = 1
  for (int lead = 0; lead < 5; ++lead) {
    std::vector<std::uint32_t> rest(4 - lead, 0);
    for (;;) {
      // x0, x1 from the representative
      std::uint32_t coords[5] = {0, 0, 0, 0, 0};
      coords[lead] = 1;
      for (std::size_t i = 0; i < rest.size(); ++i)
        coords[lead + 1 + i] = rest[i];
      std::uint32_t x0 = coords[0], x1 = coords[1];
      if (x0 != 0 && x1 != 0 && (x0 + x1) % p != 0) ++out.u_count;
      // odometer
      bool carry = true;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (++rest[i] < p) {
          carry = false;
          break;
        }
        rest[i] = 0;
      }
      if (carry) break;
    }
  }
  // |Z|: P^2 minus the three concurrent lines
  for (int lead = 0; lead < 3; ++lead) {
    std::vector<std::uint32_t> rest(2 - lead, 0);
    for (;;) {
      std::uint32_t coords[3] = {0, 0, 0};
      coords[lead] = 1;
      for (std::size_t i = 0; i < rest.size(); ++i)
        coords[lead + 1 + i] = rest[i];
      std::uint32_t w0 = coords[0], w1 = coords[1];
      if (w0 != 0 && w1 != 0 && (w0 + w1) % p != 0) ++out.z_count;
      bool carry = true;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (++rest[i] < p) {
          carry = false;
          break;
        }
        rest[i] = 0;
      }
      if (carry) break;
      if (rest.empty()) break;
    }
  }
  out.matches =
      out.u_count == out.z_count * static_cast<std::int64_t>(p) * p;
  return out;
}

}  // namespace mkv::cremona
