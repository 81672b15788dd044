#include "varieties/sampling.hpp"

#include <algorithm>

#include "groebner/buchberger.hpp"

namespace mkv::varieties {

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::uint64_t z = base ^ h;  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Fp Rng::field_elem(const PrimeField& F, bool nonzero) {
  for (;;) {
    Fp x = F.from_int(static_cast<std::int64_t>(eng_() % F.p));
    if (!nonzero || !x.is_zero()) return x;
  }
}

Point Rng::point(const FpRingPtr& ring, bool nonzero) {
  for (;;) {
    Point p;
    for (std::uint32_t i = 0; i < ring->nvars; ++i)
      p.push_back(field_elem(ring->field));
    if (!nonzero || !is_zero_point(p)) return p;
  }
}

bool is_zero_point(const Point& p) {
  for (const auto& c : p)
    if (!c.is_zero()) return false;
  return true;
}

Point normalize_projective(Point p) {
  for (const auto& c : p) {
    if (!c.is_zero()) {
      Fp inv = c.inverse();
      for (auto& x : p) x *= inv;
      return p;
    }
  }
  return p;
}

bool same_projective_point(const Point& a, const Point& b) {
  return normalize_projective(a) == normalize_projective(b);
}

Fp evaluate_at(const FpPoly& f, const Point& p) { return f.evaluate(p); }

bool all_vanish(std::span<const FpPoly> polys, const Point& p) {
  for (const auto& f : polys)
    if (!f.evaluate(p).is_zero()) return false;
  return true;
}

FpPoly restrict_to_line(const FpPoly& f, const Point& a, const Point& b) {
  auto line_ring = fp_ring(2, f.ring()->field.p);
  FpPoly s = FpPoly::variable(line_ring, 0), t = FpPoly::variable(line_ring, 1);
  std::vector<FpPoly> images;
  for (std::uint32_t i = 0; i < f.ring()->nvars; ++i)
    images.push_back(s.scaled(a[i]) + t.scaled(b[i]));
  return f.compose(images);
}

std::vector<std::pair<Fp, Fp>> binary_form_roots(const FpPoly& bf) {
  const PrimeField& F = bf.ring()->field;
  std::vector<std::pair<Fp, Fp>> roots;
  if (bf.is_zero()) return roots;
  // dehomogenize at s = 1 and scan t
  std::vector<Fp> pt = {F.one(), F.zero()};
  for (std::uint64_t t = 0; t < F.p; ++t) {
    pt[1] = F.from_int(static_cast<std::int64_t>(t));
    if (bf.evaluate(pt).is_zero()) roots.push_back({F.one(), pt[1]});
  }
  // the point at infinity [0 : 1]
  pt[0] = F.zero();
  pt[1] = F.one();
  if (bf.evaluate(pt).is_zero()) roots.push_back({F.zero(), F.one()});
  return roots;
}

std::vector<Point> sample_hypersurface(const FpPoly& f, std::size_t count,
                                       Rng& rng, std::size_t max_tries) {
  std::vector<Point> out;
  for (std::size_t tries = 0; tries < max_tries && out.size() < count; ++tries) {
    Point a = rng.point(f.ring()), b = rng.point(f.ring());
    FpPoly bf = restrict_to_line(f, a, b);
    if (bf.is_zero()) continue;  // line inside the hypersurface; resample
    for (const auto& [s, t] : binary_form_roots(bf)) {
      Point p(f.ring()->nvars, f.ring()->field.zero());
      for (std::uint32_t i = 0; i < f.ring()->nvars; ++i)
        p[i] = a[i] * s + b[i] * t;
      if (is_zero_point(p)) continue;
      p = normalize_projective(std::move(p));
      if (std::find(out.begin(), out.end(), p) == out.end()) {
        out.push_back(std::move(p));
        if (out.size() == count) break;
      }
    }
  }
  if (out.size() < count)
    throw std::runtime_error("sample_hypersurface: sampling failed");
  return out;
}

std::vector<Point> sample_parametrized(std::span<const FpPoly> forms,
                                       std::size_t count, Rng& rng,
                                       std::size_t max_tries) {
  std::vector<Point> out;
  const auto& ring = forms[0].ring();
  for (std::size_t tries = 0; tries < max_tries && out.size() < count; ++tries) {
    Point u = rng.point(ring);
    Point img;
    img.reserve(forms.size());
    for (const auto& f : forms) img.push_back(f.evaluate(u));
    if (is_zero_point(img)) continue;  // base locus
    out.push_back(std::move(img));
  }
  if (out.size() < count)
    throw std::runtime_error("sample_parametrized: sampling failed");
  return out;
}

namespace {

/// All F_p solutions of an affine system in a small ring, by lex elimination.
void affine_solve(const FpRingPtr& ring, std::vector<FpPoly> gens,
                  std::vector<Point>& out) {
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const FpPoly& g) { return g.is_zero(); }),
             gens.end());
  if (gens.empty()) {
    if (n > 0)
      throw std::runtime_error("affine_solve: positive-dimensional fiber");
    out.push_back({});
    return;
  }
  for (const auto& g : gens)
    if (g.degree() == 0) return;  // inconsistent
  if (n == 1) {
    // roots common to all generators
    for (std::uint64_t v = 0; v < F.p; ++v) {
      Point p = {F.from_int(static_cast<std::int64_t>(v))};
      if (all_vanish(gens, p)) out.push_back(p);
    }
    return;
  }
  // eliminate variables x0..x_{n-2}; lex keeps x_{n-1} last
  auto lex_ring = multipoly::make_ring(n, F, MonomialOrder::lex());
  std::vector<FpPoly> lex_gens;
  for (const auto& g : gens) lex_gens.push_back(g.reordered(MonomialOrder::lex()));
  auto gb = groebner::buchberger(lex_ring, lex_gens);
  FpPoly uni = FpPoly::zero(lex_ring);
  for (const auto& g : gb) {
    bool only_last = true;
    for (const auto& t : g.terms())
      for (std::uint32_t i = 0; i + 1 < n; ++i)
        if (t.m.exponent(i)) only_last = false;
    if (only_last && !g.is_zero()) {
      uni = g;
      break;  // reduced lex basis: the first univariate generator suffices
    }
  }
  if (uni.is_zero())
    throw std::runtime_error("affine_solve: no univariate eliminant");
  std::vector<Fp> roots;
  {
    Point p(n, F.zero());
    for (std::uint64_t v = 0; v < F.p; ++v) {
      p[n - 1] = F.from_int(static_cast<std::int64_t>(v));
      if (uni.evaluate(p).is_zero()) roots.push_back(p[n - 1]);
    }
  }
  auto sub_ring = fp_ring(n - 1, F.p);
  for (const auto& r : roots) {
    // substitute x_{n-1} = r into all generators
    std::vector<FpPoly> sub;
    std::vector<FpPoly> images;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
      images.push_back(FpPoly::variable(sub_ring, i));
    images.push_back(FpPoly::constant(sub_ring, r));
    for (const auto& g : gens) sub.push_back(g.compose(images));
    std::vector<Point> partial;
    affine_solve(sub_ring, std::move(sub), partial);
    for (auto& q : partial) {
      q.push_back(r);
      out.push_back(q);
    }
  }
}

}  // namespace

std::vector<Point> projective_points_of(const FpRingPtr& ring,
                                        std::span<const FpPoly> gens) {
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;
  std::vector<Point> out;
  for (std::uint32_t chart = 0; chart < n; ++chart) {
    // x_0 = .. = x_{chart-1} = 0, x_chart = 1, unknowns x_{chart+1}..
    std::uint32_t rest = n - chart - 1;
    std::vector<Point> partial;
    if (rest == 0) {
      Point p(n, F.zero());
      p[chart] = F.one();
      if (all_vanish(gens, p)) out.push_back(p);
      continue;
    }
    auto sub_ring = fp_ring(rest, F.p);
    std::vector<FpPoly> images;
    for (std::uint32_t i = 0; i < chart; ++i)
      images.push_back(FpPoly::zero(sub_ring));
    images.push_back(FpPoly::constant(sub_ring, F.one()));
    for (std::uint32_t i = 0; i < rest; ++i)
      images.push_back(FpPoly::variable(sub_ring, i));
    std::vector<FpPoly> sub;
    for (const auto& g : gens) sub.push_back(g.compose(images));
    affine_solve(sub_ring, std::move(sub), partial);
    for (auto& q : partial) {
      Point p(n, F.zero());
      p[chart] = F.one();
      for (std::uint32_t i = 0; i < rest; ++i) p[chart + 1 + i] = q[i];
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Point> sample_subvariety(const groebner::IdealHandle& I,
                                     int proj_dim, std::size_t count, Rng& rng,
                                     std::size_t max_tries) {
  const auto& ring = I.ring();
  const PrimeField& F = ring->field;
  const std::uint32_t n = ring->nvars;
  const std::uint32_t sub_vars = n - static_cast<std::uint32_t>(proj_dim);
  if (proj_dim <= 0 || sub_vars < 2 || sub_vars > n)
    throw std::invalid_argument("sample_subvariety: bad dimension");
  std::vector<Point> out;
  auto sub_ring = fp_ring(sub_vars, F.p);
  for (std::size_t tries = 0; tries < max_tries && out.size() < count; ++tries) {
    // random complementary subspace spanned by sub_vars points
    std::vector<Point> span;
    for (std::uint32_t k = 0; k < sub_vars; ++k) span.push_back(rng.point(ring));
    std::vector<FpPoly> images;
    for (std::uint32_t i = 0; i < n; ++i) {
      FpPoly coord = FpPoly::zero(sub_ring);
      for (std::uint32_t k = 0; k < sub_vars; ++k)
        coord = coord + FpPoly::variable(sub_ring, k).scaled(span[k][i]);
      images.push_back(coord);
    }
    std::vector<FpPoly> restricted;
    bool degenerate = false;
    for (const auto& g : I.gens()) {
      FpPoly r = g.compose(images);
      if (r.is_zero()) degenerate = true;
      restricted.push_back(r);
    }
    if (degenerate) continue;  // subspace hits the variety badly; resample
    std::vector<Point> slice;
    try {
      slice = projective_points_of(sub_ring, restricted);
    } catch (const std::runtime_error&) {
      continue;  // degenerate slice; resample
    }
    for (const auto& q : slice) {
      Point p(n, F.zero());
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k < sub_vars; ++k) p[i] += span[k][i] * q[k];
      if (is_zero_point(p)) continue;
      p = normalize_projective(std::move(p));
      if (!all_vanish(I.gens(), p)) continue;
      if (std::find(out.begin(), out.end(), p) == out.end()) {
        out.push_back(std::move(p));
        if (out.size() == count) break;
      }
    }
  }
  if (out.size() < count)
    throw std::runtime_error("sample_subvariety: sampling failed");
  return out;
}

}  // namespace mkv::varieties
