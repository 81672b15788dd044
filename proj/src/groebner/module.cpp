#include "groebner/module.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "multipoly/macaulay.hpp"

namespace mkv::groebner {

ModPoly ModPoly::from_terms(const ModuleContext& ctx, std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ctx.cmp(a.t, b.t) > 0;
  });
  ModPoly p;
  for (auto& t : terms) {
    if (t.c.is_zero()) continue;
    if (!p.terms_.empty() && p.terms_.back().t == t.t) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

ModPoly ModPoly::embed(const ModuleContext& ctx, const FpPoly& f,
                       std::uint32_t comp) {
  std::vector<Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) terms.push_back({{comp, t.m}, t.c});
  return from_terms(ctx, std::move(terms));
}

ModPoly ModPoly::unit(const ModuleContext& ctx, std::uint32_t comp) {
  std::vector<Term> terms = {{{comp, Monomial()}, ctx.ring->field.one()}};
  return from_terms(ctx, std::move(terms));
}

const ModPoly::Term& ModPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading of zero module element");
  return terms_.front();
}

bool ModPoly::is_homogeneous(const ModuleContext& ctx) const {
  if (terms_.empty()) return true;
  int d = ctx.degree(terms_.front().t);
  for (const auto& t : terms_)
    if (ctx.degree(t.t) != d) return false;
  return true;
}

int ModPoly::degree(const ModuleContext& ctx) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, ctx.degree(t.t));
  return d;
}

FpPoly ModPoly::component(const ModuleContext& ctx, std::uint32_t comp) const {
  std::vector<FpPoly::Term> terms;
  for (const auto& t : terms_)
    if (t.t.comp == comp) terms.push_back({t.t.m, t.c});
  return FpPoly::from_terms(ctx.ring, std::move(terms));
}

std::uint32_t ModPoly::min_comp(const ModuleContext& ctx) const {
  std::uint32_t m = ctx.ncomps;
  for (const auto& t : terms_) m = std::min(m, t.t.comp);
  return m;
}

ModPoly ModPoly::scaled(const Fp& c) const {
  ModPoly r;
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.t, t.c * c});
  return r;
}

ModPoly ModPoly::times_term(const Monomial& m, const Fp& c) const {
  ModPoly r;
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({{t.t.comp, t.t.m * m}, t.c * c});
  return r;  // order is multiplicative within a component
}

ModPoly ModPoly::add(const ModuleContext& ctx, const ModPoly& a, const ModPoly& b) {
  ModPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = ctx.cmp(a.terms_[i].t, b.terms_[j].t);
    if (c > 0) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      Fp s = a.terms_[i].c + b.terms_[j].c;
      if (!s.is_zero()) r.terms_.push_back({a.terms_[i].t, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

ModPoly ModPoly::sub(const ModuleContext& ctx, const ModPoly& a, const ModPoly& b) {
  return add(ctx, a, b.scaled(ctx.ring->field.from_int(-1)));
}

ModPoly module_normal_form(const ModuleContext& ctx, const ModPoly& f,
                           std::span<const ModPoly> basis) {
  std::vector<ModPoly::Term> remainder;
  ModPoly w = f;
  while (!w.is_zero()) {
    const auto& lt = w.leading();
    int found = -1;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto& blt = basis[k].leading();
      if (blt.t.comp == lt.t.comp && blt.t.m.divides(lt.t.m)) {
        found = static_cast<int>(k);
        break;
      }
    }
    if (found < 0) {
      remainder.push_back(lt);
      // drop leading term
      std::vector<ModPoly::Term> rest(w.terms().begin() + 1, w.terms().end());
      w = ModPoly::from_terms(ctx, std::move(rest));
      continue;
    }
    const ModPoly& g = basis[found];
    Fp c = lt.c / g.leading().c;
    w = ModPoly::sub(ctx, w, g.times_term(lt.t.m / g.leading().t.m, c));
  }
  return ModPoly::from_terms(ctx, std::move(remainder));
}

namespace {

struct MPair {
  std::uint32_t i, j;
  ModTerm lcm;
  int sugar;
};

}  // namespace

std::vector<ModPoly> module_buchberger(const ModuleContext& ctx,
                                       std::vector<ModPoly> gens) {
  std::vector<ModPoly> G;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    G.push_back(g.scaled(ctx.ring->field.inv(g.leading().c)));
  }
  if (G.empty()) return {};

  std::vector<int> sugar;
  for (const auto& g : G) sugar.push_back(g.degree(ctx));

  std::vector<MPair> queue;
  std::set<std::pair<std::uint32_t, std::uint32_t>> done;
  auto push_pairs_for = [&](std::uint32_t t) {
    for (std::uint32_t i = 0; i < t; ++i) {
      const auto& a = G[i].leading().t;
      const auto& b = G[t].leading().t;
      if (a.comp != b.comp) continue;
      ModTerm L{a.comp, Monomial::lcm(a.m, b.m)};
      int sug = std::max(
          sugar[i] + static_cast<int>(L.m.degree() - a.m.degree()),
          sugar[t] + static_cast<int>(L.m.degree() - b.m.degree()));
      queue.push_back({i, t, L, sug});
    }
  };
  for (std::uint32_t t = 1; t < G.size(); ++t) push_pairs_for(t);

  auto pick = [&]() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < queue.size(); ++k) {
      const MPair &a = queue[k], &b = queue[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = k;
        continue;
      }
      int c = ctx.cmp(a.lcm, b.lcm);
      if (c != 0) {
        if (c < 0) best = k;
        continue;
      }
      if (a.i != b.i ? a.i < b.i : a.j < b.j) best = k;
    }
    MPair p = queue[best];
    queue.erase(queue.begin() + best);
    return p;
  };

  while (!queue.empty()) {
    MPair p = pick();
    done.insert({p.i, p.j});
    // chain criterion restricted to matching components
    bool skip = false;
    for (std::uint32_t k = 0; k < G.size() && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      const auto& klt = G[k].leading().t;
      if (klt.comp != p.lcm.comp || !klt.m.divides(p.lcm.m)) continue;
      auto ik = std::minmax(p.i, k);
      auto jk = std::minmax(p.j, k);
      if (done.count({ik.first, ik.second}) && done.count({jk.first, jk.second}))
        skip = true;
    }
    if (skip) continue;

    const ModPoly &a = G[p.i], &b = G[p.j];
    Fp one = ctx.ring->field.one();
    ModPoly s = ModPoly::sub(
        ctx, a.times_term(p.lcm.m / a.leading().t.m, one / a.leading().c),
        b.times_term(p.lcm.m / b.leading().t.m, one / b.leading().c));
    ModPoly r = module_normal_form(ctx, s, G);
    if (r.is_zero()) continue;
    G.push_back(r.scaled(ctx.ring->field.inv(r.leading().c)));
    sugar.push_back(std::max(p.sugar, G.back().degree(ctx)));
    push_pairs_for(static_cast<std::uint32_t>(G.size() - 1));
  }
  return G;
}

std::vector<ModPoly> syzygies(const ModuleContext& ctx_in,
                              std::span<const ModPoly> gens,
                              ModuleContext& ctx_out) {
  const std::uint32_t r = ctx_in.ncomps;
  const std::uint32_t k = static_cast<std::uint32_t>(gens.size());
  ModuleContext big;
  big.ring = ctx_in.ring;
  big.ncomps = r + k;
  big.dominant = r;
  big.shifts = ctx_in.shifts;
  for (const auto& g : gens) {
    if (!g.is_homogeneous(ctx_in))
      throw std::invalid_argument("syzygies: inputs must be homogeneous");
    big.shifts.push_back(g.is_zero() ? 0 : g.degree(ctx_in));
  }

  std::vector<ModPoly> embedded;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::vector<ModPoly::Term> terms;
    for (const auto& t : gens[i].terms()) terms.push_back(t);
    terms.push_back({{r + i, Monomial()}, ctx_in.ring->field.one()});
    embedded.push_back(ModPoly::from_terms(big, std::move(terms)));
  }

  auto G = module_buchberger(big, std::move(embedded));

  ctx_out.ring = ctx_in.ring;
  ctx_out.ncomps = k;
  ctx_out.dominant = 0;
  ctx_out.shifts.assign(big.shifts.begin() + r, big.shifts.end());

  std::vector<ModPoly> syz;
  for (const auto& g : G) {
    if (g.is_zero() || g.min_comp(big) < r) continue;
    std::vector<ModPoly::Term> terms;
    for (const auto& t : g.terms()) terms.push_back({{t.t.comp - r, t.t.m}, t.c});
    syz.push_back(ModPoly::from_terms(ctx_out, std::move(terms)));
  }
  return syz;
}

std::vector<ModPoly> syzygies_of_polys(const FpRingPtr& ring,
                                       std::span<const FpPoly> gens,
                                       ModuleContext& ctx_out) {
  ModuleContext ctx{ring, 1, 0, {0}};
  std::vector<ModPoly> elems;
  for (const auto& g : gens) elems.push_back(ModPoly::embed(ctx, g, 0));
  return syzygies(ctx, elems, ctx_out);
}

namespace {

/// Incremental row echelon over Fp with deterministic pivots; rows are dense
/// over a fixed column set.
struct Echelon {
  PrimeField field;
  std::vector<std::vector<Fp>> rows;
  std::vector<std::size_t> pivot;

  explicit Echelon(PrimeField f) : field(f) {}

  /// Reduce v against the rows; returns true (and keeps v) if independent.
  bool insert(std::vector<Fp> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Fp& c = v[pivot[r]];
      if (c.is_zero()) continue;
      Fp f = c;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[r][j];
    }
    std::size_t p = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
    if (p == v.size()) return false;
    Fp inv = field.inv(v[p]);
    for (auto& x : v) x = x * inv;
    rows.push_back(std::move(v));
    pivot.push_back(p);
    return true;
  }
};

}  // namespace

std::vector<std::size_t> minimal_generator_indices(const ModuleContext& ctx,
                                                   std::span<const ModPoly> gens) {
  for (const auto& g : gens)
    if (!g.is_homogeneous(ctx))
      throw std::invalid_argument("minimal_generator_indices: homogeneous input required");

  // Sort candidate indices by degree, stable in input order.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_zero()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gens[a].degree(ctx) < gens[b].degree(ctx);
  });

  std::vector<std::size_t> accepted;
  std::size_t pos = 0;
  while (pos < order.size()) {
    int d = gens[order[pos]].degree(ctx);
    // Column space: module monomials of shifted degree d.
    std::vector<ModTerm> cols;
    for (std::uint32_t c = 0; c < ctx.ncomps; ++c) {
      int md = d - ctx.shifts[c];
      if (md < 0) continue;
      for (const auto& m : multipoly::monomials_of_degree(
               ctx.ring->nvars, static_cast<std::uint32_t>(md), ctx.ring->order))
        cols.push_back({c, m});
    }
    // (comp, monomial) -> column index
    std::vector<std::unordered_map<Monomial, std::size_t, MonomialHash>> per_comp(
        ctx.ncomps);
    for (std::size_t j = 0; j < cols.size(); ++j)
      per_comp[cols[j].comp][cols[j].m] = j;

    auto vec_of = [&](const ModPoly& v) {
      std::vector<Fp> row(cols.size(), ctx.ring->field.zero());
      for (const auto& t : v.terms()) row[per_comp[t.t.comp].at(t.t.m)] = t.c;
      return row;
    };

    Echelon ech(ctx.ring->field);
    // span of m * g for accepted g of strictly smaller degree
    for (std::size_t ai : accepted) {
      int dg = gens[ai].degree(ctx);
      if (dg >= d) continue;
      for (const auto& m : multipoly::monomials_of_degree(
               ctx.ring->nvars, static_cast<std::uint32_t>(d - dg),
               ctx.ring->order))
        ech.insert(vec_of(gens[ai].times_term(m, ctx.ring->field.one())));
    }
    // candidates of this degree, in order
    while (pos < order.size() && gens[order[pos]].degree(ctx) == d) {
      std::size_t idx = order[pos++];
      if (ech.insert(vec_of(gens[idx]))) accepted.push_back(idx);
    }
  }
  std::sort(accepted.begin(), accepted.end());
  return accepted;
}

}  // namespace mkv::groebner
