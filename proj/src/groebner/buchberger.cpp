#include "groebner/buchberger.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace mkv::groebner {

namespace {

struct DivisorTable {
  std::vector<Monomial> lm;
  std::vector<std::uint32_t> mask;

  void push(const FpPoly& g) {
    lm.push_back(g.leading_monomial());
    mask.push_back(g.leading_monomial().support_mask());
  }

  int find(const Monomial& m, std::uint32_t mmask) const {
    for (std::size_t i = 0; i < lm.size(); ++i) {
      if ((mask[i] & ~mmask) != 0) continue;
      if (lm[i].divides(m)) return static_cast<int>(i);
    }
    return -1;
  }
};

}  // namespace

FpPoly normal_form(const FpPoly& f, std::span<const FpPoly> basis) {
  if (f.is_zero() || basis.empty()) return f;
  DivisorTable table;
  for (const auto& g : basis) {
    if (g.is_zero()) throw std::invalid_argument("normal_form: zero basis element");
    table.push(g);
  }
  std::vector<FpPoly::Term> remainder;
  FpPoly w = f;
  while (!w.is_zero()) {
    const auto& lt = w.leading_term();
    int gi = table.find(lt.m, lt.m.support_mask());
    if (gi < 0) {
      remainder.push_back(lt);
      w = w.tail();
      continue;
    }
    const FpPoly& g = basis[gi];
    Fp c = lt.c / g.leading_coeff();
    w = w - g.times_term(lt.m / g.leading_monomial(), c);
  }
  // terms were emitted in strictly decreasing order
  return FpPoly::from_terms(f.ring(), std::move(remainder));
}

FpPoly s_polynomial(const FpPoly& f, const FpPoly& g) {
  f.require_same_ring(g);
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("s_polynomial of zero");
  Monomial L = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  const auto& field = f.ring()->field;
  Fp cf = field.one() / f.leading_coeff();
  Fp cg = field.one() / g.leading_coeff();
  return f.times_term(L / f.leading_monomial(), cf) -
         g.times_term(L / g.leading_monomial(), cg);
}

namespace {

struct Pair {
  std::uint32_t i, j;
  Monomial lcm;
  std::uint32_t sugar;
};

struct PairKey {
  std::uint32_t i, j;
  bool operator<(const PairKey& o) const {
    return i != o.i ? i < o.i : j < o.j;
  }
};

std::uint32_t pair_sugar(const FpPoly& a, std::uint32_t sa, const FpPoly& b,
                         std::uint32_t sb, const Monomial& L) {
  std::uint32_t da = sa + L.degree() - a.leading_monomial().degree();
  std::uint32_t db = sb + L.degree() - b.leading_monomial().degree();
  return std::max(da, db);
}

std::vector<FpPoly> interreduce(const FpRingPtr& ring, std::vector<FpPoly> gens) {
  // Repeatedly reduce each element by the others until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      FpPoly g = gens[i];
      std::vector<FpPoly> others;
      others.reserve(gens.size() - 1);
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (j != i && !gens[j].is_zero()) others.push_back(gens[j]);
      FpPoly r = others.empty() ? g : normal_form(g, others);
      if (r != g) changed = true;
      gens[i] = r.is_zero() ? r : r.monic();
    }
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const FpPoly& p) { return p.is_zero(); }),
               gens.end());
  }
  std::sort(gens.begin(), gens.end(), [&](const FpPoly& a, const FpPoly& b) {
    return ring->order.compare(a.leading_monomial(), b.leading_monomial(),
                               ring->nvars) > 0;
  });
  return gens;
}

}  // namespace

std::vector<FpPoly> buchberger(const FpRingPtr& ring, std::vector<FpPoly> gens) {
  for (auto& g : gens) {
    g.require_ring(ring);
    if (!g.is_zero()) g = g.monic();
  }
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const FpPoly& p) { return p.is_zero(); }),
             gens.end());
  if (gens.empty()) return {};
  gens = interreduce(ring, std::move(gens));

  std::vector<FpPoly> G = gens;
  std::vector<std::uint32_t> sugar;
  for (const auto& g : G) sugar.push_back(g.degree());

  std::vector<Pair> queue;
  std::set<PairKey> done;  // processed or discarded pairs
  auto push_pairs_for = [&](std::uint32_t t) {
    for (std::uint32_t i = 0; i < t; ++i) {
      Monomial L = Monomial::lcm(G[i].leading_monomial(), G[t].leading_monomial());
      queue.push_back({i, t, L, pair_sugar(G[i], sugar[i], G[t], sugar[t], L)});
    }
  };
  for (std::uint32_t t = 1; t < G.size(); ++t) push_pairs_for(t);

  auto pick = [&]() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < queue.size(); ++k) {
      const Pair &a = queue[k], &b = queue[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = k;
        continue;
      }
      int c = ring->order.compare(a.lcm, b.lcm, ring->nvars);
      if (c != 0) {
        if (c < 0) best = k;
        continue;
      }
      if (a.i != b.i ? a.i < b.i : a.j < b.j) best = k;
    }
    Pair p = queue[best];
    queue.erase(queue.begin() + best);
    return p;
  };

  while (!queue.empty()) {
    Pair p = pick();
    done.insert({p.i, p.j});
    // coprime criterion
    if (Monomial::coprime(G[p.i].leading_monomial(), G[p.j].leading_monomial()))
      continue;
    // chain criterion: some k with LM(k) | lcm and both (i,k), (j,k) done
    bool skip = false;
    for (std::uint32_t k = 0; k < G.size() && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!G[k].leading_monomial().divides(p.lcm)) continue;
      PairKey ik{std::min(p.i, k), std::max(p.i, k)};
      PairKey jk{std::min(p.j, k), std::max(p.j, k)};
      if (done.count(ik) && done.count(jk)) skip = true;
    }
    if (skip) continue;

    FpPoly s = s_polynomial(G[p.i], G[p.j]);
    FpPoly r = normal_form(s, G);
    if (r.is_zero()) continue;
    G.push_back(r.monic());
    sugar.push_back(std::max<std::uint32_t>(p.sugar, r.degree()));
    push_pairs_for(static_cast<std::uint32_t>(G.size() - 1));
  }

  return interreduce(ring, std::move(G));
}

bool is_groebner_basis(std::span<const FpPoly> basis) {
  std::vector<FpPoly> list(basis.begin(), basis.end());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      FpPoly s = s_polynomial(list[i], list[j]);
      if (!normal_form(s, list).is_zero()) return false;
    }
  return true;
}

}  // namespace mkv::groebner
