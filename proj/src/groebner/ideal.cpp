#include "groebner/ideal.hpp"

#include <algorithm>

#include "groebner/buchberger.hpp"
#include "groebner/module.hpp"

namespace mkv::groebner {

IdealHandle::IdealHandle(FpRingPtr ring, std::vector<FpPoly> gens)
    : ring_(std::move(ring)) {
  for (auto& g : gens) {
    g.require_ring(ring_);
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

const std::vector<FpPoly>& IdealHandle::groebner_basis(
    const MonomialOrder& order) const {
  std::string key = order.cache_key();
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->map.find(key);
    if (it != cache_->map.end()) return it->second;
  }
  auto oring = multipoly::make_ring(ring_->nvars, ring_->field, order);
  std::vector<FpPoly> gens;
  gens.reserve(gens_.size());
  for (const auto& g : gens_) gens.push_back(g.reordered(order));
  auto gb = buchberger(oring, std::move(gens));
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->map.emplace(key, std::move(gb)).first->second;
}

FpPoly IdealHandle::normal_form(const FpPoly& f, const MonomialOrder& order) const {
  const auto& gb = groebner_basis(order);
  FpPoly fo = f.reordered(order);
  if (gb.empty()) return fo;
  return groebner::normal_form(fo, gb);
}

bool IdealHandle::contains(const FpPoly& f) const {
  return normal_form(f).is_zero();
}

bool IdealHandle::contains_ideal(const IdealHandle& other) const {
  for (const auto& g : other.gens_)
    if (!contains(g.reordered(ring_->order))) return false;
  return true;
}

bool IdealHandle::equals(const IdealHandle& other) const {
  return contains_ideal(other) && other.contains_ideal(*this);
}

bool IdealHandle::is_zero_ideal() const { return gens_.empty(); }

bool IdealHandle::caches_consistent() const {
  std::vector<std::vector<FpPoly>> bases;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    for (const auto& [key, gb] : cache_->map) bases.push_back(gb);
  }
  for (const auto& basis : bases) {
    std::vector<FpPoly> regen;
    for (const auto& b : basis) regen.push_back(b.reordered(ring_->order));
    IdealHandle J(ring_, regen);
    if (!equals(J)) return false;
  }
  return true;
}

IdealHandle with_minimal_gens(const IdealHandle& I) {
  if (I.gens().empty()) return I;
  ModuleContext ctx{I.ring(), 1, 0, {0}};
  std::vector<ModPoly> elems;
  for (const auto& g : I.gens()) {
    if (!g.is_homogeneous())
      throw std::invalid_argument("with_minimal_gens: homogeneous input required");
    elems.push_back(ModPoly::embed(ctx, g, 0));
  }
  auto keep = minimal_generator_indices(ctx, elems);
  std::vector<FpPoly> gens;
  for (auto i : keep) gens.push_back(I.gens()[i].monic());
  return IdealHandle(I.ring(), std::move(gens));
}

IdealHandle ideal_quotient(const IdealHandle& I, const FpPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("ideal_quotient: zero divisor ideal");
  if (I.gens().empty())
    return IdealHandle(I.ring(), {});  // (0 : f) = 0 for nonzero f in a domain
  std::vector<FpPoly> list = I.gens();
  list.push_back(f.reordered(I.ring()->order));
  ModuleContext out_ctx;
  auto syz = syzygies_of_polys(I.ring(), list, out_ctx);
  std::vector<FpPoly> gens;
  const std::uint32_t last = static_cast<std::uint32_t>(list.size() - 1);
  for (const auto& s : syz) {
    FpPoly b = s.component(out_ctx, last);
    if (!b.is_zero()) gens.push_back(b);
  }
  return with_minimal_gens(IdealHandle(I.ring(), std::move(gens)));
}

IdealHandle ideal_quotient(const IdealHandle& I, const IdealHandle& J) {
  if (J.gens().empty())
    throw std::invalid_argument("ideal_quotient: zero divisor ideal");
  bool first = true;
  IdealHandle acc;
  for (const auto& f : J.gens()) {
    IdealHandle q = ideal_quotient(I, f);
    acc = first ? q : intersect(acc, q);
    first = false;
  }
  return acc;
}

IdealHandle intersect(const IdealHandle& I, const IdealHandle& J) {
  if (I.gens().empty() || J.gens().empty()) return IdealHandle(I.ring(), {});
  std::vector<FpPoly> list = I.gens();
  for (const auto& g : J.gens()) list.push_back(g.reordered(I.ring()->order));
  ModuleContext out_ctx;
  auto syz = syzygies_of_polys(I.ring(), list, out_ctx);
  const std::size_t r = I.gens().size();
  std::vector<FpPoly> gens;
  for (const auto& s : syz) {
    // value = sum over the I-part of the syzygy
    FpPoly v = FpPoly::zero(I.ring());
    for (std::size_t i = 0; i < r; ++i) {
      FpPoly a = s.component(out_ctx, static_cast<std::uint32_t>(i));
      if (!a.is_zero()) v = v + a * I.gens()[i];
    }
    if (!v.is_zero()) gens.push_back(v);
  }
  return with_minimal_gens(IdealHandle(I.ring(), std::move(gens)));
}

SaturationResult saturate(const IdealHandle& I, const IdealHandle& J,
                          int max_iter) {
  SaturationResult res;
  res.ideal = I;
  for (int it = 1; it <= max_iter; ++it) {
    IdealHandle next = ideal_quotient(res.ideal, J);
    res.iterations = it;
    if (next.equals(res.ideal)) {
      res.stabilized = true;
      return res;
    }
    res.ideal = next;
  }
  res.stabilized = false;
  return res;
}

std::vector<FpPoly> eliminate_first(const IdealHandle& I, std::uint32_t k) {
  auto order = MonomialOrder::block_elim(k);
  const auto& gb = I.groebner_basis(order);
  std::vector<FpPoly> out;
  for (const auto& g : gb) {
    bool free_of_block = true;
    for (const auto& t : g.terms())
      for (std::uint32_t i = 0; i < k && free_of_block; ++i)
        if (t.m.exponent(i)) free_of_block = false;
    if (free_of_block) out.push_back(g);
  }
  return out;
}

FpPoly drop_first_vars(const FpPoly& f, std::uint32_t k, const FpRingPtr& target) {
  std::vector<FpPoly::Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::uint32_t i = k; i < f.ring()->nvars; ++i) {
      std::uint32_t e = t.m.exponent(i);
      if (i - k >= target->nvars && e)
        throw std::invalid_argument("drop_first_vars: variable out of range");
      if (e) m.set_exponent(i - k, e);
    }
    for (std::uint32_t i = 0; i < k; ++i)
      if (t.m.exponent(i))
        throw std::invalid_argument("drop_first_vars: polynomial not free of block");
    terms.push_back({m, t.c});
  }
  return FpPoly::from_terms(target, std::move(terms));
}

HilbertData hilbert_data(const IdealHandle& I) {
  const auto& gb = I.groebner_basis();
  std::vector<Monomial> leads;
  for (const auto& g : gb) leads.push_back(g.leading_monomial());
  return hilbert_from_lead_terms(I.ring()->nvars, std::move(leads));
}

EmptinessResult is_empty_projective(const IdealHandle& I, int bound) {
  return groebner::is_empty_projective(I.ring(), I.gens(), bound);
}

}  // namespace mkv::groebner
