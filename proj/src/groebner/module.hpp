#pragma once

#include <span>
#include <vector>

#include "core.hpp"

namespace mkv::groebner {

/// Term of a free-module element: component index + monomial.
struct ModTerm {
  std::uint32_t comp = 0;
  Monomial m;

  friend bool operator==(const ModTerm& a, const ModTerm& b) {
    return a.comp == b.comp && a.m == b.m;
  }
};

/// Free module R^k with per-component degree shifts. `dominant` components
/// (indices < dominant) beat all others in the term order, which is what
/// syzygy extraction by elimination needs; within a group the order is
/// shifted degree, then the ring order, then component index.
struct ModuleContext {
  FpRingPtr ring;
  std::uint32_t ncomps = 1;
  std::uint32_t dominant = 0;
  std::vector<int> shifts;  // size ncomps

  int degree(const ModTerm& t) const {
    return static_cast<int>(t.m.degree()) + shifts[t.comp];
  }

  /// +1 if a > b.
  int cmp(const ModTerm& a, const ModTerm& b) const {
    bool ea = a.comp < dominant, eb = b.comp < dominant;
    if (ea != eb) return ea ? 1 : -1;
    int da = degree(a), db = degree(b);
    if (da != db) return da > db ? 1 : -1;
    int c = ring->order.compare(a.m, b.m, ring->nvars);
    if (c) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return 0;
  }
};

/// Element of R^k; terms strictly decreasing in the context order.
class ModPoly {
 public:
  struct Term {
    ModTerm t;
    Fp c;
  };

  ModPoly() = default;
  static ModPoly zero() { return ModPoly(); }
  static ModPoly from_terms(const ModuleContext& ctx, std::vector<Term> terms);
  /// Embed a ring polynomial into a component.
  static ModPoly embed(const ModuleContext& ctx, const FpPoly& f,
                       std::uint32_t comp);
  /// Unit vector e_comp.
  static ModPoly unit(const ModuleContext& ctx, std::uint32_t comp);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Term& leading() const;

  bool is_homogeneous(const ModuleContext& ctx) const;
  int degree(const ModuleContext& ctx) const;  // shifted degree; -1 for zero

  /// Extract the polynomial sitting in one component.
  FpPoly component(const ModuleContext& ctx, std::uint32_t comp) const;
  /// Smallest component index carrying a term, or ncomps if zero.
  std::uint32_t min_comp(const ModuleContext& ctx) const;

  ModPoly scaled(const Fp& c) const;
  ModPoly times_term(const Monomial& m, const Fp& c) const;

  static ModPoly add(const ModuleContext& ctx, const ModPoly& a, const ModPoly& b);
  static ModPoly sub(const ModuleContext& ctx, const ModPoly& a, const ModPoly& b);

  friend bool operator==(const ModPoly& a, const ModPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].t == b.terms_[i].t) || !(a.terms_[i].c == b.terms_[i].c))
        return false;
    return true;
  }

 private:
  std::vector<Term> terms_;
};

ModPoly module_normal_form(const ModuleContext& ctx, const ModPoly& f,
                           std::span<const ModPoly> basis);

std::vector<ModPoly> module_buchberger(const ModuleContext& ctx,
                                       std::vector<ModPoly> gens);

/// Generators of the first syzygy module of `gens` (elements of ctx_in).
/// Output lives in R^{gens.size()} with shifts = generator degrees; the
/// context is returned through ctx_out.
std::vector<ModPoly> syzygies(const ModuleContext& ctx_in,
                              std::span<const ModPoly> gens,
                              ModuleContext& ctx_out);

/// Syzygies of a list of homogeneous ring polynomials.
std::vector<ModPoly> syzygies_of_polys(const FpRingPtr& ring,
                                       std::span<const FpPoly> gens,
                                       ModuleContext& ctx_out);

/// Minimal generating set of the graded submodule generated by gens
/// (Nakayama, degree by degree with exact linear algebra). Input elements
/// must be homogeneous. Returns indices into `gens`, in acceptance order.
std::vector<std::size_t> minimal_generator_indices(const ModuleContext& ctx,
                                                   std::span<const ModPoly> gens);

}  // namespace mkv::groebner
