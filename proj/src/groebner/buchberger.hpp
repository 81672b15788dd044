#pragma once

#include <span>
#include <vector>

#include "core.hpp"

namespace mkv::groebner {

/// Full normal form of f modulo the list (every term reduced). The remainder
/// is supported on standard monomials of the leading-term ideal of the list.
/// Divisor choice is the first match in list order, so results are
/// deterministic for a fixed list.
FpPoly normal_form(const FpPoly& f, std::span<const FpPoly> basis);

FpPoly s_polynomial(const FpPoly& f, const FpPoly& g);

/// Reduced Groebner basis w.r.t. the order carried by ring. Buchberger with
/// the coprime and chain criteria and sugar-degree pair selection; the result
/// is the unique reduced basis, monic, sorted by decreasing leading monomial.
std::vector<FpPoly> buchberger(const FpRingPtr& ring, std::vector<FpPoly> gens);

/// Every S-polynomial of the list reduces to zero (Buchberger criterion).
bool is_groebner_basis(std::span<const FpPoly> basis);

}  // namespace mkv::groebner
