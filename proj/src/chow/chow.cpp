#include "chow/chow.hpp"

#include <algorithm>
#include <stdexcept>

namespace mkv::chow {

namespace {

const GenusData kGenusData[] = {
    // g, i(Y), d(Y), d(F), pi(F), l_g, c2(T_Y).[F], calibrated
    {7, 5, 1, 8, 6, 5, 10 * 8, false},
    {8, 4, 2, 8, 4, 4, 7 * 8, false},
    {9, 3, 4, 4, 0, 4, 5 * 4, false},
    {10, 3, 5, 6, 1, 3, 27, true},
};

}  // namespace

const GenusData& GenusData::get(int g) {
  for (const auto& gd : kGenusData)
    if (gd.g == g) return gd;
  throw std::invalid_argument("GenusData: unsupported genus " + std::to_string(g));
}

varieties::SurfaceInvariants surface_invariants_for_genus(int g) {
  using SI = varieties::SurfaceInvariants;
  switch (g) {
    case 7:
      // linked surface in P^4: K^2 by the double-point identity, e by Noether
      return varieties::derive_invariants_p4(8, 6, Rational(1));
    case 8: {
      // no classical model; solved from the reference table (E^4 = -77)
      SI s;
      s.d = 8;
      s.pi = 4;
      s.chi = Rational(1);
      s.K2 = -1;
      s.e = 13;
      s.source = SI::Source::calibrated;
      return s;
    }
    case 9:
      return varieties::classical_invariants(4, 0, Rational(1), 9, 3);
    case 10:
      return varieties::classical_invariants(6, 1, Rational(1), 6, 6);
    default:
      throw std::invalid_argument("surface_invariants_for_genus: bad genus");
  }
}

IntersectionTable::IntersectionTable(std::vector<std::string> symbols)
    : syms_(std::move(symbols)) {
  if (syms_.empty()) throw std::invalid_argument("IntersectionTable: no symbols");
}

void IntersectionTable::set(std::array<int, 4> mono, Rational v) {
  std::sort(mono.begin(), mono.end());
  for (int i : mono)
    if (i < 0 || i >= static_cast<int>(syms_.size()))
      throw std::invalid_argument("IntersectionTable::set: unknown symbol");
  vals_[mono] = std::move(v);
}

const Rational& IntersectionTable::value(std::array<int, 4> mono) const {
  std::sort(mono.begin(), mono.end());
  auto it = vals_.find(mono);
  if (it == vals_.end())
    throw std::invalid_argument("IntersectionTable::value: missing monomial");
  return it->second;
}

bool IntersectionTable::complete() const {
  const int n = static_cast<int>(syms_.size());
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c)
        for (int d = c; d < n; ++d)
          if (!vals_.count({a, b, c, d})) return false;
  return true;
}

ClassExpr ClassExpr::sym(const IntersectionTable& t, int i) {
  ClassExpr e;
  e.coeffs.assign(t.nsyms(), Rational(0));
  e.coeffs.at(i) = 1;
  return e;
}

ClassExpr ClassExpr::combo(const IntersectionTable& t,
                           std::vector<std::pair<int, Rational>> terms) {
  ClassExpr e;
  e.coeffs.assign(t.nsyms(), Rational(0));
  for (auto& [i, c] : terms) e.coeffs.at(i) += c;
  return e;
}

ClassExpr ClassExpr::operator-(const ClassExpr& o) const {
  ClassExpr e = *this;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) e.coeffs[i] -= o.coeffs[i];
  return e;
}

ClassExpr ClassExpr::operator+(const ClassExpr& o) const {
  ClassExpr e = *this;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) e.coeffs[i] += o.coeffs[i];
  return e;
}

ClassExpr ClassExpr::scaled(const Rational& c) const {
  ClassExpr e = *this;
  for (auto& x : e.coeffs) x *= c;
  return e;
}

Rational expand(const IntersectionTable& t, const ClassExpr& a,
                const ClassExpr& b, const ClassExpr& c, const ClassExpr& d) {
  const int n = static_cast<int>(t.nsyms());
  Rational acc(0);
  for (int i = 0; i < n; ++i) {
    if (sgn(a.coeffs[i]) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (sgn(b.coeffs[j]) == 0) continue;
      for (int k = 0; k < n; ++k) {
        if (sgn(c.coeffs[k]) == 0) continue;
        for (int l = 0; l < n; ++l) {
          if (sgn(d.coeffs[l]) == 0) continue;
          acc += a.coeffs[i] * b.coeffs[j] * c.coeffs[k] * d.coeffs[l] *
                 t.value({i, j, k, l});
        }
      }
    }
  }
  return acc;
}

Rational expand_pow4(const IntersectionTable& t, const ClassExpr& a) {
  return expand(t, a, a, a, a);
}

IntersectionTable table_lemma32(int g) {
  const auto& gd = GenusData::get(g);
  const int l = static_cast<int>(gd.lines);
  std::vector<std::string> syms = {"Lt", "Dt"};
  for (int i = 1; i <= l; ++i) syms.push_back("D" + std::to_string(i));
  IntersectionTable t(syms);
  const int n = static_cast<int>(syms.size());
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c)
        for (int d = c; d < n; ++d) {
          std::array<int, 4> mono = {a, b, c, d};
          int lt = 0, dt = 0;
          std::array<int, 16> di{};
          for (int s : mono) {
            if (s == 0)
              ++lt;
            else if (s == 1)
              ++dt;
            else
              ++di[s - 2];
          }
          int distinct_di = 0, di_count = 0, di_mult = 0;
          for (int i = 0; i < l; ++i)
            if (di[i]) {
              ++distinct_di;
              di_count += di[i];
              di_mult = di[i];
            }
          Rational v(0);
          if (lt == 4) {
            v = 2 * gd.g - 2;  // Lt^4 = 2g - 2
          } else if (lt > 0) {
            v = 0;  // Lt never meets the exceptional symbols
          } else if (distinct_di > 1) {
            v = 0;  // distinct exceptional planes are disjoint
          } else if (distinct_di == 0) {
            v = gd.lines - 1;  // Dt^4
          } else if (di_count == 4) {
            v = 1;  // D_i^4
          } else if (dt == 3 && di_mult == 1) {
            v = -1;  // Dt^3 D_i
          } else if (dt == 1 && di_mult == 3) {
            v = -1;  // Dt D_i^3
          } else {  // dt == 2, di_mult == 2
            v = 1;  // Dt^2 D_i^2
          }
          t.set(mono, v);
        }
  return t;
}

IntersectionTable push_to_xbar(const IntersectionTable& big, int g, int b) {
  const auto& gd = GenusData::get(g);
  const int l = static_cast<int>(gd.lines);
  // phiL -> Lt + sum D_i ; D -> Dt + b sum D_i
  ClassExpr phil = ClassExpr::sym(big, 0);
  ClassExpr dcl = ClassExpr::sym(big, 1);
  for (int i = 0; i < l; ++i) {
    phil = phil + ClassExpr::sym(big, 2 + i);
    dcl = dcl + ClassExpr::sym(big, 2 + i).scaled(Rational(b));
  }
  IntersectionTable t({"phiL", "D"});
  std::vector<ClassExpr> basis = {phil, dcl};
  for (int a = 0; a < 2; ++a)
    for (int b2 = a; b2 < 2; ++b2)
      for (int c = b2; c < 2; ++c)
        for (int d = c; d < 2; ++d)
          t.set({a, b2, c, d},
                expand(big, basis[a], basis[b2], basis[c], basis[d]));
  return t;
}

IntersectionTable sigma_e_from_push(const IntersectionTable& push, int g) {
  const auto& gd = GenusData::get(g);
  const Rational i(gd.index_y);
  // sigmaH = phiL - 2D, E = (i-2) phiL - (2i-3) D
  ClassExpr sh =
      ClassExpr::combo(push, {{0, Rational(1)}, {1, Rational(-2)}});
  ClassExpr e = ClassExpr::combo(push, {{0, i - 2}, {1, -(2 * i - 3)}});
  IntersectionTable t({"sH", "E"});
  std::vector<ClassExpr> basis = {sh, e};
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b)
      for (int c = b; c < 2; ++c)
        for (int d = c; d < 2; ++d)
          t.set({a, b, c, d}, expand(push, basis[a], basis[b], basis[c], basis[d]));
  return t;
}

IntersectionTable blowup_surface_table(const GenusData& gd,
                                       const varieties::SurfaceInvariants& F) {
  const std::int64_t i = gd.index_y;
  const std::int64_t kh = F.KH();
  Rational c1sq = Rational(F.K2 + 2 * i * kh + i * i * F.d);
  Rational c2 = Rational(gd.c2_ty_dot_f - F.e + F.K2 + i * kh);
  IntersectionTable t({"sH", "E"});
  t.set({0, 0, 0, 0}, Rational(gd.deg_y));
  t.set({0, 0, 0, 1}, Rational(0));
  t.set({0, 0, 1, 1}, Rational(-F.d));
  t.set({0, 1, 1, 1}, Rational(-(kh + i * F.d)));
  t.set({1, 1, 1, 1}, -(c1sq - c2));
  return t;
}

TableTwoValues table_two_values(const IntersectionTable& se, int g) {
  const auto& gd = GenusData::get(g);
  const Rational i(gd.index_y);
  ClassExpr sh = ClassExpr::sym(se, 0);
  ClassExpr e = ClassExpr::sym(se, 1);
  ClassExpr lbar = sh.scaled(i - 1) - e;      // Lbar = (i-1) sH - E
  ClassExpr d = sh.scaled(i - 2) - e;         // D = (i-2) sH - E
  ClassExpr k = sh.scaled(-i) + e;            // K = -i sH + E
  TableTwoValues v;
  v.sH2E2 = expand(se, sh, sh, e, e);
  v.sHE3 = expand(se, sh, e, e, e);
  v.E4 = expand_pow4(se, e);
  v.L3D = expand(se, lbar, lbar, lbar, d);
  v.D4 = expand_pow4(se, d);
  v.L4 = expand_pow4(se, lbar);
  v.sH4 = expand_pow4(se, sh);
  v.sH3E = expand(se, sh, sh, sh, e);
  v.L2D2 = expand(se, lbar, lbar, d, d);
  v.LD3 = expand(se, lbar, d, d, d);
  v.genus_identity = expand(se, k + lbar.scaled(Rational(3)), lbar, lbar, lbar);
  return v;
}

std::array<std::int64_t, 6> table_two_reference(int g) {
  switch (g) {
    case 7:
      return {-8, -42, -149, 1, 4, 11};
    case 8:
      return {-8, -30, -77, 1, 3, 13};
    case 9:
      return {-4, -6, -1, 1, 3, 15};
    case 10:
      return {-6, -12, -15, 1, 2, 17};
    default:
      throw std::invalid_argument("table_two_reference: bad genus");
  }
}

RelationCheck verify_prop_relations(int g) {
  const auto& gd = GenusData::get(g);
  const Rational i(gd.index_y);
  // coefficients in the (phiL, D) basis
  auto sh = std::pair<Rational, Rational>{1, -2};
  auto e = std::pair<Rational, Rational>{i - 2, -(2 * i - 3)};
  RelationCheck r;
  // phiL = (2i-3) sigmaH - 2E
  Rational c0 = (2 * i - 3) * sh.first - 2 * e.first;
  Rational c1 = (2 * i - 3) * sh.second - 2 * e.second;
  r.phi_l_identity = (c0 == 1 && c1 == 0);
  // D = (i-2) sigmaH - E
  Rational d0 = (i - 2) * sh.first - e.first;
  Rational d1 = (i - 2) * sh.second - e.second;
  r.d_identity = (d0 == 0 && d1 == 1);
  // Lbar = (i-1) sigmaH - E = phiL - D
  Rational l0 = (i - 1) * sh.first - e.first;
  Rational l1 = (i - 1) * sh.second - e.second;
  r.lbar_is_phil_minus_d = (l0 == 1 && l1 == -1);
  return r;
}

std::int64_t solve_pullback_coefficient(int g) {
  const auto& gd = GenusData::get(g);
  auto big = table_lemma32(g);
  // (phiL)^3 . D is linear in b; solve for the b hitting l_g.
  auto val = [&](int b) {
    auto push = push_to_xbar(big, g, b);
    ClassExpr phil = ClassExpr::sym(push, 0);
    ClassExpr d = ClassExpr::sym(push, 1);
    return expand(push, phil, phil, phil, d);
  };
  Rational v0 = val(0), v1 = val(1);
  Rational slope = v1 - v0;
  if (sgn(slope) == 0) throw std::logic_error("pullback coefficient: degenerate");
  Rational b = (Rational(gd.lines) - v0) / slope;
  if (!exactalg::is_integer(b))
    throw std::logic_error("pullback coefficient: non-integral solution");
  return exactalg::to_int64(b);
}

AlternativeReadings alternative_readings(int g) {
  auto push = push_to_xbar(table_lemma32(g), g);
  ClassExpr phil = ClassExpr::sym(push, 0);
  ClassExpr d = ClassExpr::sym(push, 1);
  ClassExpr lbar = phil - d;
  AlternativeReadings alt;
  // K = -2 phiL: (K + 3 Lbar) . Lbar^3 = (phiL - 3D) . Lbar^3
  ClassExpr k_alt = phil.scaled(Rational(-2));
  alt.genus_identity_with_K_minus_2L =
      expand(push, k_alt + lbar.scaled(Rational(3)), lbar, lbar, lbar);
  alt.e4_as_phil_minus_3d = expand_pow4(push, phil - d.scaled(Rational(3)));
  return alt;
}

}  // namespace mkv::chow
