#include "groebner/emptiness.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "multipoly/macaulay.hpp"

namespace mkv::groebner {

namespace {

using Tail = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (std idx, coeff), ascending idx

struct DegreeState {
  std::vector<Monomial> std_monos;   // ascending grevlex
  std::vector<Monomial> lead_monos;  // ascending grevlex
  std::vector<Tail> tails;           // tails[i] = normal form of lead_monos[i]
  std::unordered_map<Monomial, std::int64_t, MonomialHash> code;
  // code: (idx << 1) | 1 for leads, (idx << 1) for standard monomials

  void index() {
    code.clear();
    code.reserve((std_monos.size() + lead_monos.size()) * 2);
    for (std::size_t i = 0; i < std_monos.size(); ++i)
      code[std_monos[i]] = static_cast<std::int64_t>(i) << 1;
    for (std::size_t i = 0; i < lead_monos.size(); ++i)
      code[lead_monos[i]] = (static_cast<std::int64_t>(i) << 1) | 1;
  }
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p),
               nr = static_cast<std::int64_t>(a);
  while (nr) {
    std::int64_t q = r / nr, tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

/// Dense accumulator with touched list; products are accumulated without
/// intermediate reduction when p < 2^16.
struct Scratch {
  std::uint64_t p;
  bool lazy;
  std::vector<std::uint64_t> acc;
  std::vector<std::uint32_t> touched;
  std::vector<bool> used;

  Scratch(std::uint64_t prime, std::size_t n)
      : p(prime), lazy(prime < 65536), acc(n, 0), used(n, false) {}

  void resize(std::size_t n) {
    acc.assign(n, 0);
    used.assign(n, false);
    touched.clear();
  }

  void add(std::uint32_t idx, std::uint64_t val) {
    if (!used[idx]) {
      used[idx] = true;
      touched.push_back(idx);
      acc[idx] = 0;
    }
    if (lazy) {
      acc[idx] += val;
    } else {
      acc[idx] = (acc[idx] + val % p) % p;
    }
  }

  Tail drain() {
    std::sort(touched.begin(), touched.end());
    Tail out;
    out.reserve(touched.size());
    for (auto idx : touched) {
      std::uint32_t v = static_cast<std::uint32_t>(acc[idx] % p);
      if (v) out.push_back({idx, v});
      used[idx] = false;
    }
    touched.clear();
    return out;
  }
};

/// Sparse echelon over the provisional standard monomials. Row pivots sit at
/// the row's largest index; reduction eliminates pivot entries from the top
/// down, which only ever introduces smaller entries and so terminates.
struct SecondaryEchelon {
  std::uint64_t p;
  std::vector<Tail> rows;             // monic at pivot (last entry)
  std::vector<std::uint32_t> pivots;  // pivot index per row
  std::unordered_map<std::uint32_t, std::size_t> row_of_pivot;

  explicit SecondaryEchelon(std::uint64_t prime) : p(prime) {}

  /// v -= c * rows[r]; entries stay ascending.
  Tail subtract_scaled(const Tail& v, const Tail& row, std::uint64_t c) const {
    Tail out;
    out.reserve(v.size() + row.size());
    std::uint64_t neg = p - c;
    std::size_t i = 0, j = 0;
    while (i < v.size() && j < row.size()) {
      if (v[i].first < row[j].first) {
        out.push_back(v[i++]);
      } else if (v[i].first > row[j].first) {
        out.push_back({row[j].first,
                       static_cast<std::uint32_t>(neg * row[j].second % p)});
        ++j;
      } else {
        std::uint64_t s = (v[i].second + neg * row[j].second) % p;
        if (s) out.push_back({v[i].first, static_cast<std::uint32_t>(s)});
        ++i;
        ++j;
      }
    }
    while (i < v.size()) out.push_back(v[i++]);
    while (j < row.size()) {
      out.push_back(
          {row[j].first, static_cast<std::uint32_t>(neg * row[j].second % p)});
      ++j;
    }
    return out;
  }

  Tail reduce(Tail v) const {
    for (;;) {
      std::size_t hit_row = 0;
      std::uint64_t coeff = 0;
      bool found = false;
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        auto pit = row_of_pivot.find(it->first);
        if (pit != row_of_pivot.end()) {
          hit_row = pit->second;
          coeff = it->second;
          found = true;
          break;
        }
      }
      if (!found) return v;
      v = subtract_scaled(v, rows[hit_row], coeff);
    }
  }

  bool insert(Tail v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    std::uint32_t piv = v.back().first;
    std::uint64_t inv = mod_inverse(v.back().second, p);
    for (auto& e : v) e.second = static_cast<std::uint32_t>(inv * e.second % p);
    row_of_pivot[piv] = rows.size();
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }

  /// Mutual reduction: ascending pivot order, each row's body reduced by the
  /// rows with smaller pivots, so no pivot index appears in any tail.
  void back_substitute() {
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
    SecondaryEchelon done(p);
    for (std::size_t k : order) {
      Tail body = rows[k];
      body.pop_back();  // strip monic pivot entry (largest index)
      body = done.reduce(std::move(body));
      body.push_back({pivots[k], 1});
      done.row_of_pivot[pivots[k]] = done.rows.size();
      done.rows.push_back(std::move(body));
      done.pivots.push_back(pivots[k]);
    }
    rows = std::move(done.rows);
    pivots = std::move(done.pivots);
    row_of_pivot = std::move(done.row_of_pivot);
  }
};

}  // namespace

EmptinessResult is_empty_projective(const FpRingPtr& ring,
                                    std::span<const FpPoly> gens, int bound) {
  const std::uint64_t p = ring->field.p;
  const auto grevlex = MonomialOrder::grevlex();

  for (const auto& g : gens) {
    g.require_ring(ring);
    if (g.is_zero()) continue;
    if (!g.is_homogeneous())
      throw std::invalid_argument(
          "is_empty_projective: homogeneous generators required");
    if (g.degree() == 0) {  // unit ideal: empty scheme, witness degree 0
      EmptinessResult r;
      r.status = EmptinessResult::Status::empty;
      r.witness = 0;
      r.hilbert = {0};
      return r;
    }
  }

  EmptinessResult result;
  result.hilbert.push_back(1);  // degree 0

  DegreeState cur;  // degree 0: the empty product is standard
  cur.std_monos = {Monomial()};
  cur.index();

  for (int d = 1; d <= bound; ++d) {
    auto monos = multipoly::monomials_of_degree(ring->nvars, d, grevlex);
    std::reverse(monos.begin(), monos.end());  // ascending

    struct Parent {
      std::uint32_t var;
      std::uint32_t lead;
    };
    std::vector<std::vector<Parent>> parents;
    std::vector<Monomial> prov_lead;
    std::vector<Monomial> prov_std;
    for (const auto& mu : monos) {
      std::vector<Parent> ps;
      for (std::uint32_t v = 0; v < ring->nvars; ++v) {
        if (mu.exponent(v) == 0) continue;
        Monomial m = mu / Monomial::variable(v);
        auto it = cur.code.find(m);
        if (it != cur.code.end() && (it->second & 1))
          ps.push_back({v, static_cast<std::uint32_t>(it->second >> 1)});
      }
      if (ps.empty()) {
        prov_std.push_back(mu);
      } else {
        prov_lead.push_back(mu);
        parents.push_back(std::move(ps));
      }
    }

    std::unordered_map<Monomial, std::int64_t, MonomialHash> prov_code;
    prov_code.reserve(monos.size() * 2);
    for (std::size_t i = 0; i < prov_std.size(); ++i)
      prov_code[prov_std[i]] = static_cast<std::int64_t>(i) << 1;
    for (std::size_t i = 0; i < prov_lead.size(); ++i)
      prov_code[prov_lead[i]] = (static_cast<std::int64_t>(i) << 1) | 1;

    // Tails for provisional leads via their first parent. Ascending order
    // guarantees every referenced lead tail is already computed.
    std::vector<Tail> prov_tails(prov_lead.size());
    Scratch scratch(p, prov_std.size());
    auto reduce_shift = [&](const Tail& tail, std::uint32_t var) {
      for (const auto& [sidx, c] : tail) {
        Monomial nu = cur.std_monos[sidx] * Monomial::variable(var);
        std::int64_t code = prov_code.at(nu);
        if (code & 1) {
          const Tail& t = prov_tails[code >> 1];
          for (const auto& [j, tc] : t)
            scratch.add(j, static_cast<std::uint64_t>(c) * tc);
        } else {
          scratch.add(static_cast<std::uint32_t>(code >> 1), c);
        }
      }
    };
    for (std::size_t i = 0; i < prov_lead.size(); ++i) {
      const Parent& rep = parents[i].front();
      reduce_shift(cur.tails[rep.lead], rep.var);
      prov_tails[i] = scratch.drain();
    }

    // Difference rows from extra parents, then fresh generators of this
    // degree, echelonized over the provisional standard monomials.
    SecondaryEchelon sec(p);
    for (std::size_t i = 0; i < prov_lead.size(); ++i) {
      for (std::size_t k = 1; k < parents[i].size(); ++k) {
        reduce_shift(cur.tails[parents[i][k].lead], parents[i][k].var);
        Tail other = scratch.drain();
        Tail diff = sec.subtract_scaled(other, prov_tails[i], 1);
        sec.insert(std::move(diff));
      }
    }
    for (const auto& g : gens) {
      if (g.is_zero() || g.degree() != d) continue;
      for (const auto& t : g.terms()) {
        std::int64_t code = prov_code.at(t.m);
        if (code & 1) {
          const Tail& tl = prov_tails[code >> 1];
          for (const auto& [j, tc] : tl)
            scratch.add(j, static_cast<std::uint64_t>(t.c.rep()) * tc);
        } else {
          scratch.add(static_cast<std::uint32_t>(code >> 1), t.c.rep());
        }
      }
      sec.insert(scratch.drain());
    }
    sec.back_substitute();

    // Merge secondary pivots into the lead set, renumber the surviving
    // standard monomials, rewrite all tails over the final indices.
    DegreeState next;
    std::vector<bool> is_sec_pivot(prov_std.size(), false);
    for (auto piv : sec.pivots) is_sec_pivot[piv] = true;
    std::vector<std::int64_t> remap(prov_std.size(), -1);
    for (std::size_t i = 0; i < prov_std.size(); ++i)
      if (!is_sec_pivot[i]) {
        remap[i] = static_cast<std::int64_t>(next.std_monos.size());
        next.std_monos.push_back(prov_std[i]);
      }

    // A secondary row is an ideal element pivot + body; the stored tail is
    // the normal form of the pivot, i.e. the negated body.
    std::vector<Tail> sec_tail_final(prov_std.size());
    for (std::size_t r = 0; r < sec.rows.size(); ++r) {
      Tail t;
      for (const auto& [idx, c] : sec.rows[r]) {
        if (idx == sec.pivots[r]) continue;
        t.push_back({static_cast<std::uint32_t>(remap[idx]),
                     static_cast<std::uint32_t>(p - c)});
      }
      sec_tail_final[sec.pivots[r]] = std::move(t);
    }

    scratch.resize(next.std_monos.size());
    auto finalize_tail = [&](const Tail& t) {
      for (const auto& [idx, c] : t) {
        if (is_sec_pivot[idx]) {
          for (const auto& [j, tc] : sec_tail_final[idx])
            scratch.add(j, static_cast<std::uint64_t>(c) * tc);
        } else {
          scratch.add(static_cast<std::uint32_t>(remap[idx]), c);
        }
      }
      return scratch.drain();
    };

    for (std::size_t i = 0; i < prov_lead.size(); ++i) {
      next.lead_monos.push_back(prov_lead[i]);
      next.tails.push_back(finalize_tail(prov_tails[i]));
    }
    for (std::size_t i = 0; i < prov_std.size(); ++i) {
      if (!is_sec_pivot[i]) continue;
      next.lead_monos.push_back(prov_std[i]);
      next.tails.push_back(sec_tail_final[i]);
    }
    next.index();

    result.hilbert.push_back(static_cast<std::int64_t>(next.std_monos.size()));
    if (next.std_monos.empty()) {
      result.status = EmptinessResult::Status::empty;
      result.witness = d;
      return result;
    }
    cur = std::move(next);
  }
  result.status = EmptinessResult::Status::indeterminate;
  return result;
}

}  // namespace mkv::groebner
