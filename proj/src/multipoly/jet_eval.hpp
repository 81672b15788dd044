#pragma once

#include <functional>
#include <span>
#include <unordered_map>

#include "exactalg/jet.hpp"
#include "multipoly/poly.hpp"

namespace mkv::multipoly {

/// Evaluate a polynomial at a vector of jets (one per ring variable) with
/// memoized monomial values; the workhorse behind order-of-vanishing checks.
template <class F>
exactalg::Jet<F> jet_evaluate(const Poly<F>& f,
                              std::span<const exactalg::Jet<F>> args) {
  using JetT = exactalg::Jet<F>;
  if (args.size() != f.ring()->nvars)
    throw std::invalid_argument("jet_evaluate: wrong argument count");
  auto jring = args.empty() ? nullptr : args[0].ring();
  for (const auto& a : args) a.require_same(args[0]);

  std::unordered_map<Monomial, JetT, MonomialHash> cache;
  cache.emplace(Monomial(), JetT::constant(jring, jring->field().one()));

  std::function<const JetT&(const Monomial&)> eval =
      [&](const Monomial& m) -> const JetT& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::uint32_t v = 0;
    while (m.exponent(v) == 0) ++v;
    Monomial rest = m / Monomial::variable(v);
    JetT val = eval(rest) * args[v];
    return cache.emplace(m, std::move(val)).first->second;
  };

  JetT acc(jring);
  for (const auto& t : f.terms()) acc = acc + eval(t.m).scaled(t.c);
  return acc;
}

}  // namespace mkv::multipoly
