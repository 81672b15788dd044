#pragma once

#include "exactalg/fp.hpp"
#include "exactalg/jet.hpp"
#include "exactalg/rational.hpp"
#include "multipoly/poly.hpp"

namespace mkv {

using exactalg::Fp;
using exactalg::is_prime_u32;
using exactalg::PrimeField;
using exactalg::QQField;
using exactalg::Rational;

using multipoly::Monomial;
using multipoly::MonomialHash;
using multipoly::MonomialOrder;
using multipoly::Poly;

using FpPoly = multipoly::Poly<PrimeField>;
using QQPoly = multipoly::Poly<QQField>;
using FpRingPtr = multipoly::RingPtr<PrimeField>;
using QQRingPtr = multipoly::RingPtr<QQField>;

using FpJetRingPtr = exactalg::JetRingPtr<PrimeField>;
using FpJet = exactalg::Jet<PrimeField>;

inline FpRingPtr fp_ring(std::uint32_t nvars, std::uint32_t p,
                         MonomialOrder order = MonomialOrder::grevlex()) {
  return multipoly::make_ring(nvars, PrimeField(p), std::move(order));
}

inline QQRingPtr qq_ring(std::uint32_t nvars,
                         MonomialOrder order = MonomialOrder::grevlex()) {
  return multipoly::make_ring(nvars, QQField{}, std::move(order));
}

}  // namespace mkv
