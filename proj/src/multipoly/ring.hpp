#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "multipoly/order.hpp"

namespace mkv::multipoly {

/// Ambient polynomial ring descriptor: variable count, scalar field and the
/// active monomial order. Variables are named x0..x{n-1}.
template <class F>
struct PolyRing {
  std::uint32_t nvars = 0;
  F field;
  MonomialOrder order;

  PolyRing(std::uint32_t n, F f, MonomialOrder o = MonomialOrder::grevlex())
      : nvars(n), field(std::move(f)), order(std::move(o)) {
    if (n == 0 || n > kMaxVars)
      throw std::invalid_argument("PolyRing: bad variable count");
  }

  std::string var_name(std::uint32_t i) const { return "x" + std::to_string(i); }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.nvars == b.nvars && a.field == b.field && a.order == b.order;
  }

  /// Same ring up to the active order; arithmetic requires full equality.
  bool same_base(const PolyRing& o) const {
    return nvars == o.nvars && field == o.field;
  }
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
RingPtr<F> make_ring(std::uint32_t nvars, F field,
                     MonomialOrder order = MonomialOrder::grevlex()) {
  return std::make_shared<const PolyRing<F>>(nvars, std::move(field),
                                             std::move(order));
}

}  // namespace mkv::multipoly
