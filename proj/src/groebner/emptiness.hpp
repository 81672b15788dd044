#pragma once

#include <span>
#include <vector>

#include "core.hpp"

namespace mkv::groebner {

/// Outcome of the projective-emptiness degree sweep. `empty` is certified by
/// a witness degree d whose full monomial space lies in the ideal; the sweep
/// never reports emptiness it has not proven, so running out of budget is a
/// distinct indeterminate status.
struct EmptinessResult {
  enum class Status { empty, indeterminate };
  Status status = Status::indeterminate;
  int witness = -1;                    // degree with Hilbert function 0
  std::vector<std::int64_t> hilbert;  // quotient HF at degrees 0..last swept

  bool is_empty() const { return status == Status::empty; }
};

/// Macaulay rank sweep d = 1, 2, ..., bound over F_p: at each degree the
/// span of all shifts of the generators is echelonized (staircase-compressed
/// rows, pivot = largest monomial under grevlex) and the quotient dimension
/// is read off. Independent of the Buchberger path. Generators must be
/// homogeneous.
EmptinessResult is_empty_projective(const FpRingPtr& ring,
                                    std::span<const FpPoly> gens, int bound);

}  // namespace mkv::groebner
