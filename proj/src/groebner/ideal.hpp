#pragma once

#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"
#include "groebner/emptiness.hpp"
#include "groebner/hilbert.hpp"

namespace mkv::groebner {

/// A homogeneous ideal: generator list plus a cache of reduced Groebner
/// bases keyed by monomial order. The cache is guarded by a mutex; readers
/// only ever see completed bases. Copies share the cache (generators are
/// immutable after construction).
class IdealHandle {
 public:
  IdealHandle() = default;
  IdealHandle(FpRingPtr ring, std::vector<FpPoly> gens);

  const FpRingPtr& ring() const { return ring_; }
  const std::vector<FpPoly>& gens() const { return gens_; }

  /// Reduced Groebner basis under the given order (cached).
  const std::vector<FpPoly>& groebner_basis(
      const MonomialOrder& order = MonomialOrder::grevlex()) const;

  /// Full normal form; zero iff f lies in the ideal.
  FpPoly normal_form(const FpPoly& f,
                     const MonomialOrder& order = MonomialOrder::grevlex()) const;

  bool contains(const FpPoly& f) const;
  bool contains_ideal(const IdealHandle& other) const;
  bool equals(const IdealHandle& other) const;  // mutual membership
  bool is_zero_ideal() const;

  /// Cached-basis consistency: every cached basis generates the same ideal
  /// (mutual membership across all cached orders). Used by tests.
  bool caches_consistent() const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::vector<FpPoly>> map;
  };

  FpRingPtr ring_;
  std::vector<FpPoly> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Replace the generator list by a minimal homogeneous generating set.
IdealHandle with_minimal_gens(const IdealHandle& I);

/// (I : f) via syzygies of (gens(I), f); exact, homogeneous in, homogeneous out.
IdealHandle ideal_quotient(const IdealHandle& I, const FpPoly& f);

/// (I : J) = intersection of (I : f) over the generators f of J.
IdealHandle ideal_quotient(const IdealHandle& I, const IdealHandle& J);

IdealHandle intersect(const IdealHandle& I, const IdealHandle& J);

struct SaturationResult {
  IdealHandle ideal;
  int iterations = 0;
  bool stabilized = false;
};

/// Iterated colon (I : J : J : ...) until the chain stabilizes (mutual
/// membership), capped at max_iter steps.
SaturationResult saturate(const IdealHandle& I, const IdealHandle& J,
                          int max_iter = 20);

/// Generators of I intersected with the subring avoiding the first k
/// variables. Requires an elimination order for those variables; computed
/// with block order x0..x{k-1} first.
std::vector<FpPoly> eliminate_first(const IdealHandle& I, std::uint32_t k);

/// Transport a polynomial free of the first k variables into a ring in the
/// remaining variables.
FpPoly drop_first_vars(const FpPoly& f, std::uint32_t k, const FpRingPtr& target);

/// Numerical data from the grevlex lead-term ideal.
HilbertData hilbert_data(const IdealHandle& I);

EmptinessResult is_empty_projective(const IdealHandle& I, int bound);

}  // namespace mkv::groebner
