#pragma once

#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "groebner/ideal.hpp"

namespace mkv::varieties {

using Point = std::vector<Fp>;

/// Derive a child seed from a base seed and a tag (FNV-1a + splitmix64);
/// keeps every construction reproducible from one CLI seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

/// Deterministic RNG: mt19937_64 is fully specified by the standard, and we
/// draw with plain modulo so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }
  Fp field_elem(const PrimeField& F, bool nonzero = false);
  Point point(const FpRingPtr& ring, bool nonzero = true);

 private:
  std::mt19937_64 eng_;
};

bool is_zero_point(const Point& p);
Point normalize_projective(Point p);
bool same_projective_point(const Point& a, const Point& b);

Fp evaluate_at(const FpPoly& f, const Point& p);
bool all_vanish(std::span<const FpPoly> polys, const Point& p);

/// Restriction of f to the line a + t b as a binary form in (s, t).
FpPoly restrict_to_line(const FpPoly& f, const Point& a, const Point& b);

/// Projective roots [s : t] of a binary form, by scanning F_p and infinity.
std::vector<std::pair<Fp, Fp>> binary_form_roots(const FpPoly& bf);

/// Points of the hypersurface V(f) via random lines; exact roots only.
std::vector<Point> sample_hypersurface(const FpPoly& f, std::size_t count,
                                       Rng& rng, std::size_t max_tries = 4000);

/// Images of random source points under a parametrization (base locus
/// skipped); returns target points satisfying nothing a priori.
std::vector<Point> sample_parametrized(std::span<const FpPoly> forms,
                                       std::size_t count, Rng& rng,
                                       std::size_t max_tries = 4000);

/// Rational points of a positive-codimension subvariety: slice with random
/// complementary linear subspaces and solve the resulting zero-dimensional
/// systems exactly. Every returned point satisfies all generators.
std::vector<Point> sample_subvariety(const groebner::IdealHandle& I,
                                     int proj_dim, std::size_t count, Rng& rng,
                                     std::size_t max_tries = 4000);

/// All rational points of a zero-dimensional projective scheme given by
/// generators in a small ring (chart decomposition + lex elimination).
std::vector<Point> projective_points_of(const FpRingPtr& ring,
                                        std::span<const FpPoly> gens);

}  // namespace mkv::varieties
