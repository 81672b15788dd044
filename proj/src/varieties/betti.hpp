#pragma once

#include <map>
#include <string>
#include <vector>

#include "core.hpp"
#include "groebner/ideal.hpp"

namespace mkv::varieties {

/// Graded Betti numbers of R/I: entries[(col, degree)] = beta_{col, degree}.
/// Column 0 is the single 1 in degree 0 for the cyclic quotient.
struct BettiTable {
  std::map<std::pair<int, int>, std::int64_t> entries;
  int max_col = 0;
  int max_degree = 0;

  std::int64_t get(int col, int degree) const {
    auto it = entries.find({col, degree});
    return it == entries.end() ? 0 : it->second;
  }
};

/// Minimal graded Betti numbers via iterated syzygies of minimal generating
/// sets. Throws if the resolution runs past max_len steps.
BettiTable betti_table(const groebner::IdealHandle& I, int max_len = 6);

/// K_j = sum_c (-1)^c beta_{c,j}; equals the Hilbert series numerator of R/I.
std::vector<std::int64_t> alternating_sum_numerator(const BettiTable& b);

/// Classic display: rows indexed by degree - column, columns by homological
/// index, dots for zeros.
std::string render_display(const BettiTable& b);

}  // namespace mkv::varieties
