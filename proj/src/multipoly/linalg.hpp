#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mkv::multipoly {

/// Dense matrix over an exact field, row major. Pivoting is deterministic
/// (first usable row, columns left to right) so every derived object --
/// ranks, reduced forms, nullspace bases -- is reproducible bit for bit.
template <class F>
struct DenseMat {
  using Elem = typename F::Elem;

  F field;
  std::size_t rows = 0, cols = 0;
  std::vector<Elem> a;

  DenseMat(F f, std::size_t r, std::size_t c)
      : field(std::move(f)), rows(r), cols(c), a(r * c, field.zero()) {}

  Elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Elem& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

/// In-place reduced row echelon form. Returns the rank; pivot columns go to
/// *pivots when given.
template <class F>
std::size_t rref(DenseMat<F>& m, std::vector<std::size_t>* pivots = nullptr) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t sel = rank;
    while (sel < m.rows && F::is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows) continue;
    if (sel != rank)
      for (std::size_t c = 0; c < m.cols; ++c)
        std::swap(m.at(sel, c), m.at(rank, c));
    auto inv = m.field.inv(m.at(rank, col));
    for (std::size_t c = col; c < m.cols; ++c) m.at(rank, c) = m.at(rank, c) * inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank || F::is_zero(m.at(r, col))) continue;
      auto f = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) = m.at(r, c) - f * m.at(rank, c);
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

template <class F>
std::size_t rank_of(DenseMat<F> m) {
  return rref(m);
}

/// Canonical nullspace basis: one vector per free column, unit coordinate at
/// the free column, pivot coordinates solved from the reduced form.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(DenseMat<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t rank = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<typename F::Elem> v(m.cols, m.field.zero());
    v[free_col] = m.field.one();
    for (std::size_t r = 0; r < rank; ++r) {
      // row r: x_{pivot[r]} + sum over free cols = 0
      v[pivots[r]] = m.field.zero() - m.at(r, free_col);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace mkv::multipoly
