#include "varieties/betti.hpp"

#include <sstream>
#include <stdexcept>

#include "groebner/module.hpp"

namespace mkv::varieties {

BettiTable betti_table(const groebner::IdealHandle& I, int max_len) {
  using groebner::ModPoly;
  using groebner::ModuleContext;

  BettiTable out;
  out.entries[{0, 0}] = 1;

  auto Imin = groebner::with_minimal_gens(I);
  if (Imin.gens().empty()) return out;

  ModuleContext ctx{I.ring(), 1, 0, {0}};
  std::vector<ModPoly> gens;
  for (const auto& g : Imin.gens()) gens.push_back(ModPoly::embed(ctx, g, 0));

  int col = 1;
  while (!gens.empty()) {
    if (col > max_len)
      throw std::runtime_error("betti_table: resolution length cap exceeded");
    for (const auto& g : gens) {
      int d = g.degree(ctx);
      ++out.entries[{col, d}];
      out.max_col = std::max(out.max_col, col);
      out.max_degree = std::max(out.max_degree, d);
    }
    ModuleContext next_ctx;
    auto syz = groebner::syzygies(ctx, gens, next_ctx);
    auto keep = groebner::minimal_generator_indices(next_ctx, syz);
    std::vector<ModPoly> next;
    for (auto i : keep) next.push_back(syz[i]);
    gens = std::move(next);
    ctx = next_ctx;
    ++col;
  }
  return out;
}

std::vector<std::int64_t> alternating_sum_numerator(const BettiTable& b) {
  std::vector<std::int64_t> num(b.max_degree + 1, 0);
  for (const auto& [key, count] : b.entries) {
    auto [col, deg] = key;
    num[deg] += (col % 2 == 0 ? count : -count);
  }
  while (!num.empty() && num.back() == 0) num.pop_back();
  return num;
}

std::string render_display(const BettiTable& b) {
  int max_row = 0;
  for (const auto& [key, count] : b.entries)
    max_row = std::max(max_row, key.second - key.first);
  std::ostringstream os;
  os << "    ";
  for (int c = 0; c <= b.max_col; ++c) {
    os.width(5);
    os << c;
  }
  os << "\n";
  for (int r = 0; r <= max_row; ++r) {
    os.width(2);
    os << r;
    os << ":  ";
    for (int c = 0; c <= b.max_col; ++c) {
      os.width(5);
      std::int64_t v = b.get(c, c + r);
      if (v == 0)
        os << ".";
      else
        os << v;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace mkv::varieties
