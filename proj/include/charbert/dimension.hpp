#pragma once

#include <climits>
#include <cstdint>
#include <vector>

#include "polynomial.hpp"

namespace charbert {

// Dimension of the empty set; any codimension against it is infinite.
inline constexpr int kEmptyDimension = -1;
inline constexpr int kInfiniteCodimension = INT_MAX / 4;

// Krull dimension of k[x]/(G) for a Gröbner basis G over a field: the size of
// a largest set of variables containing the support of no leading monomial.
template <FieldDomain D>
int krull_dimension(const std::vector<Polynomial<D>>& G, std::size_t nvars) {
  if (nvars > 64) throw UnsupportedRepresentation("dimension limited to 64 variables");
  std::vector<std::uint64_t> supports;
  for (const auto& g : G) {
    if (g.is_zero()) continue;
    if (g.leading_monomial().is_one()) return kEmptyDimension;
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (g.leading_monomial()[i]) s |= std::uint64_t(1) << i;
    supports.push_back(s);
  }
  int best = 0;
  // depth-first over include/exclude decisions with a size bound
  auto independent = [&](std::uint64_t set) {
    for (std::uint64_t s : supports)
      if ((s & ~set) == 0) return false;
    return true;
  };
  std::vector<std::pair<std::size_t, std::uint64_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, set] = stack.back();
    stack.pop_back();
    int size = __builtin_popcountll(set);
    if (size + static_cast<int>(nvars - i) <= best) continue;
    if (i == nvars) {
      best = size;
      continue;
    }
    stack.push_back({i + 1, set});
    std::uint64_t with = set | (std::uint64_t(1) << i);
    if (independent(with)) stack.push_back({i + 1, with});
  }
  return best;
}

inline int codimension_between(int ambient_dim, int sub_dim) {
  if (sub_dim == kEmptyDimension) return kInfiniteCodimension;
  return ambient_dim - sub_dim;
}

inline std::string dimension_string(int d) { return d == kEmptyDimension ? "-inf" : std::to_string(d); }
inline std::string codimension_string(int c) { return c >= kInfiniteCodimension ? "inf" : std::to_string(c); }

}  // namespace charbert
