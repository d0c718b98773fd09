#pragma once

#include <functional>
#include <vector>

#include "factorlab/abelian_group.hpp"

namespace factorlab {

// D(G): one more than the longest zero-sum free sequence over G.
// Depth-first over multisets of non-zero elements (indices non-decreasing), carrying the set
// of non-empty subset sums; a branch dies as soon as 0 becomes a subset sum.
inline int davenport(const AbelianGroup& group) {
  const std::size_t n = group.order();
  if (n == 1) return 1;
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      add[a][b] = static_cast<int>(group.index_of(group.add(group.element_at(a), group.element_at(b))));

  int best = 0;
  std::function<void(std::size_t, int, const std::vector<char>&)> dfs = [&](std::size_t from, int len,
                                                                              const std::vector<char>& sums) {
    best = std::max(best, len);
    for (std::size_t g = from; g < n; ++g) {
      std::vector<char> next = sums;
      next[g] = 1;
      bool dead = false;
      for (std::size_t s = 0; s < n && !dead; ++s)
        if (sums[s]) {
          const int t = add[s][g];
          if (t == 0) dead = true;
          next[t] = 1;
        }
      if (!dead) dfs(g, len + 1, next);
    }
  };
  dfs(1, 0, std::vector<char>(n, 0));
  return best + 1;
}

}  // namespace factorlab
