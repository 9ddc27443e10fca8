#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "star/common.hpp"

namespace star::detail {

// Longest path in a DAG whose vertices are numbered in topological order
// (edges only go from lower to higher index). Among equally long paths the
// one with the smallest start key wins, then the lexicographically smallest
// sequence of vertex names.
//
// `has_edge(i, j)` is queried only for i < j with both vertices active.
template <class HasEdge>
std::vector<std::size_t> longest_dag_path(const std::vector<std::string>& names,
                                          const std::vector<Cycle>& start_keys,
                                          const std::vector<bool>& active, HasEdge has_edge) {
  const std::size_t n = names.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> length(n, 0);
  std::vector<std::size_t> next(n, none);

  // <0 if the path from u sorts before the path from v by names.
  auto compare_paths = [&](std::size_t u, std::size_t v) {
    while (u != none && v != none) {
      if (int c = names[u].compare(names[v]); c != 0) return c;
      u = next[u];
      v = next[v];
    }
    if (u == v) return 0;
    return u == none ? -1 : 1;
  };

  for (std::size_t v = n; v-- > 0;) {
    if (!active[v]) continue;
    length[v] = 1;
    for (std::size_t w = v + 1; w < n; ++w) {
      if (!active[w] || !has_edge(v, w)) continue;
      if (length[w] + 1 > length[v] ||
          (length[w] + 1 == length[v] && compare_paths(w, next[v]) < 0)) {
        length[v] = length[w] + 1;
        next[v] = w;
      }
    }
  }

  std::size_t best = none;
  for (std::size_t v = 0; v < n; ++v) {
    if (!active[v]) continue;
    if (best == none || length[v] > length[best] ||
        (length[v] == length[best] &&
         (start_keys[v] < start_keys[best] ||
          (start_keys[v] == start_keys[best] && compare_paths(v, best) < 0)))) {
      best = v;
    }
  }

  std::vector<std::size_t> path;
  for (std::size_t v = best; v != none; v = next[v]) path.push_back(v);
  return path;
}

}  // namespace star::detail
