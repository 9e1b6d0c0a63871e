#include <algorithm>
#include <limits>
#include <stdexcept>

#include "prefforge/metrics.hpp"

namespace prefforge {

// Shortest augmenting paths with row/column potentials, O(n^3).
Assignment min_cost_assignment(std::span<const std::int64_t> cost, std::size_t size) {
  if (cost.size() != size * size) throw std::invalid_argument("min_cost_assignment: cost matrix is not square");
  Assignment out;
  out.column_of_row.assign(size, -1);
  if (size == 0) return out;

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t n = size;
  // 1-based internally; index 0 is the virtual row/column.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<std::int64_t> minv(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      const std::int64_t* row = cost.data() + (i0 - 1) * n;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = row_of_col[j];
    out.column_of_row[i - 1] = static_cast<int>(j - 1);
    out.cost += cost[(i - 1) * n + (j - 1)];
  }
  return out;
}

}  // namespace prefforge
