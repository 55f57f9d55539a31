#include "nettomo/intlinalg.hpp"

#include <stdexcept>
#include <utility>

namespace nettomo {

namespace {

// Bareiss fraction-free elimination with row pivoting and column skipping.
// Returns (rank, determinant-if-square). All divisions are exact by
// Sylvester's identity, so every intermediate entry stays an integer.
std::pair<int, bigint> bareiss(std::vector<std::vector<long long>> const& m) {
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (auto const& r : m)
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");

  std::vector<std::vector<bigint>> a(rows, std::vector<bigint>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];

  int rank = 0;
  int sign = 1;
  bigint prev = 1;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (a[r][c] != 0) { pivot = r; break; }
    if (pivot == rows) continue;  // column already eliminated
    if (pivot != static_cast<std::size_t>(rank)) {
      std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
      sign = -sign;
    }
    auto const& prow = a[static_cast<std::size_t>(rank)];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t cc = c + 1; cc < cols; ++cc)
        a[r][cc] = (prow[c] * a[r][cc] - a[r][c] * prow[cc]) / prev;
      a[r][c] = 0;
    }
    prev = prow[c];
    ++rank;
  }

  bigint det = 0;
  if (rows == cols) {
    if (static_cast<std::size_t>(rank) == rows)
      det = sign > 0 ? prev : -prev;  // last pivot of full elimination == det
    else
      det = 0;
  }
  return {rank, det};
}

}  // namespace

int exact_rank(std::vector<std::vector<long long>> const& m) { return bareiss(m).first; }

bigint exact_det(std::vector<std::vector<long long>> const& m) {
  if (m.size() == 0) return 1;
  if (m.size() != m[0].size()) throw std::invalid_argument("exact_det requires a square matrix");
  return bareiss(m).second;
}

}  // namespace nettomo
