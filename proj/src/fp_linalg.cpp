#include "fp_linalg.hpp"

#include "error.hpp"

namespace governing {

RowEchelon row_reduce(std::vector<FpVec> rows, std::size_t cols, u64 p) {
  RowEchelon E;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const u64 inv = invmod(rows[r][c] % p, p);
    for (u64& x : rows[r]) x = mulmod(x % p, inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const u64 f = rows[i][c] % p;
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = (rows[i][j] % p + p - mulmod(f, rows[r][j], p)) % p;
    }
    E.pivots.push_back(c);
    ++r;
  }
  E.rank = r;
  for (auto& row : rows)
    for (u64& x : row) x %= p;
  E.rows = std::move(rows);
  return E;
}

std::size_t rank_mod_p(std::vector<FpVec> rows, std::size_t cols, u64 p) {
  return row_reduce(std::move(rows), cols, p).rank;
}

FpVec mat_vec(const std::vector<FpVec>& rows, const FpVec& x, u64 p) {
  FpVec out(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    u64 acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc = (acc + mulmod(rows[i][j] % p, x[j] % p, p)) % p;
    out[i] = acc;
  }
  return out;
}

RankKernel rank_and_kernel(const std::vector<FpVec>& rows, std::size_t cols, u64 p) {
  RowEchelon E = row_reduce(rows, cols, p);
  RankKernel K;
  K.rank = E.rank;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : E.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    FpVec x(cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < E.rank; ++i) x[E.pivots[i]] = (p - E.rows[i][f]) % p;
    for (u64 y : mat_vec(rows, x, p))
      if (y != 0) fail(ErrorCode::Internal, "kernel vector does not annihilate the matrix");
    K.kernel.push_back(std::move(x));
  }
  return K;
}

std::vector<FpVec> columns_to_rows(const std::vector<FpVec>& columns, std::size_t height) {
  std::vector<FpVec> rows(height, FpVec(columns.size(), 0));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < height; ++i) rows[i][j] = columns[j][i];
  return rows;
}

}  // namespace governing
