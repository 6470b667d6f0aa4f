#pragma once

#include <vector>

#include "arith.hpp"

namespace governing {

using FpVec = std::vector<u64>;

/// Reduced row echelon form over F_p. `pivots[i]` is the pivot column of
/// row i; pivots are chosen leftmost first.
struct RowEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<FpVec> rows;  // the first `rank` rows are nonzero
};

RowEchelon row_reduce(std::vector<FpVec> rows, std::size_t cols, u64 p);

std::size_t rank_mod_p(std::vector<FpVec> rows, std::size_t cols, u64 p);

struct RankKernel {
  std::size_t rank = 0;
  std::vector<FpVec> kernel;  // basis of {x : M x = 0}
};

/// Rank and right kernel of the matrix with the given rows; every kernel
/// vector is checked against M.
RankKernel rank_and_kernel(const std::vector<FpVec>& rows, std::size_t cols, u64 p);

/// M x over F_p.
FpVec mat_vec(const std::vector<FpVec>& rows, const FpVec& x, u64 p);

/// Rows of the matrix whose columns are given (each of length `height`).
std::vector<FpVec> columns_to_rows(const std::vector<FpVec>& columns, std::size_t height);

}  // namespace governing
