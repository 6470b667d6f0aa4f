#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace governing {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Smith form of a relation matrix R (rows are relations on `cols`
/// generators): U*R*V = diag(s_1, ..., s_k) with s_i | s_{i+1}. The abelian
/// group Z^cols / rowspace(R) is then the direct sum of Z/s_i, where the
/// i-th cyclic generator corresponds to row i of V^{-1} in the original
/// coordinates. Entries beyond the rank are zero (free part).
struct SmithForm {
  std::vector<mpz_class> diagonal;  // length cols, non-negative
  IntMatrix V;                      // cols x cols
  IntMatrix V_inverse;              // cols x cols
};

SmithForm smith_normal_form(IntMatrix R, std::size_t cols, bool want_transform = true);

}  // namespace governing
