#include "smith_form.hpp"

#include <utility>

namespace governing {

namespace {

struct Work {
  IntMatrix A;
  IntMatrix V, Vinv;
  std::size_t m, n;
  bool transform;

  void swap_rows(std::size_t i, std::size_t j) { std::swap(A[i], A[j]); }

  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    if (transform) {
      for (auto& row : V) std::swap(row[i], row[j]);
      std::swap(Vinv[i], Vinv[j]);
    }
  }

  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, const mpz_class& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (A[t][j] != 0) A[i][j] -= q * A[t][j];
  }

  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, const mpz_class& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (A[i][t] != 0) A[i][j] -= q * A[i][t];
    if (transform) {
      for (std::size_t i = 0; i < n; ++i) V[i][j] -= q * V[i][t];
      for (std::size_t k = 0; k < n; ++k) Vinv[t][k] += q * Vinv[j][k];
    }
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (A[i][j] == 0) continue;
        if (!found || mpz_cmpabs(A[i][j].get_mpz_t(), A[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }
};

}  // namespace

SmithForm smith_normal_form(IntMatrix R, std::size_t cols, bool want_transform) {
  Work w;
  w.A = std::move(R);
  w.m = w.A.size();
  w.n = cols;
  w.transform = want_transform;
  for (auto& row : w.A) row.resize(cols, 0);
  if (want_transform) {
    w.V.assign(cols, std::vector<mpz_class>(cols, 0));
    w.Vinv = w.V;
    for (std::size_t i = 0; i < cols; ++i) w.V[i][i] = w.Vinv[i][i] = 1;
  }
  SmithForm out;
  out.diagonal.assign(cols, 0);

  for (std::size_t t = 0; t < std::min(w.m, w.n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!w.find_pivot(t, pi, pj)) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < w.m; ++i) {
        if (w.A[i][t] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), w.A[i][t].get_mpz_t(), w.A[t][t].get_mpz_t());
        w.row_sub(i, t, q);
        if (w.A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.n; ++j) {
        if (w.A[t][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), w.A[t][j].get_mpz_t(), w.A[t][t].get_mpz_t());
        w.col_sub(j, t, q);
        if (w.A[t][j] != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row t / column t to the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < w.m; ++i)
          if (w.A[i][t] != 0 && mpz_cmpabs(w.A[i][t].get_mpz_t(), w.A[bi][bj].get_mpz_t()) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < w.n; ++j)
          if (w.A[t][j] != 0 && mpz_cmpabs(w.A[t][j].get_mpz_t(), w.A[bi][bj].get_mpz_t()) < 0) {
            bi = t;
            bj = j;
          }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // divisibility of the remaining block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < w.m && divides; ++i)
        for (std::size_t j = t + 1; j < w.n; ++j)
          if (w.A[i][j] != 0 && !mpz_divisible_p(w.A[i][j].get_mpz_t(), w.A[t][t].get_mpz_t())) {
            for (std::size_t k = 0; k < w.n; ++k) w.A[t][k] += w.A[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.diagonal[t] = abs(w.A[t][t]);
  }
  out.V = std::move(w.V);
  out.V_inverse = std::move(w.Vinv);
  return out;
}

}  // namespace governing
