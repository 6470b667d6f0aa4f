#include "relations.hpp"

#include <bit>
#include <cmath>
#include <set>

namespace governing {

RelationSpace relation_space(const GoverningMatrix& G) {
  RelationSpace R;
  R.p = G.p;
  R.places = G.places;
  const std::size_t n = G.columns.size();
  RowEchelon E = row_reduce(columns_to_rows(G.columns, G.d), n, G.p);
  R.r = E.rank;
  R.I = E.pivots;
  std::vector<bool> pivot(n, false);
  for (std::size_t c : R.I) pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot[c]) continue;
    R.D.push_back(c);
    FpVec coeff(R.r);
    for (std::size_t i = 0; i < R.r; ++i) coeff[i] = E.rows[i][c];
    FpVec rel(n, 0);
    rel[c] = 1;
    for (std::size_t i = 0; i < R.r; ++i) rel[R.I[i]] = (G.p - coeff[i]) % G.p;
    R.F.push_back(std::move(coeff));
    R.basis.push_back(std::move(rel));
  }
  R.s = R.D.size();
  const auto rows = columns_to_rows(G.columns, G.d);
  for (const auto& rel : R.basis)
    for (u64 y : mat_vec(rows, rel, G.p))
      if (y != 0) fail(ErrorCode::Internal, "relation does not lie in the kernel");
  return R;
}

nlohmann::json RelationSpace::to_json() const {
  std::vector<std::string> itok, dtok;
  for (std::size_t i : I) itok.push_back(places[i].token());
  for (std::size_t j : D) dtok.push_back(places[j].token());
  return nlohmann::json{{"r", r}, {"s", s}, {"I", itok}, {"D", dtok}, {"basis", basis}};
}

std::size_t subset_rank(const GoverningMatrix& G, SubsetMask mask) {
  std::vector<FpVec> cols;
  for (std::size_t j = 0; j < G.columns.size(); ++j)
    if (mask >> j & 1u) cols.push_back(G.columns[j]);
  if (cols.empty() || G.d == 0) return 0;
  // rank of the column set equals the rank of the transpose
  return rank_mod_p(cols, G.d, G.p);
}

mpz_class inclusion_exclusion(std::size_t n, u64 p, const std::function<long(SubsetMask)>& exponent) {
  mpz_class total = 0;
  const SubsetMask full = n == 0 ? 0 : static_cast<SubsetMask>((std::uint64_t{1} << n) - 1);
  for (std::uint64_t m = 0; m <= full; ++m) {
    const SubsetMask T = static_cast<SubsetMask>(m);
    const long e = exponent(T);
    if (e < 0) fail(ErrorCode::Internal, "negative exponent in inclusion-exclusion");
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), p, static_cast<unsigned long>(e));
    if ((n - static_cast<std::size_t>(std::popcount(T))) % 2) total -= term;
    else total += term;
  }
  return total;
}

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (cap > 31) cap = 31;
  if (n > cap)
    fail(ErrorCode::SetTooLarge, "|S| = " + std::to_string(n) + " exceeds the subset cap " + std::to_string(cap));
}

}  // namespace

mpz_class count_full_support_relations(const GoverningMatrix& G, std::size_t cap) {
  const std::size_t n = G.columns.size();
  check_cap(n, cap);
  return inclusion_exclusion(n, G.p, [&](SubsetMask T) {
    return static_cast<long>(std::popcount(T)) - static_cast<long>(subset_rank(G, T));
  });
}

long koch_formula(const Field& F, u64 p, std::size_t dim_VZ, long delta_sum) {
  return -F.r1() - F.r2() + 1 - delta_field(F, p) + static_cast<long>(dim_VZ) + delta_sum;
}

KochReport koch_dimension(const std::vector<Place>& Z, const VirtualUnitBasis& B, SymbolNormalization norm) {
  KochReport K;
  K.Z = Z;
  std::vector<Place> active;
  for (const Place& v : Z) {
    if (v.is_real()) {
      if (B.p != 2) fail(ErrorCode::ArchimedeanRequiresP2, v.token() + " needs p = 2");
    } else if (v.ell == B.p) {
      fail(ErrorCode::WildPlace, v.token() + " lies above p = " + std::to_string(B.p));
    }
    if (delta_place(v, B.p) == 1) active.push_back(v);
  }
  GoverningMatrix G = governing_matrix(active, B, norm);
  const SubsetMask all = active.empty() ? 0 : static_cast<SubsetMask>((std::uint64_t{1} << active.size()) - 1);
  K.dim_VZ = B.d() - subset_rank(G, all);
  K.delta_sum = static_cast<long>(active.size());
  K.h1 = koch_formula(B.field, B.p, K.dim_VZ, K.delta_sum);
  K.h1_empty = koch_formula(B.field, B.p, B.d(), 0);
  return K;
}

std::vector<long> koch_subset_dims(const Field& F, const GoverningMatrix& G) {
  const std::size_t n = G.columns.size();
  check_cap(n, 31);
  std::vector<long> out(std::size_t{1} << n);
  for (std::size_t m = 0; m < out.size(); ++m) {
    const auto T = static_cast<SubsetMask>(m);
    out[m] = koch_formula(F, G.p, G.d - subset_rank(G, T), std::popcount(T));
  }
  return out;
}

mpz_class count_exact_ramified_classes(std::size_t n, u64 p, const std::vector<long>& h1, std::size_t cap) {
  check_cap(n, cap);
  if (h1.size() != (std::size_t{1} << n)) fail(ErrorCode::InvalidArgument, "subset table has the wrong size");
  return inclusion_exclusion(n, p, [&](SubsetMask T) { return h1[T] - h1[0]; });
}

LedgerReport wiles_greenberg_ledger(const std::vector<Place>& X, const VirtualUnitBasis& B,
                                    const GoverningMatrix& G) {
  if (G.places.size() != X.size()) fail(ErrorCode::InvalidArgument, "matrix does not match X");
  LedgerReport L;
  L.X = X;
  const Field& F = B.field;
  for (const Place& v : X)
    if (v.is_real() && B.p != 2) fail(ErrorCode::ArchimedeanRequiresP2, v.token() + " needs p = 2");

  for (const Place& v : factor_rational_prime(F, B.p)) L.rows.push_back({v.token(), "above-p", 0});
  for (const Place& v : real_places(F)) {
    bool in_x = false;
    for (const Place& x : X) in_x = in_x || x == v;
    if (in_x) L.rows.push_back({v.token(), "X-inf", 1});
    else L.rows.push_back({v.token(), "Z-inf", 0});
  }
  for (const Place& v : X)
    if (v.is_finite()) L.rows.push_back({v.token(), "X-fin", 1});

  // V_X/K^xp is the left kernel of G: vectors y with y^T G = 0
  RankKernel left = rank_and_kernel(G.columns, B.d(), B.p);
  L.mM = static_cast<long>(B.d());
  L.mN = static_cast<long>(left.kernel.size());
  long local = 0;
  for (const auto& row : L.rows) local += row.difference;
  L.value = L.mN - L.mM + local;
  L.s = static_cast<long>(relation_space(G).s);
  if (local != static_cast<long>(X.size()))
    fail(ErrorCode::LedgerMismatch, "local rows sum to " + std::to_string(local) + ", |X| = " + std::to_string(X.size()));
  if (L.value != L.s)
    fail(ErrorCode::LedgerMismatch, "ledger value " + std::to_string(L.value) + " differs from s = " + std::to_string(L.s));
  return L;
}

nlohmann::json LedgerReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) rows_j.push_back({{"place", r.place}, {"kind", r.kind}, {"diff", r.difference}});
  return nlohmann::json{{"mN", mN}, {"mM", mM}, {"value", value}, {"rows", rows_j}};
}

}  // namespace governing

namespace governing {

namespace {

std::set<FpVec> enumerate_span(const std::vector<FpVec>& vecs, std::size_t n, u64 p) {
  std::set<FpVec> out{FpVec(n, 0)};
  for (const auto& v : vecs) {
    std::set<FpVec> next;
    for (const auto& w : out)
      for (u64 c = 0; c < p; ++c) {
        FpVec z = w;
        for (std::size_t i = 0; i < n; ++i) z[i] = (z[i] + mulmod(c, v[i], p)) % p;
        next.insert(std::move(z));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

bool relation_basis_spans_kernel(const GoverningMatrix& G, const RelationSpace& R) {
  const std::size_t n = G.columns.size();
  const auto rows = columns_to_rows(G.columns, G.d);
  // the kernel as a set: all x in F_p^n with G x = 0, by direct enumeration when small
  std::set<FpVec> kernel;
  if (std::pow(static_cast<double>(G.p), static_cast<double>(n)) <= 1e6) {
    FpVec x(n, 0);
    for (;;) {
      bool zero = true;
      for (u64 y : mat_vec(rows, x, G.p)) zero = zero && y == 0;
      if (zero) kernel.insert(x);
      std::size_t k = 0;
      while (k < n && ++x[k] == G.p) x[k++] = 0;
      if (k == n) break;
    }
  } else {
    kernel = enumerate_span(rank_and_kernel(rows, n, G.p).kernel, n, G.p);
  }
  return enumerate_span(R.basis, n, G.p) == kernel;
}

}  // namespace governing
