#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fp_linalg.hpp"
#include "frobenius.hpp"

namespace governing {

inline constexpr std::size_t kDefaultSubsetCap = 16;

using SubsetMask = std::uint32_t;

/// Dependence relations among the columns of a governing matrix.
/// sigma_{D[j]} = sum_i F[j][i] sigma_{I[i]}; basis[j] = e_{D[j]} - sum_i F[j][i] e_{I[i]}.
struct RelationSpace {
  u64 p = 2;
  std::vector<Place> places;
  std::vector<std::size_t> I, D;
  std::vector<FpVec> F;
  std::vector<FpVec> basis;
  std::size_t r = 0, s = 0;
  nlohmann::json to_json() const;
};

RelationSpace relation_space(const GoverningMatrix& G);

/// rank of the columns of G selected by mask (bit i = column i).
std::size_t subset_rank(const GoverningMatrix& G, SubsetMask mask);

/// sum over T subset of {0..n-1} of (-1)^(n-|T|) p^exponent(T).
mpz_class inclusion_exclusion(std::size_t n, u64 p, const std::function<long(SubsetMask)>& exponent);

/// Number of (a_v) in (F_p^x)^S with sum a_v sigma_v = 0.
mpz_class count_full_support_relations(const GoverningMatrix& G, std::size_t cap = kDefaultSubsetCap);

/// dim H^1(G_Z, Z/p) = -r1 - r2 + 1 - delta(K) + dim V_Z/K^xp + sum delta(K_v).
long koch_formula(const Field& F, u64 p, std::size_t dim_VZ, long delta_sum);

struct KochReport {
  std::vector<Place> Z;
  std::size_t dim_VZ = 0;
  long delta_sum = 0;
  long h1 = 0;
  long h1_empty = 0;
};

/// Places with delta(K_v) = 0 contribute neither a column nor a delta term.
KochReport koch_dimension(const std::vector<Place>& Z, const VirtualUnitBasis& B,
                          SymbolNormalization norm = {});

/// dim H^1(G_T) for every T subset of the places of G (all with delta = 1),
/// indexed by mask.
std::vector<long> koch_subset_dims(const Field& F, const GoverningMatrix& G);

/// sum over T of (-1)^(|S|-|T|) p^(h1[T] - h1[0]).
mpz_class count_exact_ramified_classes(std::size_t n, u64 p, const std::vector<long>& h1,
                                       std::size_t cap = kDefaultSubsetCap);

struct LedgerRow {
  std::string place;
  std::string kind;  // "above-p", "X-inf", "Z-inf", "X-fin"
  long difference = 0;
};

struct LedgerReport {
  std::vector<Place> X;
  std::vector<LedgerRow> rows;
  long mM = 0;  // dim of the Selmer group with the M conditions
  long mN = 0;  // dim of the Selmer group with the N conditions
  long value = 0;
  long s = 0;
  nlohmann::json to_json() const;
};

/// Dimension ledger for X, checked against s from relation_space(G);
/// LedgerMismatch on disagreement. G must be the governing matrix of X.
LedgerReport wiles_greenberg_ledger(const std::vector<Place>& X, const VirtualUnitBasis& B,
                                    const GoverningMatrix& G);

}  // namespace governing

namespace governing {

/// Enumerates the span of the relation basis and the kernel of G as sets
/// of vectors (p^s elements each) and compares them.
bool relation_basis_spans_kernel(const GoverningMatrix& G, const RelationSpace& R);

}  // namespace governing
