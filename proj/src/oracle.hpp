#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relations.hpp"
#include "smith_form.hpp"

namespace governing {

/// Finite presentation of the ray class group modulo m * (ramified reals):
/// columns are one cyclic generator of (O/P)^x per finite P, one sign per
/// real place, then one column per class-group generator J_i (chosen prime
/// to m). Rows are the cyclic orders, 2 * sign, the images of the unit
/// generators, and d_i e_{J_i} - image(gamma_i) with (gamma_i) = J_i^d_i.
struct RayPresentation {
  Field field = Field::rational();
  std::vector<Place> finite;
  std::vector<Place> reals;
  std::vector<Ideal> class_ideals;
  std::vector<u64> class_orders;
  IntMatrix rows;
  std::size_t cols() const { return finite.size() + reals.size() + class_ideals.size(); }
};

RayPresentation ray_presentation(const FieldData& K, const std::vector<Place>& finite,
                                 const std::vector<Place>& reals);

/// p-rank of the quotient obtained by keeping only the modulus places
/// selected by mask (bits index finite places, then reals).
std::size_t presentation_p_rank(const RayPresentation& P, std::uint64_t mask, u64 p);

struct RayClassGroup {
  std::vector<Place> modulus;
  std::vector<Place> ram_reals;
  std::vector<mpz_class> invariants;  // nontrivial invariant factors
  mpz_class order = 1;
  std::size_t p_rank(u64 p) const;
};

/// Also checks |Cl_m| = h * |(O/m)^x x signs| / |image of units|.
RayClassGroup ray_class_group(const FieldData& K, const std::vector<Place>& m,
                              const std::vector<Place>& ram_reals);

/// p-rank of the ray class group for the places of T (real places only when
/// p = 2). Over Q this counts Dirichlet characters instead.
long oracle_h1_dim(const FieldData& K, u64 p, const std::vector<Place>& T);

/// Characters of order dividing p of conductor supported on S with support
/// exactly S (S: rational primes and possibly the real place). K = Q only.
mpz_class dirichlet_character_count(const std::vector<Place>& S, u64 p);

/// log_p of the number of characters of order dividing p unramified outside T.
long dirichlet_h1_dim(const std::vector<Place>& T, u64 p);

struct SubsetRow {
  SubsetMask mask = 0;
  std::vector<std::string> places;
  long dim_R = 0;
  long engine = 0;
  long oracle = 0;
};

struct VerificationReport {
  Field field = Field::rational();
  u64 p = 2;
  std::vector<std::string> S;
  mpz_class relation_count, engine_count, oracle_count;
  std::optional<mpz_class> character_count;  // K = Q
  std::vector<SubsetRow> subsets;
  bool counts_agree = false;
  bool dims_agree = false;
  bool proposition_holds = false;  // dim R_X = h1(X) - h1(empty) for every X
  bool pass = false;
  nlohmann::json to_json() const;
};

VerificationReport verify_theorem_main(const FieldData& K, const VirtualUnitBasis& B,
                                       const std::vector<Place>& S, SymbolNormalization norm = {},
                                       std::size_t cap = kDefaultSubsetCap);

}  // namespace governing
