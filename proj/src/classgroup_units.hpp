#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "field_core.hpp"

namespace governing {

/// Canonical label of an ideal class: the reduced form (a, b) of the class
/// for imaginary fields, the least reduced ideal (a, b) of the reduction
/// cycle for real fields. The ideal is [a, (b + sqrt(D))/2].
struct ClassKey {
  i64 a = 1;
  i64 b = 0;
  auto operator<=>(const ClassKey&) const = default;
};

struct ReducedIdeal {
  ClassKey key;
  Ideal representative;
  std::optional<FieldElement> generator;  // set when the input ideal is principal
};

/// Reduces an integral ideal to its class label. With want_generator, also
/// tracks the transformation so that a generator is returned for principal
/// ideals.
ReducedIdeal reduce_ideal(const Field& F, const Ideal& I, bool want_generator = false);

ClassKey class_key(const Field& F, const Ideal& I);

/// Primitive ideal [a, (b + sqrt(D))/2] for a class label.
Ideal ideal_from_key(const Field& F, const ClassKey& key);

/// A generator of A when A is principal, std::nullopt otherwise.
std::optional<FieldElement> is_principal_with_generator(const Field& F, const Ideal& A);

struct ClassGroupOptions {
  i64 disc_bound = 10000;
};

class ClassGroupData {
 public:
  Field field = Field::rational();
  std::vector<u64> invariants;   // d_1 | d_2 | ..., each > 1
  std::vector<Ideal> generators;  // one per invariant factor, reduced
  u64 h = 1;

  /// Exponents of the class of I over `generators`.
  std::vector<u64> coordinates(const Ideal& I) const;
  std::vector<u64> coordinates(const ClassKey& key) const;

  const std::vector<ClassKey>& keys() const { return keys_; }
  /// Rebuilds the structural part (no coordinate table) from stored data.
  static ClassGroupData from_structure(const Field& F, std::vector<u64> invariants,
                                       std::vector<Ideal> generators);
  bool has_coordinates() const { return !coords_.empty(); }

 private:
  friend ClassGroupData class_group(const Field&, ClassGroupOptions);
  std::vector<ClassKey> keys_;
  std::map<ClassKey, std::vector<u64>> coords_;
};

ClassGroupData class_group(const Field& F, ClassGroupOptions options = {});

/// The first prime ideal, in order of the rational prime below it and then
/// of the place label, whose class has the given label and which is not one
/// of the places in `avoid`.
Place prime_in_class(const Field& F, const ClassKey& key, const std::vector<Place>& avoid);

/// Ideals whose classes form an F_p-basis of Cl[p]: J_i^(d_i/p) for the
/// invariant factors divisible by p.
std::vector<Ideal> p_torsion_basis(const ClassGroupData& C, u64 p);

/// Number of reduced positive definite forms of discriminant D < 0, by
/// direct enumeration.
u64 count_reduced_forms(i64 D);

struct UnitData {
  u64 torsion_order = 2;
  FieldElement torsion_generator;
  std::optional<FieldElement> fundamental_unit;
  int fundamental_norm = 0;
};

UnitData unit_group(const Field& F);

/// Continued fraction data for the fundamental unit: the period of the
/// reduced quadratic irrational generating O_K, its partial quotients and
/// the units q_k*xi + q_{k-1} attached to every convergent in the period.
struct ContinuedFraction {
  FieldElement xi;
  std::vector<mpz_class> partial_quotients;
  std::vector<FieldElement> convergent_units;  // candidate units per convergent
};

ContinuedFraction unit_continued_fraction(const Field& F);

/// Class group and units of one field, computed together.
struct FieldData {
  Field field = Field::rational();
  ClassGroupData classes;
  UnitData units;
  static FieldData compute(const Field& F, ClassGroupOptions options = {});
};

int delta_field(const Field& F, u64 p);
int delta_place(const Place& v, u64 p);

}  // namespace governing
