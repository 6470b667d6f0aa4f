#pragma once

#include <string_view>
#include <vector>

#include "classgroup_units.hpp"

namespace governing {

enum class VirtualUnitSource { Torsion, FundamentalUnit, ClassLift };

std::string_view source_name(VirtualUnitSource s);

/// An element x with (x) = J^p. Unit sources carry J = (1).
struct VirtualUnit {
  FieldElement value;
  VirtualUnitSource source = VirtualUnitSource::Torsion;
  Ideal witness = Ideal::unit(Field::rational());
  std::string witness_place;  // token of the prime J for class lifts
};

/// Representatives of a basis of V_0/K^xp, i.e. elements whose ideal is a
/// p-th power, modulo p-th powers. Every value has valuation 0 at the
/// finite places listed in `avoid`.
struct VirtualUnitBasis {
  Field field = Field::rational();
  u64 p = 2;
  std::vector<VirtualUnit> entries;
  std::vector<Place> avoid;
  std::size_t d() const { return entries.size(); }
};

/// Units first (torsion generator when p | w, then the fundamental unit),
/// followed by one class lift per element of an F_p-basis of Cl[p].
VirtualUnitBasis virtual_unit_basis(const Field& F, u64 p, const ClassGroupData& C,
                                    const UnitData& U, const std::vector<Place>& avoid);

struct ExactSequenceReport {
  std::size_t unit_part = 0;
  std::size_t class_part = 0;
  std::size_t total = 0;
};

/// Checks d = r1 + r2 - 1 + delta(K) + dim Cl[p]; DimensionMismatch otherwise.
ExactSequenceReport exact_sequence_report(const VirtualUnitBasis& B, const ClassGroupData& C);

/// dim Cl[p]: number of invariant factors divisible by p.
std::size_t class_p_rank(const ClassGroupData& C, u64 p);

}  // namespace governing
