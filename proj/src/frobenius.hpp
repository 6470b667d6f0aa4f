#pragma once

#include <vector>

#include "json.hpp"
#include "virtual_units.hpp"

namespace governing {

/// Selects the primitive p-th root of unity at finite places:
/// zeta_v = g^((q-1)/p) with g the generator of the given rank in the
/// residue field's enumeration (rank 0 is the canonical generator).
struct SymbolNormalization {
  unsigned generator_rank = 0;
};

/// e in [0, p) with u^((q-1)/p) = zeta_v^e for the unit part u of alpha at a
/// finite place; at a real place (p = 2 only) 1 if alpha is negative.
u64 power_residue_symbol(const Place& v, const FieldElement& alpha, u64 p,
                         SymbolNormalization norm = {});

struct FrobeniusVector {
  Place place;
  std::vector<u64> raw;
  std::vector<u64> normalized;  // first nonzero coordinate scaled to 1
};

FrobeniusVector frobenius_vector(const Place& v, const VirtualUnitBasis& B,
                                 SymbolNormalization norm = {});

/// Columns are the raw Frobenius vectors of S, in the order given.
struct GoverningMatrix {
  u64 p = 2;
  std::size_t d = 0;
  std::vector<Place> places;
  std::vector<std::vector<u64>> columns;

  std::vector<std::string> tokens() const;
  nlohmann::json to_json() const;
};

GoverningMatrix governing_matrix(const std::vector<Place>& S, const VirtualUnitBasis& B,
                                 SymbolNormalization norm = {});

/// Scales v so that its first nonzero entry is 1.
std::vector<u64> normalize_projective(std::vector<u64> v, u64 p);

}  // namespace governing
