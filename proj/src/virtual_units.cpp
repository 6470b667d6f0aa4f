#include "virtual_units.hpp"

#include <string>

namespace governing {

std::string_view source_name(VirtualUnitSource s) {
  switch (s) {
    case VirtualUnitSource::Torsion: return "torsion";
    case VirtualUnitSource::FundamentalUnit: return "fundamental-unit";
    case VirtualUnitSource::ClassLift: return "class-lift";
  }
  return "?";
}

std::size_t class_p_rank(const ClassGroupData& C, u64 p) {
  std::size_t n = 0;
  for (u64 d : C.invariants) n += d % p == 0;
  return n;
}

VirtualUnitBasis virtual_unit_basis(const Field& F, u64 p, const ClassGroupData& C,
                                    const UnitData& U, const std::vector<Place>& avoid) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  VirtualUnitBasis B;
  B.field = F;
  B.p = p;
  for (const Place& v : avoid)
    if (v.is_finite()) B.avoid.push_back(v);

  const Ideal one = Ideal::unit(F);
  if (U.torsion_order % p == 0) B.entries.push_back({U.torsion_generator, VirtualUnitSource::Torsion, one, ""});
  if (U.fundamental_unit)
    B.entries.push_back({*U.fundamental_unit, VirtualUnitSource::FundamentalUnit, one, ""});

  for (const Ideal& J : p_torsion_basis(C, p)) {
    Place Q = prime_in_class(F, class_key(F, J), B.avoid);
    Ideal Jp = Q.prime.pow(static_cast<unsigned>(p));
    auto gamma = is_principal_with_generator(F, Jp);
    if (!gamma) fail(ErrorCode::Internal, "p-th power of a p-torsion class is not principal");
    B.entries.push_back({*gamma, VirtualUnitSource::ClassLift, Q.prime, Q.token()});
  }
  return B;
}

ExactSequenceReport exact_sequence_report(const VirtualUnitBasis& B, const ClassGroupData& C) {
  ExactSequenceReport r;
  for (const auto& e : B.entries) {
    if (e.source == VirtualUnitSource::ClassLift) ++r.class_part;
    else ++r.unit_part;
  }
  r.total = r.unit_part + r.class_part;
  const Field& F = B.field;
  const long expect = F.r1() + F.r2() - 1 + delta_field(F, B.p) + static_cast<long>(class_p_rank(C, B.p));
  if (static_cast<long>(r.total) != expect)
    fail(ErrorCode::DimensionMismatch, "virtual unit basis has " + std::to_string(r.total) +
                                           " entries, expected " + std::to_string(expect));
  if (r.class_part != class_p_rank(C, B.p))
    fail(ErrorCode::DimensionMismatch, "class-lift count differs from dim Cl[p]");
  return r;
}

}  // namespace governing
