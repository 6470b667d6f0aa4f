#include "frobenius.hpp"

#include <string>

namespace governing {

namespace {

void require_tame(const Place& v, u64 p) {
  if (v.is_real()) {
    if (p != 2) fail(ErrorCode::WrongPrimeForReal, v.token() + " needs p = 2");
    return;
  }
  if (v.ell == p) fail(ErrorCode::WildPlace, v.token() + " lies above p = " + std::to_string(p));
  if ((v.q - 1) % p != 0)
    fail(ErrorCode::DeltaZero, "N(" + v.token() + ") = " + std::to_string(v.q) + " is not 1 mod " +
                                   std::to_string(p));
}

}  // namespace

u64 power_residue_symbol(const Place& v, const FieldElement& alpha, u64 p, SymbolNormalization norm) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  require_tame(v, p);
  if (alpha.is_zero()) fail(ErrorCode::ZeroElement, "symbol of zero");
  if (v.is_real()) return embedding_sign(v, alpha) < 0 ? 1 : 0;

  auto [m, u] = valuation_and_reduce(v, alpha);
  if (m % static_cast<long>(p) != 0)
    fail(ErrorCode::NonUnitValuation, "valuation " + std::to_string(m) + " at " + v.token() +
                                          " is not divisible by " + std::to_string(p));
  const ResidueField& R = *v.residue;
  const u64 k = (v.q - 1) / p;
  const ResidueField::Elem zeta = R.pow(R.generator(norm.generator_rank), k);
  const ResidueField::Elem x = R.pow(u, k);
  ResidueField::Elem z = R.one();
  for (u64 e = 0; e < p; ++e) {
    if (z == x) return e;
    z = R.mul(z, zeta);
  }
  fail(ErrorCode::Internal, "symbol value is not a p-th root of unity");
}

std::vector<u64> normalize_projective(std::vector<u64> v, u64 p) {
  for (u64 x : v) {
    if (x == 0) continue;
    const u64 s = invmod(x, p);
    for (u64& y : v) y = mulmod(y, s, p);
    break;
  }
  return v;
}

FrobeniusVector frobenius_vector(const Place& v, const VirtualUnitBasis& B, SymbolNormalization norm) {
  FrobeniusVector f;
  f.place = v;
  require_tame(v, B.p);
  for (const auto& e : B.entries) {
    if (v.is_finite() && valuation(v, e.value) != 0)
      fail(ErrorCode::BasisNotCoprime, "basis element " + e.value.to_string() + " is not a unit at " + v.token());
    f.raw.push_back(power_residue_symbol(v, e.value, B.p, norm));
  }
  f.normalized = normalize_projective(f.raw, B.p);
  return f;
}

std::vector<std::string> GoverningMatrix::tokens() const {
  std::vector<std::string> out;
  for (const auto& v : places) out.push_back(v.token());
  return out;
}

nlohmann::json GoverningMatrix::to_json() const {
  return nlohmann::json{{"places", tokens()}, {"p", p}, {"d", d}, {"columns", columns}};
}

GoverningMatrix governing_matrix(const std::vector<Place>& S, const VirtualUnitBasis& B,
                                 SymbolNormalization norm) {
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (S[i] == S[j]) fail(ErrorCode::DuplicatePlace, "place " + S[i].token() + " occurs twice");
  GoverningMatrix G;
  G.p = B.p;
  G.d = B.d();
  G.places = S;
  for (const Place& v : S) G.columns.push_back(frobenius_vector(v, B, norm).raw);
  return G;
}

}  // namespace governing
