#include "oracle.hpp"

#include <bit>

namespace governing {

namespace {

std::vector<mpz_class> unit_image(const RayPresentation& P, const FieldElement& alpha) {
  std::vector<mpz_class> row(P.cols(), 0);
  std::size_t k = 0;
  for (const Place& v : P.finite) {
    if (valuation(v, alpha) != 0) fail(ErrorCode::Internal, "element is not prime to the modulus at " + v.token());
    const ResidueField& R = *v.residue;
    row[k++] = static_cast<unsigned long>(R.dlog(R.generator(), reduce_unit(v, alpha)));
  }
  for (const Place& v : P.reals) row[k++] = embedding_sign(v, alpha) < 0 ? 1 : 0;
  return row;
}

}  // namespace

RayPresentation ray_presentation(const FieldData& K, const std::vector<Place>& finite,
                                 const std::vector<Place>& reals) {
  RayPresentation P;
  P.field = K.field;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    if (!finite[i].is_finite()) fail(ErrorCode::InvalidArgument, "modulus place must be finite");
    for (std::size_t j = 0; j < i; ++j)
      if (finite[i] == finite[j]) fail(ErrorCode::NonCoprimeModulus, finite[i].token() + " repeated in the modulus");
  }
  for (const Place& v : reals)
    if (!v.is_real()) fail(ErrorCode::InvalidArgument, "ramified real place expected");
  P.finite = finite;
  P.reals = reals;
  const ClassGroupData& C = K.classes;
  for (std::size_t i = 0; i < C.invariants.size(); ++i) {
    Place Q = prime_in_class(K.field, class_key(K.field, C.generators[i]), finite);
    P.class_ideals.push_back(Q.prime);
    P.class_orders.push_back(C.invariants[i]);
  }
  const std::size_t n = P.cols();
  const std::size_t nf = finite.size(), nr = reals.size();
  for (std::size_t k = 0; k < nf; ++k) {
    std::vector<mpz_class> row(n, 0);
    row[k] = static_cast<unsigned long>(finite[k].q - 1);
    P.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < nr; ++k) {
    std::vector<mpz_class> row(n, 0);
    row[nf + k] = 2;
    P.rows.push_back(std::move(row));
  }
  P.rows.push_back(unit_image(P, K.units.torsion_generator));
  if (K.units.fundamental_unit) P.rows.push_back(unit_image(P, *K.units.fundamental_unit));
  for (std::size_t i = 0; i < P.class_ideals.size(); ++i) {
    Ideal Jd = P.class_ideals[i].pow(static_cast<unsigned>(P.class_orders[i]));
    auto gamma = is_principal_with_generator(K.field, Jd);
    if (!gamma) fail(ErrorCode::Internal, "class generator power is not principal");
    std::vector<mpz_class> row = unit_image(P, *gamma);
    for (auto& x : row) x = -x;
    row[nf + nr + i] = static_cast<unsigned long>(P.class_orders[i]);
    P.rows.push_back(std::move(row));
  }
  return P;
}

std::size_t presentation_p_rank(const RayPresentation& P, std::uint64_t mask, u64 p) {
  const std::size_t nm = P.finite.size() + P.reals.size();
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < nm; ++j)
    if (mask >> j & 1u) keep.push_back(j);
  for (std::size_t j = nm; j < P.cols(); ++j) keep.push_back(j);
  std::vector<FpVec> rows;
  for (const auto& r : P.rows) {
    FpVec v(keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) v[c] = mod_u64(r[keep[c]], p);
    rows.push_back(std::move(v));
  }
  return keep.size() - rank_mod_p(std::move(rows), keep.size(), p);
}

std::size_t RayClassGroup::p_rank(u64 p) const {
  std::size_t n = 0;
  for (const auto& d : invariants) n += mpz_divisible_ui_p(d.get_mpz_t(), p) != 0;
  return n;
}

RayClassGroup ray_class_group(const FieldData& K, const std::vector<Place>& m,
                              const std::vector<Place>& ram_reals) {
  RayPresentation P = ray_presentation(K, m, ram_reals);
  RayClassGroup G;
  G.modulus = m;
  G.ram_reals = ram_reals;
  SmithForm snf = smith_normal_form(P.rows, P.cols(), false);
  for (const auto& d : snf.diagonal) {
    if (d == 0) fail(ErrorCode::Internal, "ray class presentation is not of finite order");
    if (d > 1) G.invariants.push_back(d);
    G.order *= d;
  }
  // order check through 1 -> local/units -> Cl_m -> Cl -> 1
  const std::size_t nl = m.size() + ram_reals.size();
  IntMatrix local;
  for (const auto& r : P.rows) {
    bool touches_class = false;
    for (std::size_t j = nl; j < P.cols(); ++j) touches_class = touches_class || r[j] != 0;
    if (touches_class) continue;
    local.emplace_back(r.begin(), r.begin() + static_cast<long>(nl));
  }
  mpz_class quotient = 1;
  for (const auto& d : smith_normal_form(local, nl, false).diagonal) quotient *= d;
  if (G.order != quotient * K.classes.h)
    fail(ErrorCode::Internal, "ray class group order check failed");
  return G;
}

long dirichlet_h1_dim(const std::vector<Place>& T, u64 p) {
  long n = 0;
  bool infinite = false, has_odd = false;
  for (const Place& v : T) {
    if (!v.field.is_rational()) fail(ErrorCode::NotRationalBase, "Dirichlet characters need K = Q");
    if (v.is_real()) {
      if (p != 2) fail(ErrorCode::BadCongruence, "the real place needs p = 2");
      infinite = true;
      continue;
    }
    if (v.ell == p || (v.ell - 1) % p != 0)
      fail(ErrorCode::BadCongruence, v.token() + " is not 1 mod " + std::to_string(p));
    ++n;
    if (p == 2 && v.ell % 4 == 3) has_odd = true;
  }
  // for p = 2 the characters must be even unless the real place is allowed
  if (p == 2 && !infinite && has_odd) --n;
  return n;
}

mpz_class dirichlet_character_count(const std::vector<Place>& S, u64 p) {
  std::vector<u64> primes;
  bool infinite = false;
  for (const Place& v : S) {
    if (!v.field.is_rational()) fail(ErrorCode::NotRationalBase, "Dirichlet characters need K = Q");
    if (v.is_real()) {
      if (p != 2) fail(ErrorCode::BadCongruence, "the real place needs p = 2");
      infinite = true;
      continue;
    }
    if (v.ell == p || (v.ell - 1) % p != 0)
      fail(ErrorCode::BadCongruence, v.token() + " is not 1 mod " + std::to_string(p));
    primes.push_back(v.ell);
  }
  // chi = prod chi_l^{e_l}, chi_l of order p on (Z/l)^x, all e_l nonzero;
  // chi(-1) = prod chi_l(-1)^{e_l} where chi_l(-1) = zeta^((l-1)/2)
  mpz_class count = 0;
  std::vector<u64> e(primes.size(), 1);
  for (;;) {
    u64 parity = 0;  // exponent of zeta in chi(-1)
    for (std::size_t i = 0; i < primes.size(); ++i) parity = (parity + e[i] * ((primes[i] - 1) / 2)) % p;
    const bool odd = parity != 0;
    if (odd == infinite) ++count;
    std::size_t i = 0;
    while (i < e.size() && ++e[i] == p) e[i++] = 1;
    if (i == e.size()) break;
  }
  return count;
}

long oracle_h1_dim(const FieldData& K, u64 p, const std::vector<Place>& T) {
  if (K.field.is_rational()) return dirichlet_h1_dim(T, p);
  std::vector<Place> fin, re;
  for (const Place& v : T) {
    if (v.is_real()) {
      if (p != 2) fail(ErrorCode::ArchimedeanRequiresP2, v.token() + " needs p = 2");
      re.push_back(v);
    } else {
      fin.push_back(v);
    }
  }
  RayPresentation P = ray_presentation(K, fin, re);
  const std::uint64_t all = (std::uint64_t{1} << P.finite.size() << P.reals.size()) - 1;
  return static_cast<long>(presentation_p_rank(P, all, p));
}

VerificationReport verify_theorem_main(const FieldData& K, const VirtualUnitBasis& B,
                                       const std::vector<Place>& S, SymbolNormalization norm,
                                       std::size_t cap) {
  const u64 p = B.p;
  for (const Place& v : S) {
    if (v.is_real() && p != 2) fail(ErrorCode::ArchimedeanRequiresP2, v.token() + " needs p = 2");
    if (delta_place(v, p) != 1)
      fail(ErrorCode::DeltaZero, "N(" + v.token() + ") is not 1 mod " + std::to_string(p));
  }
  if (S.size() > cap || S.size() > 31)
    fail(ErrorCode::SetTooLarge, "|S| = " + std::to_string(S.size()) + " exceeds the subset cap");

  VerificationReport rep;
  rep.field = K.field;
  rep.p = p;
  for (const Place& v : S) rep.S.push_back(v.token());

  GoverningMatrix G = governing_matrix(S, B, norm);
  rep.relation_count = count_full_support_relations(G, cap);
  std::vector<long> engine = koch_subset_dims(K.field, G);
  rep.engine_count = count_exact_ramified_classes(S.size(), p, engine, cap);

  const std::size_t n = S.size();
  std::vector<long> oracle(std::size_t{1} << n);
  if (K.field.is_rational()) {
    for (std::size_t m = 0; m < oracle.size(); ++m) {
      std::vector<Place> T;
      for (std::size_t j = 0; j < n; ++j)
        if (m >> j & 1u) T.push_back(S[j]);
      oracle[m] = dirichlet_h1_dim(T, p);
    }
    rep.character_count = dirichlet_character_count(S, p);
  } else {
    std::vector<Place> fin, re;
    std::vector<std::size_t> slot(n);  // bit position of S[j] in the presentation
    for (std::size_t j = 0; j < n; ++j)
      if (S[j].is_finite()) slot[j] = fin.size(), fin.push_back(S[j]);
    for (std::size_t j = 0; j < n; ++j)
      if (S[j].is_real()) slot[j] = fin.size() + re.size(), re.push_back(S[j]);
    RayPresentation P = ray_presentation(K, fin, re);
    for (std::size_t m = 0; m < oracle.size(); ++m) {
      std::uint64_t pm = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (m >> j & 1u) pm |= std::uint64_t{1} << slot[j];
      oracle[m] = static_cast<long>(presentation_p_rank(P, pm, p));
    }
  }
  rep.oracle_count = count_exact_ramified_classes(n, p, oracle, cap);

  rep.dims_agree = true;
  rep.proposition_holds = true;
  for (std::size_t m = 0; m < oracle.size(); ++m) {
    SubsetRow row;
    row.mask = static_cast<SubsetMask>(m);
    for (std::size_t j = 0; j < n; ++j)
      if (m >> j & 1u) row.places.push_back(S[j].token());
    row.dim_R = static_cast<long>(std::popcount(row.mask)) - static_cast<long>(subset_rank(G, row.mask));
    row.engine = engine[m];
    row.oracle = oracle[m];
    rep.dims_agree = rep.dims_agree && row.engine == row.oracle;
    rep.proposition_holds = rep.proposition_holds && row.dim_R == row.engine - engine[0] &&
                            row.dim_R == row.oracle - oracle[0];
    rep.subsets.push_back(std::move(row));
  }
  rep.counts_agree = rep.relation_count == rep.engine_count && rep.engine_count == rep.oracle_count &&
                     (!rep.character_count || *rep.character_count == rep.oracle_count);
  rep.pass = rep.counts_agree && rep.dims_agree;
  return rep;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : subsets)
    rows.push_back({{"T", r.places}, {"dim_R", r.dim_R}, {"engine", r.engine}, {"oracle", r.oracle}});
  nlohmann::json j{{"field", field.spec()},
                   {"p", p},
                   {"S", S},
                   {"relation_count", relation_count.get_str()},
                   {"engine_count", engine_count.get_str()},
                   {"oracle_count", oracle_count.get_str()},
                   {"subsets", rows},
                   {"counts_agree", counts_agree},
                   {"dims_agree", dims_agree},
                   {"proposition_holds", proposition_holds},
                   {"verdict", pass ? "pass" : "fail"}};
  if (character_count) j["character_count"] = character_count->get_str();
  return j;
}

}  // namespace governing
