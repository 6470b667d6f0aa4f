#include "classgroup_units.hpp"

#include <deque>
#include <numeric>
#include <string>

#include "smith_form.hpp"

namespace governing {

namespace {

i64 to_i64(const mpz_class& x) {
  if (!x.fits_slong_p()) fail(ErrorCode::Internal, "reduced ideal label out of range");
  return x.get_si();
}

struct ImagReduction {
  mpz_class a, b;
  FieldElement w1;
};

// Reduces the positive definite form attached to the primitive ideal
// [A, (B + sqrt(D))/2], carrying the Z-basis (w1, w2) with
// N(x w1 + y w2) = A0 * f(x, y).
ImagReduction reduce_imaginary(const Field& F, const Ideal& P) {
  const mpz_class D(static_cast<long>(F.disc()));
  mpz_class A = P.a();
  mpz_class B = 2 * P.b() + F.t();
  mpz_class C = (B * B - D) / (4 * A);
  FieldElement w1(F, A), w2(F, P.b(), 1);
  for (;;) {
    if (B <= -A || B > A) {
      mpz_class k = floor_div(A - B, 2 * A);
      B += 2 * k * A;
      w2 = w2 + FieldElement(F, k) * w1;
      C = (B * B - D) / (4 * A);
    }
    if (A > C || (A == C && B < 0)) {
      std::swap(A, C);
      B = -B;
      FieldElement nw1 = w2;
      w2 = -w1;
      w1 = nw1;
      continue;
    }
    break;
  }
  return {A, B, w1};
}

struct RealState {
  mpz_class a, b;
};

class RealReducer {
 public:
  explicit RealReducer(const Field& F) : F_(F), D_(static_cast<long>(F.disc())), s_(isqrt(D_)) {}

  mpz_class normalize(const mpz_class& b, const mpz_class& a) const {
    if (a <= s_) return s_ - mod_floor(s_ - b, 2 * a);
    return a - mod_floor(a - b, 2 * a);
  }

  bool reduced(const RealState& st) const {
    return st.b >= 1 && st.b <= s_ && 2 * st.a >= s_ - st.b + 1 && 2 * st.a <= s_ + st.b;
  }

  // [a, (b + sqrt D)/2] -> mu * [a, (b + sqrt D)/2] = [|c|, (b' + sqrt D)/2]
  RealState step(const RealState& st, FieldElement* mu) const {
    mpz_class c = (st.b * st.b - D_) / (4 * st.a);
    if (mu) {
      mpz_class x = (st.b + F_.t()) / 2;
      *mu = FieldElement(F_, x, -1, st.a);
    }
    RealState n;
    n.a = abs(c);
    n.b = normalize(-st.b, n.a);
    return n;
  }

 private:
  const Field& F_;
  mpz_class D_;
  mpz_class s_;
};

}  // namespace

ReducedIdeal reduce_ideal(const Field& F, const Ideal& I, bool want_generator) {
  if (F.is_rational()) {
    ReducedIdeal r{ClassKey{1, 0}, Ideal::unit(F), std::nullopt};
    if (want_generator) r.generator = FieldElement(F, I.a());
    return r;
  }
  const Ideal P = I.primitive_part();
  const mpz_class content = I.c();
  ReducedIdeal out{ClassKey{}, Ideal::unit(F), std::nullopt};

  if (F.is_imaginary()) {
    ImagReduction r = reduce_imaginary(F, P);
    out.key = ClassKey{to_i64(r.a), to_i64(r.b)};
    out.representative = ideal_from_key(F, out.key);
    if (want_generator && r.a == 1) out.generator = FieldElement(F, content) * r.w1;
    return out;
  }

  RealReducer red(F);
  RealState st{P.a(), red.normalize(2 * P.b() + F.t(), P.a())};
  FieldElement M = FieldElement::from_int(F, 1);
  FieldElement mu;
  FieldElement* mup = want_generator ? &mu : nullptr;
  std::size_t guard = 0;
  while (!red.reduced(st)) {
    st = red.step(st, mup);
    if (want_generator) M = M * mu;
    if (++guard > 100000) fail(ErrorCode::Internal, "real reduction does not terminate");
  }
  const RealState start = st;
  RealState best = st;
  std::optional<FieldElement> at_unit;
  guard = 0;
  do {
    if (st.a < best.a || (st.a == best.a && st.b < best.b)) best = st;
    if (st.a == 1 && want_generator && !at_unit) at_unit = M;
    st = red.step(st, mup);
    if (want_generator) M = M * mu;
    if (++guard > 1000000) fail(ErrorCode::Internal, "reduction cycle does not close");
  } while (st.a != start.a || st.b != start.b);
  out.key = ClassKey{to_i64(best.a), to_i64(best.b)};
  out.representative = ideal_from_key(F, out.key);
  if (at_unit) out.generator = FieldElement(F, content) * at_unit->inverse();
  return out;
}

ClassKey class_key(const Field& F, const Ideal& I) { return reduce_ideal(F, I, false).key; }

Ideal ideal_from_key(const Field& F, const ClassKey& key) {
  if (F.is_rational()) return Ideal::unit(F);
  mpz_class a(static_cast<long>(key.a));
  mpz_class bh = mod_floor(mpz_class(static_cast<long>((key.b - F.t()) / 2)), a);
  return Ideal::from_hnf(F, a, bh, 1);
}

std::optional<FieldElement> is_principal_with_generator(const Field& F, const Ideal& A) {
  ReducedIdeal r = reduce_ideal(F, A, true);
  if (!r.generator) return std::nullopt;
  if (!(Ideal::principal(*r.generator) == A))
    fail(ErrorCode::Internal, "generator check failed for " + A.to_string());
  return r.generator;
}

// ---------------------------------------------------------------- class group

std::vector<u64> ClassGroupData::coordinates(const ClassKey& key) const {
  auto it = coords_.find(key);
  if (it == coords_.end()) fail(ErrorCode::Internal, "unknown ideal class");
  return it->second;
}

std::vector<u64> ClassGroupData::coordinates(const Ideal& I) const {
  if (field.is_rational()) return {};
  return coordinates(class_key(field, I));
}

u64 count_reduced_forms(i64 D) {
  u64 count = 0;
  const i64 absD = -D;
  for (i64 a = 1; 3 * a * a <= absD; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

ClassGroupData class_group(const Field& F, ClassGroupOptions options) {
  ClassGroupData out;
  out.field = F;
  if (F.is_rational()) {
    out.keys_.push_back(ClassKey{1, 0});
    out.coords_[ClassKey{1, 0}] = {};
    return out;
  }
  const i64 D = F.disc();
  const i64 absD = D < 0 ? -D : D;
  if (absD > options.disc_bound)
    fail(ErrorCode::DiscriminantTooLarge,
         "|disc| = " + std::to_string(absD) + " exceeds " + std::to_string(options.disc_bound));

  // primes of norm up to the bound generate the class group
  u64 bound = D < 0 ? isqrt(mpz_class(static_cast<long>(absD / 3))).get_ui() + 1
                    : isqrt(mpz_class(static_cast<long>(absD))).get_ui() / 2 + 1;
  std::vector<Ideal> gens;
  std::vector<ClassKey> gen_keys;
  const ClassKey identity = class_key(F, Ideal::unit(F));
  for (u64 l = 2; l <= bound; ++l) {
    if (!is_prime(l)) continue;
    for (const Place& v : factor_rational_prime(F, l)) {
      if (v.splitting == Splitting::Inert) continue;
      ClassKey k = class_key(F, v.prime);
      if (k == identity) continue;
      bool seen = false;
      for (auto& g : gen_keys) seen = seen || g == k;
      if (seen) continue;
      gens.push_back(ideal_from_key(F, k));
      gen_keys.push_back(k);
    }
  }

  const std::size_t ng = gens.size();
  std::vector<ClassKey> keys{identity};
  std::vector<std::vector<i64>> vecs{std::vector<i64>(ng, 0)};
  std::vector<Ideal> reps{ideal_from_key(F, identity)};
  std::map<ClassKey, std::size_t> index{{identity, 0}};
  IntMatrix relations;
  for (std::size_t e = 0; e < keys.size(); ++e) {
    for (std::size_t j = 0; j < ng; ++j) {
      ClassKey k = class_key(F, reps[e] * gens[j]);
      std::vector<i64> v = vecs[e];
      v[j] += 1;
      auto it = index.find(k);
      if (it == index.end()) {
        index.emplace(k, keys.size());
        keys.push_back(k);
        vecs.push_back(v);
        reps.push_back(ideal_from_key(F, k));
        continue;
      }
      std::vector<mpz_class> row(ng);
      for (std::size_t i = 0; i < ng; ++i) row[i] = v[i] - vecs[it->second][i];
      relations.push_back(std::move(row));
    }
  }
  out.h = keys.size();
  if (F.is_imaginary() && out.h != count_reduced_forms(D))
    fail(ErrorCode::DimensionMismatch, "class group enumeration disagrees with the reduced-form count");

  SmithForm snf = smith_normal_form(relations, ng);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < ng; ++i) {
    if (snf.diagonal[i] == 0) fail(ErrorCode::Internal, "class group relation lattice is not of full rank");
    if (snf.diagonal[i] > 1) active.push_back(i);
  }

  auto reduce_rep = [&](const Ideal& X) { return ideal_from_key(F, class_key(F, X)); };
  auto class_pow = [&](const Ideal& base_in, u64 e) {
    Ideal r = Ideal::unit(F), base = base_in;
    while (e) {
      if (e & 1) r = reduce_rep(r * base);
      e >>= 1;
      if (e) base = reduce_rep(base * base);
    }
    return r;
  };

  const mpz_class hz(static_cast<unsigned long>(out.h));
  for (std::size_t i : active) {
    out.invariants.push_back(snf.diagonal[i].get_ui());
    Ideal g = Ideal::unit(F);
    for (std::size_t j = 0; j < ng; ++j) {
      u64 e = mod_floor(snf.V_inverse[i][j], hz).get_ui();
      if (e) g = reduce_rep(g * class_pow(gens[j], e));
    }
    out.generators.push_back(g);
  }
  for (std::size_t e = 0; e < keys.size(); ++e) {
    std::vector<u64> y;
    for (std::size_t i : active) {
      mpz_class acc = 0;
      for (std::size_t j = 0; j < ng; ++j) acc += vecs[e][j] * snf.V[j][i];
      y.push_back(mod_floor(acc, snf.diagonal[i]).get_ui());
    }
    out.coords_[keys[e]] = std::move(y);
  }
  out.keys_ = std::move(keys);
  return out;
}

ClassGroupData ClassGroupData::from_structure(const Field& F, std::vector<u64> invariants,
                                              std::vector<Ideal> generators) {
  ClassGroupData out;
  out.field = F;
  out.h = 1;
  for (u64 d : invariants) out.h *= d;
  out.invariants = std::move(invariants);
  out.generators = std::move(generators);
  return out;
}

Place prime_in_class(const Field& F, const ClassKey& key, const std::vector<Place>& avoid) {
  for (u64 l = 2; l < (u64{1} << 32); l = next_prime(l)) {
    for (Place& v : factor_rational_prime(F, l)) {
      bool skip = false;
      for (const Place& a : avoid) skip = skip || a == v;
      if (skip) continue;
      if (v.splitting == Splitting::Inert && !(key == class_key(F, Ideal::unit(F)))) continue;
      if (class_key(F, v.prime) == key) return v;
    }
  }
  fail(ErrorCode::AvoidanceFailure, "no prime ideal found in the requested class");
}

std::vector<Ideal> p_torsion_basis(const ClassGroupData& C, u64 p) {
  std::vector<Ideal> out;
  for (std::size_t i = 0; i < C.invariants.size(); ++i) {
    if (C.invariants[i] % p != 0) continue;
    Ideal J = C.generators[i].pow(static_cast<unsigned>(C.invariants[i] / p));
    out.push_back(ideal_from_key(C.field, class_key(C.field, J)));
  }
  return out;
}

// ---------------------------------------------------------------- units

ContinuedFraction unit_continued_fraction(const Field& F) {
  if (!F.is_real() || F.is_rational()) fail(ErrorCode::InvalidArgument, "real quadratic field required");
  const mpz_class d(static_cast<long>(F.d()));
  const mpz_class s = isqrt(d);
  // xi = (P0 + sqrt d)/Q0 is reduced: xi > 1 and -1 < conj(xi) < 0
  mpz_class P0, Q0, shift;
  if (F.t() == 0) {
    P0 = s;
    Q0 = 1;
    shift = s;
  } else {
    shift = floor_div(s - 1, 2);
    P0 = 2 * shift + 1;
    Q0 = 2;
  }
  ContinuedFraction cf;
  cf.xi = FieldElement(F, shift, 1);
  mpz_class P = P0, Q = Q0;
  mpz_class q_prev2 = 1, q_prev = 0;  // q_{-2}, q_{-1}
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) fail(ErrorCode::Internal, "continued fraction period not found");
    mpz_class a = floor_div(P + s, Q);
    mpz_class q = a * q_prev + q_prev2;
    cf.partial_quotients.push_back(a);
    cf.convergent_units.push_back(FieldElement(F, q) * cf.xi + FieldElement(F, q_prev));
    q_prev2 = q_prev;
    q_prev = q;
    mpz_class Pn = a * Q - P;
    mpz_class Qn = (d - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
    if (P == P0 && Q == Q0) break;
  }
  return cf;
}

UnitData unit_group(const Field& F) {
  UnitData u;
  if (F.d() == -1) {
    u.torsion_order = 4;
    u.torsion_generator = FieldElement::omega(F);
  } else if (F.d() == -3) {
    u.torsion_order = 6;
    u.torsion_generator = FieldElement::omega(F);  // (1 + sqrt(-3))/2
  } else {
    u.torsion_order = 2;
    u.torsion_generator = FieldElement::from_int(F, -1);
  }
  if (F.is_real() && !F.is_rational()) {
    ContinuedFraction cf = unit_continued_fraction(F);
    FieldElement eps = cf.convergent_units.back();
    mpq_class n = eps.norm();
    if (n != 1 && n != -1) fail(ErrorCode::Internal, "continued fraction did not produce a unit");
    u.fundamental_unit = eps;
    u.fundamental_norm = n == 1 ? 1 : -1;
  }
  return u;
}

FieldData FieldData::compute(const Field& F, ClassGroupOptions options) {
  return FieldData{F, class_group(F, options), unit_group(F)};
}

int delta_field(const Field& F, u64 p) {
  if (p == 2) return 1;
  if (p == 3 && F.d() == -3) return 1;
  return 0;
}

int delta_place(const Place& v, u64 p) {
  if (v.is_real()) return p == 2 ? 1 : 0;
  if (v.ell == p) fail(ErrorCode::WildPlace, v.token() + " lies above p = " + std::to_string(p));
  return (v.q - 1) % p == 0 ? 1 : 0;
}

}  // namespace governing
