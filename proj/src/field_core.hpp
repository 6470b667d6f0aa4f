#pragma once

#include <gmpxx.h>

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "residue_field.hpp"

namespace governing {

enum class FieldKind { Rational, Quadratic };

/// K = Q or K = Q(sqrt d), d squarefree. The ring of integers is Z[omega]
/// with omega^2 = t*omega + n0: omega = sqrt d (t = 0, n0 = d) when
/// d = 2, 3 mod 4, and omega = (1 + sqrt d)/2 (t = 1, n0 = (d-1)/4) when
/// d = 1 mod 4. Over Q both t and n0 are zero and only rational elements occur.
class Field {
 public:
  static Field rational();
  static Field quadratic(i64 d);
  /// Accepts "Q", "d=<int>" or a bare integer; d = 1 means Q.
  static Field parse(std::string_view spec);

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::Rational; }
  bool is_real() const { return r1_ > 0; }
  bool is_imaginary() const { return r2_ > 0; }
  /// d for quadratic fields, 1 for Q.
  i64 d() const { return d_; }
  i64 disc() const { return disc_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  bool half_integral() const { return t_ == 1; }
  i64 t() const { return t_; }
  i64 n0() const { return n0_; }

  /// "Q" or "d=<d>".
  std::string spec() const;

  bool operator==(const Field&) const = default;

 private:
  Field() = default;

  FieldKind kind_ = FieldKind::Rational;
  i64 d_ = 1;
  i64 disc_ = 1;
  int r1_ = 1;
  int r2_ = 0;
  i64 t_ = 0;
  i64 n0_ = 0;
};

/// (a + b*omega)/den in lowest terms with den > 0.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Field& F, mpz_class a, mpz_class b = 0, mpz_class den = 1);

  static FieldElement from_int(const Field& F, long n) { return FieldElement(F, n); }
  static FieldElement omega(const Field& F) { return FieldElement(F, 0, 1); }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0 && den_ == 1; }
  bool is_integral() const { return den_ == 1; }
  bool is_rational() const { return b_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement inverse() const;
  FieldElement conjugate() const;
  FieldElement pow(long e) const;

  mpq_class norm() const;
  mpq_class trace() const;

  /// Numerator of the norm of the integral element (a + b*omega) itself.
  mpz_class numerator_norm() const;

  bool same_field(const FieldElement& o) const { return t_ == o.t_ && n0_ == o.n0_; }
  bool operator==(const FieldElement& o) const {
    return same_field(o) && a_ == o.a_ && b_ == o.b_ && den_ == o.den_;
  }
  /// Lexicographic on (a, b, den).
  bool operator<(const FieldElement& o) const;

  /// Human-readable form in terms of sqrt(d), e.g. "(3+sqrt(-23))/2".
  std::string to_string() const;

  i64 t() const { return t_; }
  i64 n0() const { return n0_; }

 private:
  void canonicalize();
  void check_same(const FieldElement& o) const;

  i64 t_ = 0;
  i64 n0_ = 0;
  mpz_class a_ = 0;
  mpz_class b_ = 0;
  mpz_class den_ = 1;
};

/// Nonzero integral ideal as the Z-module with basis {a, b + c*omega} in
/// Hermite normal form: a, c > 0, c | a, c | b, 0 <= b < a. Norm = a*c.
/// Over Q the ideal is aZ with b = 0, c = 1.
class Ideal {
 public:
  static Ideal unit(const Field& F);
  static Ideal principal(const FieldElement& integral);
  static Ideal from_generators(const Field& F, std::span<const FieldElement> integral_gens);
  static Ideal from_hnf(const Field& F, mpz_class a, mpz_class b, mpz_class c);

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  mpz_class norm() const { return a_ * c_; }
  bool is_unit() const { return a_ == 1 && c_ == 1; }

  Ideal operator*(const Ideal& o) const;
  Ideal pow(unsigned e) const;
  Ideal conjugate() const;
  bool contains(const FieldElement& x) const;

  /// The primitive part (this / content), where content = c.
  Ideal primitive_part() const;

  bool operator==(const Ideal& o) const {
    return t_ == o.t_ && n0_ == o.n0_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
  }

  std::string to_string() const;
  Field field() const;

 private:
  Ideal() = default;
  static Ideal hnf_from_vectors(i64 t, i64 n0, std::vector<std::pair<mpz_class, mpz_class>> vecs);
  bool rational() const { return t_ == 0 && n0_ == 0; }

  i64 t_ = 0;
  i64 n0_ = 0;
  mpz_class a_ = 1;
  mpz_class b_ = 0;
  mpz_class c_ = 1;
};

/// Free-standing form of the ideal product.
Ideal ideal_product_norm(const Ideal& A, const Ideal& B);

enum class PlaceKind { Finite, Real };
enum class Splitting { Rational, Split, Inert, Ramified };

std::string_view splitting_name(Splitting s);

/// Branch labels. The default labels the split prime where sqrt(d) maps to
/// the smaller square root of d mod l as branch 1, and the embedding with
/// sqrt(d) > 0 as inf.1. Swapping exchanges both, which amounts to applying
/// the nontrivial automorphism of K to every labelled place.
struct PlaceLabeling {
  bool swapped = false;
};

struct Place {
  PlaceKind kind = PlaceKind::Finite;
  Field field = Field::rational();

  // Finite places.
  u64 ell = 0;
  Splitting splitting = Splitting::Rational;
  unsigned branch = 0;  // 1 or 2 for split places, 0 otherwise
  u64 q = 0;            // N(v)
  u64 root = 0;         // omega = root mod v (unused for inert places)
  u64 sqrt_d_root = 0;  // chosen square root of d mod l (odd l, split or ramified)
  Ideal prime = Ideal::unit(Field::rational());
  FieldElement uniformizer;
  FieldElement cofactor;  // split only: lies in the conjugate prime, not in this one
  std::shared_ptr<const ResidueField> residue;

  // Real places.
  unsigned embedding = 0;  // 1 or 2 (label)
  int sqrt_sign = 1;       // image of sqrt(d) is sqrt_sign * |sqrt(d)|

  bool is_finite() const { return kind == PlaceKind::Finite; }
  bool is_real() const { return kind == PlaceKind::Real; }

  /// Token in the place grammar: "l", "l.1", "l.2", "inf", "inf.1", "inf.2".
  std::string token() const;

  /// Identity of the underlying place, independent of labels.
  bool operator==(const Place& o) const;
  /// Sort key: finite before real, then by l, q and root.
  bool operator<(const Place& o) const;
};

std::vector<Place> factor_rational_prime(const Field& F, u64 ell, PlaceLabeling labeling = {});
std::vector<Place> real_places(const Field& F, PlaceLabeling labeling = {});
Place parse_place(const Field& F, std::string_view token, PlaceLabeling labeling = {});
std::vector<Place> parse_places(const Field& F, std::string_view comma_list,
                                PlaceLabeling labeling = {});

/// v-adic valuation of a nonzero element.
long valuation(const Place& v, const FieldElement& x);

/// Image in the residue field of an element with valuation 0 at v.
ResidueField::Elem reduce_unit(const Place& v, const FieldElement& x);

/// (v(x), image of x * pi^(-v(x))) with pi the stored uniformizer.
std::pair<long, ResidueField::Elem> valuation_and_reduce(const Place& v, const FieldElement& x);

/// +1 or -1: sign of x under the real embedding v.
int embedding_sign(const Place& v, const FieldElement& x);

}  // namespace governing
