#include "field_core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace governing {

namespace {

bool parse_i64(std::string_view s, i64& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_u64(std::string_view s, u64& out) {
  if (s.empty() || s.front() == '-' || s.front() == '+') return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string sqrt_text(i64 d) {
  if (d == -1) return "i";
  return "sqrt(" + std::to_string(d) + ")";
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::rational() { return Field(); }

Field Field::quadratic(i64 d) {
  if (d == 0 || d == 1) fail(ErrorCode::DisallowedD, "d must not be 0 or 1");
  if (!is_squarefree(d)) fail(ErrorCode::NonSquarefree, std::to_string(d) + " is not squarefree");
  Field F;
  F.kind_ = FieldKind::Quadratic;
  F.d_ = d;
  const i64 dm4 = ((d % 4) + 4) % 4;
  if (dm4 == 1) {
    F.disc_ = d;
    F.t_ = 1;
    F.n0_ = (d - 1) / 4;
  } else {
    F.disc_ = 4 * d;
    F.t_ = 0;
    F.n0_ = d;
  }
  if (d > 0) {
    F.r1_ = 2;
    F.r2_ = 0;
  } else {
    F.r1_ = 0;
    F.r2_ = 1;
  }
  return F;
}

Field Field::parse(std::string_view spec) {
  if (spec == "Q" || spec == "q") return rational();
  std::string_view body = spec;
  if (body.rfind("d=", 0) == 0) body.remove_prefix(2);
  i64 d = 0;
  if (!parse_i64(body, d)) fail(ErrorCode::MalformedField, "cannot parse field spec '" + std::string(spec) + "'");
  if (d == 1) return rational();
  return quadratic(d);
}

std::string Field::spec() const {
  if (is_rational()) return "Q";
  return "d=" + std::to_string(d_);
}

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement(const Field& F, mpz_class a, mpz_class b, mpz_class den)
    : t_(F.t()), n0_(F.n0()), a_(std::move(a)), b_(std::move(b)), den_(std::move(den)) {
  if (den_ == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  if (F.is_rational() && b_ != 0) fail(ErrorCode::FieldMismatch, "irrational element over Q");
  canonicalize();
}

void FieldElement::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    a_ = -a_;
    b_ = -b_;
  }
  if (a_ == 0 && b_ == 0) {
    den_ = 1;
    return;
  }
  mpz_class g = gcd(gcd(a_, b_), den_);
  if (g != 1) {
    mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!same_field(o)) {
    // the zero and one elements constructed without a field are Q-tagged
    fail(ErrorCode::FieldMismatch, "elements from different fields");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  FieldElement r = *this;
  r.a_ = a_ * o.den_ + o.a_ * den_;
  r.b_ = b_ * o.den_ + o.b_ * den_;
  r.den_ = den_ * o.den_;
  r.canonicalize();
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  FieldElement r = *this;
  mpz_class bb = b_ * o.b_;
  r.a_ = a_ * o.a_ + n0_ * bb;
  r.b_ = a_ * o.b_ + b_ * o.a_ + t_ * bb;
  r.den_ = den_ * o.den_;
  r.canonicalize();
  return r;
}

mpz_class FieldElement::numerator_norm() const {
  return a_ * a_ + t_ * a_ * b_ - n0_ * b_ * b_;
}

mpq_class FieldElement::norm() const {
  mpq_class r(numerator_norm(), den_ * den_);
  r.canonicalize();
  return r;
}

mpq_class FieldElement::trace() const {
  mpq_class r(2 * a_ + t_ * b_, den_);
  r.canonicalize();
  return r;
}

FieldElement FieldElement::conjugate() const {
  // omega-bar = t - omega
  FieldElement r = *this;
  r.a_ = a_ + t_ * b_;
  r.b_ = -b_;
  r.canonicalize();
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::ZeroElement, "inverse of zero");
  // x^{-1} = conj(x) / N(x); with x = n/den, N(x) = N(n)/den^2
  mpz_class nn = numerator_norm();
  FieldElement r = *this;
  r.a_ = (a_ + t_ * b_) * den_;
  r.b_ = -b_ * den_;
  r.den_ = nn;
  r.canonicalize();
  return r;
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  FieldElement r = *this;
  r.a_ = 1;
  r.b_ = 0;
  r.den_ = 1;
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

bool FieldElement::operator<(const FieldElement& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  if (b_ != o.b_) return b_ < o.b_;
  return den_ < o.den_;
}

std::string FieldElement::to_string() const {
  // (a + b*omega)/den = (x + y*sqrt(d))/z
  mpz_class x = a_, y = b_, z = den_;
  i64 d = t_ == 1 ? 4 * n0_ + 1 : n0_;
  if (t_ == 1) {
    x = 2 * a_ + b_;
    y = b_;
    z = 2 * den_;
    mpz_class g = gcd(gcd(x, y), z);
    x /= g;
    y /= g;
    z /= g;
  }
  std::string body;
  if (y == 0) {
    body = x.get_str();
  } else {
    std::string root = sqrt_text(d);
    std::string ys;
    if (y == 1) ys = root;
    else if (y == -1) ys = "-" + root;
    else ys = y.get_str() + "*" + root;
    if (x == 0) body = ys;
    else body = x.get_str() + (y > 0 ? "+" : "") + ys;
  }
  if (z == 1) return body;
  bool compound = (x != 0 && y != 0) || body.front() == '-';
  return (compound ? "(" + body + ")" : body) + "/" + z.get_str();
}

// ---------------------------------------------------------------- Ideal

Ideal Ideal::hnf_from_vectors(i64 t, i64 n0, std::vector<std::pair<mpz_class, mpz_class>> vecs) {
  mpz_class px = 0, py = 0, g = 0;
  for (auto& [x, y] : vecs) {
    if (y == 0) {
      g = gcd(g, x);
      continue;
    }
    if (py == 0) {
      // a pivot may carry an x-only remainder from earlier vectors
      px = x;
      py = y;
      continue;
    }
    mpz_class d, s, u;
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), py.get_mpz_t(), y.get_mpz_t());
    mpz_class nx = s * px + u * x;
    mpz_class other = (y / d) * px - (py / d) * x;
    g = gcd(g, other);
    px = nx;
    py = d;
  }
  Ideal I;
  I.t_ = t;
  I.n0_ = n0;
  if (t == 0 && n0 == 0) {
    // over Q every vector is rational
    if (py != 0) fail(ErrorCode::Internal, "irrational generator over Q");
    if (g == 0) fail(ErrorCode::ZeroElement, "zero ideal");
    I.a_ = abs(g);
    I.b_ = 0;
    I.c_ = 1;
    return I;
  }
  if (py < 0) {
    px = -px;
    py = -py;
  }
  if (g == 0 || py == 0) fail(ErrorCode::ZeroElement, "generators do not span a full-rank ideal");
  I.a_ = abs(g);
  I.c_ = py;
  I.b_ = mod_floor(px, I.a_);
  if (I.a_ % I.c_ != 0 || I.b_ % I.c_ != 0)
    fail(ErrorCode::Internal, "lattice is not an ideal: " + I.to_string());
  return I;
}

Ideal Ideal::unit(const Field& F) {
  Ideal I;
  I.t_ = F.t();
  I.n0_ = F.n0();
  return I;
}

Ideal Ideal::principal(const FieldElement& x) {
  if (!x.is_integral()) fail(ErrorCode::InvalidArgument, "principal ideal of a non-integral element");
  if (x.is_zero()) fail(ErrorCode::ZeroElement, "zero ideal");
  std::vector<std::pair<mpz_class, mpz_class>> v;
  v.emplace_back(x.a(), x.b());
  if (!(x.t() == 0 && x.n0() == 0)) {
    // x*omega = b*n0 + (a + t*b) omega
    v.emplace_back(x.b() * x.n0(), x.a() + x.t() * x.b());
  }
  return hnf_from_vectors(x.t(), x.n0(), std::move(v));
}

Ideal Ideal::from_generators(const Field& F, std::span<const FieldElement> gens) {
  std::vector<std::pair<mpz_class, mpz_class>> v;
  for (const auto& x : gens) {
    if (!x.is_integral()) fail(ErrorCode::InvalidArgument, "non-integral ideal generator");
    if (x.t() != F.t() || x.n0() != F.n0()) fail(ErrorCode::FieldMismatch, "generator from another field");
    v.emplace_back(x.a(), x.b());
    if (!F.is_rational()) v.emplace_back(x.b() * F.n0(), x.a() + F.t() * x.b());
  }
  return hnf_from_vectors(F.t(), F.n0(), std::move(v));
}

Ideal Ideal::from_hnf(const Field& F, mpz_class a, mpz_class b, mpz_class c) {
  std::vector<FieldElement> gens{FieldElement(F, a), FieldElement(F, b, F.is_rational() ? 0 : c)};
  Ideal I = from_generators(F, gens);
  if (I.a_ != a || I.b_ != mod_floor(b, a) || I.c_ != c)
    fail(ErrorCode::InvalidArgument, "not an ideal in Hermite normal form");
  return I;
}

Ideal Ideal::operator*(const Ideal& o) const {
  if (t_ != o.t_ || n0_ != o.n0_) fail(ErrorCode::FieldMismatch, "ideals from different fields");
  if (rational()) {
    Ideal I = *this;
    I.a_ = a_ * o.a_;
    return I;
  }
  // generators: a1*a2, a1*beta2, a2*beta1, beta1*beta2 with beta = b + c*omega
  std::vector<std::pair<mpz_class, mpz_class>> v;
  v.emplace_back(a_ * o.a_, 0);
  v.emplace_back(a_ * o.b_, a_ * o.c_);
  v.emplace_back(o.a_ * b_, o.a_ * c_);
  mpz_class cc = c_ * o.c_;
  v.emplace_back(b_ * o.b_ + n0_ * cc, b_ * o.c_ + o.b_ * c_ + t_ * cc);
  return hnf_from_vectors(t_, n0_, std::move(v));
}

Ideal Ideal::pow(unsigned e) const {
  Ideal r = *this;
  r.a_ = 1;
  r.b_ = 0;
  r.c_ = 1;
  Ideal base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Ideal Ideal::conjugate() const {
  if (rational()) return *this;
  // O-module generators a, a*omega, conj(beta), conj(beta)*omega
  mpz_class x = b_ + t_ * c_, y = -c_;
  std::vector<std::pair<mpz_class, mpz_class>> v;
  v.emplace_back(a_, 0);
  v.emplace_back(0, a_);
  v.emplace_back(x, y);
  v.emplace_back(y * n0_, x + t_ * y);
  return hnf_from_vectors(t_, n0_, std::move(v));
}

bool Ideal::contains(const FieldElement& x) const {
  if (!x.is_integral()) return false;
  if (rational()) return x.a() % a_ == 0;
  if (x.b() % c_ != 0) return false;
  mpz_class k = x.b() / c_;
  return (x.a() - k * b_) % a_ == 0;
}

Ideal Ideal::primitive_part() const {
  if (c_ == 1) return *this;
  Ideal I = *this;
  I.a_ = a_ / c_;
  I.b_ = b_ / c_;
  I.c_ = 1;
  return I;
}

std::string Ideal::to_string() const {
  std::ostringstream os;
  os << "[" << a_.get_str() << ", " << b_.get_str() << " + " << c_.get_str() << "w]";
  return os.str();
}

Field Ideal::field() const {
  if (rational()) return Field::rational();
  return Field::quadratic(t_ == 1 ? 4 * n0_ + 1 : n0_);
}

Ideal ideal_product_norm(const Ideal& A, const Ideal& B) {
  Ideal P = A * B;
  if (P.norm() != A.norm() * B.norm()) fail(ErrorCode::Internal, "ideal norm is not multiplicative");
  return P;
}

// ---------------------------------------------------------------- Places

std::string_view splitting_name(Splitting s) {
  switch (s) {
    case Splitting::Rational: return "rational";
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

std::string Place::token() const {
  if (is_real()) {
    if (field.is_rational()) return "inf";
    return "inf." + std::to_string(embedding);
  }
  std::string s = std::to_string(ell);
  if (splitting == Splitting::Split) s += "." + std::to_string(branch);
  return s;
}

bool Place::operator==(const Place& o) const {
  if (kind != o.kind || !(field == o.field)) return false;
  if (is_real()) return sqrt_sign == o.sqrt_sign;
  return ell == o.ell && root == o.root && splitting == o.splitting;
}

bool Place::operator<(const Place& o) const {
  if (kind != o.kind) return kind == PlaceKind::Finite;
  if (is_real()) return sqrt_sign > o.sqrt_sign;
  if (ell != o.ell) return ell < o.ell;
  return root < o.root;
}

namespace {

Place make_finite(const Field& F, u64 ell, Splitting s, u64 root, u64 sqrt_root) {
  Place v;
  v.kind = PlaceKind::Finite;
  v.field = F;
  v.ell = ell;
  v.splitting = s;
  v.root = root;
  v.sqrt_d_root = sqrt_root;
  const mpz_class L(static_cast<unsigned long>(ell));
  if (F.is_rational()) {
    v.q = ell;
    v.prime = Ideal::principal(FieldElement(F, L));
    v.uniformizer = FieldElement(F, L);
    v.residue = std::make_shared<ResidueField>(ResidueField::prime(ell));
    return v;
  }
  if (s == Splitting::Inert) {
    v.q = ell * ell;
    v.prime = Ideal::principal(FieldElement(F, L));
    v.uniformizer = FieldElement(F, L);
    v.residue = std::make_shared<ResidueField>(
        ResidueField::quadratic(ell, static_cast<u64>(F.t()), mod_u64(mpz_class(static_cast<long>(F.n0())), ell)));
    return v;
  }
  v.q = ell;
  const mpz_class R(static_cast<unsigned long>(root));
  std::vector<FieldElement> gens{FieldElement(F, L), FieldElement(F, -R, 1)};
  v.prime = Ideal::from_generators(F, gens);
  v.residue = std::make_shared<ResidueField>(ResidueField::prime(ell));
  if (s == Splitting::Split) {
    v.uniformizer = FieldElement(F, L);
    u64 other = (static_cast<u64>(F.t()) + ell - root) % ell;
    v.cofactor = FieldElement(F, -mpz_class(static_cast<unsigned long>(other)), 1);
  } else {
    // the first of b + omega, b + l + omega, ... with valuation exactly one
    mpz_class b = v.prime.b();
    for (;;) {
      FieldElement cand(F, b, 1);
      if (valuation(cand.numerator_norm(), ell) == 1) {
        v.uniformizer = cand;
        break;
      }
      b += L;
    }
  }
  return v;
}

}  // namespace

std::vector<Place> factor_rational_prime(const Field& F, u64 ell, PlaceLabeling labeling) {
  if (!is_prime(ell)) fail(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  std::vector<Place> out;
  if (F.is_rational()) {
    out.push_back(make_finite(F, ell, Splitting::Rational, 0, 0));
    return out;
  }
  const int k = kronecker(F.disc(), ell);
  const u64 t = static_cast<u64>(F.t());
  const u64 n0 = mod_u64(mpz_class(static_cast<long>(F.n0())), ell);
  if (k == -1) {
    out.push_back(make_finite(F, ell, Splitting::Inert, 0, 0));
    return out;
  }
  // roots of x^2 - t x - n0 mod l, each paired with the square root of d it induces
  std::vector<std::pair<u64, u64>> roots;  // (sqrt d root label, omega root)
  if (ell == 2) {
    for (u64 x = 0; x < 2; ++x)
      if ((x * x + 2 - (t * x) % 2 + 2 - n0) % 2 == 0) roots.emplace_back(x, x);
  } else {
    const u64 dm = mod_u64(mpz_class(static_cast<long>(F.d())), ell);
    u64 r = sqrt_mod_prime(dm, ell);
    std::vector<u64> rs{r};
    if (r != 0) rs.push_back(ell - r);
    const u64 inv2 = invmod(2, ell);
    for (u64 s : rs) {
      u64 w = t == 1 ? mulmod((1 + s) % ell, inv2, ell) : s;
      roots.emplace_back(s, w);
    }
  }
  std::sort(roots.begin(), roots.end());
  if (k == 0) {
    out.push_back(make_finite(F, ell, Splitting::Ramified, roots.front().second, roots.front().first));
    return out;
  }
  if (roots.size() != 2) fail(ErrorCode::Internal, "split prime without two roots");
  if (labeling.swapped) std::swap(roots[0], roots[1]);
  for (unsigned i = 0; i < 2; ++i) {
    Place v = make_finite(F, ell, Splitting::Split, roots[i].second, roots[i].first);
    v.branch = i + 1;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Place> real_places(const Field& F, PlaceLabeling labeling) {
  std::vector<Place> out;
  if (F.r1() == 0) return out;
  for (unsigned i = 1; i <= static_cast<unsigned>(F.r1()); ++i) {
    Place v;
    v.kind = PlaceKind::Real;
    v.field = F;
    v.embedding = F.is_rational() ? 1 : i;
    int sign = i == 1 ? 1 : -1;
    v.sqrt_sign = labeling.swapped && !F.is_rational() ? -sign : sign;
    out.push_back(v);
  }
  return out;
}

Place parse_place(const Field& F, std::string_view token, PlaceLabeling labeling) {
  const std::string tok(token);
  if (token.empty()) fail(ErrorCode::MalformedToken, "empty place token");
  std::string_view head = token, tail;
  if (auto dot = token.find('.'); dot != std::string_view::npos) {
    head = token.substr(0, dot);
    tail = token.substr(dot + 1);
    if (tail != "1" && tail != "2") fail(ErrorCode::MalformedToken, "bad branch in '" + tok + "'");
  }
  if (head == "inf") {
    auto reals = real_places(F, labeling);
    if (reals.empty()) fail(ErrorCode::NoSuchPlace, "no real place in " + F.spec());
    if (F.is_rational()) {
      if (!tail.empty()) fail(ErrorCode::NoSuchPlace, "Q has a single real place 'inf'");
      return reals.front();
    }
    if (tail.empty()) fail(ErrorCode::AmbiguousPlace, "'inf' is ambiguous in " + F.spec());
    return reals[tail == "1" ? 0 : 1];
  }
  u64 ell = 0;
  if (!parse_u64(head, ell) || !is_prime(ell)) fail(ErrorCode::MalformedToken, "bad place token '" + tok + "'");
  auto places = factor_rational_prime(F, ell, labeling);
  if (places.size() == 2) {
    if (tail.empty()) fail(ErrorCode::AmbiguousPlace, tok + " splits in " + F.spec());
    return places[tail == "1" ? 0 : 1];
  }
  if (!tail.empty()) fail(ErrorCode::NoSuchPlace, tok + " does not split in " + F.spec());
  return places.front();
}

std::vector<Place> parse_places(const Field& F, std::string_view list, PlaceLabeling labeling) {
  std::vector<Place> out;
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t next = list.find(',', pos);
    if (next == std::string_view::npos) next = list.size();
    std::string_view tok = list.substr(pos, next - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) out.push_back(parse_place(F, tok, labeling));
    pos = next + 1;
  }
  return out;
}

// ---------------------------------------------------------------- local data

namespace {

void require_finite(const Place& v) {
  if (!v.is_finite()) fail(ErrorCode::InvalidArgument, "finite place required");
}

void require_field(const Place& v, const FieldElement& x) {
  if (x.t() != v.field.t() || x.n0() != v.field.n0())
    fail(ErrorCode::FieldMismatch, "element and place from different fields");
}

/// Valuation of the integral element a + b*omega (not both zero).
long integral_valuation(const Place& v, const mpz_class& a, const mpz_class& b) {
  const u64 l = v.ell;
  if (v.splitting == Splitting::Rational) return valuation(a, l);
  unsigned k;
  if (a == 0) k = valuation(b, l);
  else if (b == 0) k = valuation(a, l);
  else k = std::min(valuation(a, l), valuation(b, l));
  if (v.splitting == Splitting::Inert) return k;
  mpz_class lk;
  mpz_ui_pow_ui(lk.get_mpz_t(), l, k);
  mpz_class a1 = a / lk, b1 = b / lk;
  FieldElement rest(v.field, a1, b1);
  mpz_class n = rest.numerator_norm();
  if (v.splitting == Splitting::Ramified) return 2 * static_cast<long>(k) + valuation(n, l);
  // split: the reduced element lies in at most one of the two primes above l
  u64 img = (mod_u64(a1, l) + mulmod(mod_u64(b1, l), v.root, l)) % l;
  return static_cast<long>(k) + (img == 0 ? static_cast<long>(valuation(n, l)) : 0);
}

ResidueField::Elem reduce_integral(const Place& v, const mpz_class& a, const mpz_class& b) {
  const ResidueField& R = *v.residue;
  const u64 l = v.ell;
  if (v.splitting == Splitting::Inert) return R.make(mod_u64(a, l), mod_u64(b, l));
  if (v.splitting == Splitting::Rational) return R.make(mod_u64(a, l));
  return R.make((mod_u64(a, l) + mulmod(mod_u64(b, l), v.root, l)) % l);
}

}  // namespace

long valuation(const Place& v, const FieldElement& x) {
  require_finite(v);
  require_field(v, x);
  if (x.is_zero()) fail(ErrorCode::ZeroElement, "valuation of zero");
  long e = v.splitting == Splitting::Ramified ? 2 : 1;
  return integral_valuation(v, x.a(), x.b()) - e * static_cast<long>(valuation(x.den(), v.ell));
}

ResidueField::Elem reduce_unit(const Place& v, const FieldElement& x) {
  require_finite(v);
  require_field(v, x);
  const ResidueField& R = *v.residue;
  unsigned j = valuation(x.den(), v.ell);
  if (j == 0) {
    auto num = reduce_integral(v, x.a(), x.b());
    auto den = reduce_integral(v, x.den(), 0);
    return R.mul(num, R.inv(den));
  }
  if (v.splitting != Splitting::Split)
    fail(ErrorCode::NonUnitValuation, "element is not a unit at " + v.token());
  // x = num / (l^j m): multiply by cofactor^j so that l^j divides the numerator
  mpz_class lj;
  mpz_ui_pow_ui(lj.get_mpz_t(), v.ell, j);
  FieldElement num(v.field, x.a(), x.b());
  FieldElement shifted = num * v.cofactor.pow(j);
  if (shifted.a() % lj != 0 || shifted.b() % lj != 0)
    fail(ErrorCode::NonUnitValuation, "element is not a unit at " + v.token());
  auto top = reduce_integral(v, shifted.a() / lj, shifted.b() / lj);
  auto cof = reduce_integral(v, v.cofactor.a(), v.cofactor.b());
  auto rest = reduce_integral(v, x.den() / lj, 0);
  return R.mul(top, R.inv(R.mul(R.pow(cof, j), rest)));
}

std::pair<long, ResidueField::Elem> valuation_and_reduce(const Place& v, const FieldElement& x) {
  long m = valuation(v, x);
  FieldElement z = m == 0 ? x : x * v.uniformizer.pow(-m);
  return {m, reduce_unit(v, z)};
}

int embedding_sign(const Place& v, const FieldElement& x) {
  if (!v.is_real()) fail(ErrorCode::InvalidArgument, "real place required");
  require_field(v, x);
  if (x.is_zero()) fail(ErrorCode::ZeroElement, "sign of zero");
  // 2^t (a + b*omega) = A + B*sqrt(d) under this embedding
  const i64 t = v.field.t();
  mpz_class A = t == 1 ? 2 * x.a() + x.b() : x.a();
  mpz_class B = x.b() * v.sqrt_sign;
  const mpz_class d(static_cast<long>(v.field.d()));
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare A^2 with B^2 d
  int cmp_ab = cmp(A * A, B * B * d);
  return sa > 0 ? (cmp_ab > 0 ? 1 : -1) : (cmp_ab > 0 ? -1 : 1);
}

}  // namespace governing
