#include "residue_field.hpp"

#include <string>

#include "error.hpp"

namespace governing {

ResidueField ResidueField::prime(u64 ell) { return ResidueField(ell, 1, 0, 0); }

ResidueField ResidueField::quadratic(u64 ell, u64 t, u64 n0) {
  t %= ell;
  n0 %= ell;
  for (u64 x = 0; x < ell; ++x) {
    u64 v = (mulmod(x, x, ell) + ell - mulmod(t, x, ell) + ell - n0) % ell;
    if (v == 0)
      fail(ErrorCode::Internal, "w^2 - t w - n0 is reducible mod " + std::to_string(ell));
  }
  return ResidueField(ell, 2, t, n0);
}

ResidueField::ResidueField(u64 ell, unsigned degree, u64 t, u64 n0)
    : ell_(ell), degree_(degree), t_(t % ell), n0_(n0 % ell) {
  if (!is_prime(ell)) fail(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  q_ = degree == 1 ? ell : ell * ell;
  order_primes_ = prime_divisors(q_ - 1);
}

const ResidueField::Elem& ResidueField::generator() const {
  std::call_once(generator_->once, [this] { generator_->value = find_generator(0); });
  return generator_->value;
}

ResidueField::Elem ResidueField::add(const Elem& x, const Elem& y) const {
  return {(x.a + y.a) % ell_, (x.b + y.b) % ell_};
}

ResidueField::Elem ResidueField::sub(const Elem& x, const Elem& y) const {
  return {(x.a + ell_ - y.a) % ell_, (x.b + ell_ - y.b) % ell_};
}

ResidueField::Elem ResidueField::mul(const Elem& x, const Elem& y) const {
  if (degree_ == 1) return {mulmod(x.a, y.a, ell_), 0};
  // (a1 + b1 w)(a2 + b2 w) with w^2 = t w + n0
  u64 bb = mulmod(x.b, y.b, ell_);
  u64 a = (mulmod(x.a, y.a, ell_) + mulmod(n0_, bb, ell_)) % ell_;
  u64 b = (mulmod(x.a, y.b, ell_) + mulmod(x.b, y.a, ell_) + mulmod(t_, bb, ell_)) % ell_;
  return {a, b};
}

ResidueField::Elem ResidueField::pow(Elem x, u64 e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

ResidueField::Elem ResidueField::inv(const Elem& x) const {
  if (is_zero(x)) fail(ErrorCode::ZeroElement, "inverse of zero in residue field");
  return pow(x, q_ - 2);
}

u64 ResidueField::multiplicative_order(const Elem& x) const {
  if (is_zero(x)) fail(ErrorCode::ZeroElement, "order of zero");
  u64 n = q_ - 1;
  for (u64 r : order_primes_) {
    while (n % r == 0 && pow(x, n / r) == one()) n /= r;
  }
  return n;
}

ResidueField::Elem ResidueField::generator(unsigned rank) const {
  return rank == 0 ? generator() : find_generator(rank);
}

ResidueField::Elem ResidueField::find_generator(unsigned rank) const {
  unsigned seen = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (u64 k = 1; k < q_; ++k) {
      Elem c = decode(k);
      if (multiplicative_order(c) == q_ - 1) {
        if (seen == rank) return c;
        ++seen;
      }
    }
    rank %= seen;  // fewer generators than requested: wrap around
    seen = 0;
  }
  fail(ErrorCode::Internal, "generator enumeration failed");
}

u64 ResidueField::dlog(const Elem& g, const Elem& h) const {
  auto m = [this](u64 x, u64 y) { return encode(mul(decode(x), decode(y))); };
  auto r = bsgs(encode(g), encode(h), q_ - 1, encode(one()), m);
  if (r < 0) fail(ErrorCode::Internal, "discrete log failed");
  return static_cast<u64>(r);
}

}  // namespace governing
