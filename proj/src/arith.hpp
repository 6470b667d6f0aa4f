#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace governing {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
u64 invmod(u64 a, u64 m);

/// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);
u64 next_prime(u64 n);

/// Prime factorisation by trial division, as (prime, exponent) pairs in
/// increasing order of the prime.
std::vector<std::pair<u64, unsigned>> factor(u64 n);
std::vector<u64> prime_divisors(u64 n);

bool is_squarefree(i64 n);

/// Kronecker symbol (a | n) for n > 0.
int kronecker(i64 a, u64 n);

/// Square root of a modulo an odd prime l, in [0, l). Requires a to be a
/// square mod l. Returns the smaller of the two roots.
u64 sqrt_mod_prime(u64 a, u64 l);

/// Non-negative residue of an arbitrary-precision integer.
u64 mod_u64(const mpz_class& x, u64 m);

/// Largest k with l^k | x, for x != 0.
unsigned valuation(const mpz_class& x, u64 l);

mpz_class isqrt(const mpz_class& x);

/// Floor division for signed operands.
mpz_class floor_div(const mpz_class& a, const mpz_class& b);

/// Least non-negative residue.
mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

/// Discrete log of h to base g in a cyclic group of the given order, via
/// baby-step giant-step over an arbitrary multiplication. Elements are
/// encoded as u64 keys.
template <class Mul>
std::int64_t bsgs(u64 g, u64 h, u64 order, u64 one, Mul mul);

}  // namespace governing

#include <unordered_map>
#include <cmath>

namespace governing {

template <class Mul>
std::int64_t bsgs(u64 g, u64 h, u64 order, u64 one, Mul mul) {
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order)))) + 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = one;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul(cur, g);
  }
  // cur = g^m; giant step multiplies by g^{-m} = g^{order - m}
  u64 step = one;
  {
    u64 e = (order - (m % order)) % order;
    u64 base = g;
    while (e) {
      if (e & 1) step = mul(step, base);
      base = mul(base, base);
      e >>= 1;
    }
  }
  u64 gamma = h;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return static_cast<std::int64_t>((i * m + it->second) % order);
    gamma = mul(gamma, step);
  }
  return -1;
}

}  // namespace governing
