#include "arith.hpp"

#include "error.hpp"

namespace governing {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  mpz_class r;
  mpz_class am(static_cast<unsigned long>(a % m)), mm(static_cast<unsigned long>(m));
  if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t()) == 0)
    fail(ErrorCode::InvalidArgument, "value not invertible modulo " + std::to_string(m));
  return r.get_ui();
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  u64 m = n < 0 ? static_cast<u64>(-n) : static_cast<u64>(n);
  for (auto& [p, e] : factor(m))
    if (e > 1) return false;
  return true;
}

int kronecker(i64 a, u64 n) {
  mpz_class am(static_cast<long>(a)), nm(static_cast<unsigned long>(n));
  return mpz_kronecker(am.get_mpz_t(), nm.get_mpz_t());
}

u64 sqrt_mod_prime(u64 a, u64 l) {
  a %= l;
  if (a == 0) return 0;
  if (powmod(a, (l - 1) / 2, l) != 1)
    fail(ErrorCode::InvalidArgument, "not a quadratic residue");
  // Tonelli-Shanks
  u64 q = l - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (l - 1) / 2, l) != l - 1) ++z;
  u64 m = s;
  u64 c = powmod(z, q, l);
  u64 t = powmod(a, q, l);
  u64 r = powmod(a, (q + 1) / 2, l);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, l);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, l);
    m = i;
    c = mulmod(b, b, l);
    t = mulmod(t, c, l);
    r = mulmod(r, b, l);
  }
  return std::min(r, l - r);
}

u64 mod_u64(const mpz_class& x, u64 m) {
  mpz_class r;
  mpz_class mm(static_cast<unsigned long>(m));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

unsigned valuation(const mpz_class& x, u64 l) {
  if (x == 0) fail(ErrorCode::ZeroElement, "valuation of zero");
  mpz_class lm(static_cast<unsigned long>(l));
  mpz_class y = x;
  unsigned k = 0;
  while (mpz_divisible_p(y.get_mpz_t(), lm.get_mpz_t())) {
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), lm.get_mpz_t());
    ++k;
  }
  return k;
}

mpz_class isqrt(const mpz_class& x) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

}  // namespace governing
