#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "arith.hpp"

namespace governing {

/// A finite field F_l or F_{l^2}. The quadratic case is F_l[w]/(w^2 - t w - n0)
/// with the polynomial irreducible mod l, so that reduction of a + b*omega at
/// an inert prime is coordinate-wise.
class ResidueField {
 public:
  struct Elem {
    u64 a = 0;
    u64 b = 0;
    bool operator==(const Elem&) const = default;
  };

  static ResidueField prime(u64 ell);
  static ResidueField quadratic(u64 ell, u64 t, u64 n0);

  u64 characteristic() const { return ell_; }
  unsigned degree() const { return degree_; }
  u64 order() const { return q_; }

  Elem make(u64 a, u64 b = 0) const { return {a % ell_, degree_ == 2 ? b % ell_ : 0}; }
  Elem one() const { return {1, 0}; }
  bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem pow(Elem x, u64 e) const;
  Elem inv(const Elem& x) const;

  u64 encode(const Elem& x) const { return x.a + x.b * ell_; }
  Elem decode(u64 k) const { return {k % ell_, k / ell_}; }

  /// Exact multiplicative order of a nonzero element.
  u64 multiplicative_order(const Elem& x) const;

  /// Canonical generator: the first element of multiplicative order q - 1
  /// in the enumeration k = 1, 2, ... with k = a + b*l.
  /// Smallest generator in encoding order, found on first use.
  const Elem& generator() const;

  /// The rank-th generator in the same enumeration (rank 0 is generator()),
  /// with rank taken modulo the number of generators.
  Elem generator(unsigned rank) const;

  /// Discrete logarithm of h to the base g, where g generates F_q^x.
  u64 dlog(const Elem& g, const Elem& h) const;

 private:
  ResidueField(u64 ell, unsigned degree, u64 t, u64 n0);
  Elem find_generator(unsigned rank) const;

  u64 ell_;
  unsigned degree_;
  u64 t_;
  u64 n0_;
  u64 q_;
  std::vector<u64> order_primes_;
  struct GeneratorCache {
    std::once_flag once;
    Elem value;
  };
  std::shared_ptr<GeneratorCache> generator_ = std::make_shared<GeneratorCache>();
};

}  // namespace governing
