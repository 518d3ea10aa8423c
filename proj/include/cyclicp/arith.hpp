// Exact p-adic and modular integer arithmetic.
//
// Everything here works on std::int64_t values with __int128 intermediates,
// which is comfortably wide for p <= 7 and exponents up to p^14.
#pragma once

#include <compare>
#include <cstdint>
#include <utility>

namespace cyclicp {

using i64 = std::int64_t;
using i128 = __int128;

/// p-adic valuation; INFINITY (the valuation of 0) compares above every
/// finite value.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(-1); }
  static Valuation finite(int v);

  bool is_infinite() const { return v_ < 0; }
  /// Throws std::logic_error on INFINITY.
  int value() const;

  std::strong_ordering operator<=>(const Valuation& o) const;
  bool operator==(const Valuation& o) const = default;

 private:
  explicit Valuation(int v) : v_(v) {}
  int v_;
};

/// Integer modulo a positive modulus, stored as its representative in
/// [0, modulus). Mixing moduli throws std::invalid_argument.
class Residue {
 public:
  Residue(i64 value, i64 modulus);

  i64 value() const { return value_; }
  i64 modulus() const { return modulus_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue pow(i64 e) const;

  bool operator==(const Residue& o) const = default;

 private:
  i64 value_;
  i64 modulus_;
};

bool is_prime(i64 n);

/// Canonical representative of a mod m in [0, m).
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<i128>(mod(a, m)) * mod(b, m) % m);
}

/// a^e mod m for e >= 0.
i64 powmod(i64 a, i64 e, i64 m);

/// Inverse of a modulo m; throws std::invalid_argument when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);

/// p^e as an exact integer; throws std::overflow_error past 2^62.
i64 ipow(i64 p, int e);

/// Splits a prime power q = p^k into (p, k). Throws for anything else.
std::pair<i64, int> prime_power_parts(i64 q);

/// Largest t with p^t | n; INFINITY for n = 0. Throws for non-prime p.
Valuation vp(i64 n, i64 p);

/// vp for callers that know n != 0 or want a cap: returns `cap` for n = 0.
int vp_capped(i64 n, i64 p, int cap);

/// Smallest k >= 1 with s^k = 1 modulo the prime power `modulus`
/// (1 for modulus 1).
i64 mult_order(i64 s, i64 modulus);

/// S(s, n) = sum_{i<n} s^i reduced modulo `modulus`.
Residue geom_sum(i64 s, i64 n, i64 modulus);

/// T(s, t, n) = sum_{0 <= i < j < n} s^i t^j reduced modulo `modulus`.
Residue double_sum(i64 s, i64 t, i64 n, i64 modulus);

/// The unique y in [0, p^m) with S(r, y) = x mod p^m, where x.modulus() = p^m,
/// p odd and r = 1 mod p.
i64 geom_sum_invert(i64 r, const Residue& x);

}  // namespace cyclicp
