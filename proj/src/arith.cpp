#include "cyclicp/arith.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cyclicp {

Valuation Valuation::finite(int v) {
  if (v < 0) throw std::invalid_argument("negative valuation");
  return Valuation(v);
}

int Valuation::value() const {
  if (is_infinite()) throw std::logic_error("value() of infinite valuation");
  return v_;
}

std::strong_ordering Valuation::operator<=>(const Valuation& o) const {
  if (is_infinite() || o.is_infinite()) {
    return static_cast<int>(is_infinite()) <=> static_cast<int>(o.is_infinite());
  }
  return v_ <=> o.v_;
}

Residue::Residue(i64 value, i64 modulus) : value_(0), modulus_(modulus) {
  if (modulus <= 0) throw std::invalid_argument("residue modulus must be positive");
  value_ = mod(value, modulus);
}

static void check_same(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("residue moduli differ: " + std::to_string(a.modulus()) +
                                " vs " + std::to_string(b.modulus()));
  }
}

Residue Residue::operator+(const Residue& o) const {
  check_same(*this, o);
  return Residue(value_ + o.value_, modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  check_same(*this, o);
  return Residue(value_ - o.value_, modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  check_same(*this, o);
  return Residue(mulmod(value_, o.value_, modulus_), modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

Residue Residue::pow(i64 e) const {
  if (e >= 0) return Residue(powmod(value_, e, modulus_), modulus_);
  return Residue(powmod(invmod(value_, modulus_), -e, modulus_), modulus_);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

i64 powmod(i64 a, i64 e, i64 m) {
  if (e < 0) throw std::invalid_argument("powmod: negative exponent");
  i64 base = mod(a, m);
  i64 acc = 1 % m;
  while (e > 0) {
    if (e & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return acc;
}

i64 invmod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) {
    if (m == 1) return 0;
    throw std::invalid_argument("invmod: " + std::to_string(a) + " not invertible mod " +
                                std::to_string(m));
  }
  return mod(old_s, m);
}

i64 ipow(i64 p, int e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  i64 acc = 1;
  for (int i = 0; i < e; ++i) {
    if (acc > (std::numeric_limits<i64>::max() >> 1) / (p < 1 ? 1 : p)) {
      throw std::overflow_error("ipow overflow");
    }
    acc *= p;
  }
  return acc;
}

std::pair<i64, int> prime_power_parts(i64 q) {
  if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  i64 p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  i64 rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  return {p, k};
}

Valuation vp(i64 n, i64 p) {
  if (!is_prime(p)) throw std::invalid_argument("vp: " + std::to_string(p) + " is not prime");
  if (n == 0) return Valuation::infinite();
  int t = 0;
  while (n % p == 0) {
    n /= p;
    ++t;
  }
  return Valuation::finite(t);
}

int vp_capped(i64 n, i64 p, int cap) {
  if (n == 0) return cap;
  int t = 0;
  while (n % p == 0 && t < cap) {
    n /= p;
    ++t;
  }
  return t;
}

i64 mult_order(i64 s, i64 modulus) {
  if (modulus == 1) return 1;
  auto [p, n] = prime_power_parts(modulus);
  if (mod(s, p) == 0) {
    throw std::invalid_argument("mult_order: " + std::to_string(s) + " not coprime to " +
                                std::to_string(modulus));
  }
  // The order divides phi = p^(n-1) (p-1).
  std::vector<i64> divisors;
  for (i64 d = 1; d <= p - 1; ++d) {
    if ((p - 1) % d == 0) {
      i64 q = d;
      for (int j = 0; j < n; ++j) {
        divisors.push_back(q);
        q *= p;
      }
    }
  }
  std::sort(divisors.begin(), divisors.end());
  for (i64 d : divisors) {
    if (powmod(s, d, modulus) == 1) return d;
  }
  throw std::logic_error("mult_order: no divisor of phi works");
}

Residue geom_sum(i64 s, i64 n, i64 modulus) {
  if (n < 0) throw std::invalid_argument("geom_sum: negative length");
  if (modulus <= 0) throw std::invalid_argument("geom_sum: modulus must be positive");
  // (sum, s^k) built by binary splitting: S(a+b) = S(a) + s^a S(b).
  i64 sum = 0, sk = 1 % modulus;
  const i64 sm = mod(s, modulus);
  for (int bit = 62; bit >= 0; --bit) {
    sum = mulmod(sum, 1 + sk, modulus);
    sk = mulmod(sk, sk, modulus);
    if ((n >> bit) & 1) {
      sum = mod(sum + sk, modulus);
      sk = mulmod(sk, sm, modulus);
    }
  }
  return Residue(sum, modulus);
}

Residue double_sum(i64 s, i64 t, i64 n, i64 modulus) {
  if (n < 0) throw std::invalid_argument("double_sum: negative length");
  if (modulus <= 0) throw std::invalid_argument("double_sum: modulus must be positive");
  const i64 M = modulus;
  const i64 sm = mod(s, M), tm = mod(t, M);
  // State for a prefix of length k: S_s(k), s^k, S_t(k), t^k, T(k).
  // Concatenation: T(a+b) = T(a) + t^a (S_s(a) S_t(b) + s^a T(b)).
  i64 ss = 0, sk = 1 % M, st = 0, tk = 1 % M, tt = 0;
  for (int bit = 62; bit >= 0; --bit) {
    i64 tt2 = mod(tt + mulmod(tk, mod(mulmod(ss, st, M) + mulmod(sk, tt, M), M), M), M);
    i64 ss2 = mod(ss + mulmod(sk, ss, M), M);
    i64 st2 = mod(st + mulmod(tk, st, M), M);
    tt = tt2;
    ss = ss2;
    st = st2;
    sk = mulmod(sk, sk, M);
    tk = mulmod(tk, tk, M);
    if ((n >> bit) & 1) {
      tt = mod(tt + mulmod(tk, ss, M), M);
      ss = mod(ss + sk, M);
      st = mod(st + tk, M);
      sk = mulmod(sk, sm, M);
      tk = mulmod(tk, tm, M);
    }
  }
  return Residue(tt, M);
}

i64 geom_sum_invert(i64 r, const Residue& x) {
  auto [p, m] = prime_power_parts(x.modulus());
  if (p == 2) throw std::invalid_argument("geom_sum_invert: p must be odd");
  if (mod(r, p) != 1) {
    throw std::invalid_argument("geom_sum_invert: r = " + std::to_string(r) + " is not 1 mod p");
  }
  // S(r, y) mod p^k depends only on y mod p^k, so fix one p-adic digit at a time.
  i64 y = 0;
  i64 pk = 1;
  for (int k = 1; k <= m; ++k) {
    const i64 prev = pk;
    pk *= p;
    bool found = false;
    for (i64 d = 0; d < p; ++d) {
      const i64 cand = y + d * prev;
      if (geom_sum(r, cand, pk).value() == mod(x.value(), pk)) {
        y = cand;
        found = true;
        break;
      }
    }
    if (!found) {
      if (p <= 5 && m <= 4) {
        for (i64 c = 0; c < x.modulus(); ++c) {
          if (geom_sum(r, c, x.modulus()) == x) return c;
        }
      }
      throw std::logic_error("geom_sum_invert: lifting failed");
    }
  }
  return y;
}

}  // namespace cyclicp
