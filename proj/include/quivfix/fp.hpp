#pragma once

#include <cassert>
#include <cstdint>

#include "quivfix/error.hpp"

namespace quivfix {

/// Machine residue mod p. The element carries its modulus so the generic
/// matrix code can treat Fp and Scalar uniformly. p <= 97, so products fit
/// in 64 bits with room to spare.
struct Fp {
  uint32_t v = 0;
  uint32_t p = 0;

  Fp() = default;
  Fp(uint32_t value, uint32_t prime) : v(value % prime), p(prime) {}

  bool is_zero() const { return v == 0; }
  bool is_one() const { return v == 1; }

  Fp add(Fp o) const { return raw((v + o.v) % p); }
  Fp sub(Fp o) const { return raw((v + p - o.v) % p); }
  Fp mul(Fp o) const { return raw(uint32_t((uint64_t(v) * o.v) % p)); }
  Fp neg() const { return raw(v == 0 ? 0 : p - v); }
  Fp inv() const {
    if (v == 0) fail(Errc::DivisionByZero, "inverse of 0 in F_p");
    return pow(p - 2);
  }
  Fp div(Fp o) const { return mul(o.inv()); }
  Fp conj() const { return *this; }
  Fp pow(uint64_t e) const {
    uint64_t base = v % p, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return raw(uint32_t(acc));
  }

  bool operator==(const Fp& o) const { return v == o.v; }
  bool operator!=(const Fp& o) const { return v != o.v; }
  bool operator<(const Fp& o) const { return v < o.v; }

  Fp operator+(Fp o) const { return add(o); }
  Fp operator-(Fp o) const { return sub(o); }
  Fp operator*(Fp o) const { return mul(o); }
  Fp operator-() const { return neg(); }

 private:
  Fp raw(uint32_t value) const {
    Fp r;
    r.v = value;
    r.p = p;
    return r;
  }
};

}  // namespace quivfix
