#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "quivfix/error.hpp"

namespace quivfix {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class FieldKind { Fp, Q, Qi };

/// Ground field descriptor: a prime field F_p (p prime, p <= 97), the
/// rationals, or the Gaussian rationals Q(i).
struct FieldSpec {
  FieldKind kind = FieldKind::Q;
  uint32_t p = 0;

  bool operator==(const FieldSpec&) const = default;
  bool finite() const { return kind == FieldKind::Fp; }
  std::string str() const;

  static FieldSpec fp(uint32_t p);
  static FieldSpec q() { return {FieldKind::Q, 0}; }
  static FieldSpec qi() { return {FieldKind::Qi, 0}; }
};

/// Exact field element in canonical form: residue in [0,p) for F_p,
/// reduced fraction for Q, pair of reduced fractions for Q(i). Immutable
/// value type; all arithmetic is pure.
class Scalar {
 public:
  Scalar() = default;  // zero of Q

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar of_int(const FieldSpec& f, long long n);
  static Scalar fp(uint32_t p, uint64_t residue);
  static Scalar rational(Rat r);
  static Scalar gaussian(Rat re, Rat im);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar add(const Scalar& o) const;
  Scalar sub(const Scalar& o) const;
  Scalar mul(const Scalar& o) const;
  Scalar div(const Scalar& o) const;
  Scalar neg() const;
  Scalar inv() const;
  Scalar conj() const;  // Gaussian conjugation; identity on F_p and Q
  Scalar pow(long long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Total order used for canonical (lexicographically least) orbit
  /// representatives. F_p: residue order; Q/Q(i): numerator/denominator order.
  std::strong_ordering order(const Scalar& o) const;

  uint32_t residue() const;  // F_p only
  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }

  /// Canonical string form: "4 mod 5", "3/7", "-2", "2+3i", "1-i", "2i".
  std::string str() const;
  static Scalar parse(const FieldSpec& f, const std::string& text);

  Scalar operator+(const Scalar& o) const { return add(o); }
  Scalar operator-(const Scalar& o) const { return sub(o); }
  Scalar operator*(const Scalar& o) const { return mul(o); }
  Scalar operator-() const { return neg(); }

 private:
  FieldSpec field_{};
  uint32_t res_ = 0;
  Rat re_{};
  Rat im_{};
  void check_same_field(const Scalar& o) const;
};

/// All p-1 units of F_p in ascending residue order.
std::vector<Scalar> unit_group(const FieldSpec& f);

/// Coset representatives of k^x / (k^x)^n for k = F_p; each representative
/// is the smallest residue in its coset, the trivial coset is represented
/// by 1. |result| = gcd(n, p-1).
std::vector<Scalar> power_class_quotient(const FieldSpec& f, uint64_t n);

bool is_prime(uint32_t n);

}  // namespace quivfix
