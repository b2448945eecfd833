#include <numeric>
#include <set>

#include "doctest.h"
#include "quivfix/field.hpp"
#include "test_util.hpp"

using namespace quivfix;

TEST_SUITE_BEGIN("fields");

namespace {

// Independent oracle: the inverse of x in F_p by scanning the whole
// multiplication table.
uint32_t inverse_by_table(uint32_t p, uint32_t x) {
  for (uint32_t y = 1; y < p; ++y)
    if (x * y % p == 1) return y;
  return 0;
}

// Independent oracle: smallest-representative coset census of k^x/(k^x)^n.
std::set<uint32_t> power_cosets_brute(uint32_t p, uint32_t n) {
  std::set<uint32_t> powers;
  for (uint32_t x = 1; x < p; ++x) {
    uint64_t acc = 1;
    for (uint32_t e = 0; e < n; ++e) acc = acc * x % p;
    powers.insert(uint32_t(acc));
  }
  std::set<uint32_t> reps;
  std::set<uint32_t> covered;
  for (uint32_t x = 1; x < p; ++x) {
    if (covered.count(x)) continue;
    reps.insert(x);
    for (uint32_t q : powers) covered.insert(uint32_t(uint64_t(q) * x % p));
  }
  return reps;
}

}  // namespace

TEST_CASE("prime field inverse matches the multiplication-table oracle") {
  CHECK(inverse_by_table(5, 3) == 2);  // frozen from the oracle
  CHECK(Scalar::fp(5, 3).inv() == Scalar::fp(5, 2));
  for (uint32_t p : {3u, 5u, 7u, 97u})
    for (uint32_t x = 1; x < p; ++x)
      CHECK(Scalar::fp(p, x).inv().residue() == inverse_by_table(p, x));
}

TEST_CASE("multiplicative identity and Gaussian conjugation") {
  for (auto f : {FieldSpec::fp(7), FieldSpec::q(), FieldSpec::qi()}) {
    Scalar x = testutil::random_scalar(f);
    CHECK(x.mul(Scalar::one(f)) == x);
  }
  Scalar z = Scalar::gaussian(Rat(2), Rat(3));
  CHECK(z.conj() == Scalar::gaussian(Rat(2), Rat(-3)));
  CHECK(Scalar::rational(Rat(5, 3)).conj() == Scalar::rational(Rat(5, 3)));
}

TEST_CASE("field axioms hold exhaustively over F_p, p <= 7") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    for (uint32_t a = 0; a < p; ++a)
      for (uint32_t b = 0; b < p; ++b) {
        Scalar x = Scalar::fp(p, a), y = Scalar::fp(p, b);
        CHECK(x.add(y) == y.add(x));
        CHECK(x.mul(y) == y.mul(x));
        for (uint32_t c = 0; c < p; ++c) {
          Scalar z = Scalar::fp(p, c);
          CHECK(x.add(y).add(z) == x.add(y.add(z)));
          CHECK(x.mul(y).mul(z) == x.mul(y.mul(z)));
          CHECK(x.mul(y.add(z)) == x.mul(y).add(x.mul(z)));
        }
        if (b != 0) CHECK(x.div(y).mul(y) == x);
      }
    for (uint32_t a = 1; a < p; ++a) CHECK(Scalar::fp(p, a).mul(Scalar::fp(p, a).inv()).is_one());
  }
}

TEST_CASE("unit groups are the ascending nonzero residues") {
  auto u3 = unit_group(FieldSpec::fp(3));
  REQUIRE(u3.size() == 2);
  CHECK(u3[0] == Scalar::fp(3, 1));
  CHECK(u3[1] == Scalar::fp(3, 2));
  auto u5 = unit_group(FieldSpec::fp(5));
  REQUIRE(u5.size() == 4);
  for (uint32_t r = 1; r <= 4; ++r) CHECK(u5[r - 1].residue() == r);
  CHECK(unit_group(FieldSpec::fp(7)).size() == 6);
  CHECK_THROWS_AS((void)unit_group(FieldSpec::q()), Error);
}

TEST_CASE("power class quotients match brute force") {
  CHECK(power_cosets_brute(5, 2) == std::set<uint32_t>{1, 2});  // frozen
  CHECK(power_cosets_brute(7, 3) == std::set<uint32_t>{1, 2, 3});  // frozen

  auto as_set = [](const std::vector<Scalar>& v) {
    std::set<uint32_t> s;
    for (const auto& x : v) s.insert(x.residue());
    return s;
  };
  CHECK(as_set(power_class_quotient(FieldSpec::fp(5), 2)) == std::set<uint32_t>{1, 2});
  CHECK(as_set(power_class_quotient(FieldSpec::fp(5), 1)) == std::set<uint32_t>{1});
  CHECK(as_set(power_class_quotient(FieldSpec::fp(7), 3)) == std::set<uint32_t>{1, 2, 3});
  for (uint32_t p : {3u, 5u, 7u, 11u, 13u})
    for (uint32_t n = 1; n <= 8; ++n) {
      CHECK(power_class_quotient(FieldSpec::fp(p), n).size() == std::gcd(n, p - 1));
      CHECK(as_set(power_class_quotient(FieldSpec::fp(p), n)) == power_cosets_brute(p, n));
    }
}

TEST_CASE("conjugation is an involutive automorphism of Q(i)") {
  FieldSpec f = FieldSpec::qi();
  for (int k = 0; k < 50; ++k) {
    Scalar x = testutil::random_scalar(f), y = testutil::random_scalar(f);
    CHECK(x.conj().conj() == x);
    CHECK(x.mul(y).conj() == x.conj().mul(y.conj()));
    CHECK(x.add(y).conj() == x.conj().add(y.conj()));
  }
}

TEST_CASE("string forms round-trip and stay canonical") {
  struct Case {
    FieldSpec f;
    const char* text;
  };
  Case cases[] = {
      {FieldSpec::fp(5), "4 mod 5"}, {FieldSpec::q(), "3/7"},   {FieldSpec::q(), "-2"},
      {FieldSpec::qi(), "2+3i"},     {FieldSpec::qi(), "1-i"},  {FieldSpec::qi(), "2"},
      {FieldSpec::qi(), "3i"},       {FieldSpec::qi(), "-i"},   {FieldSpec::qi(), "-2/3-3/5i"},
  };
  for (const auto& c : cases) {
    Scalar s = Scalar::parse(c.f, c.text);
    CHECK(s.str() == c.text);
    CHECK(Scalar::parse(c.f, s.str()) == s);
  }
  // Non-canonical inputs normalize.
  CHECK(Scalar::parse(FieldSpec::q(), "4/6").str() == "2/3");
  CHECK(Scalar::parse(FieldSpec::fp(5), "9 mod 5").str() == "4 mod 5");
  CHECK(Scalar::parse(FieldSpec::fp(5), "-1").str() == "4 mod 5");
}

TEST_CASE("division by zero and field mismatch raise") {
  CHECK_THROWS_AS((void)Scalar::fp(5, 0).inv(), Error);
  CHECK_THROWS_AS((void)Scalar::rational(Rat(0)).inv(), Error);
  CHECK_THROWS_AS((void)Scalar::fp(5, 1).add(Scalar::fp(7, 1)), Error);
  CHECK_THROWS_AS((void)Scalar::rational(Rat(1)).add(Scalar::gaussian(Rat(1), Rat(0))), Error);
}

TEST_SUITE_END();
