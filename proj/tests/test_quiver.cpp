#include "doctest.h"
#include "quivfix/aut.hpp"
#include "quivfix/hilbert.hpp"
#include "quivfix/quiver.hpp"
#include "quivfix/stability.hpp"
#include "test_util.hpp"

using namespace quivfix;
using namespace quivfix::testutil;

TEST_SUITE_BEGIN("quiver");

TEST_CASE("validation accepts A2 and rejects bad data") {
  CHECK_NOTHROW(validate(a2_quiver()));

  Quiver dangling = a2_quiver();
  dangling.arrows[0].head = 7;
  CHECK_THROWS_WITH_AS(validate(dangling), doctest::Contains("DanglingArrow"), Error);

  Quiver dup = a2_quiver();
  dup.add_arrow("a", "1", "2");
  CHECK_THROWS_WITH_AS(validate(dup), doctest::Contains("DuplicateId"), Error);
}

TEST_CASE("doubling") {
  DoubledQuiver jd = make_double(jordan_quiver());
  REQUIRE(jd.q.num_arrows() == 2);
  CHECK(jd.q.arrows[1].name == "x*");
  CHECK(jd.star == std::vector<int>{1, 0});

  // Framed Jordan double: loops x, y = x* at v0; i from the framing vertex, j = i*.
  DoubledQuiver fj = framed_jordan_double();
  REQUIRE(fj.q.num_arrows() == 4);
  CHECK(fj.q.arrows[0].name == "x");
  CHECK(fj.q.arrows[1].name == "y");
  CHECK(fj.star[0] == 1);
  CHECK(fj.q.arrows[2].tail == fj.q.vertex_index("vinf"));
  CHECK(fj.q.arrows[3].head == fj.q.vertex_index("vinf"));
  CHECK(fj.base_list() == std::vector<int>{0, 2});

  DoubledQuiver a2d = make_double(a2_quiver());
  CHECK(a2d.q.arrows[1].tail == 1);
  CHECK(a2d.q.arrows[1].head == 0);
}

TEST_CASE("quotient quivers collapse orbits") {
  // K2 modulo the arrow swap is a single-arrow quiver.
  AutGroup s1 = close_subgroup(k2_quiver(), {k2_swap()});
  QuotientQuiver qq = quotient_quiver(k2_quiver(), s1);
  CHECK(qq.q.num_vertices() == 2);
  CHECK(qq.q.num_arrows() == 1);
  CHECK(qq.q.arrows[0].name == "a");

  // Two-cycle modulo the vertex swap is the one-loop quiver.
  AutGroup s2 = close_subgroup(c2_quiver(), {c2_swap()});
  QuotientQuiver qc = quotient_quiver(c2_quiver(), s2);
  CHECK(qc.q.num_vertices() == 1);
  CHECK(qc.q.num_arrows() == 1);
  CHECK(qc.q.arrows[0].tail == 0);
  CHECK(qc.q.arrows[0].head == 0);

  // Star quiver with two outer vertices identified drops one branch.
  Quiver star4 = star_quiver(4);
  QuiverAut rot = trivial_aut(star4);
  std::swap(rot.vmap[1], rot.vmap[2]);
  std::swap(rot.amap[0], rot.amap[1]);
  AutGroup s3 = close_subgroup(star4, {rot});
  QuotientQuiver qs = quotient_quiver(star4, s3);
  CHECK(qs.q.num_vertices() == 4);
  CHECK(qs.q.num_arrows() == 3);
}

TEST_CASE("induced dimension vectors and stability parameters") {
  AutGroup s1 = close_subgroup(k2_quiver(), {k2_swap()});
  QuotientQuiver qq = quotient_quiver(k2_quiver(), s1);
  InducedData ind = induced_dim_stab(k2_quiver(), qq, s1, {1, 1}, {1, -1});
  CHECK(ind.dim == DimVector{1, 1});
  CHECK(ind.theta == StabilityParam{1, -1});

  // Star-4 with outer vertices {1,2} identified: weights (1,1,1,1) -> (2,1,1).
  Quiver star4 = star_quiver(4);
  QuiverAut swap12 = trivial_aut(star4);
  std::swap(swap12.vmap[1], swap12.vmap[2]);
  std::swap(swap12.amap[0], swap12.amap[1]);
  AutGroup s = close_subgroup(star4, {swap12});
  QuotientQuiver qs = quotient_quiver(star4, s);
  InducedData ind2 = induced_dim_stab(star4, qs, s, {2, 1, 1, 1, 1}, star_theta({1, 1, 1, 1}));
  CHECK(ind2.dim == DimVector{2, 1, 1, 1});
  CHECK(ind2.theta == star_theta({2, 1, 1}));

  // Trivial group leaves everything unchanged.
  AutGroup triv = close_subgroup(k2_quiver(), {});
  QuotientQuiver qt = quotient_quiver(k2_quiver(), triv);
  InducedData ind3 = induced_dim_stab(k2_quiver(), qt, triv, {1, 1}, {1, -1});
  CHECK(ind3.dim == DimVector{1, 1});
  CHECK(ind3.theta == StabilityParam{1, -1});
}

TEST_CASE("slopes") {
  CHECK(slope({1, -1}, {1, 0}) == Rat(1));
  CHECK(slope({3, -7, 2}, {1, 1, 2}) == Rat(0));  // 3 - 7 + 4 = 0
  StabilityParam tr = star_theta({1, 2, 3});
  CHECK(slope(tr, {2, 1, 1, 1}) == Rat(0));
  CHECK_THROWS_AS((void)slope({1, -1}, {0, 0}), Error);
}

TEST_CASE("theta' pairs to zero against the dimension vector") {
  for (auto [theta, d] : {std::pair<StabilityParam, DimVector>{{1, -1}, {1, 1}},
                          {{3, 5, -2}, {2, 0, 4}},
                          {star_theta({1, 1, 1, 1}), {2, 1, 1, 1, 1}}}) {
    auto tp = theta_prime(theta, d);
    int64_t acc = 0;
    for (size_t v = 0; v < d.size(); ++v) acc += tp[v] * d[v];
    CHECK(acc == 0);
  }
}

TEST_CASE("chi_theta on K2 and on Delta") {
  ActionContext c = ActionContext::make(k2_quiver(), {1, 1}, FieldSpec::q());
  auto tp = theta_prime({1, -1}, {1, 1});
  CHECK(tp == std::vector<int64_t>{2, -2});

  GaugeT<Scalar> g = gauge_identity<Scalar>(c);
  g.g[0].at(0, 0) = Scalar::rational(Rat(3));
  g.g[1].at(0, 0) = Scalar::rational(Rat(5));
  // chi(s1, s2) = s1^{-2} s2^{2}
  CHECK(chi_theta(c, tp, g) == Scalar::rational(Rat(25, 9)));

  GaugeT<Scalar> d = delta_embed(c, Scalar::rational(Rat(7)));
  CHECK(chi_theta(c, tp, d).is_one());
  CHECK(chi_theta(c, theta_prime({0, 0}, {1, 1}), g).is_one());
}

TEST_CASE("chi_theta is multiplicative") {
  ActionContext cf = ActionContext::make(k2_quiver(), {1, 1}, FieldSpec::fp(3));
  auto tp = theta_prime({1, -1}, {1, 1});
  auto gauge = enumerate_gauge(cf);
  for (const auto& g : gauge)
    for (const auto& h : gauge)
      CHECK(chi_theta_fp(cf, tp, gauge_mul(g, h)) ==
            chi_theta_fp(cf, tp, g).mul(chi_theta_fp(cf, tp, h)));

  ActionContext cq = ActionContext::make(c2_quiver(), {2, 2}, FieldSpec::q());
  auto tp2 = theta_prime({1, -1}, {2, 2});
  for (int k = 0; k < 10; ++k) {
    auto g = random_gauge(cq), h = random_gauge(cq);
    CHECK(chi_theta(cq, tp2, gauge_mul(g, h)) == chi_theta(cq, tp2, g).mul(chi_theta(cq, tp2, h)));
  }
}

TEST_SUITE_END();
