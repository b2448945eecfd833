#include <set>

#include "doctest.h"
#include "quivfix/aut.hpp"
#include "quivfix/hilbert.hpp"
#include "quivfix/stability.hpp"
#include "test_util.hpp"

using namespace quivfix;
using namespace quivfix::testutil;

TEST_SUITE_BEGIN("automorphisms");

TEST_CASE("the framed Jordan double has automorphism group Z/2 x Z/2") {
  DoubledQuiver fj = framed_jordan_double();
  auto all = enumerate_aut(fj.q);
  REQUIRE(all.size() == 4);
  int covariant = 0, contravariant = 0;
  bool found_loop_swap = false, found_framing_swap = false;
  for (const auto& s : all) {
    (s.covariant() ? covariant : contravariant)++;
    if (s.covariant() && s.amap == std::vector<int>{1, 0, 2, 3}) found_loop_swap = true;
    if (!s.covariant() && s.amap == std::vector<int>{0, 1, 3, 2}) found_framing_swap = true;
  }
  CHECK(covariant == 2);
  CHECK(contravariant == 2);
  CHECK(found_loop_swap);       // x <-> y, covariant
  CHECK(found_framing_swap);    // i <-> j, contravariant
  AutGroup g = close_subgroup(fj.q, all);
  CHECK(g.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(g.group.mul[size_t(i)][size_t(i)] == g.group.id);  // exponent 2
}

TEST_CASE("star quivers have S_n as covariant automorphisms") {
  for (int n = 2; n <= 5; ++n) {
    auto all = enumerate_aut(star_quiver(n));
    uint64_t expected = 1;
    for (int k = 2; k <= n; ++k) expected *= uint64_t(k);
    CHECK(all.size() == expected);
    for (const auto& s : all) {
      CHECK(s.covariant());
      CHECK(s.vmap[0] == 0);  // the central vertex is always fixed
    }
  }
}

TEST_CASE("A2 has a trivial covariant part and one contravariant swap") {
  auto cov = enumerate_aut(a2_quiver(), VarianceFilter::covariant);
  REQUIRE(cov.size() == 1);
  CHECK(cov[0].is_identity());
  auto contra = enumerate_aut(a2_quiver(), VarianceFilter::contravariant);
  REQUIRE(contra.size() == 1);
  CHECK(contra[0].vmap == std::vector<int>{1, 0});
}

TEST_CASE("sign is a homomorphism") {
  CHECK(sign(trivial_aut(k2_quiver())) == 1);
  DoubledQuiver fj = framed_jordan_double();
  AutGroup g = close_subgroup(fj.q, enumerate_aut(fj.q));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      CHECK(sign(g[g.group.mul[size_t(i)][size_t(j)]]) == sign(g[i]) * sign(g[j]));
  // A composition of two contravariant automorphisms is covariant.
  auto contra = enumerate_aut(fj.q, VarianceFilter::contravariant);
  CHECK(compose(contra[0], contra[1]).covariant());
}

TEST_CASE("subgroup closure") {
  AutGroup z2 = close_subgroup(k2_quiver(), {k2_swap()});
  CHECK(z2.size() == 2);

  Quiver star5 = star_quiver(5);
  QuiverAut cyc = trivial_aut(star5);
  // 4-cycle on the outer vertices 1..4 (vertex indices 1..4, arrows 0..3).
  for (int k = 0; k < 4; ++k) {
    cyc.vmap[size_t(1 + k)] = 1 + (k + 1) % 4;
    cyc.amap[size_t(k)] = (k + 1) % 4;
  }
  AutGroup z4 = close_subgroup(star5, {cyc});
  CHECK(z4.size() == 4);
  CHECK(z4.group.is_cyclic());

  Quiver star3 = star_quiver(3);
  QuiverAut t12 = trivial_aut(star3), t23 = trivial_aut(star3);
  std::swap(t12.vmap[1], t12.vmap[2]);
  std::swap(t12.amap[0], t12.amap[1]);
  std::swap(t23.vmap[2], t23.vmap[3]);
  std::swap(t23.amap[1], t23.amap[2]);
  AutGroup s3 = close_subgroup(star3, {t12, t23});
  CHECK(s3.size() == 6);
  CHECK_FALSE(s3.group.is_cyclic());
}

TEST_CASE("enumeration output is a group") {
  for (const Quiver& q : {k2_quiver(), c2_quiver(), star_quiver(3)}) {
    auto all = enumerate_aut(q);
    bool has_id = false;
    for (const auto& s : all)
      if (s.is_identity()) has_id = true;
    CHECK(has_id);
    for (const auto& s : all) {
      CHECK(std::find(all.begin(), all.end(), inverse_aut(s)) != all.end());
      for (const auto& t : all)
        CHECK(std::find(all.begin(), all.end(), compose(s, t)) != all.end());
    }
  }
}

TEST_CASE("compatibility of dimension vectors and stability parameters") {
  AutGroup c2 = close_subgroup(c2_quiver(), {c2_swap()});
  CHECK(is_compatible(c2, {1, 1}, {0, 0}) == std::pair<bool, bool>{true, true});
  CHECK(is_compatible(c2, {1, 2}, {0, 0}).first == false);
  CHECK(is_compatible(c2, {1, 1}, {1, -1}).second == false);

  Quiver star4 = star_quiver(4);
  QuiverAut swap12 = trivial_aut(star4);
  std::swap(swap12.vmap[1], swap12.vmap[2]);
  std::swap(swap12.amap[0], swap12.amap[1]);
  AutGroup s = close_subgroup(star4, {swap12});
  CHECK(is_compatible(s, {2, 1, 1, 1, 1}, star_theta({1, 1, 2, 3})).second);
  CHECK_FALSE(is_compatible(s, {2, 1, 1, 1, 1}, star_theta({1, 2, 1, 1})).second);

  // Contravariant involutions force theta = -theta on fixed vertices.
  DoubledQuiver fj = framed_jordan_double();
  auto contra = enumerate_aut(fj.q, VarianceFilter::contravariant);
  AutGroup sc = close_subgroup(fj.q, {contra[0]});
  CHECK(is_compatible(sc, {2, 1}, {0, 0}).second);
  CHECK_FALSE(is_compatible(sc, {2, 1}, {1, 0}).second);
}

TEST_CASE("star classification on doubled quivers") {
  DoubledQuiver d3 = make_double(star_quiver(3));
  QuiverAut canon = canonical_contravariant(d3);
  CHECK(star_classify(d3, canon) == StarClass::anti_symplectic);
  CHECK_FALSE(canon.covariant());
  for (size_t v = 0; v < canon.vmap.size(); ++v) CHECK(canon.vmap[v] == int(v));

  // Extensions of base automorphisms by sigma(a*) = sigma(a)* are symplectic.
  QuiverAut t12 = trivial_aut(star_quiver(3));
  std::swap(t12.vmap[1], t12.vmap[2]);
  std::swap(t12.amap[0], t12.amap[1]);
  QuiverAut ext = extend_to_double(d3, t12);
  CHECK(star_classify(d3, ext) == StarClass::symplectic);

  QuiverAut id_ext = extend_to_double(d3, trivial_aut(star_quiver(3)));
  CHECK(id_ext.is_identity());

  // A three-vertex double where the star-compatibility condition holds but
  // the arrows are neither kept in A nor sent wholly to A*.
  Quiver q;
  q.add_vertex("1").add_vertex("2").add_vertex("3");
  q.add_arrow("a", "1", "2").add_arrow("b", "2", "3").add_arrow("c", "3", "2");
  DoubledQuiver dq = make_double(q);
  QuiverAut s = trivial_aut(dq.q);
  s.variance = Variance::contravariant;
  int a = dq.q.arrow_index("a"), as = dq.q.arrow_index("a*");
  int b = dq.q.arrow_index("b"), bs = dq.q.arrow_index("b*");
  int cc = dq.q.arrow_index("c"), cs = dq.q.arrow_index("c*");
  s.amap[size_t(a)] = as;
  s.amap[size_t(as)] = a;
  s.amap[size_t(b)] = cc;
  s.amap[size_t(cc)] = b;
  s.amap[size_t(bs)] = cs;
  s.amap[size_t(cs)] = bs;
  REQUIRE(is_valid_aut(dq.q, s));
  CHECK(star_classify(dq, s) == StarClass::not_star);
}

TEST_SUITE_END();
