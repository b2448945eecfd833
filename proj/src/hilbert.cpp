#include "quivfix/hilbert.hpp"

#include <algorithm>
#include <set>

namespace quivfix {

DoubledQuiver framed_jordan_double() {
  Quiver q;
  q.add_vertex("v0").add_vertex("vinf");
  q.add_arrow("x", "v0", "v0").add_arrow("y", "v0", "v0");
  q.add_arrow("i", "vinf", "v0").add_arrow("j", "v0", "vinf");
  return bind_double(std::move(q), {1, 0, 3, 2});  // y = x*, j = i*
}

ActionContext framed_jordan_ctx(int n, uint32_t p) {
  return ActionContext::make(framed_jordan_double().q, {int64_t(n), 1}, FieldSpec::fp(p), {1, 0});
}

namespace {
constexpr FramedArrows kArrows{};
}

Mat<Fp> framed_moment(const ActionContext&, const RepF& m) {
  const Mat<Fp>& x = m.m[size_t(kArrows.x)];
  const Mat<Fp>& y = m.m[size_t(kArrows.y)];
  const Mat<Fp>& i = m.m[size_t(kArrows.i)];
  const Mat<Fp>& j = m.m[size_t(kArrows.j)];
  return mat_add(mat_sub(mat_mul(x, y), mat_mul(y, x)), mat_mul(i, j));
}

bool in_zero_fiber(const ActionContext& c, const RepF& m) { return framed_moment(c, m).is_zero(); }

bool det_stable(const ActionContext& c, const RepF& m) {
  if (!in_zero_fiber(c, m)) fail(Errc::NotInFiber, "det-stability is tested inside mu^{-1}(0)");
  const uint32_t p = c.field.p;
  const int n = c.dim_at(0);
  // Iterated Krylov span of M_i under M_x and M_y.
  Mat<Fp> span = m.m[size_t(kArrows.i)];  // n x 1
  int rank = mat_rank(span.transpose());
  while (true) {
    Mat<Fp> bigger(span.rows, 3 * span.cols, Fp(0, p));
    Mat<Fp> mx = mat_mul(m.m[size_t(kArrows.x)], span);
    Mat<Fp> my = mat_mul(m.m[size_t(kArrows.y)], span);
    for (int r = 0; r < span.rows; ++r)
      for (int cidx = 0; cidx < span.cols; ++cidx) {
        bigger.at(r, cidx) = span.at(r, cidx);
        bigger.at(r, span.cols + cidx) = mx.at(r, cidx);
        bigger.at(r, 2 * span.cols + cidx) = my.at(r, cidx);
      }
    int new_rank = mat_rank(bigger.transpose());
    if (new_rank == rank) break;
    rank = new_rank;
    span = std::move(bigger);
  }
  return rank == n;
}

IdealReport ideal_of(const ActionContext& c, const RepF& m) {
  if (!det_stable(c, m)) fail(Errc::NotStable, "the ideal is attached to det-stable points");
  const uint32_t p = c.field.p;
  const int n = c.dim_at(0);
  const Mat<Fp>& X = m.m[size_t(kArrows.x)];
  const Mat<Fp>& Y = m.m[size_t(kArrows.y)];
  Mat<Fp> comm = mat_sub(mat_mul(X, Y), mat_mul(Y, X));
  if (!comm.is_zero()) fail(Errc::NotStable, "coordinate matrices do not commute");

  // Monomials x^a y^b with a+b <= n, graded lexicographic.
  std::vector<std::pair<int, int>> monomials;
  for (int deg = 0; deg <= n; ++deg)
    for (int a = deg; a >= 0; --a) monomials.push_back({a, deg - a});

  Mat<Fp> eval(n, int(monomials.size()), Fp(0, p));
  for (size_t k = 0; k < monomials.size(); ++k) {
    Mat<Fp> v = m.m[size_t(kArrows.i)];
    for (int t = 0; t < monomials[k].first; ++t) v = mat_mul(X, v);
    for (int t = 0; t < monomials[k].second; ++t) v = mat_mul(Y, v);
    for (int r = 0; r < n; ++r) eval.at(r, int(k)) = v.at(r, 0);
  }
  IdealReport rep;
  Mat<Fp> reduced = eval;
  std::vector<int> pivots = rref(reduced);
  rep.codim = int(pivots.size());
  for (int col : pivots) rep.quotient_monomials.push_back(monomials[size_t(col)]);
  rep.window_kernel_dim = int(monomials.size()) - rep.codim;
  rep.contains_x_minus_y = fixed_diagonal_check(c, m);
  return rep;
}

bool fixed_diagonal_check(const ActionContext&, const RepF& m) {
  Mat<Fp> diff = mat_sub(m.m[size_t(kArrows.x)], m.m[size_t(kArrows.y)]);
  return mat_mul(diff, m.m[size_t(kArrows.i)]).is_zero();
}

std::vector<Mat<Fp>> involution_classes(int n, uint32_t p) {
  ActionContext one_vertex =
      ActionContext::make(Quiver().add_vertex("v"), {int64_t(n)}, FieldSpec::fp(p));
  std::vector<GaugeF> gl = enumerate_gauge(one_vertex);
  Mat<Fp> id = Mat<Fp>::identity(n, Fp(1, p));
  std::vector<Mat<Fp>> involutions;
  for (const auto& g : gl)
    if (mat_mul(g.g[0], g.g[0]) == id) involutions.push_back(g.g[0]);

  std::set<std::vector<uint32_t>> seen;
  std::vector<Mat<Fp>> reps;
  auto key = [](const Mat<Fp>& m) {
    std::vector<uint32_t> k;
    for (const auto& e : m.a) k.push_back(e.v);
    return k;
  };
  for (const auto& inv : involutions) {
    std::vector<uint32_t> canon;
    for (const auto& g : gl) {
      auto ginv = mat_inverse(g.g[0], Fp(0, p), Fp(1, p));
      auto conj = mat_mul(g.g[0], mat_mul(inv, *ginv));
      auto k = key(conj);
      if (canon.empty() || k < canon) canon = k;
    }
    if (seen.insert(canon).second) {
      // Canonical representative: -1 appearing r times, then 1.
      int r = mat_rank(mat_sub(inv, id));
      Mat<Fp> u = id;
      for (int t = 0; t < r; ++t) u.at(t, t) = Fp(p - 1, p);
      reps.push_back(u);
    }
  }
  std::sort(reps.begin(), reps.end(), [&](const Mat<Fp>& a, const Mat<Fp>& b) {
    return mat_rank(mat_sub(a, id)) < mat_rank(mat_sub(b, id));
  });
  return reps;
}

namespace {

std::vector<uint8_t> classify_fiber_impl(const ActionContext& c, ExecPolicy policy) {
  RepIndexer idx(c);
  std::vector<uint8_t> flags(size_t(idx.count), 0);
  parallel_chunks(size_t(idx.count), policy, [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      RepF m = idx.decode(i);
      if (!in_zero_fiber(c, m)) continue;
      flags[i] = det_stable(c, m) ? 3 : 1;
    }
  });
  return flags;
}

}  // namespace

std::vector<uint8_t> classify_fiber_points(const ActionContext& c, ExecPolicy policy) {
  return classify_fiber_impl(c, policy);
}

std::vector<uint8_t> classify_fiber_points_serial(const ActionContext& c) {
  return classify_fiber_impl(c, ExecPolicy::Serial);
}

ModuliSet hilbert_moduli(const ActionContext& c, ExecPolicy policy) {
  std::vector<uint8_t> flags = classify_fiber_points(c, policy);
  std::vector<uint8_t> keep(flags.size(), 0);
  for (size_t i = 0; i < flags.size(); ++i) keep[i] = flags[i] == 3;
  ModuliSet out = enumerate_orbits(c, keep);
  for (auto& pt : out.points) {
    pt.semistable = true;
    pt.stable = true;
    pt.endo = endo_dim(c, pt.canon);
  }
  return out;
}

HilbertCensus hilbert_census(int n, uint32_t p, ExecPolicy policy) {
  ActionContext c = framed_jordan_ctx(n, p);
  HilbertCensus out;
  out.moduli = hilbert_moduli(c, policy);

  QuiverAut swap_xy = trivial_aut(c.q);
  std::swap(swap_xy.amap[size_t(kArrows.x)], swap_xy.amap[size_t(kArrows.y)]);
  AutGroup S = close_subgroup(c.q, {swap_xy});
  out.sigma_fixed = sigma_fixed_moduli(S, out.moduli);

  std::set<int> covered, all_images;
  uint64_t listed = 0;
  for (const Mat<Fp>& u0 : involution_classes(n, p)) {
    HilbertComponent comp;
    comp.u = u0;
    ModifyingFamily fam;
    fam.u.assign(2, gauge_identity<Fp>(c));
    fam.u[1].g[0] = u0;
    std::string why;
    if (!is_modifying_family(c, S, fam, &why)) fail(Errc::NotAModifyingFamily, why);
    TwistedAction t{c, S, fam.u};
    comp.twisted_gauge_order = fixed_gauge(t).order;

    std::vector<RepF> fixed = enumerate_fixed_reps(t);
    std::vector<RepF> stable_fixed;
    for (const auto& m : fixed)
      if (in_zero_fiber(c, m) && det_stable(c, m)) stable_fixed.push_back(m);
    comp.fixed_stable_points = stable_fixed.size();

    FixedGaugeReport subgroup = fixed_gauge(t);
    std::set<std::vector<uint32_t>> domain;
    std::set<int> image;
    for (const auto& m : stable_fixed) {
      std::vector<uint32_t> best = rep_key(m);
      for (const auto& g : subgroup.elements) best = std::min(best, rep_key(act(c, g, m)));
      if (domain.insert(best).second) {
        int id = out.moduli.orbit_of(m);
        if (id < 0) fail(Errc::Mismatch, "twisted stable point missing from the moduli set");
        image.insert(id);
      }
    }
    comp.domain_orbits = domain.size();
    comp.image.assign(image.begin(), image.end());
    listed += comp.image.size();
    for (int id : comp.image) {
      covered.insert(id);
      all_images.insert(id);
    }
    out.components.push_back(std::move(comp));
  }
  out.disjoint = all_images.size() == listed;
  for (int id : out.sigma_fixed)
    if (!covered.count(id)) out.uncovered.push_back(id);
  return out;
}

}  // namespace quivfix
