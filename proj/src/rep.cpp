#include "quivfix/rep.hpp"

#include <algorithm>
#include <map>

namespace quivfix {

ActionContext ActionContext::make(Quiver q, DimVector d, FieldSpec f, std::vector<char> acting) {
  validate(q);
  if (int(d.size()) != q.num_vertices()) fail(Errc::ShapeMismatch, "dimension vector size");
  for (auto x : d)
    if (x < 0) fail(Errc::ShapeMismatch, "negative dimension");
  if (!acting.empty() && int(acting.size()) != q.num_vertices())
    fail(Errc::ShapeMismatch, "acting mask size");
  return ActionContext{std::move(q), std::move(d), f, std::move(acting)};
}

int ActionContext::rep_entries() const {
  int n = 0;
  for (const auto& a : q.arrows) n += dim_at(a.head) * dim_at(a.tail);
  return n;
}

bool delta_is_full_scalar_group(const ActionContext& c) {
  bool any_acting_dim = false;
  for (int v = 0; v < c.q.num_vertices(); ++v)
    if (c.vertex_acts(v) && c.dim_at(v) > 0) any_acting_dim = true;
  if (!any_acting_dim) return false;
  for (const auto& a : c.q.arrows) {
    if (c.dim_at(a.head) == 0 || c.dim_at(a.tail) == 0) continue;
    if (c.vertex_acts(a.head) != c.vertex_acts(a.tail)) return false;
  }
  return true;
}

namespace {

template <class K>
Scalar det_as_scalar(const ActionContext&, const Mat<Scalar>& m, const FieldSpec& f) {
  return mat_det(m, Scalar::zero(f), Scalar::one(f));
}

}  // namespace

Scalar chi_theta(const ActionContext& c, const std::vector<int64_t>& theta_pr,
                 const GaugeT<Scalar>& g) {
  Scalar acc = Scalar::one(c.field);
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    Scalar det = mat_det(g.g[size_t(v)], Scalar::zero(c.field), Scalar::one(c.field));
    acc = acc.mul(det.pow(-theta_pr[size_t(v)]));
  }
  return acc;
}

Scalar chi_theta_fp(const ActionContext& c, const std::vector<int64_t>& theta_pr, const GaugeF& g) {
  return chi_theta(c, theta_pr, gauge_to_scalar(c, g));
}

template <class K>
std::vector<RepT<K>> fixed_rep_space(const TwistedActionT<K>& t) {
  const ActionContext& c = t.ctx;
  K zero = FieldOps<K>::zero(c.field);
  K one = FieldOps<K>::one(c.field);
  const int n = c.rep_entries();

  // Column k of the linear operator M -> u_s . Phi_s(M), evaluated on the
  // unit rep with a single 1 in slot k. The fixed space is the kernel of
  // the stacked (Id - operator) blocks over all non-identity s.
  std::vector<int> sigmas;
  for (int i = 0; i < t.S.size(); ++i)
    if (i != t.S.group.id) sigmas.push_back(i);
  Mat<K> sys(int(sigmas.size()) * n, n, zero);

  for (int k = 0; k < n; ++k) {
    RepT<K> unit = rep_zero<K>(c);
    int pos = 0;
    for (auto& mat : unit.m) {
      if (k - pos < int(mat.a.size())) {
        mat.a[size_t(k - pos)] = one;
        break;
      }
      pos += int(mat.a.size());
    }
    for (size_t si = 0; si < sigmas.size(); ++si) {
      RepT<K> image = t.apply_rep(sigmas[si], unit);
      int row = int(si) * n;
      int slot = 0;
      for (const auto& mat : image.m)
        for (const auto& entry : mat.a) {
          K val = entry.neg();
          if (slot == k) val = val.add(one);
          sys.at(row + slot, k) = val;
          ++slot;
        }
    }
  }

  std::vector<std::vector<K>> kb = kernel_basis(std::move(sys), zero, one);
  std::vector<RepT<K>> basis;
  for (const auto& vec : kb) {
    RepT<K> m = rep_zero<K>(c);
    int slot = 0;
    for (auto& mat : m.m)
      for (auto& entry : mat.a) entry = vec[size_t(slot++)];
    basis.push_back(std::move(m));
  }
  return basis;
}

template std::vector<RepT<Fp>> fixed_rep_space<Fp>(const TwistedActionT<Fp>&);
template std::vector<RepT<Scalar>> fixed_rep_space<Scalar>(const TwistedActionT<Scalar>&);

std::vector<RepF> enumerate_fixed_reps(const TwistedAction& t) {
  if (!t.ctx.field.finite()) fail(Errc::InfiniteField, "fixed point enumeration needs F_p");
  std::vector<RepF> basis = fixed_rep_space(t);
  const uint32_t p = t.ctx.field.p;
  uint64_t total = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    total *= p;
    if (total > 100000000ULL) fail(Errc::TooLarge, "fixed subspace too large to enumerate");
  }
  std::vector<RepF> points;
  points.reserve(size_t(total));
  for (uint64_t idx = 0; idx < total; ++idx) {
    RepF m = rep_zero<Fp>(t.ctx);
    uint64_t rest = idx;
    for (const auto& b : basis) {
      Fp coeff(uint32_t(rest % p), p);
      rest /= p;
      for (size_t a = 0; a < m.m.size(); ++a)
        for (size_t e = 0; e < m.m[a].a.size(); ++e)
          m.m[a].a[e] = m.m[a].a[e].add(coeff.mul(b.m[a].a[e]));
    }
    points.push_back(std::move(m));
  }
  std::sort(points.begin(), points.end(),
            [](const RepF& x, const RepF& y) { return rep_key(x) < rep_key(y); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

RepIndexer::RepIndexer(const ActionContext& c, uint64_t bound) : ctx(c) {
  if (!c.field.finite()) fail(Errc::InfiniteField, "point indexing needs F_p");
  for (int k = 0; k < c.rep_entries(); ++k) {
    count *= c.field.p;
    if (count > bound) fail(Errc::TooLarge, "representation space exceeds the enumeration bound");
  }
}

RepF RepIndexer::decode(uint64_t index) const {
  RepF m = rep_zero<Fp>(ctx);
  const uint32_t p = ctx.field.p;
  for (auto& mat : m.m)
    for (auto& e : mat.a) {
      e = Fp(uint32_t(index % p), p);
      index /= p;
    }
  return m;
}

uint64_t RepIndexer::encode(const RepF& m) const {
  uint64_t index = 0, base = 1;
  for (const auto& mat : m.m)
    for (const auto& e : mat.a) {
      index += base * e.v;
      base *= ctx.field.p;
    }
  return index;
}

std::vector<uint32_t> rep_key(const RepF& m) {
  std::vector<uint32_t> key;
  for (const auto& mat : m.m)
    for (const auto& e : mat.a) key.push_back(e.v);
  return key;
}

namespace {

// Cache of GL_n(F_p) listings, lexicographic in the flattened entries.
std::vector<Mat<Fp>>& gl_list(uint32_t p, int n) {
  static std::map<std::pair<uint32_t, int>, std::vector<Mat<Fp>>> cache;
  auto it = cache.find({p, n});
  if (it != cache.end()) return it->second;
  std::vector<Mat<Fp>> out;
  uint64_t total = 1;
  for (int k = 0; k < n * n; ++k) total *= p;
  for (uint64_t idx = 0; idx < total; ++idx) {
    Mat<Fp> m(n, n, Fp(0, p));
    uint64_t rest = idx;
    // Most-significant digit first so the listing is lexicographic.
    for (int k = n * n - 1; k >= 0; --k) {
      uint64_t w = 1;
      for (int j = 0; j < k; ++j) w *= p;
      m.a[size_t(n * n - 1 - k)] = Fp(uint32_t(rest / w), p);
      rest %= w;
    }
    if (!mat_det(m, Fp(0, p), Fp(1, p)).is_zero()) out.push_back(std::move(m));
  }
  return cache[{p, n}] = std::move(out);
}

}  // namespace

uint64_t gauge_count(const ActionContext& c) {
  if (!c.field.finite()) fail(Errc::InfiniteField, "gauge enumeration needs F_p");
  uint64_t n = 1;
  for (int v = 0; v < c.q.num_vertices(); ++v)
    if (c.vertex_acts(v)) n *= uint64_t(gl_list(c.field.p, c.dim_at(v)).size());
  return n;
}

std::vector<GaugeF> enumerate_gauge(const ActionContext& c, uint64_t bound) {
  uint64_t n = gauge_count(c);
  if (n > bound) fail(Errc::TooLarge, "gauge group exceeds the enumeration bound");
  std::vector<GaugeF> out;
  out.reserve(size_t(n));
  GaugeF base = gauge_identity<Fp>(c);
  std::vector<int> acting;
  for (int v = 0; v < c.q.num_vertices(); ++v)
    if (c.vertex_acts(v)) acting.push_back(v);
  std::vector<size_t> odo(acting.size(), 0);
  while (true) {
    GaugeF g = base;
    for (size_t i = 0; i < acting.size(); ++i)
      g.g[size_t(acting[i])] = gl_list(c.field.p, c.dim_at(acting[i]))[odo[i]];
    out.push_back(std::move(g));
    size_t k = acting.size();
    while (k > 0) {
      --k;
      if (++odo[k] < gl_list(c.field.p, c.dim_at(acting[k])).size()) break;
      odo[k] = 0;
      if (k == 0) return out;
    }
    if (acting.empty()) return out;
  }
}

FixedGaugeReport fixed_gauge(const TwistedAction& t, uint64_t bound) {
  FixedGaugeReport rep;
  for (const auto& g : enumerate_gauge(t.ctx, bound)) {
    bool fixed = true;
    for (int i = 0; i < t.S.size() && fixed; ++i) {
      if (i == t.S.group.id) continue;
      if (!(t.apply_gauge(i, g) == g)) fixed = false;
    }
    if (fixed) rep.elements.push_back(g);
  }
  rep.order = rep.elements.size();
  return rep;
}

namespace {

template <class K>
int endo_dim_impl(const ActionContext& c, const RepT<K>& m) {
  K zero = FieldOps<K>::zero(c.field);
  K one = FieldOps<K>::one(c.field);
  std::vector<int> offset(size_t(c.q.num_vertices()) + 1, 0);
  for (int v = 0; v < c.q.num_vertices(); ++v)
    offset[size_t(v) + 1] = offset[size_t(v)] + c.dim_at(v) * c.dim_at(v);
  int unknowns = offset.back();
  int rows = 0;
  for (const auto& a : c.q.arrows) rows += c.dim_at(a.head) * c.dim_at(a.tail);
  Mat<K> sys(rows, unknowns, zero);
  int row = 0;
  for (int ai = 0; ai < c.q.num_arrows(); ++ai) {
    const Arrow& a = c.q.arrows[size_t(ai)];
    const Mat<K>& M = m.m[size_t(ai)];
    int dh = c.dim_at(a.head), dt = c.dim_at(a.tail);
    for (int i = 0; i < dh; ++i)
      for (int j = 0; j < dt; ++j) {
        // (g_h M - M g_t)_{ij} = sum_k g_h[i,k] M[k,j] - sum_k M[i,k] g_t[k,j]
        for (int k = 0; k < dh; ++k)
          sys.at(row, offset[size_t(a.head)] + i * dh + k) =
              sys.at(row, offset[size_t(a.head)] + i * dh + k).add(M.at(k, j));
        for (int k = 0; k < dt; ++k)
          sys.at(row, offset[size_t(a.tail)] + k * dt + j) =
              sys.at(row, offset[size_t(a.tail)] + k * dt + j).sub(M.at(i, k));
        ++row;
      }
  }
  return unknowns - int(rref(sys).size());
  (void)one;
}

}  // namespace

int endo_dim(const ActionContext& c, const RepF& m) { return endo_dim_impl(c, m); }
int endo_dim(const ActionContext& c, const RepT<Scalar>& m) { return endo_dim_impl(c, m); }

uint64_t stabilizer_order(const ActionContext& c, const std::vector<GaugeF>& gauge,
                          const RepF& m) {
  uint64_t n = 0;
  for (const auto& g : gauge)
    if (act(c, g, m) == m) ++n;
  return n;
}

QuotientTransport make_transport(const ActionContext& total, const AutGroup& S) {
  QuotientTransport t;
  t.total_ctx = total;
  t.proj = quotient_quiver(total.q, S);
  DimVector d(t.proj.q.vertices.size(), 0);
  for (int v = 0; v < total.q.num_vertices(); ++v)
    d[size_t(t.proj.vertex_proj[size_t(v)])] = total.d[size_t(v)];
  t.quotient_ctx = ActionContext::make(t.proj.q, std::move(d), total.field);
  return t;
}

RepT<Scalar> rep_to_scalar(const ActionContext& c, const RepF& m) {
  RepT<Scalar> out;
  for (const auto& mat : m.m) {
    Mat<Scalar> sm(mat.rows, mat.cols, Scalar::zero(c.field));
    for (size_t i = 0; i < mat.a.size(); ++i) sm.a[i] = Scalar::fp(c.field.p, mat.a[i].v);
    out.m.push_back(std::move(sm));
  }
  return out;
}

GaugeT<Scalar> gauge_to_scalar(const ActionContext& c, const GaugeF& g) {
  GaugeT<Scalar> out;
  for (const auto& mat : g.g) {
    Mat<Scalar> sm(mat.rows, mat.cols, Scalar::zero(c.field));
    for (size_t i = 0; i < mat.a.size(); ++i) sm.a[i] = Scalar::fp(c.field.p, mat.a[i].v);
    out.g.push_back(std::move(sm));
  }
  return out;
}

}  // namespace quivfix
