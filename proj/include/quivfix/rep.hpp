#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "quivfix/aut.hpp"
#include "quivfix/fp.hpp"
#include "quivfix/matrix.hpp"
#include "quivfix/quiver.hpp"

namespace quivfix {

template <class K>
struct FieldOps;

template <>
struct FieldOps<Fp> {
  static Fp zero(const FieldSpec& f) { return Fp(0, f.p); }
  static Fp one(const FieldSpec& f) { return Fp(1, f.p); }
};

template <>
struct FieldOps<Scalar> {
  static Scalar zero(const FieldSpec& f) { return Scalar::zero(f); }
  static Scalar one(const FieldSpec& f) { return Scalar::one(f); }
};

/// A representation point: one d_head x d_tail matrix per arrow.
template <class K>
struct RepT {
  std::vector<Mat<K>> m;
  bool operator==(const RepT&) const = default;
};

/// A gauge element: one invertible d_v x d_v matrix per vertex. In
/// subgroup-action mode the entries at non-acting vertices stay identity.
template <class K>
struct GaugeT {
  std::vector<Mat<K>> g;
  bool operator==(const GaugeT&) const = default;
};

using RepF = RepT<Fp>;
using GaugeF = GaugeT<Fp>;

/// Everything needed to interpret representation points: the quiver, the
/// dimension vector, the ground field and, optionally, a restriction of
/// the acting gauge group to a subset of vertices.
struct ActionContext {
  Quiver q;
  DimVector d;
  FieldSpec field;
  std::vector<char> acting;  // per-vertex; empty means "all vertices act"

  bool vertex_acts(int v) const { return acting.empty() || acting[size_t(v)] != 0; }
  int dim_at(int v) const { return int(d[size_t(v)]); }
  int rep_entries() const;

  static ActionContext make(Quiver q, DimVector d, FieldSpec f,
                            std::vector<char> acting = {});
};

template <class K>
RepT<K> rep_zero(const ActionContext& c) {
  K z = FieldOps<K>::zero(c.field);
  RepT<K> r;
  for (const auto& a : c.q.arrows) r.m.push_back(Mat<K>(c.dim_at(a.head), c.dim_at(a.tail), z));
  return r;
}

template <class K>
GaugeT<K> gauge_identity(const ActionContext& c) {
  K one = FieldOps<K>::one(c.field);
  GaugeT<K> g;
  for (int v = 0; v < c.q.num_vertices(); ++v) g.g.push_back(Mat<K>::identity(c.dim_at(v), one));
  return g;
}

template <class K>
void check_rep_shape(const ActionContext& c, const RepT<K>& m) {
  if (int(m.m.size()) != c.q.num_arrows()) fail(Errc::ShapeMismatch, "arrow count");
  for (int a = 0; a < c.q.num_arrows(); ++a)
    if (m.m[size_t(a)].rows != c.dim_at(c.q.arrows[size_t(a)].head) ||
        m.m[size_t(a)].cols != c.dim_at(c.q.arrows[size_t(a)].tail))
      fail(Errc::ShapeMismatch, "matrix shape at arrow " + c.q.arrows[size_t(a)].name);
}

template <class K>
GaugeT<K> gauge_inverse(const ActionContext& c, const GaugeT<K>& g) {
  GaugeT<K> r;
  for (const auto& gv : g.g) {
    auto inv = mat_inverse(gv, FieldOps<K>::zero(c.field), FieldOps<K>::one(c.field));
    if (!inv) fail(Errc::ShapeMismatch, "gauge block is singular");
    r.g.push_back(std::move(*inv));
  }
  return r;
}

template <class K>
GaugeT<K> gauge_mul(const GaugeT<K>& x, const GaugeT<K>& y) {
  GaugeT<K> r;
  for (size_t v = 0; v < x.g.size(); ++v) r.g.push_back(mat_mul(x.g[v], y.g[v]));
  return r;
}

/// g . M = (g_{h(a)} M_a g_{t(a)}^{-1})_a, the conjugation action.
template <class K>
RepT<K> act(const ActionContext& c, const GaugeT<K>& g, const RepT<K>& m) {
  GaugeT<K> ginv = gauge_inverse(c, g);
  RepT<K> r;
  for (int a = 0; a < c.q.num_arrows(); ++a) {
    const Arrow& ar = c.q.arrows[size_t(a)];
    r.m.push_back(mat_mul(g.g[size_t(ar.head)], mat_mul(m.m[size_t(a)], ginv.g[size_t(ar.tail)])));
  }
  return r;
}

/// Phi_s: reindex by the arrow map; contravariant automorphisms also
/// transpose. Requires an s-compatible dimension vector.
template <class K>
RepT<K> phi(const ActionContext& c, const QuiverAut& s, const RepT<K>& m) {
  for (int v = 0; v < c.q.num_vertices(); ++v)
    if (c.d[size_t(s.vmap[size_t(v)])] != c.d[size_t(v)])
      fail(Errc::IncompatibleDim, "dimension vector is not sigma-compatible");
  RepT<K> r;
  for (int a = 0; a < c.q.num_arrows(); ++a) {
    const Mat<K>& src = m.m[size_t(s.amap[size_t(a)])];
    r.m.push_back(s.covariant() ? src : src.transpose());
  }
  return r;
}

/// Psi_s: reindex by the vertex map; contravariant automorphisms send a
/// block to its inverse transpose.
template <class K>
GaugeT<K> psi(const ActionContext& c, const QuiverAut& s, const GaugeT<K>& g) {
  GaugeT<K> r;
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    const Mat<K>& src = g.g[size_t(s.vmap[size_t(v)])];
    if (s.covariant()) {
      r.g.push_back(src);
    } else {
      auto inv = mat_inverse(src, FieldOps<K>::zero(c.field), FieldOps<K>::one(c.field));
      if (!inv) fail(Errc::ShapeMismatch, "singular gauge block");
      r.g.push_back(inv->transpose());
    }
  }
  return r;
}

/// Induced map on the Lie algebra: reindex, with an extra -transpose for
/// contravariant automorphisms.
template <class K>
GaugeT<K> lie_psi(const ActionContext& c, const QuiverAut& s, const GaugeT<K>& b) {
  GaugeT<K> r;
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    const Mat<K>& src = b.g[size_t(s.vmap[size_t(v)])];
    r.g.push_back(s.covariant() ? src : mat_neg(src.transpose()));
  }
  return r;
}

/// The central subgroup Delta of the acting gauge group: scalar tuples
/// t*Id that act trivially on every representation point. In subgroup
/// mode an arrow joining an acting to a non-acting vertex forces t = 1.
bool delta_is_full_scalar_group(const ActionContext& c);

template <class K>
GaugeT<K> delta_embed(const ActionContext& c, const K& t) {
  GaugeT<K> g = gauge_identity<K>(c);
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    if (!c.vertex_acts(v)) continue;
    for (int i = 0; i < c.dim_at(v); ++i) g.g[size_t(v)].at(i, i) = t;
  }
  return g;
}

/// If g lies in Delta, returns its scalar.
template <class K>
std::optional<K> delta_scalar_of(const ActionContext& c, const GaugeT<K>& g) {
  std::optional<K> t;
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    if (c.dim_at(v) == 0) continue;
    if (!c.vertex_acts(v)) {
      if (!g.g[size_t(v)].is_identity()) return std::nullopt;
      continue;
    }
    K s = FieldOps<K>::zero(c.field);
    if (!g.g[size_t(v)].is_scalar(&s)) return std::nullopt;
    if (t && !(*t == s)) return std::nullopt;
    t = s;
  }
  if (!t) t = FieldOps<K>::one(c.field);
  if (!delta_is_full_scalar_group(c) && !t->is_one()) return std::nullopt;
  return t;
}

/// chi_theta(g) = prod_v det(g_v)^{-theta'_v}.
Scalar chi_theta(const ActionContext& c, const std::vector<int64_t>& theta_pr,
                 const GaugeT<Scalar>& g);
Scalar chi_theta_fp(const ActionContext& c, const std::vector<int64_t>& theta_pr,
                    const GaugeF& g);

/// A finite group of quiver automorphisms together with a modifying
/// family: the twisted actions Phi^u = u_s . Phi_s and Psi^u = Ad_{u_s} Psi_s.
template <class K>
struct TwistedActionT {
  ActionContext ctx;
  AutGroup S;
  std::vector<GaugeT<K>> u;  // indexed like S.elements; u[identity] = 1

  RepT<K> apply_rep(int i, const RepT<K>& m) const {
    return act(ctx, u[size_t(i)], phi(ctx, S[i], m));
  }
  GaugeT<K> apply_gauge(int i, const GaugeT<K>& g) const {
    GaugeT<K> conj = psi(ctx, S[i], g);
    GaugeT<K> ui_inv = gauge_inverse(ctx, u[size_t(i)]);
    return gauge_mul(u[size_t(i)], gauge_mul(conj, ui_inv));
  }
};

using TwistedAction = TwistedActionT<Fp>;

/// Untwisted action (u = 1 everywhere).
template <class K>
TwistedActionT<K> plain_action(const ActionContext& c, const AutGroup& S) {
  TwistedActionT<K> t{c, S, {}};
  for (int i = 0; i < S.size(); ++i) t.u.push_back(gauge_identity<K>(c));
  return t;
}

/// Basis of the subspace { M : M = u_s . Phi_s(M) for all s in S }.
template <class K>
std::vector<RepT<K>> fixed_rep_space(const TwistedActionT<K>& t);

/// All F_p points of the fixed subspace, in deterministic order.
std::vector<RepF> enumerate_fixed_reps(const TwistedAction& t);

/// Layout of Rep(F_p) as a mixed-radix integer range.
struct RepIndexer {
  ActionContext ctx;
  uint64_t count = 1;

  explicit RepIndexer(const ActionContext& c, uint64_t bound = 100000000ULL);
  RepF decode(uint64_t index) const;
  uint64_t encode(const RepF& m) const;
};

std::vector<uint32_t> rep_key(const RepF& m);

/// All elements of the acting gauge group over F_p, lexicographic in the
/// flattened entries; fails above `bound` elements.
std::vector<GaugeF> enumerate_gauge(const ActionContext& c, uint64_t bound = 1000000ULL);
uint64_t gauge_count(const ActionContext& c);

struct FixedGaugeReport {
  std::vector<GaugeF> elements;
  uint64_t order = 0;
};

/// The subgroup { g : Psi^u_s(g) = g for all s }.
FixedGaugeReport fixed_gauge(const TwistedAction& t, uint64_t bound = 1000000ULL);

/// dim Hom(M, M) as a quiver representation: solution space of
/// g_{h(a)} M_a = M_a g_{t(a)} over unconstrained square matrices.
int endo_dim(const ActionContext& c, const RepF& m);
int endo_dim(const ActionContext& c, const RepT<Scalar>& m);

uint64_t stabilizer_order(const ActionContext& c, const std::vector<GaugeF>& gauge,
                          const RepF& m);

/// The reindexing isomorphisms between data on Q/S and S-fixed data on Q.
struct QuotientTransport {
  ActionContext quotient_ctx;  // on Q/S
  ActionContext total_ctx;     // on Q
  QuotientQuiver proj;
};

QuotientTransport make_transport(const ActionContext& total, const AutGroup& S);

template <class K>
GaugeT<K> alpha_map(const QuotientTransport& t, const GaugeT<K>& h) {
  GaugeT<K> g;
  for (int v = 0; v < t.total_ctx.q.num_vertices(); ++v)
    g.g.push_back(h.g[size_t(t.proj.vertex_proj[size_t(v)])]);
  return g;
}

template <class K>
RepT<K> beta_map(const QuotientTransport& t, const RepT<K>& n) {
  RepT<K> m;
  for (int a = 0; a < t.total_ctx.q.num_arrows(); ++a)
    m.m.push_back(n.m[size_t(t.proj.arrow_proj[size_t(a)])]);
  return m;
}

template <class K>
RepT<K> beta_inverse(const QuotientTransport& t, const RepT<K>& m) {
  RepT<K> n;
  n.m.resize(t.quotient_ctx.q.arrows.size());
  for (int a = t.total_ctx.q.num_arrows() - 1; a >= 0; --a)
    n.m[size_t(t.proj.arrow_proj[size_t(a)])] = m.m[size_t(a)];
  return n;
}

RepT<Scalar> rep_to_scalar(const ActionContext& c, const RepF& m);
GaugeT<Scalar> gauge_to_scalar(const ActionContext& c, const GaugeF& g);

}  // namespace quivfix
