#include "quivfix/cohomology.hpp"

#include <algorithm>
#include <map>

namespace quivfix {

namespace {

std::vector<uint32_t> gauge_key(const GaugeF& g) {
  std::vector<uint32_t> key;
  for (const auto& m : g.g)
    for (const auto& e : m.a) key.push_back(e.v);
  return key;
}

std::vector<uint32_t> family_key(const std::vector<GaugeF>& u) {
  std::vector<uint32_t> key;
  for (const auto& g : u) {
    auto k = gauge_key(g);
    key.insert(key.end(), k.begin(), k.end());
  }
  return key;
}

Fp sign_act(int sign, Fp x) { return sign > 0 ? x : x.inv(); }

uint64_t pow_checked(uint64_t base, int e, uint64_t bound) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > bound / base) fail(Errc::TooLarge, "cochain space exceeds the bound");
    r *= base;
  }
  return r;
}

ModifyingFamily family_from_index(const ActionContext& ctx, const AutGroup& S,
                                  const std::vector<GaugeF>& gauge, uint64_t idx) {
  ModifyingFamily fam;
  fam.u.assign(size_t(S.size()), gauge_identity<Fp>(ctx));
  uint64_t rest = idx;
  for (int i = 0; i < S.size(); ++i) {
    if (i == S.group.id) continue;
    fam.u[size_t(i)] = gauge[size_t(rest % gauge.size())];
    rest /= gauge.size();
  }
  return fam;
}

}  // namespace

GaugeAction action_of(const TwistedAction& t) {
  GaugeAction a;
  a.ctx = t.ctx;
  a.grp = t.S.group;
  for (const auto& s : t.S.elements) a.delta_sign.push_back(sign(s));
  TwistedAction copy = t;
  a.apply = [copy](int i, const GaugeF& g) { return copy.apply_gauge(i, g); };
  return a;
}

GaugeAction trivial_gauge_action(const ActionContext& ctx, const FiniteGroup& grp) {
  GaugeAction a;
  a.ctx = ctx;
  a.grp = grp;
  a.delta_sign.assign(size_t(grp.n), 1);
  a.apply = [](int, const GaugeF& g) { return g; };
  return a;
}

bool is_modifying_family(const ActionContext& ctx, const AutGroup& S, const ModifyingFamily& u,
                         std::string* why) {
  auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (int(u.u.size()) != S.size()) return explain("family size differs from |Sigma|");
  if (!(u.u[size_t(S.group.id)] == gauge_identity<Fp>(ctx)))
    return explain("u at the identity must be 1");
  const int n = S.size();
  Cocycle2 cu = trivial_cocycle2(S.group, ctx.field.p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaugeF val = gauge_mul(u.u[size_t(i)], psi(ctx, S[i], u.u[size_t(j)]));
      val = gauge_mul(val, gauge_inverse(ctx, u.u[size_t(S.group.mul[size_t(i)][size_t(j)])]));
      auto t = delta_scalar_of(ctx, val);
      if (!t) return explain("c_u leaves Delta");
      cu.c[size_t(i)][size_t(j)] = *t;
    }
  std::vector<int> signs;
  for (const auto& s : S.elements) signs.push_back(sign(s));
  if (!cocycle2_identity_holds(S.group, signs, cu))
    return explain("c_u fails the 2-cocycle identity");
  return true;
}

Cocycle2 cocycle2_of(const ActionContext& ctx, const AutGroup& S, const ModifyingFamily& u) {
  const int n = S.size();
  Cocycle2 out = trivial_cocycle2(S.group, ctx.field.p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaugeF val = gauge_mul(u.u[size_t(i)], psi(ctx, S[i], u.u[size_t(j)]));
      val = gauge_mul(val, gauge_inverse(ctx, u.u[size_t(S.group.mul[size_t(i)][size_t(j)])]));
      auto t = delta_scalar_of(ctx, val);
      if (!t) fail(Errc::NotInDelta, "cocycle value leaves Delta");
      out.c[size_t(i)][size_t(j)] = *t;
    }
  return out;
}

bool cocycle2_identity_holds(const FiniteGroup& grp, const std::vector<int>& delta_sign,
                             const Cocycle2& c) {
  const int n = grp.n;
  for (int i = 0; i < n; ++i) {
    if (!c.c[size_t(grp.id)][size_t(i)].is_one() || !c.c[size_t(i)][size_t(grp.id)].is_one())
      return false;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Fp lhs =
            c.c[size_t(i)][size_t(j)].mul(c.c[size_t(grp.mul[size_t(i)][size_t(j)])][size_t(k)]);
        Fp rhs = sign_act(delta_sign[size_t(i)], c.c[size_t(j)][size_t(k)])
                     .mul(c.c[size_t(i)][size_t(grp.mul[size_t(j)][size_t(k)])]);
        if (lhs != rhs) return false;
      }
  }
  return true;
}

Cocycle2 trivial_cocycle2(const FiniteGroup& grp, uint32_t p) {
  Cocycle2 c;
  c.c.assign(size_t(grp.n), std::vector<Fp>(size_t(grp.n), Fp(1, p)));
  return c;
}

namespace {

std::vector<ModifyingFamily> scan_families(const ActionContext& ctx, const AutGroup& S,
                                           ExecPolicy policy, uint64_t bound) {
  if (!ctx.field.finite()) fail(Errc::InfiniteField, "family enumeration needs F_p");
  std::vector<GaugeF> gauge = enumerate_gauge(ctx);
  uint64_t total = pow_checked(gauge.size(), S.size() - 1, bound);

  std::vector<uint8_t> valid(size_t(total), 0);
  parallel_chunks(size_t(total), policy, [&](size_t lo, size_t hi) {
    for (size_t idx = lo; idx < hi; ++idx)
      if (is_modifying_family(ctx, S, family_from_index(ctx, S, gauge, idx))) valid[idx] = 1;
  });

  std::vector<ModifyingFamily> out;
  for (uint64_t idx = 0; idx < total; ++idx)
    if (valid[size_t(idx)]) out.push_back(family_from_index(ctx, S, gauge, idx));
  return out;
}

}  // namespace

std::vector<ModifyingFamily> enumerate_modifying_families(const ActionContext& ctx,
                                                          const AutGroup& S, ExecPolicy policy,
                                                          uint64_t bound) {
  return scan_families(ctx, S, policy, bound);
}

std::vector<ModifyingFamily> enumerate_modifying_families_serial(const ActionContext& ctx,
                                                                 const AutGroup& S,
                                                                 uint64_t bound) {
  return scan_families(ctx, S, ExecPolicy::Serial, bound);
}

int DeltaH1::class_of(const Cocycle1Delta& d) const {
  for (size_t i = 0; i < cocycles.size(); ++i)
    if (cocycles[i] == d) return class_of_cocycle[i];
  fail(Errc::CocycleMismatch, "not a 1-cocycle of this class set");
}

DeltaH1 h1_delta(const FiniteGroup& grp, const std::vector<int>& delta_sign, uint32_t p) {
  const int n = grp.n;
  DeltaH1 out;
  uint64_t total = pow_checked(p - 1, n - 1, 10000000ULL);
  for (uint64_t idx = 0; idx < total; ++idx) {
    Cocycle1Delta d;
    d.d.assign(size_t(n), Fp(1, p));
    uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      if (i == grp.id) continue;
      d.d[size_t(i)] = Fp(uint32_t(1 + rest % (p - 1)), p);
      rest /= (p - 1);
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (d.d[size_t(grp.mul[size_t(i)][size_t(j)])] !=
            d.d[size_t(i)].mul(sign_act(delta_sign[size_t(i)], d.d[size_t(j)])))
          ok = false;
    if (ok) out.cocycles.push_back(std::move(d));
  }

  std::vector<int> cls(out.cocycles.size(), -1);
  for (size_t i = 0; i < out.cocycles.size(); ++i) {
    if (cls[i] >= 0) continue;
    int id = int(out.reps.size());
    Cocycle1Delta best = out.cocycles[i];
    auto key = [](const Cocycle1Delta& c) {
      std::vector<uint32_t> k;
      for (const auto& x : c.d) k.push_back(x.v);
      return k;
    };
    for (uint32_t a = 1; a < p; ++a) {
      Cocycle1Delta shifted = out.cocycles[i];
      for (int g = 0; g < n; ++g)
        shifted.d[size_t(g)] =
            Fp(a, p).mul(out.cocycles[i].d[size_t(g)]).mul(sign_act(delta_sign[size_t(g)], Fp(a, p)).inv());
      for (size_t j = 0; j < out.cocycles.size(); ++j)
        if (out.cocycles[j] == shifted) cls[j] = id;
      if (key(shifted) < key(best)) best = shifted;
    }
    cls[i] = id;
    out.reps.push_back(best);
  }
  out.class_of_cocycle = cls;
  return out;
}

int DeltaH2::class_of(const Cocycle2& c) const {
  for (size_t i = 0; i < reps.size(); ++i)
    if (cohomologous(reps[i], c)) return int(i);
  fail(Errc::CocycleMismatch, "2-cocycle outside the class set");
}

DeltaH2 h2_delta(const FiniteGroup& grp, const std::vector<int>& delta_sign, uint32_t p,
                 bool closed_field) {
  const int n = grp.n;
  DeltaH2 out;
  out.closed_field = closed_field;

  auto coboundary_equivalent = [grp, delta_sign, p, n](const Cocycle2& x, const Cocycle2& y) {
    uint64_t total = pow_checked(p - 1, n - 1, 10000000ULL);
    for (uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Fp> a(size_t(n), Fp(1, p));
      uint64_t rest = idx;
      for (int i = 0; i < n; ++i) {
        if (i == grp.id) continue;
        a[size_t(i)] = Fp(uint32_t(1 + rest % (p - 1)), p);
        rest /= (p - 1);
      }
      bool match = true;
      for (int i = 0; i < n && match; ++i)
        for (int j = 0; j < n && match; ++j) {
          Fp boundary = sign_act(delta_sign[size_t(i)], a[size_t(j)])
                            .mul(a[size_t(grp.mul[size_t(i)][size_t(j)])].inv())
                            .mul(a[size_t(i)]);
          if (y.c[size_t(i)][size_t(j)] != x.c[size_t(i)][size_t(j)].mul(boundary)) match = false;
        }
      if (match) return true;
    }
    return false;
  };
  out.cohomologous = coboundary_equivalent;

  bool trivial_action = true;
  for (int s : delta_sign)
    if (s != 1) trivial_action = false;

  if (closed_field) {
    if (trivial_action && grp.is_cyclic()) {
      out.reps = {trivial_cocycle2(grp, p)};
      return out;
    }
    if (n == 2 && delta_sign[size_t(1 - grp.id)] == -1) {
      Cocycle2 minus = trivial_cocycle2(grp, p);
      int s = 1 - grp.id;
      minus.c[size_t(s)][size_t(s)] = Fp(p - 1, p);
      out.reps = {trivial_cocycle2(grp, p), minus};
      return out;
    }
    fail(Errc::Unsupported, "closed-field H^2 census needs a cyclic or involution action");
  }

  uint64_t cochains = 1;
  bool enumerable = true;
  for (int k = 0; k < (n - 1) * (n - 1); ++k) {
    cochains *= (p - 1);
    if (cochains > 2000000ULL) {
      enumerable = false;
      break;
    }
  }
  std::vector<Cocycle2> zsquare;
  if (enumerable) {
    for (uint64_t idx = 0; idx < cochains; ++idx) {
      Cocycle2 c = trivial_cocycle2(grp, p);
      uint64_t rest = idx;
      for (int i = 0; i < n; ++i) {
        if (i == grp.id) continue;
        for (int j = 0; j < n; ++j) {
          if (j == grp.id) continue;
          c.c[size_t(i)][size_t(j)] = Fp(uint32_t(1 + rest % (p - 1)), p);
          rest /= (p - 1);
        }
      }
      if (cocycle2_identity_holds(grp, delta_sign, c)) zsquare.push_back(std::move(c));
    }
  } else if (trivial_action && grp.is_cyclic()) {
    // Cyclic census: c(g^i, g^j) = z^[(i+j)/n] over power-class representatives z.
    int gen = -1;
    for (int g = 0; g < n; ++g)
      if (grp.order_of(g) == n) {
        gen = g;
        break;
      }
    std::vector<int> power_of(size_t(n), 0);
    int x = grp.id;
    for (int k = 0; k < n; ++k) {
      power_of[size_t(x)] = k;
      x = grp.mul[size_t(x)][size_t(gen)];
    }
    for (const Scalar& z : power_class_quotient(FieldSpec::fp(p), uint64_t(n))) {
      Cocycle2 c = trivial_cocycle2(grp, p);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          c.c[size_t(i)][size_t(j)] =
              Fp(z.residue(), p).pow(uint64_t((power_of[size_t(i)] + power_of[size_t(j)]) / n));
      zsquare.push_back(std::move(c));
    }
  } else {
    fail(Errc::TooLarge, "H^2 cochain space too large for brute force");
  }

  for (const auto& c : zsquare) {
    bool found = false;
    for (const auto& r : out.reps)
      if (coboundary_equivalent(r, c)) found = true;
    if (!found) out.reps.push_back(c);
  }
  return out;
}

namespace {

std::vector<uint32_t> twisted_canon_key(const GaugeAction& act, const std::vector<GaugeF>& gauge,
                                        const Cocycle1G& b) {
  std::vector<uint32_t> best;
  for (const auto& g : gauge) {
    GaugeF ginv = gauge_inverse(act.ctx, g);
    std::vector<uint32_t> key;
    for (int s = 0; s < act.grp.n; ++s) {
      GaugeF moved = gauge_mul(g, gauge_mul(b.b[size_t(s)], act.apply(s, ginv)));
      auto k = gauge_key(moved);
      key.insert(key.end(), k.begin(), k.end());
    }
    if (best.empty() || key < best) best = key;
  }
  return best;
}

}  // namespace

int TwistedH1::class_of(const GaugeAction& act, const Cocycle1G& b) const {
  auto key = twisted_canon_key(act, enumerate_gauge(act.ctx), b);
  for (size_t i = 0; i < canon.size(); ++i)
    if (canon[i] == key) return int(i);
  fail(Errc::CocycleMismatch, "cocycle outside the class set");
}

TwistedH1 h1_twisted_G(const GaugeAction& act, uint64_t bound) {
  const int n = act.grp.n;
  std::vector<GaugeF> gauge = enumerate_gauge(act.ctx);
  uint64_t total = pow_checked(gauge.size(), n - 1, bound);
  TwistedH1 out;
  for (uint64_t idx = 0; idx < total; ++idx) {
    Cocycle1G b;
    b.b.assign(size_t(n), gauge_identity<Fp>(act.ctx));
    uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      if (i == act.grp.id) continue;
      b.b[size_t(i)] = gauge[size_t(rest % gauge.size())];
      rest /= gauge.size();
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        GaugeF rhs = gauge_mul(b.b[size_t(i)], act.apply(i, b.b[size_t(j)]));
        if (!(b.b[size_t(act.grp.mul[size_t(i)][size_t(j)])] == rhs)) ok = false;
      }
    if (ok) out.cocycles.push_back(std::move(b));
  }

  std::map<std::vector<uint32_t>, std::vector<size_t>> buckets;
  std::vector<std::vector<uint32_t>> canon_of(out.cocycles.size());
  for (size_t i = 0; i < out.cocycles.size(); ++i) {
    canon_of[i] = twisted_canon_key(act, gauge, out.cocycles[i]);
    buckets[canon_of[i]].push_back(i);
  }
  out.class_of_cocycle.assign(out.cocycles.size(), -1);
  for (const auto& [key, members] : buckets) {
    int id = int(out.reps.size());
    size_t best_member = members[0];
    std::vector<uint32_t> best_raw = family_key(out.cocycles[members[0]].b);
    for (size_t m : members) {
      auto raw = family_key(out.cocycles[m].b);
      if (raw < best_raw) {
        best_raw = raw;
        best_member = m;
      }
      out.class_of_cocycle[m] = id;
    }
    out.reps.push_back(out.cocycles[best_member]);
    out.canon.push_back(key);
  }
  return out;
}

std::vector<int> kernel_to_G(const GaugeAction& act, const DeltaH1& h1) {
  std::vector<GaugeF> gauge = enumerate_gauge(act.ctx);
  std::vector<int> kernel;
  for (size_t cls = 0; cls < h1.reps.size(); ++cls) {
    const Cocycle1Delta& d = h1.reps[cls];
    bool splits = false;
    for (const auto& g : gauge) {
      GaugeF ginv = gauge_inverse(act.ctx, g);
      bool all = true;
      for (int i = 0; i < act.grp.n && all; ++i)
        if (!(delta_embed(act.ctx, d.d[size_t(i)]) == gauge_mul(g, act.apply(i, ginv)))) all = false;
      if (all) {
        splits = true;
        break;
      }
    }
    if (splits) kernel.push_back(int(cls));
  }
  return kernel;
}

ModifyingFamily twist_by_cocycle(const ActionContext& ctx, const AutGroup& S,
                                 const ModifyingFamily& u, const Cocycle1G& b) {
  ModifyingFamily out;
  for (int i = 0; i < S.size(); ++i) out.u.push_back(gauge_mul(b.b[size_t(i)], u.u[size_t(i)]));
  std::string why;
  if (!is_modifying_family(ctx, S, out, &why)) fail(Errc::NotAModifyingFamily, why);
  return out;
}

Cocycle1G cocycle_between(const ActionContext& ctx, const AutGroup& S, const ModifyingFamily& u,
                          const ModifyingFamily& uprime) {
  if (!(cocycle2_of(ctx, S, u) == cocycle2_of(ctx, S, uprime)))
    fail(Errc::CocycleMismatch, "the two families have different 2-cocycles");
  Cocycle1G b;
  for (int i = 0; i < S.size(); ++i)
    b.b.push_back(gauge_mul(uprime.u[size_t(i)], gauge_inverse(ctx, u.u[size_t(i)])));
  return b;
}

std::optional<ModifyingFamily> normalize_family(const ActionContext& ctx, const AutGroup& S,
                                                const ModifyingFamily& u, const Cocycle2& target) {
  const uint32_t p = ctx.field.p;
  const int n = S.size();
  Cocycle2 cu = cocycle2_of(ctx, S, u);
  std::vector<int> signs;
  for (const auto& s : S.elements) signs.push_back(sign(s));
  uint64_t total = pow_checked(p - 1, n - 1, 10000000ULL);
  for (uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Fp> a(size_t(n), Fp(1, p));
    uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      if (i == S.group.id) continue;
      a[size_t(i)] = Fp(uint32_t(1 + rest % (p - 1)), p);
      rest /= (p - 1);
    }
    bool match = true;
    for (int i = 0; i < n && match; ++i)
      for (int j = 0; j < n && match; ++j) {
        Fp boundary = sign_act(signs[size_t(i)], a[size_t(j)])
                          .mul(a[size_t(S.group.mul[size_t(i)][size_t(j)])].inv())
                          .mul(a[size_t(i)]);
        if (target.c[size_t(i)][size_t(j)] != cu.c[size_t(i)][size_t(j)].mul(boundary))
          match = false;
      }
    if (!match) continue;
    ModifyingFamily out;
    for (int i = 0; i < n; ++i)
      out.u.push_back(gauge_mul(delta_embed(ctx, a[size_t(i)]), u.u[size_t(i)]));
    return out;
  }
  return std::nullopt;
}

TypeMapResult type_map(const ActionContext& ctx, const AutGroup& S, const RepF& orbit_rep,
                       const std::vector<GaugeF>& gauge) {
  TypeMapResult out;
  out.witnesses.u.assign(size_t(S.size()), gauge_identity<Fp>(ctx));
  for (int i = 0; i < S.size(); ++i) {
    if (i == S.group.id) continue;
    RepF moved = phi(ctx, S[i], orbit_rep);
    bool found = false;
    for (const auto& g : gauge)
      if (act(ctx, g, moved) == orbit_rep) {
        out.witnesses.u[size_t(i)] = g;
        found = true;
        break;
      }
    if (!found) fail(Errc::NotFixed, "orbit is not fixed by group element " + std::to_string(i));
  }
  const int n = S.size();
  out.cocycle = trivial_cocycle2(S.group, ctx.field.p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaugeF val =
          gauge_mul(out.witnesses.u[size_t(i)], psi(ctx, S[i], out.witnesses.u[size_t(j)]));
      val = gauge_mul(val,
                      gauge_inverse(ctx, out.witnesses.u[size_t(S.group.mul[size_t(i)][size_t(j)])]));
      auto t = delta_scalar_of(ctx, val);
      if (!t)
        fail(Errc::NotRegularlyStable, "type cocycle leaves Delta; orbit is not regularly stable");
      out.cocycle.c[size_t(i)][size_t(j)] = *t;
    }
  return out;
}

std::optional<GeomH2> geometric_h2(const AutGroup& S, uint32_t p) {
  GeomH2 out;
  if (S.all_covariant() && S.group.is_cyclic()) {
    out.classes = 1;
    out.labels = {"trivial"};
    out.class_of = [](const Cocycle2&) { return 0; };
    return out;
  }
  if (S.size() == 2 && !S[1 - S.group.id].covariant()) {
    out.classes = 2;
    out.labels = {"+1", "-1"};
    int s = 1 - S.group.id;
    uint32_t minus_one = p - 1;
    out.class_of = [s, minus_one](const Cocycle2& c) {
      return c.c[size_t(s)][size_t(s)].v == minus_one ? 1 : 0;
    };
    return out;
  }
  return std::nullopt;
}

EquivariantStructure equivariant_structure(const TwistedAction& t, const RepF& fixed_point) {
  for (int i = 0; i < t.S.size(); ++i)
    if (!(t.apply_rep(i, fixed_point) == fixed_point))
      fail(Errc::NotFixed, "point is not fixed by the twisted action");
  EquivariantStructure out;
  out.gamma = t.u;
  ModifyingFamily fam{t.u};
  out.relation_cocycle = cocycle2_of(t.ctx, t.S, fam);
  for (int i = 0; i < t.S.size(); ++i)
    for (int j = 0; j < t.S.size(); ++j) {
      GaugeF lhs = gauge_mul(out.gamma[size_t(i)], psi(t.ctx, t.S[i], out.gamma[size_t(j)]));
      GaugeF rhs = gauge_mul(delta_embed(t.ctx, out.relation_cocycle.c[size_t(i)][size_t(j)]),
                             out.gamma[size_t(t.S.group.mul[size_t(i)][size_t(j)])]);
      if (!(lhs == rhs)) fail(Errc::RelationFailure, "twisted equivariance relation failed");
    }
  return out;
}

}  // namespace quivfix
