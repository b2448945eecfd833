#include "quivfix/stability.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace quivfix {

namespace {

// Row w -> w * M^T is the image of the row vector under M.
Mat<Fp> push_rows(const Mat<Fp>& rows, const Mat<Fp>& m) {
  return mat_mul(rows, m.transpose());
}

bool rows_contained(const Mat<Fp>& sub, const Mat<Fp>& space) {
  // span(sub) subset of span(space), both as row spans.
  if (sub.rows == 0) return true;
  Mat<Fp> stacked(space.rows + sub.rows, space.cols, Fp(0, sub.a.empty() ? 2 : sub.a[0].p));
  for (int i = 0; i < space.rows; ++i)
    for (int j = 0; j < space.cols; ++j) stacked.at(i, j) = space.at(i, j);
  for (int i = 0; i < sub.rows; ++i)
    for (int j = 0; j < sub.cols; ++j) stacked.at(space.rows + i, j) = sub.at(i, j);
  Mat<Fp> sp = space;
  return mat_rank(std::move(stacked)) == mat_rank(std::move(sp));
}

bool same_row_span(const Mat<Fp>& a, const Mat<Fp>& b) {
  Mat<Fp> x = a, y = b;
  if (mat_rank(std::move(x)) != mat_rank(std::move(y))) return false;
  return rows_contained(a, b);
}

int64_t total_dim(const DimVector& d) { return std::accumulate(d.begin(), d.end(), int64_t(0)); }

// mu(e) > mu(f) by cross multiplication (denominators positive).
bool slope_greater(const StabilityParam& theta, const DimVector& e, const DimVector& f) {
  int64_t ne = 0, nf = 0;
  for (size_t v = 0; v < theta.size(); ++v) {
    ne += theta[v] * e[v];
    nf += theta[v] * f[v];
  }
  return ne * total_dim(f) > nf * total_dim(e);
}

bool slope_equal(const StabilityParam& theta, const DimVector& e, const DimVector& f) {
  int64_t ne = 0, nf = 0;
  for (size_t v = 0; v < theta.size(); ++v) {
    ne += theta[v] * e[v];
    nf += theta[v] * f[v];
  }
  return ne * total_dim(f) == nf * total_dim(e);
}

}  // namespace

const std::vector<Mat<Fp>>& subspaces_of(uint32_t p, int d) {
  static std::map<std::pair<uint32_t, int>, std::vector<Mat<Fp>>> cache;
  auto it = cache.find({p, d});
  if (it != cache.end()) return it->second;

  std::vector<Mat<Fp>> out;
  out.push_back(Mat<Fp>(0, d, Fp(0, p)));  // the zero subspace
  // Row-echelon bases: choose pivot columns, then free entries to the right
  // of each pivot and off the pivot columns.
  for (int r = 1; r <= d; ++r) {
    std::vector<int> pivots(static_cast<size_t>(r));
    std::iota(pivots.begin(), pivots.end(), 0);
    while (true) {
      std::vector<std::pair<int, int>> free_slots;
      for (int i = 0; i < r; ++i)
        for (int j = pivots[size_t(i)] + 1; j < d; ++j) {
          bool is_pivot_col = false;
          for (int k = 0; k < r; ++k)
            if (pivots[size_t(k)] == j) is_pivot_col = true;
          if (!is_pivot_col) free_slots.push_back({i, j});
        }
      uint64_t combos = 1;
      for (size_t k = 0; k < free_slots.size(); ++k) combos *= p;
      for (uint64_t idx = 0; idx < combos; ++idx) {
        Mat<Fp> b(r, d, Fp(0, p));
        for (int i = 0; i < r; ++i) b.at(i, pivots[size_t(i)]) = Fp(1, p);
        uint64_t rest = idx;
        for (auto [i, j] : free_slots) {
          b.at(i, j) = Fp(uint32_t(rest % p), p);
          rest /= p;
        }
        out.push_back(std::move(b));
      }
      // next pivot combination
      int k = r - 1;
      while (k >= 0 && pivots[size_t(k)] == d - r + k) --k;
      if (k < 0) break;
      ++pivots[size_t(k)];
      for (int i = k + 1; i < r; ++i) pivots[size_t(i)] = pivots[size_t(i - 1)] + 1;
    }
  }
  return cache[{p, d}] = std::move(out);
}

std::vector<Subrep> subreps(const ActionContext& c, const RepF& m) {
  const uint32_t p = c.field.p;
  uint64_t combos = 1;
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    combos *= subspaces_of(p, c.dim_at(v)).size();
    if (combos > 1000000ULL) fail(Errc::TooLarge, "subspace tuple count exceeds 10^6");
  }
  std::vector<Subrep> out;
  std::vector<size_t> odo(size_t(c.q.num_vertices()), 0);
  while (true) {
    Subrep s;
    s.dims.assign(size_t(c.q.num_vertices()), 0);
    for (int v = 0; v < c.q.num_vertices(); ++v) {
      s.basis.push_back(subspaces_of(p, c.dim_at(v))[odo[size_t(v)]]);
      s.dims[size_t(v)] = s.basis.back().rows;
    }
    bool invariant = true;
    for (int a = 0; a < c.q.num_arrows() && invariant; ++a) {
      const Arrow& ar = c.q.arrows[size_t(a)];
      Mat<Fp> image = push_rows(s.basis[size_t(ar.tail)], m.m[size_t(a)]);
      if (!rows_contained(image, s.basis[size_t(ar.head)])) invariant = false;
    }
    if (invariant) out.push_back(std::move(s));
    int v = c.q.num_vertices() - 1;
    while (v >= 0) {
      if (++odo[size_t(v)] < subspaces_of(p, c.dim_at(v)).size()) break;
      odo[size_t(v)] = 0;
      --v;
    }
    if (v < 0) break;
  }
  return out;
}

namespace {

bool nonzero_dims(const DimVector& d) {
  for (auto x : d)
    if (x > 0) return true;
  return false;
}

bool proper_dims(const DimVector& sub, const DimVector& whole) {
  for (size_t v = 0; v < sub.size(); ++v)
    if (sub[v] < whole[v]) return true;
  return false;
}

enum class StabClass { unstable, strictly_semistable, stable };

StabClass classify_one(const ActionContext& c, const StabilityParam& theta, const RepF& m) {
  bool strict_ok = true;
  for (const Subrep& s : subreps(c, m)) {
    if (!nonzero_dims(s.dims) || !proper_dims(s.dims, c.d)) continue;
    if (slope_greater(theta, s.dims, c.d)) return StabClass::unstable;
    if (slope_equal(theta, s.dims, c.d)) strict_ok = false;
  }
  return strict_ok ? StabClass::stable : StabClass::strictly_semistable;
}

}  // namespace

bool is_semistable(const ActionContext& c, const StabilityParam& theta, const RepF& m) {
  return classify_one(c, theta, m) != StabClass::unstable;
}

bool is_stable(const ActionContext& c, const StabilityParam& theta, const RepF& m) {
  return classify_one(c, theta, m) == StabClass::stable;
}

Subrep scss(const ActionContext& c, const StabilityParam& theta, const RepF& m) {
  if (is_semistable(c, theta, m)) fail(Errc::IsSemistable, "scss of a semistable point");
  std::vector<Subrep> all = subreps(c, m);
  const Subrep* best = nullptr;
  int ties = 0;
  for (const Subrep& s : all) {
    if (!nonzero_dims(s.dims)) continue;
    if (!best) {
      best = &s;
      ties = 1;
      continue;
    }
    if (slope_greater(theta, s.dims, best->dims)) {
      best = &s;
      ties = 1;
    } else if (slope_equal(theta, s.dims, best->dims)) {
      if (total_dim(s.dims) > total_dim(best->dims)) {
        best = &s;
        ties = 1;
      } else if (total_dim(s.dims) == total_dim(best->dims)) {
        ++ties;
      }
    }
  }
  if (!best) fail(Errc::IsSemistable, "no nonzero subrepresentation");
  if (ties != 1) fail(Errc::TieBreakViolation, "scss maximizer is not unique");
  return *best;
}

namespace {

// Extend the subrep rows to a full basis with standard vectors on the
// non-pivot columns; returns (P, r) with rows 0..r-1 spanning the subrep.
std::pair<Mat<Fp>, int> completion(const Mat<Fp>& rows, int d, uint32_t p) {
  Mat<Fp> b = rows;
  std::vector<int> pivots = rref(b);
  std::vector<char> is_pivot(size_t(d), 0);
  for (int c : pivots) is_pivot[size_t(c)] = 1;
  Mat<Fp> P(d, d, Fp(0, p));
  for (int i = 0; i < int(pivots.size()); ++i)
    for (int j = 0; j < d; ++j) P.at(i, j) = b.at(i, j);
  int row = int(pivots.size());
  for (int j = 0; j < d; ++j) {
    if (is_pivot[size_t(j)]) continue;
    P.at(row, j) = Fp(1, p);
    ++row;
  }
  return {P, int(pivots.size())};
}

}  // namespace

std::vector<Subrep> hn_filtration(const ActionContext& c, const StabilityParam& theta,
                                  const RepF& m) {
  const uint32_t p = c.field.p;
  std::vector<Subrep> chain;
  Subrep full;
  full.dims = c.d;
  for (int v = 0; v < c.q.num_vertices(); ++v)
    full.basis.push_back(Mat<Fp>::identity(c.dim_at(v), Fp(1, p)));

  if (is_semistable(c, theta, m)) return {full};

  Subrep u = scss(c, theta, m);
  chain.push_back(u);
  // Change coordinates so u becomes the span of the leading coordinates,
  // recurse on the quotient block, then pull the quotient chain back.
  std::vector<Mat<Fp>> P, Pinv;
  std::vector<int> r;
  for (int v = 0; v < c.q.num_vertices(); ++v) {
    auto [pv, rv] = completion(u.basis[size_t(v)], c.dim_at(v), p);
    auto inv = mat_inverse(pv, Fp(0, p), Fp(1, p));
    P.push_back(pv);
    Pinv.push_back(*inv);
    r.push_back(rv);
  }
  DimVector qd(c.d.size());
  for (size_t v = 0; v < c.d.size(); ++v) qd[v] = c.d[v] - r[v];
  ActionContext qctx = ActionContext::make(c.q, qd, c.field, c.acting);
  RepF qm = rep_zero<Fp>(qctx);
  for (int a = 0; a < c.q.num_arrows(); ++a) {
    const Arrow& ar = c.q.arrows[size_t(a)];
    // Rows of P are the new basis, so coordinates transform by (P^T)^{-1};
    // the matrix in new coordinates is (P_h^T)^{-1} M (P_t^T), and the
    // quotient block is its bottom-right corner.
    Mat<Fp> nm = mat_mul(Pinv[size_t(ar.head)].transpose(),
                         mat_mul(m.m[size_t(a)], P[size_t(ar.tail)].transpose()));
    for (int i = 0; i < qctx.dim_at(ar.head); ++i)
      for (int j = 0; j < qctx.dim_at(ar.tail); ++j)
        qm.m[size_t(a)].at(i, j) = nm.at(r[size_t(ar.head)] + i, r[size_t(ar.tail)] + j);
  }
  std::vector<Subrep> qchain = hn_filtration(qctx, theta, qm);
  for (const Subrep& qs : qchain) {
    Subrep lifted;
    lifted.dims.assign(c.d.size(), 0);
    for (int v = 0; v < c.q.num_vertices(); ++v) {
      // Preimage rows: the subrep rows plus the quotient rows written in the
      // bottom part of the new coordinates, mapped back by P.
      int extra = qs.basis[size_t(v)].rows;
      Mat<Fp> rows(r[size_t(v)] + extra, c.dim_at(v), Fp(0, p));
      for (int i = 0; i < r[size_t(v)]; ++i)
        for (int j = 0; j < c.dim_at(v); ++j) rows.at(i, j) = P[size_t(v)].at(i, j);
      for (int i = 0; i < extra; ++i)
        for (int j = 0; j < c.dim_at(v); ++j) {
          Fp acc(0, p);
          for (int k = 0; k < qctx.dim_at(v); ++k)
            acc = acc.add(qs.basis[size_t(v)].at(i, k).mul(P[size_t(v)].at(r[size_t(v)] + k, j)));
          rows.at(r[size_t(v)] + i, j) = acc;
        }
      rref(rows);
      // Drop zero rows after reduction.
      int nz = 0;
      for (int i = 0; i < rows.rows; ++i) {
        bool zero = true;
        for (int j = 0; j < rows.cols; ++j)
          if (!rows.at(i, j).is_zero()) zero = false;
        if (!zero) ++nz;
      }
      Mat<Fp> cleaned(nz, c.dim_at(v), Fp(0, p));
      int w = 0;
      for (int i = 0; i < rows.rows; ++i) {
        bool zero = true;
        for (int j = 0; j < rows.cols; ++j)
          if (!rows.at(i, j).is_zero()) zero = false;
        if (!zero) {
          for (int j = 0; j < rows.cols; ++j) cleaned.at(w, j) = rows.at(i, j);
          ++w;
        }
      }
      lifted.basis.push_back(cleaned);
      lifted.dims[size_t(v)] = nz;
    }
    chain.push_back(std::move(lifted));
  }
  return chain;
}

bool equivariant_semistable(const TwistedAction& t, const StabilityParam& theta, const RepF& m) {
  if (!t.S.all_covariant())
    fail(Errc::ContravariantElement, "equivariant slope test needs a covariant group");
  const ActionContext& c = t.ctx;
  for (const Subrep& s : subreps(c, m)) {
    if (!nonzero_dims(s.dims) || !proper_dims(s.dims, c.d)) continue;
    bool invariant = true;
    for (int i = 0; i < t.S.size() && invariant; ++i) {
      if (i == t.S.group.id) continue;
      const QuiverAut& sig = t.S[i];
      for (int v = 0; v < c.q.num_vertices() && invariant; ++v) {
        // gamma_sigma maps the subspace at sigma(v) onto the one at v.
        Mat<Fp> moved = push_rows(s.basis[size_t(sig.vmap[size_t(v)])], t.u[size_t(i)].g[size_t(v)]);
        if (!same_row_span(moved, s.basis[size_t(v)])) invariant = false;
      }
    }
    if (invariant && slope_greater(theta, s.dims, c.d)) return false;
  }
  return true;
}

namespace {

std::vector<uint8_t> classify_impl(const ActionContext& c, const StabilityParam& theta,
                                   ExecPolicy policy) {
  RepIndexer idx(c);
  std::vector<uint8_t> flags(size_t(idx.count), 0);
  parallel_chunks(size_t(idx.count), policy, [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      switch (classify_one(c, theta, idx.decode(i))) {
        case StabClass::unstable: break;
        case StabClass::strictly_semistable: flags[i] = 1; break;
        case StabClass::stable: flags[i] = 3; break;
      }
    }
  });
  return flags;
}

}  // namespace

std::vector<uint8_t> classify_points(const ActionContext& c, const StabilityParam& theta,
                                     ExecPolicy policy) {
  return classify_impl(c, theta, policy);
}

std::vector<uint8_t> classify_points_serial(const ActionContext& c, const StabilityParam& theta) {
  return classify_impl(c, theta, ExecPolicy::Serial);
}

int ModuliSet::orbit_of(const RepF& m) const {
  std::vector<uint32_t> best = rep_key(m);
  for (const auto& g : gauge) best = std::min(best, rep_key(act(ctx, g, m)));
  auto it = index_of_key.find(best);
  return it == index_of_key.end() ? -1 : it->second;
}

ModuliSet enumerate_orbits(const ActionContext& c, const std::vector<uint8_t>& keep) {
  RepIndexer idx(c);
  if (keep.size() != size_t(idx.count)) fail(Errc::ShapeMismatch, "filter size");
  ModuliSet out;
  out.ctx = c;
  out.gauge = enumerate_gauge(c);
  std::vector<uint8_t> visited(size_t(idx.count), 0);
  for (uint64_t i = 0; i < idx.count; ++i) {
    if (!keep[size_t(i)] || visited[size_t(i)]) continue;
    RepF m = idx.decode(i);
    ModuliPoint pt;
    std::set<uint64_t> orbit;
    std::vector<uint32_t> best = rep_key(m);
    RepF best_rep = m;
    for (const auto& g : out.gauge) {
      RepF gm = act(c, g, m);
      uint64_t code = idx.encode(gm);
      orbit.insert(code);
      if (code == i) ++pt.stabilizer_order;
      auto key = rep_key(gm);
      if (key < best) {
        best = key;
        best_rep = gm;
      }
    }
    for (uint64_t code : orbit) visited[size_t(code)] = 1;
    pt.orbit_size = orbit.size();
    pt.canon = best_rep;
    out.points.push_back(std::move(pt));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const ModuliPoint& a, const ModuliPoint& b) { return rep_key(a.canon) < rep_key(b.canon); });
  for (int k = 0; k < out.size(); ++k) out.index_of_key[rep_key(out.points[size_t(k)].canon)] = k;
  return out;
}

ModuliSet stable_orbits(const ActionContext& c, const StabilityParam& theta, ExecPolicy policy) {
  std::vector<uint8_t> flags = classify_points(c, theta, policy);
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

std::vector<int> sigma_fixed_moduli(const AutGroup& S, const ModuliSet& moduli) {
  std::vector<int> fixed;
  for (int k = 0; k < moduli.size(); ++k) {
    bool ok = true;
    for (int i = 0; i < S.size() && ok; ++i) {
      RepF moved = phi(moduli.ctx, S[i], moduli.points[size_t(k)].canon);
      if (moduli.orbit_of(moved) != k) ok = false;
    }
    if (ok) fixed.push_back(k);
  }
  return fixed;
}

bool injectivity_certificate(const AutGroup& S) {
  for (const auto& s : S.elements) {
    bool has_fixed_vertex = false;
    for (size_t v = 0; v < s.vmap.size(); ++v)
      if (s.vmap[v] == int(v)) has_fixed_vertex = true;
    if (!has_fixed_vertex) return false;
  }
  return true;
}

FImage f_image(const TwistedAction& t, const StabilityParam& theta, const ModuliSet& moduli) {
  const ActionContext& c = t.ctx;
  FImage out;
  std::vector<RepF> fixed = enumerate_fixed_reps(t);
  out.fixed_points = fixed.size();

  // The twisted fixed semistable set must agree with the ambient one;
  // verified by the equivariant slope test on every fixed point.
  out.semistable_sets_match = true;
  if (t.S.all_covariant()) {
    for (const auto& m : fixed)
      if (equivariant_semistable(t, theta, m) != is_semistable(c, theta, m))
        out.semistable_sets_match = false;
  }

  std::vector<RepF> stable_fixed;
  for (const auto& m : fixed)
    if (is_stable(c, theta, m)) stable_fixed.push_back(m);
  out.fixed_stable_points = stable_fixed.size();

  FixedGaugeReport subgroup = fixed_gauge(t);
  std::set<std::vector<uint32_t>> seen;
  for (const auto& m : stable_fixed) {
    std::vector<uint32_t> best = rep_key(m);
    RepF best_rep = m;
    for (const auto& g : subgroup.elements) {
      RepF gm = act(c, g, m);
      auto key = rep_key(gm);
      if (key < best) {
        best = key;
        best_rep = gm;
      }
    }
    if (seen.insert(best).second) {
      out.domain_reps.push_back(best_rep);
      int image = moduli.orbit_of(best_rep);
      if (image < 0) fail(Errc::Mismatch, "stable fixed point missing from the moduli set");
      out.image_orbit.push_back(image);
      ++out.fiber_size[image];
    }
  }
  return out;
}

DecompositionReport decompose_fixed_locus(const ActionContext& c, const AutGroup& S,
                                          const StabilityParam& theta, const ModuliSet& moduli,
                                          ExecPolicy policy) {
  const uint32_t p = c.field.p;
  DecompositionReport rep;
  rep.fixed_orbits = sigma_fixed_moduli(S, moduli);

  std::vector<int> signs;
  for (const auto& s : S.elements) signs.push_back(sign(s));
  bool delta_trivial = !delta_is_full_scalar_group(c);
  DeltaH1 h1D = delta_trivial ? DeltaH1{} : h1_delta(S.group, signs, p);
  if (delta_trivial) {
    Cocycle1Delta triv;
    triv.d.assign(size_t(S.size()), Fp(1, p));
    h1D.cocycles = {triv};
    h1D.reps = {triv};
    h1D.class_of_cocycle = {0};
  }
  rep.h1_delta_classes = h1D.classes();

  // Type classes of the fixed orbits, grouped geometrically when the
  // closed-field census is available for this group shape.
  DeltaH2 h2fp = h2_delta(S.group, signs, p, false);
  std::optional<GeomH2> geom = geometric_h2(S, p);
  if (!geom)
    rep.notes.push_back("geometric H^2 census unavailable for this group; using F_p classes");
  if (!S.all_covariant())
    rep.notes.push_back(
        "group contains contravariant elements; the uniform sign-twisted type map is an "
        "extrapolation of the covariant construction");

  int nclasses = geom ? geom->classes : h2fp.classes();
  std::vector<std::vector<int>> class_members(static_cast<size_t>(nclasses));
  for (int id : rep.fixed_orbits) {
    TypeMapResult tm = type_map(c, S, moduli.points[size_t(id)].canon, moduli.gauge);
    int fp_class = h2fp.class_of(tm.cocycle);
    rep.fixed_type_fp.push_back("fp-class-" + std::to_string(fp_class));
    int cls = geom ? geom->class_of(tm.cocycle) : fp_class;
    class_members[size_t(cls)].push_back(id);
  }

  std::vector<ModifyingFamily> families = enumerate_modifying_families(c, S, policy);
  std::set<int> covered;
  rep.all_fibers_match = true;
  for (int cls = 0; cls < nclasses; ++cls) {
    if (class_members[size_t(cls)].empty()) continue;
    DecompClass entry;
    entry.label = geom ? geom->labels[size_t(cls)] : ("fp-class-" + std::to_string(cls));

    // Representative cocycle: trivial for the trivial class; for others the
    // F_p representative realized by some family, normalized exactly.
    Cocycle2 target = trivial_cocycle2(S.group, p);
    if (geom && cls == 1) {
      int s = 1 - S.group.id;
      target.c[size_t(s)][size_t(s)] = Fp(p - 1, p);
    } else if (!geom && cls > 0) {
      target = h2fp.reps[size_t(cls)];
    }
    entry.cocycle_rep = target;

    std::optional<ModifyingFamily> base;
    for (const auto& u : families) {
      if (cocycle2_of(c, S, u) == target) {
        base = u;
        break;
      }
    }
    if (!base) {
      for (const auto& u : families) {
        base = normalize_family(c, S, u, target);
        if (base) break;
      }
    }
    if (!base)
      fail(Errc::NoModifyingFamilyForClass,
           "type class " + entry.label + " is populated but admits no modifying family");

    TwistedAction base_action{c, S, base->u};
    GaugeAction gact = action_of(base_action);
    TwistedH1 h1G = h1_twisted_G(gact);

    // Orbits of the H^1(Delta)-action on the twisted classes.
    std::vector<int> orbit_of_class(size_t(h1G.classes()), -1);
    std::vector<int> orbit_reps;
    for (int i = 0; i < h1G.classes(); ++i) {
      if (orbit_of_class[size_t(i)] >= 0) continue;
      int orbit_id = int(orbit_reps.size());
      std::vector<int> frontier{i};
      orbit_of_class[size_t(i)] = orbit_id;
      while (!frontier.empty()) {
        int j = frontier.back();
        frontier.pop_back();
        for (const auto& delta : h1D.reps) {
          Cocycle1G shifted = h1G.reps[size_t(j)];
          for (int g = 0; g < S.size(); ++g)
            shifted.b[size_t(g)] =
                gauge_mul(delta_embed(c, delta.d[size_t(g)]), shifted.b[size_t(g)]);
          int k = h1G.class_of(gact, shifted);
          if (orbit_of_class[size_t(k)] < 0) {
            orbit_of_class[size_t(k)] = orbit_id;
            frontier.push_back(k);
          }
        }
      }
      orbit_reps.push_back(i);
    }

    for (int oi : orbit_reps) {
      DecompComponent comp;
      comp.twist = h1G.reps[size_t(oi)];
      comp.family = twist_by_cocycle(c, S, *base, comp.twist);
      TwistedAction ta{c, S, comp.family.u};
      FImage img = f_image(ta, theta, moduli);
      comp.domain_orbits = img.domain_reps.size();
      std::set<int> ids(img.image_orbit.begin(), img.image_orbit.end());
      comp.image.assign(ids.begin(), ids.end());
      comp.predicted_fiber_size = int(kernel_to_G(action_of(ta), h1D).size());
      comp.fibers_match = true;
      for (const auto& [orbit, count] : img.fiber_size)
        if (count != comp.predicted_fiber_size) comp.fibers_match = false;
      if (!comp.fibers_match) rep.all_fibers_match = false;
      for (int id : comp.image) covered.insert(id);
      entry.components.push_back(std::move(comp));
    }
    rep.classes.push_back(std::move(entry));
  }

  // Disjointness of all listed images.
  std::set<int> seen_ids;
  rep.disjoint = true;
  uint64_t listed = 0;
  for (const auto& cl : rep.classes)
    for (const auto& comp : cl.components) {
      listed += comp.image.size();
      for (int id : comp.image) seen_ids.insert(id);
    }
  if (seen_ids.size() != listed) rep.disjoint = false;

  for (int id : rep.fixed_orbits)
    if (!covered.count(id)) rep.uncovered.push_back(id);
  if (!rep.uncovered.empty())
    rep.notes.push_back(
        "uncovered fixed points are a rational-point gap over F_" + std::to_string(p) +
        "; the covering statement concerns geometric points and extension fields are not searched");
  return rep;
}

QuotientEquivalenceReport verify_quotient_equivalence(const ActionContext& c, const AutGroup& S,
                                                      const StabilityParam& theta) {
  if (!S.all_covariant()) fail(Errc::ContravariantElement, "quotient equivalence needs covariant S");
  QuotientEquivalenceReport out;
  QuotientTransport t = make_transport(c, S);
  out.induced = induced_dim_stab(c.q, t.proj, S, c.d, theta);

  RepIndexer qidx(t.quotient_ctx);
  out.quotient_points = qidx.count;
  std::vector<GaugeF> qgauge = enumerate_gauge(t.quotient_ctx);
  TwistedAction plain = plain_action<Fp>(c, S);
  FixedGaugeReport fixed_g = fixed_gauge(plain);

  out.stability_flags_agree = true;
  bool well_defined = true;
  std::map<std::vector<uint32_t>, std::vector<uint32_t>> canon_pairing;
  std::set<std::vector<uint32_t>> fixed_canons;
  for (uint64_t i = 0; i < qidx.count; ++i) {
    RepF n = qidx.decode(i);
    RepF m = beta_map(t, n);
    bool ss_q = is_semistable(t.quotient_ctx, out.induced.theta, n);
    bool ss_t = is_semistable(c, theta, m);
    bool s_q = is_stable(t.quotient_ctx, out.induced.theta, n);
    bool s_t = is_stable(c, theta, m);
    if (ss_q != ss_t || s_q != s_t) out.stability_flags_agree = false;

    std::vector<uint32_t> cq = rep_key(n);
    for (const auto& h : qgauge) cq = std::min(cq, rep_key(act(t.quotient_ctx, h, n)));
    std::vector<uint32_t> ct = rep_key(m);
    for (const auto& g : fixed_g.elements) ct = std::min(ct, rep_key(act(c, g, m)));
    auto it = canon_pairing.find(cq);
    if (it == canon_pairing.end())
      canon_pairing[cq] = ct;
    else if (it->second != ct)
      well_defined = false;
    fixed_canons.insert(ct);
  }
  out.quotient_orbits = canon_pairing.size();
  out.fixed_orbits = fixed_canons.size();
  // beta descends to a well-defined map on orbits; it is a bijection iff
  // the canonical forms on both sides match one to one.
  std::set<std::vector<uint32_t>> images;
  for (const auto& [cq, ct] : canon_pairing) images.insert(ct);
  out.orbit_bijection =
      well_defined && images.size() == canon_pairing.size() && images == fixed_canons;

  out.chi_identity = true;
  std::vector<int64_t> tp_total = theta_prime(theta, c.d);
  std::vector<int64_t> tp_quot = theta_prime(out.induced.theta, out.induced.dim);
  for (const auto& h : qgauge) {
    Scalar lhs = chi_theta_fp(t.quotient_ctx, tp_quot, h);
    GaugeF g = alpha_map(t, h);
    Scalar rhs = chi_theta_fp(c, tp_total, g);
    if (!(lhs == rhs)) out.chi_identity = false;
  }
  return out;
}

std::vector<ProjPoint> proj_line_points(uint32_t p) {
  std::vector<ProjPoint> pts;
  for (uint32_t t = 0; t < p; ++t) pts.push_back({1, t});
  pts.push_back({0, 1});
  return pts;
}

bool configuration_semistable(const std::vector<ProjPoint>& pts, const std::vector<int64_t>& r) {
  if (pts.size() != r.size()) fail(Errc::ShapeMismatch, "weights vs points");
  int64_t total = std::accumulate(r.begin(), r.end(), int64_t(0));
  for (size_t i = 0; i < pts.size(); ++i) {
    int64_t at = 0;
    for (size_t j = 0; j < pts.size(); ++j)
      if (pts[j] == pts[i]) at += r[j];
    if (at > total - at) return false;
  }
  return true;
}

Quiver star_quiver(int n) {
  Quiver q;
  q.add_vertex("v0");
  for (int i = 1; i <= n; ++i) q.add_vertex("v" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    q.add_arrow("a" + std::to_string(i), "v" + std::to_string(i), "v0");
  return q;
}

StabilityParam star_theta(const std::vector<int64_t>& r) {
  StabilityParam theta;
  theta.push_back(-std::accumulate(r.begin(), r.end(), int64_t(0)));
  for (int64_t w : r) theta.push_back(2 * w);
  return theta;
}

RepF star_rep_of_config(const ActionContext& c, const std::vector<ProjPoint>& pts) {
  RepF m = rep_zero<Fp>(c);
  const uint32_t p = c.field.p;
  if (int(pts.size()) != c.q.num_arrows()) fail(Errc::ShapeMismatch, "config size");
  for (size_t i = 0; i < pts.size(); ++i) {
    m.m[i].at(0, 0) = Fp(pts[i].x, p);
    m.m[i].at(1, 0) = Fp(pts[i].y, p);
  }
  return m;
}

}  // namespace quivfix
