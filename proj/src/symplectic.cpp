#include "quivfix/symplectic.hpp"

#include <functional>

namespace quivfix {

namespace {

Scalar s_zero(const SymplecticContext& sc) { return Scalar::zero(sc.field); }

void check_tangent(const SymplecticContext& sc, const Tangent& m) {
  ActionContext c = sc.ctx();
  check_rep_shape(c, m);
}

}  // namespace

Scalar omega(const SymplecticContext& sc, const Tangent& m, const Tangent& n) {
  check_tangent(sc, m);
  check_tangent(sc, n);
  Scalar acc = s_zero(sc);
  for (int a : sc.dq.base_list()) {
    int as = sc.dq.star[size_t(a)];
    acc = acc.add(mat_trace(mat_mul(m.m[size_t(a)], n.m[size_t(as)]), s_zero(sc)));
    acc = acc.sub(mat_trace(mat_mul(m.m[size_t(as)], n.m[size_t(a)]), s_zero(sc)));
  }
  return acc;
}

LieElem moment(const SymplecticContext& sc, const Tangent& m) {
  check_tangent(sc, m);
  LieElem out;
  for (int v = 0; v < sc.dq.q.num_vertices(); ++v)
    out.g.push_back(Mat<Scalar>(int(sc.d[size_t(v)]), int(sc.d[size_t(v)]), s_zero(sc)));
  for (int a : sc.dq.base_list()) {
    const Arrow& ar = sc.dq.q.arrows[size_t(a)];
    int as = sc.dq.star[size_t(a)];
    out.g[size_t(ar.head)] =
        mat_add(out.g[size_t(ar.head)], mat_mul(m.m[size_t(a)], m.m[size_t(as)]));
    out.g[size_t(ar.tail)] =
        mat_sub(out.g[size_t(ar.tail)], mat_mul(m.m[size_t(as)], m.m[size_t(a)]));
  }
  return out;
}

Scalar moment_pairing(const SymplecticContext& sc, const Tangent& m, const LieElem& b) {
  check_tangent(sc, m);
  Scalar acc = s_zero(sc);
  for (int a : sc.dq.base_list()) {
    const Arrow& ar = sc.dq.q.arrows[size_t(a)];
    int as = sc.dq.star[size_t(a)];
    Mat<Scalar> infinitesimal = mat_sub(mat_mul(b.g[size_t(ar.head)], m.m[size_t(a)]),
                                        mat_mul(m.m[size_t(a)], b.g[size_t(ar.tail)]));
    acc = acc.add(mat_trace(mat_mul(m.m[size_t(as)], infinitesimal), s_zero(sc)));
  }
  return acc;
}

bool moment_fiber(const SymplecticContext& sc, const Tangent& m, const std::vector<Scalar>& eta) {
  LieElem mu = moment(sc, m);
  ActionContext c = sc.ctx();
  for (int v = 0; v < sc.dq.q.num_vertices(); ++v) {
    if (!c.vertex_acts(v)) continue;
    Mat<Scalar> target = Mat<Scalar>::identity(int(sc.d[size_t(v)]), Scalar::one(sc.field));
    target = mat_scale(eta[size_t(v)], target);
    if (!(mu.g[size_t(v)] == target)) return false;
  }
  return true;
}

std::vector<Tangent> real_basis(const SymplecticContext& sc) {
  ActionContext c = sc.ctx();
  std::vector<Tangent> basis;
  Tangent zero = rep_zero<Scalar>(c);
  std::vector<Scalar> units{Scalar::one(sc.field)};
  if (sc.field.kind == FieldKind::Qi) units.push_back(Scalar::gaussian(Rat(0), Rat(1)));
  for (size_t a = 0; a < zero.m.size(); ++a)
    for (size_t e = 0; e < zero.m[a].a.size(); ++e)
      for (const Scalar& u : units) {
        Tangent t = zero;
        t.m[a].a[e] = u;
        basis.push_back(std::move(t));
      }
  return basis;
}

Tangent op_I(const SymplecticContext& sc, const Tangent& m) {
  if (sc.field.kind != FieldKind::Qi) fail(Errc::WrongField, "I needs Q(i)");
  Scalar i = Scalar::gaussian(Rat(0), Rat(1));
  Tangent out = m;
  for (auto& mat : out.m)
    for (auto& e : mat.a) e = i.mul(e);
  return out;
}

Tangent op_J(const SymplecticContext& sc, const Tangent& m) {
  if (sc.field.kind != FieldKind::Qi) fail(Errc::WrongField, "J needs Q(i)");
  check_tangent(sc, m);
  Tangent out = m;
  for (int a = 0; a < sc.dq.q.num_arrows(); ++a) {
    Mat<Scalar> moved = m.m[size_t(sc.dq.star[size_t(a)])].conj().transpose();
    out.m[size_t(a)] = sc.dq.is_base(a) ? mat_neg(moved) : moved;
  }
  return out;
}

Tangent op_K(const SymplecticContext& sc, const Tangent& m) { return op_I(sc, op_J(sc, m)); }

Rat metric_g(const SymplecticContext& sc, const Tangent& x, const Tangent& y) {
  Scalar acc = s_zero(sc);
  for (size_t a = 0; a < x.m.size(); ++a)
    acc = acc.add(mat_trace(mat_mul(x.m[a], y.m[a].conj().transpose()), s_zero(sc)));
  return acc.re();
}

Rat omega_I(const SymplecticContext& sc, const Tangent& x, const Tangent& y) {
  return metric_g(sc, op_I(sc, x), y);
}
Rat omega_J(const SymplecticContext& sc, const Tangent& x, const Tangent& y) {
  return metric_g(sc, op_J(sc, x), y);
}
Rat omega_K(const SymplecticContext& sc, const Tangent& x, const Tangent& y) {
  return metric_g(sc, op_K(sc, x), y);
}

LieElem mu_real(const SymplecticContext& sc, const Tangent& m) {
  if (sc.field.kind != FieldKind::Qi) fail(Errc::WrongField, "real moment map needs Q(i)");
  check_tangent(sc, m);
  Scalar half_i = Scalar::gaussian(Rat(0), Rat(1, 2));
  LieElem out;
  for (int v = 0; v < sc.dq.q.num_vertices(); ++v)
    out.g.push_back(Mat<Scalar>(int(sc.d[size_t(v)]), int(sc.d[size_t(v)]), s_zero(sc)));
  for (int a = 0; a < sc.dq.q.num_arrows(); ++a) {
    const Arrow& ar = sc.dq.q.arrows[size_t(a)];
    Mat<Scalar> ct = m.m[size_t(a)].conj().transpose();
    // [M_a, conj(M_a)^T] contributes at h(a) and t(a) blockwise.
    out.g[size_t(ar.head)] = mat_add(out.g[size_t(ar.head)], mat_mul(m.m[size_t(a)], ct));
    out.g[size_t(ar.tail)] = mat_sub(out.g[size_t(ar.tail)], mat_mul(ct, m.m[size_t(a)]));
  }
  for (auto& block : out.g) block = mat_scale(half_i, block);
  return out;
}

Tangent apply_map(const SymplecticContext& sc, const InducedMap& f, const Tangent& m) {
  ActionContext c = sc.ctx();
  Tangent out = phi(c, f.sigma, m);
  if (f.conjugate)
    for (auto& mat : out.m) mat = mat.conj();
  return out;
}

LieElem lie_transport(const SymplecticContext& sc, const QuiverAut& sigma, const LieElem& b) {
  ActionContext c = sc.ctx();
  return lie_psi(c, sigma, b);
}

namespace {

int form_sign_on_basis(const SymplecticContext& sc, const InducedMap& f,
                       const std::function<Scalar(const Tangent&, const Tangent&)>& form) {
  std::vector<Tangent> basis = real_basis(sc);
  bool plus = true, minus = true;
  for (const Tangent& x : basis) {
    Tangent fx = apply_map(sc, f, x);
    for (const Tangent& y : basis) {
      Scalar lhs = form(fx, apply_map(sc, f, y));
      Scalar rhs = form(x, y);
      if (!(lhs == rhs)) plus = false;
      if (!(lhs == rhs.neg())) minus = false;
      if (!plus && !minus) return 0;
    }
  }
  if (plus) return 1;
  return minus ? -1 : 0;
}

}  // namespace

int pullback_sign(const SymplecticContext& sc, const InducedMap& f, FormKind form) {
  auto rat_form = [&sc](Rat (*g)(const SymplecticContext&, const Tangent&, const Tangent&)) {
    return [g, &sc](const Tangent& x, const Tangent& y) { return Scalar::rational(g(sc, x, y)); };
  };
  switch (form) {
    case FormKind::Liouville:
      return form_sign_on_basis(
          sc, f, [&sc](const Tangent& x, const Tangent& y) { return omega(sc, x, y); });
    case FormKind::OmegaI: return form_sign_on_basis(sc, f, rat_form(&omega_I));
    case FormKind::OmegaJ: return form_sign_on_basis(sc, f, rat_form(&omega_J));
    case FormKind::OmegaK: return form_sign_on_basis(sc, f, rat_form(&omega_K));
    case FormKind::Metric: return form_sign_on_basis(sc, f, rat_form(&metric_g));
  }
  return 0;
}

int structure_sign(const SymplecticContext& sc, const InducedMap& f, StructKind st) {
  auto op = [&sc, st](const Tangent& m) {
    switch (st) {
      case StructKind::I: return op_I(sc, m);
      case StructKind::J: return op_J(sc, m);
      case StructKind::K: return op_K(sc, m);
    }
    return m;
  };
  bool plus = true, minus = true;
  for (const Tangent& x : real_basis(sc)) {
    Tangent lhs = apply_map(sc, f, op(x));
    Tangent rhs = op(apply_map(sc, f, x));
    Tangent neg = rhs;
    for (auto& mat : neg.m) mat = mat_neg(mat);
    if (!(lhs == rhs)) plus = false;
    if (!(lhs == neg)) minus = false;
    if (!plus && !minus) return 0;
  }
  if (plus) return 1;
  return minus ? -1 : 0;
}

FixedSubspaceReport fixed_subspace_report(const SymplecticContext& sc, const QuiverAut& sigma) {
  if (!(compose(sigma, sigma) == trivial_aut(sc.dq.q)))
    fail(Errc::NotInvolution, "fixed-subspace report needs an involution");
  ActionContext c = sc.ctx();
  AutGroup S = close_subgroup(sc.dq.q, {sigma});
  TwistedActionT<Scalar> t = plain_action<Scalar>(c, S);
  std::vector<Tangent> basis = fixed_rep_space(t);
  FixedSubspaceReport out;
  out.ambient_dim = c.rep_entries();
  out.fixed_dim = int(basis.size());
  Mat<Scalar> gram(out.fixed_dim, out.fixed_dim, s_zero(sc));
  for (int i = 0; i < out.fixed_dim; ++i)
    for (int j = 0; j < out.fixed_dim; ++j)
      gram.at(i, j) = omega(sc, basis[size_t(i)], basis[size_t(j)]);
  out.omega_rank_on_fixed = mat_rank(std::move(gram));
  return out;
}

BraneCertificate brane_type(const SymplecticContext& sc, const QuiverAut& sigma,
                            bool with_conjugation) {
  BraneCertificate cert;
  cert.star = star_classify(sc.dq, sigma);
  cert.conjugate = with_conjugation;
  if (cert.star == StarClass::not_star)
    fail(Errc::NotStarAutomorphism, "brane classification needs a star automorphism");
  bool involution = compose(sigma, sigma) == trivial_aut(sc.dq.q);
  if ((cert.star == StarClass::anti_symplectic || with_conjugation) && !involution)
    fail(Errc::NotInvolution, "this brane type needs an involution");

  if (!with_conjugation)
    cert.combinatorial_type = cert.star == StarClass::symplectic ? "BBB" : "BAA";
  else
    cert.combinatorial_type = cert.star == StarClass::symplectic ? "ABA" : "AAB";

  InducedMap f{sigma, with_conjugation};
  cert.sign_I = structure_sign(sc, f, StructKind::I);
  cert.sign_J = structure_sign(sc, f, StructKind::J);
  cert.sign_K = structure_sign(sc, f, StructKind::K);
  if (cert.sign_I == 0 || cert.sign_J == 0 || cert.sign_K == 0 ||
      cert.sign_K != cert.sign_I * cert.sign_J)
    fail(Errc::Mismatch, "sign table is not quaternion-consistent");
  cert.type = std::string() + (cert.sign_I > 0 ? 'B' : 'A') + (cert.sign_J > 0 ? 'B' : 'A') +
              (cert.sign_K > 0 ? 'B' : 'A');
  if (cert.type != cert.combinatorial_type)
    fail(Errc::Mismatch, "combinatorial brane type disagrees with the computed sign table");
  return cert;
}

}  // namespace quivfix
