#pragma once

#include <string>
#include <vector>

#include "quivfix/aut.hpp"
#include "quivfix/rep.hpp"

namespace quivfix {

/// Exact linear-algebra model of the symplectic/hyperkahler structure on
/// the representation space of a doubled quiver. Q is enough for the
/// Liouville form and the algebraic moment map; the quaternionic
/// structures need Q(i).
struct SymplecticContext {
  DoubledQuiver dq;
  DimVector d;
  FieldSpec field;
  std::vector<char> acting;  // as in ActionContext; empty = all vertices

  ActionContext ctx() const { return ActionContext::make(dq.q, d, field, acting); }
};

using Tangent = RepT<Scalar>;
using LieElem = GaugeT<Scalar>;  // per-vertex square matrices, not nec. invertible

/// omega(M, N) = sum_{a in A} tr(M_a N_{a*} - M_{a*} N_a).
Scalar omega(const SymplecticContext& sc, const Tangent& m, const Tangent& n);

/// The moment map in its identified form: per-vertex matrix
/// sum_{h(a)=v} M_a M_{a*} - sum_{t(a)=v} M_{a*} M_a (a over base arrows).
LieElem moment(const SymplecticContext& sc, const Tangent& m);

/// Pairing form: mu(M).B = sum_a tr(M_{a*} (B_{h(a)} M_a - M_a B_{t(a)})).
Scalar moment_pairing(const SymplecticContext& sc, const Tangent& m, const LieElem& b);

/// Membership in the level set mu = (eta_v Id)_v, tested on acting vertices.
bool moment_fiber(const SymplecticContext& sc, const Tangent& m, const std::vector<Scalar>& eta);

/// Basis of the realification of Rep: unit vectors, and their i-multiples
/// over Q(i).
std::vector<Tangent> real_basis(const SymplecticContext& sc);

// Quaternionic structures on Rep of the double over Q(i). Conventions are
// pinned by the certified identities: I is multiplication by i,
// K = I.J, omega_X = g(X., .), and the complex symplectic form satisfies
// omega_J + i omega_K = omega exactly.
Tangent op_I(const SymplecticContext& sc, const Tangent& m);
Tangent op_J(const SymplecticContext& sc, const Tangent& m);
Tangent op_K(const SymplecticContext& sc, const Tangent& m);

/// Hyperkahler metric g(X, Y) = Re sum_{a in Abar} tr(X_a conj(Y_a)^T).
Rat metric_g(const SymplecticContext& sc, const Tangent& x, const Tangent& y);

Rat omega_I(const SymplecticContext& sc, const Tangent& x, const Tangent& y);
Rat omega_J(const SymplecticContext& sc, const Tangent& x, const Tangent& y);
Rat omega_K(const SymplecticContext& sc, const Tangent& x, const Tangent& y);

/// Real moment map (i/2) sum_{a in Abar} [M_a, conj(M_a)^T] per vertex.
LieElem mu_real(const SymplecticContext& sc, const Tangent& m);

/// A real-linear map of Rep induced by a star automorphism, optionally
/// composed with entrywise Gaussian conjugation tau.
struct InducedMap {
  QuiverAut sigma;
  bool conjugate = false;
};

Tangent apply_map(const SymplecticContext& sc, const InducedMap& f, const Tangent& m);

/// Lie-algebra transport along sigma: covariant reindex, or -transpose
/// reindex in the contravariant case.
LieElem lie_transport(const SymplecticContext& sc, const QuiverAut& sigma, const LieElem& b);

enum class FormKind { Liouville, OmegaI, OmegaJ, OmegaK, Metric };
enum class StructKind { I, J, K };

/// Sign of f* on a form, decided by exact evaluation on the full real
/// basis (the maps are linear, so this is a proof): +1, -1 or 0 when the
/// pullback is neither.
int pullback_sign(const SymplecticContext& sc, const InducedMap& f, FormKind form);

/// +1 if f commutes with the structure (holomorphic), -1 if it
/// anticommutes (antiholomorphic), 0 otherwise.
int structure_sign(const SymplecticContext& sc, const InducedMap& f, StructKind st);

/// Fixed-subspace geometry of an involutive induced map: dimension over
/// the base field and the rank of the restricted Liouville form.
struct FixedSubspaceReport {
  int ambient_dim = 0;
  int fixed_dim = 0;
  int omega_rank_on_fixed = 0;
};

FixedSubspaceReport fixed_subspace_report(const SymplecticContext& sc, const QuiverAut& sigma);

/// Brane type of the fixed locus of sigma (optionally composed with
/// conjugation): the combinatorial classification and the computed sign
/// table must agree.
struct BraneCertificate {
  StarClass star = StarClass::not_star;
  bool conjugate = false;
  int sign_I = 0, sign_J = 0, sign_K = 0;
  std::string type;  // "BBB", "BAA", "ABA", "AAB"
  std::string combinatorial_type;
};

BraneCertificate brane_type(const SymplecticContext& sc, const QuiverAut& sigma,
                            bool with_conjugation);

}  // namespace quivfix
