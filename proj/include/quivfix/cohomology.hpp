#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quivfix/exec.hpp"
#include "quivfix/rep.hpp"

namespace quivfix {

/// A Sigma-indexed family of gauge elements with u_id = 1 whose failure
/// to be a homomorphism is Delta-valued; it twists the actions on the
/// representation space and the gauge group without moving the induced
/// action on moduli.
struct ModifyingFamily {
  std::vector<GaugeF> u;
};

/// Delta-valued 2-cocycle, stored through Delta = k^x as a table of
/// residues c(i,j); normalized so c(1,s) = c(s,1) = 1.
struct Cocycle2 {
  std::vector<std::vector<Fp>> c;
  bool operator==(const Cocycle2&) const = default;
};

/// G-valued twisted 1-cocycle: b(st) = b(s) Psi^u_s(b(t)), b(id) = 1.
struct Cocycle1G {
  std::vector<GaugeF> b;
};

/// Delta-valued 1-cocycle (k^x entries per group element).
struct Cocycle1Delta {
  std::vector<Fp> d;
  bool operator==(const Cocycle1Delta&) const = default;
};

/// A finite group acting on gauge tuples: the quiver case wraps Psi^u for
/// a group of quiver automorphisms; the abstract case covers the CLI's
/// plain group-cohomology queries. delta_sign records how each element
/// acts on k^x (+1 trivially, -1 by inversion).
struct GaugeAction {
  ActionContext ctx;
  FiniteGroup grp;
  std::vector<int> delta_sign;
  std::function<GaugeF(int, const GaugeF&)> apply;
};

GaugeAction action_of(const TwistedAction& t);
GaugeAction trivial_gauge_action(const ActionContext& ctx, const FiniteGroup& grp);

bool is_modifying_family(const ActionContext& ctx, const AutGroup& S, const ModifyingFamily& u,
                         std::string* why = nullptr);

/// c_u(s,t) = u_s Psi_s(u_t) u_{st}^{-1}; NotInDelta if any value leaves Delta.
Cocycle2 cocycle2_of(const ActionContext& ctx, const AutGroup& S, const ModifyingFamily& u);

/// Checks the identity c(s,t) c(st,r) = s(c(t,r)) c(s,tr) for all triples,
/// where s acts on k^x by delta_sign.
bool cocycle2_identity_holds(const FiniteGroup& grp, const std::vector<int>& delta_sign,
                             const Cocycle2& c);

Cocycle2 trivial_cocycle2(const FiniteGroup& grp, uint32_t p);

/// Every valid modifying family over F_p, in deterministic (odometer)
/// order; the scan over |G|^(|S|-1) candidates is one of the parallel
/// kernels.
std::vector<ModifyingFamily> enumerate_modifying_families(const ActionContext& ctx,
                                                          const AutGroup& S,
                                                          ExecPolicy policy = ExecPolicy::Parallel,
                                                          uint64_t bound = 10000000ULL);
std::vector<ModifyingFamily> enumerate_modifying_families_serial(const ActionContext& ctx,
                                                                 const AutGroup& S,
                                                                 uint64_t bound = 10000000ULL);

/// H^1(Sigma, Delta(F_p)) by literal cochain enumeration.
struct DeltaH1 {
  std::vector<Cocycle1Delta> cocycles;  // all of Z^1
  std::vector<Cocycle1Delta> reps;      // one per class, lex-least
  std::vector<int> class_of_cocycle;    // parallel to `cocycles`
  int classes() const { return int(reps.size()); }
  int class_of(const Cocycle1Delta& d) const;
};

DeltaH1 h1_delta(const FiniteGroup& grp, const std::vector<int>& delta_sign, uint32_t p);

/// H^2(Sigma, Delta(F_p)): class representatives plus an equivalence
/// oracle (exhaustive coboundary search). With `closed_field` the census
/// is the algebraically closed one (trivial for cyclic groups acting
/// trivially, {+-1} for the inversion action of an involution) and is
/// reported symbolically; set membership still uses exact F_p data.
struct DeltaH2 {
  std::vector<Cocycle2> reps;
  bool closed_field = false;
  std::function<bool(const Cocycle2&, const Cocycle2&)> cohomologous;
  int classes() const { return int(reps.size()); }
  int class_of(const Cocycle2& c) const;
};

DeltaH2 h2_delta(const FiniteGroup& grp, const std::vector<int>& delta_sign, uint32_t p,
                 bool closed_field = false);

/// Nonabelian H^1_u(Sigma, G(F_p)): twisted cocycles modulo
/// b ~ g b(s) Psi^u_s(g^{-1}).
struct TwistedH1 {
  std::vector<Cocycle1G> cocycles;       // all of Z^1_u, enumeration order
  std::vector<Cocycle1G> reps;           // lex-least member per class
  std::vector<int> class_of_cocycle;
  std::vector<std::vector<uint32_t>> canon;  // canonical key per class
  int classes() const { return int(reps.size()); }
  int class_of(const GaugeAction& act, const Cocycle1G& b) const;
};

TwistedH1 h1_twisted_G(const GaugeAction& act, uint64_t bound = 10000000ULL);

/// Indices of H^1(Sigma,Delta) classes that split over G under Psi^u.
std::vector<int> kernel_to_G(const GaugeAction& act, const DeltaH1& h1);

ModifyingFamily twist_by_cocycle(const ActionContext& ctx, const AutGroup& S,
                                 const ModifyingFamily& u, const Cocycle1G& b);

/// The 1-cocycle b with u' = b u; requires c_{u'} = c_u.
Cocycle1G cocycle_between(const ActionContext& ctx, const AutGroup& S, const ModifyingFamily& u,
                          const ModifyingFamily& uprime);

/// Rescales u by Delta elements so that c_u becomes exactly `target`
/// (possible iff the two cocycles are cohomologous); the twisted actions
/// are unchanged.
std::optional<ModifyingFamily> normalize_family(const ActionContext& ctx, const AutGroup& S,
                                                const ModifyingFamily& u, const Cocycle2& target);

/// The type map on a Sigma-fixed stable orbit: finds witnesses
/// u_s . Phi_s(M) = M by deterministic gauge search and returns the
/// obstruction 2-cocycle c(s,t) = u_s Psi_s(u_t) u_{st}^{-1}.
struct TypeMapResult {
  ModifyingFamily witnesses;
  Cocycle2 cocycle;
};

TypeMapResult type_map(const ActionContext& ctx, const AutGroup& S, const RepF& orbit_rep,
                       const std::vector<GaugeF>& gauge);

/// Geometric (algebraically closed) classification of type-map values.
/// Supported shapes: covariant cyclic groups (everything is trivial) and
/// groups with a sign character of order two (label = the +-1 value of
/// c(s,s) at a contravariant involution). Returns nullopt otherwise.
struct GeomH2 {
  int classes = 1;
  std::function<int(const Cocycle2&)> class_of;
  std::vector<std::string> labels;
};

std::optional<GeomH2> geometric_h2(const AutGroup& S, uint32_t p);

/// The pair (W, gamma) attached to a point fixed by the twisted action:
/// gamma_s = u_s as vertex-wise maps, with the twisted equivariance
/// relation gamma_s s(gamma_t) = c(s,t) gamma_{st} verified on all pairs.
struct EquivariantStructure {
  std::vector<GaugeF> gamma;
  Cocycle2 relation_cocycle;
};

EquivariantStructure equivariant_structure(const TwistedAction& t, const RepF& fixed_point);

}  // namespace quivfix
