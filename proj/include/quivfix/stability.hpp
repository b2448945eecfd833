#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quivfix/cohomology.hpp"
#include "quivfix/exec.hpp"
#include "quivfix/rep.hpp"

namespace quivfix {

/// Subrepresentation: per-vertex subspaces stored as row-echelon bases
/// (rows span the subspace), invariant under every arrow matrix.
struct Subrep {
  std::vector<Mat<Fp>> basis;
  DimVector dims;
};

/// All subspaces of F_p^d as row-echelon bases; cached per (p, d).
const std::vector<Mat<Fp>>& subspaces_of(uint32_t p, int d);

/// Every subrepresentation of m (one subspace per vertex, closed under all
/// arrows), including 0 and the whole space; fails when the subspace-tuple
/// count exceeds 10^6.
std::vector<Subrep> subreps(const ActionContext& c, const RepF& m);

bool is_semistable(const ActionContext& c, const StabilityParam& theta, const RepF& m);
bool is_stable(const ActionContext& c, const StabilityParam& theta, const RepF& m);

/// The strictly-contradicting-semistability subrepresentation: the unique
/// (slope, then total dimension)-maximal proper subrep of an unstable
/// point. IsSemistable if m is semistable; TieBreakViolation if the
/// maximizer is not unique (that would be a bug, and is scanned for).
Subrep scss(const ActionContext& c, const StabilityParam& theta, const RepF& m);

/// Harder-Narasimhan filtration 0 != U_1 < ... < U_k = full, computed by
/// iterating scss on quotients; a semistable point yields the one-step chain.
std::vector<Subrep> hn_filtration(const ActionContext& c, const StabilityParam& theta,
                                  const RepF& m);

/// Slope test over the gamma-invariant subrepresentations only, where the
/// equivariant structure gamma is the modifying family of `t` and m is a
/// point fixed by the twisted action. Covariant groups only.
bool equivariant_semistable(const TwistedAction& t, const StabilityParam& theta, const RepF& m);

/// Per-point stability flags over all of Rep(F_p); bit 0 = semistable,
/// bit 1 = stable. One of the parallel kernels.
std::vector<uint8_t> classify_points(const ActionContext& c, const StabilityParam& theta,
                                     ExecPolicy policy = ExecPolicy::Parallel);
std::vector<uint8_t> classify_points_serial(const ActionContext& c, const StabilityParam& theta);

/// A stable orbit: canonical representative (lexicographically least
/// member), orbit size, stabilizer order and endomorphism dimension.
struct ModuliPoint {
  RepF canon;
  uint64_t orbit_size = 0;
  uint64_t stabilizer_order = 0;
  int endo = 0;
  bool semistable = true;
  bool stable = true;
};

struct ModuliSet {
  ActionContext ctx;
  std::vector<GaugeF> gauge;
  std::vector<ModuliPoint> points;
  std::map<std::vector<uint32_t>, int> index_of_key;

  int size() const { return int(points.size()); }
  /// Orbit id of an arbitrary point, or -1 if its orbit is not in the set.
  int orbit_of(const RepF& m) const;
};

/// Orbits of the filtered point set under the acting gauge group.
ModuliSet enumerate_orbits(const ActionContext& c, const std::vector<uint8_t>& keep);

/// The stable moduli points of (Q, d, theta) over F_p.
ModuliSet stable_orbits(const ActionContext& c, const StabilityParam& theta,
                        ExecPolicy policy = ExecPolicy::Parallel);

/// Orbit ids fixed (setwise) by every element of S.
std::vector<int> sigma_fixed_moduli(const AutGroup& S, const ModuliSet& moduli);

/// True iff every element of S fixes some vertex; a sufficient condition
/// for the restricted moduli map to be injective.
bool injectivity_certificate(const AutGroup& S);

/// The moduli map attached to a twisted action: domain = orbits of the
/// twisted fixed stable locus under the twisted-fixed gauge subgroup,
/// image = stable moduli orbits.
struct FImage {
  std::vector<RepF> domain_reps;        // canonical reps of domain orbits
  std::vector<int> image_orbit;         // parallel: moduli orbit id
  std::map<int, int> fiber_size;        // image orbit id -> #domain orbits
  bool semistable_sets_match = false;   // equivariant slope test == plain test
  uint64_t fixed_points = 0;
  uint64_t fixed_stable_points = 0;
};

FImage f_image(const TwistedAction& t, const StabilityParam& theta, const ModuliSet& moduli);

struct DecompComponent {
  ModifyingFamily family;
  Cocycle1G twist;
  std::vector<int> image;           // moduli orbit ids, ascending
  int predicted_fiber_size = 1;     // |ker(H^1(Delta) -> H^1_u(G))|
  bool fibers_match = false;
  uint64_t domain_orbits = 0;
};

struct DecompClass {
  std::string label;
  Cocycle2 cocycle_rep;
  std::vector<DecompComponent> components;
};

/// Verified decomposition of the Sigma-fixed stable locus over F_p.
/// Components are grouped by the geometric (closed-field) class of the
/// type map; F_p points that no component reaches are reported, not
/// treated as failures, since the covering statement holds for geometric
/// points.
struct DecompositionReport {
  std::vector<int> fixed_orbits;
  std::vector<std::string> fixed_type_fp;  // F_p type-map class label per fixed orbit
  std::vector<DecompClass> classes;
  std::vector<int> uncovered;
  bool disjoint = false;
  bool all_fibers_match = false;
  int h1_delta_classes = 0;
  std::vector<std::string> notes;
};

DecompositionReport decompose_fixed_locus(const ActionContext& c, const AutGroup& S,
                                          const StabilityParam& theta, const ModuliSet& moduli,
                                          ExecPolicy policy = ExecPolicy::Parallel);

/// Orbit-set bijection and stability agreement between representations of
/// the quotient quiver and S-fixed representations of Q, plus the
/// character identity chi_{theta~} = chi_theta ∘ alpha over all of G(F_p).
struct QuotientEquivalenceReport {
  bool stability_flags_agree = false;
  bool orbit_bijection = false;
  bool chi_identity = false;
  uint64_t quotient_points = 0;
  uint64_t quotient_orbits = 0;
  uint64_t fixed_orbits = 0;
  InducedData induced;
  bool ok() const { return stability_flags_agree && orbit_bijection && chi_identity; }
};

QuotientEquivalenceReport verify_quotient_equivalence(const ActionContext& c, const AutGroup& S,
                                                      const StabilityParam& theta);

/// Point of P^1(F_p) in normalized homogeneous coordinates.
struct ProjPoint {
  uint32_t x = 1, y = 0;  // (1:t) or (0:1)
  bool operator==(const ProjPoint&) const = default;
};

std::vector<ProjPoint> proj_line_points(uint32_t p);

/// Weighted configuration semistability on P^1: for every point q,
/// sum of weights at q <= sum of weights away from q.
bool configuration_semistable(const std::vector<ProjPoint>& pts, const std::vector<int64_t>& r);

/// Star quiver Q_n, its weight stability parameter theta_r and the
/// representation attached to a point configuration.
Quiver star_quiver(int n);
StabilityParam star_theta(const std::vector<int64_t>& r);
RepF star_rep_of_config(const ActionContext& c, const std::vector<ProjPoint>& pts);

}  // namespace quivfix
