#pragma once

#include <string>
#include <vector>

#include "quivfix/quiver.hpp"

namespace quivfix {

enum class Variance { covariant, contravariant };

/// Quiver automorphism: a pair of bijections (vertex_map, arrow_map).
/// Covariant ones preserve head and tail, contravariant ones exchange them.
struct QuiverAut {
  Variance variance = Variance::covariant;
  std::vector<int> vmap;
  std::vector<int> amap;

  bool operator==(const QuiverAut&) const = default;
  bool covariant() const { return variance == Variance::covariant; }
  bool is_identity() const;
};

int sign(const QuiverAut& s);  // -1 iff contravariant

bool is_valid_aut(const Quiver& q, const QuiverAut& s);

/// f "after" g: the bijection x -> f(g(x)); variance multiplies.
QuiverAut compose(const QuiverAut& f, const QuiverAut& g);
QuiverAut inverse_aut(const QuiverAut& s);
QuiverAut trivial_aut(const Quiver& q);

enum class VarianceFilter { all, covariant, contravariant };

/// All automorphisms of q, deterministically ordered (covariant first,
/// then lexicographic on vertex_map, then arrow_map). Brute force over
/// vertex bijections with arrow bijections solved per class of parallel
/// arrows; |V| <= 10, |A| <= 14.
std::vector<QuiverAut> enumerate_aut(const Quiver& q, VarianceFilter filter = VarianceFilter::all);

/// Abstract finite group as a multiplication table.
struct FiniteGroup {
  int n = 1;
  int id = 0;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;

  bool is_cyclic() const;
  int order_of(int g) const;
};

FiniteGroup cyclic_group(int n);

/// Closed set of quiver automorphisms with its multiplication table. The
/// table is chosen so that mul(i,j) is the element acting as "first apply
/// element i's reindexing, then element j's": with the actions Phi/Psi of
/// rep.hpp this makes Phi_{mul(i,j)} = Phi_i ∘ Phi_j.
struct AutGroup {
  std::vector<QuiverAut> elements;
  FiniteGroup group;

  int size() const { return int(elements.size()); }
  const QuiverAut& operator[](int i) const { return elements[size_t(i)]; }
  bool all_covariant() const;
  std::vector<int> covariant_subgroup() const;  // indices of the covariant part
  int find(const QuiverAut& s) const;           // -1 if absent
};

/// Closure of `gens` under composition and inverse; fails above 10^4 elements.
AutGroup close_subgroup(const Quiver& q, const std::vector<QuiverAut>& gens);

/// (d is S-compatible, theta is S-compatible); the theta test uses
/// sigma(theta) = sign(sigma) * theta.
std::pair<bool, bool> is_compatible(const AutGroup& S, const DimVector& d,
                                    const StabilityParam& theta);

enum class StarClass { not_star, symplectic, anti_symplectic };

/// Classification inside Aut_*(doubled quiver): requires sigma(a*) =
/// sigma(a)* and sigma(A) contained in A (symplectic) or in A*
/// (anti-symplectic).
StarClass star_classify(const DoubledQuiver& dq, const QuiverAut& s);

/// Extension of an automorphism of Q to the double by sigma(a*) := sigma(a)*.
QuiverAut extend_to_double(const DoubledQuiver& dq, const QuiverAut& s_on_base);

/// The contravariant involution fixing every vertex and sending a to a*.
QuiverAut canonical_contravariant(const DoubledQuiver& dq);

}  // namespace quivfix
