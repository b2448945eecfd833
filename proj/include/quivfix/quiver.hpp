#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quivfix/field.hpp"

namespace quivfix {

struct Arrow {
  std::string name;
  int tail = 0;
  int head = 0;
};

/// Finite oriented multigraph. Vertices and arrows keep their declaration
/// order; all downstream enumeration orders derive from it.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int num_vertices() const { return int(vertices.size()); }
  int num_arrows() const { return int(arrows.size()); }
  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;

  Quiver& add_vertex(const std::string& v) {
    vertices.push_back(v);
    return *this;
  }
  Quiver& add_arrow(const std::string& name, const std::string& tail, const std::string& head);
};

/// Checks id uniqueness and that every arrow endpoint is declared.
void validate(const Quiver& q);

/// Q with a reverse arrow a* for each a; `star` is the involutive index
/// pairing a <-> a* on the doubled arrow set. An arrow counts as "base"
/// when it precedes its partner in declaration order.
struct DoubledQuiver {
  Quiver q;
  std::vector<int> star;

  bool is_base(int arrow) const { return arrow < star[size_t(arrow)]; }
  std::vector<int> base_list() const;
  Quiver base_quiver() const;
};

DoubledQuiver make_double(const Quiver& q);

/// Doubled quiver assembled from explicit data (JSON input); verifies the
/// star pairing axioms.
DoubledQuiver bind_double(Quiver q, std::vector<int> star);

using DimVector = std::vector<int64_t>;
using StabilityParam = std::vector<int64_t>;

/// theta'_v = theta_v * sum(d) - sum(theta.d); satisfies sum theta'_v d_v = 0.
std::vector<int64_t> theta_prime(const StabilityParam& theta, const DimVector& d);

/// (sum theta_v e_v) / (sum e_v) as an exact rational. e must be nonzero.
Rat slope(const StabilityParam& theta, const DimVector& e);

struct QuotientQuiver {
  Quiver q;
  std::vector<int> vertex_proj;  // original vertex index -> quotient vertex index
  std::vector<int> arrow_proj;
};

struct InducedData {
  DimVector dim;
  StabilityParam theta;
};

struct AutGroup;  // aut.hpp

/// Quotient by a covariant automorphism group: vertices/arrows are orbits,
/// named after their lexicographically least member.
QuotientQuiver quotient_quiver(const Quiver& q, const AutGroup& S);

/// d~_{orbit of v} = d_v, theta~_{orbit of v} = |orbit| * theta_v.
InducedData induced_dim_stab(const Quiver& q, const QuotientQuiver& quot, const AutGroup& S,
                             const DimVector& d, const StabilityParam& theta);

}  // namespace quivfix
