#pragma once

#include "quivfix/stability.hpp"
#include "quivfix/symplectic.hpp"

namespace quivfix {

/// Double of the framed Jordan quiver: loops x, y = x* at vertex v0, arrow
/// i from the framing vertex vinf to v0 and j = i* back. Only GL_n at v0
/// acts (subgroup mode); the framing GL_1 is frozen.
DoubledQuiver framed_jordan_double();
ActionContext framed_jordan_ctx(int n, uint32_t p);

/// Arrow indices (x, y, i, j) in framed_jordan_ctx order.
struct FramedArrows {
  int x = 0, y = 1, i = 2, j = 3;
};

/// Moment value at v0: [M_x, M_y] + M_i M_j.
Mat<Fp> framed_moment(const ActionContext& c, const RepF& m);
bool in_zero_fiber(const ActionContext& c, const RepF& m);

/// Cyclicity of M_i under M_x, M_y (iterated Krylov span). This is the
/// stability notion for the determinant character; requires mu(M) = 0.
bool det_stable(const ActionContext& c, const RepF& m);

/// The ideal { f in k[x,y] : f(M_x, M_y) M_i = 0 } through the window of
/// monomials of total degree <= n, for a det-stable point of the zero
/// fiber (where M_x and M_y commute).
struct IdealReport {
  int codim = 0;                       // rank of the evaluation map; must be n
  std::vector<std::pair<int, int>> quotient_monomials;  // staircase (deg_x, deg_y)
  int window_kernel_dim = 0;           // dim of the degree-<=n part of the ideal
  bool contains_x_minus_y = false;
};

IdealReport ideal_of(const ActionContext& c, const RepF& m);

/// (M_x - M_y) M_i = 0; the scheme of a fixed stable point lies on the
/// diagonal line.
bool fixed_diagonal_check(const ActionContext& c, const RepF& m);

/// Conjugacy classes of involutions in GL_n(F_p); returned representatives
/// are diag(-1 x r, 1 x (n-r)) for r = 0..n.
std::vector<Mat<Fp>> involution_classes(int n, uint32_t p);

/// Per-point flags over the full representation space: bit0 = mu(M) = 0,
/// bit1 = det-stable. One of the parallel kernels.
std::vector<uint8_t> classify_fiber_points(const ActionContext& c,
                                           ExecPolicy policy = ExecPolicy::Parallel);
std::vector<uint8_t> classify_fiber_points_serial(const ActionContext& c);

/// GL_n-orbits of the det-stable zero-fiber locus.
ModuliSet hilbert_moduli(const ActionContext& c, ExecPolicy policy = ExecPolicy::Parallel);

/// The fixed-locus census for the loop swap x <-> y: one component per
/// conjugacy class of involutions u_r, with the twisted fixed locus
/// intersected against the det-stable zero fiber.
struct HilbertComponent {
  Mat<Fp> u;                    // involution at v0
  uint64_t fixed_stable_points = 0;
  uint64_t domain_orbits = 0;
  std::vector<int> image;       // orbit ids in hilbert_moduli
  uint64_t twisted_gauge_order = 0;
};

struct HilbertCensus {
  ModuliSet moduli;
  std::vector<int> sigma_fixed;
  std::vector<HilbertComponent> components;
  std::vector<int> uncovered;
  bool disjoint = false;
};

HilbertCensus hilbert_census(int n, uint32_t p, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace quivfix
