#include "quivfix/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "quivfix/aut.hpp"

namespace quivfix {

int Quiver::vertex_index(const std::string& name) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[size_t(i)] == name) return i;
  fail(Errc::ParseError, "unknown vertex: " + name);
}

int Quiver::arrow_index(const std::string& name) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[size_t(i)].name == name) return i;
  fail(Errc::ParseError, "unknown arrow: " + name);
}

Quiver& Quiver::add_arrow(const std::string& name, const std::string& tail,
                          const std::string& head) {
  arrows.push_back({name, vertex_index(tail), vertex_index(head)});
  return *this;
}

void validate(const Quiver& q) {
  std::set<std::string> seen;
  for (const auto& v : q.vertices)
    if (!seen.insert(v).second) fail(Errc::DuplicateId, "vertex " + v);
  seen.clear();
  for (const auto& a : q.arrows) {
    if (!seen.insert(a.name).second) fail(Errc::DuplicateId, "arrow " + a.name);
    if (a.tail < 0 || a.tail >= q.num_vertices() || a.head < 0 || a.head >= q.num_vertices())
      fail(Errc::DanglingArrow, "arrow " + a.name);
  }
}

std::vector<int> DoubledQuiver::base_list() const {
  std::vector<int> out;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (is_base(a)) out.push_back(a);
  return out;
}

Quiver DoubledQuiver::base_quiver() const {
  Quiver base;
  base.vertices = q.vertices;
  for (int a : base_list()) base.arrows.push_back(q.arrows[size_t(a)]);
  return base;
}

DoubledQuiver make_double(const Quiver& q) {
  validate(q);
  DoubledQuiver dq;
  dq.q = q;
  for (const auto& a : q.arrows) dq.q.arrows.push_back({a.name + "*", a.head, a.tail});
  dq.star.resize(size_t(2) * q.num_arrows());
  for (int i = 0; i < q.num_arrows(); ++i) {
    dq.star[size_t(i)] = q.num_arrows() + i;
    dq.star[size_t(q.num_arrows() + i)] = i;
  }
  return dq;
}

DoubledQuiver bind_double(Quiver q, std::vector<int> star) {
  validate(q);
  if (int(star.size()) != q.num_arrows()) fail(Errc::ShapeMismatch, "star pairing size");
  for (int a = 0; a < q.num_arrows(); ++a) {
    int b = star[size_t(a)];
    if (b < 0 || b >= q.num_arrows() || b == a || star[size_t(b)] != a)
      fail(Errc::ParseError, "star pairing is not an involution without fixed arrows");
    if (q.arrows[size_t(b)].tail != q.arrows[size_t(a)].head ||
        q.arrows[size_t(b)].head != q.arrows[size_t(a)].tail)
      fail(Errc::ParseError, "star pairing must reverse head and tail");
  }
  DoubledQuiver dq;
  dq.q = std::move(q);
  dq.star = std::move(star);
  return dq;
}

std::vector<int64_t> theta_prime(const StabilityParam& theta, const DimVector& d) {
  if (theta.size() != d.size()) fail(Errc::ShapeMismatch, "theta vs d");
  int64_t total = std::accumulate(d.begin(), d.end(), int64_t(0));
  int64_t pairing = 0;
  for (size_t v = 0; v < d.size(); ++v) pairing += theta[v] * d[v];
  std::vector<int64_t> tp(theta.size());
  for (size_t v = 0; v < d.size(); ++v) tp[v] = theta[v] * total - pairing;
  return tp;
}

Rat slope(const StabilityParam& theta, const DimVector& e) {
  if (theta.size() != e.size()) fail(Errc::ShapeMismatch, "theta vs e");
  int64_t num = 0, den = 0;
  for (size_t v = 0; v < e.size(); ++v) {
    num += theta[v] * e[v];
    den += e[v];
  }
  if (den == 0) fail(Errc::ZeroDimension, "slope of the zero dimension vector");
  return Rat(num, den);
}

namespace {

std::vector<std::vector<int>> orbits_of(int n, const AutGroup& S, bool on_vertices) {
  std::vector<int> root(size_t(n), -1);
  std::vector<std::vector<int>> orbits;
  for (int x = 0; x < n; ++x) {
    if (root[size_t(x)] >= 0) continue;
    std::vector<int> orbit;
    std::vector<int> stack{x};
    root[size_t(x)] = x;
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      orbit.push_back(y);
      for (const auto& s : S.elements) {
        int z = on_vertices ? s.vmap[size_t(y)] : s.amap[size_t(y)];
        if (root[size_t(z)] < 0) {
          root[size_t(z)] = x;
          stack.push_back(z);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::string least_name(const std::vector<int>& orbit, const std::vector<std::string>& names) {
  std::string best = names[size_t(orbit[0])];
  for (int i : orbit) best = std::min(best, names[size_t(i)]);
  return best;
}

}  // namespace

QuotientQuiver quotient_quiver(const Quiver& q, const AutGroup& S) {
  if (!S.all_covariant()) fail(Errc::ContravariantElement, "quotient quiver needs covariant S");
  auto vorb = orbits_of(q.num_vertices(), S, true);
  auto aorb = orbits_of(q.num_arrows(), S, false);

  QuotientQuiver out;
  out.vertex_proj.assign(size_t(q.num_vertices()), -1);
  out.arrow_proj.assign(size_t(q.num_arrows()), -1);
  for (size_t k = 0; k < vorb.size(); ++k) {
    out.q.vertices.push_back(least_name(vorb[k], q.vertices));
    for (int v : vorb[k]) out.vertex_proj[size_t(v)] = int(k);
  }
  std::vector<std::string> arrow_names;
  for (const auto& a : q.arrows) arrow_names.push_back(a.name);
  for (size_t k = 0; k < aorb.size(); ++k) {
    int rep = aorb[k][0];
    out.q.arrows.push_back({least_name(aorb[k], arrow_names),
                            out.vertex_proj[size_t(q.arrows[size_t(rep)].tail)],
                            out.vertex_proj[size_t(q.arrows[size_t(rep)].head)]});
    for (int a : aorb[k]) out.arrow_proj[size_t(a)] = int(k);
  }
  validate(out.q);
  // Head/tail maps must commute with the projections.
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& orig = q.arrows[size_t(a)];
    const Arrow& img = out.q.arrows[size_t(out.arrow_proj[size_t(a)])];
    if (img.tail != out.vertex_proj[size_t(orig.tail)] ||
        img.head != out.vertex_proj[size_t(orig.head)])
      fail(Errc::Mismatch, "quotient head/tail projection");
  }
  return out;
}

InducedData induced_dim_stab(const Quiver& q, const QuotientQuiver& quot, const AutGroup& S,
                             const DimVector& d, const StabilityParam& theta) {
  auto [dok, tok] = is_compatible(S, d, theta);
  if (!dok || !tok) fail(Errc::IncompatibleData, "d or theta not S-compatible");
  InducedData out;
  out.dim.assign(quot.q.vertices.size(), 0);
  out.theta.assign(quot.q.vertices.size(), 0);
  std::vector<int64_t> orbit_size(quot.q.vertices.size(), 0);
  for (int v = 0; v < q.num_vertices(); ++v) ++orbit_size[size_t(quot.vertex_proj[size_t(v)])];
  for (int v = 0; v < q.num_vertices(); ++v) {
    int w = quot.vertex_proj[size_t(v)];
    out.dim[size_t(w)] = d[size_t(v)];
    out.theta[size_t(w)] = orbit_size[size_t(w)] * theta[size_t(v)];
  }
  return out;
}

}  // namespace quivfix
