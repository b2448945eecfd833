#include "quivfix/aut.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace quivfix {

bool QuiverAut::is_identity() const {
  for (size_t i = 0; i < vmap.size(); ++i)
    if (vmap[i] != int(i)) return false;
  for (size_t i = 0; i < amap.size(); ++i)
    if (amap[i] != int(i)) return false;
  return variance == Variance::covariant;
}

int sign(const QuiverAut& s) { return s.covariant() ? 1 : -1; }

bool is_valid_aut(const Quiver& q, const QuiverAut& s) {
  if (int(s.vmap.size()) != q.num_vertices() || int(s.amap.size()) != q.num_arrows()) return false;
  for (const auto& a : q.arrows) {
    int idx = int(&a - q.arrows.data());
    const Arrow& img = q.arrows[size_t(s.amap[size_t(idx)])];
    int st = s.vmap[size_t(a.tail)], sh = s.vmap[size_t(a.head)];
    if (s.covariant()) {
      if (img.tail != st || img.head != sh) return false;
    } else {
      if (img.tail != sh || img.head != st) return false;
    }
  }
  return true;
}

QuiverAut compose(const QuiverAut& f, const QuiverAut& g) {
  QuiverAut r;
  r.variance = (f.variance == g.variance) ? Variance::covariant : Variance::contravariant;
  r.vmap.resize(g.vmap.size());
  r.amap.resize(g.amap.size());
  for (size_t i = 0; i < g.vmap.size(); ++i) r.vmap[i] = f.vmap[size_t(g.vmap[i])];
  for (size_t i = 0; i < g.amap.size(); ++i) r.amap[i] = f.amap[size_t(g.amap[i])];
  return r;
}

QuiverAut inverse_aut(const QuiverAut& s) {
  QuiverAut r;
  r.variance = s.variance;
  r.vmap.resize(s.vmap.size());
  r.amap.resize(s.amap.size());
  for (size_t i = 0; i < s.vmap.size(); ++i) r.vmap[size_t(s.vmap[i])] = int(i);
  for (size_t i = 0; i < s.amap.size(); ++i) r.amap[size_t(s.amap[i])] = int(i);
  return r;
}

QuiverAut trivial_aut(const Quiver& q) {
  QuiverAut s;
  s.vmap.resize(size_t(q.num_vertices()));
  s.amap.resize(size_t(q.num_arrows()));
  std::iota(s.vmap.begin(), s.vmap.end(), 0);
  std::iota(s.amap.begin(), s.amap.end(), 0);
  return s;
}

namespace {

// Arrow classes of parallel arrows, keyed by (tail, head).
std::map<std::pair<int, int>, std::vector<int>> parallel_classes(const Quiver& q) {
  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int a = 0; a < q.num_arrows(); ++a)
    classes[{q.arrows[size_t(a)].tail, q.arrows[size_t(a)].head}].push_back(a);
  return classes;
}

void extend_arrows(const Quiver& q, const std::vector<int>& vmap, Variance var,
                   std::vector<QuiverAut>& out) {
  auto classes = parallel_classes(q);
  // Each class must map onto the class of the transported endpoint pair.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> matched;
  for (const auto& [key, members] : classes) {
    std::pair<int, int> target = var == Variance::covariant
                                     ? std::pair<int, int>{vmap[size_t(key.first)], vmap[size_t(key.second)]}
                                     : std::pair<int, int>{vmap[size_t(key.second)], vmap[size_t(key.first)]};
    auto it = classes.find(target);
    if (it == classes.end() || it->second.size() != members.size()) return;
    matched.push_back({members, it->second});
  }
  // Odometer over per-class bijections (ascending permutation order).
  std::vector<std::vector<int>> perms(matched.size());
  for (size_t k = 0; k < matched.size(); ++k) {
    perms[k].resize(matched[k].first.size());
    std::iota(perms[k].begin(), perms[k].end(), 0);
  }
  while (true) {
    QuiverAut s;
    s.variance = var;
    s.vmap = vmap;
    s.amap.assign(size_t(q.num_arrows()), -1);
    for (size_t k = 0; k < matched.size(); ++k)
      for (size_t i = 0; i < matched[k].first.size(); ++i)
        s.amap[size_t(matched[k].first[i])] = matched[k].second[size_t(perms[k][i])];
    out.push_back(std::move(s));
    // advance the odometer
    size_t k = 0;
    while (k < perms.size() && !std::next_permutation(perms[k].begin(), perms[k].end())) ++k;
    if (k == perms.size()) break;
  }
}

}  // namespace

std::vector<QuiverAut> enumerate_aut(const Quiver& q, VarianceFilter filter) {
  validate(q);
  if (q.num_vertices() > 10 || q.num_arrows() > 14)
    fail(Errc::TooLarge, "automorphism enumeration bound is |V| <= 10, |A| <= 14");
  std::vector<QuiverAut> out;
  std::vector<int> vmap(size_t(q.num_vertices()));
  std::iota(vmap.begin(), vmap.end(), 0);
  do {
    if (filter != VarianceFilter::contravariant) extend_arrows(q, vmap, Variance::covariant, out);
    if (filter != VarianceFilter::covariant) extend_arrows(q, vmap, Variance::contravariant, out);
  } while (std::next_permutation(vmap.begin(), vmap.end()));
  std::sort(out.begin(), out.end(), [](const QuiverAut& x, const QuiverAut& y) {
    if (x.variance != y.variance) return x.covariant();
    if (x.vmap != y.vmap) return x.vmap < y.vmap;
    return x.amap < y.amap;
  });
  return out;
}

bool FiniteGroup::is_cyclic() const {
  for (int g = 0; g < n; ++g)
    if (order_of(g) == n) return true;
  return false;
}

int FiniteGroup::order_of(int g) const {
  int x = g, k = 1;
  while (x != id) {
    x = mul[size_t(x)][size_t(g)];
    ++k;
  }
  return k;
}

FiniteGroup cyclic_group(int n) {
  FiniteGroup g;
  g.n = n;
  g.id = 0;
  g.mul.assign(size_t(n), std::vector<int>(size_t(n)));
  g.inv.assign(size_t(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.mul[size_t(i)][size_t(j)] = (i + j) % n;
    g.inv[size_t(i)] = (n - i) % n;
  }
  return g;
}

bool AutGroup::all_covariant() const {
  for (const auto& s : elements)
    if (!s.covariant()) return false;
  return true;
}

std::vector<int> AutGroup::covariant_subgroup() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (elements[size_t(i)].covariant()) idx.push_back(i);
  return idx;
}

int AutGroup::find(const QuiverAut& s) const {
  for (int i = 0; i < size(); ++i)
    if (elements[size_t(i)] == s) return i;
  return -1;
}

AutGroup close_subgroup(const Quiver& q, const std::vector<QuiverAut>& gens) {
  for (const auto& g : gens)
    if (!is_valid_aut(q, g)) fail(Errc::ParseError, "generator is not an automorphism");
  std::vector<QuiverAut> elems{trivial_aut(q)};
  std::vector<QuiverAut> frontier = elems;
  while (!frontier.empty()) {
    std::vector<QuiverAut> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        for (const QuiverAut& cand : {compose(g, e), compose(inverse_aut(g), e)}) {
          if (std::find(elems.begin(), elems.end(), cand) == elems.end()) {
            elems.push_back(cand);
            next.push_back(cand);
            if (elems.size() > 10000) fail(Errc::TooLarge, "subgroup closure exceeds 10^4");
          }
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(elems.begin(), elems.end(), [](const QuiverAut& x, const QuiverAut& y) {
    if (x.is_identity() != y.is_identity()) return x.is_identity();
    if (x.variance != y.variance) return x.covariant();
    if (x.vmap != y.vmap) return x.vmap < y.vmap;
    return x.amap < y.amap;
  });

  AutGroup S;
  S.elements = std::move(elems);
  int n = S.size();
  S.group.n = n;
  S.group.id = 0;
  S.group.mul.assign(size_t(n), std::vector<int>(size_t(n), -1));
  S.group.inv.assign(size_t(n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Product convention: mul(i,j) reindexes like "j after i", so the
      // induced representation actions compose as Phi_{mul(i,j)} = Phi_i Phi_j.
      int k = S.find(compose(S.elements[size_t(j)], S.elements[size_t(i)]));
      if (k < 0) fail(Errc::Mismatch, "generated set is not closed");
      S.group.mul[size_t(i)][size_t(j)] = k;
      if (k == 0) S.group.inv[size_t(i)] = j;
    }
  }
  return S;
}

std::pair<bool, bool> is_compatible(const AutGroup& S, const DimVector& d,
                                    const StabilityParam& theta) {
  bool dok = true, tok = true;
  for (const auto& s : S.elements) {
    for (size_t v = 0; v < d.size(); ++v) {
      if (d[size_t(s.vmap[v])] != d[v]) dok = false;
      if (theta[size_t(s.vmap[v])] != sign(s) * theta[v]) tok = false;
    }
  }
  return {dok, tok};
}

StarClass star_classify(const DoubledQuiver& dq, const QuiverAut& s) {
  if (!is_valid_aut(dq.q, s)) fail(Errc::ParseError, "not an automorphism of the double");
  for (int a = 0; a < dq.q.num_arrows(); ++a)
    if (s.amap[size_t(dq.star[size_t(a)])] != dq.star[size_t(s.amap[size_t(a)])])
      return StarClass::not_star;
  bool into_base = true, into_star = true;
  for (int a : dq.base_list()) {
    if (dq.is_base(s.amap[size_t(a)]))
      into_star = false;
    else
      into_base = false;
  }
  if (!into_base && !into_star) return StarClass::not_star;
  return into_base ? StarClass::symplectic : StarClass::anti_symplectic;
}

QuiverAut extend_to_double(const DoubledQuiver& dq, const QuiverAut& s_on_base) {
  std::vector<int> base = dq.base_list();
  if (s_on_base.amap.size() != base.size())
    fail(Errc::ShapeMismatch, "automorphism is not on the base quiver");
  QuiverAut s;
  s.variance = s_on_base.variance;
  s.vmap = s_on_base.vmap;
  s.amap.assign(size_t(dq.q.num_arrows()), -1);
  for (size_t k = 0; k < base.size(); ++k) {
    int image = base[size_t(s_on_base.amap[k])];
    s.amap[size_t(base[k])] = image;
    s.amap[size_t(dq.star[size_t(base[k])])] = dq.star[size_t(image)];
  }
  if (!is_valid_aut(dq.q, s)) fail(Errc::Mismatch, "star extension is not an automorphism");
  return s;
}

QuiverAut canonical_contravariant(const DoubledQuiver& dq) {
  QuiverAut s = trivial_aut(dq.q);
  s.variance = Variance::contravariant;
  s.amap = dq.star;
  if (!is_valid_aut(dq.q, s)) fail(Errc::Mismatch, "canonical involution is not an automorphism");
  return s;
}

}  // namespace quivfix
