#include "qlab/workbench/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "qlab/groupoid.hpp"

namespace qlab {
namespace {

// Leaves visited before the search gives up; the corpus never comes close.
constexpr std::uint64_t kMaxSearchNodes = 10'000'000;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t order_signature(const FinSupLattice& l, Elem x) {
  std::uint64_t jis_below = 0;
  for (Elem j : l.join_irreducibles())
    if (l.leq(j, x)) ++jis_below;
  std::uint64_t h = l.down_set(x).count();
  h = mix(h, l.up_set(x).count());
  h = mix(h, jis_below);
  h = mix(h, l.is_join_irreducible(x) ? 1 : 0);
  return h;
}

bool is_order_iso(const FinSupLattice& x, const FinSupLattice& y, const std::vector<Elem>& f) {
  const std::size_t n = x.size();
  if (y.size() != n || f.size() != n) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (Elem v : f) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (x.leq(a, b) != y.leq(f[a], f[b])) return false;
  return true;
}

/// Called after each JI assignment with the index of the newest one; may
/// reject partial assignments early. `img` maps x-elements to y-elements for
/// assigned JIs, kNoElem elsewhere.
using PartialCheck = std::function<bool(std::size_t, const std::vector<Elem>&)>;

struct Search {
  const FinSupLattice& x;
  const FinSupLattice& y;
  const IsoFilter& accept;
  const PartialCheck& partial;
  std::vector<Elem> jx;
  std::vector<std::vector<Elem>> candidates;
  std::vector<Elem> img;
  std::vector<std::uint8_t> used;
  std::uint64_t nodes = 0;
  std::optional<std::vector<Elem>> found;

  std::vector<Elem> extend() const {
    std::vector<Elem> f(x.size());
    for (Elem e = 0; e < x.size(); ++e) {
      Elem acc = y.bottom();
      for (Elem j : jx)
        if (x.leq(j, e)) acc = y.join(acc, img[j]);
      f[e] = acc;
    }
    return f;
  }

  bool run(std::size_t i) {
    if (++nodes > kMaxSearchNodes)
      throw Error(ErrorKind::SizeLimitExceeded, "isomorphism search exceeded " + std::to_string(kMaxSearchNodes) +
                                                    " nodes");
    if (i == jx.size()) {
      auto f = extend();
      if (!is_order_iso(x, y, f)) return false;
      if (accept && !accept(f)) return false;
      found = std::move(f);
      return true;
    }
    const Elem a = jx[i];
    for (Elem b : candidates[i]) {
      if (used[b]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        const Elem c = jx[k];
        ok = x.leq(c, a) == y.leq(img[c], b) && x.leq(a, c) == y.leq(b, img[c]);
      }
      if (!ok) continue;
      img[a] = b;
      used[b] = 1;
      if ((!partial || partial(i, img)) && run(i + 1)) return true;
      img[a] = kNoElem;
      used[b] = 0;
    }
    return false;
  }
};

std::optional<std::vector<Elem>> search(const FinSupLattice& x, const FinSupLattice& y, const IsoFilter& accept,
                                        const Invariant& inv_x, const Invariant& inv_y,
                                        const PartialCheck& partial = {}) {
  if (x.size() != y.size() || x.join_irreducibles().size() != y.join_irreducibles().size()) return std::nullopt;
  {
    std::vector<Elem> id(x.size());
    for (Elem e = 0; e < x.size(); ++e) id[e] = e;
    if (is_order_iso(x, y, id) && (!accept || accept(id))) return id;
  }
  auto sig_x = [&](Elem e) { return mix(order_signature(x, e), inv_x ? inv_x(e) : 0); };
  auto sig_y = [&](Elem e) { return mix(order_signature(y, e), inv_y ? inv_y(e) : 0); };

  Search s{x, y, accept, partial, {}, {}, std::vector<Elem>(x.size(), kNoElem), std::vector<std::uint8_t>(y.size(), 0), 0, std::nullopt};
  for (Elem e : x.linear_order())
    if (x.is_join_irreducible(e)) s.jx.push_back(e);
  for (Elem a : s.jx) {
    const auto sa = sig_x(a);
    std::vector<Elem> c;
    for (Elem b : y.join_irreducibles())
      if (sig_y(b) == sa) c.push_back(b);
    if (c.empty()) return std::nullopt;
    s.candidates.push_back(std::move(c));
  }
  s.run(0);
  return s.found;
}

[[noreturn]] void no_iso(const std::string& what, const std::string& invariant, const std::string& l,
                         const std::string& r) {
  throw Error(ErrorKind::NoIsomorphism, "no isomorphism of " + what + ": " + invariant + " differs",
              {{"invariant", invariant}, {"left", l}, {"right", r}});
}

[[noreturn]] void no_iso(const std::string& what) {
  throw Error(ErrorKind::NoIsomorphism, "no isomorphism of " + what + " exists", {{"invariant", "exhaustive search"}});
}

void compare_lattices(const std::string& what, const FinSupLattice& x, const FinSupLattice& y) {
  if (x.size() != y.size()) no_iso(what, "size", std::to_string(x.size()), std::to_string(y.size()));
  const auto jx = x.join_irreducibles().size(), jy = y.join_irreducibles().size();
  if (jx != jy) no_iso(what, "join-irreducible count", std::to_string(jx), std::to_string(jy));
}

std::uint64_t quantale_invariant(const Quantale& q, Elem x) {
  const auto& l = q.lattice();
  const Elem one = q.one();
  std::uint64_t h = 0;
  h = mix(h, q.mul(x, x) == x);
  h = mix(h, q.star(x) == x);
  h = mix(h, l.leq(q.mul(x, one), x));
  h = mix(h, l.leq(q.mul(one, x), x));
  h = mix(h, q.mul(x, q.star(x)) == q.zero());
  if (q.unit()) h = mix(h, l.leq(x, *q.unit()) ? 2 : 3);
  return h;
}

/// For each x-element, the largest linear-order index of a JI below it, so
/// its image is known once that JI has been assigned.
std::vector<std::size_t> ready_index(const FinSupLattice& x) {
  std::vector<std::size_t> ready(x.size(), 0);
  std::size_t i = 0;
  for (Elem e : x.linear_order()) {
    if (!x.is_join_irreducible(e)) continue;
    for (Elem z = 0; z < x.size(); ++z)
      if (x.leq(e, z)) ready[z] = i;
    ++i;
  }
  return ready;
}

Elem partial_image(const FinSupLattice& x, const FinSupLattice& y, const std::vector<Elem>& img, Elem z) {
  Elem acc = y.bottom();
  for (Elem j : x.join_irreducibles())
    if (x.leq(j, z)) acc = y.join(acc, img[j]);
  return acc;
}

PartialCheck quantale_partial(const Quantale& qx, const Quantale& qy, std::vector<Elem> jx,
                              std::vector<std::size_t> ready) {
  return [&qx, &qy, jx = std::move(jx), ready = std::move(ready)](std::size_t i, const std::vector<Elem>& img) {
    const auto& x = qx.lattice();
    const auto& y = qy.lattice();
    const Elem a = jx[i];
    auto known = [&](Elem z) { return x.is_join_irreducible(z) ? img[z] != kNoElem : ready[z] <= i; };
    auto image = [&](Elem z) { return partial_image(x, y, img, z); };
    if (known(qx.star(a)) && image(qx.star(a)) != qy.star(img[a])) return false;
    for (std::size_t k = 0; k <= i; ++k) {
      const Elem b = jx[k];
      const Elem ab = qx.mul(a, b), ba = qx.mul(b, a);
      if (known(ab) && image(ab) != qy.mul(img[a], img[b])) return false;
      if (known(ba) && image(ba) != qy.mul(img[b], img[a])) return false;
    }
    return true;
  };
}

std::optional<std::vector<Elem>> base_from_dstar(const BasedQuantale& x, const BasedQuantale& y,
                                                 const std::vector<Elem>& f) {
  std::vector<Elem> by_dstar(y.size(), kNoElem);
  for (Elem a = 0; a < y.base().size(); ++a) {
    if (by_dstar[y.dstar(a)] != kNoElem) return std::nullopt;
    by_dstar[y.dstar(a)] = a;
  }
  std::vector<Elem> g(x.base().size());
  for (Elem a = 0; a < x.base().size(); ++a) {
    g[a] = by_dstar[f[x.dstar(a)]];
    if (g[a] == kNoElem) return std::nullopt;
  }
  return g;
}

bool actions_commute(const BasedQuantale& x, const BasedQuantale& y, const std::vector<Elem>& f,
                     const std::vector<Elem>& g) {
  for (Elem a = 0; a < x.base().size(); ++a)
    for (Elem q = 0; q < x.size(); ++q)
      if (f[x.lact(a, q)] != y.lact(g[a], f[q]) || f[x.ract(q, a)] != y.ract(f[q], g[a])) return false;
  return true;
}

}  // namespace

std::optional<std::vector<Elem>> search_lattice_isomorphism(const FinSupLattice& x, const FinSupLattice& y,
                                                            const IsoFilter& accept, const Invariant& inv_x,
                                                            const Invariant& inv_y) {
  return search(x, y, accept, inv_x, inv_y);
}

std::vector<Elem> find_isomorphism(const FinSupLattice& x, const FinSupLattice& y) {
  compare_lattices("lattices", x, y);
  auto f = search(x, y, {}, {}, {});
  if (!f) no_iso("lattices");
  return *f;
}

bool is_quantale_isomorphism(const Quantale& x, const Quantale& y, const std::vector<Elem>& f) {
  if (!is_order_iso(x.lattice(), y.lattice(), f)) return false;
  const std::size_t n = x.size();
  for (Elem a = 0; a < n; ++a) {
    if (f[x.star(a)] != y.star(f[a])) return false;
    for (Elem b = 0; b < n; ++b)
      if (f[x.mul(a, b)] != y.mul(f[a], f[b])) return false;
  }
  return true;
}

namespace {

std::optional<std::vector<Elem>> search_quantale(const Quantale& x, const Quantale& y, const IsoFilter& extra) {
  std::vector<Elem> jx;
  for (Elem e : x.lattice().linear_order())
    if (x.lattice().is_join_irreducible(e)) jx.push_back(e);
  auto partial = quantale_partial(x, y, jx, ready_index(x.lattice()));
  IsoFilter accept = [&](const std::vector<Elem>& f) {
    return is_quantale_isomorphism(x, y, f) && (!extra || extra(f));
  };
  return search(x.lattice(), y.lattice(), accept, [&](Elem e) { return quantale_invariant(x, e); },
                [&](Elem e) { return quantale_invariant(y, e); }, partial);
}

void compare_quantales(const std::string& what, const Quantale& x, const Quantale& y) {
  compare_lattices(what, x.lattice(), y.lattice());
  if (x.unit().has_value() != y.unit().has_value())
    no_iso(what, "unit presence", x.unit() ? "unital" : "non-unital", y.unit() ? "unital" : "non-unital");
}

}  // namespace

Isomorphism find_isomorphism(const Quantale& x, const Quantale& y) {
  compare_quantales("quantales", x, y);
  auto f = search_quantale(x, y, {});
  if (!f) no_iso("quantales");
  return {std::move(*f), {}};
}

bool is_based_isomorphism(const BasedQuantale& x, const BasedQuantale& y, const Isomorphism& iso) {
  if (!is_quantale_isomorphism(x.quantale(), y.quantale(), iso.carrier)) return false;
  if (!is_order_iso(x.base(), y.base(), iso.base)) return false;
  return actions_commute(x, y, iso.carrier, iso.base);
}

Isomorphism find_isomorphism(const BasedQuantale& x, const BasedQuantale& y) {
  compare_quantales("based quantales", x.quantale(), y.quantale());
  compare_lattices("bases", x.base(), y.base());
  std::vector<Elem> base;
  IsoFilter accept = [&](const std::vector<Elem>& f) {
    if (auto g = base_from_dstar(x, y, f); g && is_order_iso(x.base(), y.base(), *g) && actions_commute(x, y, f, *g)) {
      base = std::move(*g);
      return true;
    }
    auto g = search(x.base(), y.base(), [&](const std::vector<Elem>& g) { return actions_commute(x, y, f, g); }, {},
                    {});
    if (!g) return false;
    base = std::move(*g);
    return true;
  };
  auto f = search_quantale(x.quantale(), y.quantale(), accept);
  if (!f) no_iso("based quantales");
  return {std::move(*f), std::move(base)};
}

bool is_groupoid_isomorphism(const LocalicGroupoid& x, const LocalicGroupoid& y, const Isomorphism& iso) {
  const auto& f = iso.carrier;
  const auto& g = iso.base;
  if (!is_order_iso(x.o1(), y.o1(), f) || !is_order_iso(x.o0(), y.o0(), g)) return false;
  for (Elem a = 0; a < x.o0().size(); ++a) {
    if (f[x.dstar(a)] != y.dstar(g[a]) || f[x.rstar(a)] != y.rstar(g[a])) return false;
  }
  for (Elem q = 0; q < x.o1().size(); ++q) {
    if (g[x.ustar(q)] != y.ustar(f[q]) || f[x.istar(q)] != y.istar(f[q])) return false;
    const Rows& rx = x.mstar[q];
    const Rows& ry = y.mstar[f[q]];
    for (Elem b = 0; b < x.o1().size(); ++b)
      if (f[rx[b]] != ry[f[b]]) return false;
  }
  return true;
}

Isomorphism find_isomorphism(const LocalicGroupoid& x, const LocalicGroupoid& y) {
  compare_lattices("arrow locales", x.o1(), y.o1());
  compare_lattices("object locales", x.o0(), y.o0());
  std::vector<Elem> base;
  // d* is injective (u* d* = id), so the object map is forced by the arrow map.
  IsoFilter accept = [&](const std::vector<Elem>& f) {
    std::vector<Elem> by_dstar(y.o1().size(), kNoElem);
    for (Elem a = 0; a < y.o0().size(); ++a) by_dstar[y.dstar(a)] = a;
    std::vector<Elem> g(x.o0().size());
    for (Elem a = 0; a < x.o0().size(); ++a) {
      g[a] = by_dstar[f[x.dstar(a)]];
      if (g[a] == kNoElem) return false;
    }
    if (!is_groupoid_isomorphism(x, y, {f, g})) return false;
    base = std::move(g);
    return true;
  };
  auto inv = [](const LocalicGroupoid& g) {
    return [&g](Elem e) {
      std::uint64_t h = mix(0, g.istar(e) == e);
      h = mix(h, g.dstar(g.ustar(e)) == e);
      h = mix(h, g.ustar(e) == g.o0().top());
      return h;
    };
  };
  auto f = search(x.o1(), y.o1(), accept, inv(x), inv(y));
  if (!f) no_iso("localic groupoids");
  return {std::move(*f), std::move(base)};
}

}  // namespace qlab
