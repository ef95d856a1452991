#include "qlab/groupoid.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <bit>
#include <string>

#include "qlab/check.hpp"

namespace qlab {
namespace {

[[noreturn]] void bad_group(const std::string& what, Witness w = {}) {
  throw Error(ErrorKind::BadGroupTable, what, std::move(w));
}

std::string arrow_name(const SetGroupoid& g, Elem a) {
  return a < g.arrow_names.size() ? g.arrow_names[a] : std::to_string(a);
}

bool all_passed(const std::vector<CheckResult>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const CheckResult& c) { return c.passed || c.skipped; });
}

const CheckResult* first_failure(const std::vector<CheckResult>& cs) {
  for (const auto& c : cs)
    if (!c.passed && !c.skipped) return &c;
  return nullptr;
}

/// Joins the pure tensors x (x) y of `pairs` with one closure.
template <class Pairs>
Rows join_pures(const TensorSpace& sp, const Pairs& pairs) {
  Rows f = sp.bottom();
  for (auto [x, y] : pairs) f[y] = sp.left().join(f[y], x);
  return sp.close(std::move(f));
}

bool bijective(const Map& f) {
  if (f.source().size() != f.target().size()) return false;
  std::vector<std::uint8_t> hit(f.target().size(), 0);
  for (Elem v : f.values()) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

std::size_t groupoid_checksum(const LocalicGroupoid& g) {
  std::size_t h = 0;
  for (const Map* m : {static_cast<const Map*>(&g.dstar), static_cast<const Map*>(&g.rstar),
                       static_cast<const Map*>(&g.ustar), static_cast<const Map*>(&g.istar)})
    boost::hash_combine(h, boost::hash_range(m->values().begin(), m->values().end()));
  for (const auto& r : g.mstar) boost::hash_combine(h, RowsHash{}(r));
  return h;
}

void require_lattice(const FinSupLattice& expected, const FinSupLattice& got, const char* what) {
  if (&expected != &got && !expected.same_as(got))
    throw Error(ErrorKind::BadTable, std::string(what) + " does not match the given frames");
}

/// (j, k) join-irreducible pairs below an element of a tensor carrier.
std::vector<std::pair<Elem, Elem>> generators(const TensorLattice& t, Elem e) {
  const auto& l = t.space().left();
  const auto& m = t.space().right();
  std::vector<std::pair<Elem, Elem>> out;
  const Rows& r = t.rows(e);
  for (Elem k : m.join_irreducibles())
    for (Elem j : l.join_irreducibles())
      if (l.leq(j, r[k])) out.emplace_back(j, k);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Set groupoids

void SetGroupoid::validate() const {
  const std::size_t n = arrows.size();
  if (objects == 0) bad_group("a groupoid needs at least one object");
  if (objects > kMaxSetPoints || n > kMaxSetPoints)
    throw Error(ErrorKind::SizeLimitExceeded,
                "set groupoids are limited to " + std::to_string(kMaxSetPoints) + " objects and arrows");
  if (identity.size() != objects || inverse.size() != n || compose.size() != n * n)
    bad_group("groupoid table has the wrong size");
  for (Elem g = 0; g < n; ++g)
    if (arrows[g].d >= objects || arrows[g].r >= objects || inverse[g] >= n)
      bad_group("arrow data out of range", {{"g", arrow_name(*this, g)}});
  for (Elem x = 0; x < objects; ++x) {
    const Elem i = identity[x];
    if (i >= n || arrows[i].d != x || arrows[i].r != x) bad_group("identity is not a loop at its object");
  }
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h) {
      const Elem gh = then(g, h);
      const bool composable = arrows[g].r == arrows[h].d;
      if (composable != (gh != kNoElem) || (composable && gh >= n))
        bad_group("composition defined exactly on pairs with r(g) = d(h)",
                  {{"g", arrow_name(*this, g)}, {"h", arrow_name(*this, h)}});
      if (composable && (arrows[gh].d != arrows[g].d || arrows[gh].r != arrows[h].r))
        bad_group("composite has the wrong endpoints", {{"g", arrow_name(*this, g)}, {"h", arrow_name(*this, h)}});
    }
  for (Elem g = 0; g < n; ++g) {
    const auto [d, r] = arrows[g];
    if (then(identity[d], g) != g || then(g, identity[r]) != g)
      bad_group("identities are not neutral", {{"g", arrow_name(*this, g)}});
    const Elem gi = inverse[g];
    if (arrows[gi].d != r || arrows[gi].r != d || then(g, gi) != identity[d] || then(gi, g) != identity[r])
      bad_group("inverse law fails", {{"g", arrow_name(*this, g)}});
    for (Elem h = 0; h < n; ++h) {
      if (arrows[h].d != r) continue;
      for (Elem k = 0; k < n; ++k)
        if (arrows[k].d == arrows[h].r && then(then(g, h), k) != then(g, then(h, k)))
          bad_group("composition is not associative",
                    {{"g", arrow_name(*this, g)}, {"h", arrow_name(*this, h)}, {"k", arrow_name(*this, k)}});
    }
  }
}

SetGroupoid pair_set_groupoid(std::size_t n) {
  if (n == 0 || n * n > kMaxSetPoints) throw Error(ErrorKind::SizeLimitExceeded, "pair groupoid too large");
  SetGroupoid g;
  g.objects = n;
  auto id = [n](std::size_t x, std::size_t y) { return static_cast<Elem>(x * n + y); };
  for (std::size_t x = 0; x < n; ++x) {
    g.object_names.push_back(std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) {
      g.arrows.push_back({static_cast<Elem>(x), static_cast<Elem>(y)});
      g.arrow_names.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
      g.inverse.push_back(id(y, x));
    }
    g.identity.push_back(id(x, x));
  }
  g.compose.assign(n * n * n * n, kNoElem);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) g.compose[static_cast<std::size_t>(id(x, y)) * n * n + id(y, z)] = id(x, z);
  g.validate();
  return g;
}

SetGroupoid group_set_groupoid(const std::vector<std::vector<Elem>>& table) {
  const std::size_t k = table.size();
  if (k == 0) bad_group("empty group table");
  SetGroupoid g;
  g.objects = 1;
  g.object_names = {"*"};
  for (std::size_t a = 0; a < k; ++a) {
    if (table[a].size() != k) bad_group("group table is not square");
    g.arrows.push_back({0, 0});
    g.arrow_names.push_back(std::to_string(a));
    for (Elem v : table[a])
      if (v >= k) bad_group("group table value out of range");
  }
  std::optional<Elem> e;
  for (Elem a = 0; a < k && !e; ++a) {
    bool neutral = true;
    for (Elem x = 0; x < k; ++x) neutral = neutral && table[a][x] == x && table[x][a] == x;
    if (neutral) e = a;
  }
  if (!e) bad_group("group table has no identity");
  g.identity = {*e};
  for (Elem a = 0; a < k; ++a) {
    Elem inv = kNoElem;
    for (Elem b = 0; b < k; ++b)
      if (table[a][b] == *e && table[b][a] == *e) inv = b;
    if (inv == kNoElem) bad_group("element without inverse", {{"g", std::to_string(a)}});
    g.inverse.push_back(inv);
  }
  g.compose.resize(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) g.compose[a * k + b] = table[a][b];
  g.validate();
  return g;
}

SetGroupoid cyclic_set_groupoid(std::size_t k) {
  std::vector<std::vector<Elem>> table(k, std::vector<Elem>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) table[a][b] = static_cast<Elem>((a + b) % k);
  return group_set_groupoid(table);
}

SetGroupoid partition_set_groupoid(const std::vector<std::vector<Elem>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  std::vector<Elem> block_of(n, kNoElem);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (Elem x : blocks[i]) {
      if (x >= n || block_of[x] != kNoElem) bad_group("blocks do not partition 0..n-1");
      block_of[x] = static_cast<Elem>(i);
    }
  SetGroupoid g;
  g.objects = n;
  std::vector<Elem> index(n * n, kNoElem);
  for (Elem x = 0; x < n; ++x) {
    g.object_names.push_back(std::to_string(x));
    for (Elem y = 0; y < n; ++y)
      if (block_of[x] == block_of[y]) {
        index[x * n + y] = static_cast<Elem>(g.arrows.size());
        g.arrows.push_back({x, y});
        g.arrow_names.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
  }
  if (g.arrows.size() > kMaxSetPoints) throw Error(ErrorKind::SizeLimitExceeded, "partition groupoid too large");
  for (Elem x = 0; x < n; ++x) g.identity.push_back(index[x * n + x]);
  const std::size_t m = g.arrows.size();
  g.compose.assign(m * m, kNoElem);
  for (Elem a = 0; a < m; ++a) {
    const auto [x, y] = g.arrows[a];
    g.inverse.push_back(index[y * n + x]);
    for (Elem b = 0; b < m; ++b)
      if (g.arrows[b].d == y) g.compose[a * m + b] = index[x * n + g.arrows[b].r];
  }
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Localic groupoids

bool GroupoidReport::ok() const { return all_passed(diagrams); }

const CheckResult* GroupoidReport::find(std::string_view name) const {
  for (const auto& c : diagrams)
    if (c.name == name) return &c;
  return nullptr;
}

std::shared_ptr<const TensorSpace> composable_pairs(const FrameHom& dstar, const FrameHom& rstar) {
  return std::make_shared<const TensorSpace>(rstar.target_ptr(), dstar.target_ptr(), meet_actions(rstar, dstar));
}

namespace {

void associativity(const LocalicGroupoid& g, std::size_t materialize_pairs, std::vector<CheckResult>& out) {
  const auto& o1 = g.o1();
  const std::size_t n1 = o1.size();
  if (n1 * n1 > materialize_pairs) {
    out.push_back(skipped_check("associativity", "size: |O1|^2 = " + std::to_string(n1 * n1) + " exceeds " +
                                                     std::to_string(materialize_pairs)));
    return;
  }
  std::optional<TensorLattice> o2;
  try {
    o2 = TensorLattice::materialize(*g.pairs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeLimitExceeded) throw;
    out.push_back(skipped_check("associativity", std::string("size: ") + e.what()));
    return;
  }
  // O3 = O2 (x)_{O0} O1: O0 acts on O2 through the range of its right leg and
  // on O1 through the domain.
  const auto& o0 = g.o0();
  const auto& c2 = o2->carrier();
  const std::size_t n0 = o0.size(), n2 = o2->size();
  std::vector<Elem> la(n2 * n0), ra(n0 * n1);
  for (Elem c = 0; c < n0; ++c) {
    const Elem restrict = o2->pure(o1.top(), g.rstar(c));
    for (Elem z = 0; z < n2; ++z) la[static_cast<std::size_t>(z) * n0 + c] = c2.meet(z, restrict);
    for (Elem y = 0; y < n1; ++y) ra[static_cast<std::size_t>(c) * n1 + y] = o1.meet(g.dstar(c), y);
  }
  const TensorSpace o3(o2->carrier_ptr(), g.arrows.ptr(), BaseAction{g.objects.ptr(), std::move(la), std::move(ra)});
  out.push_back(scan_check(
      "associativity", n1,
      [&](std::uint64_t i) {
        const Rows& f = g.mstar[i];
        std::vector<std::pair<Elem, Elem>> lhs, rhs;
        for (Elem y : o1.join_irreducibles()) {
          lhs.emplace_back(o2->element(g.mstar[f[y]]), y);
          const Rows& gy = g.mstar[y];
          for (Elem q : o1.join_irreducibles()) rhs.emplace_back(o2->pure(f[y], gy[q]), q);
        }
        return join_pures(o3, lhs) != join_pures(o3, rhs);
      },
      [&](std::uint64_t i) { return Witness{{"a", o1.label(static_cast<Elem>(i))}}; }));
}

}  // namespace

BuiltGroupoid build_localic_groupoid(Frame o0, Frame o1, FrameHom dstar, FrameHom rstar, FrameHom ustar,
                                     FrameHom istar, std::vector<Rows> mstar, std::size_t materialize_pairs) {
  const auto& l0 = o0.lattice();
  const auto& l1 = o1.lattice();
  require_lattice(l0, dstar.source(), "d* source");
  require_lattice(l1, dstar.target(), "d* target");
  require_lattice(l0, rstar.source(), "r* source");
  require_lattice(l1, rstar.target(), "r* target");
  require_lattice(l1, ustar.source(), "u* source");
  require_lattice(l0, ustar.target(), "u* target");
  require_lattice(l1, istar.source(), "i* source");
  require_lattice(l1, istar.target(), "i* target");
  const std::size_t n0 = l0.size(), n1 = l1.size();

  BuiltGroupoid out{LocalicGroupoid{std::move(o0), std::move(o1), std::move(dstar), std::move(rstar), std::move(ustar),
                                    std::move(istar), nullptr, std::move(mstar), 0},
                    {}};
  auto& g = out.groupoid;
  g.pairs = composable_pairs(g.dstar, g.rstar);
  const TensorSpace& sp = *g.pairs;
  if (g.mstar.size() != n1) throw Error(ErrorKind::BadTable, "m* needs one row map per element of O1");
  for (Elem a = 0; a < n1; ++a) {
    if (g.mstar[a].size() != n1) throw Error(ErrorKind::BadTable, "m* row map has the wrong length");
    for (Elem v : g.mstar[a])
      if (v >= n1) throw Error(ErrorKind::BadTable, "m* value out of range");
    if (!sp.is_closed(g.mstar[a]))
      throw Error(ErrorKind::BadTable, "m* value is not an element of the composable-pairs frame", {{"a", l1.label(a)}});
  }
  g.checksum = groupoid_checksum(g);

  auto& ds = out.report.diagrams;
  auto w1 = [&](std::uint64_t i) { return Witness{{"a", l1.label(static_cast<Elem>(i))}}; };
  auto w0 = [&](std::uint64_t i) { return Witness{{"a", l0.label(static_cast<Elem>(i))}}; };

  ds.push_back(scan_check("involution-involutive", n1, [&](std::uint64_t a) { return g.istar(g.istar(a)) != a; }, w1));
  ds.push_back(scan_check("inverse-swaps-domain-range", n0,
                          [&](std::uint64_t a) { return g.istar(g.dstar(a)) != g.rstar(a); }, w0));
  ds.push_back(scan_check("inverse-fixes-units", n1,
                          [&](std::uint64_t a) { return g.ustar(g.istar(a)) != g.ustar(a); }, w1));
  ds.push_back(scan_check("unit-domain-section", n0, [&](std::uint64_t a) { return g.ustar(g.dstar(a)) != a; }, w0));
  ds.push_back(scan_check("unit-range-section", n0, [&](std::uint64_t a) { return g.ustar(g.rstar(a)) != a; }, w0));

  out.report.d_open = check_open_map(g.dstar);
  ds.push_back(flag_check("domain-open", out.report.d_open.open, out.report.d_open.witness));

  // m* is a frame homomorphism: bottom, top, and (O1 being distributive)
  // joins of lower-cover pairs and meets of upper-cover pairs.
  {
    std::vector<Witness> ws;
    std::uint64_t bad = 0;
    auto fail = [&](Witness w) {
      if (bad++ == 0) ws.push_back(std::move(w));
    };
    if (g.mstar[l1.bottom()] != sp.bottom()) fail({{"a", l1.label(l1.bottom())}});
    if (g.mstar[l1.top()] != sp.top()) fail({{"a", l1.label(l1.top())}});
    for (Elem p = 0; p < n1; ++p) {
      const auto lc = l1.lower_covers(p);
      if (lc.size() >= 2 && sp.join(g.mstar[lc[0]], g.mstar[lc[1]]) != g.mstar[p])
        fail({{"a", l1.label(lc[0])}, {"b", l1.label(lc[1])}, {"a∨b", l1.label(p)}});
      const auto uc = l1.upper_covers(p);
      if (uc.size() >= 2 && sp.meet(g.mstar[uc[0]], g.mstar[uc[1]]) != g.mstar[p])
        fail({{"a", l1.label(uc[0])}, {"b", l1.label(uc[1])}, {"a∧b", l1.label(p)}});
    }
    CheckResult c = flag_check("multiplication-frame-hom", bad == 0, ws.empty() ? Witness{} : ws.front());
    c.violations = bad;
    ds.push_back(std::move(c));
  }

  ds.push_back(scan_check(
      "multiplication-domain", n0,
      [&](std::uint64_t a) { return g.mstar[g.dstar(a)] != sp.pure(g.dstar(a), l1.top()); }, w0));
  ds.push_back(scan_check(
      "multiplication-range", n0,
      [&](std::uint64_t a) { return g.mstar[g.rstar(a)] != sp.pure(l1.top(), g.rstar(a)); }, w0));

  auto law = [&](const char* name, auto&& lhs_of, auto&& rhs_of) {
    ds.push_back(scan_check(
        name, n1,
        [&](std::uint64_t i) {
          const Rows& f = g.mstar[i];
          Elem acc = l1.bottom();
          for (Elem y = 0; y < n1; ++y) acc = l1.join(acc, lhs_of(f, y));
          return acc != rhs_of(static_cast<Elem>(i));
        },
        w1));
  };
  law("left-unit-law", [&](const Rows& f, Elem y) { return l1.meet(g.dstar(g.ustar(f[y])), y); },
      [](Elem a) { return a; });
  law("right-unit-law", [&](const Rows& f, Elem y) { return l1.meet(f[y], g.rstar(g.ustar(y))); },
      [](Elem a) { return a; });
  law("right-inverse-law", [&](const Rows& f, Elem y) { return l1.meet(f[y], g.istar(y)); },
      [&](Elem a) { return g.dstar(g.ustar(a)); });
  law("left-inverse-law", [&](const Rows& f, Elem y) { return l1.meet(g.istar(f[y]), y); },
      [&](Elem a) { return g.rstar(g.ustar(a)); });

  ds.push_back(scan_check(
      "multiplication-involution", n1,
      [&](std::uint64_t i) {
        const Rows& f = g.mstar[i];
        std::vector<std::pair<Elem, Elem>> ps;
        for (Elem y : l1.join_irreducibles()) ps.emplace_back(g.istar(y), g.istar(f[y]));
        return join_pures(sp, ps) != g.mstar[g.istar(static_cast<Elem>(i))];
      },
      w1));

  associativity(g, materialize_pairs, ds);
  return out;
}

BuiltGroupoid compile(const SetGroupoid& sg, std::size_t materialize_pairs) {
  sg.validate();
  const std::size_t n0 = sg.objects, n1 = sg.arrows.size();
  auto p0 = FinSupLattice::powerset(n0, sg.object_names);
  auto p1 = FinSupLattice::powerset(n1, sg.arrow_names);
  const std::size_t s0 = p0->size(), s1 = p1->size();

  std::vector<Elem> dv(s0), rv(s0), uv(s1), iv(s1);
  for (Elem u = 0; u < s0; ++u) {
    Elem dm = 0, rm = 0;
    for (Elem g = 0; g < n1; ++g) {
      if (u >> sg.arrows[g].d & 1) dm |= Elem{1} << g;
      if (u >> sg.arrows[g].r & 1) rm |= Elem{1} << g;
    }
    dv[u] = dm;
    rv[u] = rm;
  }
  for (Elem v = 0; v < s1; ++v) {
    Elem um = 0, im = 0;
    for (Elem x = 0; x < n0; ++x)
      if (v >> sg.identity[x] & 1) um |= Elem{1} << x;
    for (Elem g = 0; g < n1; ++g)
      if (v >> sg.inverse[g] & 1) im |= Elem{1} << g;
    uv[v] = um;
    iv[v] = im;
  }

  // m*(W)(y) = {g | gh in W for every composable h in y}.
  std::vector<Rows> mstar(s1, Rows(s1));
  for (Elem w = 0; w < s1; ++w) {
    std::vector<Elem> good(n1);
    for (Elem h = 0; h < n1; ++h) {
      Elem m = 0;
      for (Elem g = 0; g < n1; ++g) {
        const Elem gh = sg.then(g, h);
        if (gh == kNoElem || (w >> gh & 1)) m |= Elem{1} << g;
      }
      good[h] = m;
    }
    Rows& f = mstar[w];
    f[0] = static_cast<Elem>(s1 - 1);
    for (Elem y = 1; y < s1; ++y) {
      const Elem low = y & (~y + 1);
      f[y] = f[y & ~low] & good[std::countr_zero(low)];
    }
  }

  return build_localic_groupoid(Frame(p0), Frame(p1), FrameHom(Map(p0, p1, std::move(dv))),
                                FrameHom(Map(p0, p1, std::move(rv))), FrameHom(Map(p1, p0, std::move(uv))),
                                FrameHom(Map(p1, p1, std::move(iv))), std::move(mstar), materialize_pairs);
}

// ---------------------------------------------------------------------------
// Quantale <-> groupoid

GroupoidQuantale certify_groupoid_quantale(const BasedQuantale& b, const JoinMap* sigma, const Map& upsilon) {
  GroupoidQuantaleReport r = is_groupoid_quantale(b, sigma, &upsilon);
  if (!r.all() || !all_passed(r.checks)) {
    const CheckResult* c = first_failure(r.checks);
    throw Error(ErrorKind::DiagramFailure,
                "not a groupoid quantale: " + (c ? c->name + (c->note.empty() ? "" : " (" + c->note + ")") : "?"),
                c ? c->witness : Witness{});
  }
  return {b, std::move(r)};
}

BuiltGroupoid groupoid_from_quantale(const GroupoidQuantale& gq, std::size_t materialize_pairs) {
  const BasedQuantale& b = gq.based;
  const auto& q = b.quantale();
  const std::size_t n = b.size(), na = b.base().size();
  std::vector<Elem> dv(na), rv(na), iv(n);
  for (Elem a = 0; a < na; ++a) {
    dv[a] = b.dstar(a);
    rv[a] = b.rstar(a);
  }
  for (Elem x = 0; x < n; ++x) iv[x] = b.star(x);
  std::vector<Rows> mstar(n, Rows(n));
  for (Elem p = 0; p < n; ++p)
    for (Elem y = 0; y < n; ++y) mstar[p][y] = q.left_residual(y, p);

  const auto& A = b.base_ptr();
  const auto& Q = b.lattice_ptr();
  BuiltGroupoid out = build_localic_groupoid(Frame(A), Frame(Q), FrameHom(Map(A, Q, std::move(dv))),
                                             FrameHom(Map(A, Q, std::move(rv))), gq.upsilon(),
                                             FrameHom(Map(Q, Q, std::move(iv))), std::move(mstar), materialize_pairs);
  if (const CheckResult* c = first_failure(out.report.diagrams))
    throw Error(ErrorKind::DiagramFailure, "groupoid of a groupoid quantale fails diagram " + c->name, c->witness);
  const auto& dshriek = out.report.d_open.direct_image;
  const auto& sigma = gq.support().sigma;
  for (Elem x = 0; x < n; ++x)
    if (!dshriek || (*dshriek)(x) != sigma(x))
      throw Error(ErrorKind::DiagramFailure, "direct image of d differs from the support",
                  {{"x", b.lattice().label(x)},
                   {"d_!(x)", dshriek ? b.base().label((*dshriek)(x)) : "undefined"},
                   {"ς(x)", b.base().label(sigma(x))}});
  return out;
}

GroupoidQuantale quantale_from_groupoid(const LocalicGroupoid& g) {
  const OpenMapReport open = check_open_map(g.dstar);
  if (!open.open) throw Error(ErrorKind::NotOpen, "the domain map is not open", open.witness);
  const auto& l1 = g.o1();
  const auto& l0 = g.o0();
  const std::size_t n = l1.size(), n0 = l0.size();

  // ab = m_!(a (x) b), the least q with a (x) b <= m*(q); computed on
  // join-irreducible pairs and extended by joins of lower covers.
  std::vector<Elem> mult(n * n, l1.bottom());
  auto at = [&](Elem a, Elem b) -> Elem& { return mult[static_cast<std::size_t>(a) * n + b]; };
  auto shriek = [&](Elem a, Elem b) {
    Elem acc = l1.top();
    for (Elem q = 0; q < n; ++q)
      if (l1.leq(a, g.mstar[q][b])) acc = l1.meet(acc, q);
    if (!l1.leq(a, g.mstar[acc][b]))
      throw Error(ErrorKind::DiagramFailure, "m* does not preserve meets", {{"a", l1.label(a)}, {"b", l1.label(b)}});
    return acc;
  };
  auto extend = [&](Elem z, auto&& value_of_cover_join) {
    if (z == l1.bottom()) return l1.bottom();
    const auto lc = l1.lower_covers(z);
    return value_of_cover_join(lc[0], lc[1]);
  };
  for (Elem a : l1.join_irreducibles())
    for (Elem b : l1.linear_order())
      at(a, b) = l1.is_join_irreducible(b)
                     ? shriek(a, b)
                     : extend(b, [&](Elem c1, Elem c2) { return l1.join(at(a, c1), at(a, c2)); });
  for (Elem a : l1.linear_order()) {
    if (l1.is_join_irreducible(a)) continue;
    for (Elem b = 0; b < n; ++b) at(a, b) = extend(a, [&](Elem c1, Elem c2) { return l1.join(at(c1, b), at(c2, b)); });
  }
  std::vector<Elem> inv(g.istar.values().begin(), g.istar.values().end());
  Quantale q = Quantale::build(g.arrows.ptr(), std::move(mult), std::move(inv));

  std::vector<Elem> lact(n0 * n), ract(n * n0);
  for (Elem c = 0; c < n0; ++c)
    for (Elem x = 0; x < n; ++x) {
      lact[static_cast<std::size_t>(c) * n + x] = l1.meet(g.dstar(c), x);
      ract[static_cast<std::size_t>(x) * n0 + c] = l1.meet(x, g.rstar(c));
    }
  BasedQuantale b = BasedQuantale::build(std::move(q), g.objects.ptr(), std::move(lact), std::move(ract));
  return certify_groupoid_quantale(b, &*open.direct_image, g.ustar);
}

GroupoidRoundTrip roundtrip_check(const LocalicGroupoid& g) {
  GroupoidQuantale q = quantale_from_groupoid(g);
  BuiltGroupoid back = groupoid_from_quantale(q);
  Isomorphism iso = find_isomorphism(g, back.groupoid);
  return {std::move(back), std::move(q), std::move(iso)};
}

GroupoidRoundTrip roundtrip_check(const GroupoidQuantale& q) {
  BuiltGroupoid g = groupoid_from_quantale(q);
  GroupoidQuantale back = quantale_from_groupoid(g.groupoid);
  Isomorphism iso = find_isomorphism(q.based, back.based);
  return {std::move(g), std::move(back), std::move(iso)};
}

// ---------------------------------------------------------------------------
// Pair groupoids

PairGroupoid pair_groupoid(const GroupoidQuantale& gq, std::size_t bound) {
  const BasedQuantale& b = gq.based;
  const auto& l = b.lattice();
  const auto& Q = b.lattice_ptr();
  const std::size_t n = b.size(), na = b.base().size();
  const JoinMap& sigma = gq.support().sigma;

  // Q (x)_A Q, the kernel pair of d: A restricts domains on both factors.
  BaseAction act{b.base_ptr(), std::vector<Elem>(n * na), std::vector<Elem>(na * n)};
  for (Elem x = 0; x < n; ++x)
    for (Elem a = 0; a < na; ++a) {
      act.left_act[static_cast<std::size_t>(x) * na + a] = b.lact(a, x);
      act.right_act[static_cast<std::size_t>(a) * n + x] = b.lact(a, x);
    }
  TensorLattice k = TensorLattice::materialize(TensorSpace(Q, Q, std::move(act)), bound);
  const auto& kl = k.carrier();
  const std::size_t nk = k.size();
  std::vector<std::vector<std::pair<Elem, Elem>>> gens(nk);
  for (Elem e = 0; e < nk; ++e) gens[e] = generators(k, e);
  auto join_over = [&](Elem e, auto&& value) {
    Elem acc = kl.bottom();
    for (auto [x, y] : gens[e]) acc = kl.join(acc, value(x, y));
    return acc;
  };

  // (x (x) y)(z (x) w) = (sigma(y ^ z).x) (x) w, extended by joins.
  std::vector<Elem> mult(nk * nk), inv(nk), lact(n * nk), ract(nk * n), sig(nk), ups(nk);
  for (Elem e = 0; e < nk; ++e)
    for (Elem f = 0; f < nk; ++f) {
      Elem acc = kl.bottom();
      for (auto [x, y] : gens[e])
        for (auto [z, w] : gens[f]) acc = kl.join(acc, k.pure(b.lact(sigma(l.meet(y, z)), x), w));
      mult[static_cast<std::size_t>(e) * nk + f] = acc;
    }
  for (Elem e = 0; e < nk; ++e) {
    inv[e] = join_over(e, [&](Elem x, Elem y) { return k.pure(y, x); });
    for (Elem z = 0; z < n; ++z) {
      lact[static_cast<std::size_t>(z) * nk + e] = join_over(e, [&](Elem x, Elem y) { return k.pure(l.meet(x, z), y); });
      ract[static_cast<std::size_t>(e) * n + z] = join_over(e, [&](Elem x, Elem y) { return k.pure(x, l.meet(y, z)); });
    }
    Elem s = l.bottom(), u = l.bottom();
    for (auto [x, y] : gens[e]) {
      s = l.join(s, b.lact(sigma(y), x));
      u = l.join(u, l.meet(x, y));
    }
    sig[e] = s;
    ups[e] = u;
  }
  Quantale pq = Quantale::build(k.carrier_ptr(), std::move(mult), std::move(inv));

  // The product formula must hold on all pure tensors, not only the generators.
  CheckResult formula;
  if (n * n * n * n <= 10'000'000) {
    formula = scan_check(
        "pair-product-formula", std::uint64_t{n} * n * n * n,
        [&](std::uint64_t i) {
          const Elem x = static_cast<Elem>(i / (n * n * n)), y = static_cast<Elem>(i / (n * n) % n);
          const Elem z = static_cast<Elem>(i / n % n), w = static_cast<Elem>(i % n);
          return pq.mul(k.pure(x, y), k.pure(z, w)) != k.pure(b.lact(sigma(l.meet(y, z)), x), w);
        },
        [&](std::uint64_t i) {
          const Elem x = static_cast<Elem>(i / (n * n * n)), y = static_cast<Elem>(i / (n * n) % n);
          const Elem z = static_cast<Elem>(i / n % n), w = static_cast<Elem>(i % n);
          return Witness{{"x", l.label(x)}, {"y", l.label(y)}, {"z", l.label(z)}, {"w", l.label(w)}};
        });
  } else {
    formula = skipped_check("pair-product-formula", "size: |Q|^4 exceeds 10^7");
  }

  BasedQuantale pb = BasedQuantale::build(std::move(pq), Q, std::move(lact), std::move(ract));
  const JoinMap sig_hat = build_join_map(k.carrier_ptr(), Q, std::move(sig));
  GroupoidQuantale quantale = certify_groupoid_quantale(pb, &sig_hat, Map(k.carrier_ptr(), Q, std::move(ups)));
  quantale.report.checks.push_back(formula);
  if (!formula.passed)
    throw Error(ErrorKind::DiagramFailure, "pair product formula is not well defined", formula.witness);

  // Groupoid side: G1 x_{G0} G1 over G1, built from the groupoid of Q.
  BuiltGroupoid base_groupoid = groupoid_from_quantale(gq);
  const LocalicGroupoid& g = base_groupoid.groupoid;
  TensorLattice k2 = TensorLattice::materialize(TensorSpace(Q, Q, meet_actions(g.dstar, g.dstar)), bound);
  const auto& k2l = k2.carrier();
  const auto& K2 = k2.carrier_ptr();
  const std::size_t n2 = k2.size();
  std::vector<Elem> dv(n), rv(n), uv(n2), iv(n2);
  for (Elem x = 0; x < n; ++x) {
    dv[x] = k2.pure(x, l.top());
    rv[x] = k2.pure(l.top(), x);
  }
  for (Elem e = 0; e < n2; ++e) {
    Elem u = l.bottom(), t = k2l.bottom();
    for (auto [x, y] : generators(k2, e)) {
      u = l.join(u, l.meet(x, y));
      t = k2l.join(t, k2.pure(y, x));
    }
    uv[e] = u;
    iv[e] = t;
  }
  FrameHom dhat(Map(Q, K2, std::move(dv))), rhat(Map(Q, K2, std::move(rv)));
  auto pairs2 = composable_pairs(dhat, rhat);
  std::vector<Rows> mstar(n2);
  for (Elem e = 0; e < n2; ++e) {
    const Rows& f = k2.rows(e);
    std::vector<std::pair<Elem, Elem>> ps;
    for (Elem y : l.join_irreducibles()) ps.emplace_back(k2.pure(f[y], l.top()), k2.pure(l.top(), y));
    mstar[e] = join_pures(*pairs2, ps);
  }
  BuiltGroupoid pg = build_localic_groupoid(Frame(Q), Frame(K2), std::move(dhat), std::move(rhat),
                                            FrameHom(Map(K2, Q, std::move(uv))), FrameHom(Map(K2, K2, std::move(iv))),
                                            std::move(mstar));
  if (const CheckResult* c = first_failure(pg.report.diagrams))
    throw Error(ErrorKind::DiagramFailure, "pair groupoid fails diagram " + c->name, c->witness);
  GroupoidQuantale from_groupoid = quantale_from_groupoid(pg.groupoid);
  Isomorphism iso = find_isomorphism(quantale.based, from_groupoid.based);
  return {std::move(k), std::move(quantale), std::move(pg), std::move(from_groupoid), std::move(iso)};
}

// ---------------------------------------------------------------------------
// Effective equivalence relations

EffectivenessReport check_effective_equivalence(const LocalicGroupoid& g, std::size_t bound) {
  EffectivenessReport r;
  const Subframe e = equalizer_subframe(g.dstar, g.rstar);
  r.orbit = e.sub.elements;
  const FramePushout p = frame_pushout(e.inclusion, e.inclusion, bound);
  r.kernel_pair_size = p.tensor.size();
  const auto& o0 = g.o0();
  const auto& o1 = g.o1();
  std::vector<Elem> h(o0.size() * o0.size());
  for (Elem a = 0; a < o0.size(); ++a)
    for (Elem c = 0; c < o0.size(); ++c) h[static_cast<std::size_t>(a) * o0.size() + c] = o1.meet(g.dstar(a), g.rstar(c));
  const JoinMap cmp = induced_map(p.tensor, g.arrows.ptr(), h);
  r.effective = bijective(cmp);
  if (!r.effective)
    r.witness = {{"|kernel pair|", std::to_string(r.kernel_pair_size)}, {"|O1|", std::to_string(o1.size())}};

  const GroupoidQuantale q = quantale_from_groupoid(g);
  r.principal = check_principal(q.based, q.support(), bound).principal;
  if (r.principal != r.effective)
    throw Error(ErrorKind::EquivalenceMismatch, "effectiveness and principality disagree",
                {{"effective", r.effective ? "true" : "false"}, {"principal", r.principal ? "true" : "false"}});
  return r;
}

bool is_etale(const LocalicGroupoid& g) { return check_open_map(g.ustar).open; }

}  // namespace qlab
