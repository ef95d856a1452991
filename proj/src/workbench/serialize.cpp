#include "qlab/workbench/serialize.hpp"

namespace qlab {
namespace {

dsl::Name nm(std::string s) { return {std::move(s), {}}; }

void append(dsl::SpecDocument& a, dsl::SpecDocument b) {
  for (auto& d : b.decls) a.decls.push_back(std::move(d));
}

dsl::SpecDocument frame_decls(const std::string& name, const FinSupLattice& l) {
  dsl::SpecDocument doc;
  doc.decls.push_back(lattice_decl(name + "_lattice", l));
  doc.decls.push_back(dsl::FrameDecl{nm(name), nm(name + "_lattice")});
  return doc;
}

std::vector<dsl::Arrow1> nonzero(const FinSupLattice& src, const FinSupLattice& dst, std::span<const Elem> values) {
  std::vector<dsl::Arrow1> out;
  for (Elem x = 0; x < src.size(); ++x)
    if (values[x] != dst.bottom()) out.push_back({nm(src.label(x)), nm(dst.label(values[x]))});
  return out;
}

}  // namespace

dsl::LatticeDecl lattice_decl(const std::string& name, const FinSupLattice& l) {
  dsl::LatticeDecl d;
  d.name = nm(name);
  for (Elem x = 0; x < l.size(); ++x) d.elems.push_back(nm(l.label(x)));
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y = 0; y < l.size(); ++y) {
      if (x == y || !l.leq(x, y)) continue;
      bool cover = true;
      for (Elem z = 0; z < l.size() && cover; ++z)
        cover = z == x || z == y || !(l.leq(x, z) && l.leq(z, y));
      if (cover) d.order.push_back({nm(l.label(x)), nm(l.label(y))});
    }
  return d;
}

dsl::SpecDocument spec_of(const std::string& name, const SupportedQuantale& s) {
  const BasedQuantale& b = s.based;
  const auto& l = b.lattice();
  const auto& a = b.base();
  dsl::SpecDocument doc;
  doc.decls.push_back(lattice_decl(name + "_carrier", l));
  append(doc, frame_decls(name + "_base", a));

  dsl::QuantaleDecl q;
  q.name = nm(name + "_q");
  q.lattice = nm(name + "_carrier");
  for (Elem x = 0; x < l.size(); ++x) {
    for (Elem y = 0; y < l.size(); ++y)
      if (b.mul(x, y) != l.bottom()) q.mult.push_back({nm(l.label(x)), nm(l.label(y)), nm(l.label(b.mul(x, y)))});
    if (b.star(x) != x) q.inv.push_back({nm(l.label(x)), nm(l.label(b.star(x)))});
  }
  if (const auto& u = b.quantale().unit()) q.unit = nm(l.label(*u));
  doc.decls.push_back(std::move(q));

  dsl::BasedDecl d;
  d.name = nm(name);
  d.quantale = nm(name + "_q");
  d.frame = nm(name + "_base");
  for (Elem c = 0; c < a.size(); ++c)
    for (Elem x = 0; x < l.size(); ++x) {
      if (b.lact(c, x) != l.bottom()) d.lact.push_back({nm(a.label(c)), nm(l.label(x)), nm(l.label(b.lact(c, x)))});
      if (b.ract(x, c) != l.bottom()) d.ract.push_back({nm(l.label(x)), nm(a.label(c)), nm(l.label(b.ract(x, c)))});
    }
  doc.decls.push_back(std::move(d));

  if (s.sigma)
    doc.decls.push_back(dsl::MapDecl{dsl::MapDecl::Kind::support, nm(name + "_sigma"), nm(name),
                                     nonzero(l, a, s.sigma->values())});
  if (s.upsilon)
    doc.decls.push_back(dsl::MapDecl{dsl::MapDecl::Kind::upsilon, nm(name + "_upsilon"), nm(name),
                                     nonzero(l, a, s.upsilon->values())});
  return doc;
}

dsl::SpecDocument spec_of(const std::string& name, const LocalicGroupoid& g) {
  const auto& l0 = g.o0();
  const auto& l1 = g.o1();
  dsl::SpecDocument doc;
  append(doc, frame_decls(name + "_objects", l0));
  append(doc, frame_decls(name + "_arrows", l1));

  dsl::GroupoidDecl d;
  d.name = nm(name);
  d.objects = nm(name + "_objects");
  d.arrows = nm(name + "_arrows");
  d.dstar = nonzero(l0, l1, g.dstar.values());
  d.rstar = nonzero(l0, l1, g.rstar.values());
  d.ustar = nonzero(l1, l0, g.ustar.values());
  d.istar = nonzero(l1, l1, g.istar.values());
  const auto jis = l1.join_irreducibles();
  auto& ms = d.mstar.emplace();
  for (Elem w = 0; w < l1.size(); ++w) {
    const Rows& f = g.mstar[w];
    // A bi-ideal is the join of the pure tensors f(y) (x) y over join-irreducible y.
    dsl::MstarEntry e;
    e.arrow = nm(l1.label(w));
    for (Elem y : jis)
      if (f[y] != l1.bottom()) e.join.push_back({nm(l1.label(f[y])), nm(l1.label(y))});
    if (!e.join.empty()) ms.push_back(std::move(e));
  }
  doc.decls.push_back(std::move(d));
  return doc;
}

}  // namespace qlab
