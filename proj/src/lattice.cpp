#include "qlab/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "qlab/kernels.hpp"

namespace qlab {

namespace {

Witness pair_witness(const FinSupLattice& l, std::string_view r1, Elem a, std::string_view r2, Elem b) {
  return {{std::string(r1), l.label(a)}, {std::string(r2), l.label(b)}};
}

// Union-find over element ids, smallest id wins as representative.
struct Partition {
  std::vector<Elem> parent;

  explicit Partition(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Elem{0}); }

  Elem find(Elem x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

void FinSupLattice::check_size(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::NotALattice, "a lattice needs at least one element");
  if (n > kMaxLatticeSize)
    throw Error(ErrorKind::SizeLimitExceeded,
                "lattice of size " + std::to_string(n) + " exceeds " + std::to_string(kMaxLatticeSize));
}

LatticePtr FinSupLattice::from_order(std::size_t n, std::span<const std::pair<Elem, Elem>> order_pairs,
                                     std::vector<std::string> labels) {
  check_size(n);
  std::vector<Bits> down(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) down[i].set(i);
  for (auto [a, b] : order_pairs) {
    if (a >= n || b >= n)
      throw Error(ErrorKind::BadTable, "order pair (" + std::to_string(a) + "," + std::to_string(b) +
                                           ") out of range");
    down[b].set(a);
  }
  return build(std::move(down), std::move(labels), /*close=*/true);
}

LatticePtr FinSupLattice::build(std::vector<Bits> down, std::vector<std::string> labels, bool close) {
  const std::size_t n = down.size();
  check_size(n);
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw Error(ErrorKind::BadTable, "label count does not match element count");

  auto lat = std::shared_ptr<FinSupLattice>(new FinSupLattice());
  lat->n_ = n;
  lat->labels_ = std::move(labels);
  for (std::size_t i = 0; i < n; ++i) {
    if (!lat->index_.emplace(lat->labels_[i], static_cast<Elem>(i)).second)
      throw Error(ErrorKind::DuplicateName, "duplicate element label '" + lat->labels_[i] + "'");
  }
  auto name = [&](std::size_t i) { return lat->labels_[i]; };

  if (close) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (i != k && down[i].test(k)) down[i] |= down[k];
  } else {
    for (std::size_t y = 0; y < n; ++y) {
      if (!down[y].test(y))
        throw Error(ErrorKind::NotAPartialOrder, "order is not reflexive", {{"x", name(y)}});
      for (auto x = down[y].find_first(); x != Bits::npos; x = down[y].find_next(x)) {
        if (!down[x].is_subset_of(down[y])) {
          Bits extra = down[x] - down[y];
          throw Error(ErrorKind::NotAPartialOrder, "order is not transitive",
                      {{"x", name(extra.find_first())}, {"y", name(x)}, {"z", name(y)}});
        }
      }
    }
  }
  for (std::size_t y = 0; y < n; ++y)
    for (auto x = down[y].find_first(); x != Bits::npos; x = down[y].find_next(x))
      if (x != y && down[x].test(y))
        throw Error(ErrorKind::NotAPartialOrder, "order is not antisymmetric", {{"x", name(x)}, {"y", name(y)}});

  lat->down_ = std::move(down);
  lat->up_.assign(n, Bits(n));
  lat->leq_.assign(n * n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    const Bits& d = lat->down_[y];
    for (auto x = d.find_first(); x != Bits::npos; x = d.find_next(x)) {
      lat->up_[x].set(y);
      lat->leq_[x * n + y] = 1;
    }
  }

  // A strict x < y forces |down x| < |down y|, so sorting by down-set size
  // yields a linear extension.
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return lat->down_[a].count() < lat->down_[b].count(); });
  std::vector<std::size_t> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[order[p]] = p;
  lat->linear_order_ = order;

  // Up-sets indexed by ascending position and down-sets by descending
  // position, so find_first() returns the candidate least upper bound and
  // greatest lower bound.
  std::vector<Bits> up_pos(n, Bits(n)), down_rpos(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = lat->up_[x].find_first(); y != Bits::npos; y = lat->up_[x].find_next(y)) up_pos[x].set(pos[y]);
    for (auto y = lat->down_[x].find_first(); y != Bits::npos; y = lat->down_[x].find_next(y))
      down_rpos[x].set(n - 1 - pos[y]);
  }

  lat->join_.assign(n * n, kNoElem);
  lat->meet_.assign(n * n, kNoElem);
  Bits tmp(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Elem j;
      if (lat->leq_[a * n + b]) {
        j = static_cast<Elem>(b);
      } else if (lat->leq_[b * n + a]) {
        j = static_cast<Elem>(a);
      } else {
        tmp = up_pos[a];
        tmp &= up_pos[b];
        auto p = tmp.find_first();
        if (p == Bits::npos || !tmp.is_subset_of(up_pos[order[p]]))
          throw Error(ErrorKind::NotALattice, "pair has no least upper bound", {{"x", name(a)}, {"y", name(b)}});
        j = order[p];
      }
      lat->join_[a * n + b] = lat->join_[b * n + a] = j;

      Elem m;
      if (lat->leq_[a * n + b]) {
        m = static_cast<Elem>(a);
      } else if (lat->leq_[b * n + a]) {
        m = static_cast<Elem>(b);
      } else {
        tmp = down_rpos[a];
        tmp &= down_rpos[b];
        auto p = tmp.find_first();
        if (p == Bits::npos || !tmp.is_subset_of(down_rpos[order[n - 1 - p]]))
          throw Error(ErrorKind::NotALattice, "pair has no greatest lower bound", {{"x", name(a)}, {"y", name(b)}});
        m = order[n - 1 - p];
      }
      lat->meet_[a * n + b] = lat->meet_[b * n + a] = m;
    }
  }
  lat->bottom_ = order.front();
  lat->top_ = order.back();
  if (lat->down_[lat->top_].count() != n || lat->up_[lat->bottom_].count() != n)
    throw Error(ErrorKind::NotALattice, "no top or no bottom element");

  lat->upper_covers_.assign(n, {});
  lat->lower_covers_.assign(n, {});
  for (std::size_t y = 0; y < n; ++y) {
    for (auto x = lat->down_[y].find_first(); x != Bits::npos; x = lat->down_[y].find_next(x)) {
      if (x == y) continue;
      tmp = lat->up_[x];
      tmp &= lat->down_[y];
      if (tmp.count() == 2) {
        lat->lower_covers_[y].push_back(static_cast<Elem>(x));
        lat->upper_covers_[x].push_back(static_cast<Elem>(y));
      }
    }
  }
  lat->ji_flag_.assign(n, 0);
  for (Elem x : order) {
    if (lat->lower_covers_[x].size() == 1) {
      lat->join_irreducibles_.push_back(x);
      lat->ji_flag_[x] = 1;
    }
    if (lat->upper_covers_[x].size() == 1) lat->meet_irreducibles_.push_back(x);
  }

  // Distributive iff x -> {join-irreducibles below x} is onto the down-sets of
  // the join-irreducibles, iff that set map turns every a v j into a union.
  std::vector<Bits> ji_below(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x)
    for (Elem j : lat->join_irreducibles_)
      if (lat->leq_[static_cast<std::size_t>(j) * n + x]) ji_below[x].set(j);
  for (std::size_t a = 0; a < n && !lat->distributivity_witness_; ++a) {
    for (Elem j : lat->join_irreducibles_) {
      const Elem aj = lat->join_[a * n + j];
      tmp = ji_below[a];
      tmp |= ji_below[j];
      if (tmp != ji_below[aj]) {
        Bits extra = ji_below[aj] - tmp;
        lat->distributivity_witness_ = std::array<Elem, 3>{static_cast<Elem>(extra.find_first()),
                                                           static_cast<Elem>(a), j};
        break;
      }
    }
  }
  return lat;
}

LatticePtr FinSupLattice::powerset(std::size_t points, std::vector<std::string> point_names) {
  if (points > 12) throw Error(ErrorKind::SizeLimitExceeded, "powerset of more than 12 points");
  if (point_names.empty())
    for (std::size_t i = 0; i < points; ++i) point_names.push_back(std::to_string(i));
  if (point_names.size() != points) throw Error(ErrorKind::BadTable, "point name count mismatch");
  const std::size_t n = std::size_t{1} << points;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    for (std::size_t i = 0; i < points; ++i) {
      if (!(mask >> i & 1)) continue;
      if (s.size() > 1) s += ",";
      s += point_names[i];
    }
    labels.push_back(s + "}");
  }
  return from_leq(n, [](Elem a, Elem b) { return (a & ~b) == 0; }, std::move(labels));
}

LatticePtr FinSupLattice::chain(std::size_t n, std::vector<std::string> labels) {
  return from_leq(n, [](Elem a, Elem b) { return a <= b; }, std::move(labels));
}

std::optional<Elem> FinSupLattice::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem FinSupLattice::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw Error(ErrorKind::UnresolvedName, "no element labeled '" + std::string(label) + "'");
}

bool FinSupLattice::same_as(const FinSupLattice& other) const {
  return this == &other || (n_ == other.n_ && leq_ == other.leq_ && labels_ == other.labels_);
}

// ---------------------------------------------------------------------------

Map::Map(LatticePtr source, LatticePtr target, std::vector<Elem> values)
    : source_(std::move(source)), target_(std::move(target)), values_(std::move(values)) {
  if (!source_ || !target_) throw Error(ErrorKind::BadTable, "map with missing source or target");
  if (values_.size() != source_->size())
    throw Error(ErrorKind::BadTable, "map table has " + std::to_string(values_.size()) + " entries, source has " +
                                         std::to_string(source_->size()));
  for (std::size_t x = 0; x < values_.size(); ++x)
    if (values_[x] >= target_->size())
      throw Error(ErrorKind::BadTable, "map value out of range", {{"x", source_->label(static_cast<Elem>(x))}});
}

Map Map::then(const Map& next) const {
  if (!target_->same_as(next.source()))
    throw Error(ErrorKind::BadTable, "composition of maps with mismatched carriers");
  std::vector<Elem> v(values_.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = next(values_[x]);
  return Map(source_, next.target_, std::move(v));
}

Map identity_map(const LatticePtr& l) {
  std::vector<Elem> v(l->size());
  std::iota(v.begin(), v.end(), Elem{0});
  return Map(l, l, std::move(v));
}

std::optional<Witness> find_monotone_violation(const Map& m) {
  const auto& s = m.source();
  const auto& t = m.target();
  const std::uint64_t n = s.size();
  auto r = kernels::scan(n * n, [&](std::uint64_t i) {
    const auto x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
    return s.leq(x, y) && !t.leq(m(x), m(y));
  });
  if (r.ok()) return std::nullopt;
  return pair_witness(s, "x", static_cast<Elem>(r.first / n), "y", static_cast<Elem>(r.first % n));
}

std::optional<Witness> find_join_violation(const Map& m) {
  const auto& s = m.source();
  const auto& t = m.target();
  if (m(s.bottom()) != t.bottom()) return Witness{{"bottom", s.label(s.bottom())}};
  const std::uint64_t n = s.size();
  auto r = kernels::scan(n * n, [&](std::uint64_t i) {
    const auto x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
    return m(s.join(x, y)) != t.join(m(x), m(y));
  });
  if (r.ok()) return std::nullopt;
  return pair_witness(s, "x", static_cast<Elem>(r.first / n), "y", static_cast<Elem>(r.first % n));
}

std::optional<Witness> find_meet_violation(const Map& m) {
  const auto& s = m.source();
  const auto& t = m.target();
  if (m(s.top()) != t.top()) return Witness{{"top", s.label(s.top())}};
  const std::uint64_t n = s.size();
  auto r = kernels::scan(n * n, [&](std::uint64_t i) {
    const auto x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
    return m(s.meet(x, y)) != t.meet(m(x), m(y));
  });
  if (r.ok()) return std::nullopt;
  return pair_witness(s, "x", static_cast<Elem>(r.first / n), "y", static_cast<Elem>(r.first % n));
}

JoinMap::JoinMap(Map m) : Map(std::move(m)) {
  if (auto w = find_join_violation(*this)) throw Error(ErrorKind::NotJoinPreserving, "map does not preserve joins", *w);
}

MeetMap::MeetMap(Map m) : Map(std::move(m)) {
  if (auto w = find_meet_violation(*this)) throw Error(ErrorKind::NotMeetPreserving, "map does not preserve meets", *w);
}

namespace {
Map checked_frame_map(Map m) {
  for (const auto* l : {&m.source(), &m.target()}) {
    if (auto w = l->distributivity_witness())
      throw Error(ErrorKind::NotAFrame, "frame homomorphism between non-distributive lattices",
                  {{"x", l->label((*w)[0])}, {"y", l->label((*w)[1])}, {"z", l->label((*w)[2])}});
  }
  if (auto w = find_join_violation(m)) throw Error(ErrorKind::NotFrameHom, "map does not preserve joins", *w);
  if (auto w = find_meet_violation(m)) throw Error(ErrorKind::NotFrameHom, "map does not preserve meets", *w);
  return m;
}
}  // namespace

FrameHom::FrameHom(Map m) : JoinMap() { static_cast<Map&>(*this) = checked_frame_map(std::move(m)); }

JoinMap build_join_map(LatticePtr source, LatticePtr target, std::vector<Elem> values) {
  return JoinMap(Map(std::move(source), std::move(target), std::move(values)));
}

Frame::Frame(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (auto w = lattice_->distributivity_witness()) {
    const auto& l = *lattice_;
    throw Error(ErrorKind::NotAFrame, "lattice is not distributive",
                {{"x", l.label((*w)[0])}, {"y", l.label((*w)[1])}, {"z", l.label((*w)[2])}});
  }
}

std::variant<Frame, DistributivityWitness> check_frame(const LatticePtr& l) {
  if (auto w = l->distributivity_witness()) return DistributivityWitness{(*w)[0], (*w)[1], (*w)[2]};
  return Frame(l);
}

MeetMap right_adjoint(const JoinMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  std::vector<Elem> g(t.size(), s.bottom());
  for (Elem y = 0; y < t.size(); ++y)
    for (Elem x = 0; x < s.size(); ++x)
      if (t.leq(f(x), y)) g[y] = s.join(g[y], x);
  return MeetMap(Map(f.target_ptr(), f.source_ptr(), std::move(g)));
}

JoinMap left_adjoint(const Map& g) {
  if (auto w = find_meet_violation(g))
    throw Error(ErrorKind::NotMeetPreserving, "left adjoint requires a meet-preserving map", *w);
  const auto& s = g.source();
  const auto& t = g.target();
  std::vector<Elem> f(t.size(), s.top());
  for (Elem x = 0; x < t.size(); ++x)
    for (Elem y = 0; y < s.size(); ++y)
      if (t.leq(x, g(y))) f[x] = s.meet(f[x], y);
  return JoinMap(Map(g.target_ptr(), g.source_ptr(), std::move(f)));
}

OpenMapReport check_open_map(const FrameHom& h) {
  OpenMapReport rep;
  if (auto w = find_meet_violation(h)) {
    rep.witness = *w;
    return rep;
  }
  rep.semiopen = true;
  JoinMap shriek = left_adjoint(h);
  const auto& m = h.source();  // O(M)
  const auto& l = h.target();  // O(L)
  const std::uint64_t nm = m.size();
  auto r = kernels::scan(l.size() * nm, [&](std::uint64_t i) {
    const auto x = static_cast<Elem>(i / nm), y = static_cast<Elem>(i % nm);
    return shriek(l.meet(x, h(y))) != m.meet(shriek(x), y);
  });
  rep.frobenius = r.ok();
  if (!r.ok()) {
    rep.witness = {{"x", l.label(static_cast<Elem>(r.first / nm))}, {"y", m.label(static_cast<Elem>(r.first % nm))}};
  }
  rep.open = rep.frobenius;
  rep.direct_image = std::move(shriek);
  return rep;
}

FrameQuotient frame_quotient(const Frame& f, std::span<const std::pair<Elem, Elem>> pairs) {
  const auto& l = f.lattice();
  const std::size_t n = l.size();
  Partition part(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw Error(ErrorKind::BadTable, "quotient pair out of range");
    part.unite(a, b);
  }
  // Compatibility of every (x, rep x) with joins and meets, plus
  // transitivity from union-find, makes the fixpoint a lattice congruence.
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem x = 0; x < n; ++x) {
      const Elem r = part.find(x);
      if (r == x) continue;
      for (Elem z = 0; z < n; ++z) {
        changed |= part.unite(l.join(x, z), l.join(r, z));
        changed |= part.unite(l.meet(x, z), l.meet(r, z));
      }
    }
  }
  // Classes are intervals; their tops represent the quotient.
  std::vector<Elem> top_of(n, l.bottom());
  for (Elem x = 0; x < n; ++x) {
    const Elem r = part.find(x);
    top_of[r] = l.join(top_of[r], x);
  }
  std::vector<Elem> tops;
  for (Elem x = 0; x < n; ++x)
    if (part.find(x) == x) tops.push_back(top_of[x]);
  Sublattice sub = induced_sublattice(l, tops);
  std::vector<Elem> values(n);
  for (Elem x = 0; x < n; ++x) values[x] = sub.position[top_of[part.find(x)]];
  Frame q(sub.lattice);
  FrameHom map(Map(f.ptr(), sub.lattice, std::move(values)));
  return {std::move(q), std::move(map)};
}

Sublattice induced_sublattice(const FinSupLattice& ambient, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<std::string> labels;
  labels.reserve(elems.size());
  for (Elem e : elems) labels.push_back(ambient.label(e));
  Sublattice sub;
  sub.lattice = FinSupLattice::from_leq(
      elems.size(), [&](Elem a, Elem b) { return ambient.leq(elems[a], elems[b]); }, std::move(labels));
  sub.position.assign(ambient.size(), kNoElem);
  for (std::size_t i = 0; i < elems.size(); ++i) sub.position[elems[i]] = static_cast<Elem>(i);
  sub.elements = std::move(elems);
  return sub;
}

Subframe equalizer_subframe(const FrameHom& f, const FrameHom& g) {
  if (!f.source().same_as(g.source()) || !f.target().same_as(g.target()))
    throw Error(ErrorKind::BadTable, "equalizer of maps with different carriers");
  const auto& l = f.source();
  std::vector<Elem> elems;
  for (Elem a = 0; a < l.size(); ++a)
    if (f(a) == g(a)) elems.push_back(a);
  for (Elem a : elems)
    for (Elem b : elems)
      if (f(l.join(a, b)) != g(l.join(a, b)) || f(l.meet(a, b)) != g(l.meet(a, b)))
        throw Error(ErrorKind::NotFrameHom, "equalizer not closed under joins and meets",
                    pair_witness(l, "x", a, "y", b));
  Sublattice sub = induced_sublattice(l, elems);
  Frame frame(sub.lattice);
  FrameHom inclusion(Map(sub.lattice, f.source_ptr(), sub.elements));
  return {std::move(frame), std::move(inclusion), std::move(sub)};
}

}  // namespace qlab
