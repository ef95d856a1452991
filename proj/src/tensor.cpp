#include "qlab/tensor.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <deque>
#include <numeric>

namespace qlab {

std::size_t RowsHash::operator()(const Rows& r) const noexcept { return boost::hash_range(r.begin(), r.end()); }

namespace {

void validate_action(const FinSupLattice& l, const FinSupLattice& m, const BaseAction& act) {
  const FinSupLattice& a = *act.base;
  if (auto w = a.distributivity_witness())
    throw Error(ErrorKind::NotAFrame, "base of a tensor must be a frame",
                {{"x", a.label((*w)[0])}, {"y", a.label((*w)[1])}, {"z", a.label((*w)[2])}});
  const std::size_t na = a.size(), nl = l.size(), nm = m.size();
  if (act.left_act.size() != nl * na || act.right_act.size() != na * nm)
    throw Error(ErrorKind::BadTable, "action table has the wrong size");
  for (Elem v : act.left_act)
    if (v >= nl) throw Error(ErrorKind::BadTable, "left action value out of range");
  for (Elem v : act.right_act)
    if (v >= nm) throw Error(ErrorKind::BadTable, "right action value out of range");

  auto la = [&](Elem x, Elem b) { return act.left_act[static_cast<std::size_t>(x) * na + b]; };
  auto ra = [&](Elem b, Elem y) { return act.right_act[static_cast<std::size_t>(b) * nm + y]; };
  auto fail = [&](std::string what, Witness w) { throw Error(ErrorKind::BadAction, std::move(what), std::move(w)); };

  for (Elem x = 0; x < nl; ++x) {
    if (la(x, a.top()) != x) fail("x.1 != x", {{"x", l.label(x)}});
    for (Elem b = 0; b < na; ++b) {
      for (Elem c = 0; c < na; ++c) {
        if (la(x, a.join(b, c)) != l.join(la(x, b), la(x, c)))
          fail("right action not join-preserving in the base", {{"x", l.label(x)}, {"a", a.label(b)}, {"b", a.label(c)}});
        if (la(x, a.meet(b, c)) != la(la(x, b), c))
          fail("x.(a^b) != (x.a).b", {{"x", l.label(x)}, {"a", a.label(b)}, {"b", a.label(c)}});
      }
      if (la(x, a.bottom()) != l.bottom()) fail("x.0 != 0", {{"x", l.label(x)}});
      for (Elem x2 = 0; x2 < nl; ++x2)
        if (la(l.join(x, x2), b) != l.join(la(x, b), la(x2, b)))
          fail("right action not join-preserving", {{"x", l.label(x)}, {"x'", l.label(x2)}, {"a", a.label(b)}});
    }
    for (Elem b = 0; b < na; ++b)
      if (la(l.bottom(), b) != l.bottom()) fail("0.a != 0", {{"a", a.label(b)}});
  }
  for (Elem y = 0; y < nm; ++y) {
    if (ra(a.top(), y) != y) fail("1.y != y", {{"y", m.label(y)}});
    if (ra(a.bottom(), y) != m.bottom()) fail("0.y != 0", {{"y", m.label(y)}});
    for (Elem b = 0; b < na; ++b) {
      for (Elem c = 0; c < na; ++c) {
        if (ra(a.join(b, c), y) != m.join(ra(b, y), ra(c, y)))
          fail("left action not join-preserving in the base", {{"a", a.label(b)}, {"b", a.label(c)}, {"y", m.label(y)}});
        if (ra(a.meet(b, c), y) != ra(b, ra(c, y)))
          fail("(a^b).y != a.(b.y)", {{"a", a.label(b)}, {"b", a.label(c)}, {"y", m.label(y)}});
      }
      if (ra(b, m.bottom()) != m.bottom()) fail("a.0 != 0", {{"a", a.label(b)}});
      for (Elem y2 = 0; y2 < nm; ++y2)
        if (ra(b, m.join(y, y2)) != m.join(ra(b, y), ra(b, y2)))
          fail("left action not join-preserving", {{"a", a.label(b)}, {"y", m.label(y)}, {"y'", m.label(y2)}});
    }
  }
}

}  // namespace

TensorSpace::TensorSpace(LatticePtr left, LatticePtr right, std::optional<BaseAction> base)
    : left_(std::move(left)), right_(std::move(right)), base_(std::move(base)) {
  const auto& l = *left_;
  const auto& m = *right_;
  if (base_) {
    validate_action(l, m, *base_);
    const auto& a = *base_->base;
    nbase_ = a.size();
    base_jis_.assign(a.join_irreducibles().begin(), a.join_irreducibles().end());
    rho_.assign(nbase_ * l.size(), l.bottom());
    for (Elem b = 0; b < nbase_; ++b)
      for (Elem z = 0; z < l.size(); ++z) {
        Elem acc = l.bottom();
        for (Elem x = 0; x < l.size(); ++x)
          if (l.leq(act_left(x, b), z)) acc = l.join(acc, x);
        rho_[static_cast<std::size_t>(b) * l.size() + z] = acc;
      }
  }
  if (m.is_distributive()) {
    ji_below_.assign(m.size(), {});
    for (Elem y = 0; y < m.size(); ++y) {
      if (y == m.bottom() || m.is_join_irreducible(y)) continue;
      for (Elem j : m.join_irreducibles())
        if (m.leq(j, y)) ji_below_[y].push_back(j);
    }
  }
  descending_.assign(m.linear_order().rbegin(), m.linear_order().rend());
}

Rows TensorSpace::bottom() const {
  Rows f(right_->size(), left_->bottom());
  f[right_->bottom()] = left_->top();
  // Over a base the exchange rules already force pairs such as (x.a, y) with a.y = 0.
  return base_ ? close(std::move(f)) : f;
}

Rows TensorSpace::top() const { return Rows(right_->size(), left_->top()); }

Rows TensorSpace::pure(Elem x, Elem y) const {
  Rows f(right_->size(), left_->bottom());
  f[right_->bottom()] = left_->top();
  f[y] = left_->join(f[y], x);
  return close(std::move(f));
}

Rows TensorSpace::close(Rows f) const {
  const auto& l = *left_;
  const auto& m = *right_;
  const std::size_t nm = m.size();
  f[m.bottom()] = l.top();
  auto raise = [&](Elem y, Elem v, bool& changed) {
    const Elem nv = l.join(f[y], v);
    if (nv != f[y]) {
      f[y] = nv;
      changed = true;
    }
  };
  for (bool changed = true; changed;) {
    changed = false;
    // Antitone in y: visiting y from the top down pulls each value to every
    // element below it in one sweep.
    for (Elem y : descending_)
      for (Elem up : m.upper_covers(y)) raise(y, f[up], changed);
    if (!ji_below_.empty()) {
      for (Elem y = 0; y < nm; ++y) {
        if (ji_below_[y].empty()) continue;
        Elem acc = l.top();
        for (Elem j : ji_below_[y]) acc = l.meet(acc, f[j]);
        raise(y, acc, changed);
      }
    } else {
      for (Elem y1 = 0; y1 < nm; ++y1)
        for (Elem y2 = y1 + 1; y2 < nm; ++y2) raise(m.join(y1, y2), l.meet(f[y1], f[y2]), changed);
    }
    // Exchange rules for join-irreducible base elements; the join rule
    // extends them to every base element.
    for (Elem a : base_jis_) {
      const Elem* rho = &rho_[static_cast<std::size_t>(a) * l.size()];
      for (Elem y = 0; y < nm; ++y) {
        const Elem ay = act_right(a, y);
        raise(ay, rho[f[y]], changed);
        raise(y, act_left(f[ay], a), changed);
      }
    }
  }
  return f;
}

Rows TensorSpace::join(const Rows& a, const Rows& b) const {
  Rows f(a.size());
  for (std::size_t y = 0; y < f.size(); ++y) f[y] = left_->join(a[y], b[y]);
  return close(std::move(f));
}

Rows TensorSpace::meet(const Rows& a, const Rows& b) const {
  Rows f(a.size());
  for (std::size_t y = 0; y < f.size(); ++y) f[y] = left_->meet(a[y], b[y]);
  return f;
}

bool TensorSpace::leq(const Rows& a, const Rows& b) const {
  for (std::size_t y = 0; y < a.size(); ++y)
    if (!left_->leq(a[y], b[y])) return false;
  return true;
}

std::string TensorSpace::label(const Rows& f) const {
  const auto& l = *left_;
  const auto& m = *right_;
  std::string out;
  for (Elem j : m.join_irreducibles()) {
    if (f[j] == l.bottom()) continue;
    bool dominated = false;
    for (Elem up : m.join_irreducibles())
      if (up != j && m.leq(j, up) && f[up] == f[j]) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    if (!out.empty()) out += " ∨ ";
    out += l.label(f[j]) + "⊗" + m.label(j);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

TensorLattice TensorLattice::materialize(TensorSpace space, std::size_t bound) {
  TensorLattice t(std::move(space));
  const auto& sp = t.space_;
  const auto& l = sp.left();
  const auto& m = sp.right();

  std::vector<Rows> gens;
  for (Elem j : l.join_irreducibles())
    for (Elem k : m.join_irreducibles()) gens.push_back(sp.pure(j, k));

  std::unordered_map<Rows, Elem, RowsHash> seen;
  std::vector<Rows> found;
  std::deque<Elem> queue;
  auto visit = [&](Rows r) {
    if (seen.count(r)) return;
    if (found.size() >= bound || found.size() >= kMaxLatticeSize)
      throw Error(ErrorKind::SizeLimitExceeded,
                  "tensor carrier exceeds " + std::to_string(std::min(bound, kMaxLatticeSize)) + " elements");
    seen.emplace(r, static_cast<Elem>(found.size()));
    queue.push_back(static_cast<Elem>(found.size()));
    found.push_back(std::move(r));
  };
  visit(sp.bottom());
  while (!queue.empty()) {
    const Elem e = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      if (sp.leq(g, found[e])) continue;
      visit(sp.join(found[e], g));
    }
  }

  // The number of pairs strictly grows along inclusion, so sorting by it
  // gives ids in a linear extension: bottom first, top last.
  auto weight = [&](const Rows& r) {
    std::size_t w = 0;
    for (Elem x : r) w += l.down_set(x).count();
    return w;
  };
  std::vector<std::pair<std::size_t, Rows>> keyed;
  keyed.reserve(found.size());
  for (auto& r : found) keyed.emplace_back(weight(r), std::move(r));
  std::sort(keyed.begin(), keyed.end());
  for (auto& [w, r] : keyed) t.rows_.push_back(std::move(r));
  for (std::size_t i = 0; i < t.rows_.size(); ++i) t.index_.emplace(t.rows_[i], static_cast<Elem>(i));

  std::vector<std::string> labels;
  labels.reserve(t.rows_.size());
  for (const auto& r : t.rows_) labels.push_back(sp.label(r));
  t.carrier_ = FinSupLattice::from_leq(
      t.rows_.size(), [&](Elem a, Elem b) { return sp.leq(t.rows_[a], t.rows_[b]); }, std::move(labels));

  t.pure_.resize(l.size() * m.size());
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y = 0; y < m.size(); ++y) t.pure_[static_cast<std::size_t>(x) * m.size() + y] = t.element(sp.pure(x, y));
  return t;
}

std::optional<Elem> TensorLattice::find(const Rows& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem TensorLattice::element(const Rows& r) const {
  if (auto e = find(r)) return *e;
  throw Error(ErrorKind::BadTable, "row table is not an element of the tensor carrier");
}

std::vector<std::uint8_t> TensorLattice::pairs(Elem e) const {
  const auto& l = space_.left();
  const auto& m = space_.right();
  std::vector<std::uint8_t> out(l.size() * m.size());
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y = 0; y < m.size(); ++y) out[static_cast<std::size_t>(x) * m.size() + y] = l.leq(x, rows_[e][y]);
  return out;
}

TensorLattice sup_tensor(const LatticePtr& l, const LatticePtr& m, std::size_t bound) {
  return TensorLattice::materialize(TensorSpace(l, m), bound);
}

TensorLattice tensor_over_base(const LatticePtr& l, const LatticePtr& m, BaseAction action, std::size_t bound) {
  return TensorLattice::materialize(TensorSpace(l, m, std::move(action)), bound);
}

BaseAction meet_actions(const FrameHom& f, const FrameHom& g) {
  if (!f.source().same_as(g.source())) throw Error(ErrorKind::BadTable, "pushout of maps with different sources");
  const auto& e = f.source();
  const auto& a = f.target();
  const auto& b = g.target();
  BaseAction act{f.source_ptr(), {}, {}};
  act.left_act.resize(a.size() * e.size());
  act.right_act.resize(e.size() * b.size());
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem c = 0; c < e.size(); ++c) act.left_act[static_cast<std::size_t>(x) * e.size() + c] = a.meet(x, f(c));
  for (Elem c = 0; c < e.size(); ++c)
    for (Elem y = 0; y < b.size(); ++y) act.right_act[static_cast<std::size_t>(c) * b.size() + y] = b.meet(g(c), y);
  return act;
}

FramePushout frame_pushout(const FrameHom& f, const FrameHom& g, std::size_t bound) {
  TensorLattice t = tensor_over_base(f.target_ptr(), g.target_ptr(), meet_actions(f, g), bound);
  Frame frame(t.carrier_ptr());
  const auto& a = f.target();
  const auto& b = g.target();
  std::vector<Elem> il(a.size()), ir(b.size());
  for (Elem x = 0; x < a.size(); ++x) il[x] = t.pure(x, b.top());
  for (Elem y = 0; y < b.size(); ++y) ir[y] = t.pure(a.top(), y);
  FrameHom inj_left(Map(f.target_ptr(), t.carrier_ptr(), std::move(il)));
  FrameHom inj_right(Map(g.target_ptr(), t.carrier_ptr(), std::move(ir)));
  return {std::move(t), std::move(frame), std::move(inj_left), std::move(inj_right)};
}

std::optional<std::pair<ErrorKind, Witness>> bimorphism_violation(const TensorSpace& space, const FinSupLattice& target,
                                                                  const std::vector<Elem>& h) {
  const auto& l = space.left();
  const auto& m = space.right();
  const std::size_t nm = m.size();
  if (h.size() != l.size() * nm) throw Error(ErrorKind::BadTable, "bimorphism table has the wrong size");
  auto at = [&](Elem x, Elem y) { return h[static_cast<std::size_t>(x) * nm + y]; };
  auto bad = [](Witness w) { return std::make_pair(ErrorKind::NotBimorphism, std::move(w)); };
  for (Elem x = 0; x < l.size(); ++x)
    if (at(x, m.bottom()) != target.bottom()) return bad({{"x", l.label(x)}, {"y", m.label(m.bottom())}});
  for (Elem y = 0; y < nm; ++y)
    if (at(l.bottom(), y) != target.bottom()) return bad({{"x", l.label(l.bottom())}, {"y", m.label(y)}});
  for (Elem x1 = 0; x1 < l.size(); ++x1)
    for (Elem x2 = x1 + 1; x2 < l.size(); ++x2)
      for (Elem y = 0; y < nm; ++y)
        if (at(l.join(x1, x2), y) != target.join(at(x1, y), at(x2, y)))
          return bad({{"x1", l.label(x1)}, {"x2", l.label(x2)}, {"y", m.label(y)}});
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y1 = 0; y1 < nm; ++y1)
      for (Elem y2 = y1 + 1; y2 < nm; ++y2)
        if (at(x, m.join(y1, y2)) != target.join(at(x, y1), at(x, y2)))
          return bad({{"x", l.label(x)}, {"y1", m.label(y1)}, {"y2", m.label(y2)}});
  if (const BaseAction* act = space.base()) {
    const auto& a = *act->base;
    for (Elem x = 0; x < l.size(); ++x)
      for (Elem b = 0; b < a.size(); ++b)
        for (Elem y = 0; y < nm; ++y)
          if (at(space.act_left(x, b), y) != at(x, space.act_right(b, y)))
            return std::make_pair(ErrorKind::NotMiddleLinear,
                                  Witness{{"x", l.label(x)}, {"a", a.label(b)}, {"y", m.label(y)}});
  }
  return std::nullopt;
}

JoinMap induced_map(const TensorLattice& t, const LatticePtr& target, const std::vector<Elem>& h) {
  const auto& sp = t.space();
  if (auto v = bimorphism_violation(sp, *target, h))
    throw Error(v->first, v->first == ErrorKind::NotMiddleLinear ? "table is not middle-linear" : "table is not a bimorphism",
                v->second);
  const std::size_t nm = sp.right().size();
  std::vector<Elem> values(t.size(), target->bottom());
  for (Elem e = 0; e < t.size(); ++e) {
    const Rows& r = t.rows(e);
    for (Elem y = 0; y < nm; ++y) values[e] = target->join(values[e], h[static_cast<std::size_t>(r[y]) * nm + y]);
  }
  for (Elem x = 0; x < sp.left().size(); ++x)
    for (Elem y = 0; y < nm; ++y)
      if (values[t.pure(x, y)] != h[static_cast<std::size_t>(x) * nm + y])
        throw Error(ErrorKind::FactorizationFailure, "induced map does not restrict to the bimorphism",
                    {{"x", sp.left().label(x)}, {"y", sp.right().label(y)}});
  return JoinMap(Map(t.carrier_ptr(), target, std::move(values)));
}

OracleTensor tensor_oracle(const LatticePtr& lp, const LatticePtr& mp, const std::optional<BaseAction>& base,
                           std::size_t max_pairs) {
  const auto& l = *lp;
  const auto& m = *mp;
  const std::size_t nl = l.size(), nm = m.size();
  if (nl * nm > max_pairs)
    throw Error(ErrorKind::SizeLimitExceeded, "oracle limited to " + std::to_string(max_pairs) + " pairs");
  if (base) validate_action(l, m, *base);

  std::vector<std::pair<Elem, Elem>> free;
  for (Elem x = 0; x < nl; ++x)
    for (Elem y = 0; y < nm; ++y)
      if (x != l.bottom() && y != m.bottom()) free.emplace_back(x, y);

  OracleTensor out;
  std::vector<std::uint8_t> s(nl * nm);
  auto in = [&](Elem x, Elem y) { return s[static_cast<std::size_t>(x) * nm + y] != 0; };
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (Elem x = 0; x < nl; ++x)
      for (Elem y = 0; y < nm; ++y) s[static_cast<std::size_t>(x) * nm + y] = (x == l.bottom() || y == m.bottom());
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) s[static_cast<std::size_t>(free[i].first) * nm + free[i].second] = 1;

    bool ok = true;
    for (Elem x = 0; x < nl && ok; ++x)
      for (Elem y = 0; y < nm && ok; ++y) {
        if (!in(x, y)) continue;
        for (Elem x2 = 0; x2 < nl && ok; ++x2)
          for (Elem y2 = 0; y2 < nm && ok; ++y2)
            if (l.leq(x2, x) && m.leq(y2, y) && !in(x2, y2)) ok = false;
      }
    for (Elem y = 0; y < nm && ok; ++y)
      for (Elem x1 = 0; x1 < nl && ok; ++x1)
        for (Elem x2 = 0; x2 < nl && ok; ++x2)
          if (in(x1, y) && in(x2, y) && !in(l.join(x1, x2), y)) ok = false;
    for (Elem x = 0; x < nl && ok; ++x)
      for (Elem y1 = 0; y1 < nm && ok; ++y1)
        for (Elem y2 = 0; y2 < nm && ok; ++y2)
          if (in(x, y1) && in(x, y2) && !in(x, m.join(y1, y2))) ok = false;
    if (ok && base) {
      const auto& a = *base->base;
      for (Elem x = 0; x < nl && ok; ++x)
        for (Elem b = 0; b < a.size() && ok; ++b)
          for (Elem y = 0; y < nm && ok; ++y) {
            const Elem xa = base->left_act[static_cast<std::size_t>(x) * a.size() + b];
            const Elem by = base->right_act[static_cast<std::size_t>(b) * nm + y];
            if (in(xa, y) != in(x, by)) ok = false;
          }
    }
    if (ok) out.sets.push_back(s);
  }

  std::vector<std::string> labels;
  for (const auto& set : out.sets) {
    std::string lab = "{";
    for (auto [x, y] : free) {
      if (!set[static_cast<std::size_t>(x) * nm + y]) continue;
      if (lab.size() > 1) lab += ",";
      lab += "(" + l.label(x) + "," + m.label(y) + ")";
    }
    labels.push_back(lab + "}");
  }
  const auto& sets = out.sets;
  out.lattice = FinSupLattice::from_leq(
      sets.size(),
      [&](Elem a, Elem b) {
        for (std::size_t i = 0; i < sets[a].size(); ++i)
          if (sets[a][i] && !sets[b][i]) return false;
        return true;
      },
      std::move(labels));
  return out;
}

}  // namespace qlab
