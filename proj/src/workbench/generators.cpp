#include "qlab/workbench/generators.hpp"

#include <bit>
#include <string>

namespace qlab {

LatticePtr two_lattice() { return FinSupLattice::chain(2, {"0", "1"}); }

LatticePtr chain_lattice(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinSupLattice::chain(n, std::move(labels));
}

LatticePtr powerset_lattice(std::size_t points) { return FinSupLattice::powerset(points); }

SupportedQuantale rel_quantale(std::size_t n) {
  if (n == 0 || n > 3) throw Error(ErrorKind::SizeLimitExceeded, "rel(n) is generated for 1 <= n <= 3");
  std::vector<std::string> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) pairs.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  auto l = FinSupLattice::powerset(n * n, pairs);
  auto a = FinSupLattice::powerset(n);
  const std::size_t nq = l->size(), na = a->size();
  auto bit = [n](std::size_t x, std::size_t y) { return Elem{1} << (x * n + y); };

  auto compose = [&](Elem r, Elem s) {
    Elem out = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!(r & bit(x, y))) continue;
        for (std::size_t z = 0; z < n; ++z)
          if (s & bit(y, z)) out |= bit(x, z);
      }
    return out;
  };
  auto transpose = [&](Elem r) {
    Elem out = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r & bit(x, y)) out |= bit(y, x);
    return out;
  };
  Quantale q = Quantale::from_fn(l, compose, transpose);

  std::vector<Elem> lact(na * nq), ract(nq * na), sigma(nq), ups(nq);
  for (Elem u = 0; u < na; ++u) {
    Elem rows = 0, cols = 0;  // U x X and X x U
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (u >> x & 1) rows |= bit(x, y);
        if (u >> y & 1) cols |= bit(x, y);
      }
    for (Elem r = 0; r < nq; ++r) {
      lact[static_cast<std::size_t>(u) * nq + r] = rows & r;
      ract[static_cast<std::size_t>(r) * na + u] = r & cols;
    }
  }
  for (Elem r = 0; r < nq; ++r) {
    Elem dom = 0, diag = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r & bit(x, y)) {
          dom |= Elem{1} << x;
          if (x == y) diag |= Elem{1} << x;
        }
    sigma[r] = dom;
    ups[r] = diag;
  }
  BasedQuantale b = BasedQuantale::build(std::move(q), a, std::move(lact), std::move(ract));
  SupportedQuantale out{b, build_join_map(l, a, std::move(sigma)), Map(l, a, std::move(ups))};
  certify(out);
  return out;
}

SupportedQuantale example_q1() {
  auto l = FinSupLattice::chain(3, {"0", "e", "1"});
  auto a = FinSupLattice::chain(2, {"0", "e"});
  // e is the unit, 1.1 = 1, 0 absorbs.
  const std::vector<Elem> mult = {0, 0, 0,  //
                                  0, 1, 2,  //
                                  0, 2, 2};
  Quantale q = Quantale::build(l, mult, {0, 1, 2}, Elem{1});
  // A = {0, e} sits in Q as {0, e}; both actions are multiplication.
  std::vector<Elem> lact(2 * 3), ract(3 * 2);
  for (Elem c = 0; c < 2; ++c)
    for (Elem x = 0; x < 3; ++x) {
      lact[c * 3 + x] = q.mul(c, x);
      ract[x * 2 + c] = q.mul(x, c);
    }
  BasedQuantale b = BasedQuantale::build(std::move(q), a, std::move(lact), std::move(ract));
  return {b, build_join_map(l, a, {0, 1, 1}), Map(l, a, {0, 1, 1})};
}

SupportedQuantale example_q2() {
  auto l = FinSupLattice::chain(3, {"0", "a", "1"});
  auto a = two_lattice();
  const std::vector<Elem> mult = {0, 0, 0,  //
                                  0, 2, 2,  //
                                  0, 2, 2};
  Quantale q = Quantale::build(l, mult, {0, 1, 2});
  std::vector<Elem> lact = {0, 0, 0, 0, 1, 2};  // 0.x = 0, 1.x = x
  std::vector<Elem> ract = {0, 0, 0, 1, 0, 2};
  BasedQuantale b = BasedQuantale::build(std::move(q), a, std::move(lact), std::move(ract));
  return {b, build_join_map(l, a, {0, 1, 1}), Map(l, a, {0, 0, 1})};
}

SupportedQuantale retract_example(std::size_t points) {
  if (points == 0) throw Error(ErrorKind::BadTable, "retract needs a nonempty point set");
  auto two = two_lattice();
  auto a = FinSupLattice::powerset(points);
  Quantale q = Quantale::build(two, {0, 0, 0, 1}, {0, 1});
  std::vector<Elem> r(a->size());
  for (Elem u = 0; u < a->size(); ++u) r[u] = u & 1;
  const FrameHom rh(Map(a, two, std::move(r)));
  BasedQuantale b = change_of_base(q, rh, rh);
  return {b, build_join_map(two, a, {0, a->top()}), std::nullopt};
}

SupportedQuantale two_quantale() {
  auto two = two_lattice();
  Quantale q = Quantale::build(two, {0, 0, 0, 1}, {0, 1});
  BasedQuantale b = BasedQuantale::build(std::move(q), two, {0, 0, 0, 1}, {0, 0, 0, 1});
  return {b, build_join_map(two, two, {0, 1}), Map(two, two, {0, 1})};
}

SupportedQuantale as_supported(const GroupoidQuantale& q) {
  return {q.based, q.support().sigma, static_cast<const Map&>(q.upsilon())};
}

SupportedQuantale groupoid_quantale(const SetGroupoid& g) {
  return as_supported(quantale_from_groupoid(compile(g).groupoid));
}

GroupoidQuantale certify(const SupportedQuantale& q) {
  if (!q.upsilon) throw Error(ErrorKind::DiagramFailure, "no upsilon: not a groupoid quantale");
  return certify_groupoid_quantale(q.based, q.sigma ? &*q.sigma : nullptr, *q.upsilon);
}

}  // namespace qlab
