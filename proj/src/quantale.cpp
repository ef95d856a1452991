#include "qlab/quantale.hpp"

#include <algorithm>
#include <map>

#include "qlab/check.hpp"

namespace qlab {

namespace {

using kernels::TupleIndex;

template <class Pred, class Wit>
void require(ErrorKind kind, const std::string& what, std::uint64_t count, Pred&& violates, Wit&& witness_of) {
  const auto r = kernels::scan(count, std::forward<Pred>(violates));
  if (!r.ok())
    throw Error(kind, what + " (" + std::to_string(r.violations) + " violations)", witness_of(r.first));
}

bool all_passed(const std::vector<CheckResult>& cs, std::size_t from = 0) {
  for (std::size_t i = from; i < cs.size(); ++i)
    if (!cs[i].skipped && !cs[i].passed) return false;
  return true;
}

std::vector<Elem> right_sided(const Quantale& q) {
  std::vector<Elem> out;
  for (Elem a = 0; a < q.size(); ++a)
    if (q.lattice().leq(q.mul(a, q.one()), a)) out.push_back(a);
  return out;
}

std::vector<Elem> left_sided(const Quantale& q) {
  std::vector<Elem> out;
  for (Elem a = 0; a < q.size(); ++a)
    if (q.lattice().leq(q.mul(q.one(), a), a)) out.push_back(a);
  return out;
}

/// join{x ^ y | x y* <= a}, through the residual.
Elem inverse_join(const Quantale& q, Elem a) {
  const auto& l = q.lattice();
  Elem acc = l.bottom();
  for (Elem y = 0; y < q.size(); ++y) acc = l.join(acc, l.meet(q.left_residual(q.star(y), a), y));
  return acc;
}

/// join{x | x x* <= a}.
Elem self_inverse_join(const Quantale& q, Elem a) {
  const auto& l = q.lattice();
  Elem acc = l.bottom();
  for (Elem x = 0; x < q.size(); ++x)
    if (l.leq(q.mul(x, q.star(x)), a)) acc = l.join(acc, x);
  return acc;
}

void require_same(const FinSupLattice& expected, const FinSupLattice& got, const char* what) {
  if (&expected != &got && !expected.same_as(got)) throw Error(ErrorKind::BadTable, std::string(what) + " has the wrong carrier");
}

CheckResult upsilon_support_check(const BasedQuantale& b, const JoinMap& sigma, const Map& ups) {
  const auto& a = b.base();
  return scan_check(
      "upsilon-support", b.size(), [&](std::uint64_t x) { return ups(b.mul(static_cast<Elem>(x), b.one())) != sigma(static_cast<Elem>(x)); },
      [&](std::uint64_t x) {
        const Elem e = static_cast<Elem>(x);
        return Witness{{"a", b.lattice().label(e)},
                       {"υ(a·1)", a.label(ups(b.mul(e, b.one())))},
                       {"ς(a)", a.label(sigma(e))}};
      });
}

CheckResult upsilon_equivariant_check(const BasedQuantale& b, const Map& ups) {
  const auto& a = b.base();
  const std::size_t n = b.size();
  return scan_check(
      "upsilon-equivariant", a.size() * n,
      [&](std::uint64_t i) {
        const Elem c = static_cast<Elem>(i / n), x = static_cast<Elem>(i % n);
        const Elem x1 = b.mul(x, b.one());
        return ups(b.lact(c, x1)) != a.meet(c, ups(x1));
      },
      [&](std::uint64_t i) {
        const Elem c = static_cast<Elem>(i / n), x = static_cast<Elem>(i % n);
        return Witness{{"b", a.label(c)}, {"a", b.lattice().label(x)}};
      });
}

}  // namespace

// ---------------------------------------------------------------------------
// Quantale

Quantale Quantale::build(LatticePtr lp, std::vector<Elem> mult, std::vector<Elem> inv, std::optional<Elem> declared_unit) {
  const auto& l = *lp;
  const std::size_t n = l.size();
  if (mult.size() != n * n || inv.size() != n) throw Error(ErrorKind::BadTable, "quantale table has the wrong size");
  for (Elem v : mult)
    if (v >= n) throw Error(ErrorKind::BadTable, "product value out of range");
  for (Elem v : inv)
    if (v >= n) throw Error(ErrorKind::BadTable, "involution value out of range");
  auto m = [&](Elem a, Elem b) { return mult[static_cast<std::size_t>(a) * n + b]; };
  auto lab = [&](Elem x) { return l.label(x); };

  for (Elem x = 0; x < n; ++x)
    if (inv[inv[x]] != x) throw Error(ErrorKind::BadInvolution, "x** != x", {{"x", lab(x)}, {"x**", lab(inv[inv[x]])}});
  require(
      ErrorKind::BadInvolution, "involution is not monotone", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return l.leq(x, y) && !l.leq(inv[x], inv[y]);
      },
      [&](std::uint64_t i) { return Witness{{"x", lab(static_cast<Elem>(i / n))}, {"y", lab(static_cast<Elem>(i % n))}}; });

  for (Elem x = 0; x < n; ++x)
    if (m(x, l.bottom()) != l.bottom() || m(l.bottom(), x) != l.bottom())
      throw Error(ErrorKind::NotBilinear, "product with 0 is not 0", {{"x", lab(x)}});
  const TupleIndex<3> t3{{n, n, n}};
  require(
      ErrorKind::NotBilinear, "product does not preserve binary joins", t3.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        t3.decode(i, v);
        const Elem yz = l.join(v[1], v[2]);
        return m(v[0], yz) != l.join(m(v[0], v[1]), m(v[0], v[2])) || m(yz, v[0]) != l.join(m(v[1], v[0]), m(v[2], v[0]));
      },
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        t3.decode(i, v);
        return Witness{{"x", lab(v[0])}, {"y", lab(v[1])}, {"z", lab(v[2])}};
      });
  require(
      ErrorKind::NotAssociative, "(xy)z != x(yz)", t3.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        t3.decode(i, v);
        return m(m(v[0], v[1]), v[2]) != m(v[0], m(v[1], v[2]));
      },
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        t3.decode(i, v);
        return Witness{{"x", lab(v[0])}, {"y", lab(v[1])}, {"z", lab(v[2])}};
      });
  require(
      ErrorKind::BadInvolution, "(xy)* != y*x*", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return inv[m(x, y)] != m(inv[y], inv[x]);
      },
      [&](std::uint64_t i) { return Witness{{"x", lab(static_cast<Elem>(i / n))}, {"y", lab(static_cast<Elem>(i % n))}}; });

  auto is_unit = [&](Elem e) {
    for (Elem x = 0; x < n; ++x)
      if (m(e, x) != x || m(x, e) != x) return false;
    return true;
  };
  std::optional<Elem> unit;
  for (Elem e = 0; e < n && !unit; ++e)
    if (is_unit(e)) unit = e;
  if (declared_unit) {
    if (*declared_unit >= n) throw Error(ErrorKind::BadTable, "unit out of range");
    if (!unit || *unit != *declared_unit) {
      Witness w{{"e", lab(*declared_unit)}};
      for (Elem x = 0; x < n; ++x)
        if (m(*declared_unit, x) != x || m(x, *declared_unit) != x) {
          w.push_back({"x", lab(x)});
          break;
        }
      throw Error(ErrorKind::BadUnit, "declared unit is not a two-sided unit", std::move(w));
    }
  }

  auto d = std::make_shared<Data>();
  d->l = std::move(lp);
  d->n = n;
  d->unit = unit;
  // x.y <= q iff j.y <= q for every join-irreducible j <= x.
  d->lres.assign(n * n, l.bottom());
  for (Elem q = 0; q < n; ++q)
    for (Elem y = 0; y < n; ++y) {
      Elem acc = l.bottom();
      for (Elem j : l.join_irreducibles())
        if (l.leq(m(j, y), q)) acc = l.join(acc, j);
      d->lres[static_cast<std::size_t>(q) * n + y] = acc;
    }
  d->mult = std::move(mult);
  d->inv = std::move(inv);
  return Quantale(std::move(d));
}

SidedElements sided_elements(const Quantale& q) {
  SidedElements s{right_sided(q), left_sided(q), {}};
  std::set_intersection(s.right.begin(), s.right.end(), s.left.begin(), s.left.end(), std::back_inserter(s.two_sided));
  return s;
}

// ---------------------------------------------------------------------------
// BasedQuantale

BasedQuantale BasedQuantale::build(Quantale q, LatticePtr base, std::vector<Elem> lact, std::vector<Elem> ract) {
  const Frame frame(base);
  const auto& l = q.lattice();
  const auto& a = *base;
  const std::size_t n = l.size(), na = a.size();
  if (lact.size() != na * n || ract.size() != n * na) throw Error(ErrorKind::BadTable, "action table has the wrong size");
  // Module axioms for both actions.
  (void)TensorSpace(q.lattice_ptr(), q.lattice_ptr(), BaseAction{base, ract, lact});

  auto la = [&](Elem c, Elem x) { return lact[static_cast<std::size_t>(c) * n + x]; };
  auto ra = [&](Elem x, Elem c) { return ract[static_cast<std::size_t>(x) * na + c]; };
  auto lq = [&](Elem x) { return l.label(x); };
  auto lb = [&](Elem c) { return a.label(c); };

  const TupleIndex<3> aqa{{na, n, na}};
  require(
      ErrorKind::BadAction, "(a.x).b != a.(x.b)", aqa.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqa.decode(i, v);
        return ra(la(v[0], v[1]), v[2]) != la(v[0], ra(v[1], v[2]));
      },
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqa.decode(i, v);
        return Witness{{"a", lb(v[0])}, {"x", lq(v[1])}, {"b", lb(v[2])}};
      });
  const TupleIndex<3> aqq{{na, n, n}};
  auto wit_axy = [&](std::uint64_t i) {
    std::uint32_t v[3];
    aqq.decode(i, v);
    return Witness{{"a", lb(v[0])}, {"x", lq(v[1])}, {"y", lq(v[2])}};
  };
  require(
      ErrorKind::BadAction, "(a.x)y != a.(xy)", aqq.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqq.decode(i, v);
        return q.mul(la(v[0], v[1]), v[2]) != la(v[0], q.mul(v[1], v[2]));
      },
      wit_axy);
  require(
      ErrorKind::BadAction, "(x.a)y != x(a.y)", aqq.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqq.decode(i, v);
        return q.mul(ra(v[1], v[0]), v[2]) != q.mul(v[1], la(v[0], v[2]));
      },
      wit_axy);
  require(
      ErrorKind::BadAction, "(xy).a != x(y.a)", aqq.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqq.decode(i, v);
        return ra(q.mul(v[1], v[2]), v[0]) != q.mul(v[1], ra(v[2], v[0]));
      },
      wit_axy);
  require(
      ErrorKind::BadAction, "(a.x.b)* != b.x*.a", aqa.count(),
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqa.decode(i, v);
        return q.star(ra(la(v[0], v[1]), v[2])) != ra(la(v[2], q.star(v[1])), v[0]);
      },
      [&](std::uint64_t i) {
        std::uint32_t v[3];
        aqa.decode(i, v);
        return Witness{{"a", lb(v[0])}, {"x", lq(v[1])}, {"b", lb(v[2])}};
      });

  std::optional<Witness> qf_witness;
  if (auto w = l.distributivity_witness()) {
    qf_witness = Witness{{"x", lq((*w)[0])}, {"y", lq((*w)[1])}, {"z", lq((*w)[2])}};
  } else {
    const auto r = kernels::scan(aqq.count(), [&](std::uint64_t i) {
      std::uint32_t v[3];
      aqq.decode(i, v);
      return l.meet(la(v[0], v[1]), v[2]) != la(v[0], l.meet(v[1], v[2])) ||
             l.meet(ra(v[1], v[0]), v[2]) != ra(l.meet(v[1], v[2]), v[0]);
    });
    if (!r.ok()) qf_witness = wit_axy(r.first);
  }
  return BasedQuantale(std::make_shared<Data>(
      Data{std::move(q), std::move(base), std::move(lact), std::move(ract), std::move(qf_witness)}));
}

BaseAction BasedQuantale::tensor_action() const { return BaseAction{d_->a, d_->ract, d_->lact}; }

BasedQuantale change_of_base(const Quantale& q, const FrameHom& dstar, const FrameHom& rstar) {
  require_same(q.lattice(), dstar.target(), "d*");
  require_same(q.lattice(), rstar.target(), "r*");
  require_same(dstar.source(), rstar.source(), "r*");
  const auto& l = q.lattice();
  const std::size_t n = l.size(), na = dstar.source().size();
  std::vector<Elem> lact(na * n), ract(n * na);
  for (Elem c = 0; c < na; ++c)
    for (Elem x = 0; x < n; ++x) {
      lact[static_cast<std::size_t>(c) * n + x] = l.meet(dstar(c), x);
      ract[static_cast<std::size_t>(x) * na + c] = l.meet(x, rstar(c));
    }
  return BasedQuantale::build(q, dstar.source_ptr(), std::move(lact), std::move(ract));
}

// ---------------------------------------------------------------------------
// Supports

SupportClass classify_support(const BasedQuantale& b, const JoinMap& sigma) {
  const auto& l = b.lattice();
  const auto& a = b.base();
  const std::size_t n = b.size(), na = a.size();
  auto lq = [&](Elem x) { return l.label(x); };
  auto pair_w = [&](std::uint64_t i) { return Witness{{"x", lq(static_cast<Elem>(i / n))}, {"y", lq(static_cast<Elem>(i % n))}}; };

  SupportClass c;
  const auto f1 = kernels::scan(n * n, [&](std::uint64_t i) {
    const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
    return !a.leq(sigma(b.mul(x, y)), sigma(x));
  });
  const auto f2 = kernels::scan(n, [&](std::uint64_t x) {
    return sigma(b.mul(static_cast<Elem>(x), b.one())) != sigma(static_cast<Elem>(x));
  });
  const auto f3 = kernels::scan(n * n, [&](std::uint64_t i) {
    const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
    return sigma(b.mul(x, y)) != sigma(b.ract(x, sigma(y)));
  });
  c.stable_forms = {f1.ok(), f2.ok(), f3.ok()};
  if (f1.ok() != f2.ok() || f1.ok() != f3.ok()) {
    Witness w;
    if (!f1.ok()) w = pair_w(f1.first);
    else if (!f2.ok()) w = {{"x", lq(static_cast<Elem>(f2.first))}};
    else w = pair_w(f3.first);
    throw Error(ErrorKind::EquivalenceMismatch, "stability formulations disagree", std::move(w));
  }
  c.stable = f1.ok();
  if (!c.stable) c.stable_witness = pair_w(f1.first);

  const auto eq = kernels::scan(na * n, [&](std::uint64_t i) {
    const Elem e = static_cast<Elem>(i / n), x = static_cast<Elem>(i % n);
    return sigma(b.lact(e, x)) != a.meet(e, sigma(x));
  });
  c.equivariant = eq.ok();
  if (!eq.ok()) {
    const Elem e = static_cast<Elem>(eq.first / n), x = static_cast<Elem>(eq.first % n);
    c.equivariance_witness = {{"a", a.label(e)},
                              {"x", lq(x)},
                              {"ς(a·x)", a.label(sigma(b.lact(e, x)))},
                              {"a∧ς(x)", a.label(a.meet(e, sigma(x)))}};
  }
  if (c.equivariant && !c.stable)
    throw Error(ErrorKind::EquivalenceMismatch, "equivariant support is not stable", c.stable_witness);
  return c;
}

Support check_support(const BasedQuantale& b, const JoinMap& sigma) {
  const auto& l = b.lattice();
  const auto& a = b.base();
  require_same(l, sigma.source(), "support");
  require_same(a, sigma.target(), "support");
  const std::size_t n = b.size();
  const Elem one = b.one();
  auto lq = [&](Elem x) { return l.label(x); };
  auto pair_w = [&](std::uint64_t i) { return Witness{{"x", lq(static_cast<Elem>(i / n))}, {"y", lq(static_cast<Elem>(i % n))}}; };
  auto one_w = [&](std::uint64_t x) { return Witness{{"x", lq(static_cast<Elem>(x))}}; };

  Support s;
  s.sigma = sigma;
  s.checks.push_back(flag_check("support-unit", sigma(one) == a.top(), {{"ς(1)", a.label(sigma(one))}}));
  s.checks.push_back(scan_check(
      "support-bound", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return !l.leq(b.lact(sigma(x), y), b.mul(b.mul(x, b.star(x)), y));
      },
      pair_w));
  s.checks.push_back(scan_check(
      "support-restricts", n, [&](std::uint64_t x) { return b.lact(sigma(static_cast<Elem>(x)), static_cast<Elem>(x)) != x; },
      one_w));
  s.valid = all_passed(s.checks);
  if (!s.valid) return s;

  s.checks.push_back(scan_check(
      "involution-of-restriction", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return b.star(b.lact(sigma(x), y)) != b.ract(b.star(y), sigma(x));
      },
      pair_w));
  s.checks.push_back(scan_check(
      "right-restriction-bound", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return !l.leq(b.ract(y, sigma(x)), b.mul(y, b.mul(x, b.star(x))));
      },
      pair_w));
  s.checks.push_back(scan_check(
      "strongly-gelfand", n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i);
        return !l.leq(x, b.mul(b.mul(x, b.star(x)), x));
      },
      one_w));
  s.checks.push_back(scan_check(
      "below-right-closure", n, [&](std::uint64_t i) { return !l.leq(static_cast<Elem>(i), b.mul(static_cast<Elem>(i), one)); },
      one_w));
  s.checks.push_back(flag_check("top-idempotent", b.mul(one, one) == one, {{"1·1", lq(b.mul(one, one))}}));
  s.checks.push_back(scan_check(
      "support-of-right-closure", n,
      [&](std::uint64_t i) {
        const Elem x1 = b.mul(static_cast<Elem>(i), one);
        return b.dstar(sigma(x1)) != x1;
      },
      one_w));
  s.checks.push_back(scan_check(
      "right-sided-retraction", n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i);
        return l.leq(b.mul(x, one), x) && b.dstar(sigma(x)) != x;
      },
      one_w));
  s.checks.push_back(scan_check(
      "right-support", n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i);
        return b.ract(x, sigma(b.star(x))) != x;
      },
      one_w));

  const SupportClass c = classify_support(b, sigma);
  s.stable = c.stable;
  s.equivariant = c.equivariant;
  s.checks.push_back(flag_check("stability-forms-agree", true, {},
                                c.stable ? "stable" : "not stable: " + format_witness(c.stable_witness)));
  s.checks.push_back(flag_check("equivariant-implies-stable", !c.equivariant || c.stable));

  // Compare with the adjoint candidate.
  try {
    const JoinMap cand = left_adjoint(Map(b.base_ptr(), b.lattice_ptr(), [&] {
      std::vector<Elem> v(a.size());
      for (Elem e = 0; e < a.size(); ++e) v[e] = b.dstar(e);
      return v;
    }()));
    std::optional<Elem> diff;
    for (Elem x = 0; x < n && !diff; ++x)
      if (cand(x) != sigma(x)) diff = x;
    if (!diff) {
      s.checks.push_back(flag_check("adjoint-candidate", true));
    } else {
      Witness w{{"x", lq(*diff)}, {"ς(x)", a.label(sigma(*diff))}, {"candidate", a.label(cand(*diff))}};
      if (s.equivariant)
        s.checks.push_back(flag_check("adjoint-candidate", false, std::move(w)));
      else
        s.checks.push_back(skipped_check("adjoint-candidate", "differs from the adjoint candidate at " + format_witness(w)));
    }
  } catch (const Error& e) {
    if (s.equivariant) throw;
    s.checks.push_back(skipped_check("adjoint-candidate", "a ↦ a·1 has no left adjoint"));
  }
  return s;
}

Support check_support(const BasedQuantale& b, std::vector<Elem> sigma_values) {
  return check_support(b, build_join_map(b.lattice_ptr(), b.base_ptr(), std::move(sigma_values)));
}

std::variant<Support, NoSupport> derive_support(const BasedQuantale& b) {
  const auto& a = b.base();
  std::vector<Elem> d(a.size());
  for (Elem e = 0; e < a.size(); ++e) d[e] = b.dstar(e);
  JoinMap cand;
  try {
    cand = left_adjoint(Map(b.base_ptr(), b.lattice_ptr(), std::move(d)));
  } catch (const Error& e) {
    return NoSupport{"a ↦ a·1 does not preserve meets", e.witness()};
  }
  Support s = check_support(b, cand);
  if (!s.valid) {
    for (const auto& c : s.checks)
      if (!c.passed) return NoSupport{"adjoint candidate violates " + c.name, c.witness};
  }
  if (!s.equivariant) {
    return NoSupport{"adjoint candidate is not equivariant", classify_support(b, cand).equivariance_witness};
  }
  return s;
}

bool UnitalReflection::ok() const { return all_passed(checks); }

UnitalReflection unital_reflection(const BasedQuantale& b, const Support& s) {
  const auto& q = b.quantale();
  if (!q.unit()) throw Error(ErrorKind::NotUnital, "quantale has no unit");
  const Elem e = *q.unit();
  const auto& l = b.lattice();
  const std::size_t n = b.size();
  auto one_w = [&](std::uint64_t x) { return Witness{{"x", l.label(static_cast<Elem>(x))}}; };

  UnitalReflection r;
  r.sigma_e.resize(n);
  for (Elem x = 0; x < n; ++x) r.sigma_e[x] = b.lact(s.sigma(x), e);
  const auto& se = r.sigma_e;
  r.checks.push_back(scan_check("unital-support-below-unit", n, [&](std::uint64_t x) { return !l.leq(se[x], e); }, one_w));
  r.checks.push_back(scan_check(
      "unital-support-below-xx*", n,
      [&](std::uint64_t x) { return !l.leq(se[x], q.mul(static_cast<Elem>(x), q.star(static_cast<Elem>(x)))); }, one_w));
  r.checks.push_back(scan_check(
      "unital-support-restricts", n,
      [&](std::uint64_t x) { return !l.leq(static_cast<Elem>(x), q.mul(se[x], static_cast<Elem>(x))); }, one_w));
  if (!s.stable) {
    r.checks.push_back(skipped_check("unital-support-formulas", "support is not stable"));
    r.checks.push_back(skipped_check("stable-frame-identities", "support is not stable"));
    return r;
  }
  r.checks.push_back(scan_check(
      "unital-support-formulas", n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i);
        return se[x] != l.meet(q.mul(x, q.one()), e) || se[x] != l.meet(q.mul(x, q.star(x)), e);
      },
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i);
        return Witness{{"a", l.label(x)},
                       {"ς_e(a)", l.label(se[x])},
                       {"a1∧e", l.label(l.meet(q.mul(x, q.one()), e))},
                       {"aa*∧e", l.label(l.meet(q.mul(x, q.star(x)), e))}};
      }));
  if (!l.is_distributive()) {
    r.checks.push_back(skipped_check("stable-frame-identities", "quantale is not a frame"));
    return r;
  }
  r.checks.push_back(scan_check(
      "stable-frame-identities", n,
      [&](std::uint64_t i) {
        const Elem a = static_cast<Elem>(i);
        const Elem lhs = q.mul(l.meet(a, e), q.one());
        return !l.leq(inverse_join(q, a), lhs) || !l.leq(self_inverse_join(q, a), lhs);
      },
      [&](std::uint64_t a) { return Witness{{"a", l.label(static_cast<Elem>(a))}}; }));
  return r;
}

// ---------------------------------------------------------------------------
// Reflexive structures

ReflexiveStructure check_reflexive(const BasedQuantale& b, const Map& upsilon, const Support* s) {
  require_same(b.lattice(), upsilon.source(), "upsilon");
  require_same(b.base(), upsilon.target(), "upsilon");
  ReflexiveStructure r{FrameHom(upsilon), {}};
  const auto& a = b.base();
  for (Elem c = 0; c < a.size(); ++c) {
    const Elem u1 = upsilon(b.dstar(c)), u2 = upsilon(b.rstar(c));
    if (u1 != c || u2 != c)
      throw Error(ErrorKind::NotReflexive, "υ(a·1) = a = υ(1·a) fails",
                  {{"a", a.label(c)}, {"υ(a·1)", a.label(u1)}, {"υ(1·a)", a.label(u2)}});
  }
  r.checks.push_back(flag_check("reflexive", true));
  if (!s || !s->valid || !s->stable || !b.is_quantal_frame()) {
    r.checks.push_back(skipped_check("upsilon-support", "needs a stable support on a quantal frame"));
  } else {
    r.checks.push_back(upsilon_support_check(b, s->sigma, upsilon));
  }
  if (!s || !s->valid || !s->equivariant || !b.is_quantal_frame()) {
    r.checks.push_back(skipped_check("upsilon-equivariant", "needs an equivariant support on a quantal frame"));
  } else {
    r.checks.push_back(upsilon_equivariant_check(b, upsilon));
  }
  return r;
}

ReflexiveStructure check_reflexive(const BasedQuantale& b, std::vector<Elem> upsilon_values, const Support* s) {
  return check_reflexive(b, Map(b.lattice_ptr(), b.base_ptr(), std::move(upsilon_values)), s);
}

// ---------------------------------------------------------------------------
// Reduced multiplication

ReducedMultiplication reduced_multiplication(const BasedQuantale& b, std::size_t materialize_pairs, std::size_t bound) {
  const auto& q = b.quantale();
  const auto& l = b.lattice();
  const std::size_t n = b.size();
  ReducedMultiplication rm{TensorSpace(b.lattice_ptr(), b.lattice_ptr(), b.tensor_action()), {}, false, {}, {}, {}, {}};
  const auto& sp = rm.space;

  rm.mstar.resize(n);
  for (Elem p = 0; p < n; ++p) {
    Rows f(n);
    for (Elem y = 0; y < n; ++y) f[y] = q.left_residual(y, p);
    rm.mstar[p] = std::move(f);
  }
  rm.checks.push_back(scan_check(
      "reduced-adjoint-closed", n, [&](std::uint64_t p) { return !sp.is_closed(rm.mstar[p]); },
      [&](std::uint64_t p) { return Witness{{"q", l.label(static_cast<Elem>(p))}}; }));
  // Independently: the closure of the pure tensors j (x) k of join-irreducibles with jk <= q.
  rm.checks.push_back(scan_check(
      "reduced-adjoint-generated", n,
      [&](std::uint64_t p) {
        Rows f = sp.bottom();
        for (Elem j : l.join_irreducibles())
          for (Elem k : l.join_irreducibles())
            if (l.leq(q.mul(j, k), static_cast<Elem>(p))) f[k] = l.join(f[k], j);
        return sp.close(std::move(f)) != rm.mstar[p];
      },
      [&](std::uint64_t p) { return Witness{{"q", l.label(static_cast<Elem>(p))}}; }));

  // Join preservation: for every q with two lower covers c1 v c2 = q.
  rm.multiplicative = rm.mstar[l.bottom()] == sp.bottom();
  if (!rm.multiplicative) rm.witness = {{"q", l.label(l.bottom())}};
  for (Elem p : l.linear_order()) {
    if (!rm.multiplicative) break;
    const auto lc = l.lower_covers(p);
    if (lc.size() < 2) continue;
    if (l.is_distributive()) {
      if (sp.join(rm.mstar[lc[0]], rm.mstar[lc[1]]) != rm.mstar[p]) {
        rm.multiplicative = false;
        rm.witness = {{"q", l.label(p)}, {"q1", l.label(lc[0])}, {"q2", l.label(lc[1])}};
      }
    } else {
      for (Elem x = 0; x < n && rm.multiplicative; ++x)
        for (Elem y = 0; y < n && rm.multiplicative; ++y)
          if (l.join(x, y) == p && sp.join(rm.mstar[x], rm.mstar[y]) != rm.mstar[p]) {
            rm.multiplicative = false;
            rm.witness = {{"q", l.label(p)}, {"q1", l.label(x)}, {"q2", l.label(y)}};
          }
    }
  }
  rm.checks.push_back(flag_check("multiplicative", rm.multiplicative, rm.witness));

  if (n * n <= materialize_pairs) {
    rm.tensor = TensorLattice::materialize(sp, bound);
    const auto& t = *rm.tensor;
    std::vector<Elem> h(q.mult_table().begin(), q.mult_table().end());
    try {
      rm.mu = induced_map(t, b.lattice_ptr(), h);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotMiddleLinear || e.kind() == ErrorKind::NotBimorphism)
        throw Error(ErrorKind::FactorizationFailure, "multiplication does not factor through the base tensor", e.witness());
      throw;
    }
    const MeetMap ra = right_adjoint(*rm.mu);
    rm.checks.push_back(scan_check(
        "reduced-adjoint-agrees", n, [&](std::uint64_t p) { return t.rows(ra(static_cast<Elem>(p))) != rm.mstar[p]; },
        [&](std::uint64_t p) { return Witness{{"q", l.label(static_cast<Elem>(p))}}; }));
    const bool eager = !find_join_violation(ra).has_value();
    rm.checks.push_back(flag_check("multiplicative-agrees", eager == rm.multiplicative));
  }

  if (q.unit()) {
    const PartialUnits pu = partial_units(q);
    if (pu.inverse_quantal_frame) {
      rm.checks.push_back(scan_check(
          "partial-unit-formula", n,
          [&](std::uint64_t i) {
            const Elem p = static_cast<Elem>(i);
            Rows f = sp.bottom();
            for (Elem u : pu.units) {
              const Elem v = q.mul(q.star(u), p);
              f[v] = l.join(f[v], u);
            }
            return sp.close(std::move(f)) != rm.mstar[p];
          },
          [&](std::uint64_t p) { return Witness{{"q", l.label(static_cast<Elem>(p))}}; }));
    }
  }
  return rm;
}

// ---------------------------------------------------------------------------
// Unit and inverse laws, partial units

LawReport check_unit_laws(const BasedQuantale& b, const FrameHom& upsilon) {
  const auto& q = b.quantale();
  const auto& l = b.lattice();
  const std::size_t n = b.size();
  LawReport r;
  r.lhs.resize(n);
  r.rhs.resize(n);
  for (Elem a = 0; a < n; ++a) {
    Elem acc = l.bottom();
    for (Elem y = 0; y < n; ++y) acc = l.join(acc, b.lact(upsilon(q.left_residual(y, a)), y));
    r.lhs[a] = acc;
    r.rhs[a] = a;
    if (acc != a) {
      if (r.violations++ == 0) r.witness = {{"a", l.label(a)}, {"⋁{υ(x)·y | xy≤a}", l.label(acc)}};
    }
  }
  r.holds = r.violations == 0;
  return r;
}

LawReport check_inverse_laws(const BasedQuantale& b, const FrameHom& upsilon) {
  const auto& q = b.quantale();
  const auto& l = b.lattice();
  const std::size_t n = b.size();
  LawReport r;
  r.lhs.resize(n);
  r.rhs.resize(n);
  for (Elem a = 0; a < n; ++a) {
    const Elem both = inverse_join(q, a);
    const Elem self = self_inverse_join(q, a);
    if (both != self)
      throw Error(ErrorKind::FormMismatch, "the two forms of the inverse-law join disagree",
                  {{"a", l.label(a)}, {"⋁{x∧y | xy*≤a}", l.label(both)}, {"⋁{x | xx*≤a}", l.label(self)}});
    r.lhs[a] = b.dstar(upsilon(a));
    r.rhs[a] = both;
    if (r.lhs[a] != both) {
      if (r.violations++ == 0)
        r.witness = {{"a", l.label(a)}, {"υ(a)·1", l.label(r.lhs[a])}, {"⋁{x | xx*≤a}", l.label(both)}};
    }
  }
  r.holds = r.violations == 0;
  return r;
}

PartialUnits partial_units(const Quantale& q) {
  if (!q.unit()) throw Error(ErrorKind::NotUnital, "quantale has no unit");
  const auto& l = q.lattice();
  PartialUnits p;
  p.join = l.bottom();
  for (Elem s = 0; s < q.size(); ++s)
    if (l.leq(l.join(q.mul(s, q.star(s)), q.mul(q.star(s), s)), *q.unit())) {
      p.units.push_back(s);
      p.join = l.join(p.join, s);
    }
  p.inverse_quantal_frame = p.join == l.top();
  return p;
}

GroupoidQuantaleReport is_groupoid_quantale(const BasedQuantale& b, const JoinMap* sigma, const Map* upsilon) {
  GroupoidQuantaleReport g;
  auto& cs = g.checks;
  g.quantal_frame = b.is_quantal_frame();
  cs.push_back(flag_check("quantal-frame", g.quantal_frame, b.quantal_frame_witness().value_or(Witness{})));

  if (sigma) {
    g.support = check_support(b, *sigma);
  } else {
    auto d = derive_support(b);
    if (auto* s = std::get_if<Support>(&d)) g.support = std::move(*s);
    else cs.push_back(flag_check("equivariant-support", false, std::get<NoSupport>(d).witness, std::get<NoSupport>(d).reason));
  }
  if (g.support) {
    g.equivariant_support = g.support->valid && g.support->equivariant;
    Witness w;
    for (const auto& c : g.support->checks)
      if (!c.passed && !c.skipped) {
        w = c.witness;
        break;
      }
    cs.push_back(flag_check("equivariant-support", g.equivariant_support, std::move(w),
                            g.support->valid ? (g.support->equivariant ? "" : "support is not equivariant") : "support axioms fail"));
  }

  if (!upsilon) {
    cs.push_back(flag_check("reflexive", false, {}, "no υ given"));
  } else if (!g.quantal_frame) {
    cs.push_back(flag_check("reflexive", false, {}, "not a quantal frame"));
  } else {
    try {
      g.reflexive_structure = check_reflexive(b, *upsilon, g.support ? &*g.support : nullptr);
      g.reflexive = true;
      cs.push_back(flag_check("reflexive", true));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotReflexive && e.kind() != ErrorKind::NotFrameHom && e.kind() != ErrorKind::NotAFrame)
        throw;
      cs.push_back(flag_check("reflexive", false, e.witness(), e.what()));
    }
  }

  const ReducedMultiplication rm = reduced_multiplication(b);
  g.multiplicative = rm.multiplicative;
  cs.push_back(flag_check("multiplicative", g.multiplicative, rm.witness));

  if (g.reflexive) {
    g.unit_report = check_unit_laws(b, g.reflexive_structure->upsilon);
    g.inverse_report = check_inverse_laws(b, g.reflexive_structure->upsilon);
    g.unit_laws = g.unit_report->holds;
    g.inverse_laws = g.inverse_report->holds;
    cs.push_back(flag_check("unit-laws", g.unit_laws, g.unit_report->witness));
    cs.push_back(flag_check("inverse-laws", g.inverse_laws, g.inverse_report->witness));
  } else {
    cs.push_back(skipped_check("unit-laws", "needs a reflexive structure"));
    cs.push_back(skipped_check("inverse-laws", "needs a reflexive structure"));
  }

  if (b.quantale().unit()) {
    const PartialUnits pu = partial_units(b.quantale());
    g.inverse_quantal_frame = pu.inverse_quantal_frame;
    if (g.reflexive && g.equivariant_support && g.quantal_frame) {
      cs.push_back(flag_check("inverse-laws-iff-partial-units-cover", g.inverse_laws == pu.inverse_quantal_frame,
                              {{"⋁ℐ(Q)", b.lattice().label(pu.join)}}));
      cs.push_back(flag_check("inverse-laws-imply-unit-laws", !g.inverse_laws || g.unit_laws));
    } else {
      cs.push_back(skipped_check("inverse-laws-iff-partial-units-cover", "needs an equivariantly supported reflexive quantal frame"));
      cs.push_back(skipped_check("inverse-laws-imply-unit-laws", "needs an equivariantly supported reflexive quantal frame"));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Principality

namespace {

FrameHom inclusion_hom(const Sublattice& from, const Sublattice& into) {
  std::vector<Elem> v(from.elements.size());
  for (Elem i = 0; i < v.size(); ++i) v[i] = into.position[from.elements[i]];
  return FrameHom(Map(from.lattice, into.lattice, std::move(v)));
}

bool bijective(const JoinMap& f) {
  if (f.source().size() != f.target().size()) return false;
  std::vector<std::uint8_t> hit(f.target().size());
  for (Elem v : f.values()) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

}  // namespace

PrincipalityReport check_principal(const BasedQuantale& b, const Support& s, std::size_t bound) {
  if (!s.valid || !s.equivariant || !b.is_quantal_frame())
    throw Error(ErrorKind::NoSupport, "principality needs an equivariantly supported quantal frame");
  const auto& l = b.lattice();
  const auto& a = b.base();
  PrincipalityReport p;
  p.sided = sided_elements(b.quantale());

  // (i) R (x)_T L -> Q.
  const Sublattice rs = induced_sublattice(l, p.sided.right);
  const Sublattice ls = induced_sublattice(l, p.sided.left);
  const Sublattice ts = induced_sublattice(l, p.sided.two_sided);
  const FramePushout rl = frame_pushout(inclusion_hom(ts, rs), inclusion_hom(ts, ls), bound);
  p.rl_tensor_size = rl.tensor.size();
  const std::size_t nr = rs.elements.size(), nl = ls.elements.size();
  std::vector<Elem> h(nr * nl);
  for (Elem i = 0; i < nr; ++i)
    for (Elem j = 0; j < nl; ++j) h[static_cast<std::size_t>(i) * nl + j] = l.meet(rs.elements[i], ls.elements[j]);
  const JoinMap canon = induced_map(rl.tensor, b.lattice_ptr(), h);
  p.canonical_iso = bijective(canon);

  // Pure tensors r (x) l are determined by r ^ l.
  std::map<Elem, Elem> by_meet;
  p.pure_tensor_injective = true;
  for (Elem i = 0; i < nr && p.pure_tensor_injective; ++i)
    for (Elem j = 0; j < nl; ++j) {
      const Elem m = h[static_cast<std::size_t>(i) * nl + j];
      const Elem t = rl.tensor.pure(i, j);
      auto [it, fresh] = by_meet.emplace(m, t);
      if (!fresh && it->second != t) {
        p.pure_tensor_injective = false;
        p.witness = {{"r", l.label(rs.elements[i])}, {"l", l.label(ls.elements[j])}, {"r∧l", l.label(m)}};
        break;
      }
    }

  // (ii) The cokernel pair of E -> A compared with Q.
  std::vector<Elem> dv(a.size()), rv(a.size());
  for (Elem c = 0; c < a.size(); ++c) {
    dv[c] = b.dstar(c);
    rv[c] = b.rstar(c);
  }
  const FrameHom d(Map(b.base_ptr(), b.lattice_ptr(), std::move(dv)));
  const FrameHom r(Map(b.base_ptr(), b.lattice_ptr(), std::move(rv)));
  const Subframe eq = equalizer_subframe(d, r);
  p.equalized = eq.sub.elements;
  const FramePushout kp = frame_pushout(eq.inclusion, eq.inclusion, bound);
  p.pushout_size = kp.tensor.size();
  std::vector<Elem> h2(a.size() * a.size());
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y) h2[static_cast<std::size_t>(x) * a.size() + y] = l.meet(d(x), r(y));
  const JoinMap comp = induced_map(kp.tensor, b.lattice_ptr(), h2);
  p.cokernel_iso = bijective(comp);

  if (p.canonical_iso != p.cokernel_iso)
    throw Error(ErrorKind::EquivalenceMismatch, "the two principality tests disagree",
                {{"R⊗L size", std::to_string(p.rl_tensor_size)}, {"pushout size", std::to_string(p.pushout_size)}});
  p.principal = p.canonical_iso;
  if (!p.principal && p.witness.empty())
    p.witness = {{"|R⊗_T L|", std::to_string(p.rl_tensor_size)}, {"|Q|", std::to_string(l.size())}};
  return p;
}

// ---------------------------------------------------------------------------
// Homomorphisms

HomReport check_based_hom(const BasedQuantale& src, const BasedQuantale& dst, const std::vector<Elem>& f1,
                          const std::vector<Elem>& f0, const JoinMap* sigma_src, const JoinMap* sigma_dst) {
  const auto& lq = src.lattice();
  const auto& lr = dst.lattice();
  const auto& aq = src.base();
  const auto& ar = dst.base();
  const std::size_t n = lq.size(), na = aq.size();
  if (f1.size() != n || f0.size() != na) throw Error(ErrorKind::BadTable, "homomorphism table has the wrong size");
  for (Elem v : f1)
    if (v >= lr.size()) throw Error(ErrorKind::BadTable, "homomorphism value out of range");
  for (Elem v : f0)
    if (v >= ar.size()) throw Error(ErrorKind::BadTable, "homomorphism value out of range");
  auto pair_w = [&](std::uint64_t i) { return Witness{{"x", lq.label(static_cast<Elem>(i / n))}, {"y", lq.label(static_cast<Elem>(i % n))}}; };
  auto ax_w = [&](std::uint64_t i) { return Witness{{"a", aq.label(static_cast<Elem>(i / n))}, {"x", lq.label(static_cast<Elem>(i % n))}}; };

  HomReport r;
  auto& cs = r.checks;
  cs.push_back(flag_check("f1-bottom", f1[lq.bottom()] == lr.bottom()));
  cs.push_back(scan_check(
      "f1-joins", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return f1[lq.join(x, y)] != lr.join(f1[x], f1[y]);
      },
      pair_w));
  cs.push_back(scan_check(
      "f1-product", n * n,
      [&](std::uint64_t i) {
        const Elem x = static_cast<Elem>(i / n), y = static_cast<Elem>(i % n);
        return f1[src.mul(x, y)] != dst.mul(f1[x], f1[y]);
      },
      pair_w));
  cs.push_back(scan_check(
      "f1-involution", n, [&](std::uint64_t x) { return f1[src.star(static_cast<Elem>(x))] != dst.star(f1[x]); },
      [&](std::uint64_t x) { return Witness{{"x", lq.label(static_cast<Elem>(x))}}; }));
  try {
    (void)FrameHom(Map(src.base_ptr(), dst.base_ptr(), f0));
    cs.push_back(flag_check("f0-frame-hom", true));
  } catch (const Error& e) {
    cs.push_back(flag_check("f0-frame-hom", false, e.witness(), e.what()));
  }
  cs.push_back(scan_check(
      "actions-preserved", na * n,
      [&](std::uint64_t i) {
        const Elem c = static_cast<Elem>(i / n), x = static_cast<Elem>(i % n);
        return f1[src.lact(c, x)] != dst.lact(f0[c], f1[x]) || f1[src.ract(x, c)] != dst.ract(f1[x], f0[c]);
      },
      ax_w));
  r.hom = all_passed(cs);
  r.strong = f1[src.one()] == dst.one();
  if (sigma_src && sigma_dst) {
    const auto sc = kernels::scan(n, [&](std::uint64_t x) { return f0[(*sigma_src)(static_cast<Elem>(x))] != (*sigma_dst)(f1[x]); });
    r.support_commuting = sc.ok();
    Witness w;
    if (!sc.ok()) {
      const Elem x = static_cast<Elem>(sc.first);
      w = {{"x", lq.label(x)}, {"f0(ς(x))", ar.label(f0[(*sigma_src)(x)])}, {"ς(f1(x))", ar.label((*sigma_dst)(f1[x]))}};
    }
    // Strong homomorphisms into an equivariantly supported target commute with supports.
    const Support ss = check_support(src, *sigma_src);
    const Support sd = check_support(dst, *sigma_dst);
    if (r.hom && r.strong && ss.valid && sd.valid && sd.equivariant)
      cs.push_back(flag_check("strong-hom-commutes", *r.support_commuting, w));
    else
      cs.push_back(skipped_check("strong-hom-commutes", "needs a strong homomorphism into an equivariantly supported quantale"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lemma suite

std::vector<CheckResult> lemma_checks(const BasedQuantale& b, const Support& s, const ReflexiveStructure* r) {
  std::vector<CheckResult> out;
  const auto& q = b.quantale();
  const auto& l = b.lattice();
  const auto& a = b.base();
  const std::size_t n = l.size(), na = a.size();
  const JoinMap& sg = s.sigma;
  if (!s.valid) {
    out.push_back(skipped_check("support-lemmas", "support axioms fail"));
    return out;
  }
  for (const auto& c : s.checks) out.push_back(c);

  const SidedElements sided = sided_elements(q);
  out.push_back(scan_check(
      "two-sided-self-adjoint", sided.two_sided.size(),
      [&](std::uint64_t i) { return q.star(sided.two_sided[i]) != sided.two_sided[i]; },
      [&](std::uint64_t i) { return Witness{{"a", l.label(sided.two_sided[i])}}; }));

  const char* need_eq = "needs an equivariant support";
  if (s.equivariant) {
    out.push_back(scan_check(
        "right-sided-iso", na * na + n,
        [&](std::uint64_t i) {
          if (i < na * na) {
            const Elem x = static_cast<Elem>(i / na), y = static_cast<Elem>(i % na);
            return a.leq(x, y) != l.leq(b.dstar(x), b.dstar(y)) || sg(b.dstar(x)) != x;
          }
          const Elem x = static_cast<Elem>(i - na * na);
          return l.leq(q.mul(x, q.one()), x) && b.dstar(sg(x)) != x;
        },
        [&](std::uint64_t i) {
          if (i < na * na) return Witness{{"a", a.label(static_cast<Elem>(i / na))}, {"b", a.label(static_cast<Elem>(i % na))}};
          return Witness{{"x", l.label(static_cast<Elem>(i - na * na))}};
        }));
    out.push_back(scan_check(
        "support-characterization", na * n,
        [&](std::uint64_t i) {
          const Elem c = static_cast<Elem>(i / n), x = static_cast<Elem>(i % n);
          return b.lact(c, x) == x && l.leq(b.dstar(c), q.mul(x, q.one())) && c != sg(x);
        },
        [&](std::uint64_t i) { return Witness{{"a", a.label(static_cast<Elem>(i / n))}, {"x", l.label(static_cast<Elem>(i % n))}}; }));
  } else {
    out.push_back(skipped_check("right-sided-iso", need_eq));
    out.push_back(skipped_check("support-characterization", need_eq));
  }

  if (s.equivariant && b.is_quantal_frame()) {
    out.push_back(scan_check(
        "support-meet-right-sided", sided.right.size() * n,
        [&](std::uint64_t i) {
          const Elem x = sided.right[i / n], y = static_cast<Elem>(i % n);
          return sg(l.meet(x, y)) != a.meet(sg(x), sg(y));
        },
        [&](std::uint64_t i) { return Witness{{"x", l.label(sided.right[i / n])}, {"y", l.label(static_cast<Elem>(i % n))}}; }));
  } else {
    out.push_back(skipped_check("support-meet-right-sided", "needs an equivariantly supported quantal frame"));
  }

  if (q.unit()) {
    const Elem e = *q.unit();
    out.push_back(scan_check(
        "restriction-hom", na * na,
        [&](std::uint64_t i) {
          const Elem x = static_cast<Elem>(i / na), y = static_cast<Elem>(i % na);
          return b.lact(a.meet(x, y), e) != q.mul(b.lact(x, e), b.lact(y, e));
        },
        [&](std::uint64_t i) { return Witness{{"a", a.label(static_cast<Elem>(i / na))}, {"b", a.label(static_cast<Elem>(i % na))}}; }));
    for (auto& c : unital_reflection(b, s).checks) out.push_back(std::move(c));
  } else {
    out.push_back(skipped_check("restriction-hom", "quantale has no unit"));
  }

  if (r) {
    if (s.stable && b.is_quantal_frame()) out.push_back(upsilon_support_check(b, sg, r->upsilon));
    else out.push_back(skipped_check("upsilon-support", "needs a stable support on a quantal frame"));
    if (s.equivariant && b.is_quantal_frame()) out.push_back(upsilon_equivariant_check(b, r->upsilon));
    else out.push_back(skipped_check("upsilon-equivariant", "needs an equivariant support on a quantal frame"));
  }
  return out;
}

}  // namespace qlab
