#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "qlab/quantale.hpp"
#include "qlab/workbench/corpus.hpp"
#include "qlab/workbench/generators.hpp"
#include "qlab/workbench/oracles.hpp"

using namespace qlab;

namespace {

// Relations on {0,1} as 4-bit masks, bit 2x+y for (x,y); composed directly.
constexpr unsigned kPts = 2;
Elem rbit(unsigned x, unsigned y) { return Elem{1} << (x * kPts + y); }

Elem rcompose(Elem r, Elem s) {
  Elem out = 0;
  for (unsigned x = 0; x < kPts; ++x)
    for (unsigned y = 0; y < kPts; ++y)
      for (unsigned z = 0; z < kPts; ++z)
        if ((r & rbit(x, y)) && (s & rbit(y, z))) out |= rbit(x, z);
  return out;
}

Elem rtranspose(Elem r) {
  Elem out = 0;
  for (unsigned x = 0; x < kPts; ++x)
    for (unsigned y = 0; y < kPts; ++y)
      if (r & rbit(x, y)) out |= rbit(y, x);
  return out;
}

const Elem kDiag = rbit(0, 0) | rbit(1, 1);
const Elem kAll = 15;

const CheckResult* find(const std::vector<CheckResult>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return &c;
  return nullptr;
}

Support support_of(const SupportedQuantale& q) {
  return q.sigma ? check_support(q.based, *q.sigma) : std::get<Support>(derive_support(q.based));
}

}  // namespace

TEST(Quantale, RelationalCompositionMatchesDirectComputation) {
  const auto rel = rel_quantale(2);
  const auto& b = rel.based;
  ASSERT_EQ(b.size(), 16u);
  for (Elem r = 0; r < 16; ++r) {
    EXPECT_EQ(b.star(r), rtranspose(r));
    for (Elem s = 0; s < 16; ++s) EXPECT_EQ(b.mul(r, s), rcompose(r, s));
  }
  EXPECT_EQ(b.quantale().unit(), kDiag);
}

TEST(Quantale, RelationsHaveFourRightSidedAndTwoTwoSidedElements) {
  const auto sided = sided_elements(rel_quantale(2).based.quantale());
  // Right-sided relations are exactly U x X.
  std::vector<Elem> expect_right;
  for (Elem r = 0; r < 16; ++r)
    if (rcompose(r, kAll) == r) expect_right.push_back(r);
  EXPECT_EQ(expect_right.size(), 4u);
  EXPECT_EQ(sided.right, expect_right);
  EXPECT_EQ(sided.two_sided, (std::vector<Elem>{0, kAll}));
}

TEST(Quantale, PartialUnitsOfRelationsArePartialBijections) {
  const auto pu = partial_units(rel_quantale(2).based.quantale());
  std::vector<Elem> expect;
  for (Elem s = 0; s < 16; ++s) {
    const Elem both = rcompose(s, rtranspose(s)) | rcompose(rtranspose(s), s);
    if ((both & ~kDiag) == 0) expect.push_back(s);
  }
  EXPECT_EQ(expect.size(), 7u);
  EXPECT_EQ(pu.units, expect);
  EXPECT_EQ(pu.join, kAll);
  EXPECT_TRUE(pu.inverse_quantal_frame);
}

TEST(Quantale, RejectsNonAssociativeProduct) {
  // 0 < a < 1 with a.a = 0 and every other nonzero product 1.
  auto c3 = FinSupLattice::chain(3, {"0", "a", "1"});
  try {
    Quantale::build(c3, {0, 0, 0, 0, 0, 2, 0, 2, 2}, {0, 1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAssociative);
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(Quantale, RejectsNonBilinearProduct) {
  auto two = two_lattice();
  try {
    Quantale::build(two, {1, 1, 1, 1}, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBilinear);
  }
}

TEST(Quantale, RejectsBadInvolution) {
  auto two = two_lattice();
  EXPECT_THROW(Quantale::build(two, {0, 0, 0, 1}, {1, 0}), Error);
  // The product is not reversed by the identity involution.
  auto p2 = powerset_lattice(2);
  auto left_projection = [](Elem x, Elem y) { return y ? x : 0; };
  EXPECT_THROW(Quantale::from_fn(p2, left_projection, [](Elem x) { return x; }), Error);
}

TEST(Quantale, DeclaredUnitMustBeTheUnit) {
  auto c3 = FinSupLattice::chain(3, {"0", "e", "1"});
  const std::vector<Elem> mult = {0, 0, 0, 0, 1, 2, 0, 2, 2};
  EXPECT_EQ(Quantale::build(c3, mult, {0, 1, 2}).unit(), Elem{1});
  try {
    Quantale::build(c3, mult, {0, 1, 2}, Elem{2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadUnit);
  }
}

TEST(Quantale, CorpusProductsAreAssociativeAndReversed) {
  for (const auto& [name, sq] : corpus_quantales(false)) {
    const auto& b = sq.based;
    const Elem n = static_cast<Elem>(b.size());
    std::uint64_t bad = 0;
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        bad += b.star(b.mul(x, y)) != b.mul(b.star(y), b.star(x));
        for (Elem z = 0; z < n; ++z) bad += b.mul(b.mul(x, y), z) != b.mul(x, b.mul(y, z));
      }
    EXPECT_EQ(bad, 0u) << name;
  }
}

TEST(Quantale, BasedActionsAreValidated) {
  const auto two = two_quantale();
  // Acting by bottom everywhere breaks unitality of the module.
  EXPECT_THROW(BasedQuantale::build(two.based.quantale(), two_lattice(), {0, 0, 0, 0}, {0, 0, 0, 0}), Error);
}

TEST(Quantale, DerivedSupportIsTheUniqueEquivariantSupport) {
  for (const auto& [name, sq] : corpus_quantales(false)) {
    const auto all = enumerate_supports(sq.based);
    const auto eq = std::count_if(all.begin(), all.end(), [](const Support& s) { return s.equivariant; });
    const auto derived = derive_support(sq.based);
    if (const auto* s = std::get_if<Support>(&derived)) {
      EXPECT_EQ(eq, 1) << name;
      for (const auto& c : all)
        if (c.equivariant) EXPECT_EQ(c.sigma, s->sigma) << name;
    } else {
      EXPECT_EQ(eq, 0) << name;
    }
    for (const auto& s : all) {
      EXPECT_TRUE(s.valid);
      if (s.equivariant) EXPECT_TRUE(s.stable) << name;
    }
  }
}

TEST(Quantale, RetractSupportIsStableButNotEquivariant) {
  const auto r = retract_example();
  const Support s = check_support(r.based, *r.sigma);
  EXPECT_TRUE(s.valid);
  EXPECT_TRUE(s.stable);
  EXPECT_FALSE(s.equivariant);
  const auto cls = classify_support(r.based, s.sigma);
  EXPECT_EQ(cls.stable_forms, (std::array<bool, 3>{true, true, true}));
  EXPECT_FALSE(cls.equivariance_witness.empty());
  EXPECT_TRUE(std::holds_alternative<NoSupport>(derive_support(r.based)));
  EXPECT_EQ(enumerate_supports(r.based).size(), 1u);
}

TEST(Quantale, SupportAxiomViolationsAreReported) {
  const auto rel = rel_quantale(2);
  // The zero map fails x <= sigma(x).x.
  const Support s = check_support(rel.based, std::vector<Elem>(16, 0));
  EXPECT_FALSE(s.valid);
  const auto* c = find(s.checks, "support-restricts");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_FALSE(c->witness.empty());
}

TEST(Quantale, RelationSupportIsTheDomain) {
  const auto rel = rel_quantale(2);
  const Support s = support_of(rel);
  for (Elem r = 0; r < 16; ++r) {
    Elem dom = 0;
    for (unsigned x = 0; x < kPts; ++x)
      if (r & (rbit(x, 0) | rbit(x, 1))) dom |= Elem{1} << x;
    EXPECT_EQ(s.sigma(r), dom);
  }
}

TEST(Quantale, UnitalReflectionMatchesBruteForce) {
  const auto rel = rel_quantale(2);
  const auto u = unital_reflection(rel.based, support_of(rel));
  EXPECT_TRUE(u.ok());
  for (Elem a = 0; a < 16; ++a) {
    EXPECT_EQ(u.sigma_e[a], rcompose(a, kAll) & kDiag);
    EXPECT_EQ(u.sigma_e[a], rcompose(a, rtranspose(a)) & kDiag);
  }
  EXPECT_THROW(unital_reflection(example_q2().based, support_of(example_q2())), Error);
}

TEST(Quantale, Q1SatisfiesUnitLawsNotInverseLaws) {
  const auto q = example_q1();
  const FrameHom ups(*q.upsilon);
  EXPECT_TRUE(check_unit_laws(q.based, ups).holds);
  const LawReport inv = check_inverse_laws(q.based, ups);
  EXPECT_FALSE(inv.holds);
  ASSERT_GE(inv.witness.size(), 2u);
  EXPECT_EQ(inv.witness[0], (WitnessEntry{"a", "e"}));
  EXPECT_EQ(inv.witness[1], (WitnessEntry{"υ(a)·1", "1"}));
}

TEST(Quantale, Q2SatisfiesInverseLawsNotUnitLaws) {
  const auto q = example_q2();
  const FrameHom ups(*q.upsilon);
  EXPECT_TRUE(check_inverse_laws(q.based, ups).holds);
  const LawReport unit = check_unit_laws(q.based, ups);
  EXPECT_FALSE(unit.holds);
  ASSERT_GE(unit.witness.size(), 2u);
  EXPECT_EQ(unit.witness[0].label, "a");
  EXPECT_EQ(unit.witness[1].label, "0");
}

TEST(Quantale, InverseLawsMatchPartialUnitCover) {
  for (const auto& [name, sq] : corpus_quantales(false)) {
    if (!sq.based.quantale().unit() || !sq.upsilon) continue;
    const FrameHom ups(*sq.upsilon);
    const bool inverse = check_inverse_laws(sq.based, ups).holds;
    EXPECT_EQ(inverse, partial_units(sq.based.quantale()).join == sq.based.one()) << name;
    if (inverse) EXPECT_TRUE(check_unit_laws(sq.based, ups).holds) << name;
  }
}

TEST(Quantale, GroupoidQuantaleFlags) {
  for (const auto& [name, sq] : corpus_quantales(false)) {
    const auto rep = is_groupoid_quantale(sq.based, sq.sigma ? &*sq.sigma : nullptr, sq.upsilon ? &*sq.upsilon : nullptr);
    const bool expect = name != "Q1" && name != "Q2" && name != "retract";
    EXPECT_EQ(rep.all(), expect) << name;
  }
}

TEST(Quantale, RelationsArePrincipalAndQ1Q2AreNot) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto rel = rel_quantale(n);
    const auto p = check_principal(rel.based, support_of(rel));
    EXPECT_TRUE(p.principal);
    EXPECT_TRUE(p.canonical_iso);
    EXPECT_TRUE(p.cokernel_iso);
  }
  for (const auto& q : {example_q1(), example_q2()}) {
    const auto p = check_principal(q.based, support_of(q));
    EXPECT_FALSE(p.principal);
    EXPECT_EQ(p.canonical_iso, p.cokernel_iso);
    EXPECT_EQ(p.rl_tensor_size, 2u);
  }
}

TEST(Quantale, ReducedMultiplicationOfRelations) {
  const auto rel = rel_quantale(2);
  const auto red = reduced_multiplication(rel.based);
  EXPECT_TRUE(red.multiplicative);
  ASSERT_TRUE(red.mu);
  ASSERT_TRUE(red.tensor);
  // The reduced multiplication sends x (x) y to xy.
  for (Elem x = 0; x < 16; ++x)
    for (Elem y = 0; y < 16; ++y) EXPECT_EQ((*red.mu)(red.tensor->pure(x, y)), rcompose(x, y));
}

TEST(Quantale, ReflexiveStructureRejectsBadUpsilon) {
  const auto rel = rel_quantale(2);
  std::vector<Elem> full(16, 3);
  full[0] = 0;
  EXPECT_THROW(check_reflexive(rel.based, full), Error);
  EXPECT_NO_THROW(check_reflexive(rel.based, std::vector<Elem>(rel.upsilon->values().begin(), rel.upsilon->values().end())));
}

TEST(Quantale, ChangeOfBaseRestrictsByMeets) {
  const auto r = retract_example(2);
  const auto& b = r.based;
  for (Elem u = 0; u < b.base().size(); ++u)
    for (Elem x = 0; x < b.size(); ++x) EXPECT_EQ(b.lact(u, x), b.lattice().meet(u & 1, x));
}
