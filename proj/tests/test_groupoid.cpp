#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "qlab/groupoid.hpp"
#include "qlab/workbench/corpus.hpp"
#include "qlab/workbench/generators.hpp"
#include "qlab/workbench/isomorphism.hpp"

using namespace qlab;

namespace {

// Number of arrows x -> y counted from the set groupoid directly.
std::size_t hom_count(const SetGroupoid& g, Elem x, Elem y) {
  std::size_t n = 0;
  for (const auto& a : g.arrows) n += a.d == x && a.r == y;
  return n;
}

bool principal_by_counting(const SetGroupoid& g) {
  for (Elem x = 0; x < g.objects; ++x)
    for (Elem y = 0; y < g.objects; ++y)
      if (hom_count(g, x, y) > 1) return false;
  return true;
}

}  // namespace

TEST(Groupoid, SetGroupoidsSatisfyGroupoidLaws) {
  for (const auto& [name, g] : corpus_groupoids()) EXPECT_NO_THROW(g.validate()) << name;
  EXPECT_EQ(pair_set_groupoid(3).arrows.size(), 9u);
  EXPECT_EQ(cyclic_set_groupoid(2).arrows.size(), 2u);
  EXPECT_EQ(partition_set_groupoid({{0, 1}, {2}}).arrows.size(), 5u);
}

TEST(Groupoid, BadGroupTableIsRejected) {
  // Not associative on three elements.
  const std::vector<std::vector<Elem>> table = {{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
  try {
    group_set_groupoid(table).validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadGroupTable);
  }
}

TEST(Groupoid, CompiledDiagramsAllHold) {
  for (const auto& [name, g] : corpus_groupoids()) {
    const BuiltGroupoid b = compile(g);
    EXPECT_TRUE(b.report.ok()) << name;
    EXPECT_TRUE(b.report.d_open.open) << name;
    EXPECT_TRUE(is_etale(b.groupoid)) << name;
    EXPECT_EQ(b.groupoid.o0().size(), std::size_t{1} << g.objects);
    EXPECT_EQ(b.groupoid.o1().size(), std::size_t{1} << g.arrows.size());
  }
}

TEST(Groupoid, BrokenInverseFailsDiagrams) {
  const BuiltGroupoid good = compile(pair_set_groupoid(2));
  const auto& g = good.groupoid;
  // Replace i* by the identity: (0,1) is no longer sent to (1,0).
  const FrameHom wrong(identity_map(g.arrows.ptr()));
  bool rejected = false;
  try {
    const BuiltGroupoid b = build_localic_groupoid(g.objects, g.arrows, g.dstar, g.rstar, g.ustar, wrong, g.mstar);
    rejected = !b.report.ok();
  } catch (const Error&) {
    rejected = true;
  }
  EXPECT_TRUE(rejected);
}

TEST(Groupoid, QuantaleOfPairGroupoidIsRelations) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const GroupoidQuantale q = quantale_from_groupoid(compile(pair_set_groupoid(n)).groupoid);
    EXPECT_TRUE(q.report.all());
    EXPECT_NO_THROW(find_isomorphism(q.based, rel_quantale(n).based));
  }
}

TEST(Groupoid, QuantaleOfGroupIsGroupRing) {
  // O(Z/2) is P(Z/2) with the pointwise group product.
  const GroupoidQuantale q = quantale_from_groupoid(compile(cyclic_set_groupoid(2)).groupoid);
  ASSERT_EQ(q.based.size(), 4u);
  for (Elem u = 0; u < 4; ++u)
    for (Elem v = 0; v < 4; ++v) {
      Elem expect = 0;
      for (unsigned g = 0; g < 2; ++g)
        for (unsigned h = 0; h < 2; ++h)
          if ((u >> g & 1) && (v >> h & 1)) expect |= Elem{1} << ((g + h) % 2);
      EXPECT_EQ(q.based.mul(u, v), expect);
    }
  EXPECT_EQ(q.based.base().size(), 2u);
}

TEST(Groupoid, RoundTripsFromGroupoids) {
  for (const auto& [name, g] : corpus_groupoids()) {
    if (name == "PAIR(3)") continue;  // covered by the acceptance suite
    const BuiltGroupoid b = compile(g);
    const GroupoidRoundTrip rt = roundtrip_check(b.groupoid);
    EXPECT_TRUE(is_groupoid_isomorphism(b.groupoid, rt.groupoid.groupoid, rt.iso)) << name;
  }
}

TEST(Groupoid, RoundTripsFromQuantales) {
  for (const auto& [name, sq] : corpus_quantales(false)) {
    if (!sq.upsilon) continue;
    const auto rep = is_groupoid_quantale(sq.based, sq.sigma ? &*sq.sigma : nullptr, &*sq.upsilon);
    if (!rep.all()) continue;
    const GroupoidQuantale gq = certify(sq);
    const GroupoidRoundTrip rt = roundtrip_check(gq);
    EXPECT_TRUE(is_based_isomorphism(gq.based, rt.quantale.based, rt.iso)) << name;
  }
}

TEST(Groupoid, GroupoidOfNonGroupoidQuantaleIsRefused) {
  EXPECT_THROW(certify(example_q1()), Error);
  EXPECT_THROW(certify(example_q2()), Error);
  EXPECT_THROW(certify(retract_example()), Error);
}

TEST(Groupoid, EffectiveExactlyWhenPrincipal) {
  for (const auto& [name, g] : corpus_groupoids()) {
    if (name == "PAIR(3)") continue;
    const auto e = check_effective_equivalence(compile(g).groupoid);
    EXPECT_EQ(e.effective, e.principal) << name;
    EXPECT_EQ(e.effective, principal_by_counting(g)) << name;
  }
}

TEST(Groupoid, GroupIsNotEffective) {
  const auto e = check_effective_equivalence(compile(cyclic_set_groupoid(2)).groupoid);
  EXPECT_FALSE(e.effective);
  EXPECT_EQ(e.kernel_pair_size, 2u);
  EXPECT_FALSE(e.witness.empty());
}

TEST(Groupoid, PairGroupoidOfGroupQuantale) {
  const GroupoidQuantale q = quantale_from_groupoid(compile(cyclic_set_groupoid(2)).groupoid);
  const PairGroupoid pg = pair_groupoid(q);
  EXPECT_TRUE(pg.quantale.report.all());
  EXPECT_TRUE(is_based_isomorphism(pg.quantale.based, pg.from_groupoid.based, pg.iso));
  // Pairs of arrows of Z/2 over one object: 4 arrows.
  EXPECT_EQ(pg.carrier.size(), 16u);
}

TEST(Groupoid, IsomorphismSearchDistinguishesGroupoids) {
  const auto a = compile(pair_set_groupoid(2)).groupoid;
  const auto b = compile(partition_set_groupoid({{0, 1}})).groupoid;
  EXPECT_NO_THROW(find_isomorphism(a, b));
  const auto c = compile(partition_set_groupoid({{0}, {1}})).groupoid;
  EXPECT_THROW(find_isomorphism(a, c), Error);
}
