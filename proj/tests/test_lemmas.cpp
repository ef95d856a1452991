#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "qlab/quantale.hpp"
#include "qlab/workbench/corpus.hpp"
#include "qlab/workbench/generators.hpp"
#include "qlab/workbench/oracles.hpp"

using namespace qlab;

namespace {

struct Instance {
  std::string name;
  SupportedQuantale q;
  Support support;
  std::optional<ReflexiveStructure> reflexive;
};

// Every corpus quantale that carries a valid support.
std::vector<Instance> instances() {
  std::vector<Instance> out;
  for (auto& [name, sq] : corpus_quantales(true)) {
    std::optional<Support> s;
    if (sq.sigma) {
      s = check_support(sq.based, *sq.sigma);
    } else if (auto d = derive_support(sq.based); std::holds_alternative<Support>(d)) {
      s = std::get<Support>(d);
    }
    if (!s || !s->valid) continue;
    std::optional<ReflexiveStructure> r;
    if (sq.upsilon) {
      try {
        r = check_reflexive(sq.based, *sq.upsilon, &*s);
      } catch (const Error&) {
      }
    }
    out.push_back({name, sq, *s, r});
  }
  return out;
}

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> all = instances();
  return all;
}

// Runs `violates` over every instance whose support meets `needs` and
// returns the total number of violations.
template <class Needs, class Fn>
std::uint64_t over_corpus(Needs&& needs, Fn&& violations) {
  std::uint64_t bad = 0;
  std::size_t ran = 0;
  for (const auto& in : corpus()) {
    if (!needs(in)) continue;
    ++ran;
    const auto v = violations(in);
    EXPECT_EQ(v, 0u) << in.name;
    bad += v;
  }
  EXPECT_GT(ran, 0u);
  return bad;
}

bool any(const Instance&) { return true; }
bool stable(const Instance& in) { return in.support.stable; }
bool equivariant(const Instance& in) { return in.support.equivariant; }

}  // namespace

TEST(SupportLemmas, InvolutionOfRestriction) {
  // (sigma(x).y)* = y*.sigma(x)
  EXPECT_EQ(over_corpus(any, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x)
                for (Elem y = 0; y < b.size(); ++y)
                  bad += b.star(b.lact(in.support.sigma(x), y)) != b.ract(b.star(y), in.support.sigma(x));
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, RightRestrictionBound) {
  // y.sigma(x) <= y x x*
  EXPECT_EQ(over_corpus(any, [](const Instance& in) {
              const auto& b = in.q.based;
              const auto& l = b.lattice();
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x)
                for (Elem y = 0; y < b.size(); ++y)
                  bad += !l.leq(b.ract(y, in.support.sigma(x)), b.mul(b.mul(y, x), b.star(x)));
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, StronglyGelfand) {
  EXPECT_EQ(over_corpus(any, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x) bad += !b.lattice().leq(x, b.mul(b.mul(x, b.star(x)), x));
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, BelowRightClosure) {
  EXPECT_EQ(over_corpus(any, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x) bad += !b.lattice().leq(x, b.mul(x, b.one()));
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, TopIsIdempotent) {
  EXPECT_EQ(over_corpus(any, [](const Instance& in) {
              const auto& b = in.q.based;
              return std::uint64_t{b.mul(b.one(), b.one()) != b.one()};
            }),
            0u);
}

TEST(SupportLemmas, SupportOfRightClosure) {
  // sigma(x1).1 = x1
  EXPECT_EQ(over_corpus(stable, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x) {
                const Elem x1 = b.mul(x, b.one());
                bad += b.dstar(in.support.sigma(x1)) != x1;
              }
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, RightSidedRetraction) {
  EXPECT_EQ(over_corpus(stable, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x : sided_elements(b.quantale()).right) bad += b.dstar(in.support.sigma(x)) != x;
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, RightSidedElementsAreOrderIsomorphicToBase) {
  // a |-> a.1 is a bijection A -> R(Q), monotone both ways, inverse sigma.
  EXPECT_EQ(over_corpus(equivariant, [](const Instance& in) {
              const auto& b = in.q.based;
              const auto right = sided_elements(b.quantale()).right;
              std::uint64_t bad = right.size() != b.base().size();
              for (Elem a = 0; a < b.base().size(); ++a) {
                bad += in.support.sigma(b.dstar(a)) != a;
                for (Elem c = 0; c < b.base().size(); ++c)
                  bad += b.base().leq(a, c) != b.lattice().leq(b.dstar(a), b.dstar(c));
              }
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, SupportCharacterization) {
  // a.x = x and a.1 <= x1 force a = sigma(x).
  EXPECT_EQ(over_corpus(equivariant, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x)
                for (Elem a = 0; a < b.base().size(); ++a)
                  if (b.lact(a, x) == x && b.lattice().leq(b.dstar(a), b.mul(x, b.one())))
                    bad += a != in.support.sigma(x);
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, SupportPreservesMeetsOfRightSidedElements) {
  EXPECT_EQ(over_corpus(equivariant, [](const Instance& in) {
              const auto& b = in.q.based;
              const auto right = sided_elements(b.quantale()).right;
              std::uint64_t bad = 0;
              for (Elem x : right)
                for (Elem y : right)
                  bad += in.support.sigma(b.lattice().meet(x, y)) !=
                         b.base().meet(in.support.sigma(x), in.support.sigma(y));
              return bad;
            }),
            0u);
}

TEST(SupportLemmas, RightSupport) {
  // x.sigma(x*) = x
  EXPECT_EQ(over_corpus(any, [](const Instance& in) {
              const auto& b = in.q.based;
              std::uint64_t bad = 0;
              for (Elem x = 0; x < b.size(); ++x) bad += b.ract(x, in.support.sigma(b.star(x))) != x;
              return bad;
            }),
            0u);
}

TEST(ReflexiveLemmas, RestrictionIsMultiplicative) {
  // (a ^ b).e = (a.e)(b.e) in unital based quantales with equivariant support.
  EXPECT_EQ(over_corpus(
                [](const Instance& in) { return in.support.equivariant && in.q.based.quantale().unit(); },
                [](const Instance& in) {
                  const auto& b = in.q.based;
                  const Elem e = *b.quantale().unit();
                  std::uint64_t bad = 0;
                  for (Elem a = 0; a < b.base().size(); ++a)
                    for (Elem c = 0; c < b.base().size(); ++c)
                      bad += b.lact(b.base().meet(a, c), e) != b.mul(b.lact(a, e), b.lact(c, e));
                  return bad;
                }),
            0u);
}

TEST(ReflexiveLemmas, UpsilonOfRightClosureIsSupport) {
  EXPECT_EQ(over_corpus(
                [](const Instance& in) { return in.support.equivariant && in.reflexive.has_value(); },
                [](const Instance& in) {
                  const auto& b = in.q.based;
                  const auto& u = in.reflexive->upsilon;
                  std::uint64_t bad = 0;
                  for (Elem x = 0; x < b.size(); ++x) bad += u(b.mul(x, b.one())) != in.support.sigma(x);
                  return bad;
                }),
            0u);
}

TEST(ReflexiveLemmas, UpsilonIsEquivariant) {
  // upsilon(b.x1) = b ^ upsilon(x1)
  EXPECT_EQ(over_corpus(
                [](const Instance& in) { return in.support.equivariant && in.reflexive.has_value(); },
                [](const Instance& in) {
                  const auto& q = in.q.based;
                  const auto& u = in.reflexive->upsilon;
                  std::uint64_t bad = 0;
                  for (Elem a = 0; a < q.base().size(); ++a)
                    for (Elem x = 0; x < q.size(); ++x) {
                      const Elem x1 = q.mul(x, q.one());
                      bad += u(q.lact(a, x1)) != q.base().meet(a, u(x1));
                    }
                  return bad;
                }),
            0u);
}

TEST(SupportLemmas, LibraryLemmaChecksReportNoViolations) {
  const std::vector<std::string> required = {
      "involution-of-restriction", "right-restriction-bound", "strongly-gelfand",   "below-right-closure",
      "top-idempotent",            "support-of-right-closure", "right-sided-retraction", "right-sided-iso",
      "support-characterization",  "support-meet-right-sided", "restriction-hom",   "upsilon-support",
      "upsilon-equivariant"};
  for (const auto& in : corpus()) {
    const auto checks = lemma_checks(in.q.based, in.support, in.reflexive ? &*in.reflexive : nullptr);
    for (const auto& c : checks) {
      if (c.skipped) continue;
      EXPECT_TRUE(c.passed) << in.name << ": " << c.name << " " << format_witness(c.witness);
      EXPECT_EQ(c.violations, 0u);
    }
    const bool full = in.support.equivariant && in.reflexive && in.q.based.quantale().unit();
    if (!full) continue;
    for (const auto& name : required) {
      bool ran = false;
      for (const auto& c : checks) ran |= c.name == name && !c.skipped;
      EXPECT_TRUE(ran) << in.name << ": " << name;
    }
  }
}

TEST(HomLemmas, StrongHomsCommuteWithSupports) {
  std::size_t strong = 0;
  for (const auto& src : corpus())
    for (const auto& dst : corpus()) {
      if (src.q.based.size() > 4 || dst.q.based.size() > 4) continue;
      if (!src.support.equivariant || !dst.support.equivariant) continue;
      for (const auto& h : enumerate_homs(src.q.based, dst.q.based, &src.support.sigma, &dst.support.sigma)) {
        ASSERT_TRUE(h.report.hom);
        ASSERT_TRUE(h.report.support_commuting);
        if (!h.report.strong) continue;
        ++strong;
        EXPECT_TRUE(*h.report.support_commuting) << src.name << " -> " << dst.name;
      }
    }
  EXPECT_GT(strong, 0u);
}

TEST(HomLemmas, ZeroEndomorphismDoesNotCommuteWithSupport) {
  const auto two = two_quantale();
  const auto homs = enumerate_homs(two.based, two.based, &*two.sigma, &*two.sigma);
  ASSERT_EQ(homs.size(), 2u);
  for (const auto& h : homs) {
    EXPECT_EQ(h.f0, (std::vector<Elem>{0, 1}));
    const bool zero = h.f1 == std::vector<Elem>{0, 0};
    EXPECT_EQ(h.report.strong, !zero);
    EXPECT_EQ(*h.report.support_commuting, !zero);
  }
}

TEST(HomLemmas, EnumeratedHomsAreExactlyTheValidTables) {
  // Blind check: every pair of tables TWO -> Rel(1) that passes check_based_hom is enumerated.
  const auto src = two_quantale();
  const auto dst = rel_quantale(1);
  std::size_t valid = 0;
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b)
      for (Elem c = 0; c < 2; ++c)
        for (Elem d = 0; d < 2; ++d) valid += check_based_hom(src.based, dst.based, {a, b}, {c, d}).hom;
  EXPECT_EQ(enumerate_homs(src.based, dst.based).size(), valid);
}
