#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "qlab/tensor.hpp"
#include "qlab/workbench/generators.hpp"
#include "qlab/workbench/isomorphism.hpp"

using namespace qlab;

namespace {

using PairSet = std::vector<std::uint8_t>;

std::set<PairSet> carrier_sets(const TensorLattice& t) {
  std::set<PairSet> out;
  for (Elem e = 0; e < t.size(); ++e) out.insert(t.pairs(e));
  return out;
}

std::set<PairSet> oracle_sets(const OracleTensor& o) { return {o.sets.begin(), o.sets.end()}; }

std::vector<LatticePtr> small_factors() { return {two_lattice(), chain_lattice(3), powerset_lattice(2)}; }

}  // namespace

TEST(Tensor, AgreesWithOracleOnSmallFactors) {
  for (const auto& l : small_factors())
    for (const auto& m : small_factors()) {
      const TensorLattice t = sup_tensor(l, m);
      const OracleTensor o = tensor_oracle(l, m);
      EXPECT_EQ(carrier_sets(t), oracle_sets(o)) << l->size() << " x " << m->size();
      EXPECT_NO_THROW(find_isomorphism(t.carrier(), *o.lattice));
    }
}

TEST(Tensor, PowersetTensorIsPowersetOfProduct) {
  const TensorLattice t = sup_tensor(powerset_lattice(2), powerset_lattice(2));
  EXPECT_EQ(t.size(), 16u);
  EXPECT_NO_THROW(find_isomorphism(t.carrier(), *powerset_lattice(4)));
  EXPECT_TRUE(t.carrier().is_distributive());
}

TEST(Tensor, TwoIsTheUnit) {
  for (const auto& l : small_factors()) {
    const TensorLattice t = sup_tensor(two_lattice(), l);
    EXPECT_EQ(t.size(), l->size());
    EXPECT_NO_THROW(find_isomorphism(t.carrier(), *l));
  }
}

TEST(Tensor, OverBaseAgreesWithOracle) {
  for (const auto& q : {example_q1(), example_q2(), rel_quantale(1), two_quantale()}) {
    const auto& b = q.based;
    const BaseAction act = b.tensor_action();
    const TensorLattice t = tensor_over_base(b.lattice_ptr(), b.lattice_ptr(), act);
    const OracleTensor o = tensor_oracle(b.lattice_ptr(), b.lattice_ptr(), act);
    EXPECT_EQ(carrier_sets(t), oracle_sets(o));
  }
}

TEST(Tensor, PureTensorsAreBilinear) {
  const TensorLattice t = sup_tensor(chain_lattice(3), powerset_lattice(2));
  const auto& l = t.space().left();
  const auto& m = t.space().right();
  const auto& c = t.carrier();
  for (Elem y = 0; y < m.size(); ++y) EXPECT_EQ(t.pure(l.bottom(), y), c.bottom());
  for (Elem x = 0; x < l.size(); ++x) EXPECT_EQ(t.pure(x, m.bottom()), c.bottom());
  for (Elem x1 = 0; x1 < l.size(); ++x1)
    for (Elem x2 = 0; x2 < l.size(); ++x2)
      for (Elem y = 0; y < m.size(); ++y)
        EXPECT_EQ(t.pure(l.join(x1, x2), y), c.join(t.pure(x1, y), t.pure(x2, y)));
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y1 = 0; y1 < m.size(); ++y1)
      for (Elem y2 = 0; y2 < m.size(); ++y2)
        EXPECT_EQ(t.pure(x, m.join(y1, y2)), c.join(t.pure(x, y1), t.pure(x, y2)));
}

TEST(Tensor, MeetBimorphismFactorsThroughTensor) {
  // h(x, y) = x ^ y on P(2) is a bimorphism; the induced map sends x (x) y to x ^ y.
  auto p2 = powerset_lattice(2);
  const TensorLattice t = sup_tensor(p2, p2);
  std::vector<Elem> h(16);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) h[x * 4 + y] = x & y;
  EXPECT_FALSE(bimorphism_violation(t.space(), *p2, h));
  const JoinMap f = induced_map(t, p2, h);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) EXPECT_EQ(f(t.pure(x, y)), (x & y));
}

TEST(Tensor, NonBimorphismIsRejectedWithWitness) {
  auto p2 = powerset_lattice(2);
  const TensorLattice t = sup_tensor(p2, p2);
  std::vector<Elem> h(16, 3);  // constant top misses h(0, y) = 0
  const auto v = bimorphism_violation(t.space(), *p2, h);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->first, ErrorKind::NotBimorphism);
  EXPECT_FALSE(v->second.empty());
  EXPECT_THROW(induced_map(t, p2, h), Error);
}

TEST(Tensor, LabelsNameGenerators) {
  const TensorLattice t = sup_tensor(two_lattice(), two_lattice());
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.space().label(t.space().bottom()), "0");
}

TEST(Tensor, SizeBoundIsEnforced) {
  auto p3 = powerset_lattice(3);
  EXPECT_THROW(sup_tensor(p3, p3, 16), Error);
  EXPECT_THROW(tensor_oracle(p3, p3), Error);
}

TEST(Tensor, PushoutOfProjectionsIsProduct) {
  // Preimages of two maps 1 -> 1 give P(1) (x)_{P(1)} P(1) = P(1).
  auto p1 = powerset_lattice(1);
  const FrameHom id(identity_map(p1));
  const FramePushout po = frame_pushout(id, id);
  EXPECT_EQ(po.tensor.size(), 2u);
  // Two points over a one-point base: the product of the fibres.
  auto p2 = powerset_lattice(2);
  const FrameHom bang(Map(p1, p2, {0, 3}));
  const FramePushout prod = frame_pushout(bang, bang);
  EXPECT_EQ(prod.tensor.size(), 16u);
  EXPECT_TRUE(prod.tensor.carrier().is_distributive());
}
