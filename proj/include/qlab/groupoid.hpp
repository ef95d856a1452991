#pragma once

// Finite localic groupoids given by inverse-image frame homomorphisms, the
// quantale of a groupoid and the groupoid of a quantale, round trips, pair
// groupoids and effective equivalence relations.
//
// Arrows compose as gh = "g then h", defined when r(g) = d(h). The frame of
// composable pairs is O1 (x)_{O0} O1 with O0 acting on the left factor
// through r* and on the right factor through d*; elements are row maps as in
// TensorSpace, and m* sends each arrow open to such a row map.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlab/lattice.hpp"
#include "qlab/quantale.hpp"
#include "qlab/tensor.hpp"
#include "qlab/workbench/isomorphism.hpp"

namespace qlab {

/// Powerset frames carry dense tables, so set groupoids are kept small.
inline constexpr std::size_t kMaxSetPoints = 12;

/// A finite groupoid in Set.
struct SetGroupoid {
  struct Arrow {
    Elem d = 0;
    Elem r = 0;
  };
  std::size_t objects = 0;
  std::vector<Arrow> arrows;
  std::vector<Elem> identity;  // per object
  std::vector<Elem> inverse;   // per arrow
  std::vector<Elem> compose;   // arrows x arrows; kNoElem unless r(g) = d(h)
  std::vector<std::string> object_names;
  std::vector<std::string> arrow_names;

  Elem then(Elem g, Elem h) const { return compose[static_cast<std::size_t>(g) * arrows.size() + h]; }
  /// Throws BadGroupTable on the first violated groupoid law.
  void validate() const;
};

/// All pairs (x, y) of an n-set, composing (x,y)(y,z) = (x,z).
SetGroupoid pair_set_groupoid(std::size_t n);
/// One object; `table` is a group multiplication table on 0..k-1.
SetGroupoid group_set_groupoid(const std::vector<std::vector<Elem>>& table);
SetGroupoid cyclic_set_groupoid(std::size_t k);
/// The equivalence relation of a partition of 0..n-1.
SetGroupoid partition_set_groupoid(const std::vector<std::vector<Elem>>& blocks);

struct LocalicGroupoid {
  Frame objects;  // O0
  Frame arrows;   // O1
  FrameHom dstar;
  FrameHom rstar;
  FrameHom ustar;
  FrameHom istar;
  std::shared_ptr<const TensorSpace> pairs;  // O2
  std::vector<Rows> mstar;                   // per element of O1
  std::size_t checksum = 0;                  // of the structure maps and m*

  const FinSupLattice& o0() const { return objects.lattice(); }
  const FinSupLattice& o1() const { return arrows.lattice(); }
};

struct GroupoidReport {
  std::vector<CheckResult> diagrams;
  OpenMapReport d_open;

  bool ok() const;
  const CheckResult* find(std::string_view name) const;
};

struct BuiltGroupoid {
  LocalicGroupoid groupoid;
  GroupoidReport report;
};

/// The frame of composable pairs for the given structure maps.
std::shared_ptr<const TensorSpace> composable_pairs(const FrameHom& dstar, const FrameHom& rstar);

/// Validates the structure maps against each other and evaluates every
/// groupoid diagram; associativity is evaluated when O1 has at most
/// `materialize_pairs` pairs and is otherwise reported as skipped. Throws
/// BadTable when an m* row is not an element of O2.
BuiltGroupoid build_localic_groupoid(Frame o0, Frame o1, FrameHom dstar, FrameHom rstar, FrameHom ustar,
                                     FrameHom istar, std::vector<Rows> mstar,
                                     std::size_t materialize_pairs = kMaterializePairs);

/// Powerset frames with preimage homomorphisms; m* from composition.
BuiltGroupoid compile(const SetGroupoid& g, std::size_t materialize_pairs = kMaterializePairs);

/// A based quantale certified by is_groupoid_quantale.
struct GroupoidQuantale {
  BasedQuantale based;
  GroupoidQuantaleReport report;

  const Support& support() const { return *report.support; }
  const FrameHom& upsilon() const { return report.reflexive_structure->upsilon; }
};

/// Throws DiagramFailure unless every groupoid-quantale flag holds.
GroupoidQuantale certify_groupoid_quantale(const BasedQuantale& b, const JoinMap* sigma, const Map& upsilon);

/// O0 = A, O1 = Q, d*(a) = a.1, r*(a) = 1.a, u* = upsilon, i* = involution,
/// m*(q) = join{x (x) y | xy <= q}. Throws DiagramFailure when a diagram
/// fails or d_! differs from the support.
BuiltGroupoid groupoid_from_quantale(const GroupoidQuantale& q, std::size_t materialize_pairs = kMaterializePairs);

/// Q = O1 with ab = m_!(a (x) b), involution i_!, restrictions by meets with
/// d*, r*, support d_! and upsilon = u*. Throws NotOpen when d is not open
/// and DiagramFailure when the result is not a groupoid quantale.
GroupoidQuantale quantale_from_groupoid(const LocalicGroupoid& g);

struct GroupoidRoundTrip {
  BuiltGroupoid groupoid;       // G(O(G)) or G(Q)
  GroupoidQuantale quantale;    // O(G) or O(G(Q))
  Isomorphism iso;              // between the input and the reconstruction
};

GroupoidRoundTrip roundtrip_check(const LocalicGroupoid& g);
GroupoidRoundTrip roundtrip_check(const GroupoidQuantale& q);

struct PairGroupoid {
  TensorLattice carrier;            // Q (x)_A Q with A acting through d* on both factors
  GroupoidQuantale quantale;        // built by the pair-groupoid formulas over base Q
  BuiltGroupoid groupoid;           // the pair groupoid of the arrow locale of G(Q)
  GroupoidQuantale from_groupoid;   // O of that groupoid
  Isomorphism iso;                  // quantale ~ from_groupoid
};

PairGroupoid pair_groupoid(const GroupoidQuantale& q, std::size_t bound = kDefaultTensorBound);

struct EffectivenessReport {
  std::vector<Elem> orbit;  // E = {a | d*(a) = r*(a)}
  std::size_t kernel_pair_size = 0;
  bool effective = false;
  bool principal = false;
  Witness witness;
};

/// Throws EquivalenceMismatch when effectiveness and principality of O(G)
/// disagree.
EffectivenessReport check_effective_equivalence(const LocalicGroupoid& g, std::size_t bound = kDefaultTensorBound);

/// u is open, i.e. u* has a left adjoint satisfying Frobenius reciprocity.
bool is_etale(const LocalicGroupoid& g);

}  // namespace qlab
