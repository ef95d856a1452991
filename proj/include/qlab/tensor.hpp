#pragma once

// Sup-lattice tensor products L (x) M and tensors over a base frame A.
//
// An element is a bi-ideal S of L x M, stored by its row maxima
// f: M -> L, f(y) = max{x | (x, y) in S}. Bi-ideals are exactly the maps with
// f(0) = top and f(y1 v y2) = f(y1) ^ f(y2). Over a base, S must also satisfy
// (x.a, y) in S <=> (x, a.y) in S, i.e. f(a.y) = rho_a(f(y)) where rho_a is
// the right adjoint of x |-> x.a.
//
// TensorSpace computes with these maps without enumerating the carrier;
// TensorLattice enumerates the carrier when it is small enough.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlab/lattice.hpp"

namespace qlab {

inline constexpr std::size_t kDefaultTensorBound = std::size_t{1} << 20;

/// A frame `base` acting on the right of the left factor and on the left of
/// the right factor.
struct BaseAction {
  LatticePtr base;
  std::vector<Elem> left_act;   // |L| x |A|: x.a
  std::vector<Elem> right_act;  // |A| x |M|: a.y
};

using Rows = std::vector<Elem>;

struct RowsHash {
  std::size_t operator()(const Rows& r) const noexcept;
};

class TensorSpace {
 public:
  /// Throws BadAction unless the actions are unital, join-preserving in each
  /// variable and satisfy x.(a ^ b) = (x.a).b, (a ^ b).y = a.(b.y).
  TensorSpace(LatticePtr left, LatticePtr right, std::optional<BaseAction> base = std::nullopt);

  const FinSupLattice& left() const { return *left_; }
  const FinSupLattice& right() const { return *right_; }
  const LatticePtr& left_ptr() const noexcept { return left_; }
  const LatticePtr& right_ptr() const noexcept { return right_; }
  bool has_base() const noexcept { return base_.has_value(); }
  const BaseAction* base() const noexcept { return base_ ? &*base_ : nullptr; }

  Elem act_left(Elem x, Elem a) const { return base_->left_act[static_cast<std::size_t>(x) * nbase_ + a]; }
  Elem act_right(Elem a, Elem y) const { return base_->right_act[static_cast<std::size_t>(a) * right_->size() + y]; }

  Rows bottom() const;
  Rows top() const;
  Rows pure(Elem x, Elem y) const;
  /// The least closed element containing every (f(y), y).
  Rows close(Rows f) const;
  Rows join(const Rows& a, const Rows& b) const;
  Rows meet(const Rows& a, const Rows& b) const;
  bool leq(const Rows& a, const Rows& b) const;
  bool contains(const Rows& s, Elem x, Elem y) const { return left_->leq(x, s[y]); }
  bool is_closed(const Rows& f) const { return close(f) == f; }

  /// Irredundant pure-tensor generators, e.g. "{0}⊗{1} ∨ {1}⊗{0}"; "0" for
  /// the bottom element.
  std::string label(const Rows& f) const;

 private:
  LatticePtr left_;
  LatticePtr right_;
  std::optional<BaseAction> base_;
  std::size_t nbase_ = 0;
  std::vector<Elem> base_jis_;
  std::vector<Elem> rho_;                   // |A| x |L|
  std::vector<std::vector<Elem>> ji_below_;  // right factor, non-JI rows only
  std::vector<Elem> descending_;
};

class TensorLattice {
 public:
  /// Enumerates the carrier as joins of pure tensors of join-irreducibles.
  /// Throws SizeLimitExceeded above `bound` elements, or above
  /// kMaxLatticeSize (the carrier keeps dense order tables).
  static TensorLattice materialize(TensorSpace space, std::size_t bound = kDefaultTensorBound);

  const TensorSpace& space() const noexcept { return space_; }
  const FinSupLattice& carrier() const { return *carrier_; }
  const LatticePtr& carrier_ptr() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return rows_.size(); }

  const Rows& rows(Elem e) const { return rows_[e]; }
  std::optional<Elem> find(const Rows& r) const;
  Elem element(const Rows& r) const;  // throws BadTable when r is not a carrier element
  Elem pure(Elem x, Elem y) const { return pure_[static_cast<std::size_t>(x) * space_.right().size() + y]; }
  /// The pair set of a carrier element, as a |L| x |M| membership table.
  std::vector<std::uint8_t> pairs(Elem e) const;

 private:
  explicit TensorLattice(TensorSpace space) : space_(std::move(space)) {}

  TensorSpace space_;
  LatticePtr carrier_;
  std::vector<Rows> rows_;
  std::unordered_map<Rows, Elem, RowsHash> index_;
  std::vector<Elem> pure_;
};

TensorLattice sup_tensor(const LatticePtr& l, const LatticePtr& m, std::size_t bound = kDefaultTensorBound);
TensorLattice tensor_over_base(const LatticePtr& l, const LatticePtr& m, BaseAction action,
                               std::size_t bound = kDefaultTensorBound);

/// Actions x.a = x ^ f(a) on A and a.y = g(a) ^ y on B.
BaseAction meet_actions(const FrameHom& f, const FrameHom& g);

struct FramePushout {
  TensorLattice tensor;
  Frame frame;
  FrameHom inj_left;   // a |-> pure(a, top)
  FrameHom inj_right;  // b |-> pure(top, b)
};

FramePushout frame_pushout(const FrameHom& f, const FrameHom& g, std::size_t bound = kDefaultTensorBound);

/// h is a |L| x |M| table into `target`. Throws NotBimorphism / NotMiddleLinear
/// with a witness; FactorizationFailure if the induced map misses h.
JoinMap induced_map(const TensorLattice& t, const LatticePtr& target, const std::vector<Elem>& h);

/// Finds a witness that h fails to be a bimorphism (or middle-linear when the
/// space has a base); nullopt when it is one.
std::optional<std::pair<ErrorKind, Witness>> bimorphism_violation(const TensorSpace& space,
                                                                  const FinSupLattice& target,
                                                                  const std::vector<Elem>& h);

struct OracleTensor {
  LatticePtr lattice;
  std::vector<std::vector<std::uint8_t>> sets;  // membership tables, |L| x |M|
};

/// Blind enumeration of every subset of L x M containing the bottom pairs,
/// filtered by the bi-ideal (and exchange) conditions. Test oracle only;
/// throws SizeLimitExceeded when |L|*|M| > max_pairs.
OracleTensor tensor_oracle(const LatticePtr& l, const LatticePtr& m, const std::optional<BaseAction>& base = {},
                           std::size_t max_pairs = 30);

}  // namespace qlab
