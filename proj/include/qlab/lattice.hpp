#pragma once

// Finite lattices, join/meet-preserving maps, Galois adjoints, open maps,
// frame quotients and equalizer subframes.
//
// Every condition on "arbitrary joins" in this library is checked through the
// bottom element plus binary joins. For finite lattices the two formulations
// coincide, and nothing downstream relies on more than that.

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "qlab/error.hpp"

namespace qlab {

using Elem = std::uint32_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;

inline constexpr Elem kNoElem = static_cast<Elem>(-1);

class FinSupLattice;
using LatticePtr = std::shared_ptr<const FinSupLattice>;

/// Hard cap on lattices with materialized n*n tables.
inline constexpr std::size_t kMaxLatticeSize = 4096;

class FinSupLattice {
 public:
  /// Closes `order_pairs` (i <= j) reflexively and transitively, then checks
  /// antisymmetry and the existence of all binary joins and meets.
  static LatticePtr from_order(std::size_t n, std::span<const std::pair<Elem, Elem>> order_pairs,
                               std::vector<std::string> labels = {});

  /// `leq(x, y)` must describe a partial order; it is validated, not closed.
  template <class Leq>
  static LatticePtr from_leq(std::size_t n, Leq&& leq, std::vector<std::string> labels = {}) {
    check_size(n);
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (leq(static_cast<Elem>(x), static_cast<Elem>(y))) down[y].set(x);
    return build(std::move(down), std::move(labels), /*close=*/false);
  }

  /// The powerset of a `points`-element set; element i is the subset with
  /// characteristic bit mask i.
  static LatticePtr powerset(std::size_t points, std::vector<std::string> point_names = {});
  static LatticePtr chain(std::size_t n, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  bool leq(Elem a, Elem b) const noexcept { return leq_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  Elem join(Elem a, Elem b) const noexcept { return join_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem meet(Elem a, Elem b) const noexcept { return meet_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }

  template <class Range>
  Elem join_of(const Range& elems) const {
    Elem acc = bottom_;
    for (auto e : elems) acc = join(acc, static_cast<Elem>(e));
    return acc;
  }

  template <class Range>
  Elem meet_of(const Range& elems) const {
    Elem acc = top_;
    for (auto e : elems) acc = meet(acc, static_cast<Elem>(e));
    return acc;
  }

  const Bits& down_set(Elem x) const { return down_[x]; }
  const Bits& up_set(Elem x) const { return up_[x]; }
  std::span<const Elem> upper_covers(Elem x) const { return upper_covers_[x]; }
  std::span<const Elem> lower_covers(Elem x) const { return lower_covers_[x]; }
  /// Elements that cover exactly one element. Every element is the join of
  /// the join-irreducibles below it.
  std::span<const Elem> join_irreducibles() const noexcept { return join_irreducibles_; }
  std::span<const Elem> meet_irreducibles() const noexcept { return meet_irreducibles_; }
  /// A linear extension of the order (ascending).
  std::span<const Elem> linear_order() const noexcept { return linear_order_; }
  bool is_join_irreducible(Elem x) const { return ji_flag_[x] != 0; }

  bool is_distributive() const noexcept { return !distributivity_witness_.has_value(); }
  /// A triple (x, y, z) with x meet (y join z) != (x meet y) join (x meet z).
  const std::optional<std::array<Elem, 3>>& distributivity_witness() const noexcept {
    return distributivity_witness_;
  }

  const std::string& label(Elem x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Elem> find(std::string_view label) const;
  Elem at(std::string_view label) const;  // throws UnresolvedName

  /// True when both lattices have the same size and identical order/labels.
  bool same_as(const FinSupLattice& other) const;

 private:
  FinSupLattice() = default;
  static void check_size(std::size_t n);
  static LatticePtr build(std::vector<Bits> down, std::vector<std::string> labels, bool close);

  std::size_t n_ = 0;
  Elem bottom_ = 0;
  Elem top_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  std::vector<Bits> down_;
  std::vector<Bits> up_;
  std::vector<std::vector<Elem>> upper_covers_;
  std::vector<std::vector<Elem>> lower_covers_;
  std::vector<Elem> join_irreducibles_;
  std::vector<Elem> meet_irreducibles_;
  std::vector<std::uint8_t> ji_flag_;
  std::vector<Elem> linear_order_;
  std::optional<std::array<Elem, 3>> distributivity_witness_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Elem> index_;
};

/// A total function between the carriers of two lattices.
class Map {
 public:
  Map() = default;
  Map(LatticePtr source, LatticePtr target, std::vector<Elem> values);

  Elem operator()(Elem x) const { return values_[x]; }
  const FinSupLattice& source() const { return *source_; }
  const FinSupLattice& target() const { return *target_; }
  const LatticePtr& source_ptr() const noexcept { return source_; }
  const LatticePtr& target_ptr() const noexcept { return target_; }
  std::span<const Elem> values() const noexcept { return values_; }

  /// `next` after `this`.
  Map then(const Map& next) const;

  friend bool operator==(const Map& a, const Map& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.values_ == b.values_;
  }

 private:
  LatticePtr source_;
  LatticePtr target_;
  std::vector<Elem> values_;
};

Map identity_map(const LatticePtr& l);

std::optional<Witness> find_monotone_violation(const Map& m);
std::optional<Witness> find_join_violation(const Map& m);
std::optional<Witness> find_meet_violation(const Map& m);

/// Preserves bottom and binary joins, hence all joins.
class JoinMap : public Map {
 public:
  JoinMap() = default;
  explicit JoinMap(Map m);  // throws NotJoinPreserving
};

/// Preserves top and binary meets, hence all meets.
class MeetMap : public Map {
 public:
  MeetMap() = default;
  explicit MeetMap(Map m);  // throws NotMeetPreserving
};

/// A join map between distributive lattices that also preserves top and
/// binary meets.
class FrameHom : public JoinMap {
 public:
  FrameHom() = default;
  explicit FrameHom(Map m);  // throws NotAFrame / NotFrameHom
};

JoinMap build_join_map(LatticePtr source, LatticePtr target, std::vector<Elem> values);

class Frame {
 public:
  explicit Frame(LatticePtr lattice);  // throws NotAFrame

  const FinSupLattice& lattice() const { return *lattice_; }
  const LatticePtr& ptr() const noexcept { return lattice_; }

 private:
  LatticePtr lattice_;
};

struct DistributivityWitness {
  Elem x, y, z;
};

std::variant<Frame, DistributivityWitness> check_frame(const LatticePtr& l);

/// g(y) = join{x | f(x) <= y}.
MeetMap right_adjoint(const JoinMap& f);
/// f(x) = meet{y | x <= g(y)}; throws NotMeetPreserving when g is not.
JoinMap left_adjoint(const Map& g);

struct OpenMapReport {
  bool semiopen = false;
  bool frobenius = false;
  bool open = false;
  std::optional<JoinMap> direct_image;
  Witness witness;
};

/// `inverse_image` is f^*: O(M) -> O(L) for a locale map f: L -> M.
OpenMapReport check_open_map(const FrameHom& inverse_image);

struct FrameQuotient {
  Frame frame;
  FrameHom map;
};

/// The quotient by the smallest frame congruence identifying each pair.
FrameQuotient frame_quotient(const Frame& f, std::span<const std::pair<Elem, Elem>> pairs);

struct Sublattice {
  LatticePtr lattice;
  std::vector<Elem> elements;  // sub id -> ambient id
  std::vector<Elem> position;  // ambient id -> sub id, or kNoElem
};

/// The subset with the induced order; throws NotALattice when it is not one.
Sublattice induced_sublattice(const FinSupLattice& ambient, std::vector<Elem> elems);

struct Subframe {
  Frame frame;
  FrameHom inclusion;
  Sublattice sub;
};

/// {a | f(a) = g(a)} with its inclusion.
Subframe equalizer_subframe(const FrameHom& f, const FrameHom& g);

}  // namespace qlab
