#pragma once

// Involutive quantales, quantales based on a frame A, supports, reflexive
// structures, reduced multiplication, unit/inverse laws and principality.
//
// Conventions: in a based quantale, lact(a, x) is the left restriction a.x and
// ract(x, a) the right restriction x.a. d*(a) = a.1 and r*(a) = 1.a.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qlab/lattice.hpp"
#include "qlab/tensor.hpp"

namespace qlab {

class Quantale {
 public:
  /// Validates bilinearity, associativity and the involution by exhaustive
  /// scans, then searches for a two-sided unit. A declared unit must be it.
  static Quantale build(LatticePtr l, std::vector<Elem> mult, std::vector<Elem> inv,
                        std::optional<Elem> declared_unit = std::nullopt);

  template <class Mul, class Inv>
  static Quantale from_fn(LatticePtr l, Mul&& mul, Inv&& inv) {
    const std::size_t n = l->size();
    std::vector<Elem> m(n * n), s(n);
    for (Elem x = 0; x < n; ++x) {
      s[x] = inv(x);
      for (Elem y = 0; y < n; ++y) m[static_cast<std::size_t>(x) * n + y] = mul(x, y);
    }
    return build(std::move(l), std::move(m), std::move(s));
  }

  const FinSupLattice& lattice() const { return *d_->l; }
  const LatticePtr& lattice_ptr() const noexcept { return d_->l; }
  std::size_t size() const { return d_->n; }

  Elem mul(Elem a, Elem b) const { return d_->mult[static_cast<std::size_t>(a) * d_->n + b]; }
  Elem star(Elem a) const { return d_->inv[a]; }
  Elem zero() const { return lattice().bottom(); }
  Elem one() const { return lattice().top(); }
  const std::optional<Elem>& unit() const noexcept { return d_->unit; }
  /// The largest x with x.y <= q.
  Elem left_residual(Elem y, Elem q) const { return d_->lres[static_cast<std::size_t>(q) * d_->n + y]; }

  std::span<const Elem> mult_table() const noexcept { return d_->mult; }
  std::span<const Elem> inv_table() const noexcept { return d_->inv; }

 private:
  struct Data {
    LatticePtr l;
    std::size_t n = 0;
    std::vector<Elem> mult;
    std::vector<Elem> inv;
    std::vector<Elem> lres;  // q * n + y
    std::optional<Elem> unit;
  };
  explicit Quantale(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

struct SidedElements {
  std::vector<Elem> right;      // a.1 <= a
  std::vector<Elem> left;       // 1.a <= a
  std::vector<Elem> two_sided;
};

SidedElements sided_elements(const Quantale& q);

class BasedQuantale {
 public:
  /// lact is |A| x |Q|, ract is |Q| x |A|. Throws BadAction naming the first
  /// violated module, bimodule or compatibility axiom.
  static BasedQuantale build(Quantale q, LatticePtr base, std::vector<Elem> lact, std::vector<Elem> ract);

  const Quantale& quantale() const { return d_->q; }
  const FinSupLattice& lattice() const { return d_->q.lattice(); }
  const LatticePtr& lattice_ptr() const { return d_->q.lattice_ptr(); }
  const FinSupLattice& base() const { return *d_->a; }
  const LatticePtr& base_ptr() const noexcept { return d_->a; }
  std::size_t size() const { return d_->q.size(); }

  Elem mul(Elem x, Elem y) const { return d_->q.mul(x, y); }
  Elem star(Elem x) const { return d_->q.star(x); }
  Elem one() const { return d_->q.one(); }
  Elem zero() const { return d_->q.zero(); }
  Elem lact(Elem a, Elem x) const { return d_->lact[static_cast<std::size_t>(a) * size() + x]; }
  Elem ract(Elem x, Elem a) const { return d_->ract[static_cast<std::size_t>(x) * d_->a->size() + a]; }
  Elem dstar(Elem a) const { return lact(a, one()); }
  Elem rstar(Elem a) const { return ract(one(), a); }

  /// Q distributive with (a.x) ^ y = a.(x ^ y) and (x.a) ^ y = (x ^ y).a.
  bool is_quantal_frame() const noexcept { return !d_->qf_witness.has_value(); }
  const std::optional<Witness>& quantal_frame_witness() const noexcept { return d_->qf_witness; }

  std::span<const Elem> lact_table() const noexcept { return d_->lact; }
  std::span<const Elem> ract_table() const noexcept { return d_->ract; }
  /// A acting on the right of the left factor and the left of the right
  /// factor, as in Q (x)_A Q.
  BaseAction tensor_action() const;

 private:
  struct Data {
    Quantale q;
    LatticePtr a;
    std::vector<Elem> lact;
    std::vector<Elem> ract;
    std::optional<Witness> qf_witness;
  };
  explicit BasedQuantale(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Restriction by the meet with d*(a) / r*(a); valid on quantal frames whose
/// actions are determined by d* and r*.
BasedQuantale change_of_base(const Quantale& q, const FrameHom& dstar, const FrameHom& rstar);

struct Support {
  JoinMap sigma;
  bool valid = false;
  bool stable = false;
  bool equivariant = false;
  /// Axioms first, then the derived identities and the classification.
  std::vector<CheckResult> checks;
};

/// Checks the three support axioms and, when they hold, the derived
/// identities and the stable/equivariant classification.
Support check_support(const BasedQuantale& b, const JoinMap& sigma);
Support check_support(const BasedQuantale& b, std::vector<Elem> sigma_values);

struct SupportClass {
  bool stable = false;
  bool equivariant = false;
  /// sigma(xy) <= sigma(x); sigma(x.1) = sigma(x); sigma(xy) = sigma(x.sigma(y)).
  std::array<bool, 3> stable_forms{};
  Witness stable_witness;
  Witness equivariance_witness;
};

/// Throws EquivalenceMismatch if the stability formulations disagree or an
/// equivariant support is not stable.
SupportClass classify_support(const BasedQuantale& b, const JoinMap& sigma);

struct NoSupport {
  std::string reason;
  Witness witness;
};

/// The candidate is the left adjoint of a |-> a.1; succeeds only with a
/// valid equivariant support.
std::variant<Support, NoSupport> derive_support(const BasedQuantale& b);

struct UnitalReflection {
  std::vector<Elem> sigma_e;  // sigma(x).e, an endomap of Q
  std::vector<CheckResult> checks;

  bool ok() const;
};

/// Throws NotUnital.
UnitalReflection unital_reflection(const BasedQuantale& b, const Support& s);

struct ReflexiveStructure {
  FrameHom upsilon;
  std::vector<CheckResult> checks;
};

/// Throws NotFrameHom when upsilon is not one and NotReflexive when
/// upsilon(a.1) = a = upsilon(1.a) fails. With a support, also checks the
/// upsilon/support lemmas (skipped when their hypotheses fail).
ReflexiveStructure check_reflexive(const BasedQuantale& b, const Map& upsilon, const Support* s = nullptr);
ReflexiveStructure check_reflexive(const BasedQuantale& b, std::vector<Elem> upsilon_values,
                                   const Support* s = nullptr);

/// Carriers whose pair count |Q|^2 exceeds this are handled lazily.
inline constexpr std::size_t kMaterializePairs = 4096;

struct ReducedMultiplication {
  TensorSpace space;                      // Q (x)_A Q
  std::vector<Rows> mstar;                // right adjoint of the reduced multiplication, per q
  bool multiplicative = false;
  Witness witness;                        // q where join preservation fails
  std::optional<TensorLattice> tensor;    // when |Q|^2 <= materialize_pairs
  std::optional<JoinMap> mu;              // the reduced multiplication on the carrier
  std::vector<CheckResult> checks;
};

ReducedMultiplication reduced_multiplication(const BasedQuantale& b,
                                             std::size_t materialize_pairs = kMaterializePairs,
                                             std::size_t bound = kDefaultTensorBound);

struct LawReport {
  bool holds = true;
  std::vector<Elem> lhs;
  std::vector<Elem> rhs;
  std::uint64_t violations = 0;
  Witness witness;  // first failing a, with both sides
};

/// Compares join{upsilon(x).y | xy <= a} with a for every a.
LawReport check_unit_laws(const BasedQuantale& b, const FrameHom& upsilon);
/// Compares upsilon(a).1 with join{x ^ y | xy* <= a} for every a. Throws
/// FormMismatch if that join differs from join{x | xx* <= a}.
LawReport check_inverse_laws(const BasedQuantale& b, const FrameHom& upsilon);

struct PartialUnits {
  std::vector<Elem> units;  // ss* v s*s <= e
  Elem join = 0;
  bool inverse_quantal_frame = false;
};

/// Throws NotUnital.
PartialUnits partial_units(const Quantale& q);

struct GroupoidQuantaleReport {
  bool quantal_frame = false;
  bool equivariant_support = false;
  bool reflexive = false;
  bool multiplicative = false;
  bool unit_laws = false;
  bool inverse_laws = false;
  std::optional<bool> inverse_quantal_frame;  // unital quantales only
  std::optional<Support> support;
  std::optional<ReflexiveStructure> reflexive_structure;
  std::optional<LawReport> unit_report;
  std::optional<LawReport> inverse_report;
  std::vector<CheckResult> checks;

  bool all() const {
    return quantal_frame && equivariant_support && reflexive && multiplicative && unit_laws && inverse_laws;
  }
};

/// sigma and upsilon are optional; a missing support is derived, a missing
/// upsilon makes the structure non-reflexive. Unital inputs also cross-check
/// inverse laws <=> join of partial units = 1, and inverse => unit laws.
GroupoidQuantaleReport is_groupoid_quantale(const BasedQuantale& b, const JoinMap* sigma, const Map* upsilon);

struct PrincipalityReport {
  SidedElements sided;
  std::vector<Elem> equalized;  // {a | a.1 = 1.a}
  std::size_t rl_tensor_size = 0;
  std::size_t pushout_size = 0;
  bool canonical_iso = false;  // R (x)_T L -> Q, r (x) l |-> r ^ l
  bool cokernel_iso = false;   // E-pushout of A with itself -> Q
  bool pure_tensor_injective = false;
  bool principal = false;
  Witness witness;
};

/// Throws EquivalenceMismatch if the two formulations disagree.
PrincipalityReport check_principal(const BasedQuantale& b, const Support& s, std::size_t bound = kDefaultTensorBound);

struct HomReport {
  bool hom = false;
  bool strong = false;
  std::optional<bool> support_commuting;  // when both supports are given
  std::vector<CheckResult> checks;
};

/// f1: Q -> R, f0: A_Q -> A_R.
HomReport check_based_hom(const BasedQuantale& src, const BasedQuantale& dst, const std::vector<Elem>& f1,
                          const std::vector<Elem>& f0, const JoinMap* sigma_src = nullptr,
                          const JoinMap* sigma_dst = nullptr);

/// Instance checks of the support, restriction and upsilon lemmas. Checks
/// whose hypotheses fail are marked skipped.
std::vector<CheckResult> lemma_checks(const BasedQuantale& b, const Support& s,
                                      const ReflexiveStructure* r = nullptr);

}  // namespace qlab
