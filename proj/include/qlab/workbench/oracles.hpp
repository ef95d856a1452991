#pragma once

// Brute-force oracles. Candidates are generated blindly (every assignment of
// values to join-irreducibles) and filtered by exhaustive checks, so they
// share no logic with the constructions they cross-check.

#include <cstdint>
#include <vector>

#include "qlab/quantale.hpp"

namespace qlab {

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/// Every join-preserving map Q -> A satisfying the support axioms, in
/// lexicographic order of the value tables, each classified. Throws
/// SizeLimitExceeded when |A|^(join-irreducibles of Q) exceeds `limit`.
std::vector<Support> enumerate_supports(const BasedQuantale& b, std::uint64_t limit = kEnumerationLimit);

struct EnumeratedHom {
  std::vector<Elem> f1;
  std::vector<Elem> f0;
  HomReport report;
};

/// Every based-quantale homomorphism (f1, f0): src -> dst. Supports, when
/// given, fill in the support-commuting flag.
std::vector<EnumeratedHom> enumerate_homs(const BasedQuantale& src, const BasedQuantale& dst,
                                          const JoinMap* sigma_src = nullptr, const JoinMap* sigma_dst = nullptr,
                                          std::uint64_t limit = kEnumerationLimit);

/// All join-preserving maps x -> y, as value tables.
std::vector<std::vector<Elem>> enumerate_join_maps(const FinSupLattice& x, const FinSupLattice& y,
                                                   std::uint64_t limit = kEnumerationLimit);

}  // namespace qlab
