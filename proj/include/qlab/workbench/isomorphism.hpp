#pragma once

// Structure-preserving bijections between finite lattices, quantales, based
// quantales and localic groupoids.
//
// The search assigns images to join-irreducibles in linear order, keeping
// the order among them preserved and reflected, and only pairs elements with
// equal invariants (down/up-set sizes, join-irreducibles below, plus
// structure-specific ones). A complete assignment extends by joins and is
// then checked against every table. The identity is tried first.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qlab/lattice.hpp"
#include "qlab/quantale.hpp"

namespace qlab {

struct LocalicGroupoid;

/// Maps each element to a structural invariant; elements with different
/// invariants are never paired.
using Invariant = std::function<std::uint64_t(Elem)>;
/// Accepts or rejects a complete lattice isomorphism.
using IsoFilter = std::function<bool(const std::vector<Elem>&)>;

struct Isomorphism {
  std::vector<Elem> carrier;  // Q or O1
  std::vector<Elem> base;     // A or O0; empty for plain quantales
};

/// Enumerates lattice isomorphisms x -> y passing `accept`; returns the first.
/// nullopt when none exists.
std::optional<std::vector<Elem>> search_lattice_isomorphism(const FinSupLattice& x, const FinSupLattice& y,
                                                            const IsoFilter& accept = {},
                                                            const Invariant& inv_x = {},
                                                            const Invariant& inv_y = {});

/// The following throw NoIsomorphism; when a simple invariant differs the
/// witness names it ({"invariant", ...}, {"left", ...}, {"right", ...}).
std::vector<Elem> find_isomorphism(const FinSupLattice& x, const FinSupLattice& y);
Isomorphism find_isomorphism(const Quantale& x, const Quantale& y);
Isomorphism find_isomorphism(const BasedQuantale& x, const BasedQuantale& y);
Isomorphism find_isomorphism(const LocalicGroupoid& x, const LocalicGroupoid& y);

/// Exhaustive table checks for a candidate pair of bijections.
bool is_quantale_isomorphism(const Quantale& x, const Quantale& y, const std::vector<Elem>& f);
bool is_based_isomorphism(const BasedQuantale& x, const BasedQuantale& y, const Isomorphism& iso);
bool is_groupoid_isomorphism(const LocalicGroupoid& x, const LocalicGroupoid& y, const Isomorphism& iso);

}  // namespace qlab
