#pragma once

// Structures as specification declarations. Tables list only entries that
// differ from the defaults (0 for products, actions and maps, identity for
// the involution), so the output parses back to an equal structure.

#include <string>

#include "qlab/groupoid.hpp"
#include "qlab/workbench/dsl.hpp"
#include "qlab/workbench/generators.hpp"

namespace qlab {

/// Declares NAME_carrier, NAME_base (lattices and frames), NAME_q, NAME and,
/// when present, NAME_sigma and NAME_upsilon.
dsl::SpecDocument spec_of(const std::string& name, const SupportedQuantale& q);

/// Declares NAME_objects, NAME_arrows (lattices and frames) and NAME.
dsl::SpecDocument spec_of(const std::string& name, const LocalicGroupoid& g);

/// A lattice declaration listing the covering pairs.
dsl::LatticeDecl lattice_decl(const std::string& name, const FinSupLattice& l);

}  // namespace qlab
