#pragma once

// Built-in instances. Quantale generators return the based quantale together
// with the support and reflexive structure they advertise; each one is
// certified before it is returned.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qlab/groupoid.hpp"
#include "qlab/quantale.hpp"

namespace qlab {

struct SupportedQuantale {
  BasedQuantale based;
  std::optional<JoinMap> sigma;
  std::optional<Map> upsilon;
};

LatticePtr two_lattice();
LatticePtr chain_lattice(std::size_t n);
LatticePtr powerset_lattice(std::size_t points);

/// Binary relations on an n-set over the frame of subsets, with
/// U.R = (U x X) ^ R, R.U = R ^ (X x U), support the domain and upsilon the
/// diagonal. n <= 3.
SupportedQuantale rel_quantale(std::size_t n);

/// {0 < e < 1} with unit e and 1.1 = 1, over A = {0, e} acting by
/// multiplication; support and upsilon send 1 to e. Satisfies the unit laws,
/// not the inverse laws.
SupportedQuantale example_q1();

/// {0 < a < 1} with a.a = 1 and a* = a, over TWO acting trivially; support
/// sends a and 1 to 1, upsilon sends a to 0. Satisfies the inverse laws, not
/// the unit laws.
SupportedQuantale example_q2();

/// Q = TWO based over A = P(points) through the frame retraction
/// r(U) = [0 in U]; the support is its section s(0) = {}, s(1) = X. Stable,
/// not equivariant. No upsilon.
SupportedQuantale retract_example(std::size_t points = 2);

/// TWO over TWO with identity support and upsilon.
SupportedQuantale two_quantale();

/// The quantale of a set groupoid, with its support d_! and upsilon u*.
SupportedQuantale groupoid_quantale(const SetGroupoid& g);

SupportedQuantale as_supported(const GroupoidQuantale& q);

/// Certifies a generator output; throws DiagramFailure when it is not a
/// groupoid quantale.
GroupoidQuantale certify(const SupportedQuantale& q);

}  // namespace qlab
