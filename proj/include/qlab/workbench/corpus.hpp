#pragma once

// The fixed example corpus shared by the tests, the acceptance suite and
// `qlab corpus run`.

#include <string>
#include <vector>

#include "qlab/groupoid.hpp"
#include "qlab/workbench/generators.hpp"

namespace qlab {

struct NamedGroupoid {
  std::string name;
  SetGroupoid groupoid;
};

struct NamedQuantale {
  std::string name;
  SupportedQuantale quantale;
};

/// trivial, PAIR(2), PAIR(3), ZMOD2 and the partitions of 2 and 3 points
/// that are not already listed, up to isomorphism.
std::vector<NamedGroupoid> corpus_groupoids();

/// TWO, Rel(1..3), Q1, Q2, the retract example and the quantales of the
/// corpus groupoids other than PAIR(3), whose quantale is Rel(3).
/// `large` = false drops Rel(3).
std::vector<NamedQuantale> corpus_quantales(bool large = true);

/// Path of corpus/corpus.qlab in the source tree.
std::string corpus_file();

}  // namespace qlab
