#pragma once

#include <string>
#include <utility>

#include "qlab/error.hpp"
#include "qlab/kernels.hpp"

namespace qlab {

/// Runs one exhaustive scan and packages the outcome; `witness_of(i)` is
/// called only for the first violating index.
template <class Pred, class Wit>
CheckResult scan_check(std::string name, std::uint64_t count, Pred&& violates, Wit&& witness_of) {
  const auto r = kernels::scan(count, std::forward<Pred>(violates));
  CheckResult c;
  c.name = std::move(name);
  c.passed = r.ok();
  c.violations = r.violations;
  if (!r.ok()) c.witness = witness_of(r.first);
  return c;
}

inline CheckResult skipped_check(std::string name, std::string why) {
  CheckResult c;
  c.name = std::move(name);
  c.skipped = true;
  c.note = std::move(why);
  return c;
}

inline CheckResult flag_check(std::string name, bool ok, Witness w = {}, std::string note = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = ok;
  c.violations = ok ? 0 : 1;
  if (!ok) c.witness = std::move(w);
  c.note = std::move(note);
  return c;
}

}  // namespace qlab
