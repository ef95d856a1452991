#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlab {

/// One labeled element of a counterexample, e.g. {"x", "{(0,1)}"}.
struct WitnessEntry {
  std::string role;
  std::string label;

  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

using Witness = std::vector<WitnessEntry>;

enum class ErrorKind {
  NotAPartialOrder,
  NotALattice,
  NotJoinPreserving,
  NotMeetPreserving,
  NotAFrame,
  NotFrameHom,
  SizeLimitExceeded,
  NotBimorphism,
  NotMiddleLinear,
  NotAssociative,
  NotBilinear,
  BadInvolution,
  BadUnit,
  BadAction,
  NotUnital,
  EquivalenceMismatch,
  FormMismatch,
  FactorizationFailure,
  NotOpen,
  NotReflexive,
  NoSupport,
  NoIsomorphism,
  BadGroupTable,
  BadTable,
  SyntaxError,
  UnresolvedName,
  DuplicateName,
  DiagramFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this exception; `witness`
/// names the offending elements when the failure has a concrete cause.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, Witness witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const Witness& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  Witness witness_;
};

/// Outcome of one exhaustive axiom scan. `witness` holds the first violation
/// in scan order; `violations` counts all of them.
struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;  // hypotheses not met; `note` says why
  std::uint64_t violations = 0;
  Witness witness;
  std::string note;
};

std::string format_witness(const Witness& w);

}  // namespace qlab
