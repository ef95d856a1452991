#include "qlab/error.hpp"

namespace qlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorKind::NotMeetPreserving: return "NotMeetPreserving";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::NotFrameHom: return "NotFrameHom";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotBimorphism: return "NotBimorphism";
    case ErrorKind::NotMiddleLinear: return "NotMiddleLinear";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotBilinear: return "NotBilinear";
    case ErrorKind::BadInvolution: return "BadInvolution";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::BadAction: return "BadAction";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::EquivalenceMismatch: return "EquivalenceMismatch";
    case ErrorKind::FormMismatch: return "FormMismatch";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::NotReflexive: return "NotReflexive";
    case ErrorKind::NoSupport: return "NoSupport";
    case ErrorKind::NoIsomorphism: return "NoIsomorphism";
    case ErrorKind::BadGroupTable: return "BadGroupTable";
    case ErrorKind::BadTable: return "BadTable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::DiagramFailure: return "DiagramFailure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, Witness witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

std::string format_witness(const Witness& w) {
  std::string out;
  for (const auto& e : w) {
    if (!out.empty()) out += ", ";
    out += e.role + "=" + e.label;
  }
  return out;
}

}  // namespace qlab
