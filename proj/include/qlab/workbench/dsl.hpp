#pragma once

// The specification language. One declaration per statement, `#` starts a
// comment. Identifiers are [A-Za-z0-9_.'+-]+ or double-quoted strings, so
// generated labels such as "{(0,1)}" can be referenced.
//
//   lattice NAME { elems ID+ ; order (ID<=ID)* }
//   frame NAME = check LATTICE
//   quantale NAME on LATTICE { mult: (ID ID -> ID)* ; inv: (ID -> ID)* ; unit ID }
//   based NAME = QUANTALE over FRAME { lact: (ID ID -> ID)* ; ract: (ID ID -> ID)* }
//   support NAME on BASED { (ID -> ID)* }
//   upsilon NAME on BASED { (ID -> ID)* }
//   groupoid NAME { objects FRAME ; arrows FRAME ; dstar MAP ; rstar MAP ;
//                   ustar MAP ; istar MAP ; mstar { (ID -> x⊗y ∨ ...)* } }
//   generate NAME = GEN(ARGS)
//   check NAME : CHECK+
//
// MAP is `{ (ID -> ID)* }`. Products and actions missing from a table are 0.
// A check item may carry an expected verdict, `inverse-laws=fail`.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlab/error.hpp"

namespace qlab::dsl {

/// Source position, 1-based. Spans never take part in equality, so a
/// printed and reparsed document compares equal to the original.
struct Span {
  std::size_t line = 0;
  std::size_t col = 0;

  friend bool operator==(const Span&, const Span&) { return true; }
};

struct Name {
  std::string text;
  Span span;

  friend bool operator==(const Name&, const Name&) = default;
};

struct Arrow1 {  // x -> y
  Name from;
  Name to;
  friend bool operator==(const Arrow1&, const Arrow1&) = default;
};

struct Arrow2 {  // x y -> z
  Name left;
  Name right;
  Name to;
  friend bool operator==(const Arrow2&, const Arrow2&) = default;
};

struct LatticeDecl {
  Name name;
  std::vector<Name> elems;
  std::vector<Arrow1> order;  // from <= to
  friend bool operator==(const LatticeDecl&, const LatticeDecl&) = default;
};

struct FrameDecl {
  Name name;
  Name lattice;
  friend bool operator==(const FrameDecl&, const FrameDecl&) = default;
};

struct QuantaleDecl {
  Name name;
  Name lattice;
  std::vector<Arrow2> mult;
  std::vector<Arrow1> inv;
  std::optional<Name> unit;
  friend bool operator==(const QuantaleDecl&, const QuantaleDecl&) = default;
};

struct BasedDecl {
  Name name;
  Name quantale;
  Name frame;
  std::vector<Arrow2> lact;  // a x -> a.x
  std::vector<Arrow2> ract;  // x a -> x.a
  friend bool operator==(const BasedDecl&, const BasedDecl&) = default;
};

struct MapDecl {
  enum class Kind { support, upsilon };
  Kind kind = Kind::support;
  Name name;
  Name based;
  std::vector<Arrow1> values;
  friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct PureTerm {  // x ⊗ y
  Name left;
  Name right;
  friend bool operator==(const PureTerm&, const PureTerm&) = default;
};

struct MstarEntry {
  Name arrow;
  std::vector<PureTerm> join;  // empty means 0
  friend bool operator==(const MstarEntry&, const MstarEntry&) = default;
};

struct GroupoidDecl {
  Name name;
  Name objects;
  Name arrows;
  std::vector<Arrow1> dstar;
  std::vector<Arrow1> rstar;
  std::vector<Arrow1> ustar;
  std::vector<Arrow1> istar;
  std::optional<std::vector<MstarEntry>> mstar;
  friend bool operator==(const GroupoidDecl&, const GroupoidDecl&) = default;
};

/// Generator arguments are integers or nested lists of integers.
struct GenArg {
  std::optional<long long> number;
  std::vector<GenArg> list;
  Span span;
  friend bool operator==(const GenArg&, const GenArg&) = default;
};

struct GenerateDecl {
  Name name;
  Name generator;
  std::vector<GenArg> args;
  friend bool operator==(const GenerateDecl&, const GenerateDecl&) = default;
};

struct CheckItem {
  Name check;
  std::optional<bool> expect_pass;
  friend bool operator==(const CheckItem&, const CheckItem&) = default;
};

struct CheckDecl {
  Name target;
  std::vector<CheckItem> items;
  friend bool operator==(const CheckDecl&, const CheckDecl&) = default;
};

using Decl = std::variant<LatticeDecl, FrameDecl, QuantaleDecl, BasedDecl, MapDecl, GroupoidDecl, GenerateDecl, CheckDecl>;

struct SpecDocument {
  std::vector<Decl> decls;
  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

/// The generators `generate` accepts, with the kind of structure each yields.
struct GeneratorInfo {
  std::string_view name;
  std::string_view kind;  // "frame", "based", "groupoid"
  std::string_view usage;
};
const std::vector<GeneratorInfo>& generators();

/// Syntax plus structure-name resolution. Throws SyntaxError, UnresolvedName
/// or DuplicateName; the message starts with "line:col:".
SpecDocument parse_spec(std::string_view text);
SpecDocument parse_spec_file(const std::string& path);

/// Canonical text; parse_spec(print_spec(d)) == d.
std::string print_spec(const SpecDocument& doc);

/// Element identifiers are printed bare when possible, quoted otherwise.
std::string quote_id(std::string_view id);

/// Name of a declaration (the target name for checks).
const Name& decl_name(const Decl& d);

[[noreturn]] void fail_at(ErrorKind kind, const Span& at, const std::string& message);

}  // namespace qlab::dsl
